"""Python bindings for the symmlab spectral-geometry laboratory."""

try:
    from ._symmlab import *  # noqa: F401,F403
    from ._symmlab import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _symmlab import *  # noqa: F401,F403
