// Acceptance gate: one criterion per check, one PASS/FAIL line each,
// nonzero exit if any criterion fails. Tolerances and runtime budgets are
// pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "symmlab/comparisons.hpp"

using namespace symmlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

int failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("%s criterion-%02d %s: %s\n", ok ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename Fn>
auto timed(Fn&& fn, double* seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  auto result = fn();
  *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  return result;
}

std::string describe(const ComparisonReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "lhs=%.12g rhs=%.12g margin=%.3g", r.lhs,
                r.rhs, r.margin);
  return buf;
}

}  // namespace

int main() {
  double secs = 0.0;

  // 1. Sphere eigenvalue equality case at level 4, within 2%, under 10 s.
  {
    const auto r = timed([] { return check_lichnerowicz(4, 0.02); }, &secs);
    report(1, "sphere-eigenvalue", r.pass && secs < 10.0,
           describe(r) + " time=" + std::to_string(secs) + "s (budget 10s)");
  }

  // 2. Product eigenvalue formula on circle(2pi,128) x icosphere(3),
  //    within 2%, under 60 s.
  {
    const auto r = timed(
        [] { return check_product_formula(2 * kPi, 3, 128, 0.02); }, &secs);
    report(2, "product-eigenvalue", r.pass && secs < 60.0,
           describe(r) + " time=" + std::to_string(secs) + "s (budget 60s)");
  }

  // 3. Constant warping rho = 1/2: the base eigenvalue 1 dominates the
  //    fiber term 8, so lambda1 equals lambda1(base) within 2%.
  {
    const std::vector<double> rho(64, 0.5);
    const auto r = timed(
        [&] { return check_warped_lambda1(2 * kPi, 64, rho, 3, 0.02); },
        &secs);
    const bool near_one = std::abs(r.lhs - 1.0) <= 0.02;
    report(3, "warped-equality", r.pass && near_one, describe(r));
  }

  // 4. Fiberwise symmetrization lower bound on the varying-width tube at
  //    spacing 0.02, slack 2%, under 120 s.
  {
    const auto r = timed(
        [] {
          return check_fiberwise_faber_krahn(tube_preset(0.02, 32), 200, 0.02);
        },
        &secs);
    report(4, "tube-lower-bound", r.pass && secs < 120.0,
           describe(r) + " time=" + std::to_string(secs) + "s (budget 120s)");
  }

  // 5. Dirichlet disc against the Bessel-zero value, spacing 0.02, 1%.
  {
    const auto r = timed([] { return check_dirichlet_disc(0.02, 0.01); }, &secs);
    report(5, "dirichlet-disc", r.pass, describe(r));
  }

  // 6. Symmetrization energy inequality over 100 seeded smooth fields on
  //    the level-4 icosphere, floor 0.98, under 60 s.
  {
    const auto r = timed(
        [] { return check_polya_szego_sweep(4, 100, 2024, 0.98); }, &secs);
    report(6, "energy-inequality-sweep", r.pass && secs < 60.0,
           describe(r) + " time=" + std::to_string(secs) + "s (budget 60s)");
  }

  // 7. Rearrangement exactness: moments k = 1,2,3 to 1e-10 and sup-norm
  //    contraction to 1e-12 over 200 seeded pairs.
  {
    const auto r =
        timed([] { return check_rearrangement_exactness(3, 200, 7); }, &secs);
    report(7, "rearrangement-exactness", r.pass, describe(r));
  }

  // 8. Fiberwise contraction of both energy components, slack 2%, over 50
  //    seeded fields on circle(2pi,64) x icosphere(3).
  {
    const auto r = timed(
        [] { return check_fiberwise_contraction(64, 3, 50, 11, 0.02); }, &secs);
    report(8, "fiberwise-contraction", r.pass, describe(r));
  }

  // 9. Yamabe functional: exact value at f = 1 on the unit product to
  //    1e-6, plus the warped-descent comparison with rho = 1 + 0.2 sin s
  //    at 5% slack (both sides are descent upper bounds; indicative only).
  {
    const auto exact = timed([] { return check_yamabe_product_value(); }, &secs);
    const int yn = 48;
    std::vector<double> rho(yn);
    for (int s = 0; s < yn; ++s)
      rho[s] = 1.0 + 0.2 * std::sin(2.0 * kPi * s / yn);
    const auto warped = timed(
        [&] { return check_yamabe_warped(2 * kPi, yn, rho, 2, 0.05); }, &secs);
    report(9, "yamabe-functional", exact.pass && warped.pass,
           "eval: " + describe(exact) + " | warped (indicative): " +
               describe(warped));
  }

  // 10. The citation table of bundle eigenvalues matches its stated values.
  {
    const auto r = timed([] { return check_reference_table(); }, &secs);
    report(10, "reference-table", r.pass, describe(r));
  }

  if (failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 10 criteria passed\n");
  return 0;
}
