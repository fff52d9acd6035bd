// Times the exhaustive scan kernels in serial and OpenMP mode and checks
// that both modes report identical results.

#include <chrono>
#include <cstdio>

#include "kocheck/ioca.hpp"
#include "kocheck/scan.hpp"

using namespace kocheck;

namespace {

template <class F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int max_dim = argc > 1 ? std::atoi(argv[1]) : 4;

  LatticeScanSummary ls, lp;
  double t_serial = time_ms([&] { ls = scan_all_lattices(max_dim, max_dim, ExecMode::Serial); });
  double t_par = time_ms([&] { lp = scan_all_lattices(max_dim, max_dim, ExecMode::Parallel); });
  bool lattice_same = ls.instances == lp.instances && ls.checks == lp.checks &&
                      ls.failures == lp.failures &&
                      ls.first_failure_code == lp.first_failure_code;
  std::printf("lattice scan (%d x %d, %llu instances, %llu checks)\n", max_dim, max_dim,
              static_cast<unsigned long long>(ls.instances),
              static_cast<unsigned long long>(ls.checks));
  std::printf("  serial   %10.1f ms\n", t_serial);
  std::printf("  parallel %10.1f ms   speedup %.2fx   results %s\n", t_par,
              t_serial / (t_par > 0 ? t_par : 1), lattice_same ? "identical" : "DIFFER");

  Koca b2 = boolean_koca(2);
  BracketScanSummary bs, bp;
  double b_serial = time_ms([&] { bs = scan_bracket_beta(b2, 4, ExecMode::Serial); });
  double b_par = time_ms([&] { bp = scan_bracket_beta(b2, 4, ExecMode::Parallel); });
  bool bracket_same =
      bs.terms == bp.terms && bs.checks == bp.checks && bs.failures == bp.failures;
  std::printf("bracket scan (4-element carrier, %llu terms, %llu checks)\n",
              static_cast<unsigned long long>(bs.terms),
              static_cast<unsigned long long>(bs.checks));
  std::printf("  serial   %10.1f ms\n", b_serial);
  std::printf("  parallel %10.1f ms   speedup %.2fx   results %s\n", b_par,
              b_serial / (b_par > 0 ? b_par : 1), bracket_same ? "identical" : "DIFFER");

  bool ok = lattice_same && bracket_same && ls.ok() && bs.ok();
  return ok ? 0 : 1;
}
