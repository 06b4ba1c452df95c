// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line. Tags [c1]..[c11] allow running criteria individually.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "bmoa/parse.hpp"
#include "bmoa/report.hpp"
#include "support/fixtures.hpp"

using namespace bmoa;
using namespace bmoa_tests;

namespace {

void line(int n, const char* name, bool pass, const std::string& detail) {
  std::printf("ACCEPTANCE %2d %-28s %s  %s\n", n, name, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

QuadConfig tight() {
  QuadConfig c;
  c.tol = 1e-9;
  c.max_k = 34;
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("criterion 1: conformal oscillation of the identity", "[acceptance][c1]") {
  auto g = rng(101);
  const QuadConfig cfg = tight();
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx a = random_point(g, 0.99);
    const double got = sqr(gamma_boundary(AnalyticMap::identity(), a, 2.0, cfg).value);
    worst = std::max(worst, std::abs(got - (1.0 - std::norm(a))));
  }
  const bool pass = worst <= 1e-6;
  line(1, "gamma identity closed form", pass, "worst abs err " + fmt12(worst) + " (tol 1e-6)");
  CHECK(pass);
}

TEST_CASE("criterion 2: test-function identity", "[acceptance][c2]") {
  auto g = rng(102);
  const QuadConfig cfg = tight();
  const DiskGrid grid = DiskGrid::dyadic(12, 8);
  const auto weights = admissible_weights();
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto& w = weights[i % weights.size()];
    const cplx c = random_point(g, 0.95);
    const cplx b = random_point(g, 0.95);
    const AlphaTestFn tf = test_fn_alpha(c, *w, grid, cfg);
    const double got = sqr(gamma_boundary(tf.f2, b, 2.0, cfg).value);
    const double exact = (1.0 - std::norm(mobius_apply(c, b))) / sqr(w->v(c));
    worst = std::max(worst, std::abs(got - exact) / exact);
  }
  const bool pass = worst <= 1e-3;
  line(2, "test-function identity", pass, "worst rel err " + fmt12(worst) + " (tol 1e-3)");
  CHECK(pass);
}

TEST_CASE("criterion 3: area vs boundary oscillation", "[acceptance][c3]") {
  auto g = rng(103);
  const QuadConfig cfg{};
  double worst = 0.0;
  for (const auto& f : fixture_set()) {
    const cplx a = random_point(g, 0.95);
    const double bnd = sqr(gamma_boundary(f, a, 2.0, cfg).value);
    const double area = gamma_area_p2(f, a, cfg).value;
    if (bnd < 1e-12) continue;
    worst = std::max(worst, std::abs(area - bnd) / bnd);
  }
  const bool pass = worst <= 0.02;
  line(3, "area route agreement", pass, "worst rel dev " + fmt12(worst) + " (tol 0.02)");
  CHECK(pass);
}

TEST_CASE("criterion 4: half-map recentred norm", "[acceptance][c4]") {
  const QuadConfig cfg = tight();
  const SymbolPair pair = make_symbol_pair(AnalyticMap::constant(1.0), AnalyticMap::halfmap());
  double worst = 0.0;
  for (const cplx a : {cplx(0, 0), cplx(0.5, 0), cplx(0.9, 0), cplx(0.5, 0.3), cplx(0.99, 0)}) {
    const double got = sqr(bmoa::detail::phi_a_norm(pair, a, cfg).value);
    const double exact = (1.0 - std::norm(a)) / (2.0 * (1.0 - std::real(a)));
    worst = std::max(worst, std::abs(got - exact));
  }
  const bool pass = worst <= 1e-4;
  line(4, "half-map recentred norm", pass, "worst abs err " + fmt12(worst) + " (tol 1e-4)");
  CHECK(pass);
}

TEST_CASE("criterion 5: Poisson normalization", "[acceptance][c5]") {
  auto g = rng(105);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const cplx a = random_point(g, 0.97);
    double mean = 0.0;
    const int M = 1024;
    for (int k = 0; k < M; ++k) mean += poisson_kernel(a, std::polar(1.0, kTwoPi * k / M));
    worst = std::max(worst, std::abs(mean / M - 1.0));
  }
  const bool pass = worst <= 1e-10;
  line(5, "poisson normalization", pass, "worst dev " + fmt12(worst) + " (tol 1e-10)");
  CHECK(pass);
}

TEST_CASE("criterion 6: admissibility battery", "[acceptance][c6]") {
  bool pass = true;
  std::string detail;
  auto expect = [&](WeightPtr w, AdmissibilityVerdict want, const char* failing_cond) {
    const AdmissibilityReport rep = admissibility_report(*w);
    bool ok = rep.verdict == want;
    if (ok && failing_cond != nullptr) {
      bool cond_failed = false;
      for (const auto& r : rep.records)
        cond_failed = cond_failed || (r.name == failing_cond && r.trend == Trend::Diverging);
      ok = cond_failed;
    }
    if (!ok) detail += w->name() + " -> " + to_string(rep.verdict) + "; ";
    pass = pass && ok;
  };
  for (double c : {0.0, 0.1, 0.25, 0.4})
    expect(WeightSpec::power(c), AdmissibilityVerdict::Admissible, nullptr);
  for (double c : {0.5, 1.0, 2.0})
    expect(WeightSpec::log_weight(c), AdmissibilityVerdict::Admissible, nullptr);
  expect(WeightSpec::power(0.5), AdmissibilityVerdict::NotAdmissible, "A1");
  expect(WeightSpec::coslog(0.1), AdmissibilityVerdict::NotAdmissible, "A2");
  if (detail.empty()) detail = "9 weights as expected (exit contract covered by CLI tests)";
  line(6, "admissibility battery", pass, detail);
  CHECK(pass);
}

TEST_CASE("criterion 7: evaluation norm", "[acceptance][c7]") {
  auto cst = WeightSpec::constant();
  double worst = 0.0;
  for (double x : {0.5, 0.9, 0.999})
    worst = std::max(worst,
                     std::abs(eval_norm(*cst, cplx(x, 0)) - (1.0 - std::log1p(-x))));
  const double log2_limit = eval_norm(*WeightSpec::log_weight(2.0), cplx(1.0 - 1e-9, 0));
  const bool flag = hinfty_embedding_flag(*WeightSpec::log_weight(2.0));
  const bool pass = worst <= 1e-8 && log2_limit < 2.1 && flag;
  line(7, "evaluation norm", pass,
       "worst err " + fmt12(worst) + ", log2 limit " + fmt12(log2_limit) +
           (flag ? ", embedding flag set" : ", embedding flag MISSING"));
  CHECK(pass);
}

TEST_CASE("criterion 8: verdict suite", "[acceptance][c8]") {
  const QuadConfig cfg{};
  const DiskGrid grid = DiskGrid::dyadic(24, 16);
  auto log1 = WeightSpec::log_weight(1.0);
  auto p25 = WeightSpec::power(0.25);
  std::string detail;
  bool pass = true;

  {
    const SymbolPair pr = make_symbol_pair(AnalyticMap::constant(1.0), AnalyticMap::halfmap());
    const Verdict b = boundedness_verdict(pr, *log1, grid, cfg);
    const Verdict c = compactness_verdict(pr, *log1, grid, cfg);
    const bool ok =
        b.kind == VerdictKind::Bounded && c.kind == VerdictKind::NoncompactEvidence;
    if (!ok) detail += "(1,halfmap) wrong; ";
    pass = pass && ok;
  }
  {
    const SymbolPair pr = make_symbol_pair(AnalyticMap::polynomial({cplx(1, 0), cplx(-1, 0)}),
                                           AnalyticMap::halfmap());
    const Verdict c = compactness_verdict(pr, *log1, grid, cfg);
    const bool ok = c.kind == VerdictKind::Compact;
    if (!ok) detail += "(1-z,halfmap) not compact; ";
    pass = pass && ok;
  }
  {
    const SymbolPair pr = make_symbol_pair(AnalyticMap::polynomial({cplx(1, 0), cplx(0.5, 0)}),
                                           AnalyticMap::identity());
    const Verdict b = boundedness_verdict(pr, *p25, grid, cfg);
    const Verdict c = compactness_verdict(pr, *p25, grid, cfg);
    const bool ok =
        b.kind == VerdictKind::Bounded && c.kind == VerdictKind::NoncompactEvidence;
    if (!ok) detail += "(1+z/2,id) wrong; ";
    pass = pass && ok;
  }
  {
    std::vector<cplx> zeros;
    for (int k = 1; k <= 12; ++k) zeros.push_back(1.0 - std::ldexp(1.0, -k));
    const SymbolPair pr =
        make_symbol_pair(AnalyticMap::constant(1.0), AnalyticMap::blaschke(zeros, 0));
    const Verdict b = boundedness_verdict(pr, *log1, grid, cfg);
    const bool ok = b.kind == VerdictKind::UnboundedEvidence;
    if (!ok) detail += "(1,blaschke) not flagged; ";
    pass = pass && ok;

    // witness growth along the zeros, k = 4..12
    std::vector<double> witness;
    for (int k = 4; k <= 12; ++k)
      witness.push_back(alpha(pr, *log1, cplx(1.0 - std::ldexp(1.0, -k), 0), cfg));
    bool increasing = true;
    for (std::size_t i = 0; i + 1 < witness.size(); ++i)
      increasing = increasing && witness[i + 1] > witness[i];
    const double growth = witness.back() / witness.front();
    if (!increasing) detail += "witness sequence not increasing; ";
    pass = pass && increasing;
    // As stated the criterion requires a factor >= 3. With this weight the
    // witness is alpha(a_k) = 1 + k log 2 exactly (the recentred norm of a
    // finite Blaschke product is 1), so the factor from k=4 to k=12 is
    // (1+12 log 2)/(1+4 log 2) = 2.4699 < 3: asserted as stated and left red.
    detail += "blaschke witness growth x" + fmt12(growth) + " (required >= 3, exact value 2.4699)";
    pass = pass && growth >= 3.0;
  }
  line(8, "verdict suite", pass, detail);
  CHECK(pass);
}

TEST_CASE("criterion 9: route equivalence and p-independence", "[acceptance][c9]") {
  const QuadConfig cfg{};
  auto w = WeightSpec::power(0.25);
  const DiskGrid grid = DiskGrid::dyadic(14, 8);
  double worst_factor = 0.0, worst_ratio_lo = 1.0, worst_ratio_hi = 0.0;
  bool pass = true;
  for (const auto& f : fixture_set()) {
    const double garsia = seminorm(f, *w, 2.0, grid, cfg).sup;
    const double carleson = carleson_seminorm(f, *w, grid, cfg).sup;
    const double arc = arc_seminorm(f, *w, 2.0, cfg, 12, 8).sup;
    const double mx = std::max({garsia, carleson, arc});
    const double mn = std::min({garsia, carleson, arc});
    if (mn <= 0) {
      pass = false;
      continue;
    }
    worst_factor = std::max(worst_factor, mx / mn);
    const PIndependence pi = p_independence_ratio(f, *w, grid, cfg);
    if (!pi.degenerate) {
      worst_ratio_lo = std::min(worst_ratio_lo, pi.ratio);
      worst_ratio_hi = std::max(worst_ratio_hi, pi.ratio);
    }
  }
  pass = pass && worst_factor <= 100.0 && worst_ratio_lo >= 1.0 / 50.0 &&
         worst_ratio_hi <= 1.0 + 1e-9;
  line(9, "route equivalence", pass,
       "worst route factor " + fmt12(worst_factor) + " (<=100), p-ratio in [" +
           fmt12(worst_ratio_lo) + ", " + fmt12(worst_ratio_hi) + "] (in [0.02, 1])");
  CHECK(pass);
}

TEST_CASE("criterion 10: BMOA vs VMOA separation", "[acceptance][c10]") {
  const QuadConfig cfg{};
  const DiskGrid grid = DiskGrid::dyadic(24, 8);
  auto p25 = WeightSpec::power(0.25);
  auto log1 = WeightSpec::log_weight(1.0);
  bool pass = true;
  std::string detail;

  const Tail t1 = vmoa_profile(AnalyticMap::h_primitive(p25, cplx(1, 0)), *p25, grid, cfg).tail;
  const Tail t2 = vmoa_profile(AnalyticMap::h_primitive(log1, cplx(1, 0)), *log1, grid, cfg).tail;
  if (t1 != Tail::Bounded) detail += "h/power(0.25) -> " + std::string(to_string(t1)) + "; ";
  if (t2 != Tail::Bounded) detail += "h/log(1) -> " + std::string(to_string(t2)) + "; ";
  pass = pass && t1 == Tail::Bounded && t2 == Tail::Bounded;

  const std::vector<AnalyticMap> polys = {
      AnalyticMap::polynomial({cplx(1, 0), cplx(1, 0)}),
      AnalyticMap::polynomial({cplx(0, 0), cplx(1, 0), cplx(1, 0)}),
      AnalyticMap::polynomial({cplx(0.5, 0), cplx(0, 1), cplx(-0.25, 0.5)}),
      AnalyticMap::polynomial({cplx(0, 0), cplx(2, -1), cplx(0, 0), cplx(0.5, 0.5)}),
      AnalyticMap::polynomial(
          {cplx(0.2, 0), cplx(-1, 0), cplx(0.3, 0.3), cplx(0, 0), cplx(0, -0.5), cplx(0.1, 0),
           cplx(0.05, 0.05)}),
  };
  for (const auto& wgt : {p25, log1})
    for (std::size_t i = 0; i < polys.size(); ++i) {
      const Tail t = vmoa_profile(polys[i], *wgt, grid, cfg).tail;
      if (t != Tail::DecayingToZero) {
        detail += "poly#" + std::to_string(i) + "/" + wgt->name() + " -> " + to_string(t) + "; ";
        pass = false;
      }
    }
  if (detail.empty())
    detail = "h-primitive bounded-not-decaying; all polynomial fixtures decaying";
  line(10, "vmoa separation", pass, detail);
  CHECK(pass);
}

#ifndef BMOA_CLI_PATH
#define BMOA_CLI_PATH "./bmoa"
#endif

TEST_CASE("criterion 11: determinism", "[acceptance][c11]") {
  // in-process: identical reruns of a full profile are bit-identical
  auto w = WeightSpec::log_weight(1.0);
  const SymbolPair pr = make_symbol_pair(parse_symbol("poly 1 -1"), parse_symbol("halfmap"));
  const DiskGrid grid = DiskGrid::dyadic(12, 8);
  const std::string r1 = to_json(alpha_beta_profile(pr, *w, grid), {}).dump();
  const std::string r2 = to_json(alpha_beta_profile(pr, *w, grid), {}).dump();
  bool pass = r1 == r2;

  // across processes and thread counts: byte-identical files
  const std::string cli = BMOA_CLI_PATH;
  const std::string base =
      " seminorm --weight \"power 0.25\" --f \"poly 0 1 1\" --grid-levels 10 --grid-angles 8"
      " --format csv --out ";
  const int rc1 = std::system(("BMOA_LAB_THREADS=1 " + cli + base + "/tmp/bmoa_det_1.csv").c_str());
  const int rc2 = std::system(("BMOA_LAB_THREADS=2 " + cli + base + "/tmp/bmoa_det_2.csv").c_str());
  const int rc3 = std::system(("BMOA_LAB_THREADS=2 " + cli + base + "/tmp/bmoa_det_3.csv").c_str());
  pass = pass && rc1 == 0 && rc2 == 0 && rc3 == 0;
  const std::string f1 = read_file("/tmp/bmoa_det_1.csv");
  const std::string f2 = read_file("/tmp/bmoa_det_2.csv");
  const std::string f3 = read_file("/tmp/bmoa_det_3.csv");
  pass = pass && !f1.empty() && f1 == f2 && f2 == f3;
  line(11, "determinism", pass,
       pass ? "profiles and serial/parallel CLI runs byte-identical"
            : "outputs differ across runs or thread counts");
  CHECK(pass);
}
