#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"

using namespace bmoa;
using namespace bmoa_tests;
using Catch::Approx;

namespace {
QuadConfig tight() {
  QuadConfig c;
  c.tol = 1e-10;
  c.max_k = 34;
  return c;
}
}  // namespace

TEST_CASE("H^p norms of simple functions", "[hardy]") {
  CHECK(hp_norm(AnalyticMap::constant(cplx(3, -4)), 1.0).value == Approx(5.0));
  CHECK(hp_norm(AnalyticMap::polynomial({cplx(0, 0), cplx(1, 0)}), 2.0, tight()).value ==
        Approx(1.0).epsilon(1e-8));
  CHECK(hp_norm(AnalyticMap::polynomial({cplx(1, 0), cplx(1, 0)}), 2.0, tight()).value ==
        Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("Parseval roundtrip for low-degree polynomials", "[hardy]") {
  auto g = rng(31);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<cplx> coeffs;
    for (int n = 0; n <= 8; ++n) coeffs.emplace_back(U(g), U(g));
    const AnalyticMap f = AnalyticMap::polynomial(coeffs);
    const auto back = f.taylor_coeffs(8, 0.5);
    double sum = 0.0;
    for (const cplx c : back) sum += std::norm(c);
    CHECK(hp_norm(f, 2.0, tight()).value == Approx(std::sqrt(sum)).margin(1e-8));
  }
}

TEST_CASE("H^p norm is rotation invariant", "[hardy]") {
  const AnalyticMap f = fixture_set()[3];
  const cplx w = std::polar(1.0, kPi / 3.0);
  const AnalyticMap rot = AnalyticMap::compose(f, AnalyticMap::dilate(w));
  for (double p : {1.0, 2.0}) {
    const double n1 = hp_norm(f, p, tight()).value;
    const double n2 = hp_norm(rot, p, tight()).value;
    CHECK(n2 == Approx(n1).margin(1e-8));
  }
}

TEST_CASE("Poisson kernel", "[hardy]") {
  CHECK(poisson_kernel(cplx(0, 0), cplx(1, 0)) == 1.0);
  CHECK(poisson_kernel(cplx(0.9, 0), cplx(1, 0)) == Approx(19.0));
  CHECK_THROWS_AS(poisson_kernel(cplx(0.5, 0), cplx(0.5, 0)), DomainError);
  auto g = rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const cplx a = random_point(g, 0.95);
    double mean = 0.0;
    const int M = 1024;
    for (int k = 0; k < M; ++k) mean += poisson_kernel(a, std::polar(1.0, kTwoPi * k / M));
    CHECK(std::abs(mean / M - 1.0) <= 1e-10);
  }
}

TEST_CASE("gamma of the identity has the closed form 1-|a|^2", "[hardy][gamma]") {
  auto g = rng(41);
  const QuadConfig cfg = tight();
  for (int i = 0; i < 20; ++i) {
    const cplx a = random_point(g, 0.99);
    const double got = sqr(gamma_boundary(AnalyticMap::identity(), a, 2.0, cfg).value);
    CHECK(std::abs(got - (1.0 - std::norm(a))) <= 1e-6);
  }
  CHECK(gamma_boundary(AnalyticMap::constant(cplx(2, 5)), cplx(0.4, 0.2), 2.0).value == 0.0);
}

TEST_CASE("gamma stays accurate at deep conformal centers", "[hardy][gamma]") {
  const QuadConfig cfg = tight();
  for (int j : {13, 20, 24}) {
    const cplx a(1.0 - std::ldexp(1.0, -j), 0.0);
    const double got = sqr(gamma_boundary(AnalyticMap::identity(), a, 2.0, cfg).value);
    const double exact = 1.0 - std::norm(a);
    CHECK(std::abs(got - exact) <= 1e-3 * exact + 1e-12);
  }
  // p = 1 against a dense Poisson-free oracle value
  const cplx a13(1.0 - std::ldexp(1.0, -13), 0.0);
  const double g1 = gamma_boundary(AnalyticMap::identity(), a13, 1.0, cfg).value;
  CHECK(g1 == Approx(8.618530704949e-4).epsilon(2e-4));
}

TEST_CASE("Hoelder monotonicity across p", "[hardy][gamma]") {
  auto g = rng(43);
  const QuadConfig cfg{};
  for (const auto& f : fixture_set()) {
    const cplx a = random_point(g, 0.95);
    const double g1 = gamma_boundary(f, a, 1.0, cfg).value;
    const double g2 = gamma_boundary(f, a, 2.0, cfg).value;
    CHECK(g1 <= g2 * (1.0 + 1e-6) + 1e-9);
  }
}

TEST_CASE("area and boundary routes agree at p = 2", "[hardy][gamma]") {
  // calibration: the identity at the origin pins the dA convention
  CHECK(gamma_area_p2(AnalyticMap::identity(), cplx(0, 0)).value == Approx(1.0).epsilon(1e-8));
  auto g = rng(47);
  const QuadConfig cfg{};
  for (const auto& f : fixture_set()) {
    const cplx a = random_point(g, 0.95);
    const double area = gamma_area_p2(f, a, cfg).value;
    const double bnd = sqr(gamma_boundary(f, a, 2.0, cfg).value);
    if (bnd < 1e-12) {
      CHECK(area < 1e-10);
      continue;
    }
    CHECK(std::abs(area - bnd) <= 0.02 * bnd);
  }
  // gamma_area_p2(id, a) = 1-|a|^2 within 1%
  for (const cplx a : {cplx(0.5, 0), cplx(0.3, -0.8), cplx(0.95, 0)}) {
    CHECK(gamma_area_p2(AnalyticMap::identity(), a).value ==
          Approx(1.0 - std::norm(a)).epsilon(0.01));
  }
}

TEST_CASE("dilations contract the weighted oscillation sup", "[hardy][gamma]") {
  const DiskGrid grid = DiskGrid::dyadic(12, 8);
  auto w = WeightSpec::power(0.25);
  const std::vector<AnalyticMap> fs = {fixture_set()[1], fixture_set()[7], fixture_set()[16]};
  for (const cplx c : {cplx(0.5, 0), cplx(0.9, 0), std::polar(1.0, kPi / 3.0)}) {
    for (const auto& f : fs) {
      const AnalyticMap tc = AnalyticMap::compose(f, AnalyticMap::dilate(c));
      for (double p : {1.0, 2.0}) {
        const double s_f = seminorm(f, *w, p, grid).sup;
        const double s_tc = seminorm(tc, *w, p, grid).sup;
        CHECK(s_tc <= (1.0 + 1e-2) * s_f);
      }
    }
  }
}

TEST_CASE("composition bound for zero-fixing self-maps", "[hardy]") {
  // ||f o u||_{H^2} <= C ||f||_{H^2} ||u||_{H^2} for f(0) = u(0) = 0
  const QuadConfig cfg = tight();
  const std::vector<AnalyticMap> fs = {
      AnalyticMap::polynomial({cplx(0, 0), cplx(1, 0), cplx(0.5, 0.5)}),
      AnalyticMap::polynomial({cplx(0, 0), cplx(0, 0), cplx(1, 0)}),
      AnalyticMap::polynomial({cplx(0, 0), cplx(0.3, -0.2), cplx(0, 0), cplx(0.5, 0)}),
  };
  const std::vector<AnalyticMap> us = {
      AnalyticMap::polynomial({cplx(0, 0), cplx(0.5, 0), cplx(0.5, 0)}),
      AnalyticMap::polynomial({cplx(0, 0), cplx(0, 0), cplx(1, 0)}),
      AnalyticMap::blaschke({cplx(0.6, 0)}, 1),
  };
  double worst = 0.0;
  for (const auto& f : fs)
    for (const auto& u : us) {
      const double lhs = hp_norm(AnalyticMap::compose(f, u), 2.0, cfg).value;
      const double rhs = hp_norm(f, 2.0, cfg).value * hp_norm(u, 2.0, cfg).value;
      worst = std::max(worst, lhs / rhs);
    }
  CHECK(worst <= 10.0);
}

TEST_CASE("arc oscillation", "[hardy][arc]") {
  CHECK(arc_eta(AnalyticMap::constant(cplx(2, 1)), Arc{0.3, 0.25}, 1.0).value == 0.0);
  // full circle, p = 2: mean 0 and unit second moment
  CHECK(arc_eta(AnalyticMap::identity(), Arc{0.0, 1.0}, 2.0, tight()).value ==
        Approx(1.0).epsilon(1e-8));
  // half circle centered at 1, p = 1: dense Riemann oracle
  const double oracle = riemann_arc_eta(AnalyticMap::identity(), 0.0, 0.5, 1.0, 1.0, 400000);
  const double got = arc_eta(AnalyticMap::identity(), Arc{0.0, 0.5}, 1.0, tight()).value;
  CHECK(got == Approx(oracle).epsilon(1e-5));
  CHECK(oracle == Approx(0.72603008837).epsilon(1e-6));  // frozen from the oracle
  CHECK_THROWS_AS(arc_eta(AnalyticMap::identity(), Arc{0.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("NormEstimate contract", "[hardy]") {
  QuadConfig cfg;
  cfg.tol = 1e-8;
  const NormEstimate est = hp_norm(AnalyticMap::polynomial({cplx(1, 0), cplx(1, 0)}), 2.0, cfg);
  CHECK(est.status == NormStatus::Converged);
  CHECK(est.radii_used >= 8);
  CHECK(est.last_increment / sqr(est.value) <= cfg.tol);

  QuadConfig bad;
  bad.nodes = 100;  // not a power of two
  CHECK_THROWS_AS(hp_norm(AnalyticMap::identity(), 2.0, bad), DomainError);
  bad = QuadConfig{};
  bad.tol = 0.5;
  CHECK_THROWS_AS(hp_norm(AnalyticMap::identity(), 2.0, bad), DomainError);
  CHECK_THROWS_AS(hp_norm(AnalyticMap::identity(), 0.5), DomainError);
}

TEST_CASE("decreasing radius means trip the fault detector", "[hardy]") {
  QuadConfig cfg;
  // a mean sequence that rises and then dips: analyticity forbids this, so
  // the schedule must refuse to average over it
  CHECK_THROWS_AS(hp_limit([](double r) { return r < 0.9 ? r : 0.5; }, cfg, 2.0),
                  QuadratureFault);
  // a plain nondecreasing mean goes through
  const NormEstimate ok = hp_limit([](double r) { return 1.0 - (1.0 - r) * (1.0 - r); }, cfg, 2.0);
  CHECK(ok.status == NormStatus::Converged);
}

TEST_CASE("boundary-singular primitives cap the radius schedule honestly", "[hardy]") {
  auto log1 = WeightSpec::log_weight(1.0);
  const AnalyticMap h = AnalyticMap::h_primitive(log1, cplx(1, 0));
  const cplx deep(1.0 - std::ldexp(1.0, -24), 0.0);
  const NormEstimate est = gamma_boundary(h, deep, 2.0);
  CHECK(est.value > 0.0);
  CHECK(est.radii_used <= 15);  // schedule clamped to the evaluable region
}
