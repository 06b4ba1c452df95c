#pragma once

#include <random>

#include "bmoa/operators.hpp"

namespace bmoa_tests {

using namespace bmoa;

/// Deterministic RNG for fixture sampling.
inline std::mt19937_64 rng(std::uint64_t seed = 20240601ull) { return std::mt19937_64(seed); }

inline cplx random_point(std::mt19937_64& g, double rmax) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r = rmax * std::sqrt(U(g));
  const double t = kTwoPi * U(g);
  return std::polar(r, t);
}

/// The shared 20-function set: polynomials up to degree 6, Moebius maps,
/// finite Blaschke products, dilations, compositions and h-primitives with
/// interior scalar.
inline std::vector<AnalyticMap> fixture_set() {
  using M = AnalyticMap;
  auto p25 = WeightSpec::power(0.25);
  auto log1 = WeightSpec::log_weight(1.0);
  auto cst = WeightSpec::constant();
  std::vector<AnalyticMap> fs;
  fs.push_back(M::polynomial({cplx(1, 0), cplx(1, 0)}));                               // 1+z
  fs.push_back(M::polynomial({cplx(0, 0), cplx(1, 0), cplx(1, 0)}));                   // z+z^2
  fs.push_back(M::polynomial({cplx(0.5, 0), cplx(0, 1), cplx(-0.25, 0.5)}));           // deg 2
  fs.push_back(M::polynomial({cplx(0, 0), cplx(2, -1), cplx(0, 0), cplx(0.5, 0.5)}));  // deg 3
  fs.push_back(M::polynomial({cplx(1, 1), cplx(0, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}));
  fs.push_back(M::polynomial(
      {cplx(0.2, 0), cplx(-1, 0), cplx(0.3, 0.3), cplx(0, 0), cplx(0, -0.5), cplx(0.1, 0),
       cplx(0.05, 0.05)}));  // deg 6
  fs.push_back(M::mobius(cplx(0.5, 0)));
  fs.push_back(M::mobius(cplx(0.3, 0.4)));
  fs.push_back(M::mobius(cplx(-0.8, 0)));
  fs.push_back(M::mobius(cplx(0, 0.9)));
  fs.push_back(M::blaschke({cplx(0.5, 0), cplx(0, -0.3)}, 0));
  fs.push_back(M::blaschke({cplx(0.9, 0), cplx(0.7, 0)}, 1));
  fs.push_back(M::compose(M::polynomial({cplx(0, 0), cplx(1, 0), cplx(1, 0)}),
                          M::dilate(cplx(0.9, 0))));           // (z+z^2) o 0.9z
  fs.push_back(M::compose(M::mobius(cplx(0.5, 0)), M::halfmap()));
  fs.push_back(M::int_power(M::mobius(cplx(0.4, 0.1)), 3));
  fs.push_back(M::h_primitive(cst, cplx(0.9, 0)));
  fs.push_back(M::h_primitive(p25, cplx(0.9, 0)));
  fs.push_back(M::h_primitive(log1, cplx(-0.6, 0)));
  fs.push_back(M::halfmap());
  fs.push_back(M::polynomial({cplx(1, 0), cplx(-1, 0)}));  // 1-z
  return fs;
}

/// Built-in admissible weights for batteries.
inline std::vector<WeightPtr> admissible_weights() {
  return {WeightSpec::constant(),       WeightSpec::power(0.1),
          WeightSpec::power(0.25),      WeightSpec::power(0.4),
          WeightSpec::log_weight(0.5),  WeightSpec::log_weight(1.0),
          WeightSpec::log_weight(2.0)};
}

/// Central finite difference for derivative checks.
inline cplx central_diff(const AnalyticMap& f, cplx z, double h = 1e-5) {
  return (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
}

/// Golden-section maximizer for 1-D oracles on [a,b].
template <class F>
double golden_max(F&& f, double a, double b, int iters = 200) {
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

/// Dense Riemann p-mean oscillation of f over an arc at radius r (oracle).
inline double riemann_arc_eta(const AnalyticMap& f, double center, double length, double p,
                              double r = 1.0, int n = 1000000) {
  const double half = kPi * length;
  cplx mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = center - half + (2.0 * half) * (i + 0.5) / n;
    mean += f.eval(std::polar(r, th));
  }
  mean /= static_cast<double>(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = center - half + (2.0 * half) * (i + 0.5) / n;
    acc += std::pow(std::abs(f.eval(std::polar(r, th)) - mean), p);
  }
  return std::pow(acc / n, 1.0 / p);
}

}  // namespace bmoa_tests
