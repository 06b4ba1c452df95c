#pragma once

#include "bmoa/analytic.hpp"

namespace bmoa {

/// Quadrature and limit-taking policy shared by the norm estimators.
struct QuadConfig {
  int nodes = 1024;    // angular nodes for the uniform circle rule (power of two)
  int max_k = 30;      // radius schedule r_k = 1 - 2^-k, k = 1..max_k
  double tol = 1e-6;   // relative stall tolerance
  int stall = 3;       // consecutive small increments required to converge

  void validate() const {
    if (nodes < 16 || !is_pow2(nodes))
      throw DomainError("QuadConfig: nodes must be a power of two >= 16");
    if (max_k < 8 || max_k > 38) throw DomainError("QuadConfig: max_k in [8,38] required");
    if (!(tol > 0.0 && tol <= 1e-2)) throw DomainError("QuadConfig: tol in (0, 1e-2] required");
    if (stall < 1) throw DomainError("QuadConfig: stall >= 1 required");
  }
};

enum class NormStatus { Converged, MonotoneDiverging, MaxIterations };

inline const char* to_string(NormStatus s) {
  switch (s) {
    case NormStatus::Converged: return "converged";
    case NormStatus::MonotoneDiverging: return "monotone-diverging";
    default: return "max-iterations";
  }
}

struct NormEstimate {
  double value = 0.0;
  NormStatus status = NormStatus::Converged;
  double last_increment = 0.0;
  int radii_used = 0;
};

/// A quadrature rule on the circle: angles and weights with sum(w) = 1,
/// so sums against it approximate integrals with respect to dm.
struct CircleRule {
  std::vector<double> theta;
  std::vector<double> weight;
  std::size_t size() const { return theta.size(); }
};

inline CircleRule uniform_circle_rule(int M) {
  CircleRule r;
  r.theta.resize(M);
  r.weight.assign(M, 1.0 / M);
  for (int k = 0; k < M; ++k) r.theta[k] = kTwoPi * k / M;
  return r;
}

// Graded rule: dyadic panels refined toward each layer direction down to that
// layer's scale, Gauss-Legendre nodes per panel. Integrands pulled back
// through sigma_a vary on scale ~ dist(theta, layer), which panels of
// comparable width resolve; a uniform rule cannot once the scale drops
// below its spacing.
inline CircleRule graded_circle_rule(std::vector<BoundaryLayer> layers, int nodes_per_cell = 12) {
  if (layers.empty()) layers.push_back({0.0, 1.0});
  const double base = layers.front().angle - kPi;
  auto fold = [&](double th) {
    double t = std::fmod(th - base, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;  // in [0, 2pi), relative to base
  };
  std::vector<double> cuts;
  cuts.push_back(0.0);
  cuts.push_back(kTwoPi);
  auto push_wrapped = [&](double s) {
    // refinement cones wrap around the circle seam
    double t = std::fmod(s, kTwoPi);
    if (t < 0) t += kTwoPi;
    if (t > 1e-13 && t < kTwoPi - 1e-13) cuts.push_back(t);
  };
  for (const auto& l : layers) {
    const double scale = std::clamp(l.scale, 1e-13, kTwoPi);
    const int depth = std::clamp(static_cast<int>(std::ceil(std::log2(kPi / scale))) + 2, 3, 46);
    const double c = fold(l.angle);
    for (int m = 0; m <= depth; ++m) {
      const double d = kPi * std::ldexp(1.0, -m);
      push_wrapped(c - d);
      push_wrapped(c + d);
    }
    push_wrapped(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-13; }),
             cuts.end());
  if (cuts.back() < kTwoPi - 1e-13) cuts.push_back(kTwoPi);

  CircleRule r;
  std::vector<double> xs, ws;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    xs.clear();
    ws.clear();
    gl::append(nodes_per_cell, cuts[i], cuts[i + 1], xs, ws);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      r.theta.push_back(base + xs[j]);
      r.weight.push_back(ws[j] / kTwoPi);
    }
  }
  return r;
}

// Takes the nondecreasing radius means m(r_k) to their limit. `mean(r)`
// must return the discrete p-mean at radius r against a fixed rule; the
// limit over r realizes the H^p supremum.
template <class MeanFn>
NormEstimate hp_limit(MeanFn&& mean, const QuadConfig& cfg, double p) {
  cfg.validate();
  NormEstimate est;
  double prev = -1.0;
  int stall_count = 0;
  std::vector<double> increments;
  for (int k = 1; k <= cfg.max_k; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    const double m = mean(r);
    if (!std::isfinite(m)) throw QuadratureError("hp_limit: non-finite mean");
    est.radii_used = k;
    if (prev >= 0.0) {
      if (m < prev - 1e-9 * std::max(prev, 1e-300) - 1e-300)
        throw QuadratureFault("hp_limit: radius means decreased (quadrature fault)");
      const double inc = m - prev;
      increments.push_back(inc);
      est.last_increment = inc;
      const double rel = inc / std::max(m, 1e-300);
      if (rel <= cfg.tol) {
        if (++stall_count >= cfg.stall) {
          est.value = std::pow(m, 1.0 / p);
          est.status = NormStatus::Converged;
          return est;
        }
      } else {
        stall_count = 0;
      }
    }
    prev = m;
  }
  est.value = std::pow(std::max(prev, 0.0), 1.0 / p);
  const std::size_t n = increments.size();
  bool growing = n >= 5;
  for (std::size_t i = n >= 5 ? n - 5 : 0; i + 1 < n; ++i)
    growing = growing && increments[i + 1] >= increments[i] * 0.999;
  est.status = (growing && n >= 5) ? NormStatus::MonotoneDiverging : NormStatus::MaxIterations;
  return est;
}

}  // namespace bmoa
