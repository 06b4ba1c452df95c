#pragma once

#include "bmoa/quadrature.hpp"

namespace bmoa {

/// P_a(w) = (1-|a|^2)/|1 - conj(a) w|^2 on the unit circle.
inline double poisson_kernel(cplx a, cplx w) {
  if (!(std::abs(a) < 1.0)) throw DomainError("poisson_kernel: |a| < 1 required");
  const double aw = std::abs(w);
  if (std::abs(aw - 1.0) > 1e-12) throw DomainError("poisson_kernel: |w| = 1 required");
  w /= aw;
  return (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * w);
}

namespace detail {

// Generic radius-schedule limit without the monotonicity requirement
// (arc oscillation means are not Hardy-convex).
template <class MeanFn>
NormEstimate schedule_limit(MeanFn&& mean, const QuadConfig& cfg, double p,
                            bool require_monotone) {
  if (require_monotone) return hp_limit(mean, cfg, p);
  cfg.validate();
  NormEstimate est;
  double prev = -1.0;
  int stall_count = 0;
  for (int k = 1; k <= cfg.max_k; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    const double m = mean(r);
    if (!std::isfinite(m)) throw QuadratureError("schedule_limit: non-finite mean");
    est.radii_used = k;
    if (prev >= 0.0) {
      const double inc = m - prev;
      est.last_increment = inc;
      if (std::abs(inc) <= cfg.tol * std::max(m, 1e-300)) {
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
  est.status = NormStatus::MaxIterations;
  return est;
}

// Radius cap keeping every sample sigma_a(r w) inside the evaluable region
// |.| <= 1 - 1e-12; active only for boundary-singular trees, where the
// schedule then ends in max-iterations status instead of sampling garbage.
inline QuadConfig clamp_schedule(const AnalyticMap& f, cplx a, QuadConfig cfg) {
  if (f.boundary_evaluable()) return cfg;
  const double slack = (1.0 - std::abs(a)) / (2.0 * kBoundaryCutoff);
  const int cap = static_cast<int>(std::floor(std::log2(std::max(slack, 2.0))));
  cfg.max_k = std::clamp(std::min(cfg.max_k, cap), 8, 38);
  return cfg;
}

/// Layers of w -> f(sigma_a(w)): sigma_a's own pole direction plus f's
/// boundary structure pulled back through the involution.
inline std::vector<BoundaryLayer> gamma_layers(const AnalyticMap& f, cplx a) {
  std::vector<BoundaryLayer> out;
  const double r = std::abs(a);
  out.push_back({r > 0.0 ? std::arg(a) : 0.0, std::max(1.0 - r, 1e-13)});
  for (const auto& l : f.layers()) {
    out.push_back(l);  // raw direction: used by the Poisson-route samples
    const cplx w = std::polar(1.0, l.angle);
    const cplx pre = mobius_apply(a, w);
    const double stretch = std::abs(mobius_deriv(a, pre));
    out.push_back({std::arg(pre), l.scale / std::max(stretch, 1e-300)});
  }
  return out;
}

}  // namespace detail

/// H^p norm by the uniform trapezoid rule over cfg.nodes angles at the dyadic
/// radius schedule; spectrally accurate for boundary-regular integrands.
inline NormEstimate hp_norm(const AnalyticMap& f, double p, const QuadConfig& cfg = {}) {
  if (!(p >= 1.0)) throw DomainError("hp_norm: p >= 1 required");
  cfg.validate();
  const CircleRule rule = uniform_circle_rule(cfg.nodes);
  std::vector<cplx> ws(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) ws[i] = std::polar(1.0, rule.theta[i]);
  auto mean = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = std::abs(f.eval(r * ws[i]));
      acc += rule.weight[i] * (p == 2.0 ? v * v : std::pow(v, p));
    }
    return acc;
  };
  return hp_limit(mean, cfg, p);
}

// gamma(f,a,p) = ||f o sigma_a - f(a)||_{H^p}, evaluated on a circle rule
// graded toward the conformal boundary layer of sigma_a (and any structure
// of f pulled through it). A Poisson-kernel route at the final radius serves
// as a built-in cross-check; disagreement beyond 1% is a quadrature fault.
inline NormEstimate gamma_boundary(const AnalyticMap& f, cplx a, double p,
                                   const QuadConfig& cfg_in = {}) {
  if (!(p >= 1.0)) throw DomainError("gamma_boundary: p >= 1 required");
  if (!(std::abs(a) < 1.0)) throw DomainError("gamma_boundary: |a| < 1 required");
  const QuadConfig cfg = detail::clamp_schedule(f, a, cfg_in);
  cfg.validate();
  const CircleRule rule = graded_circle_rule(detail::gamma_layers(f, a));
  std::vector<cplx> ws(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) ws[i] = std::polar(1.0, rule.theta[i]);
  const cplx fa = f.eval(a);
  double last_r = 0.5;
  auto mean = [&](double r) {
    last_r = r;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = std::abs(f.eval(mobius_apply(a, r * ws[i])) - fa);
      acc += rule.weight[i] * (p == 2.0 ? v * v : std::pow(v, p));
    }
    return acc;
  };
  NormEstimate est = hp_limit(mean, cfg, p);
  if (est.status == NormStatus::Converged && est.value > 1e-9) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double v = std::abs(f.eval(last_r * ws[i]) - fa);
      const double pk = (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * ws[i]);
      acc += rule.weight[i] * (p == 2.0 ? v * v : std::pow(v, p)) * pk;
    }
    const double poisson_value = std::pow(acc, 1.0 / p);
    if (std::abs(poisson_value - est.value) > 0.01 * est.value + 1e-9)
      throw QuadratureFault("gamma_boundary: Poisson cross-check off by more than 1% (" +
                            WeightSpec::trim_num(poisson_value) + " vs " +
                            WeightSpec::trim_num(est.value) + ")");
  }
  return est;
}

// Area-integral route for gamma^2 at p = 2:
//
//   gamma(f,a,2)^2 = 2 Int_D |f'(sigma_a(z)) sigma_a'(z)|^2 log(1/|z|) dA(z)/pi,
//
// the conformally recentred Littlewood-Paley identity. The log kernel (not
// its 1-|z|^2 envelope) is what makes the boundary and area routes agree to
// quadrature accuracy instead of up to a factor. Returns the SQUARED value.
inline NormEstimate gamma_area_p2(const AnalyticMap& f, cplx a, const QuadConfig& cfg = {}) {
  if (!(std::abs(a) < 1.0)) throw DomainError("gamma_area_p2: |a| < 1 required");
  cfg.validate();
  const CircleRule rule = graded_circle_rule(detail::gamma_layers(f, a));
  std::vector<cplx> ws(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) ws[i] = std::polar(1.0, rule.theta[i]);

  auto ring_mean = [&](double r) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const cplx z = r * ws[i];
      const cplx d = f.eval_deriv(mobius_apply(a, z)) * mobius_deriv(a, z);
      acc += rule.weight[i] * std::norm(d);
    }
    return acc;
  };

  // radial panels: dyadic toward both endpoints (log kernel at 0, boundary
  // mass near 1); the near-1 depth follows the recentring depth of a
  const int depth1 = std::clamp(static_cast<int>(std::ceil(-std::log2(1.0 - std::abs(a)))) + 12,
                                16, 30);
  std::vector<double> xs, wq;
  for (int m = 1; m <= 26; ++m)
    gl::append(8, std::ldexp(1.0, -m - 1), std::ldexp(1.0, -m), xs, wq);
  for (int m = 1; m <= depth1; ++m)
    gl::append(8, 1.0 - std::ldexp(1.0, -m), 1.0 - std::ldexp(1.0, -m - 1), xs, wq);
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = xs[i];
    total += wq[i] * std::log(1.0 / r) * r * ring_mean(r);
  }
  NormEstimate est;
  est.value = 4.0 * total;
  est.status = NormStatus::Converged;
  est.radii_used = static_cast<int>(xs.size());
  return est;
}

/// An arc on the circle: center angle and normalized length m(I) in (0,1].
struct Arc {
  double center = 0.0;
  double length = 1.0;
};

// eta(f,I,p): the p-mean oscillation of f around its arc mean, sampled on
// circles r_k up to stall. The arc rule grades toward the endpoints and any
// boundary structure of f inside the arc.
inline NormEstimate arc_eta(const AnalyticMap& f, const Arc& arc, double p,
                            const QuadConfig& cfg = {}) {
  if (!(arc.length > 0.0 && arc.length <= 1.0))
    throw DomainError("arc_eta: m(I) in (0,1] required");
  if (!(p >= 1.0)) throw DomainError("arc_eta: p >= 1 required");
  const double half = kPi * arc.length;
  const double lo = arc.center - half, hi = arc.center + half;
  std::vector<double> cuts = {lo, hi};
  for (int m = 1; m <= 8; ++m) {
    const double d = (hi - lo) * std::ldexp(1.0, -m - 1);
    cuts.push_back(lo + d);
    cuts.push_back(hi - d);
  }
  for (const auto& l : f.layers()) {
    double c = std::fmod(l.angle - lo, kTwoPi);
    if (c < 0) c += kTwoPi;
    c += lo;
    if (c <= lo + 1e-13 || c >= hi - 1e-13) continue;
    const int depth =
        std::clamp(static_cast<int>(std::ceil(std::log2(half / std::clamp(l.scale, 1e-13, kPi)))) + 2,
                   2, 46);
    cuts.push_back(c);
    for (int m = 0; m <= depth; ++m) {
      const double d = half * std::ldexp(1.0, -m);
      if (c - d > lo + 1e-13) cuts.push_back(c - d);
      if (c + d < hi - 1e-13) cuts.push_back(c + d);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return y - x < 1e-13; }),
             cuts.end());
  std::vector<double> xs, wq;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) gl::append(8, cuts[i], cuts[i + 1], xs, wq);
  const double measure = hi - lo;
  std::vector<cplx> ws(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ws[i] = std::polar(1.0, xs[i]);

  auto mean = [&](double r) {
    cplx mi = 0.0;
    std::vector<cplx> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      vals[i] = f.eval(r * ws[i]);
      mi += wq[i] * vals[i];
    }
    mi /= measure;
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double v = std::abs(vals[i] - mi);
      acc += wq[i] * (p == 2.0 ? v * v : std::pow(v, p));
    }
    return acc / measure;
  };
  return detail::schedule_limit(mean, cfg, p, /*require_monotone=*/false);
}

}  // namespace bmoa
