#pragma once

#include "bmoa/hardy.hpp"

namespace bmoa {

// Sample points a in D with geometric refinement toward the boundary:
// rho_j = 1 - 2^-j, angular count doubling past level 16. Deterministic
// ordering (level ascending, angle ascending).
struct DiskGrid {
  struct Point {
    int level = 0;
    double rho = 0.0;
    double angle = 0.0;
    cplx a{};
  };
  int levels = 24;
  int base_angles = 64;
  std::vector<Point> pts;

  static DiskGrid dyadic(int J = 24, int base_angles = 64) {
    if (J < 1 || J > 30) throw DomainError("DiskGrid: levels in [1,30] required");
    if (base_angles < 1) throw DomainError("DiskGrid: base_angles >= 1 required");
    DiskGrid g;
    g.levels = J;
    g.base_angles = base_angles;
    for (int j = 0; j <= J; ++j) {
      const double rho = 1.0 - std::ldexp(1.0, -j);
      const int n = (j == 0) ? 1 : (j > 16 ? 2 * base_angles : base_angles);
      for (int k = 0; k < n; ++k) {
        const double th = kTwoPi * k / n;
        g.pts.push_back({j, rho, th, std::polar(rho, th)});
      }
    }
    return g;
  }

  DiskGrid with_point(cplx extra) const {
    DiskGrid g = *this;
    g.pts.push_back({levels + 1, std::abs(extra), std::arg(extra), extra});
    return g;
  }
};

enum class Tail { DecayingToZero, Bounded, Diverging, Inconclusive };

inline const char* to_string(Tail t) {
  switch (t) {
    case Tail::DecayingToZero: return "decaying-to-zero";
    case Tail::Bounded: return "bounded";
    case Tail::Diverging: return "diverging";
    default: return "inconclusive";
  }
}

struct LevelStat {
  int level = 0;
  double rho = 0.0;
  double max_value = 0.0;
  double witness_angle = 0.0;
};

struct SeminormProfile {
  std::vector<LevelStat> levels;
  double sup = 0.0;
  cplx witness{};
  int witness_level = 0;
  double value_at_zero = 0.0;  // |f(0)|
  double norm = 0.0;           // |f(0)| + sup
  Tail tail = Tail::Inconclusive;
  double tail_tol = 0.02;
  int failed_rows = 0;
};

// The limsup toward the boundary is judged from the level maxima: either the
// last levels sit below tol * sup, or they decay by a sustained factor. A
// plateau is "bounded"; sustained growth is "diverging".
inline Tail classify_tail(const std::vector<LevelStat>& levels, double sup, double rel_tol) {
  const int n = static_cast<int>(levels.size());
  if (n < 4) return Tail::Inconclusive;
  auto s = [&](int i) { return levels[i].max_value; };
  const double floor_tol = rel_tol * std::max(sup, 1e-300);
  bool last3_small = true;
  for (int i = n - 3; i < n; ++i) last3_small = last3_small && s(i) <= floor_tol;
  if (last3_small) return Tail::DecayingToZero;

  const int w = std::min(10, n - 1);
  bool decreasing = true, increasing = true;
  for (int i = n - w; i + 1 < n; ++i) {
    decreasing = decreasing && s(i + 1) <= s(i) * 1.02 + 1e-300;
    increasing = increasing && s(i + 1) >= s(i) * 0.98;
  }
  const double first = std::max(s(n - w), 1e-300), last = std::max(s(n - 1), 1e-300);
  if (decreasing && first / last >= 1.8) return Tail::DecayingToZero;
  if (increasing && last / first >= 10.0) return Tail::Diverging;

  double lo = s(n - 5), hi = s(n - 5);
  for (int i = n - 5; i < n; ++i) {
    lo = std::min(lo, s(i));
    hi = std::max(hi, s(i));
  }
  if (hi <= 1.05 * sup && (hi - lo) <= 0.5 * std::max(hi, 1e-300)) return Tail::Bounded;
  return Tail::Inconclusive;
}

namespace detail {

template <class PointFn>
SeminormProfile profile_over_grid(const DiskGrid& grid, PointFn&& value_at, double value_at_zero,
                                  double tail_tol) {
  std::vector<double> vals(grid.pts.size(), 0.0);
  std::vector<char> ok(grid.pts.size(), 1);
  parallel_for(grid.pts.size(), [&](std::size_t i) {
    try {
      vals[i] = value_at(grid.pts[i]);
    } catch (const Error&) {
      ok[i] = 0;
    }
  });
  SeminormProfile prof;
  prof.tail_tol = tail_tol;
  prof.value_at_zero = value_at_zero;
  std::map<int, LevelStat> by_level;
  for (std::size_t i = 0; i < grid.pts.size(); ++i) {
    const auto& p = grid.pts[i];
    if (!ok[i]) {
      ++prof.failed_rows;
      continue;
    }
    auto& ls = by_level.try_emplace(p.level, LevelStat{p.level, p.rho, -1.0, 0.0}).first->second;
    if (vals[i] > ls.max_value) {
      ls.max_value = vals[i];
      ls.witness_angle = p.angle;
    }
    if (vals[i] > prof.sup) {
      prof.sup = vals[i];
      prof.witness = p.a;
      prof.witness_level = p.level;
    }
  }
  for (auto& [lvl, ls] : by_level)
    if (ls.max_value >= 0.0) prof.levels.push_back(ls);
  prof.norm = prof.value_at_zero + prof.sup;
  prof.tail = classify_tail(prof.levels, prof.sup, tail_tol);
  return prof;
}

}  // namespace detail

/// Garsia-style route: s_j = max over level j of v(a) gamma(f,a,p);
/// norm = |f(0)| + sup.
inline SeminormProfile seminorm(const AnalyticMap& f, const WeightSpec& w, double p,
                                const DiskGrid& grid, const QuadConfig& cfg = {},
                                double tail_tol = 0.02) {
  cfg.validate();
  const double f0 = std::abs(f.eval(cplx(0.0, 0.0)));
  return detail::profile_over_grid(
      grid,
      [&](const DiskGrid::Point& pt) {
        return w.v_radial(std::abs(pt.a)) * gamma_boundary(f, pt.a, p, cfg).value;
      },
      f0, tail_tol);
}

/// Same data with the tail judged at p = 2; decaying-to-zero is the VMOA
/// membership verdict.
inline SeminormProfile vmoa_profile(const AnalyticMap& f, const WeightSpec& w,
                                    const DiskGrid& grid, const QuadConfig& cfg = {},
                                    double tail_tol = 0.02) {
  return seminorm(f, w, 2.0, grid, cfg, tail_tol);
}

namespace detail {

/// mu_f(S(z)) with d mu_f = |f'|^2 (1-|w|^2) dA/pi over the scaled Carleson
/// box S(z) = {0 < 1-|w| < 2(1-|z|), |arg w - arg z| < 2 pi (1-|z|)}.
inline double carleson_box_mass(const AnalyticMap& f, double rho, double angle) {
  const double eps = 1.0 - rho;
  const double r_lo = std::max(0.0, 1.0 - 2.0 * eps);
  const double dth = std::min(kTwoPi * eps, kPi);

  std::vector<double> txs, tws;
  // grade the angular window toward boundary structure of f inside it
  std::vector<double> cuts = {angle - dth, angle + dth};
  for (int m = 1; m <= 4; ++m) {
    cuts.push_back(angle - dth + dth * std::ldexp(1.0, -m));
    cuts.push_back(angle + dth - dth * std::ldexp(1.0, -m));
    cuts.push_back(angle - dth * std::ldexp(1.0, -m));
    cuts.push_back(angle + dth * std::ldexp(1.0, -m));
  }
  for (const auto& l : f.layers()) {
    double c = std::fmod(l.angle - (angle - dth), kTwoPi);
    if (c < 0) c += kTwoPi;
    c += angle - dth;
    if (c <= angle - dth + 1e-13 || c >= angle + dth - 1e-13) continue;
    cuts.push_back(c);
    for (int m = 0; m <= 40; ++m) {
      const double d = dth * std::ldexp(1.0, -m);
      if (d < std::max(l.scale * 0.25, 1e-13)) break;
      if (c - d > angle - dth + 1e-13) cuts.push_back(c - d);
      if (c + d < angle + dth - 1e-13) cuts.push_back(c + d);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return y - x < 1e-13; }),
             cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) gl::append(8, cuts[i], cuts[i + 1], txs, tws);

  // radial panels dyadic toward the circle, truncated far below the box scale
  std::vector<double> rxs, rws;
  const int m0 = std::max(0, static_cast<int>(std::floor(-std::log2(2.0 * eps))));
  for (int m = m0; m <= m0 + 34; ++m) {
    double a = 1.0 - std::ldexp(1.0, -m), b = 1.0 - std::ldexp(1.0, -m - 1);
    a = std::max(a, r_lo);
    if (b <= a) continue;
    gl::append(8, a, b, rxs, rws);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < rxs.size(); ++i) {
    const double r = rxs[i];
    double ring = 0.0;
    for (std::size_t j = 0; j < txs.size(); ++j) {
      const cplx w = std::polar(r, txs[j]);
      ring += tws[j] * std::norm(f.eval_deriv(w));
    }
    acc += rws[i] * ring * (1.0 - r * r) * r / kPi;
  }
  return acc;
}

}  // namespace detail

/// Carleson route: sqrt of sup v(z)^2 mu_f(S(z)) / (1-|z|) over grid centers
/// with |z| > 1/2, on the same scale as the p = 2 seminorm.
inline SeminormProfile carleson_seminorm(const AnalyticMap& f, const WeightSpec& w,
                                         const DiskGrid& grid, const QuadConfig& cfg = {},
                                         double tail_tol = 0.02) {
  (void)cfg;
  DiskGrid sub = grid;
  sub.pts.clear();
  for (const auto& p : grid.pts)
    if (p.rho > 0.5) sub.pts.push_back(p);
  const double f0 = std::abs(f.eval(cplx(0.0, 0.0)));
  return detail::profile_over_grid(
      sub,
      [&](const DiskGrid::Point& pt) {
        const double mass = detail::carleson_box_mass(f, pt.rho, pt.angle);
        return std::sqrt(sqr(w.v_radial(pt.rho)) * mass / (1.0 - pt.rho));
      },
      f0, tail_tol);
}

/// Arc-BMO route: sup over dyadic arc lengths 2^-1..2^-20 and 32 centers of
/// v(1-m(I)) eta(f,I,p); level index j corresponds to m(I) = 2^-j.
inline SeminormProfile arc_seminorm(const AnalyticMap& f, const WeightSpec& w, double p,
                                    const QuadConfig& cfg = {}, int max_level = 20,
                                    int centers = 32, double tail_tol = 0.02) {
  cfg.validate();
  DiskGrid arcs;
  arcs.levels = max_level;
  arcs.base_angles = centers;
  for (int j = 1; j <= max_level; ++j) {
    const double len = std::ldexp(1.0, -j);
    for (int k = 0; k < centers; ++k)
      arcs.pts.push_back({j, 1.0 - len, kTwoPi * k / centers,
                          std::polar(1.0 - len, kTwoPi * k / centers)});
  }
  const double f0 = std::abs(f.eval(cplx(0.0, 0.0)));
  return detail::profile_over_grid(
      arcs,
      [&](const DiskGrid::Point& pt) {
        const double len = 1.0 - pt.rho;
        return w.v_radial(1.0 - len) * arc_eta(f, Arc{pt.angle, len}, p, cfg).value;
      },
      f0, tail_tol);
}

struct PIndependence {
  double seminorm_p1 = 0.0;
  double seminorm_p2 = 0.0;
  double ratio = 1.0;
  bool degenerate = false;
};

/// Ratio of the p = 1 to the p = 2 seminorm; 0/0 returns 1 with a flag.
inline PIndependence p_independence_ratio(const AnalyticMap& f, const WeightSpec& w,
                                          const DiskGrid& grid, const QuadConfig& cfg = {}) {
  PIndependence out;
  out.seminorm_p1 = seminorm(f, w, 1.0, grid, cfg).sup;
  out.seminorm_p2 = seminorm(f, w, 2.0, grid, cfg).sup;
  if (out.seminorm_p1 < 1e-12 && out.seminorm_p2 < 1e-12) {
    out.ratio = 1.0;
    out.degenerate = true;
  } else {
    out.ratio = out.seminorm_p1 / out.seminorm_p2;
  }
  return out;
}

struct DilationStep {
  int k = 0;
  double c = 0.0;
  double norm = 0.0;
};

struct DilationProfile {
  std::vector<DilationStep> steps;
  double f_norm = 0.0;
  bool decaying = false;
};

/// ||T_c f - f||_{BMOA_v} along c_k = 1 - 2^-k; decaying when the final
/// value drops below rel_tol times ||f||.
inline DilationProfile dilation_convergence(const AnalyticMap& f, const WeightSpec& w,
                                            const DiskGrid& grid, int k_max = 12,
                                            const QuadConfig& cfg = {}, double rel_tol = 1e-2) {
  DilationProfile out;
  out.f_norm = seminorm(f, w, 2.0, grid, cfg).norm;
  for (int k = 1; k <= k_max; ++k) {
    const double c = 1.0 - std::ldexp(1.0, -k);
    const AnalyticMap diff = AnalyticMap::compose(f, AnalyticMap::dilate(c)) - f;
    out.steps.push_back({k, c, seminorm(diff, w, 2.0, grid, cfg).norm});
  }
  out.decaying = !out.steps.empty() &&
                 out.steps.back().norm <= rel_tol * std::max(out.f_norm, 1e-300);
  return out;
}

}  // namespace bmoa
