#pragma once

#include <memory>

#include "bmoa/weights.hpp"

namespace bmoa {

enum class NodeKind {
  Const,
  Identity,
  Polynomial,
  Mobius,
  Blaschke,
  Dilation,
  HPrimitive,
  Sum,
  Product,
  Compose,
  IntPower
};

/// A direction on the circle near which a function varies on a short scale.
/// Drives the graded quadrature rules.
struct BoundaryLayer {
  double angle = 0.0;
  double scale = 1.0;
};

// Immutable expression tree for an analytic function on the (closed) disk.
// No simplification is ever performed; evaluation is exact recursion.
// Values are cheap handles and safe to share across threads.
class AnalyticMap {
  struct Node {
    NodeKind kind;
    cplx c{};                     // Const value / Mobius a / Dilation c / HPrimitive scalar
    std::vector<cplx> zs;         // Polynomial coeffs (ascending) / Blaschke zeros
    int m = 0;                    // Blaschke zero order at 0 / IntPower exponent
    WeightPtr weight;             // HPrimitive generator
    std::vector<AnalyticMap> kids;
  };
  using NodePtr = std::shared_ptr<const Node>;

 public:
  AnalyticMap() : AnalyticMap(identity()) {}

  static AnalyticMap constant(cplx c) {
    Node n;
    n.kind = NodeKind::Const;
    n.c = c;
    return wrap(std::move(n));
  }

  static AnalyticMap identity() {
    Node n;
    n.kind = NodeKind::Identity;
    return wrap(std::move(n));
  }

  static AnalyticMap polynomial(std::vector<cplx> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    Node n;
    n.kind = NodeKind::Polynomial;
    n.zs = std::move(coeffs);
    return wrap(std::move(n));
  }

  static AnalyticMap mobius(cplx a) {
    if (!(std::abs(a) < 1.0)) throw InvalidSymbol("mobius: |a| < 1 required");
    Node n;
    n.kind = NodeKind::Mobius;
    n.c = a;
    return wrap(std::move(n));
  }

  static AnalyticMap dilate(cplx c) {
    if (std::abs(c) > 1.0 + kBoundaryCutoff) throw InvalidSymbol("dilate: |c| <= 1 required");
    Node n;
    n.kind = NodeKind::Dilation;
    n.c = c;
    return wrap(std::move(n));
  }

  static AnalyticMap blaschke(std::vector<cplx> zeros, int m = 0) {
    if (m < 0) throw InvalidSymbol("blaschke: zero order m >= 0 required");
    for (cplx b : zeros) {
      const double ab = std::abs(b);
      if (!(ab > 0.0 && ab < 1.0))
        throw InvalidSymbol("blaschke: zeros must lie in D \\ {0}");
    }
    Node n;
    n.kind = NodeKind::Blaschke;
    n.zs = std::move(zeros);
    n.m = m;
    return wrap(std::move(n));
  }

  static AnalyticMap h_primitive(WeightPtr w, cplx scalar) {
    if (!w) throw InvalidSymbol("h_primitive: missing weight");
    if (std::abs(scalar) > 1.0 + kBoundaryCutoff)
      throw InvalidSymbol("h_primitive: |scalar| <= 1 required");
    Node n;
    n.kind = NodeKind::HPrimitive;
    n.c = scalar;
    n.weight = std::move(w);
    return wrap(std::move(n));
  }

  static AnalyticMap sum(std::vector<AnalyticMap> kids) {
    Node n;
    n.kind = NodeKind::Sum;
    n.kids = std::move(kids);
    return wrap(std::move(n));
  }
  static AnalyticMap sum(AnalyticMap f, AnalyticMap g) { return sum({std::move(f), std::move(g)}); }

  static AnalyticMap product(std::vector<AnalyticMap> kids) {
    Node n;
    n.kind = NodeKind::Product;
    n.kids = std::move(kids);
    return wrap(std::move(n));
  }
  static AnalyticMap product(AnalyticMap f, AnalyticMap g) {
    return product({std::move(f), std::move(g)});
  }

  static AnalyticMap compose(AnalyticMap outer, AnalyticMap inner) {
    check_selfmap(inner);
    Node n;
    n.kind = NodeKind::Compose;
    n.kids = {std::move(outer), std::move(inner)};
    return wrap(std::move(n));
  }

  static AnalyticMap int_power(AnalyticMap base, int pow) {
    if (pow < 1) throw InvalidSymbol("int_power: exponent >= 1 required");
    Node n;
    n.kind = NodeKind::IntPower;
    n.m = pow;
    n.kids = {std::move(base)};
    return wrap(std::move(n));
  }

  /// (1+z)/2.
  static AnalyticMap halfmap() { return polynomial({0.5, 0.5}); }

  NodeKind kind() const { return n_->kind; }
  cplx param() const { return n_->c; }
  const std::vector<cplx>& coeffs() const { return n_->zs; }

  /// False only for trees carrying a primitive with unimodular scalar, whose
  /// integrand is singular on the circle itself.
  bool boundary_evaluable() const { return boundary_ok(); }

  cplx eval(cplx z) const {
    const double az = std::abs(z);
    if (az > 1.0 + kBoundaryCutoff) throw DomainError("eval: |z| <= 1 required");
    if (az > 1.0 - kBoundaryCutoff && !boundary_ok())
      throw DomainError("eval: node not evaluable on the boundary");
    return eval_raw(z);
  }

  cplx eval_deriv(cplx z) const {
    if (std::abs(z) >= 1.0) throw DomainError("eval_deriv: |z| < 1 required");
    return deriv_raw(z);
  }

  /// f(r e^{2 pi i k / M}), k = 0..M-1; M a power of two, M >= 16.
  std::vector<cplx> boundary_samples(double r, int M) const {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("boundary_samples: r in [0,1] required");
    if (M < 16 || !is_pow2(M)) throw DomainError("boundary_samples: M must be a power of two >= 16");
    std::vector<cplx> out(M);
    for (int k = 0; k < M; ++k) out[k] = eval(std::polar(r, kTwoPi * k / M));
    return out;
  }

  /// Discrete Cauchy coefficients c_0..c_N read off the circle of radius r.
  std::vector<cplx> taylor_coeffs(int N, double r) const {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("taylor_coeffs: r in (0,1) required");
    if (N < 0) throw DomainError("taylor_coeffs: N >= 0 required");
    if (std::pow(r, N) < 1e-12)
      throw IllConditioned("taylor_coeffs: r^N below 1e-12, coefficients not recoverable");
    int M = 64;
    while (M < 4 * (N + 1)) M <<= 1;
    const auto samples = boundary_samples(r, M);
    std::vector<cplx> out(N + 1);
    for (int n = 0; n <= N; ++n) {
      cplx acc = 0.0;
      for (int k = 0; k < M; ++k)
        acc += samples[k] * std::polar(1.0, -kTwoPi * n * k / M);
      out[n] = acc / (static_cast<double>(M) * std::pow(r, n));
    }
    return out;
  }

  /// Boundary directions near which this function (or its derivative) has
  /// short-scale structure. Conservative and cheap; used to grade quadrature.
  void collect_layers(std::vector<BoundaryLayer>& out) const {
    switch (n_->kind) {
      case NodeKind::Mobius: {
        const double r = std::abs(n_->c);
        if (r > 0.5) out.push_back({std::arg(n_->c), 1.0 - r});
        break;
      }
      case NodeKind::Blaschke:
        for (cplx b : n_->zs) {
          const double r = std::abs(b);
          if (r > 0.5) out.push_back({std::arg(b), 1.0 - r});
        }
        break;
      case NodeKind::HPrimitive: {
        const double r = std::abs(n_->c);
        if (r > 0.5) out.push_back({-std::arg(n_->c), (1.0 - r) / r + 1e-14});
        break;
      }
      case NodeKind::Sum:
      case NodeKind::Product:
        for (const auto& k : n_->kids) k.collect_layers(out);
        break;
      case NodeKind::IntPower:
        n_->kids[0].collect_layers(out);
        break;
      case NodeKind::Compose: {
        const AnalyticMap& outer = n_->kids[0];
        const AnalyticMap& inner = n_->kids[1];
        inner.collect_layers(out);
        std::vector<BoundaryLayer> up;
        outer.collect_layers(up);
        if (inner.kind() == NodeKind::Mobius) {
          const cplx b = inner.param();
          for (const auto& l : up) {
            const cplx zf = mobius_apply(b, std::polar(1.0, l.angle));
            const double stretch = std::abs(mobius_deriv(b, zf));
            out.push_back({std::arg(zf), l.scale / std::max(stretch, 1e-300)});
          }
        } else if (inner.kind() == NodeKind::Dilation) {
          const cplx c = inner.param();
          if (std::abs(c) > 1.0 - 1e-9)
            for (const auto& l : up) out.push_back({l.angle - std::arg(c), l.scale});
          // strictly inner dilations wash boundary structure out
        }
        break;
      }
      default:
        break;
    }
  }

  std::vector<BoundaryLayer> layers() const {
    std::vector<BoundaryLayer> out;
    collect_layers(out);
    return out;
  }

 private:
  NodePtr n_;
  explicit AnalyticMap(NodePtr n) : n_(std::move(n)) {}
  static AnalyticMap wrap(Node&& n) { return AnalyticMap(std::make_shared<const Node>(std::move(n))); }

  bool boundary_ok() const {
    if (n_->kind == NodeKind::HPrimitive && std::abs(n_->c) > 1.0 - kBoundaryCutoff) return false;
    for (const auto& k : n_->kids)
      if (!k.boundary_ok()) return false;
    return true;
  }

  // Inner maps that are self-maps by construction skip the numeric check.
  static bool structurally_selfmap(const AnalyticMap& f) {
    switch (f.kind()) {
      case NodeKind::Identity:
      case NodeKind::Mobius:
      case NodeKind::Blaschke:
        return true;
      case NodeKind::Dilation:
        return std::abs(f.param()) <= 1.0 + kBoundaryCutoff;
      case NodeKind::Const:
        return std::abs(f.param()) <= 1.0 + kBoundaryCutoff;
      default:
        return false;
    }
  }

  static void check_selfmap(const AnalyticMap& inner) {
    if (structurally_selfmap(inner)) return;
    double worst = 0.0;
    const int M = 512;
    for (int k = 0; k < M; ++k) {
      const double v = std::abs(inner.eval_raw(std::polar(1.0 - 1e-9, kTwoPi * k / M)));
      worst = std::max(worst, v);
    }
    if (worst > 1.0 + 1e-9)
      throw InvalidSymbol("compose: inner map exceeds the closed disk (max modulus " +
                          WeightSpec::trim_num(worst) + ")");
  }

  cplx eval_raw(cplx z) const {
    const Node& n = *n_;
    switch (n.kind) {
      case NodeKind::Const: return n.c;
      case NodeKind::Identity: return z;
      case NodeKind::Polynomial: {
        cplx acc = 0.0;
        for (auto it = n.zs.rbegin(); it != n.zs.rend(); ++it) acc = acc * z + *it;
        return acc;
      }
      case NodeKind::Mobius: return mobius_apply(n.c, z);
      case NodeKind::Blaschke: {
        cplx acc = 1.0;
        for (int i = 0; i < n.m; ++i) acc *= z;
        for (cplx b : n.zs)
          acc *= (std::abs(b) / b) * (b - z) / (1.0 - std::conj(b) * z);
        return acc;
      }
      case NodeKind::Dilation: return n.c * z;
      case NodeKind::HPrimitive: return h_segment(*n.weight, n.c * z);
      case NodeKind::Sum: {
        cplx acc = 0.0;
        for (const auto& k : n.kids) acc += k.eval_raw(z);
        return acc;
      }
      case NodeKind::Product: {
        cplx acc = 1.0;
        for (const auto& k : n.kids) acc *= k.eval_raw(z);
        return acc;
      }
      case NodeKind::Compose: return n.kids[0].eval_raw(n.kids[1].eval_raw(z));
      case NodeKind::IntPower: {
        cplx b = n.kids[0].eval_raw(z), acc = 1.0;
        int e = n.m;
        while (e > 0) {
          if (e & 1) acc *= b;
          b *= b;
          e >>= 1;
        }
        return acc;
      }
    }
    throw EvalError("eval: unknown node kind");
  }

  cplx deriv_raw(cplx z) const {
    const Node& n = *n_;
    switch (n.kind) {
      case NodeKind::Const: return 0.0;
      case NodeKind::Identity: return 1.0;
      case NodeKind::Polynomial: {
        cplx acc = 0.0;
        for (std::size_t i = n.zs.size(); i-- > 1;)
          acc = acc * z + static_cast<double>(i) * n.zs[i];
        return acc;
      }
      case NodeKind::Mobius: return mobius_deriv(n.c, z);
      case NodeKind::Blaschke: {
        // plain product rule over [z^m, unimodular factors]; stays finite at
        // the zeros, and the factor count is small
        std::vector<cplx> fv, fd;
        if (n.m > 0) {
          cplx zp = 1.0;
          for (int i = 0; i < n.m - 1; ++i) zp *= z;
          fv.push_back(zp * z);
          fd.push_back(static_cast<double>(n.m) * zp);
        }
        for (cplx b : n.zs) {
          const cplx den = 1.0 - std::conj(b) * z;
          fv.push_back((std::abs(b) / b) * (b - z) / den);
          fd.push_back((std::abs(b) / b) * (std::norm(b) - 1.0) / (den * den));
        }
        cplx acc = 0.0;
        for (std::size_t i = 0; i < fv.size(); ++i) {
          cplx term = fd[i];
          for (std::size_t j = 0; j < fv.size(); ++j)
            if (j != i) term *= fv[j];
          acc += term;
        }
        return acc;
      }
      case NodeKind::Dilation: return n.c;
      case NodeKind::HPrimitive: {
        const cplx u = 1.0 - n.c * z;
        return n.c / (u * n.weight->g(1.0 / u));
      }
      case NodeKind::Sum: {
        cplx acc = 0.0;
        for (const auto& k : n.kids) acc += k.deriv_raw(z);
        return acc;
      }
      case NodeKind::Product: {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
          cplx term = n.kids[i].deriv_raw(z);
          for (std::size_t j = 0; j < n.kids.size(); ++j)
            if (j != i) term *= n.kids[j].eval_raw(z);
          acc += term;
        }
        return acc;
      }
      case NodeKind::Compose:
        return n.kids[0].deriv_raw(n.kids[1].eval_raw(z)) * n.kids[1].deriv_raw(z);
      case NodeKind::IntPower: {
        const cplx b = n.kids[0].eval_raw(z);
        cplx acc = static_cast<double>(n.m) * n.kids[0].deriv_raw(z);
        for (int i = 0; i < n.m - 1; ++i) acc *= b;
        return acc;
      }
    }
    throw EvalError("eval_deriv: unknown node kind");
  }
};

inline AnalyticMap operator+(const AnalyticMap& f, const AnalyticMap& g) {
  return AnalyticMap::sum(f, g);
}
inline AnalyticMap operator*(const AnalyticMap& f, const AnalyticMap& g) {
  return AnalyticMap::product(f, g);
}
inline AnalyticMap operator*(cplx c, const AnalyticMap& f) {
  return AnalyticMap::product(AnalyticMap::constant(c), f);
}
inline AnalyticMap operator-(const AnalyticMap& f, const AnalyticMap& g) {
  return AnalyticMap::sum(f, cplx(-1.0) * g);
}

}  // namespace bmoa
