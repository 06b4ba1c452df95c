#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bmoa {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Interior evaluation is only meaningful up to this distance from the circle;
// beyond it Moebius denominators lose all precision in 64-bit arithmetic.
inline constexpr double kBoundaryCutoff = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct InvalidSymbol : Error {
  using Error::Error;
};
struct QuadratureError : Error {
  using Error::Error;
};
struct QuadratureFault : QuadratureError {
  using QuadratureError::QuadratureError;
};
struct IllConditioned : Error {
  using Error::Error;
};
struct EvalError : Error {
  using Error::Error;
};

inline bool is_pow2(int m) { return m > 0 && (m & (m - 1)) == 0; }

inline double sqr(double x) { return x * x; }

/// sigma_a(z) = (a - z)/(1 - conj(a) z), the disk involution.
inline cplx mobius_apply(cplx a, cplx z) {
  return (a - z) / (1.0 - std::conj(a) * z);
}

/// d/dz sigma_a(z) = (|a|^2 - 1)/(1 - conj(a) z)^2.
inline cplx mobius_deriv(cplx a, cplx z) {
  const cplx d = 1.0 - std::conj(a) * z;
  return (std::norm(a) - 1.0) / (d * d);
}

/// Thread cap: BMOA_LAB_THREADS overrides hardware concurrency.
inline int max_threads() {
  static const int n = [] {
    if (const char* s = std::getenv("BMOA_LAB_THREADS")) {
      const int v = std::atoi(s);
      if (v >= 1) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
  }();
  return n;
}

// Deterministic parallel map: body(i) fills independent slots, so the result
// cannot depend on scheduling. First exception wins and is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const int nt = static_cast<int>(std::min<std::size_t>(max_threads(), n ? n : 1));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mx;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mx);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

namespace gl {

// Gauss-Legendre nodes/weights on [-1,1], positive half only.
inline constexpr std::array<double, 4> kX8 = {0.1834346424956498, 0.5255324099163290,
                                              0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 4> kW8 = {0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};
inline constexpr std::array<double, 6> kX12 = {0.1252334085114689, 0.3678314989981802,
                                               0.5873179542866175, 0.7699026741943047,
                                               0.9041172563704749, 0.9815606342467192};
inline constexpr std::array<double, 6> kW12 = {0.2491470458134028, 0.2334925365383548,
                                               0.2031674267230659, 0.1600783285433462,
                                               0.1069393259953184, 0.0471753363865118};
inline constexpr std::array<double, 8> kX16 = {0.0950125098376374, 0.2816035507792589,
                                               0.4580167776572274, 0.6178762444026438,
                                               0.7554044083550030, 0.8656312023878318,
                                               0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kW16 = {0.1894506104550685, 0.1826034150449236,
                                               0.1691565193950025, 0.1495959888165767,
                                               0.1246289712555339, 0.0951585116824928,
                                               0.0622535239386479, 0.0271524594117541};

/// Appends the n-point rule mapped to [a,b]; n in {8,12,16}.
inline void append(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto emit = [&](const double* xs, const double* ws, int m) {
    for (int i = 0; i < m; ++i) {
      x.push_back(mid - half * xs[i]);
      w.push_back(half * ws[i]);
      x.push_back(mid + half * xs[i]);
      w.push_back(half * ws[i]);
    }
  };
  switch (n) {
    case 8: emit(kX8.data(), kW8.data(), 4); break;
    case 12: emit(kX12.data(), kW12.data(), 6); break;
    case 16: emit(kX16.data(), kW16.data(), 8); break;
    default: throw DomainError("gl::append: unsupported rule size");
  }
}

}  // namespace gl

/// Adaptive Simpson on [a,b] with absolute tolerance; throws QuadratureError
/// if the depth cap is hit before the local error estimate is met.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 48) {
  struct Impl {
    const std::remove_reference_t<F>& fn;
    int cap;
    double run(double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = fn(lm), frm = fn(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-15)
        return left + right + delta / 15.0;
      if (depth >= cap) throw QuadratureError("adaptive_simpson: refinement cap hit");
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f, max_depth}.run(a, b, fa, fm, fb, whole, abs_tol, 0);
}

}  // namespace bmoa
