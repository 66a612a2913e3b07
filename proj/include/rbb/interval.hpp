#ifndef RBB_INTERVAL_HPP
#define RBB_INTERVAL_HPP

// Outward-rounded interval arithmetic and a forward-mode dual number that
// carries a gradient. Both are drop-in scalars for the generic problem
// definitions in problems.hpp, which is how the natural interval extension
// and the interval gradient enclosure are obtained.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace rbb {

namespace detail {
inline double down(double v) { return std::isfinite(v) ? std::nextafter(v, -HUGE_VAL) : v; }
inline double up(double v) { return std::isfinite(v) ? std::nextafter(v, HUGE_VAL) : v; }
// 0 * inf is taken as 0 when multiplying interval endpoints.
inline double emul(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }
}  // namespace detail

class Interval {
 public:
  constexpr Interval() = default;
  constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: implicit from constants
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }

  static Interval entire() { return {-HUGE_VAL, HUGE_VAL}; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double diam() const { return hi_ - lo_; }
  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool bounded() const { return std::isfinite(lo_) && std::isfinite(hi_); }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval operator-(const Interval& a) { return raw(-a.hi_, -a.lo_); }
  friend Interval operator+(const Interval& a, const Interval& b) {
    return raw(detail::down(a.lo_ + b.lo_), detail::up(a.hi_ + b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return raw(detail::down(a.lo_ - b.hi_), detail::up(a.hi_ - b.lo_));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p[4] = {detail::emul(a.lo_, b.lo_), detail::emul(a.lo_, b.hi_), detail::emul(a.hi_, b.lo_),
                         detail::emul(a.hi_, b.hi_)};
    return raw(detail::down(*std::min_element(p, p + 4)), detail::up(*std::max_element(p, p + 4)));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ > 0.0 || b.hi_ < 0.0) return a * reciprocal(b);
    if (a.lo_ == 0.0 && a.hi_ == 0.0) return Interval(0.0);
    if (b.lo_ == 0.0 && b.hi_ > 0.0) {
      if (a.lo_ >= 0.0) return raw(detail::down(a.lo_ / b.hi_), HUGE_VAL);
      if (a.hi_ <= 0.0) return raw(-HUGE_VAL, detail::up(a.hi_ / b.hi_));
    }
    if (b.hi_ == 0.0 && b.lo_ < 0.0) {
      if (a.lo_ >= 0.0) return raw(-HUGE_VAL, detail::up(a.lo_ / b.lo_));
      if (a.hi_ <= 0.0) return raw(detail::down(a.hi_ / b.lo_), HUGE_VAL);
    }
    return entire();
  }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  friend Interval hull(const Interval& a, const Interval& b) {
    return raw(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo_ << ", " << a.hi_ << ']';
  }

 private:
  static Interval raw(double lo, double hi) {
    Interval r;
    r.lo_ = lo;
    r.hi_ = hi;
    return r;
  }
  static Interval reciprocal(const Interval& b) { return raw(detail::down(1.0 / b.hi_), detail::up(1.0 / b.lo_)); }

  friend Interval sqrt(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval sin(const Interval& a);
  friend Interval abs(const Interval& a);
  friend Interval pown(const Interval& a, int k);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval sqrt(const Interval& a) {
  if (a.hi_ < 0.0) throw std::domain_error("sqrt: interval entirely negative");
  const double lo = std::max(a.lo_, 0.0);
  return Interval::raw(std::max(0.0, detail::down(std::sqrt(lo))), detail::up(std::sqrt(a.hi_)));
}

inline Interval exp(const Interval& a) {
  return Interval::raw(std::max(0.0, detail::down(std::exp(a.lo_))), detail::up(std::exp(a.hi_)));
}

inline Interval sin(const Interval& a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!a.bounded() || a.diam() >= two_pi) return Interval::raw(-1.0, 1.0);
  double lo = std::min(std::sin(a.lo_), std::sin(a.hi_));
  double hi = std::max(std::sin(a.lo_), std::sin(a.hi_));
  // Maxima at pi/2 + 2k pi, minima at -pi/2 + 2k pi.
  const double kmax = std::ceil((a.lo_ - std::numbers::pi / 2) / two_pi);
  if (std::numbers::pi / 2 + kmax * two_pi <= a.hi_) hi = 1.0;
  const double kmin = std::ceil((a.lo_ + std::numbers::pi / 2) / two_pi);
  if (-std::numbers::pi / 2 + kmin * two_pi <= a.hi_) lo = -1.0;
  return Interval::raw(std::max(-1.0, detail::down(lo)), std::min(1.0, detail::up(hi)));
}

inline Interval cos(const Interval& a) { return sin(a + Interval(std::numbers::pi / 2)); }

inline Interval abs(const Interval& a) {
  if (a.lo_ >= 0.0) return a;
  if (a.hi_ <= 0.0) return -a;
  return Interval::raw(0.0, std::max(-a.lo_, a.hi_));
}

/// Integer power with the tight even-power enclosure.
inline Interval pown(const Interval& a, int k) {
  if (k < 0) return Interval(1.0) / pown(a, -k);
  if (k == 0) return Interval(1.0);
  if (k % 2 == 1 || a.lo_ >= 0.0) {
    // Monotone on the relevant range.
    const double lo = std::pow(a.lo_, k), hi = std::pow(a.hi_, k);
    return Interval::raw(detail::down(lo), detail::up(hi));
  }
  if (a.hi_ <= 0.0) return Interval::raw(detail::down(std::pow(a.hi_, k)), detail::up(std::pow(a.lo_, k)));
  return Interval::raw(0.0, detail::up(std::pow(a.mag(), k)));
}

inline Interval min_value(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}
inline Interval max_value(const Interval& a, const Interval& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline double pown(double a, int k) { return std::pow(a, k); }
inline double min_value(double a, double b) { return std::min(a, b); }
inline double max_value(double a, double b) { return std::max(a, b); }

/// Value plus gradient with respect to the decision variables.
template <typename S>
struct Dual {
  S value{};
  std::vector<S> grad;

  Dual() = default;
  Dual(double c) : value(c) {}  // NOLINT: constants have zero gradient
  Dual(S v, std::vector<S> g) : value(std::move(v)), grad(std::move(g)) {}

  static Dual variable(S v, std::size_t index, std::size_t n) {
    std::vector<S> g(n, S(0.0));
    g[index] = S(1.0);
    return {std::move(v), std::move(g)};
  }
};

namespace detail {
template <typename S, typename F>
std::vector<S> combine(const std::vector<S>& a, const std::vector<S>& b, F f) {
  // An empty gradient denotes a constant.
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<S> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(a.empty() ? S(0.0) : a[i], b.empty() ? S(0.0) : b[i]);
  return out;
}
template <typename S>
std::vector<S> scale(const std::vector<S>& a, const S& c) {
  std::vector<S> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  return out;
}
}  // namespace detail

template <typename S>
Dual<S> operator-(const Dual<S>& a) {
  return {-a.value, detail::scale(a.grad, S(-1.0))};
}
template <typename S>
Dual<S> operator+(const Dual<S>& a, const Dual<S>& b) {
  return {a.value + b.value, detail::combine(a.grad, b.grad, [](const S& x, const S& y) { return x + y; })};
}
template <typename S>
Dual<S> operator-(const Dual<S>& a, const Dual<S>& b) {
  return {a.value - b.value, detail::combine(a.grad, b.grad, [](const S& x, const S& y) { return x - y; })};
}
template <typename S>
Dual<S> operator*(const Dual<S>& a, const Dual<S>& b) {
  return {a.value * b.value,
          detail::combine(a.grad, b.grad, [&](const S& x, const S& y) { return x * b.value + a.value * y; })};
}
template <typename S>
Dual<S> operator/(const Dual<S>& a, const Dual<S>& b) {
  const S q = a.value / b.value;
  return {q, detail::combine(a.grad, b.grad, [&](const S& x, const S& y) { return (x - q * y) / b.value; })};
}
template <typename S>
Dual<S> operator+(const Dual<S>& a, double c) { return a + Dual<S>(c); }
template <typename S>
Dual<S> operator+(double c, const Dual<S>& a) { return Dual<S>(c) + a; }
template <typename S>
Dual<S> operator-(const Dual<S>& a, double c) { return a - Dual<S>(c); }
template <typename S>
Dual<S> operator-(double c, const Dual<S>& a) { return Dual<S>(c) - a; }
template <typename S>
Dual<S> operator*(const Dual<S>& a, double c) { return {a.value * S(c), detail::scale(a.grad, S(c))}; }
template <typename S>
Dual<S> operator*(double c, const Dual<S>& a) { return a * c; }
template <typename S>
Dual<S> operator/(const Dual<S>& a, double c) {
  return {a.value / S(c), detail::scale(a.grad, S(1.0) / S(c))};
}
template <typename S>
Dual<S> operator/(double c, const Dual<S>& a) { return Dual<S>(c) / a; }

template <typename S>
Dual<S> sqrt(const Dual<S>& a) {
  using std::sqrt;
  const S r = sqrt(a.value);
  return {r, detail::scale(a.grad, S(0.5) / r)};
}
template <typename S>
Dual<S> exp(const Dual<S>& a) {
  using std::exp;
  const S e = exp(a.value);
  return {e, detail::scale(a.grad, e)};
}
template <typename S>
Dual<S> sin(const Dual<S>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.value), detail::scale(a.grad, S(cos(a.value)))};
}
template <typename S>
Dual<S> cos(const Dual<S>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.value), detail::scale(a.grad, S(-sin(a.value)))};
}
template <typename S>
Dual<S> pown(const Dual<S>& a, int k) {
  if (k == 0) return Dual<S>(1.0);
  return {pown(a.value, k), detail::scale(a.grad, S(double(k)) * pown(a.value, k - 1))};
}

inline double sign_enclosure(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }
inline Interval sign_enclosure(const Interval& v) {
  if (v.lo() > 0.0) return Interval(1.0);
  if (v.hi() < 0.0) return Interval(-1.0);
  return {-1.0, 1.0};
}

template <typename S>
Dual<S> abs(const Dual<S>& a) {
  using std::abs;
  return {abs(a.value), detail::scale(a.grad, sign_enclosure(a.value))};
}

namespace detail {
inline int order(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }
inline int order(const Interval& a, const Interval& b) {
  if (a.hi() < b.lo()) return -1;
  if (b.hi() < a.lo()) return 1;
  return 0;
}
inline double merge(double a, double) { return a; }
inline Interval merge(const Interval& a, const Interval& b) { return hull(a, b); }
}  // namespace detail

template <typename S>
Dual<S> min_value(const Dual<S>& a, const Dual<S>& b) {
  const int o = detail::order(a.value, b.value);
  if (o < 0) return a;
  if (o > 0) return b;
  return {min_value(a.value, b.value),
          detail::combine(a.grad, b.grad, [](const S& x, const S& y) { return detail::merge(x, y); })};
}
template <typename S>
Dual<S> max_value(const Dual<S>& a, const Dual<S>& b) {
  const int o = detail::order(a.value, b.value);
  if (o > 0) return a;
  if (o < 0) return b;
  return {max_value(a.value, b.value),
          detail::combine(a.grad, b.grad, [](const S& x, const S& y) { return detail::merge(x, y); })};
}

}  // namespace rbb

#endif  // RBB_INTERVAL_HPP
