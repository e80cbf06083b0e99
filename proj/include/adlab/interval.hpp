#pragma once

// Closed intervals with exact rational endpoints. Every operation returns an
// interval that contains the exact image of its inputs; no rounding happens
// outside the square-root enclosure, whose width is capped by the caller.

#include "adlab/rational.hpp"

#include <algorithm>
#include <vector>

namespace adlab {

struct QInterval {
  Rat lo;
  Rat hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
    if (lo > hi) throw InputError("interval endpoints out of order");
  }
  static QInterval point(const Rat& v) { return QInterval(v, v); }

  Rat width() const { return hi - lo; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
  bool intersects(const QInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool is_point() const { return lo == hi; }
};

inline QInterval operator+(const QInterval& a, const QInterval& b) {
  return QInterval(a.lo + b.lo, a.hi + b.hi);
}
inline QInterval operator-(const QInterval& a, const QInterval& b) {
  return QInterval(a.lo - b.hi, a.hi - b.lo);
}
inline QInterval operator-(const QInterval& a) { return QInterval(-a.hi, -a.lo); }

inline QInterval operator*(const QInterval& a, const Rat& c) {
  if (c >= 0) return QInterval(a.lo * c, a.hi * c);
  return QInterval(a.hi * c, a.lo * c);
}
inline QInterval operator*(const Rat& c, const QInterval& a) { return a * c; }

inline QInterval operator*(const QInterval& a, const QInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return QInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                   std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline QInterval interval_abs(const QInterval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return QInterval(-a.hi, -a.lo);
  return QInterval(Rat(0), std::max(Rat(-a.lo), a.hi));
}

inline QInterval interval_sqr(const QInterval& a) {
  QInterval m = interval_abs(a);
  return QInterval(m.lo * m.lo, m.hi * m.hi);
}

// Requires 0 < lo. Exact: rationals are closed under division.
inline QInterval interval_reciprocal(const QInterval& a) {
  if (a.lo <= 0) throw InputError("reciprocal of interval touching zero");
  return QInterval(Rat(1) / a.hi, Rat(1) / a.lo);
}

// Pointwise max of a nonempty list: [max of lowers, max of uppers].
inline QInterval interval_max(const std::vector<QInterval>& xs) {
  if (xs.empty()) throw InputError("interval_max of empty list");
  QInterval r = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    r.lo = std::max(r.lo, xs[i].lo);
    r.hi = std::max(r.hi, xs[i].hi);
  }
  return r;
}

// Encloses sqrt(x) for x >= 0 with width <= tol, endpoints rational, lo >= 0.
// Uses exact integer sqrt on a scaled radicand: with x = p/q and d = q*s,
// isqrt(p*q*s^2) = r gives r/d <= sqrt(x) < (r+1)/d and width 1/d.
QInterval sqrt_enclosure(const Rat& x, const Rat& tol);

// Encloses sqrt over an interval of nonnegative values.
QInterval sqrt_enclosure(const QInterval& x, const Rat& tol);

}  // namespace adlab
