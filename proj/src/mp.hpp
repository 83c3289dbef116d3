#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "dd.hpp"

namespace horo::detail {

// 50-digit arithmetic for evaluating zippers whose composition loses too many
// double-double digits.
using mpf = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<50>,
                                          boost::multiprecision::et_off>;

struct cmp {
  mpf re, im;

  cmp() = default;
  cmp(const mpf& r) : re(r), im(0) {}
  cmp(const mpf& r, const mpf& i) : re(r), im(i) {}
  cmp(double r) : re(r), im(0) {}
};

inline mpf to_mp(dd a) { return mpf(a.hi) + mpf(a.lo); }
inline cmp to_mp(const cdd& a) { return {to_mp(a.re), to_mp(a.im)}; }
inline dd to_dd(const mpf& a) {
  double hi = a.convert_to<double>();
  if (!std::isfinite(hi)) return dd(hi);
  return {hi, mpf(a - hi).convert_to<double>()};
}
inline cdd to_dd(const cmp& a) { return {to_dd(a.re), to_dd(a.im)}; }

inline bool is_zero(const mpf& a) { return a == 0; }
inline bool is_negative(const mpf& a) { return a < 0; }

inline cmp operator+(const cmp& a, const cmp& b) { return {a.re + b.re, a.im + b.im}; }
inline cmp operator-(const cmp& a, const cmp& b) { return {a.re - b.re, a.im - b.im}; }
inline cmp operator-(const cmp& a) { return {-a.re, -a.im}; }
inline cmp operator*(const cmp& a, const cmp& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline cmp operator*(const cmp& a, const mpf& b) { return {a.re * b, a.im * b}; }
inline cmp operator/(const cmp& a, const mpf& b) { return {a.re / b, a.im / b}; }
inline cmp operator/(const cmp& a, const cmp& b) {
  mpf n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline cmp conj(const cmp& a) { return {a.re, -a.im}; }
inline mpf norm(const cmp& a) { return a.re * a.re + a.im * a.im; }
inline cmp times_i(const cmp& a) { return {-a.im, a.re}; }
inline mpf abs(const cmp& a) { return boost::multiprecision::sqrt(norm(a)); }

// Principal square root with the same branch convention as sqrt(cdd).
inline cmp sqrt(const cmp& a) {
  using boost::multiprecision::sqrt;
  if (a.re == 0 && a.im == 0) return cmp(0.0);
  mpf r = abs(a);
  if (a.re >= 0) {
    mpf t = sqrt((r + a.re) / 2);
    return {t, a.im / (2 * t)};
  }
  mpf t = sqrt((r - a.re) / 2);
  mpf re = boost::multiprecision::abs(a.im) / (2 * t);
  return {re, boost::multiprecision::signbit(a.im) ? mpf(-t) : t};
}

}  // namespace horo::detail
