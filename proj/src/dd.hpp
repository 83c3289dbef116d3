#pragma once

// Double-double (about 106-bit) real and complex arithmetic for the zipper stages.
// Requires a correctly rounded fma; the build must not enable value-unsafe math.

#include <cmath>
#include <complex>

namespace horo::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
  explicit operator double() const { return hi + lo; }
};

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator*(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator<=(dd a, dd b) { return !(b < a); }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

inline bool is_zero(dd a) { return a.hi == 0.0; }
inline bool is_negative(dd a) { return a.hi < 0.0; }

inline dd abs(dd a) { return a.hi < 0.0 ? -a : a; }
inline dd sqr(dd a) { return a * a; }

inline dd sqrt(dd a) {
  if (a.hi <= 0.0) return dd(0.0);
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  dd d = a - two_prod(ax, ax);
  return two_sum(ax, d.hi * (x * 0.5));
}

inline dd ldexp(dd a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline double log(dd a) { return std::log(a.hi) + std::log1p(a.lo / a.hi); }

struct cdd {
  dd re, im;

  constexpr cdd() = default;
  constexpr cdd(dd r) : re(r), im(0.0) {}
  constexpr cdd(dd r, dd i) : re(r), im(i) {}
  constexpr cdd(double r) : re(r), im(0.0) {}
  cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
  std::complex<double> to_complex() const { return {double(re), double(im)}; }
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator-(cdd a) { return {-a.re, -a.im}; }
inline cdd operator*(cdd a, cdd b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline cdd operator*(cdd a, dd b) { return {a.re * b, a.im * b}; }
inline cdd conj(cdd a) { return {a.re, -a.im}; }
inline dd norm(cdd a) { return a.re * a.re + a.im * a.im; }
inline cdd times_i(cdd a) { return {-a.im, a.re}; }

inline cdd operator/(cdd a, cdd b) {
  // scale by the larger component to keep |b|^2 in range
  double s = std::max(std::abs(b.re.hi), std::abs(b.im.hi));
  int e = 0;
  std::frexp(s, &e);
  cdd bs{ldexp(b.re, -e), ldexp(b.im, -e)};
  dd inv = dd(1.0) / norm(bs);
  cdd num = a * conj(bs);
  return {ldexp(num.re * inv, -e), ldexp(num.im * inv, -e)};
}

inline cdd operator/(cdd a, dd b) {
  dd inv = dd(1.0) / b;
  return {a.re * inv, a.im * inv};
}

inline dd abs(cdd a) {
  double s = std::max(std::abs(a.re.hi), std::abs(a.im.hi));
  if (s == 0.0) return dd(0.0);
  int e = 0;
  std::frexp(s, &e);
  return ldexp(sqrt(norm(cdd{ldexp(a.re, -e), ldexp(a.im, -e)})), e);
}

// Principal square root; the cut runs along the negative real axis and an
// imaginary part of +0 selects the upper side.
inline cdd sqrt(cdd a) {
  if (a.re.hi == 0.0 && a.im.hi == 0.0) return cdd(0.0);
  dd r = abs(a);
  if (a.re.hi >= 0.0) {
    dd t = sqrt(ldexp(r + a.re, -1));
    return {t, a.im / ldexp(t, 1)};
  }
  dd t = sqrt(ldexp(r - a.re, -1));
  dd re = abs(a.im) / ldexp(t, 1);
  return {re, std::signbit(a.im.hi) ? -t : t};
}

}  // namespace horo::detail
