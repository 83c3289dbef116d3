#include "zipper.hpp"

#include <string>

namespace horo::detail {

namespace {

template <class R, class V>
V sign_times(const R& s, const V& v) {
  return is_negative(s) ? V(-v) : v;
}

template <class R>
struct Stage {
  ZipStage::Kind kind;
  R binv, c, shift;
};

Stage<dd> stage_as(const ZipStage& s, dd) { return {s.kind, s.binv, s.c, s.shift}; }
Stage<mpf> stage_as(const ZipStage& s, const mpf&) { return {s.kind, to_mp(s.binv), to_mp(s.c), to_mp(s.shift)}; }
dd real_as(dd v, dd) { return v; }
mpf real_as(dd v, const mpf&) { return to_mp(v); }
cdd cplx_as(const cdd& v, dd) { return v; }
cmp cplx_as(const cdd& v, const mpf&) { return to_mp(v); }

// Unzipping map on the real line; 0 goes to the left side.
template <class R>
R zip_real(const Stage<R>& s, const R& x) {
  R u = x / (R(1.0) - x * s.binv);
  if (is_zero(u)) return -s.c;
  return sign_times(u, R(sqrt(u * u + s.c * s.c)));
}

template <class C, class R>
C zip_forward(const Stage<R>& s, const C& z) {
  if (s.kind == ZipStage::Kind::Shift) return {z.re - s.shift, z.im};
  if (is_zero(z.im)) return zip_real(s, z.re);
  if (is_zero(s.binv) && is_zero(z.re)) {
    R t = z.im;
    if (t <= s.c) return C(R(-sqrt((s.c - t) * (s.c + t))));
    return {R(0.0), R(sqrt((t - s.c) * (t + s.c)))};
  }
  C u = z / (C(1.0) - z * s.binv);
  C r = C(s.c) / u;
  return u * sqrt(C(1.0) + r * r);
}

template <class C, class R>
C zip_inverse(const Stage<R>& s, const C& w) {
  if (s.kind == ZipStage::Kind::Shift) return {w.re + s.shift, w.im};
  C v;
  if (is_zero(w.im)) {
    R x = w.re;
    if (s.c <= abs(x)) {
      v = C(sign_times(x, R(sqrt((x - s.c) * (x + s.c)))));
    } else {
      v = C(R(0.0), R(sqrt((s.c - x) * (s.c + x))));
    }
  } else {
    v = sqrt(w - C(s.c)) * sqrt(w + C(s.c));
  }
  return v / (C(1.0) + v * s.binv);
}

template <class C>
C start_forward(const C& z0, const C& z1, const C& z) {
  C r = (z - z1) / (z - z0);
  if (is_zero(r.im)) {
    if (is_negative(r.re)) return C(-sqrt(-r.re));
    return {decltype(r.re)(0.0), sqrt(r.re)};
  }
  return times_i(sqrt(r));
}

template <class C>
C start_inverse(const C& z0, const C& z1, const C& w) {
  C w2 = w * w;
  return (z1 + w2 * z0) / (C(1.0) + w2);
}

template <class C, class R>
C close_forward(const R& p, const C& z) {
  C t = z / (C(1.0) - z / p);
  return -(t * t);
}

template <class C, class R>
C close_inverse(const R& p, const C& w) {
  C t;
  if (is_zero(w.im)) {
    t = is_negative(w.re) ? C(-sqrt(-w.re)) : C(R(0.0), sqrt(w.re));
  } else {
    t = times_i(sqrt(w));
  }
  return t / (C(1.0) + t / p);
}

template <class C, class R>
C to_halfplane_as(const Zipper& zp, const C& z) {
  C w = start_forward(cplx_as(zp.z0, R()), cplx_as(zp.z1, R()), z);
  for (const ZipStage& s : zp.stages) w = zip_forward(stage_as(s, R()), w);
  return close_forward(real_as(zp.p, R()), w);
}

template <class C, class R>
C from_halfplane_as(const Zipper& zp, const C& w) {
  C z = close_inverse(real_as(zp.p, R()), w);
  for (auto it = zp.stages.rbegin(); it != zp.stages.rend(); ++it) z = zip_inverse(stage_as(*it, R()), z);
  return start_inverse(cplx_as(zp.z0, R()), cplx_as(zp.z1, R()), z);
}

// Fit-time wrappers on the stored double-double stages.
cdd zip_forward(const ZipStage& s, cdd z) { return zip_forward(stage_as(s, dd()), z); }
dd zip_real(const ZipStage& s, dd x) { return zip_real(stage_as(s, dd()), x); }

}  // namespace

cdd Zipper::to_halfplane(cdd z) const { return to_halfplane_as<cdd, dd>(*this, z); }
cdd Zipper::from_halfplane(cdd w) const { return from_halfplane_as<cdd, dd>(*this, w); }
cmp Zipper::to_halfplane(const cmp& z) const { return to_halfplane_as<cmp, mpf>(*this, z); }
cmp Zipper::from_halfplane(const cmp& w) const { return from_halfplane_as<cmp, mpf>(*this, w); }

ZipFit fit_zipper(const std::vector<ZipNode>& nodes) {
  const int n = int(nodes.size());
  if (n < 3 || nodes[0].twin >= 0 || nodes[1].twin >= 0) {
    fail(ErrorCode::NonJordanBoundary, "zipper needs at least three nodes starting on a one-sided edge");
  }
  ZipFit fit;
  Zipper& zip = fit.zipper;
  zip.z0 = cdd(nodes[0].point);
  zip.z1 = cdd(nodes[1].point);

  // cur[i]: current image of node i (complex while unprocessed, real afterwards).
  std::vector<cdd> cur(n);
  // right[i]: image of the right-hand side of node i, born when node i splits.
  std::vector<dd> right(n);
  std::vector<char> has_right(n, 0);
  for (int i = 2; i < n; ++i) {
    if (nodes[i].twin < 0) cur[i] = start_forward(zip.z0, zip.z1, cdd(nodes[i].point));
  }
  cur[1] = cdd(0.0);
  bool p_infinite = true;
  dd p;

  auto apply = [&](const ZipStage& s, int first_unprocessed, int split) {
    for (int i = 1; i < n; ++i) {
      if (i < first_unprocessed || nodes[i].twin < 0) cur[i] = zip_forward(s, cur[i]);
      if (has_right[i]) right[i] = zip_forward(s, cdd(right[i])).re;
    }
    if (s.kind == ZipStage::Kind::Zip && split >= 0) {
      right[split] = s.c;
      has_right[split] = 1;
    }
    if (s.kind == ZipStage::Kind::Shift) {
      if (!p_infinite) p = p - s.shift;
    } else if (p_infinite) {
      if (!is_zero(s.binv)) {
        dd u = -(dd(1.0) / s.binv);
        p = sign_times(u, dd(sqrt(u * u + s.c * s.c)));
        p_infinite = false;
      }
    } else {
      dd den = dd(1.0) - p * s.binv;
      if (is_zero(den)) {
        p_infinite = true;
      } else {
        p = zip_real(s, p);
      }
    }
  };

  for (int k = 2; k < n; ++k) {
    if (nodes[k].twin >= 0) {
      int t = nodes[k].twin;
      if (t >= k || !has_right[t]) {
        fail(ErrorCode::NonJordanBoundary, "return-side node " + std::to_string(k) + " precedes its twin");
      }
      cur[k] = cdd(right[t]);
      continue;
    }
    if (nodes[k - 1].twin >= 0) {
      ZipStage s;
      s.kind = ZipStage::Kind::Shift;
      s.shift = cur[k - 1].re;
      zip.stages.push_back(s);
      apply(s, k, -1);
    }
    cdd a = cur[k];
    if (!(a.im.hi > 0.0) || !std::isfinite(a.re.hi) || !std::isfinite(a.im.hi)) {
      fail(ErrorCode::FitDiverged, "stage " + std::to_string(k) + " left the upper half-plane");
    }
    dd na = norm(a);
    ZipStage s;
    s.binv = a.re / na;
    s.c = na / a.im;
    zip.stages.push_back(s);
    apply(s, k, k - 1);
    cur[k] = cdd(0.0);
  }
  if (nodes[n - 1].twin >= 0) {
    ZipStage s;
    s.kind = ZipStage::Kind::Shift;
    s.shift = cur[n - 1].re;
    zip.stages.push_back(s);
    apply(s, n, -1);
  }
  if (p_infinite || is_zero(p)) {
    fail(ErrorCode::FitDiverged, "closing point degenerated");
  }
  zip.p = p;
  fit.params.assign(n, dd(0.0));
  for (int i = 1; i < n; ++i) {
    fit.params[i] = close_forward(p, cdd(cur[i].re)).re;
  }
  return fit;
}

}  // namespace horo::detail
