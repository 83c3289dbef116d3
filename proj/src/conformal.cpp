#include "horo/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "map_data.hpp"

namespace horo {

namespace detail {

cdd to_halfplane(const MapData& m, cdd z) {
  return m.extended ? to_dd(m.zipper.to_halfplane(to_mp(z))) : m.zipper.to_halfplane(z);
}

cdd from_halfplane(const MapData& m, cdd s) {
  return m.extended ? to_dd(m.zipper.from_halfplane(to_mp(s))) : m.zipper.from_halfplane(s);
}

cdd q_from_halfplane(const MapData& m, cdd s) {
  if (m.symmetric) {
    cdd u = (cdd(m.ta) - conj(s)) / cdd(m.ta - m.tr);
    if (u.im.hi == 0.0) return u.re.hi < 0.0 ? cdd(dd(0.0), sqrt(-u.re)) : cdd(sqrt(u.re));
    return sqrt(u);
  }
  return {s.im / m.ya, -(s.re - m.xa) / m.ya};
}

cdd halfplane_from_q(const MapData& m, cdd q) {
  if (m.symmetric) return cdd(m.ta) - conj(q * q) * (m.ta - m.tr);
  return {m.xa - m.ya * q.im, m.ya * q.re};
}

namespace {

// y of the boundary point q = iy; infinite for the point sent to 1.
dd midpoint_y(dd y1, dd y2) {
  bool inf1 = std::isinf(y1.hi), inf2 = std::isinf(y2.hi);
  if (inf1 && inf2) return y1;
  if (inf1) return y1.hi > 0 ? y2 + sqrt(dd(1.0) + y2 * y2) : y2 - sqrt(dd(1.0) + y2 * y2);
  if (inf2) return midpoint_y(y2, y1);
  dd r1 = sqrt(dd(1.0) + y1 * y1), r2 = sqrt(dd(1.0) + y2 * y2);
  return (y1 * r2 + y2 * r1) / (r1 + r2);
}

PlanePoint circle_point(dd y) {
  if (std::isinf(y.hi)) return {1.0, 0.0};
  return std::polar(1.0, M_PI - 2.0 * std::atan(double(y)));
}

}  // namespace

std::vector<double> finish_map(MapData& m, const std::vector<ZipNode>& nodes, const std::vector<dd>& params,
                               int cut_node) {
  const int n = int(nodes.size());
  std::vector<double> interval_error(n, 0.0);
  const dd inf(INFINITY);
  // Boundary nodes of the fitted arc as q = iy, in counterclockwise order.
  std::vector<int> order;
  std::vector<dd> ys;
  if (m.symmetric) {
    order.push_back(0);
    ys.push_back(inf);
    for (int i = n - 1; i >= cut_node; --i) {
      order.push_back(i);
      ys.push_back(i == cut_node ? dd(0.0) : sqrt((params[i] - m.ta) / (m.ta - m.tr)));
    }
  } else {
    for (int i = 1; i < n; ++i) {
      order.push_back(i);
      ys.push_back(-(params[i] - m.xa) / m.ya);
    }
    order.push_back(0);
    ys.push_back(-inf);
  }
  auto point_of = [&](int i) { return m.symmetric ? std::conj(nodes[i].point) : nodes[i].point; };
  m.nodes.clear();
  for (size_t k = 0; k < order.size(); ++k) m.nodes.push_back({point_of(order[k]), circle_point(ys[k])});
  if (m.symmetric) {
    for (size_t k = order.size() - 1; k-- > 1;) {
      m.nodes.push_back({std::conj(point_of(order[k])), std::conj(circle_point(ys[k]))});
    }
    std::rotate(m.nodes.begin(), m.nodes.begin() + 1, m.nodes.end());
  }

  m.accuracy = 0.0;
  size_t pairs = m.symmetric ? ys.size() - 1 : ys.size();
  for (size_t k = 0; k < pairs; ++k) {
    dd y1 = ys[k], y2 = ys[(k + 1) % ys.size()];
    if (!m.symmetric && k + 1 == ys.size()) y1 = inf;
    dd y = midpoint_y(y1, y2);
    cdd s = halfplane_from_q(m, cdd(dd(0.0), y));
    s.im = dd(0.0);
    PlanePoint p = detail::from_halfplane(m, s).to_complex();
    if (m.symmetric) p = std::conj(p);
    double err = std::isfinite(p.real()) && std::isfinite(p.imag()) ? m.region.true_boundary_distance(p) : INFINITY;
    m.accuracy = std::max(m.accuracy, err / m.region.diameter);
    interval_error[m.symmetric ? order[k + 1] : (k + 1) % n] = err / m.region.diameter;
  }
  // The real segment of a symmetric fit is not part of the target boundary,
  // but its deviation from the axis still guides refinement.
  for (int i = 0; m.symmetric && i < cut_node; ++i) {
    dd t1 = params[i + 1];
    dd t = i == 0 ? t1 - dd(std::max(1.0, double(m.ta - t1))) : (params[i] + t1) * 0.5;
    PlanePoint p = from_halfplane(m, cdd(t)).to_complex();
    double err = std::isfinite(p.real()) && std::isfinite(p.imag()) ? std::abs(p.imag()) : INFINITY;
    interval_error[i] = err / m.region.diameter;
  }
  return interval_error;
}

void normalize(MapData& m, PlanePoint anchor, dd t_cut) {
  const PlanePoint v = anchor;
  // Zippers whose composition is too ill-conditioned for double-double are
  // evaluated in extended precision.
  m.extended = false;
  cdd s = to_halfplane(m, cdd(v));
  PlanePoint back = from_halfplane(m, s).to_complex();
  if (!(std::abs(back - v) <= 1e-13 * m.region.diameter)) {
    m.extended = true;
    s = to_halfplane(m, cdd(v));
  }
  if (m.symmetric) {
    m.ta = t_cut;
    if (s.im.hi != 0.0 || !(s.re < m.ta)) fail(ErrorCode::FitDiverged, "anchor did not land on the real segment");
    m.tr = s.re;
  } else {
    if (!(s.im.hi > 0.0) || !std::isfinite(s.re.hi)) fail(ErrorCode::FitDiverged, "anchor left the half-plane");
    m.xa = s.re;
    m.ya = s.im;
  }
}

void apply_normalization(MapData& m, const FitRegion& r, const Sampling& smp, const std::vector<dd>& params) {
  const int n = int(smp.nodes.size());
  const dd at = along_edge(r, r.norm_edge, *m.options.normalization_point);
  auto angle = [&](int i, bool end) {
    if (i == 0) return end ? 2.0 * M_PI : 0.0;
    return M_PI - 2.0 * std::atan(double(-(params[i] - m.xa) / m.ya));
  };
  for (int k = 0; k < n; ++k) {
    const auto& iv = smp.intervals[k];
    if (iv.edge != r.norm_edge || at < iv.s0 || iv.s1 < at) continue;
    double a0 = angle(k, false), a1 = angle((k + 1) % n, true);
    double f = double(at - iv.s0) / double(iv.s1 - iv.s0);
    m.rot = std::polar(1.0, -(a0 + f * (a1 - a0)));
    for (auto& b : m.nodes) b.preimage *= m.rot;
    auto pos = [](PlanePoint z) {
      double t = std::arg(z);
      return t <= 0.0 ? t + 2.0 * M_PI : t;
    };
    std::stable_sort(m.nodes.begin(), m.nodes.end(),
                     [&](const BoundaryNode& x, const BoundaryNode& y) { return pos(x.preimage) < pos(y.preimage); });
    return;
  }
  fail(ErrorCode::FitDiverged, "normalization point fell between the samples");
}

std::vector<EdgeWeight> refined_weights(const FitRegion& r, const Sampling& smp, const std::vector<double>& err,
                                        const std::vector<EdgeWeight>& old) {
  std::vector<double> sorted;
  for (double e : err)
    if (e > 0.0 && std::isfinite(e)) sorted.push_back(e);
  if (sorted.empty()) return old;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::vector<std::map<std::pair<dd, dd>, double>> pieces(r.cycle.size());
  for (size_t k = 0; k < smp.intervals.size(); ++k) {
    const auto& iv = smp.intervals[k];
    double& e = pieces[iv.edge][{iv.s0, iv.s1}];
    e = std::max(e, err[k]);
  }
  std::vector<EdgeWeight> out(r.cycle.size());
  for (size_t i = 0; i < pieces.size(); ++i) {
    for (const auto& [span, e] : pieces[i]) {
      double f = e > 0.0 ? std::clamp(std::pow(e / median, 0.4), 0.5, 4.0) : 1.0;
      out[i].end.push_back(span.second);
      out[i].value.push_back(old[i].at((span.first + span.second) * 0.5) * f);
    }
  }
  return out;
}

}  // namespace detail

using detail::cdd;
using detail::dd;
using detail::MapData;

const SlitDomain& ConformalMap::target() const { return data_->target; }
PlanePoint ConformalMap::anchor() const { return data_->anchor; }
bool ConformalMap::symmetric() const { return data_->symmetric; }
int ConformalMap::stage_count() const { return int(data_->zipper.stages.size()); }
int ConformalMap::sample_count() const { return data_->samples; }
const std::vector<BoundaryNode>& ConformalMap::boundary_nodes() const { return data_->nodes; }
double ConformalMap::accuracy() const { return data_->accuracy; }
std::vector<PlanePoint> ConformalMap::fitted_boundary() const { return data_->region.cycle; }

namespace {

bool in_region(const MapData& m, PlanePoint w) {
  if (!m.target.contains(w)) return false;
  if (m.symmetric) {
    if (w.imag() == 0.0) return w.real() > m.region.cut_lo && w.real() < m.region.cut_hi;
    return m.region.contains(w.imag() < 0.0 ? std::conj(w) : w);
  }
  return m.region.contains(w);
}

}  // namespace

bool ConformalMap::in_fitted_region(PlanePoint w) const { return in_region(*data_, w); }

ConformalMap fit_map(const SlitDomain& d, int boundary_samples, PlanePoint anchor, const FitOptions& options) {
  if (boundary_samples < 16) fail(ErrorCode::InvalidParameter, "fit_map needs at least 16 boundary samples");
  if (!(options.tip_floor > 0.0 && options.tip_floor < 1.0)) {
    fail(ErrorCode::InvalidParameter, "tip_floor must lie in (0, 1)");
  }
  if (!(options.channel_cap > 1.0)) fail(ErrorCode::InvalidParameter, "channel_cap must exceed 1");
  if (!d.contains(anchor)) fail(ErrorCode::PointOutsideDomain, "fit_map: anchor outside the domain");
  auto m = std::make_shared<MapData>();
  m->target = d;
  m->anchor = anchor;
  m->options = options;
  m->samples = boundary_samples;
  m->region = detail::build_fit_region(d, anchor, options);
  m->symmetric = m->region.symmetric;
  detail::FitRegion zr = m->symmetric ? detail::lower_half_region(m->region) : m->region;
  std::vector<detail::EdgeWeight> weights(zr.cycle.size());
  std::shared_ptr<MapData> best;
  for (int pass = 0; pass <= std::max(0, options.refine_passes); ++pass) {
    auto trial = std::make_shared<MapData>(*m);
    detail::Sampling smp = detail::sample_boundary(zr, boundary_samples, options.tip_floor, &weights);
    std::vector<double> err;
    std::vector<dd> fit_params;
    try {
      detail::ZipFit fit = detail::fit_zipper(smp.nodes);
      fit_params = fit.params;
      trial->zipper = std::move(fit.zipper);
      detail::normalize(*trial, anchor, fit.params[smp.cut_node >= 0 ? smp.cut_node : 0]);
      err = detail::finish_map(*trial, smp.nodes, fit.params, smp.cut_node);
    } catch (const Error&) {
      if (!best) throw;
      break;
    }
    if (zr.norm_edge >= 0) detail::apply_normalization(*trial, zr, smp, fit_params);
    if (!best || trial->accuracy < best->accuracy) best = trial;
    weights = detail::refined_weights(zr, smp, err, weights);
  }
  return ConformalMap(std::move(best));
}

namespace {

cdd q_of(const MapData& m, PlanePoint w) {
  if (!m.target.contains(w)) fail(ErrorCode::PointOutsideDomain, "point outside the target domain");
  if (!in_region(m, w)) fail(ErrorCode::PointOutsideDomain, "point outside the fitted region");
  bool flip = m.symmetric && w.imag() < 0.0;
  // symmetric fits store the mirrored upper half
  PlanePoint v = m.symmetric && !flip ? std::conj(w) : w;
  cdd s = detail::to_halfplane(m, cdd(v));
  bool ok = std::isfinite(s.re.hi) && std::isfinite(s.im.hi) &&
            (s.im.hi > 0.0 || (m.symmetric && w.imag() == 0.0 && s.im.hi == 0.0));
  if (!ok) fail(ErrorCode::InversionDiverged, "inverse left the half-plane");
  cdd q = detail::q_from_halfplane(m, s);
  if (!(q.re.hi > 0.0)) fail(ErrorCode::InversionDiverged, "inverse left the disk");
  return flip ? conj(q) : q;
}

}  // namespace

PlanePoint forward(const ConformalMap& map, PlanePoint z) {
  const MapData& m = *map.data();
  if (!is_finite(z) || !(std::norm(z) < 1.0)) fail(ErrorCode::PointOutsideDomain, "forward needs |z| < 1");
  z *= std::conj(m.rot);
  bool flip = m.symmetric && z.imag() < 0.0;
  cdd zz(flip ? std::conj(z) : z);
  cdd q = (cdd(1.0) + zz) / (cdd(1.0) - zz);
  cdd s = detail::halfplane_from_q(m, q);
  if (m.symmetric && z.imag() == 0.0) s.im = dd(0.0);
  PlanePoint w = detail::from_halfplane(m, s).to_complex();
  if (m.symmetric && z.imag() == 0.0) return {w.real(), 0.0};
  return m.symmetric && !flip ? std::conj(w) : w;
}

PlanePoint inverse(const ConformalMap& map, PlanePoint w) {
  cdd q = q_of(*map.data(), w);
  PlanePoint z = ((q - cdd(1.0)) / (q + cdd(1.0))).to_complex() * map.data()->rot;
  if (!(std::abs(z) < 1.0)) fail(ErrorCode::InversionDiverged, "inverse reached the unit circle");
  return z;
}

Polyline geodesic_ray(const ConformalMap& m, PlanePoint sigma, const std::vector<double>& t_samples) {
  require_on_circle(sigma);
  sigma /= std::abs(sigma);
  Polyline out;
  for (double t : t_samples) {
    if (!(t >= 0.0 && t < 1.0)) fail(ErrorCode::InvalidParameter, "geodesic_ray samples must lie in [0, 1)");
    out.vertices.push_back(forward(m, t * sigma));
  }
  return out;
}

double conformal_distance(const ConformalMap& map, PlanePoint w1, PlanePoint w2) {
  const MapData& m = *map.data();
  cdd q1 = q_of(m, w1), q2 = q_of(m, w2);
  dd a = abs(q1 + conj(q2)), b = abs(q1 - q2);
  double d = detail::log(a + b) - 0.5 * detail::log(ldexp(q1.re * q2.re, 2));
  return std::max(0.0, d);
}

Polyline pushforward_horocycle(const ConformalMap& m, const Horocycle& h, int samples) {
  if (samples < 3) fail(ErrorCode::InvalidParameter, "pushforward_horocycle needs at least 3 samples");
  double t0 = std::arg(h.base);
  Polyline out;
  for (int k = 0; k < samples; ++k) {
    double t = t0 + 2.0 * M_PI * (k + 0.5) / samples;
    out.vertices.push_back(forward(m, horocycle_point(h, t)));
  }
  out.vertices.push_back(out.vertices.front());
  return out;
}

}  // namespace horo
