#include "horo/horolab.hpp"

#include <algorithm>
#include <cmath>

namespace horo {

namespace {

// Points sigma (1 - delta e^{i theta}) of the arc lie in the region iff cos(theta) > threshold.
double threshold(ClusterKind k, const ApproachParams& p, double delta) {
  switch (k) {
    case ClusterKind::Unrestricted: return delta / 2.0;
    case ClusterKind::Horospheric: return delta * (1.0 + 1.0 / p.R) / 2.0;
    case ClusterKind::Nontangential:
      return 1.0 / p.aperture + delta * (1.0 - 1.0 / (p.aperture * p.aperture)) / 2.0;
  }
  return 1.0;
}

std::vector<double> arc_grid(double cos_threshold, int samples) {
  std::vector<double> out;
  if (cos_threshold >= 1.0) return out;
  double theta_max = std::acos(cos_threshold) * (1.0 - 1e-6);
  for (int j = 0; j < samples; ++j) out.push_back(samples == 1 ? 0.0 : theta_max * (2.0 * j / (samples - 1) - 1.0));
  return out;
}

// Kinds whose regions are narrower, in nesting order.
std::vector<ClusterKind> narrower_or_equal(ClusterKind k) {
  switch (k) {
    case ClusterKind::Nontangential: return {ClusterKind::Nontangential};
    case ClusterKind::Horospheric: return {ClusterKind::Nontangential, ClusterKind::Horospheric};
    case ClusterKind::Unrestricted:
      return {ClusterKind::Nontangential, ClusterKind::Horospheric, ClusterKind::Unrestricted};
  }
  return {};
}

double diameter_of(const std::vector<PlanePoint>& pts, bool chordal, PlanePoint* a = nullptr, PlanePoint* b = nullptr) {
  double d = 0.0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double e = witness_distance(pts[i], pts[j], chordal);
      if (e > d) {
        d = e;
        if (a) *a = pts[i];
        if (b) *b = pts[j];
      }
    }
  return d;
}

std::vector<PlanePoint> at_levels(const ClusterEstimate& c, int lo, int hi) {
  std::vector<PlanePoint> out;
  for (const auto& w : c.witnesses)
    if (w.level >= lo && w.level <= hi) out.push_back(w.point);
  return out;
}

double hausdorff(const std::vector<PlanePoint>& a, const std::vector<PlanePoint>& b, bool chordal) {
  if (a.empty() || b.empty()) return INFINITY;
  auto one_side = [&](const std::vector<PlanePoint>& x, const std::vector<PlanePoint>& y) {
    double h = 0.0;
    for (auto p : x) {
      double m = INFINITY;
      for (auto q : y) m = std::min(m, witness_distance(p, q, chordal));
      h = std::max(h, m);
    }
    return h;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

void validate(PlanePoint& sigma, const ApproachParams& p, int levels) {
  require_on_circle(sigma);
  sigma /= std::abs(sigma);
  if (levels < 1 || levels > kMaxClusterLevel) fail(ErrorCode::InvalidParameter, "cluster levels must lie in [1, 8]");
  if (!(p.R > 0.0) || !std::isfinite(p.R)) fail(ErrorCode::InvalidParameter, "horodisc parameter R must be positive");
  if (!(p.aperture > 1.0) || !std::isfinite(p.aperture))
    fail(ErrorCode::InvalidParameter, "Stolz aperture must exceed 1");
  if (p.arc_samples < 1) fail(ErrorCode::InvalidParameter, "arc_samples must be positive");
}

void label(const ConformalMap& m, std::optional<int>& truncation, std::string& evidence) {
  truncation = m.target().truncation();
  evidence = m.target().family() == FamilyKind::Petersen ? "suggestive" : "truncated";
}

DiskMap as_disk_map(const ConformalMap& m) {
  return [&m](PlanePoint z) { return forward(m, z); };
}

bool unbounded(const ConformalMap& m) { return m.target().base() == BaseKind::HalfPlane; }

}  // namespace

std::string_view cluster_kind_name(ClusterKind k) {
  switch (k) {
    case ClusterKind::Unrestricted: return "unrestricted";
    case ClusterKind::Nontangential: return "nontangential";
    case ClusterKind::Horospheric: return "horospheric";
  }
  return "unknown";
}

double witness_distance(PlanePoint a, PlanePoint b, bool chordal) {
  if (!chordal) return std::abs(a - b);
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

ClusterEstimate cluster_set(const DiskMap& h, PlanePoint sigma, ClusterKind kind, const ApproachParams& params,
                            int levels, bool chordal) {
  validate(sigma, params, levels);
  ClusterEstimate est;
  est.kind = kind;
  est.base = sigma;
  est.params = params;
  est.levels = levels;
  est.chordal = chordal;
  for (int level = 1; level <= levels; ++level) {
    double delta = std::pow(10.0, -level);
    double own = threshold(kind, params, delta);
    std::vector<double> thetas;
    for (ClusterKind k : narrower_or_equal(kind))
      for (double t : arc_grid(threshold(k, params, delta), params.arc_samples))
        if (std::cos(t) > own) thetas.push_back(t);
    std::sort(thetas.begin(), thetas.end());
    thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
    std::vector<PlanePoint> images;
    for (double t : thetas) {
      PlanePoint z = sigma * (1.0 - delta * std::polar(1.0, t));
      if (!(std::norm(z) < 1.0)) continue;
      PlanePoint w = h(z);
      images.push_back(w);
      est.witnesses.push_back({level, w});
    }
    est.level_diameters.push_back(diameter_of(images, chordal));
  }
  est.diameter = diameter_of(at_levels(est, levels - 1, levels), chordal);
  return est;
}

ClusterEstimate cluster_set(const ConformalMap& m, PlanePoint sigma, ClusterKind kind, const ApproachParams& params,
                            int levels) {
  ClusterEstimate est = cluster_set(as_disk_map(m), sigma, kind, params, levels, unbounded(m));
  label(m, est.truncation, est.evidence);
  return est;
}

HLimitResult h_limit_test(const DiskMap& h, PlanePoint sigma, double R, double tol, int levels, bool chordal) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidParameter, "h_limit_test needs tol > 0");
  ApproachParams p;
  p.R = R;
  ClusterEstimate a = cluster_set(h, sigma, ClusterKind::Horospheric, p, levels, chordal);
  p.R = 4.0 * R;
  ClusterEstimate b = cluster_set(h, sigma, ClusterKind::Horospheric, p, levels, chordal);
  HLimitResult r;
  std::vector<PlanePoint> deep = at_levels(a, levels - 1, levels);
  r.diameter = diameter_of(deep, chordal, &r.witness_a, &r.witness_b);
  r.diameter_4R = b.diameter;
  r.exists = r.diameter < tol;
  std::vector<PlanePoint> last = at_levels(a, levels, levels);
  for (auto w : last) r.point += w;
  if (!last.empty()) r.point /= double(last.size());
  r.r_discrepancy = hausdorff(last, at_levels(b, levels, levels), chordal);
  r.r_agreement = r.r_discrepancy < tol;
  return r;
}

HLimitResult h_limit_test(const ConformalMap& m, PlanePoint sigma, double R, double tol, int levels) {
  HLimitResult r = h_limit_test(as_disk_map(m), sigma, R, tol, levels, unbounded(m));
  label(m, r.truncation, r.evidence);
  return r;
}

ContactEstimate busemann_horosphere_contact(const DiskMap& h, PlanePoint sigma, double M, int arc_samples,
                                            int levels, bool chordal) {
  require_on_circle(sigma);
  sigma /= std::abs(sigma);
  if (!std::isfinite(M)) fail(ErrorCode::InvalidParameter, "Busemann level must be finite");
  if (arc_samples < 1) fail(ErrorCode::InvalidParameter, "arc_samples must be positive");
  if (levels < 1 || levels > kMaxClusterLevel) fail(ErrorCode::InvalidParameter, "contact levels must lie in [1, 8]");
  Horocycle hc = make_horocycle(sigma, std::exp(2.0 * M));
  double r = horocycle_euclidean(hc).radius;
  ContactEstimate c;
  for (int side : {-1, 1})
    for (int j = 0; j < arc_samples; ++j) {
      double e = arc_samples == 1 ? double(levels) : levels - 1.0 + double(j) / (arc_samples - 1);
      double rho = std::pow(10.0, -e);
      if (rho >= 2.0 * r) continue;
      double eps = side * 2.0 * std::asin(rho / (2.0 * r));
      // sigma (1 - r (1 - e^{i eps})) with 1 - e^{i eps} = -2i sin(eps/2) e^{i eps/2}
      PlanePoint one_minus = PlanePoint(0.0, -2.0 * std::sin(eps / 2.0)) * std::polar(1.0, eps / 2.0);
      PlanePoint z = sigma * (1.0 - r * one_minus);
      if (!(std::norm(z) < 1.0)) continue;
      c.witnesses.push_back(h(z));
    }
  c.diameter = diameter_of(c.witnesses, chordal);
  return c;
}

ContactEstimate busemann_horosphere_contact(const ConformalMap& m, PlanePoint sigma, double M, int arc_samples,
                                            int levels) {
  ContactEstimate c = busemann_horosphere_contact(as_disk_map(m), sigma, M, arc_samples, levels, unbounded(m));
  label(m, c.truncation, c.evidence);
  return c;
}

}  // namespace horo
