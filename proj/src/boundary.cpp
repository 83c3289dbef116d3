#include "boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace horo::detail {

namespace {

bool is_vertical(const AxisSegment& s) { return s.a.real() == s.b.real(); }

bool same_line(const AxisSegment& s, const AxisSegment& t) {
  bool v = is_vertical(s);
  if (v != is_vertical(t)) return false;
  return v ? s.a.real() == t.a.real() : s.a.imag() == t.a.imag();
}

bool on_segment(const AxisSegment& s, PlanePoint z) { return segment_distance(s, z) == 0.0; }

std::vector<AxisSegment> rect_edges(double x0, double x1, double y0, double y1) {
  return {{{x0, y0}, {x1, y0}}, {{x1, y0}, {x1, y1}}, {{x1, y1}, {x0, y1}}, {{x0, y1}, {x0, y0}}};
}

// Clips a slit to the box, dropping it if nothing of positive length remains.
void add_clipped(std::vector<AxisSegment>& out, const Slit& s, double x0, double x1, double y0, double y1) {
  if (s.vertical) {
    if (s.c < x0 || s.c > x1) return;
    double lo = std::max(s.lo, y0), hi = std::min(s.hi, y1);
    if (hi > lo) out.push_back({{s.c, lo}, {s.c, hi}});
  } else {
    if (s.c < y0 || s.c > y1) return;
    double lo = std::max(s.lo, x0), hi = std::min(s.hi, x1);
    if (hi > lo) out.push_back({{lo, s.c}, {hi, s.c}});
  }
}

// Petersen region: channels between consecutive rays are capped at
// cap * width, the part right of x_0 is closed at [x_0, X] x [-X, X].
std::vector<AxisSegment> petersen_segments(int n, double cap, double X) {
  std::vector<AxisSegment> seg;
  std::vector<double> h(n + 1);
  for (int j = 0; j < n; ++j) h[j] = cap * petersen_x(j + 1);
  h[n] = cap * petersen_x(n);
  for (double sgn : {1.0, -1.0}) {
    seg.push_back({{petersen_x(0), sgn * X}, {X, sgn * X}});
    for (int j = 0; j <= n; ++j) {
      double top = j == 0 ? X : h[j - 1];
      double x = petersen_x(j);
      seg.push_back({{x, sgn * petersen_y(j)}, {x, sgn * top}});
      double left = j < n ? petersen_x(j + 1) : 0.0;
      seg.push_back({{left, sgn * h[j]}, {x, sgn * h[j]}});
    }
    seg.push_back({{0.0, 0.0}, {0.0, sgn * h[n]}});
  }
  seg.push_back({{X, -X}, {X, X}});
  return seg;
}

double signed_area(const std::vector<PlanePoint>& c) {
  double a = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    PlanePoint p = c[i], q = c[(i + 1) % c.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

int winding(const std::vector<PlanePoint>& c, PlanePoint z) {
  int w = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    PlanePoint p = c[i], q = c[(i + 1) % c.size()];
    if (p.imag() <= z.imag()) {
      if (q.imag() > z.imag() &&
          (q.real() - p.real()) * (z.imag() - p.imag()) - (z.real() - p.real()) * (q.imag() - p.imag()) > 0)
        ++w;
    } else if (q.imag() <= z.imag() &&
               (q.real() - p.real()) * (z.imag() - p.imag()) - (z.real() - p.real()) * (q.imag() - p.imag()) < 0) {
      --w;
    }
  }
  return w;
}

// First boundary point hit by the ray z + t*dir, t > 0.
std::optional<PlanePoint> ray_hit(const std::vector<AxisSegment>& edges, PlanePoint z, PlanePoint dir) {
  double best = INFINITY;
  for (const auto& s : edges) {
    double t = INFINITY;
    if (dir.real() != 0.0 && is_vertical(s)) {
      double x = s.a.real();
      double tt = (x - z.real()) / dir.real();
      double lo = std::min(s.a.imag(), s.b.imag()), hi = std::max(s.a.imag(), s.b.imag());
      if (tt > 0 && z.imag() >= lo && z.imag() <= hi) t = tt;
    } else if (dir.imag() != 0.0 && !is_vertical(s)) {
      double y = s.a.imag();
      double tt = (y - z.imag()) / dir.imag();
      double lo = std::min(s.a.real(), s.b.real()), hi = std::max(s.a.real(), s.b.real());
      if (tt > 0 && z.real() >= lo && z.real() <= hi) t = tt;
    }
    best = std::min(best, t);
  }
  if (!std::isfinite(best)) return std::nullopt;
  return z + best * dir;
}

}  // namespace

double segment_distance(const AxisSegment& s, PlanePoint z) {
  if (is_vertical(s)) {
    double lo = std::min(s.a.imag(), s.b.imag()), hi = std::max(s.a.imag(), s.b.imag());
    double y = std::clamp(z.imag(), lo, hi);
    return std::hypot(z.real() - s.a.real(), z.imag() - y);
  }
  double lo = std::min(s.a.real(), s.b.real()), hi = std::max(s.a.real(), s.b.real());
  double x = std::clamp(z.real(), lo, hi);
  return std::hypot(z.real() - x, z.imag() - s.a.imag());
}

double FitRegion::boundary_distance(PlanePoint z) const {
  double d = INFINITY;
  for (const auto& s : edges) d = std::min(d, segment_distance(s, z));
  return d;
}

double FitRegion::true_boundary_distance(PlanePoint z) const {
  double d = INFINITY;
  for (const auto& s : true_edges) d = std::min(d, segment_distance(s, z));
  return d;
}

bool FitRegion::contains(PlanePoint z) const {
  if (!is_finite(z) || boundary_distance(z) == 0.0) return false;
  return winding(cycle, z) != 0;
}

FitRegion build_fit_region(const SlitDomain& d, PlanePoint anchor, const FitOptions& opt) {
  std::vector<AxisSegment> seg;
  double bx0 = 0.0, bx1 = 0.0;
  switch (d.base()) {
    case BaseKind::Disk:
      fail(ErrorCode::InvalidParameter, "fit_map: the disk base is its own Riemann map");
    case BaseKind::Square:
    case BaseKind::Rect: {
      const Rect& r = d.rect();
      seg = rect_edges(r.x0, r.x1, r.y0, r.y1);
      bx0 = r.x0;
      bx1 = r.x1;
      break;
    }
    case BaseKind::HalfPlane:
      break;
  }
  if (d.family() != FamilyKind::None && !d.truncation()) {
    fail(ErrorCode::InvalidParameter, "fit_map needs a finite truncation");
  }
  if (d.family() == FamilyKind::Petersen && *d.truncation() > kPetersenMaterializeCap) {
    fail(ErrorCode::TruncationUnderflow,
         "fit_map: petersen truncation above " + std::to_string(kPetersenMaterializeCap));
  }
  if (d.family() == FamilyKind::Petersen && *d.truncation() > 3) {
    fail(ErrorCode::FitDiverged, "fit_map: petersen gaps beyond index 3 are below double-double resolution");
  }

  std::vector<Slit> slits = d.extra_slits();
  if (d.family() == FamilyKind::Comb) {
    auto fam = d.materialized_slits();
    slits.insert(slits.end(), fam.begin(), fam.end() - long(d.extra_slits().size()));
  }
  if (d.base() == BaseKind::HalfPlane) {
    double X = opt.halfplane_clip;
    if (!(X > 0.0)) fail(ErrorCode::InvalidParameter, "halfplane_clip must be positive");
    for (const Slit& s : slits) {
      for (double v : {s.c, s.lo, s.hi})
        if (std::isfinite(v)) X = std::max(X, 1.5 * std::abs(v));
    }
    if (d.family() == FamilyKind::Petersen) {
      seg = petersen_segments(*d.truncation(), opt.channel_cap, X);
    } else {
      seg = rect_edges(0.0, X, -X, X);
    }
    bx0 = 0.0;
    bx1 = X;
    std::vector<AxisSegment> clipped;
    for (const Slit& s : slits) add_clipped(clipped, s, 0.0, X, -X, X);
    seg.insert(seg.end(), clipped.begin(), clipped.end());
  } else {
    const Rect& r = d.rect();
    for (const Slit& s : slits) add_clipped(seg, s, r.x0, r.x1, r.y0, r.y1);
  }

  FitRegion fr;
  fr.symmetric = opt.use_symmetry && !opt.normalization_point && anchor.imag() == 0.0 &&
                 d.symmetric_about_real_axis();
  PlanePoint start, next_dir;
  std::vector<PlanePoint> split;
  if (fr.symmetric) {
    double lo = bx0, hi = bx1;
    for (const auto& s : seg) {
      double ylo = std::min(s.a.imag(), s.b.imag()), yhi = std::max(s.a.imag(), s.b.imag());
      if (ylo > 0.0 || yhi < 0.0) continue;
      double xlo = std::min(s.a.real(), s.b.real()), xhi = std::max(s.a.real(), s.b.real());
      if (xhi < anchor.real()) lo = std::max(lo, xhi);
      if (xlo > anchor.real()) hi = std::min(hi, xlo);
      if (xlo <= anchor.real() && xhi >= anchor.real()) {
        fail(ErrorCode::PointOutsideDomain, "fit_map: anchor on the boundary");
      }
    }
    std::vector<AxisSegment> upper;
    for (const auto& s : seg) {
      AxisSegment c = s;
      if (is_vertical(c)) {
        double ylo = std::max(0.0, std::min(c.a.imag(), c.b.imag()));
        double yhi = std::max(c.a.imag(), c.b.imag());
        if (yhi <= 0.0) continue;
        c = {{c.a.real(), ylo}, {c.a.real(), yhi}};
      } else if (c.a.imag() < 0.0) {
        continue;
      }
      upper.push_back(c);
    }
    upper.push_back({{bx0, 0.0}, {bx1, 0.0}});
    seg = std::move(upper);
    fr.cut_lo = lo;
    fr.cut_hi = hi;
    start = {lo, 0.0};
    next_dir = {1.0, 0.0};
    split = {start, PlanePoint(hi, 0.0)};
  } else {
    std::optional<PlanePoint> hit;
    for (PlanePoint dir : {PlanePoint(1, 0), PlanePoint(0, 1), PlanePoint(-1, 0), PlanePoint(0, -1)}) {
      hit = ray_hit(seg, anchor, dir);
      if (hit) break;
    }
    if (!hit) fail(ErrorCode::NonJordanBoundary, "fit_map: no boundary around the anchor");
    start = *hit;
    split = {start};
  }
  fr.edges = seg;
  fr.true_edges = seg;
  if (fr.symmetric) {
    fr.true_edges.pop_back();
    if (fr.cut_lo > bx0) fr.true_edges.push_back({{bx0, 0.0}, {fr.cut_lo, 0.0}});
    if (fr.cut_hi < bx1) fr.true_edges.push_back({{fr.cut_hi, 0.0}, {bx1, 0.0}});
  }

  PlanarGraph g = build_planar_graph(seg, split);
  int s0 = g.find(start);
  if (s0 < 0) fail(ErrorCode::NonJordanBoundary, "fit_map: no boundary point to start from");

  std::vector<int> best;
  for (int w : g.adj[s0]) {
    PlanePoint dir = g.nodes[w] - g.nodes[s0];
    if (fr.symmetric && !(dir.imag() == 0.0 && dir.real() > 0.0)) continue;
    std::vector<int> c = trace_left_face(g, s0, w);
    std::vector<PlanePoint> pts;
    for (int i : c) pts.push_back(g.nodes[i]);
    if (c.empty() || signed_area(pts) <= 0.0 || winding(pts, anchor) == 0) continue;
    if (std::count(c.begin(), c.end(), s0) != 1) continue;
    best = c;
    fr.cycle = pts;
    break;
  }
  if (best.empty()) {
    fail(ErrorCode::NonJordanBoundary, "fit_map: the anchor's face does not start at a one-sided boundary point");
  }
  if (!fr.contains(anchor) && !(fr.symmetric && anchor.real() > fr.cut_lo && anchor.real() < fr.cut_hi)) {
    fail(ErrorCode::PointOutsideDomain, "fit_map: anchor outside the fitted region");
  }
  if (opt.normalization_point) {
    const PlanePoint np = *opt.normalization_point;
    const int m = int(fr.cycle.size());
    int hits = 0;
    for (int i = 0; i < m; ++i) {
      AxisSegment e{fr.cycle[i], fr.cycle[(i + 1) % m]};
      if (on_segment(e, np) && np != e.b) {
        ++hits;
        fr.norm_edge = i;
      }
    }
    if (hits != 1) {
      fail(ErrorCode::InvalidParameter, "fit_map: normalization point must be a one-sided point of the fitted boundary");
    }
  }
  for (size_t i = 0; i < fr.cycle.size(); ++i)
    for (size_t j = i + 1; j < fr.cycle.size(); ++j)
      fr.diameter = std::max(fr.diameter, std::abs(fr.cycle[i] - fr.cycle[j]));
  return fr;
}

FitRegion lower_half_region(const FitRegion& r) {
  FitRegion out = r;
  auto flip = [](std::vector<AxisSegment>& v) {
    for (auto& e : v) e = {std::conj(e.a), std::conj(e.b)};
  };
  flip(out.edges);
  flip(out.true_edges);
  std::vector<PlanePoint> c;
  for (auto it = r.cycle.rbegin(); it != r.cycle.rend(); ++it) c.push_back(std::conj(*it));
  PlanePoint b(r.cut_hi, 0.0);
  auto at = std::find(c.begin(), c.end(), b);
  if (at == c.end() || std::count(c.begin(), c.end(), b) != 1) {
    fail(ErrorCode::NonJordanBoundary, "fit_map: the real segment ends on a slit");
  }
  std::rotate(c.begin(), at, c.end());
  out.cycle = c;
  out.cut_far = {r.cut_lo, 0.0};
  return out;
}

namespace {

// Arc length along an axis-parallel edge, kept in double-double so that
// nodes near the far end are not rounded onto each other.
struct EdgeFrame {
  bool vertical;
  double sign, a_along, a_across;
  dd len;
  EdgeFrame(PlanePoint a, PlanePoint b) : vertical(a.real() == b.real()) {
    a_along = vertical ? a.imag() : a.real();
    a_across = vertical ? a.real() : a.imag();
    double b_along = vertical ? b.imag() : b.real();
    sign = b_along > a_along ? 1.0 : -1.0;
    len = (dd(b_along) - dd(a_along)) * sign;
  }
  dd along(PlanePoint p) const { return (dd(vertical ? p.imag() : p.real()) - dd(a_along)) * sign; }
  double offset(PlanePoint p) const { return std::abs((vertical ? p.real() : p.imag()) - a_across); }
  PlanePoint point(dd s) const {
    double x = double(dd(a_along) + s * sign);
    return vertical ? PlanePoint(a_across, x) : PlanePoint(x, a_across);
  }
};

}  // namespace

dd along_edge(const FitRegion& r, int e, PlanePoint p) {
  return EdgeFrame(r.cycle[e], r.cycle[(e + 1) % r.cycle.size()]).along(p);
}

double EdgeWeight::at(dd s) const {
  if (value.empty()) return 1.0;
  size_t k = std::lower_bound(end.begin(), end.end(), s) - end.begin();
  return value[std::min(k, value.size() - 1)];
}

Sampling sample_boundary(const FitRegion& r, int samples, double tip_floor, const std::vector<EdgeWeight>* weights) {
  const auto& C = r.cycle;
  const int m = int(C.size());
  std::vector<double> angle(m);
  for (int i = 0; i < m; ++i) {
    PlanePoint in = C[i] - C[(i + m - 1) % m], out = C[(i + 1) % m] - C[i];
    double turn = std::arg(out / in);
    if (std::abs(std::abs(turn) - M_PI) < 1e-12) turn = -M_PI;
    angle[i] = M_PI - turn;
  }
  // The start point closes the last stage, so it is refined like a corner.
  std::vector<PlanePoint> singular{C[0]};
  for (int i = 0; i < m; ++i)
    if (std::abs(angle[i] - M_PI) > 1e-9 && std::find(singular.begin(), singular.end(), C[i]) == singular.end())
      singular.push_back(C[i]);
  std::vector<double> feature(singular.size(), INFINITY);
  for (size_t k = 0; k < singular.size(); ++k) {
    for (const auto& e : r.edges)
      if (!on_segment(e, singular[k])) feature[k] = std::min(feature[k], segment_distance(e, singular[k]));
    for (size_t j = 0; j < singular.size(); ++j)
      if (j != k) feature[k] = std::min(feature[k], std::abs(singular[k] - singular[j]));
  }
  const double cap = r.diameter / 16.0;
  std::vector<double> floor_of(singular.size(), tip_floor);

  auto density = [&](const AxisSegment& e, PlanePoint p) {
    double lfs = cap;
    for (const auto& f : r.edges)
      if (!same_line(e, f) && !on_segment(f, e.a) && !on_segment(f, e.b))
        lfs = std::min(lfs, segment_distance(f, p));
    for (size_t k = 0; k < singular.size(); ++k)
      lfs = std::min(lfs, std::max(std::abs(p - singular[k]), floor_of[k] * feature[k]));
    return 1.0 / lfs;
  };

  struct EdgeInfo {
    bool ret = false;
    int reverse_of = -1;
    std::vector<dd> grid;
    std::vector<double> mass;
    int count = 0;
  };
  std::map<std::pair<std::pair<double, double>, std::pair<double, double>>, int> seen;
  auto key = [](PlanePoint p, PlanePoint q) {
    return std::make_pair(std::make_pair(p.real(), p.imag()), std::make_pair(q.real(), q.imag()));
  };
  std::vector<EdgeInfo> info(m);
  double total = 0.0;
  int zip_vertices = 1;
  for (int i = 0; i < m; ++i) {
    PlanePoint a = C[i], b = C[(i + 1) % m];
    auto it = seen.find(key(b, a));
    if (it != seen.end()) {
      info[i].ret = true;
      info[i].reverse_of = it->second;
      continue;
    }
    seen[key(a, b)] = i;
    if (i + 1 < m) ++zip_vertices;
    EdgeFrame f(a, b);
    const dd len = f.len;
    AxisSegment e{a, b};
    // Grid refined geometrically around the ends and around the foot of
    // every corner or tip that comes close to this edge.
    std::vector<std::pair<dd, double>> focus;
    for (size_t k = 0; k < singular.size(); ++k) {
      dd along = f.along(singular[k]);
      double off = f.offset(singular[k]);
      double fl = floor_of[k] * feature[k];
      if (singular[k] == a) focus.push_back({dd(0.0), fl});
      else if (singular[k] == b) focus.push_back({len, fl});
      else if (along > dd(0.0) && along < len && off > 0.0) focus.push_back({along, std::max(off, fl)});
    }
    std::vector<dd>& g = info[i].grid;
    for (int k = 0; k <= 256; ++k) g.push_back(k == 256 ? len : len * (k / 256.0));
    const double dlen = double(len);
    for (auto [at, scale] : focus) {
      double lo = std::min(scale, dlen * 0.5);
      for (int k = 0; k <= 96; ++k) {
        double d = lo * std::pow(dlen / lo, k / 96.0);
        if (at - dd(d) > dd(0.0)) g.push_back(at - dd(d));
        if (at + dd(d) < len) g.push_back(at + dd(d));
      }
    }
    const EdgeWeight* w = weights ? &(*weights)[i] : nullptr;
    if (w)
      for (dd x : w->end)
        if (x > dd(0.0) && x < len) g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::vector<double>& M = info[i].mass;
    M.assign(g.size(), 0.0);
    double prev = density(e, f.point(g[0]));
    for (size_t k = 1; k < g.size(); ++k) {
      double cur = density(e, f.point(g[k]));
      double fac = w ? w->at((g[k - 1] + g[k]) * 0.5) : 1.0;
      M[k] = M[k - 1] + 0.5 * (prev + cur) * double(g[k] - g[k - 1]) * fac;
      prev = cur;
    }
    total += M.back();
  }

  int budget = std::max(0, samples - zip_vertices);
  std::vector<std::pair<double, int>> rem;
  int used = 0;
  for (int i = 0; i < m; ++i) {
    if (info[i].ret) continue;
    double want = budget * info[i].mass.back() / total;
    info[i].count = int(std::floor(want));
    used += info[i].count;
    rem.push_back({want - info[i].count, i});
  }
  std::sort(rem.begin(), rem.end(), std::greater<>());
  for (size_t k = 0; used < budget && k < rem.size(); ++k, ++used) ++info[rem[k].second].count;

  Sampling out;
  out.nodes.push_back({C[0], -1});
  std::vector<int> start_node(m), first_interior(m), interior_count(m);
  for (int i = 0; i < m; ++i) {
    start_node[i] = int(out.nodes.size()) - 1;
    PlanePoint a = C[i], b = C[(i + 1) % m];
    first_interior[i] = int(out.nodes.size());
    if (info[i].ret) {
      int j = info[i].reverse_of;
      interior_count[i] = interior_count[j];
      for (int k = interior_count[j] - 1; k >= 0; --k)
        out.nodes.push_back({out.nodes[first_interior[j] + k].point, first_interior[j] + k});
      if (i + 1 < m) out.nodes.push_back({b, start_node[j]});
    } else {
      const auto& g = info[i].grid;
      const auto& M = info[i].mass;
      int n = info[i].count;
      interior_count[i] = n;
      EdgeFrame f(a, b);
      size_t k = 1;
      for (int j = 1; j <= n; ++j) {
        double target = M.back() * j / (n + 1);
        while (k + 1 < M.size() && M[k] < target) ++k;
        double t = (target - M[k - 1]) / (M[k] - M[k - 1]);
        dd s = g[k - 1] + (g[k] - g[k - 1]) * t;
        out.nodes.push_back({f.point(s), -1});
      }
      if (i + 1 < m) out.nodes.push_back({b, -1});
    }
    if (r.symmetric && b == r.cut_far && i + 1 < m) out.cut_node = int(out.nodes.size()) - 1;
  }
  const int n = int(out.nodes.size());
  out.intervals.resize(n);
  for (int i = 0; i < m; ++i) {
    int e = info[i].ret ? info[i].reverse_of : i;
    EdgeFrame f(C[e], C[(e + 1) % m]);
    int last = i + 1 < m ? start_node[i + 1] : n;
    for (int k = start_node[i]; k < last; ++k) {
      dd s0 = f.along(out.nodes[k].point), s1 = f.along(out.nodes[(k + 1) % n].point);
      out.intervals[k] = {e, std::min(s0, s1), std::max(s0, s1)};
    }
  }
  return out;
}

}  // namespace horo::detail
