#include "horo/bounds.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <queue>

namespace horo {

namespace {

constexpr double kQuadratureRelTol = 1e-8;
constexpr double kSafety = 2.0;

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// Bisection driven by the Gauss-Kronrod (7, 15) difference on each panel; kinks of
// 1/dist (where the nearest boundary feature changes) need deep local refinement.
template <class F>
Integral adaptive_gk(const F& f, double a, double b, double rel_tol, int depth) {
  Integral out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0);
  double err = std::abs(out.value - boost::math::quadrature::gauss<double, 7>::integrate(f, a, b));
  out.error = err;
  if (err <= rel_tol * std::abs(out.value) || depth == 0 || !(b - a > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a)))
    return out;
  double m = 0.5 * (a + b);
  Integral l = adaptive_gk(f, a, m, rel_tol, depth - 1);
  Integral r = adaptive_gk(f, m, b, rel_tol, depth - 1);
  return {l.value + r.value, l.error + r.error};
}

// Integral of |dz| / dist over [p, q] on the certified partition of the segment.
Integral segment_integral(const SlitDomain& d, PlanePoint p, PlanePoint q, int panels) {
  std::vector<double> steps = certify_segment(d, p, q);
  double len = std::abs(q - p);
  Integral out;
  if (len == 0.0) return out;
  if (int(steps.size()) - 1 < panels) {
    for (int k = 1; k < panels; ++k) steps.push_back(len * k / panels);
    std::sort(steps.begin(), steps.end());
  }
  PlanePoint u = (q - p) / len;
  auto f = [&](double t) { return 1.0 / d.raw_distance(p + t * u); };
  for (size_t k = 0; k + 1 < steps.size(); ++k) {
    if (!(steps[k + 1] > steps[k])) continue;
    Integral piece = adaptive_gk(f, steps[k], steps[k + 1], 1e-11, 40);
    out.value += piece.value;
    out.error += piece.error;
  }
  return out;
}

double gl4_edge(const SlitDomain& d, PlanePoint p, PlanePoint q) {
  double len = std::abs(q - p);
  auto f = [&](double t) { return 1.0 / d.raw_distance(p + t * (q - p)); };
  return len * boost::math::quadrature::gauss<double, 4>::integrate(f, 0.0, 1.0);
}

Rect grid_box(const SlitDomain& d, PlanePoint z, PlanePoint w, const GridSpec& grid) {
  if (grid.box) return *grid.box;
  if (d.base() == BaseKind::HalfPlane) {
    double x = 2.0 * std::max({z.real(), w.real(), 1.0});
    double y = 2.0 * std::max({std::abs(z.imag()), std::abs(w.imag()), 1.0});
    return {0.0, x, -y, y};
  }
  return d.rect();
}

struct Found {
  bool ok = false;
  std::vector<PlanePoint> path;
};

Found grid_search(const SlitDomain& d, PlanePoint z, PlanePoint w, const Rect& box, double h) {
  int nx = int(std::floor((box.x1 - box.x0) / h)) + 1;
  int ny = int(std::floor((box.y1 - box.y0) / h)) + 1;
  if (double(nx) * double(ny) > 2e7) fail(ErrorCode::InvalidParameter, "grid resolution too fine for the bounding box");
  auto pos = [&](int i, int j) { return PlanePoint(box.x0 + i * h, box.y0 + j * h); };
  std::vector<double> dist(size_t(nx) * ny, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      PlanePoint p = pos(i, j);
      if (d.contains(p)) dist[size_t(j) * nx + i] = d.raw_distance(p);
    }
  const int n_grid = nx * ny;
  const int src = n_grid, dst = n_grid + 1;
  auto point = [&](int v) { return v == src ? z : (v == dst ? w : pos(v % nx, v / nx)); };
  double dz = d.raw_distance(z), dw = d.raw_distance(w);
  auto node_dist = [&](int v) { return v == src ? dz : (v == dst ? dw : dist[v]); };
  auto linked = [&](int a, int b) {
    double da = node_dist(a), db = node_dist(b);
    return da > 0.0 && db > 0.0 && da + db > std::abs(point(a) - point(b));
  };

  auto near_nodes = [&](PlanePoint p) {
    std::vector<int> out;
    int ci = int(std::floor((p.real() - box.x0) / h)), cj = int(std::floor((p.imag() - box.y0) / h));
    for (int j = cj - 1; j <= cj + 2; ++j)
      for (int i = ci - 1; i <= ci + 2; ++i)
        if (i >= 0 && i < nx && j >= 0 && j < ny && dist[size_t(j) * nx + i] > 0.0) out.push_back(j * nx + i);
    return out;
  };
  std::vector<int> z_links = near_nodes(z), w_links = near_nodes(w);

  std::vector<double> best(n_grid + 2, INFINITY);
  std::vector<int> prev(n_grid + 2, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  best[src] = 0.0;
  pq.push({0.0, src});
  auto relax = [&](int a, int b) {
    if (!linked(a, b)) return;
    double c = best[a] + gl4_edge(d, point(a), point(b));
    if (c < best[b]) {
      best[b] = c;
      prev[b] = a;
      pq.push({c, b});
    }
  };
  while (!pq.empty()) {
    auto [c, v] = pq.top();
    pq.pop();
    if (c > best[v]) continue;
    if (v == dst) break;
    if (v == src) {
      relax(src, dst);
      for (int u : z_links) relax(src, u);
      continue;
    }
    int i = v % nx, j = v / nx;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (!di && !dj) continue;
        int a = i + di, b = j + dj;
        if (a < 0 || a >= nx || b < 0 || b >= ny) continue;
        relax(v, b * nx + a);
      }
    if (std::find(w_links.begin(), w_links.end(), v) != w_links.end()) relax(v, dst);
  }
  Found out;
  if (!std::isfinite(best[dst])) return out;
  for (int v = dst; v != -1; v = prev[v]) out.path.push_back(point(v));
  std::reverse(out.path.begin(), out.path.end());
  out.ok = true;
  return out;
}

}  // namespace

BoundPair curve_length_bounds(const SlitDomain& d, const Polyline& c, int panels) {
  if (panels < 1) fail(ErrorCode::InvalidParameter, "panels must be positive");
  validate_polyline(d, c);
  Integral total;
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    Integral s = segment_integral(d, c.vertices[i], c.vertices[i + 1], panels);
    total.value += s.value;
    total.error += s.error;
  }
  double widen = kSafety * total.error;
  if (widen > kQuadratureRelTol * total.value)
    fail(ErrorCode::QuadratureNonconvergence, "quadrature error estimate exceeds relative tolerance");
  return {std::max(0.0, total.value - widen) / 4.0, total.value + widen};
}

GridPath distance_upper_path(const SlitDomain& d, PlanePoint z, PlanePoint w, const GridSpec& grid) {
  if (!d.contains(z) || !d.contains(w)) fail(ErrorCode::PointOutsideDomain, "distance endpoints must lie in the domain");
  if (!(grid.spacing > 0.0) || grid.levels < 1) fail(ErrorCode::InvalidParameter, "grid spacing must be positive");
  if (d.family() == FamilyKind::Petersen && d.last_family_index().value_or(kPetersenMaterializeCap + 1) > kPetersenMaterializeCap)
    fail(ErrorCode::TruncationUnderflow, "grid search on the petersen domain needs truncation <= 5");
  GridPath out;
  if (z == w) {
    out.path.vertices = {z};
    return out;
  }
  Rect box = grid_box(d, z, w, grid);
  out.upper = INFINITY;
  if (d.raw_distance(z) + d.raw_distance(w) > std::abs(z - w)) {
    out.path.vertices = {z, w};
    out.upper = curve_length_bounds(d, out.path).upper;
  }
  for (int level = 0; level < grid.levels; ++level) {
    Found f = grid_search(d, z, w, box, std::ldexp(grid.spacing, -level));
    if (!f.ok) continue;
    Polyline p{f.path};
    double u = curve_length_bounds(d, p).upper;
    if (u < out.upper) {
      out.upper = u;
      out.path = p;
      out.level = level;
    }
  }
  if (!std::isfinite(out.upper))
    fail(ErrorCode::PointsDisconnectedAtResolution, "no grid path found; refine the grid");
  return out;
}

double distance_upper(const SlitDomain& d, PlanePoint z, PlanePoint w, const GridSpec& grid) {
  return distance_upper_path(d, z, w, grid).upper;
}

double distance_lower(const SlitDomain& d, PlanePoint z, PlanePoint w) {
  double m = std::min(d.dist_to_boundary(z), d.dist_to_boundary(w));
  return 0.25 * std::log1p(std::abs(z - w) / m);
}

double FiberBound::operator()(double t) const {
  switch (kind) {
    case Kind::Constant: return width;
    case Kind::Anchored: return std::hypot(t - anchor, std::exp(log_y));
    case Kind::Custom: return fn(t);
  }
  return 0.0;
}

FiberBound constant_fiber(double width) {
  if (!(width > 0.0)) fail(ErrorCode::InvalidParameter, "fiber width must be positive");
  FiberBound f;
  f.kind = FiberBound::Kind::Constant;
  f.width = width;
  return f;
}

FiberBound anchored_fiber(double anchor, double log_y) {
  FiberBound f;
  f.kind = FiberBound::Kind::Anchored;
  f.anchor = anchor;
  f.log_y = log_y;
  return f;
}

FiberBound custom_fiber(std::function<double(double)> fn) {
  FiberBound f;
  f.kind = FiberBound::Kind::Custom;
  f.fn = std::move(fn);
  return f;
}

FiberBound comb_strip_fiber(const SequenceRule& rule, int n) { return constant_fiber(comb_eps(rule, n)); }

FiberBound petersen_gap_fiber(int j) { return anchored_fiber(petersen_x(j), petersen_log_y(j)); }

namespace {

// asinh(u / y) with y = exp(log_y), valid when u / y overflows.
double scaled_asinh(double u, double log_y) {
  if (u == 0.0) return 0.0;
  double s = u < 0.0 ? -1.0 : 1.0;
  double lu = std::log(std::abs(u)) - log_y;
  if (lu > 20.0) return s * (std::numbers::ln2 + lu);
  return s * std::asinh(std::exp(lu));
}

}  // namespace

double corridor_lower_bound(const SlitDomain& d, double x0, double x1, const FiberBound& fiber) {
  if (!(x0 < x1) || !std::isfinite(x0) || !std::isfinite(x1))
    fail(ErrorCode::InvalidInterval, "corridor needs finite x0 < x1");
  const Rect& r = d.rect();
  if (d.base() != BaseKind::Disk && (x1 <= r.x0 || x0 >= r.x1))
    fail(ErrorCode::InvalidInterval, "corridor misses the domain");
  switch (fiber.kind) {
    case FiberBound::Kind::Constant:
      return (x1 - x0) / (4.0 * fiber.width);
    case FiberBound::Kind::Anchored:
      return 0.25 * (scaled_asinh(x1 - fiber.anchor, fiber.log_y) - scaled_asinh(x0 - fiber.anchor, fiber.log_y));
    case FiberBound::Kind::Custom: {
      double err = 0.0;
      auto g = [&](double t) {
        double f = fiber.fn(t);
        if (!(f > 0.0)) fail(ErrorCode::InvalidParameter, "fiber bound must be positive");
        return 1.0 / f;
      };
      double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, x0, x1, 20, 1e-12, &err);
      return std::max(0.0, 0.25 * (v - kSafety * err));
    }
  }
  return 0.0;
}

double channel_escape_upper(double h, double epsilon, double theta, double r0) {
  if (!(h >= 0.0) || !(r0 > 0.0) || !(epsilon > 0.0))
    fail(ErrorCode::InvalidParameter, "channel bound needs h >= 0, r0 > 0, epsilon > 0");
  double gap = epsilon - std::abs(theta);
  if (!(gap > 0.0)) fail(ErrorCode::InvalidParameter, "|theta| must be below epsilon");
  return h / gap + std::asinh(r0 / gap);
}

}  // namespace horo
