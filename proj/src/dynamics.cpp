#include "horo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace horo {

namespace {

PlanePoint halfplane_to_disk(PlanePoint w) { return cayley_inverse(1.0, w); }

// Boundary points of the disk sent to the imaginary axis or infinity.
PlanePoint disk_boundary_to_halfplane(PlanePoint z, double snap) {
  z /= std::abs(z);
  if (std::abs(z - 1.0) <= snap) return kInfinity;
  return {0.0, cayley(1.0, z).imag()};
}

enum class StepKind { Interior, Boundary };

// Checks an image against the model; boundary hits at double resolution are
// reported, larger excursions raise SelfMapViolation.
StepKind check_image(Model m, PlanePoint z) {
  if (m == Model::Disk) {
    if (!is_finite(z)) fail(ErrorCode::SelfMapViolation, "iterate is not finite");
    double r = std::abs(z);
    if (r > 1.0 + kSelfMapSlack) fail(ErrorCode::SelfMapViolation, "iterate left the unit disk");
    return r < 1.0 ? StepKind::Interior : StepKind::Boundary;
  }
  if (std::isnan(z.real()) || std::isnan(z.imag())) fail(ErrorCode::SelfMapViolation, "iterate is not a number");
  if (is_infinity(z)) return StepKind::Boundary;
  if (z.real() < -kSelfMapSlack * std::max(1.0, std::abs(z)))
    fail(ErrorCode::SelfMapViolation, "iterate left the right half-plane");
  return z.real() > 0.0 ? StepKind::Interior : StepKind::Boundary;
}

struct Mat {
  PlanePoint p, q, r, s;
};

Mat mul(const Mat& x, const Mat& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

}  // namespace

std::string_view model_name(Model m) { return m == Model::Disk ? "disk" : "halfplane"; }

std::string_view class_name(MobiusClass c) {
  switch (c) {
    case MobiusClass::Elliptic: return "elliptic";
    case MobiusClass::Parabolic: return "parabolic";
    case MobiusClass::HyperbolicAutomorphism: return "hyperbolic-automorphism";
  }
  return "unknown";
}

PlanePoint MobiusSelfMap::operator()(PlanePoint z) const {
  if (model == Model::Disk) return (a * z + b) / (std::conj(b) * z + std::conj(a));
  const PlanePoint i(0.0, 1.0);
  if (is_infinity(z)) return gamma == 0.0 ? kInfinity : PlanePoint(alpha) / (-i * gamma);
  return (alpha * z + i * beta) / (-i * gamma * z + delta);
}

double MobiusSelfMap::trace() const { return model == Model::Disk ? 2.0 * a.real() : alpha + delta; }

MobiusSelfMap disk_mobius(PlanePoint a, PlanePoint b) {
  double det = std::norm(a) - std::norm(b);
  if (!is_finite(a) || !is_finite(b) || !(det > 0.0) || !std::isfinite(det))
    fail(ErrorCode::NotAnAutomorphism, "disk Moebius map needs |a|^2 - |b|^2 > 0");
  double s = std::sqrt(det);
  MobiusSelfMap m;
  m.a = a / s;
  m.b = b / s;
  return m;
}

MobiusSelfMap halfplane_mobius(double alpha, double beta, double gamma, double delta) {
  double det = alpha * delta - beta * gamma;
  if (!(det > 0.0) || !std::isfinite(det))
    fail(ErrorCode::NotAnAutomorphism, "half-plane Moebius map needs alpha delta - beta gamma > 0");
  double s = std::sqrt(det);
  MobiusSelfMap m;
  m.model = Model::HalfPlane;
  m.alpha = alpha / s;
  m.beta = beta / s;
  m.gamma = gamma / s;
  m.delta = delta / s;
  return m;
}

MobiusSelfMap to_disk_model(const MobiusSelfMap& m) {
  if (m.model == Model::Disk) return m;
  const PlanePoint i(0.0, 1.0);
  Mat h{m.alpha, i * m.beta, -i * m.gamma, m.delta};
  Mat c{1.0, 1.0, -1.0, 1.0};
  Mat c_inv{1.0, -1.0, 1.0, 1.0};
  Mat d = mul(c_inv, mul(h, c));
  MobiusSelfMap out;
  out.a = d.p / 2.0;
  out.b = d.q / 2.0;
  return out;
}

Classification classify(const MobiusSelfMap& map) {
  MobiusSelfMap m = to_disk_model(map);
  if (!(std::abs(std::norm(m.a) - std::norm(m.b) - 1.0) <= 1e-12))
    fail(ErrorCode::NotAnAutomorphism, "coefficients are not normalized to unit determinant");
  Classification c;
  c.trace = map.trace();
  double t = std::abs(2.0 * m.a.real());
  const PlanePoint i(0.0, 1.0);
  std::vector<PlanePoint> fixed;
  if (m.b == 0.0) {
    c.kind = MobiusClass::Elliptic;
    fixed.push_back(0.0);
  } else if (std::abs(t - 2.0) <= kParabolicTraceTol) {
    c.kind = MobiusClass::Parabolic;
    PlanePoint z = i * m.a.imag() / std::conj(m.b);
    fixed.push_back(z / std::abs(z));
  } else if (t > 2.0) {
    c.kind = MobiusClass::HyperbolicAutomorphism;
    double s = std::sqrt(m.a.real() * m.a.real() - 1.0);
    PlanePoint z1 = (i * m.a.imag() + s) / std::conj(m.b);
    PlanePoint z2 = (i * m.a.imag() - s) / std::conj(m.b);
    z1 /= std::abs(z1);
    z2 /= std::abs(z2);
    double l1 = std::norm(std::conj(m.b) * z1 + std::conj(m.a));
    double l2 = std::norm(std::conj(m.b) * z2 + std::conj(m.a));
    if (l2 > l1) {
      std::swap(z1, z2);
      std::swap(l1, l2);
    }
    c.multiplier = l1;
    fixed = {z1, z2};
  } else {
    c.kind = MobiusClass::Elliptic;
    double s = std::sqrt(std::max(0.0, 1.0 - m.a.real() * m.a.real()));
    double sign = m.a.imag() < 0.0 ? -1.0 : 1.0;
    PlanePoint z1 = i * (m.a.imag() + sign * s) / std::conj(m.b);
    PlanePoint z2 = (-m.b / std::conj(m.b)) / z1;
    fixed.push_back(std::abs(z1) < std::abs(z2) ? z1 : z2);
  }
  if (map.model == Model::HalfPlane) {
    for (auto& z : fixed)
      z = c.kind == MobiusClass::Elliptic ? cayley(1.0, z) : disk_boundary_to_halfplane(z, 1e-12);
  }
  c.fixed_points = fixed;
  return c;
}

BlaschkeProduct make_blaschke(PlanePoint unimodular, std::vector<PlanePoint> zeros) {
  if (!is_finite(unimodular) || std::abs(std::abs(unimodular) - 1.0) > kUnitCircleTol)
    fail(ErrorCode::InvalidParameter, "Blaschke factor must be unimodular");
  for (auto a : zeros)
    if (!is_finite(a) || !(std::abs(a) < 1.0)) fail(ErrorCode::InvalidParameter, "Blaschke zeros must lie in the disk");
  return {unimodular, std::move(zeros)};
}

SelfMap::SelfMap(const MobiusSelfMap& m) : model_(m.model), eval_(m), name_("mobius"), mobius_(m) {}

SelfMap::SelfMap(const BlaschkeProduct& b) : model_(Model::Disk), name_("blaschke"), blaschke_(b) {
  eval_ = [b](PlanePoint z) {
    PlanePoint w = b.unimodular;
    for (auto a : b.zeros) w *= (z - a) / (1.0 - std::conj(a) * z);
    return w;
  };
}

SelfMap::SelfMap(Model model, std::function<PlanePoint(PlanePoint)> eval, std::string name)
    : model_(model), eval_(std::move(eval)), name_(std::move(name)) {}

SelfMap SelfMap::in_disk() const {
  if (model_ == Model::Disk) return *this;
  if (mobius_) return SelfMap(to_disk_model(*mobius_));
  auto f = eval_;
  return SelfMap(Model::Disk, [f](PlanePoint z) { return halfplane_to_disk(f(cayley(1.0, z))); }, name_);
}

bool in_model(Model m, PlanePoint z) {
  if (!is_finite(z)) return false;
  return m == Model::Disk ? std::abs(z) < 1.0 : z.real() > 0.0;
}

double model_distance(Model m, PlanePoint z, PlanePoint w) {
  return m == Model::Disk ? disk_distance(z, w) : halfplane_distance(z, w);
}

OrbitRecord iterate(const SelfMap& f, PlanePoint z0, int n) {
  if (n < 1) fail(ErrorCode::InvalidParameter, "iterate needs n >= 1");
  if (!in_model(f.model(), z0)) fail(ErrorCode::PointOutsideDomain, "orbit start outside the model domain");
  OrbitRecord o;
  o.start = z0;
  o.points.reserve(n + 1);
  o.step_distances.reserve(n + 1);
  o.points.push_back(z0);
  for (int k = 0; k <= n; ++k) {
    PlanePoint z = f(o.points.back());
    if (check_image(f.model(), z) == StepKind::Boundary) {
      o.reached_boundary = true;
      if (o.points.size() == 1) fail(ErrorCode::ConvergenceFailure, "first iterate already on the boundary");
      o.points.pop_back();
      break;
    }
    o.step_distances.push_back(model_distance(f.model(), o.points.back(), z));
    if (k < n) o.points.push_back(z);
  }
  if (f.mobius()) {
    o.hint = class_name(classify(*f.mobius()).kind);
  } else {
    PlanePoint last = f.model() == Model::Disk ? o.points.back() : halfplane_to_disk(o.points.back());
    o.hint = o.reached_boundary || 1.0 - std::abs(last) < 1e-6 ? "escaping" : "bounded";
  }
  return o;
}

DenjoyWolffResult denjoy_wolff_point(const SelfMap& f, const DenjoyWolffOptions& options) {
  if (options.budget < 2) fail(ErrorCode::InvalidParameter, "iteration budget must be at least 2");
  DenjoyWolffResult res;
  std::optional<Classification> cls;
  if (f.mobius()) cls = classify(*f.mobius());
  res.tolerance = options.tolerance.value_or(cls && cls->kind == MobiusClass::Parabolic ? 1e-4 : 1e-8);
  if (!(res.tolerance > 0.0)) fail(ErrorCode::InvalidParameter, "tolerance must be positive");
  if (cls && cls->kind == MobiusClass::Elliptic) {
    res.on_boundary = false;
    res.point = cls->fixed_points.front();
    res.disk_point = f.model() == Model::Disk ? res.point : halfplane_to_disk(res.point);
    res.estimates = {res.point};
    return res;
  }

  std::vector<PlanePoint> starts = options.starts;
  if (starts.empty()) {
    if (f.model() == Model::Disk)
      starts = {0.0, PlanePoint(0.0, 0.3), -0.5};
    else
      starts = {1.0, PlanePoint(1.0, 1.0), PlanePoint(0.5, -2.0)};
  }
  SelfMap g = f.in_disk();
  std::vector<PlanePoint> disk_estimates;
  std::vector<bool> interior;
  for (PlanePoint s : starts) {
    if (!in_model(f.model(), s)) fail(ErrorCode::PointOutsideDomain, "Denjoy-Wolff start outside the model domain");
    std::vector<PlanePoint> zs{f.model() == Model::Disk ? s : halfplane_to_disk(s)};
    zs.reserve(options.budget + 1);
    double err = INFINITY;
    bool hit_boundary = false;
    for (int k = 1; k <= options.budget; ++k) {
      PlanePoint z = g(zs.back());
      zs.push_back(z);
      if (check_image(Model::Disk, z) == StepKind::Boundary) {
        hit_boundary = true;
        err = 0.0;
        break;
      }
      err = std::abs(z - zs[k / 2]);
      if (err <= 1e-2 * res.tolerance) break;
    }
    res.iterations = std::max(res.iterations, int(zs.size()) - 1);
    if (!(err <= res.tolerance))
      fail(ErrorCode::ConvergenceFailure, "orbit did not settle within the iteration budget");
    PlanePoint p = zs.back();
    bool inside = !hit_boundary && 1.0 - std::abs(p) > 10.0 * err;
    interior.push_back(inside);
    disk_estimates.push_back(inside ? p : p / std::abs(p));
  }
  if (std::adjacent_find(interior.begin(), interior.end(), std::not_equal_to<>()) != interior.end())
    fail(ErrorCode::ConvergenceFailure, "starts disagree on an interior fixed point");
  for (auto x : disk_estimates)
    for (auto y : disk_estimates) res.spread = std::max(res.spread, std::abs(x - y));
  if (res.spread > std::max(kDenjoyWolffAgreement, interior.front() ? res.tolerance : 0.0))
    fail(ErrorCode::ConvergenceFailure, "starts converge to different points");

  PlanePoint mean = 0.0;
  for (auto x : disk_estimates) mean += x;
  mean /= double(disk_estimates.size());
  res.on_boundary = !interior.front();
  if (res.on_boundary) mean /= std::abs(mean);
  res.disk_point = mean;
  auto to_model = [&](PlanePoint z) {
    if (f.model() == Model::Disk) return z;
    return res.on_boundary ? disk_boundary_to_halfplane(z, res.tolerance) : cayley(1.0, z);
  };
  res.point = to_model(mean);
  for (auto x : disk_estimates) res.estimates.push_back(to_model(x));
  return res;
}

DivergenceEstimate divergence_rate(const SelfMap& f, PlanePoint z0, int n) {
  OrbitRecord o = iterate(f, z0, n);
  int m = int(o.points.size()) - 1;
  if (m < 1) fail(ErrorCode::ConvergenceFailure, "orbit reached the boundary before one step");
  auto rate = [&](int k) { return model_distance(f.model(), o.points[k], z0) / k; };
  DivergenceEstimate e;
  e.steps = m;
  e.rate = rate(m);
  int half = std::max(1, m / 2);
  e.diagnostic = half == m ? 0.0 : std::abs(e.rate - rate(half));
  return e;
}

int JuliaReport::total_violations() const {
  int v = 0;
  for (const auto& r : rows) v += r.violations;
  return v;
}

JuliaReport julia_invariance_check(const SelfMap& f, PlanePoint tau, const std::vector<double>& R_list,
                                   int samples, std::uint64_t seed) {
  if (samples < 1) fail(ErrorCode::InvalidParameter, "julia_invariance_check needs samples >= 1");
  SelfMap g = f.in_disk();
  PlanePoint sigma = f.model() == Model::Disk ? tau : halfplane_to_disk(tau);
  require_on_circle(sigma);
  sigma /= std::abs(sigma);
  JuliaReport rep;
  rep.tau = tau;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double R : R_list) {
    Horocycle h = make_horocycle(sigma, R);
    EuclideanDisc e = horocycle_euclidean(h);
    JuliaRow row;
    row.R = R;
    row.samples = samples;
    row.max_increase = -INFINITY;
    for (int k = 0; k < samples; ++k) {
      PlanePoint z;
      do {
        z = e.center + std::polar(e.radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
      } while (!(std::abs(z) < 1.0) || !horocycle_contains(h, z));
      PlanePoint fz = g(z);
      if (!(std::abs(fz) < 1.0)) {
        ++row.violations;
        continue;
      }
      double q0 = horocycle_quotient(sigma, z), q1 = horocycle_quotient(sigma, fz);
      if (!(q1 < R)) ++row.violations;
      row.max_increase = std::max(row.max_increase, q1 / q0 - 1.0);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

ConjugatedOrbit conjugated_orbit(const ConformalMap& m, const SelfMap& phi, PlanePoint w0, int n) {
  if (phi.model() != Model::Disk) fail(ErrorCode::InvalidParameter, "conjugated_orbit needs a disk self-map");
  PlanePoint z0 = inverse(m, w0);
  ConjugatedOrbit out;
  out.orbit = iterate(phi, z0, n);
  OrbitRecord& o = out.orbit;
  o.start = w0;
  for (size_t k = 0; k < o.points.size(); ++k) o.points[k] = k == 0 ? w0 : forward(m, o.points[k]);
  size_t tail = std::max<size_t>(1, o.points.size() / 4);
  for (size_t a = o.points.size() - tail; a < o.points.size(); ++a)
    for (size_t b = a + 1; b < o.points.size(); ++b)
      out.tail_diameter = std::max(out.tail_diameter, std::abs(o.points[a] - o.points[b]));
  out.min_boundary_distance = INFINITY;
  for (auto w : o.points) out.min_boundary_distance = std::min(out.min_boundary_distance, m.target().raw_distance(w));
  return out;
}

}  // namespace horo
