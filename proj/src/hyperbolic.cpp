#include "horo/hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace horo {

namespace {

std::string show(PlanePoint z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// 1 - |z|^2 without cancellation for |z| close to 1.
double one_minus_norm(PlanePoint z) {
  double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

}  // namespace

bool is_infinity(PlanePoint z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

bool is_finite(PlanePoint z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_on_circle(PlanePoint sigma) {
  if (!is_finite(sigma) || std::abs(std::abs(sigma) - 1.0) > kUnitCircleTol)
    fail(ErrorCode::BasePointNotOnCircle, "|sigma| != 1 for sigma = " + show(sigma));
}

void require_in_disk(PlanePoint z) {
  if (!is_finite(z) || !(std::abs(z) < 1.0))
    fail(ErrorCode::PointOutsideDomain, "point not in the unit disk: " + show(z));
}

double disk_density(PlanePoint z) {
  require_in_disk(z);
  return 1.0 / one_minus_norm(z);
}

double halfplane_density(PlanePoint w) {
  if (!is_finite(w) || !(w.real() > 0.0))
    fail(ErrorCode::PointOutsideDomain, "point not in the right half-plane: " + show(w));
  return 0.5 / w.real();
}

double strip_density(PlanePoint z, double a, double a_prime) {
  if (!(a < a_prime)) fail(ErrorCode::InvalidParameter, "strip needs a < a'");
  if (!is_finite(z) || !(a < z.imag() && z.imag() < a_prime))
    fail(ErrorCode::PointOutsideDomain, "point not in the strip: " + show(z));
  double width = a_prime - a;
  return (std::numbers::pi / (2.0 * width)) / std::sin(std::numbers::pi * (z.imag() - a) / width);
}

double disk_distance(PlanePoint z, PlanePoint w) {
  require_in_disk(z);
  require_in_disk(w);
  if (z == w) return 0.0;
  // arctanh(B/A) = 1/2 ln((A+B)^2 / (A^2 - B^2)) and A^2 - B^2 = (1-|z|^2)(1-|w|^2)
  double a = std::abs(1.0 - std::conj(z) * w);
  double b = std::abs(z - w);
  return std::log(a + b) - 0.5 * std::log(one_minus_norm(z)) - 0.5 * std::log(one_minus_norm(w));
}

double halfplane_distance(PlanePoint w1, PlanePoint w2) {
  halfplane_density(w1);
  halfplane_density(w2);
  if (w1 == w2) return 0.0;
  double a = std::abs(w1 + std::conj(w2));
  double b = std::abs(w1 - w2);
  return std::log(a + b) - 0.5 * std::log(4.0 * w1.real()) - 0.5 * std::log(w2.real());
}

Horocycle make_horocycle(PlanePoint base, double radius_param) {
  require_on_circle(base);
  if (!(radius_param > 0.0) || !std::isfinite(radius_param))
    fail(ErrorCode::InvalidParameter, "horocycle radius parameter must be positive and finite");
  return {base, radius_param};
}

EuclideanDisc horocycle_euclidean(const Horocycle& h) {
  double r = h.radius_param;
  return {h.base / (1.0 + r), r / (1.0 + r)};
}

double horocycle_quotient(PlanePoint sigma, PlanePoint z) {
  require_in_disk(z);
  return std::norm(sigma - z) / one_minus_norm(z);
}

bool horocycle_contains(const Horocycle& h, PlanePoint z) {
  return horocycle_quotient(h.base, z) < h.radius_param;
}

PlanePoint horocycle_point(const Horocycle& h, double t) {
  EuclideanDisc e = horocycle_euclidean(h);
  return e.center + e.radius * std::polar(1.0, t);
}

double busemann_disk(PlanePoint sigma, PlanePoint z) {
  require_on_circle(sigma);
  return 0.5 * std::log(horocycle_quotient(sigma, z));
}

Horocycle busemann_horocycle(const BusemannLevel& b) {
  require_on_circle(b.boundary_base);
  double offset = horocycle_quotient(b.boundary_base, b.ray_base);
  return make_horocycle(b.boundary_base, std::exp(2.0 * b.level) * offset);
}

PlanePoint cayley(PlanePoint sigma, PlanePoint z) {
  require_on_circle(sigma);
  if (z == sigma) fail(ErrorCode::SingularPoint, "Cayley transform evaluated at its pole");
  return (sigma + z) / (sigma - z);
}

PlanePoint cayley_inverse(PlanePoint sigma, PlanePoint w) {
  require_on_circle(sigma);
  if (is_infinity(w)) return sigma;
  if (w == -1.0) fail(ErrorCode::SingularPoint, "inverse Cayley transform evaluated at -1");
  return sigma * (w - 1.0) / (w + 1.0);
}

std::vector<PlanePoint> disk_geodesic(PlanePoint z, PlanePoint w, int segments) {
  require_in_disk(z);
  require_in_disk(w);
  if (segments < 1) fail(ErrorCode::InvalidParameter, "geodesic needs at least one segment");
  PlanePoint u = (w - z) / (1.0 - std::conj(z) * w);
  std::vector<PlanePoint> pts;
  pts.reserve(segments + 1);
  pts.push_back(z);
  for (int k = 1; k < segments; ++k) {
    PlanePoint v = u * (double(k) / segments);
    pts.push_back((v + z) / (1.0 + std::conj(z) * v));
  }
  pts.push_back(w);
  return pts;
}

}  // namespace horo
