#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "horo/errors.hpp"

namespace horo {

using PlanePoint = std::complex<double>;

// The point at infinity on the Riemann sphere.
inline const PlanePoint kInfinity{std::numeric_limits<double>::infinity(), 0.0};

bool is_infinity(PlanePoint z);
bool is_finite(PlanePoint z);

// Relative tolerance for |sigma| = 1.
inline constexpr double kUnitCircleTol = 1e-12;

void require_on_circle(PlanePoint sigma);
void require_in_disk(PlanePoint z);

// Curvature -4 throughout.
double disk_density(PlanePoint z);
double halfplane_density(PlanePoint w);
double strip_density(PlanePoint z, double a, double a_prime);

double disk_distance(PlanePoint z, PlanePoint w);
double halfplane_distance(PlanePoint w1, PlanePoint w2);

struct EuclideanDisc {
  PlanePoint center;
  double radius;
  bool contains(PlanePoint z) const { return std::norm(z - center) < radius * radius; }
};

struct Horocycle {
  PlanePoint base;
  double radius_param;
};

Horocycle make_horocycle(PlanePoint base, double radius_param);
EuclideanDisc horocycle_euclidean(const Horocycle& h);
// |sigma - z|^2 / (1 - |z|^2)
double horocycle_quotient(PlanePoint sigma, PlanePoint z);
bool horocycle_contains(const Horocycle& h, PlanePoint z);
// Point of the boundary circle of E(sigma, R) at angle t around its Euclidean center.
PlanePoint horocycle_point(const Horocycle& h, double t);

double busemann_disk(PlanePoint sigma, PlanePoint z);

struct BusemannLevel {
  PlanePoint ray_base;
  PlanePoint boundary_base;
  double level;
};

// For the geodesic ray from ray_base toward boundary_base; R = e^{2M} when ray_base = 0.
Horocycle busemann_horocycle(const BusemannLevel& b);

PlanePoint cayley(PlanePoint sigma, PlanePoint z);
PlanePoint cayley_inverse(PlanePoint sigma, PlanePoint w);

// Vertices along the disk geodesic from z to w, including both endpoints.
std::vector<PlanePoint> disk_geodesic(PlanePoint z, PlanePoint w, int segments);

}  // namespace horo
