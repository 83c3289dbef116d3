#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horo/conformal.hpp"
#include "horo/hyperbolic.hpp"

namespace horo {

// Unit disk, or the right half-plane Re w > 0.
enum class Model { Disk, HalfPlane };

std::string_view model_name(Model m);

// Disk maps: z -> (a z + b) / (conj(b) z + conj(a)) with |a|^2 - |b|^2 = 1.
// Half-plane maps: w -> (alpha w + i beta) / (-i gamma w + delta) with real
// coefficients and alpha delta - beta gamma = 1 (the real Moebius group acting
// on the right half-plane through w = i u).
struct MobiusSelfMap {
  Model model = Model::Disk;
  PlanePoint a{1.0, 0.0};
  PlanePoint b{0.0, 0.0};
  double alpha = 1.0, beta = 0.0, gamma = 0.0, delta = 1.0;

  PlanePoint operator()(PlanePoint z) const;
  // a + conj(a), or alpha + delta.
  double trace() const;
};

// Both constructors rescale the coefficients to unit determinant.
MobiusSelfMap disk_mobius(PlanePoint a, PlanePoint b);
MobiusSelfMap halfplane_mobius(double alpha, double beta, double gamma, double delta);
// Conjugate of a half-plane map by the Cayley transform z -> (1 + z) / (1 - z).
MobiusSelfMap to_disk_model(const MobiusSelfMap& m);

enum class MobiusClass { Elliptic, Parabolic, HyperbolicAutomorphism };
std::string_view class_name(MobiusClass c);

inline constexpr double kParabolicTraceTol = 1e-10;

struct Classification {
  MobiusClass kind = MobiusClass::Elliptic;
  double trace = 2.0;
  // Boundary fixed points (attracting first for hyperbolic maps), or the
  // interior fixed point of an elliptic map. Half-plane maps may report kInfinity.
  std::vector<PlanePoint> fixed_points;
  // Derivative of the inverse at the attracting fixed point; 1 unless hyperbolic.
  double multiplier = 1.0;
};

// The identity is classified elliptic with fixed point 0 (or 1 in the half-plane).
Classification classify(const MobiusSelfMap& m);

struct BlaschkeProduct {
  PlanePoint unimodular{1.0, 0.0};
  std::vector<PlanePoint> zeros;
};

// A holomorphic self-map of the disk or the half-plane. Custom evaluators are
// trusted to map the model domain into itself; iteration enforces it.
class SelfMap {
 public:
  SelfMap(const MobiusSelfMap& m);
  SelfMap(const BlaschkeProduct& b);
  SelfMap(Model model, std::function<PlanePoint(PlanePoint)> eval, std::string name = "custom");

  Model model() const { return model_; }
  const std::string& name() const { return name_; }
  const std::optional<MobiusSelfMap>& mobius() const { return mobius_; }
  const std::optional<BlaschkeProduct>& blaschke() const { return blaschke_; }
  PlanePoint operator()(PlanePoint z) const { return eval_(z); }

  // Same map viewed in the disk; half-plane maps are conjugated by the Cayley transform.
  SelfMap in_disk() const;

 private:
  Model model_;
  std::function<PlanePoint(PlanePoint)> eval_;
  std::string name_;
  std::optional<MobiusSelfMap> mobius_;
  std::optional<BlaschkeProduct> blaschke_;
};

BlaschkeProduct make_blaschke(PlanePoint unimodular, std::vector<PlanePoint> zeros);

// Iterates further outside the model domain than this raise SelfMapViolation.
inline constexpr double kSelfMapSlack = 1e-12;

struct OrbitRecord {
  PlanePoint start;
  std::vector<PlanePoint> points;
  // step_distances[k] is the hyperbolic distance from points[k] to its image.
  std::vector<double> step_distances;
  std::string hint;
  // The orbit hit the model boundary at double resolution and was cut short.
  bool reached_boundary = false;
};

OrbitRecord iterate(const SelfMap& f, PlanePoint z0, int n);

// Model distance (curvature -4).
double model_distance(Model m, PlanePoint z, PlanePoint w);
bool in_model(Model m, PlanePoint z);

struct DenjoyWolffOptions {
  int budget = 100000;
  // Defaults: 1e-4 for parabolic automorphisms, 1e-8 otherwise.
  std::optional<double> tolerance;
  // Defaults to {0, 0.3i, -0.5} in the disk and {1, 1 + i, 0.5 - 2i} in the half-plane.
  std::vector<PlanePoint> starts;
};

struct DenjoyWolffResult {
  // False when an interior fixed point was found (no Denjoy-Wolff point).
  bool on_boundary = true;
  // tau in the map's model (kInfinity possible), or the interior fixed point.
  PlanePoint point;
  // The same point in disk coordinates.
  PlanePoint disk_point;
  std::vector<PlanePoint> estimates;
  // Largest disk-coordinate distance between per-start estimates.
  double spread = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
};

inline constexpr double kDenjoyWolffAgreement = 1e-6;

DenjoyWolffResult denjoy_wolff_point(const SelfMap& f, const DenjoyWolffOptions& options = {});

struct DivergenceEstimate {
  // k(f^n(z0), z0) / n
  double rate = 0.0;
  // |rate(n) - rate(n/2)|
  double diagnostic = 0.0;
  // n, or fewer when the orbit reached the boundary.
  int steps = 0;
};

DivergenceEstimate divergence_rate(const SelfMap& f, PlanePoint z0, int n);

struct JuliaRow {
  double R = 0.0;
  int samples = 0;
  int violations = 0;
  // max over samples of q(f(z)) / q(z) - 1 with q the horocycle quotient at tau
  double max_increase = 0.0;
};

struct JuliaReport {
  PlanePoint tau;
  std::vector<JuliaRow> rows;
  int total_violations() const;
};

// Samples are uniform in each horodisc, from a seeded generator.
JuliaReport julia_invariance_check(const SelfMap& f, PlanePoint tau, const std::vector<double>& R_list,
                                   int samples, std::uint64_t seed = 0);

struct ConjugatedOrbit {
  OrbitRecord orbit;
  // Euclidean diameter of the last quarter of the orbit.
  double tail_diameter = 0.0;
  // Smallest boundary distance along the orbit.
  double min_boundary_distance = 0.0;
};

// Orbit of forward o phi o inverse starting at w0; phi must be a disk map.
ConjugatedOrbit conjugated_orbit(const ConformalMap& m, const SelfMap& phi, PlanePoint w0, int n);

SelfMap selfmap_from_json_text(const std::string& text);
std::string selfmap_to_json_text(const SelfMap& f);
SelfMap load_selfmap(const std::string& path);

}  // namespace horo
