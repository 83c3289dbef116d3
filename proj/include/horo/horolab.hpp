#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horo/conformal.hpp"

namespace horo {

enum class ClusterKind { Unrestricted, Nontangential, Horospheric };
std::string_view cluster_kind_name(ClusterKind k);

struct ApproachParams {
  // Horodisc E(sigma, R).
  double R = 1.0;
  // Stolz region |sigma - z| <= aperture (1 - |z|); needs aperture > 1.
  double aperture = 2.0;
  // Points per arc; odd counts include the radius.
  int arc_samples = 33;
};

inline constexpr int kMaxClusterLevel = 8;

struct Witness {
  int level = 0;
  PlanePoint point;
};

// Evaluates a map from the disk; closed-form maps can stand in for a fitted one.
using DiskMap = std::function<PlanePoint(PlanePoint)>;

struct ClusterEstimate {
  ClusterKind kind = ClusterKind::Unrestricted;
  PlanePoint base;
  ApproachParams params;
  int levels = 0;
  // Images of the sample points on |z - sigma| = 10^-level inside the approach region.
  std::vector<Witness> witnesses;
  // Diameter of each level's witnesses, level 1 first.
  std::vector<double> level_diameters;
  // Diameter over the deepest two levels.
  double diameter = 0.0;
  // Chordal distances are used for unbounded targets.
  bool chordal = false;
  // Truncation of the target, and "suggestive" for Petersen targets ("truncated" otherwise).
  std::optional<int> truncation;
  std::string evidence = "truncated";
};

// Witnesses of the cluster set at sigma: each level samples the arc |z - sigma| = 10^-level
// inside the approach region, and the samples of narrower regions are included in wider ones
// so diameters nest exactly.
ClusterEstimate cluster_set(const ConformalMap& m, PlanePoint sigma, ClusterKind kind, const ApproachParams& params,
                            int levels);
ClusterEstimate cluster_set(const DiskMap& h, PlanePoint sigma, ClusterKind kind, const ApproachParams& params,
                            int levels, bool chordal = false);

// Distance used for witnesses: Euclidean, or chordal 2|a - b| / sqrt((1 + |a|^2)(1 + |b|^2)).
double witness_distance(PlanePoint a, PlanePoint b, bool chordal);

struct HLimitResult {
  bool exists = false;
  // Centroid of the deepest witnesses when the limit exists.
  PlanePoint point;
  // Farthest witness pair (separated by at least tol when the test fails).
  PlanePoint witness_a, witness_b;
  double diameter = 0.0;
  double diameter_4R = 0.0;
  // Hausdorff distance between the deepest witness sets for R and 4R.
  double r_discrepancy = 0.0;
  bool r_agreement = false;
  std::optional<int> truncation;
  std::string evidence = "truncated";
};

HLimitResult h_limit_test(const ConformalMap& m, PlanePoint sigma, double R, double tol, int levels = 6);
HLimitResult h_limit_test(const DiskMap& h, PlanePoint sigma, double R, double tol, int levels = 6,
                          bool chordal = false);

struct ContactEstimate {
  // Images of points of the boundary circle of E(sigma, e^{2M}) at distance
  // 10^-level from sigma, approached from both sides; deepest two levels.
  std::vector<PlanePoint> witnesses;
  double diameter = 0.0;
  std::optional<int> truncation;
  std::string evidence = "truncated";
};

ContactEstimate busemann_horosphere_contact(const ConformalMap& m, PlanePoint sigma, double M, int arc_samples,
                                            int levels = 6);
ContactEstimate busemann_horosphere_contact(const DiskMap& h, PlanePoint sigma, double M, int arc_samples,
                                            int levels = 6, bool chordal = false);

}  // namespace horo
