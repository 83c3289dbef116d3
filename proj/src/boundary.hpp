#pragma once

#include <vector>

#include "horo/conformal.hpp"
#include "planar.hpp"
#include "zipper.hpp"

namespace horo::detail {

// The polygonal region actually handed to the zipper: the target itself, its
// upper half for symmetric fits, and a clipped box for half-plane targets.
struct FitRegion {
  bool symmetric = false;
  std::vector<AxisSegment> edges;
  // Face cycle with the region on the left; cycle[0] is sent to infinity.
  std::vector<PlanePoint> cycle;
  // Symmetric fits: the real segment (cut_lo, cut_hi) is interior to the target.
  double cut_lo = 0.0, cut_hi = 0.0;
  // End of the real segment opposite cycle[0].
  PlanePoint cut_far;
  double diameter = 0.0;
  // Cycle edge [cycle[i], cycle[i+1]) holding the normalization point, if any.
  int norm_edge = -1;
  // Boundary of the target inside the region (the real segment excluded).
  std::vector<AxisSegment> true_edges;

  double boundary_distance(PlanePoint z) const;
  double true_boundary_distance(PlanePoint z) const;
  // Open region (points on slits or edges are outside).
  bool contains(PlanePoint z) const;
};

FitRegion build_fit_region(const SlitDomain& d, PlanePoint anchor, const FitOptions& opt);

// Mirror image of a symmetric region's upper half, traversed from the right
// end of the real segment so that the segment is unzipped first.
FitRegion lower_half_region(const FitRegion& r);

// Interval between consecutive nodes, located on the cycle edge that was
// sampled for it (return edges refer to their forward twin).
struct SampleInterval {
  int edge = 0;
  dd s0, s1;
};

struct Sampling {
  std::vector<ZipNode> nodes;
  // intervals[k] joins nodes k and k + 1 (cyclically).
  std::vector<SampleInterval> intervals;
  // Node at cut_far (symmetric fits only).
  int cut_node = -1;
};

// Piecewise constant density factor along each cycle edge: value[k] applies
// up to arc length end[k].
struct EdgeWeight {
  std::vector<dd> end;
  std::vector<double> value;
  double at(dd s) const;
};

Sampling sample_boundary(const FitRegion& r, int samples, double tip_floor,
                         const std::vector<EdgeWeight>* weights = nullptr);

double segment_distance(const AxisSegment& s, PlanePoint z);

// Arc length of p from the start of cycle edge e.
dd along_edge(const FitRegion& r, int e, PlanePoint p);

}  // namespace horo::detail
