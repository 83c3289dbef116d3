#pragma once

#include <vector>

#include "dd.hpp"
#include "mp.hpp"
#include "horo/hyperbolic.hpp"

namespace horo::detail {

// Geodesic zipper between a Jordan region (boundary traversed with the region on
// the left) and the upper half-plane. Node 0 maps to infinity.
struct ZipStage {
  enum class Kind { Zip, Shift };
  Kind kind = Kind::Zip;
  dd binv;   // Re a / |a|^2
  dd c;      // |a|^2 / Im a
  dd shift;  // translation for Shift stages
};

struct ZipNode {
  PlanePoint point;
  // Index of the node whose right-hand side this node lies on (-1 for
  // nodes that get a stage of their own).
  int twin = -1;
};

class Zipper {
 public:
  // Region to upper half-plane; a real result means the point is on the boundary.
  cdd to_halfplane(cdd z) const;
  // Upper half-plane (closed) to region.
  cdd from_halfplane(cdd w) const;
  // The same maps evaluated in 50-digit arithmetic.
  cmp to_halfplane(const cmp& z) const;
  cmp from_halfplane(const cmp& w) const;

  cdd z0, z1;
  std::vector<ZipStage> stages;
  dd p;  // image of z0 before the closing map
};

struct ZipFit {
  Zipper zipper;
  // Final real parameter of every node; node 0 has none (infinity).
  std::vector<dd> params;
};

// FitDiverged when a stage leaves its admissible range.
ZipFit fit_zipper(const std::vector<ZipNode>& nodes);

}  // namespace horo::detail
