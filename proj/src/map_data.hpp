#pragma once

#include "boundary.hpp"
#include "horo/conformal.hpp"
#include "zipper.hpp"

namespace horo::detail {

struct MapData {
  SlitDomain target;
  PlanePoint anchor;
  FitOptions options;
  int samples = 0;
  FitRegion region;
  Zipper zipper;
  bool symmetric = false;
  // Evaluate the zipper in 50-digit arithmetic.
  bool extended = false;
  // Symmetric fits work on the mirrored upper half (see lower_half_region):
  // raw params of the left end of the real segment and of the anchor.
  dd ta, tr;
  // General fits: the anchor's half-plane image xa + i ya.
  dd xa, ya;
  // Final disk rotation bringing the normalization point to 1.
  PlanePoint rot{1.0, 0.0};
  std::vector<BoundaryNode> nodes;
  double accuracy = 0.0;
};

cdd to_halfplane(const MapData& m, cdd z);
cdd from_halfplane(const MapData& m, cdd s);
// Anchor parameters and the evaluation precision.
void normalize(MapData& m, PlanePoint anchor, dd t_cut);
// Zipper coordinate <-> right half-plane coordinate q (anchor at 1). For
// symmetric fits the zipper coordinate belongs to the mirrored point.
cdd q_from_halfplane(const MapData& m, cdd s);
cdd halfplane_from_q(const MapData& m, cdd q);
// Fills nodes and accuracy from the zipper parameters and returns the
// held-out error of every sample interval.
std::vector<double> finish_map(MapData& m, const std::vector<ZipNode>& nodes, const std::vector<dd>& params,
                               int cut_node);
// Rotation sending the normalization point's preimage to 1 (general fits).
void apply_normalization(MapData& m, const FitRegion& r, const Sampling& smp, const std::vector<dd>& params);
// Density factors for the next pass: the old factor times a power of the
// interval error relative to the median.
std::vector<EdgeWeight> refined_weights(const FitRegion& r, const Sampling& smp, const std::vector<double>& err,
                                        const std::vector<EdgeWeight>& old);

}  // namespace horo::detail
