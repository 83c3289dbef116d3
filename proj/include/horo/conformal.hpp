#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horo/domain.hpp"
#include "horo/hyperbolic.hpp"

namespace horo {

namespace detail {
struct MapData;
}

struct FitOptions {
  // Boundary point sent to 1. Defaults to the first boundary point hit by the
  // ray from the anchor in the +x direction (the right end of the real
  // segment for symmetric targets).
  std::optional<PlanePoint> normalization_point;
  // Fit only the upper half and extend by reflection when the target and the
  // anchor allow it.
  bool use_symmetry = true;
  // Half-plane targets are clipped to [0, clip] x [-clip, clip].
  double halfplane_clip = 4.0;
  // Petersen channels are capped at this many channel widths.
  double channel_cap = 4.0;
  // Smallest sample spacing near a corner or tip, relative to its feature size.
  double tip_floor = 1e-4;
  // Refits that move samples toward the intervals with the largest held-out
  // error, keeping the sample count fixed.
  int refine_passes = 3;
};

struct BoundaryNode {
  PlanePoint point;
  PlanePoint preimage;
};

class ConformalMap {
 public:
  const SlitDomain& target() const;
  PlanePoint anchor() const;
  bool symmetric() const;
  int stage_count() const;
  int sample_count() const;
  // Counterclockwise on the unit circle, starting after the preimage 1.
  const std::vector<BoundaryNode>& boundary_nodes() const;
  // Largest distance from a mapped held-out boundary midpoint to the true
  // boundary, in units of the fitted region's diameter.
  double accuracy() const;
  // Vertices of the fitted boundary polygon (the clipped region for half-plane targets).
  std::vector<PlanePoint> fitted_boundary() const;
  bool in_fitted_region(PlanePoint w) const;

  std::shared_ptr<const detail::MapData> data() const { return data_; }
  explicit ConformalMap(std::shared_ptr<const detail::MapData> d) : data_(std::move(d)) {}

 private:
  std::shared_ptr<const detail::MapData> data_;
};

ConformalMap fit_map(const SlitDomain& d, int boundary_samples, PlanePoint anchor,
                     const FitOptions& options = {});

PlanePoint forward(const ConformalMap& m, PlanePoint z);
PlanePoint inverse(const ConformalMap& m, PlanePoint w);
Polyline geodesic_ray(const ConformalMap& m, PlanePoint sigma, const std::vector<double>& t_samples);
double conformal_distance(const ConformalMap& m, PlanePoint w1, PlanePoint w2);
// Image of the boundary circle of E(sigma, R); the tangency point is skipped.
Polyline pushforward_horocycle(const ConformalMap& m, const Horocycle& h, int samples);

std::string map_to_json_text(const ConformalMap& m);
ConformalMap map_from_json_text(const std::string& text);

}  // namespace horo
