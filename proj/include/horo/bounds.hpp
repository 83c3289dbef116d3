#pragma once

#include <functional>
#include <optional>

#include "horo/domain.hpp"

namespace horo {

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

// Quasi-hyperbolic length Q of the polyline, certified; lower = Q/4, upper = Q.
BoundPair curve_length_bounds(const SlitDomain& d, const Polyline& c, int panels = 1);

struct GridSpec {
  double spacing = 1.0 / 32.0;
  // Number of halvings tried; the result is the best over all of them.
  int levels = 1;
  std::optional<Rect> box;
};

struct GridPath {
  double upper = 0.0;
  Polyline path;
  int level = 0;
};

GridPath distance_upper_path(const SlitDomain& d, PlanePoint z, PlanePoint w, const GridSpec& grid);
double distance_upper(const SlitDomain& d, PlanePoint z, PlanePoint w, const GridSpec& grid);

// Quarter of the distance-ratio metric ln(1 + |z-w| / min(dist)), a lower bound in any simply connected domain.
double distance_lower(const SlitDomain& d, PlanePoint z, PlanePoint w);

struct FiberBound {
  enum class Kind { Constant, Anchored, Custom };
  Kind kind = Kind::Constant;
  double width = 0.0;
  // Anchored fibers are sqrt((t - anchor)^2 + y^2) with y = exp(log_y).
  double anchor = 0.0;
  double log_y = 0.0;
  std::function<double(double)> fn;

  double operator()(double t) const;
};

FiberBound constant_fiber(double width);
FiberBound anchored_fiber(double anchor, double log_y);
FiberBound custom_fiber(std::function<double(double)> fn);
// Channel between consecutive comb teeth: half-width eps_n.
FiberBound comb_strip_fiber(const SequenceRule& rule, int n);
// Gap of the petersen slit pair at x_j.
FiberBound petersen_gap_fiber(int j);

// 1/4 * integral over [x0, x1] of dt / fiber(t).
double corridor_lower_bound(const SlitDomain& d, double x0, double x1, const FiberBound& fiber);

// Upper bound for leaving a channel of half-width epsilon at offset theta from its
// midline: h / (eps - |theta|) + asinh(r0 / (eps - |theta|)).
double channel_escape_upper(double h, double epsilon, double theta, double r0);

}  // namespace horo
