#pragma once

#include <vector>

#include "horo/hyperbolic.hpp"

namespace horo::detail {

// Finite axis-parallel segment.
struct AxisSegment {
  PlanePoint a, b;
};

struct PlanarGraph {
  std::vector<PlanePoint> nodes;
  std::vector<std::vector<int>> adj;
  int edge_count = 0;
  int find(PlanePoint p) const;  // -1 if absent
};

// Merges collinear overlaps and splits every segment at all contacts and at
// any of the extra split points lying on it.
PlanarGraph build_planar_graph(const std::vector<AxisSegment>& segments,
                               const std::vector<PlanePoint>& split_at = {});

int component_count(const PlanarGraph& g);

// Boundary walk of the face lying to the left of the directed edge from -> to,
// turning as far left as possible at every node. Returns the node cycle starting at `from`.
std::vector<int> trace_left_face(const PlanarGraph& g, int from, int to);

}  // namespace horo::detail
