#include "planar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

namespace horo::detail {

namespace {

struct Interval {
  double lo, hi;
};

using Key = std::pair<double, double>;

Key key_of(PlanePoint p) { return {p.real(), p.imag()}; }

// Groups collinear segments by their fixed coordinate and merges overlapping ranges.
std::map<double, std::vector<Interval>> merge_lines(std::map<double, std::vector<Interval>> lines) {
  for (auto& [c, iv] : lines) {
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& i : iv) {
      if (!merged.empty() && i.lo <= merged.back().hi)
        merged.back().hi = std::max(merged.back().hi, i.hi);
      else
        merged.push_back(i);
    }
    iv = std::move(merged);
  }
  return lines;
}

}  // namespace

int PlanarGraph::find(PlanePoint p) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == p) return int(i);
  return -1;
}

PlanarGraph build_planar_graph(const std::vector<AxisSegment>& segments,
                               const std::vector<PlanePoint>& split_at) {
  std::map<double, std::vector<Interval>> horiz, vert;
  for (const auto& s : segments) {
    if (s.a == s.b) continue;
    if (s.a.imag() == s.b.imag()) {
      horiz[s.a.imag()].push_back({std::min(s.a.real(), s.b.real()), std::max(s.a.real(), s.b.real())});
    } else {
      vert[s.a.real()].push_back({std::min(s.a.imag(), s.b.imag()), std::max(s.a.imag(), s.b.imag())});
    }
  }
  horiz = merge_lines(std::move(horiz));
  vert = merge_lines(std::move(vert));

  struct Line {
    bool vertical;
    double c;
    Interval iv;
    std::vector<double> cuts;
  };
  std::vector<Line> lines;
  for (auto& [y, ivs] : horiz)
    for (auto& iv : ivs) lines.push_back({false, y, iv, {iv.lo, iv.hi}});
  for (auto& [x, ivs] : vert)
    for (auto& iv : ivs) lines.push_back({true, x, iv, {iv.lo, iv.hi}});

  for (auto& h : lines) {
    if (h.vertical) continue;
    for (auto& v : lines) {
      if (!v.vertical) continue;
      if (v.c >= h.iv.lo && v.c <= h.iv.hi && h.c >= v.iv.lo && h.c <= v.iv.hi) {
        h.cuts.push_back(v.c);
        v.cuts.push_back(h.c);
      }
    }
  }

  for (auto& l : lines) {
    for (PlanePoint p : split_at) {
      double along = l.vertical ? p.imag() : p.real();
      double across = l.vertical ? p.real() : p.imag();
      if (across == l.c && along > l.iv.lo && along < l.iv.hi) l.cuts.push_back(along);
    }
  }

  PlanarGraph g;
  std::map<Key, int> index;
  auto node = [&](PlanePoint p) {
    auto [it, inserted] = index.emplace(key_of(p), int(g.nodes.size()));
    if (inserted) {
      g.nodes.push_back(p);
      g.adj.emplace_back();
    }
    return it->second;
  };
  for (auto& l : lines) {
    std::sort(l.cuts.begin(), l.cuts.end());
    l.cuts.erase(std::unique(l.cuts.begin(), l.cuts.end()), l.cuts.end());
    for (size_t k = 0; k + 1 < l.cuts.size(); ++k) {
      PlanePoint p = l.vertical ? PlanePoint(l.c, l.cuts[k]) : PlanePoint(l.cuts[k], l.c);
      PlanePoint q = l.vertical ? PlanePoint(l.c, l.cuts[k + 1]) : PlanePoint(l.cuts[k + 1], l.c);
      int i = node(p), j = node(q);
      g.adj[i].push_back(j);
      g.adj[j].push_back(i);
      ++g.edge_count;
    }
  }
  return g;
}

int component_count(const PlanarGraph& g) {
  std::vector<int> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  int count = int(g.nodes.size());
  for (size_t i = 0; i < g.adj.size(); ++i)
    for (int j : g.adj[i]) {
      int a = root(int(i)), b = root(j);
      if (a != b) {
        parent[a] = b;
        --count;
      }
    }
  return count;
}

std::vector<int> trace_left_face(const PlanarGraph& g, int from, int to) {
  std::vector<int> cycle{from};
  int u = from, v = to;
  const size_t limit = 4 * size_t(g.edge_count) + 8;
  while (cycle.size() <= limit) {
    cycle.push_back(v);
    PlanePoint in = g.nodes[v] - g.nodes[u];
    in /= std::abs(in);
    int best = -1;
    double best_turn = -10.0;
    for (int w : g.adj[v]) {
      if (w == u && g.adj[v].size() > 1) continue;
      PlanePoint out = g.nodes[w] - g.nodes[v];
      out /= std::abs(out);
      double turn = std::atan2(in.real() * out.imag() - in.imag() * out.real(),
                               in.real() * out.real() + in.imag() * out.imag());
      if (w == u) turn = -M_PI;  // dead end: forced U-turn
      if (turn > best_turn) {
        best_turn = turn;
        best = w;
      }
    }
    u = v;
    v = best;
    if (u == from && v == to) {
      cycle.pop_back();
      return cycle;
    }
  }
  return {};
}

}  // namespace horo::detail
