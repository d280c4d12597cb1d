// path.cpp - Depth-first enumeration of simple paths in name order.

#include "dncstream/path.hpp"

#include <algorithm>

namespace dncstream::net {

std::string path_problem(const Topology& topo, const Path& path) {
  if (path.edges.empty()) {
    return "path has no edges";
  }
  if (path.nodes.size() != path.edges.size() + 1) {
    return "path node/edge counts disagree";
  }
  std::vector<NodeId> seen = path.nodes;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    return "path repeats a node";
  }
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const EdgeId e = path.edges[i];
    if (e >= topo.edge_slots() || !topo.edge(e).alive) {
      return "path uses an unknown edge";
    }
    const Edge& edge = topo.edge(e);
    if (!edge.touches(path.nodes[i]) || edge.other(path.nodes[i]) != path.nodes[i + 1]) {
      return "consecutive path edges do not share a node";
    }
  }
  return {};
}

std::string describe(const Topology& topo, const Path& path) {
  std::string out;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    if (i) {
      out += '>';
    }
    out += topo.node(path.nodes[i]).name;
  }
  return out;
}

namespace {

struct Enumerator {
  const Topology& topo;
  NodeId dst;
  std::size_t max_hops;
  std::vector<char> on_path;
  Path current;
  std::vector<Path> out;

  void visit(NodeId n) {
    if (n == dst) {
      out.push_back(current);
      return;
    }
    if (current.edges.size() == max_hops) {
      return;
    }
    // Neighbours in name order, so completed paths come out lexicographically sorted.
    std::vector<std::pair<const std::string*, EdgeId>> next;
    for (EdgeId e : topo.incident(n)) {
      const NodeId m = topo.edge(e).other(n);
      if (on_path[m]) {
        continue;
      }
      if (m != dst && topo.node(m).role == NodeRole::host) {
        continue;
      }
      next.emplace_back(&topo.node(m).name, e);
    }
    std::sort(next.begin(), next.end(), [](const auto& x, const auto& y) { return *x.first < *y.first; });
    for (const auto& [name, e] : next) {
      const NodeId m = topo.edge(e).other(n);
      on_path[m] = 1;
      current.nodes.push_back(m);
      current.edges.push_back(e);
      visit(m);
      current.edges.pop_back();
      current.nodes.pop_back();
      on_path[m] = 0;
    }
  }
};

}  // namespace

std::vector<Path> enumerate_paths(const Topology& topo, NodeId src, NodeId dst, std::size_t max_hops) {
  if (src == dst || max_hops == 0) {
    return {};
  }
  Enumerator en{topo, dst, max_hops, std::vector<char>(topo.node_slots(), 0), {}, {}};
  en.on_path[src] = 1;
  en.current.nodes.push_back(src);
  en.visit(src);
  return std::move(en.out);
}

Path shortest_path(const Topology& topo, NodeId src, NodeId dst, std::size_t max_hops) {
  auto paths = enumerate_paths(topo, src, dst, max_hops);
  auto best = std::min_element(paths.begin(), paths.end(),
                               [](const Path& x, const Path& y) { return x.hops() < y.hops(); });
  return best == paths.end() ? Path{} : std::move(*best);
}

}  // namespace dncstream::net
