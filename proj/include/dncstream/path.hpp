// path.hpp - Simple paths between hosts and their enumeration.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dncstream/topology.hpp"

namespace dncstream::net {

// nodes.size() == edges.size() + 1; edges[i] joins nodes[i] and nodes[i + 1].
struct Path {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  std::size_t hops() const { return edges.size(); }
  bool empty() const { return edges.empty(); }

  friend bool operator==(const Path&, const Path&) = default;
};

// Empty string when the path is simple, connected, and well-formed in `topo`; otherwise a description.
std::string path_problem(const Topology& topo, const Path& path);

// Node names joined with '>' (used in logs and CSV output).
std::string describe(const Topology& topo, const Path& path);

// All simple paths src -> dst with at most max_hops edges, ordered lexicographically by the
// sequence of node names. Only the endpoints may be hosts.
std::vector<Path> enumerate_paths(const Topology& topo, NodeId src, NodeId dst, std::size_t max_hops);

// Fewest-hop path among enumerate_paths (first in enumeration order on ties); empty if none.
Path shortest_path(const Topology& topo, NodeId src, NodeId dst, std::size_t max_hops);

}  // namespace dncstream::net
