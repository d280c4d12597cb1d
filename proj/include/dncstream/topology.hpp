// topology.hpp - Undirected forwarding graph of hosts and switches.
//
// Node and edge ids are dense indices that stay stable while the graph grows. Clients are
// attached as a host plus a last-mile edge and detached again when they leave; detaching
// the most recently attached client restores the graph exactly.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dncstream::net {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class NodeRole { host, switch_node };

struct Node {
  std::string name;
  NodeRole role = NodeRole::switch_node;
  bool alive = true;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double capacity = 0.0;  // bits/s
  double delay = 0.0;     // s
  bool alive = true;

  NodeId other(NodeId n) const { return n == a ? b : a; }
  bool touches(NodeId n) const { return n == a || n == b; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Topology {
 public:
  NodeId add_node(std::string name, NodeRole role);
  EdgeId add_edge(NodeId a, NodeId b, double capacity, double delay);
  void set_server(NodeId host);
  void mark_access(NodeId sw);

  // Adds a host with a single edge to access_switch. Throws ValidationError if the switch is unknown.
  NodeId attach_client(const std::string& name, NodeId access_switch, double capacity, double delay);
  NodeId attach_client(const std::string& name, std::string_view access_switch, double capacity, double delay);
  void detach_client(NodeId host);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  const std::vector<EdgeId>& incident(NodeId id) const { return adjacency_.at(id); }
  std::size_t node_slots() const { return nodes_.size(); }
  std::size_t edge_slots() const { return edges_.size(); }
  std::size_t node_count() const;
  std::size_t edge_count() const;
  std::size_t switch_count() const;

  bool has_node(std::string_view name) const;
  NodeId find(std::string_view name) const;  // throws ValidationError when absent
  bool has_server() const { return has_server_; }
  NodeId server() const;
  const std::vector<NodeId>& access_switches() const { return access_; }

  // Human-readable descriptions of every violated structural invariant. Empty when valid.
  std::vector<std::string> check_invariants() const;
  // Throws ValidationError naming the first violated invariant.
  void validate() const;

  friend bool operator==(const Topology& x, const Topology& y) {
    return x.nodes_ == y.nodes_ && x.edges_ == y.edges_ && x.adjacency_ == y.adjacency_ &&
           x.access_ == y.access_ && x.has_server_ == y.has_server_ && x.server_ == y.server_;
  }

 private:
  void trim_dead_tail();

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<NodeId> access_;
  NodeId server_ = 0;
  bool has_server_ = false;
  int server_declarations_ = 0;
};

// Topology document: '#' comments, whitespace-separated fields.
//   node <id> host|switch
//   edge <idA> <idB> <capacity_mbps> <delay_ms>
//   server <id>
//   access <id>
// Parse errors carry the line number. parse_topology only checks syntax and references so that
// callers can report every structural violation; the load_* functions also validate().
Topology parse_topology(std::istream& in, const std::string& source_name);
Topology load_topology(std::string_view text, const std::string& source_name = "<string>");
Topology load_topology_file(const std::string& path);

}  // namespace dncstream::net
