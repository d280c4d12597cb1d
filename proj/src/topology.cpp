// topology.cpp - Graph storage, client attachment and the topology document parser.

#include "dncstream/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace dncstream::net {

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

NodeId Topology::add_node(std::string name, NodeRole role) {
  if (name.empty()) {
    throw ValidationError("node id must be nonempty");
  }
  if (by_name_.contains(name)) {
    throw ValidationError("duplicate node id '" + name + "'");
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  by_name_.emplace(name, id);
  nodes_.push_back(Node{std::move(name), role, true});
  adjacency_.emplace_back();
  return id;
}

EdgeId Topology::add_edge(NodeId a, NodeId b, double capacity, double delay) {
  if (a >= nodes_.size() || b >= nodes_.size() || !nodes_[a].alive || !nodes_[b].alive) {
    throw ValidationError("edge references an unknown node");
  }
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw ValidationError("edge " + nodes_[a].name + "-" + nodes_[b].name + ": capacity must be > 0");
  }
  if (!(delay >= 0.0) || !std::isfinite(delay)) {
    throw ValidationError("edge " + nodes_[a].name + "-" + nodes_[b].name + ": delay must be >= 0");
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{a, b, capacity, delay, true});
  adjacency_[a].push_back(id);
  if (b != a) {
    adjacency_[b].push_back(id);
  }
  return id;
}

void Topology::set_server(NodeId host) {
  ++server_declarations_;
  server_ = host;
  has_server_ = true;
}

void Topology::mark_access(NodeId sw) {
  if (std::find(access_.begin(), access_.end(), sw) == access_.end()) {
    access_.push_back(sw);
  }
}

NodeId Topology::attach_client(const std::string& name, NodeId access_switch, double capacity, double delay) {
  if (access_switch >= nodes_.size() || !nodes_[access_switch].alive) {
    throw ValidationError("unknown access switch");
  }
  if (nodes_[access_switch].role != NodeRole::switch_node) {
    throw ValidationError("clients attach to switches, '" + nodes_[access_switch].name + "' is a host");
  }
  const NodeId host = add_node(name, NodeRole::host);
  add_edge(host, access_switch, capacity, delay);
  return host;
}

NodeId Topology::attach_client(const std::string& name, std::string_view access_switch, double capacity,
                               double delay) {
  return attach_client(name, find(access_switch), capacity, delay);
}

void Topology::detach_client(NodeId host) {
  if (host >= nodes_.size() || !nodes_[host].alive || nodes_[host].role != NodeRole::host) {
    throw ValidationError("detach of an unknown client host");
  }
  if (has_server_ && host == server_) {
    throw ValidationError("the server cannot be detached");
  }
  for (EdgeId e : adjacency_[host]) {
    Edge& edge = edges_[e];
    auto& other = adjacency_[edge.other(host)];
    other.erase(std::remove(other.begin(), other.end(), e), other.end());
    edge.alive = false;
  }
  adjacency_[host].clear();
  nodes_[host].alive = false;
  by_name_.erase(nodes_[host].name);
  trim_dead_tail();
}

void Topology::trim_dead_tail() {
  while (!edges_.empty() && !edges_.back().alive) {
    edges_.pop_back();
  }
  while (!nodes_.empty() && !nodes_.back().alive) {
    nodes_.pop_back();
    adjacency_.pop_back();
  }
}

std::size_t Topology::node_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.alive; }));
}

std::size_t Topology::edge_count() const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.alive; }));
}

std::size_t Topology::switch_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return n.alive && n.role == NodeRole::switch_node;
  }));
}

bool Topology::has_node(std::string_view name) const { return by_name_.contains(std::string(name)); }

NodeId Topology::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) {
    throw ValidationError("unknown node '" + std::string(name) + "'");
  }
  return it->second;
}

NodeId Topology::server() const {
  if (!has_server_) {
    throw ValidationError("topology has no server");
  }
  return server_;
}

std::vector<std::string> Topology::check_invariants() const {
  std::vector<std::string> problems;

  if (server_declarations_ == 0) {
    problems.emplace_back("exactly one server: none declared");
  } else if (server_declarations_ > 1) {
    problems.emplace_back("exactly one server: " + std::to_string(server_declarations_) + " declared");
  }
  if (has_server_ && nodes_[server_].role != NodeRole::host) {
    problems.emplace_back("server '" + nodes_[server_].name + "' must be a host");
  }

  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& e : edges_) {
    if (!e.alive) {
      continue;
    }
    if (e.a == e.b) {
      problems.emplace_back("self-loop on '" + nodes_[e.a].name + "'");
      continue;
    }
    const auto key = std::minmax(e.a, e.b);
    if (!pairs.insert(key).second) {
      problems.emplace_back("duplicate edge " + nodes_[key.first].name + "-" + nodes_[key.second].name);
    }
  }

  for (NodeId n = 0; n < nodes_.size(); ++n) {
    const Node& node = nodes_[n];
    if (!node.alive || node.role != NodeRole::host) {
      continue;
    }
    const auto& inc = adjacency_[n];
    if (inc.size() != 1) {
      problems.emplace_back("host '" + node.name + "' must attach to exactly one switch (has " +
                            std::to_string(inc.size()) + " links)");
    } else if (nodes_[edges_[inc.front()].other(n)].role != NodeRole::switch_node) {
      problems.emplace_back("host '" + node.name + "' is linked to another host");
    }
  }

  for (NodeId a : access_) {
    if (nodes_[a].role != NodeRole::switch_node) {
      problems.emplace_back("access point '" + nodes_[a].name + "' must be a switch");
    }
  }

  // Connectivity over live nodes.
  NodeId start = 0;
  while (start < nodes_.size() && !nodes_[start].alive) {
    ++start;
  }
  if (start < nodes_.size()) {
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<NodeId> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      for (EdgeId e : adjacency_[n]) {
        NodeId m = edges_[e].other(n);
        if (!seen[m]) {
          seen[m] = 1;
          stack.push_back(m);
        }
      }
    }
    for (NodeId n = 0; n < nodes_.size(); ++n) {
      if (nodes_[n].alive && !seen[n]) {
        problems.emplace_back("graph is disconnected: '" + nodes_[n].name + "' unreachable from '" +
                              nodes_[start].name + "'");
        break;
      }
    }
  }
  return problems;
}

void Topology::validate() const {
  auto problems = check_invariants();
  if (!problems.empty()) {
    throw ValidationError(problems.front());
  }
}

namespace {

double parse_decimal(const std::string& token, const std::string& source, int line, const char* what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(source, line, std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

}  // namespace

Topology parse_topology(std::istream& in, const std::string& source_name) {
  Topology topo;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) {
      tok.push_back(std::move(t));
    }
    if (tok.empty()) {
      continue;
    }
    auto expect = [&](std::size_t n) {
      if (tok.size() != n) {
        throw ParseError(source_name, line_no,
                         "'" + tok[0] + "' expects " + std::to_string(n - 1) + " fields, got " +
                             std::to_string(tok.size() - 1));
      }
    };
    auto lookup = [&](const std::string& name) {
      if (!topo.has_node(name)) {
        throw ParseError(source_name, line_no, "unknown node '" + name + "'");
      }
      return topo.find(name);
    };
    try {
      if (tok[0] == "node") {
        expect(3);
        NodeRole role;
        if (tok[2] == "host") {
          role = NodeRole::host;
        } else if (tok[2] == "switch") {
          role = NodeRole::switch_node;
        } else {
          throw ParseError(source_name, line_no, "node role must be host or switch, got '" + tok[2] + "'");
        }
        topo.add_node(tok[1], role);
      } else if (tok[0] == "edge") {
        expect(5);
        const NodeId a = lookup(tok[1]);
        const NodeId b = lookup(tok[2]);
        const double mbps = parse_decimal(tok[3], source_name, line_no, "capacity");
        const double ms = parse_decimal(tok[4], source_name, line_no, "delay");
        topo.add_edge(a, b, mbps * 1e6, ms * 1e-3);
      } else if (tok[0] == "server") {
        expect(2);
        topo.set_server(lookup(tok[1]));
      } else if (tok[0] == "access") {
        expect(2);
        topo.mark_access(lookup(tok[1]));
      } else {
        throw ParseError(source_name, line_no, "unknown directive '" + tok[0] + "'");
      }
    } catch (const ValidationError& e) {
      throw ParseError(source_name, line_no, e.what());
    }
  }
  return topo;
}

Topology load_topology(std::string_view text, const std::string& source_name) {
  std::istringstream in{std::string(text)};
  Topology topo = parse_topology(in, source_name);
  topo.validate();
  return topo;
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open topology file '" + path + "'");
  }
  Topology topo = parse_topology(in, path);
  try {
    topo.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return topo;
}

}  // namespace dncstream::net
