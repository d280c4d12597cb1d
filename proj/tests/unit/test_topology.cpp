#include <sstream>
#include <string>

#include "doctest.h"
#include "dncstream/topology.hpp"

using namespace dncstream::net;

namespace {

const std::string kMinimal = R"(
node server host
node s1 switch
server server
access s1
edge server s1 1000 1
)";

std::vector<std::string> problems_of(const std::string& text) {
  std::istringstream in(text);
  return parse_topology(in, "doc").check_invariants();
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems) {
    if (p.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("minimal document") {
  const auto t = load_topology(kMinimal);
  CHECK(t.node_count() == 2);
  CHECK(t.edge_count() == 1);
  CHECK(t.switch_count() == 1);
  CHECK(t.node(t.server()).name == "server");
  CHECK(t.edge(0).capacity == 1e9);
  CHECK(t.edge(0).delay == doctest::Approx(1e-3));
  REQUIRE(t.access_switches().size() == 1);
  CHECK(t.node(t.access_switches()[0]).name == "s1");
}

TEST_CASE("shipped default topology") {
  const auto t = load_topology_file(DNCSTREAM_DATA_DIR "/default_topology.txt");
  CHECK(t.switch_count() == 9);
  CHECK(t.node_count() == 10);
  CHECK(t.access_switches().size() == 4);
  for (EdgeId e = 0; e < t.edge_slots(); ++e) {
    const auto& edge = t.edge(e);
    CHECK(edge.capacity == (edge.touches(t.server()) ? 1000e6 : 500e6));
  }
}

TEST_CASE("structural violations are reported") {
  const std::string second_server = kMinimal + "node other host\nedge other s1 10 1\nserver other\n";
  CHECK(mentions(problems_of(second_server), "exactly one server"));
  CHECK_THROWS_AS(load_topology(second_server), ValidationError);

  CHECK(mentions(problems_of("node s1 switch\nnode s2 switch\nedge s1 s2 1 1\n"), "exactly one server"));
  CHECK(mentions(problems_of(kMinimal + "node s2 switch\nedge s1 s2 500 1\nedge s2 s1 500 1\n"), "duplicate edge"));
  CHECK(mentions(problems_of(kMinimal + "node s2 switch\nnode s3 switch\nedge s2 s3 500 1\n"), "disconnected"));
  CHECK(mentions(problems_of(kMinimal + "node h host\nnode s2 switch\nedge h s1 10 1\nedge h s2 10 1\nedge s1 s2 5 1\n"),
                 "exactly one switch"));
  CHECK(mentions(problems_of(kMinimal + "edge s1 s1 5 1\n"), "self-loop"));
  CHECK(mentions(problems_of(kMinimal + "access server\n"), "must be a switch"));
  CHECK(problems_of(kMinimal).empty());
}

TEST_CASE("syntax errors carry the line number") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_topology(in, "doc");
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("node a switch\nedge a b 1 1\n") == 2);
  CHECK(line_of("node a switch\nnode b router\n") == 2);
  CHECK(line_of("# comment\n\nnode a switch\nnode b switch\nedge a b fast 1\n") == 5);
  CHECK(line_of("link a b\n") == 1);
  CHECK(line_of("node a switch\nnode a switch\n") == 2);
  CHECK(line_of("node a switch\nnode b switch\nedge a b -3 1\n") == 3);
  CHECK(line_of(kMinimal) == -1);
}

TEST_CASE("attach and detach clients") {
  const auto original = load_topology(kMinimal);
  auto t = original;
  const auto host = t.attach_client("c1", "s1", 10e6, 1e-3);
  CHECK(t.node(host).role == NodeRole::host);
  REQUIRE(t.incident(host).size() == 1);
  const auto& last_mile = t.edge(t.incident(host).front());
  CHECK(last_mile.capacity == 10e6);
  CHECK(last_mile.other(host) == t.find("s1"));
  CHECK(t.check_invariants().empty());

  t.detach_client(host);
  CHECK(t == original);

  CHECK_THROWS_AS(t.attach_client("c2", "server", 10e6, 1e-3), ValidationError);
  CHECK_THROWS_AS(t.attach_client("c2", "nowhere", 10e6, 1e-3), ValidationError);
  CHECK_THROWS_AS(t.detach_client(t.server()), ValidationError);
  CHECK(t == original);
}

TEST_CASE("interleaved attach and detach returns to the original graph") {
  const auto original = load_topology_file(DNCSTREAM_DATA_DIR "/default_topology.txt");
  auto t = original;
  std::vector<NodeId> hosts;
  for (int i = 0; i < 12; ++i) {
    const auto& access = t.access_switches();
    hosts.push_back(t.attach_client("c" + std::to_string(i), access[i % access.size()], 10e6, 1e-3));
  }
  CHECK(t.node_count() == original.node_count() + 12);
  // Leave in a scrambled order.
  for (int i : {3, 0, 7, 11, 5, 1, 9, 2, 10, 4, 8, 6}) {
    t.detach_client(hosts[static_cast<std::size_t>(i)]);
    CHECK(t.check_invariants().empty());
  }
  CHECK(t == original);
}
