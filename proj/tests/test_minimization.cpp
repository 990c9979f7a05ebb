#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "conetype/conetype.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"
#include "support/rng.hpp"

using namespace conetype;
using namespace conetype::testing;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  throw std::logic_error("unreachable");
}

Multigraph disconnected() {
  return Multigraph({"a", "b"}, "a", {});
}

}  // namespace

TEST_CASE("cone equivalence") {
  Multigraph g = example_automaton().graph();
  SECTION("all non-root states share every finite cone type") {
    for (size_t d = 0; d <= 10; ++d)
      for (const std::string& q : {"X", "Y", "Z"}) CHECK(cone_equivalent(g, "W", q, d));
  }
  SECTION("depth 0 identifies everything") {
    CHECK(cone_equivalent(g, "eps", "W", 0));
  }
  SECTION("the root separates at depth 1 by out-degree") {
    CHECK_FALSE(cone_equivalent(g, "eps", "W", 1));
    CHECK(materialized_cone_canon(g, "eps", 1) != materialized_cone_canon(g, "W", 1));
  }
  SECTION("unknown states are rejected") {
    CHECK(code_of([&] { cone_equivalent(g, "eps", "nope", 1); }) == Errc::UnknownState);
  }
  SECTION("matches the materialized rooted-tree canonical form at small depth") {
    Rng rng(20240510);
    for (int i = 0; i < 40; ++i) {
      Multigraph h = random_connected_multigraph(rng, 5, 2);
      for (size_t d = 0; d <= 3; ++d)
        for (const std::string& q1 : h.states())
          for (const std::string& q2 : h.states())
            CHECK(cone_equivalent(h, q1, q2, d) ==
                  (materialized_cone_canon(h, q1, d) == materialized_cone_canon(h, q2, d)));
    }
  }
  SECTION("is an equivalence and refines along depth") {
    Rng rng(20240511);
    for (int i = 0; i < 30; ++i) {
      Multigraph h = random_connected_multigraph(rng);
      const auto& st = h.states();
      for (size_t d = 0; d <= 6; ++d)
        for (const std::string& q1 : st)
          for (const std::string& q2 : st) {
            CHECK(cone_equivalent(h, q1, q1, d));
            CHECK(cone_equivalent(h, q1, q2, d) == cone_equivalent(h, q2, q1, d));
            if (cone_equivalent(h, q1, q2, d + 1)) CHECK(cone_equivalent(h, q1, q2, d));
          }
    }
  }
}

TEST_CASE("geometric Moore") {
  SECTION("the example automaton has two geometric Nerode classes") {
    Partition p = geometric_moore(example_automaton().graph());
    REQUIRE(p.blocks ==
            std::vector<std::vector<std::string>>{{"W", "X", "Y", "Z"}, {"eps"}});
  }
  SECTION("a one-state graph is a single class") {
    Partition p = geometric_moore(rose_graph(3));
    CHECK(p.blocks == std::vector<std::vector<std::string>>{{"r"}});
  }
  SECTION("agrees with the canonical-form partition at the stabilization bound") {
    Rng rng(20240512);
    for (int i = 0; i < 60; ++i) {
      Multigraph h = random_connected_multigraph(rng, 6);
      size_t bound = (h.states().size() + 1) * (h.states().size() + 1);
      CHECK(geometric_moore(h) == canon_partition(h, bound));
    }
  }
  SECTION("agrees with the split-by-count formulation of the refinement") {
    Rng rng(20240513);
    for (int i = 0; i < 25; ++i) {
      Multigraph h = random_connected_multigraph(rng, 5);
      CHECK(geometric_moore(h) == paper_moore(h));
    }
  }
  SECTION("requires connectivity") {
    CHECK(code_of([&] { geometric_moore(disconnected()); }) == Errc::NotConnected);
  }
}

TEST_CASE("minimal quotient") {
  SECTION("the example automaton collapses to two states") {
    MinimizationResult mr = minimal_quotient(example_automaton().graph());
    REQUIRE(mr.quotient.states() == std::vector<std::string>{"W+X+Y+Z", "eps"});
    CHECK(mr.quotient.root() == "eps");
    CHECK(parallel_count(mr.quotient, "eps", "W+X+Y+Z") == 4);
    CHECK(parallel_count(mr.quotient, "W+X+Y+Z", "W+X+Y+Z") == 2);
    CHECK(mr.quotient.edges().size() == 6);
    CHECK_FALSE(mr.reduced_input);
    REQUIRE_NOTHROW(verify_covering(mr.projection));
  }
  SECTION("a rose is its own minimal quotient") {
    MinimizationResult mr = minimal_quotient(rose_graph(3));
    CHECK(mr.quotient.states().size() == 1);
    CHECK(mr.quotient.edges().size() == 3);
    CHECK(is_minimal(mr.quotient));
  }
  SECTION("unreachable states are dropped first and recorded") {
    Multigraph g({"a", "b", "stranded"}, "a", {{"e1", "a", "b"}});
    MinimizationResult mr = minimal_quotient(g);
    CHECK(mr.reduced_input);
    CHECK(mr.projection.source.states() == std::vector<std::string>{"a", "b"});
  }
  SECTION("the projection is a covering and the quotient shrinks monotonically") {
    Rng rng(20240514);
    for (int i = 0; i < 60; ++i) {
      Multigraph g = random_connected_multigraph(rng);
      MinimizationResult mr = minimal_quotient(g);
      REQUIRE_NOTHROW(verify_covering(mr.projection));
      CHECK(mr.quotient.states().size() <= g.states().size());
      CHECK(mr.quotient.edges().size() <= g.edges().size());
      bool discrete = mr.classes.discrete();
      CHECK((mr.quotient.states().size() == g.states().size()) == discrete);
      CHECK((mr.quotient.edges().size() == g.edges().size()) == discrete);
    }
  }
  SECTION("re-minimizing the quotient is trivial") {
    Rng rng(20240515);
    for (int i = 0; i < 40; ++i) {
      Multigraph g = random_connected_multigraph(rng);
      Multigraph q = minimal_quotient(g).quotient;
      MinimizationResult again = minimal_quotient(q);
      CHECK(again.classes.discrete());
      // with a discrete partition the projection is a bijection, i.e. an iso
      CHECK(again.quotient.states().size() == q.states().size());
      CHECK(again.quotient.edges().size() == q.edges().size());
    }
  }
  SECTION("vertex maps of coverings onto the quotient are unique") {
    Rng rng(20240516);
    for (int i = 0; i < 25; ++i) {
      Multigraph g = random_connected_multigraph(rng);
      MinimizationResult mr = minimal_quotient(g);
      // rebuild the covering with randomly permuted fiber matchings; only the
      // edge map may change
      GraphMorphism shuffled = mr.projection;
      std::map<std::pair<std::string, std::string>, std::vector<std::string>> buckets;
      for (const auto& [e, img] : mr.projection.edge_map)
        buckets[{g.edges()[g.edge_index(e)].src, img.substr(0, img.find("#"))}].push_back(e);
      for (auto& [key, ids] : buckets) {
        std::vector<std::string> images;
        for (const std::string& e : ids) images.push_back(shuffled.edge_map[e]);
        for (size_t k = images.size(); k > 1; --k)
          std::swap(images[k - 1], images[rng.below(k)]);
        for (size_t k = 0; k < ids.size(); ++k) shuffled.edge_map[ids[k]] = images[k];
      }
      REQUIRE_NOTHROW(verify_covering(shuffled));
      CHECK(shuffled.vertex_map == mr.projection.vertex_map);
    }
  }
  SECTION("matches the hand-written covering on the example automaton") {
    MinimizationResult mr = minimal_quotient(example_automaton().graph());
    CHECK(mr.projection.vertex_map.at("eps") == "eps");
    CHECK(mr.projection.vertex_map.at("X") == "W+X+Y+Z");
    CHECK(mr.projection.edge_map.at("e05") == "W+X+Y+Z->W+X+Y+Z#0");
    CHECK(mr.projection.edge_map.at("e10") == "W+X+Y+Z->W+X+Y+Z#1");
  }
}

TEST_CASE("is_minimal") {
  CHECK(is_minimal(minimal_quotient(example_automaton().graph()).quotient));
  CHECK_FALSE(is_minimal(example_automaton().graph()));
  CHECK(is_minimal(Multigraph({"q"}, "q", {})));
  CHECK(code_of([&] { is_minimal(disconnected()); }) == Errc::NotConnected);
}

TEST_CASE("classical minimization") {
  Dfa dfa = example_automaton();
  SECTION("merges exactly Y and Z on the example automaton") {
    Dfa m = classical_minimize(dfa);
    REQUIRE(m.graph().states() == std::vector<std::string>{"W", "X", "Y+Z", "eps"});
    CHECK(language_classes(dfa, 2 * dfa.graph().states().size()).blocks ==
          std::vector<std::vector<std::string>>{{"W"}, {"X"}, {"Y", "Z"}, {"eps"}});
  }
  SECTION("preserves the language") {
    Dfa m = classical_minimize(dfa);
    for (size_t n = 0; n <= 2 * dfa.graph().states().size(); ++n)
      CHECK(level(dfa, n) == level(m, n));
  }
  SECTION("is idempotent") {
    Dfa m = classical_minimize(dfa);
    Dfa mm = classical_minimize(m);
    CHECK(mm.graph().states().size() == m.graph().states().size());
    CHECK(mm.graph().edges().size() == m.graph().edges().size());
  }
  SECTION("the classical minimum can be strictly larger than the geometric one") {
    Dfa m = classical_minimize(dfa);
    MinimizationResult geo = minimal_quotient(dfa.graph());
    CHECK(m.graph().states().size() == 4);
    CHECK(geo.quotient.states().size() == 2);
  }
  SECTION("random automata: classes match the language oracle") {
    Rng rng(20240517);
    for (int i = 0; i < 30; ++i) {
      Dfa d = canonical_labelling(random_connected_multigraph(rng, 5, 2));
      Dfa m = classical_minimize(d);
      size_t expected = language_classes(d, 2 * d.graph().states().size()).blocks.size();
      CHECK(m.graph().states().size() == expected);
      for (size_t n = 0; n <= 6; ++n) CHECK(level(d, n) == level(m, n));
    }
  }
  SECTION("requires connectivity") {
    Dfa d(disconnected(), {"a"}, {});
    CHECK(code_of([&] { classical_minimize(d); }) == Errc::NotConnected);
  }
}

TEST_CASE("edge automorphism order") {
  SECTION("the example quotient has 4! * 2! edge automorphisms") {
    CHECK(edge_automorphism_order(minimal_quotient(example_automaton().graph()).quotient) == 48);
  }
  SECTION("simple graphs are rigid") {
    CHECK(edge_automorphism_order(example_automaton().graph()) == 1);
  }
  SECTION("the 2-petal rose has one swap") {
    CHECK(edge_automorphism_order(rose_graph(2)) == 2);
  }
  SECTION("on minimal graphs every automorphism is an edge automorphism") {
    Rng rng(20240518);
    for (int i = 0; i < 30; ++i) {
      Multigraph q = minimal_quotient(random_connected_multigraph(rng, 6)).quotient;
      auto maps = automorphism_vertex_maps(q);
      REQUIRE(maps.size() == 1);  // only the identity fixes all vertices
      for (const auto& [a, b] : maps[0]) CHECK(a == b);
    }
  }
}
