#pragma once

#include <map>
#include <string>
#include <vector>

#include "conetype/conetype.hpp"

namespace conetype::testing {

// The five-state automaton over {a,b,c,d} whose minimal covering quotient has
// two states. Edge ids are arranged so the canonical fibers of the geometric
// minimization are exactly the alpha/beta fibers used in the worked example:
// e01..e04 the root edges, e05..e08 the "diagonal" loops-and-stays, e09..e12
// the cross moves.
inline Dfa example_automaton() {
  std::vector<std::string> states{"eps", "W", "X", "Y", "Z"};
  std::vector<Edge> edges{
      {"e01", "eps", "W"}, {"e02", "eps", "X"}, {"e03", "eps", "Y"}, {"e04", "eps", "Z"},
      {"e05", "W", "W"},   {"e06", "X", "X"},   {"e07", "Y", "Y"},   {"e08", "Z", "Z"},
      {"e09", "W", "Y"},   {"e10", "X", "W"},   {"e11", "Y", "Z"},   {"e12", "Z", "Y"},
  };
  std::map<std::string, std::string> labels{
      {"e01", "a"}, {"e02", "b"}, {"e03", "c"}, {"e04", "d"}, {"e05", "a"}, {"e06", "b"},
      {"e07", "c"}, {"e08", "d"}, {"e09", "c"}, {"e10", "a"}, {"e11", "d"}, {"e12", "c"},
  };
  return Dfa(Multigraph(states, "eps", edges), {"a", "b", "c", "d"}, labels);
}

// Canonical fiber letter -> the name used in the worked example.
inline const std::map<std::string, std::string>& fiber_renaming() {
  static const std::map<std::string, std::string> table{
      {"a0", "alpha1"}, {"a1", "alpha2"}, {"a2", "alpha3"},
      {"a3", "alpha4"}, {"b0", "beta1"},  {"b1", "beta2"},
  };
  return table;
}

inline std::string paper_fiber(const std::string& canonical) { return fiber_renaming().at(canonical); }

inline Multigraph rose_graph(size_t petals) {
  std::vector<Edge> edges;
  for (size_t i = 0; i < petals; ++i) edges.push_back(Edge{"l" + std::to_string(i), "r", "r"});
  return Multigraph({"r"}, "r", edges);
}

inline Dfa rose(size_t petals) { return canonical_labelling(rose_graph(petals)); }

inline MinimizedLabelled example_minimization() { return geometric_minimization(example_automaton()); }

inline MinimalDfa example_quotient() { return MinimalDfa::wrap(example_minimization().quotient_dfa); }

inline MinimalDfa rose_quotient(size_t petals) { return MinimalDfa::wrap(rose(petals)); }

// The portrait from the worked example: swap the two first root edges, swap
// the loop pair below alpha2 and below alpha2 beta2 beta1 beta2.
inline Portrait sigma_prime(const MinimalDfa& quotient) {
  std::vector<std::string> root_letters{"a0", "a1", "a2", "a3"};
  std::vector<std::string> loop_letters{"b0", "b1"};
  std::map<Word, Perm> entries;
  entries.emplace(Word{}, transposition(root_letters, "a0", "a1"));
  entries.emplace(Word{"a1"}, transposition(loop_letters, "b0", "b1"));
  entries.emplace(Word{"a1", "b1", "b0", "b1"}, transposition(loop_letters, "b0", "b1"));
  return Portrait::finite_support(quotient, entries);
}

}  // namespace conetype::testing
