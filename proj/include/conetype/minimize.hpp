#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "conetype/bigint.hpp"
#include "conetype/dfa.hpp"
#include "conetype/error.hpp"
#include "conetype/morphism.hpp"
#include "conetype/multigraph.hpp"

namespace conetype {

/// A partition of the state set. Blocks are sorted internally and ordered by
/// their least element, so equal partitions compare equal.
struct Partition {
  std::vector<std::vector<std::string>> blocks;

  bool discrete() const {
    for (const auto& b : blocks)
      if (b.size() > 1) return false;
    return true;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

namespace detail {

// Canonicalizes a block-id assignment (indexed by state position) into a Partition.
inline Partition to_partition(const Multigraph& g, const std::vector<int>& block_of) {
  std::map<int, std::vector<std::string>> by_id;
  for (size_t i = 0; i < g.states().size(); ++i) by_id[block_of[i]].push_back(g.states()[i]);
  Partition p;
  for (auto& [id, members] : by_id) p.blocks.push_back(std::move(members));
  // states() is sorted, so each block is sorted and its front is its least element
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return p;
}

// Runs up to `rounds` refinement rounds of the geometric Moore algorithm and
// returns the resulting block assignment. Each round splits blocks by the
// signature "number of out-edges into each current block", which is the
// depth-d cone relation after d rounds. Stops early once stable (a fixed
// point stays fixed).
inline std::vector<int> moore_rounds(const Multigraph& g, size_t rounds, size_t* stabilized_at = nullptr) {
  size_t n = g.states().size();
  std::vector<int> block_of(n, 0);
  int block_count = 1;
  size_t d = 0;
  for (; d < rounds; ++d) {
    std::map<std::pair<int, std::vector<int>>, int> fresh;
    std::vector<int> next(n);
    for (size_t qi = 0; qi < n; ++qi) {
      std::vector<int> counts(block_count, 0);
      for (size_t ei : g.out_edges(g.states()[qi]))
        ++counts[block_of[g.state_index(g.edges()[ei].dst)]];
      auto key = std::make_pair(block_of[qi], std::move(counts));
      auto [it, inserted] = fresh.emplace(std::move(key), static_cast<int>(fresh.size()));
      next[qi] = it->second;
    }
    bool changed = static_cast<int>(fresh.size()) != block_count;
    block_count = static_cast<int>(fresh.size());
    block_of = std::move(next);
    if (!changed) break;
  }
  if (stabilized_at) *stabilized_at = d;
  return block_of;
}

inline size_t moore_cap(const Multigraph& g) {
  size_t n = g.states().size();
  return (n + 1) * (n + 1);
}

}  // namespace detail

/// Whether the depth-d truncated cone trees at q1 and q2 are isomorphic as
/// unlabelled rooted trees.
inline bool cone_equivalent(const Multigraph& g, const std::string& q1, const std::string& q2,
                            size_t d) {
  size_t i1 = g.state_index(q1), i2 = g.state_index(q2);
  std::vector<int> block_of = detail::moore_rounds(g, d);
  return block_of[i1] == block_of[i2];
}

/// The geometric Nerode partition: states are identified iff their full cone
/// trees are isomorphic. Stabilizes within (|Q|+1)^2 refinement rounds.
inline Partition geometric_moore(const Multigraph& g) {
  if (!is_connected(g)) fail(Errc::NotConnected, "graph is not connected");
  size_t stabilized = 0;
  std::vector<int> block_of = detail::moore_rounds(g, detail::moore_cap(g), &stabilized);
  if (stabilized >= detail::moore_cap(g))
    throw std::logic_error("geometric Moore did not stabilize within the bound");
  return detail::to_partition(g, block_of);
}

inline bool is_minimal(const Multigraph& g) { return geometric_moore(g).discrete(); }

inline std::string class_name(const std::vector<std::string>& members) {
  std::string name;
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) name += "+";
    name += members[i];
  }
  return name;
}

/// The minimal covering quotient together with an explicit covering morphism
/// onto it and the Nerode classes. Unreachable states are dropped first;
/// `reduced_input` records whether that happened.
struct MinimizationResult {
  Multigraph quotient;
  GraphMorphism projection;
  Partition classes;
  bool reduced_input = false;
};

inline MinimizationResult minimal_quotient(const Multigraph& input) {
  bool reduced = !is_connected(input);
  Multigraph g = reduced ? reachable_closure(input, input.root()) : input;

  Partition classes = geometric_moore(g);
  std::map<std::string, size_t> class_of;
  std::vector<std::string> names;
  for (size_t c = 0; c < classes.blocks.size(); ++c) {
    names.push_back(class_name(classes.blocks[c]));
    for (const std::string& q : classes.blocks[c]) class_of[q] = c;
  }

  // Edge multiplicities: between classes C1, C2 there are as many edges as
  // any representative of C1 has out-edges into members of C2. The counts
  // agree across representatives because the partition is a refinement
  // fixed point; the least member is used.
  std::vector<Edge> qedges;
  std::map<std::pair<size_t, size_t>, std::vector<std::string>> bucket_ids;
  for (size_t c1 = 0; c1 < classes.blocks.size(); ++c1) {
    const std::string& rep = classes.blocks[c1].front();
    std::map<size_t, size_t> counts;
    for (size_t ei : g.out_edges(rep)) ++counts[class_of.at(g.edges()[ei].dst)];
    for (const auto& [c2, k] : counts) {
      auto& ids = bucket_ids[{c1, c2}];
      for (size_t j = 0; j < k; ++j) {
        std::string id = names[c1] + "->" + names[c2] + "#" + std::to_string(j);
        qedges.push_back(Edge{id, names[c1], names[c2]});
        ids.push_back(id);
      }
    }
  }
  Multigraph quotient(names, names[class_of.at(g.root())], std::move(qedges));

  // Projection: within each (source state, target class) bucket, source
  // edges in canonical id order are matched to quotient edges in bucket
  // order.
  GraphMorphism projection{g, quotient, {}, {}};
  for (const std::string& q : g.states()) projection.vertex_map[q] = names[class_of.at(q)];
  for (const std::string& q : g.states()) {
    std::map<size_t, size_t> used;
    for (size_t ei : g.out_edges(q)) {  // out_edges is already id-sorted
      const Edge& e = g.edges()[ei];
      size_t c2 = class_of.at(e.dst);
      const auto& ids = bucket_ids.at({class_of.at(q), c2});
      projection.edge_map[e.id] = ids.at(used[c2]++);
    }
  }
  return MinimizationResult{std::move(quotient), std::move(projection), std::move(classes), reduced};
}

/// Classical (labelled) Myhill-Nerode minimization for partial transition
/// functions: the seed partition groups states by their defined letter sets,
/// refinement is by per-letter target blocks.
inline Dfa classical_minimize(const Dfa& dfa) {
  validate(dfa);
  if (!is_connected(dfa.graph())) fail(Errc::NotConnected, "automaton is not connected");
  const Multigraph& g = dfa.graph();
  size_t n = g.states().size();

  std::map<std::vector<std::string>, int> seed;
  std::vector<int> block_of(n);
  for (size_t i = 0; i < n; ++i) {
    auto key = dfa.out_letters(g.states()[i]);
    auto [it, ins] = seed.emplace(std::move(key), static_cast<int>(seed.size()));
    block_of[i] = it->second;
  }
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> fresh;
    std::vector<int> next(n);
    for (size_t i = 0; i < n; ++i) {
      const std::string& q = g.states()[i];
      std::vector<int> sig;
      for (const std::string& a : dfa.out_letters(q))
        sig.push_back(block_of[g.state_index(*dfa.step(q, a))]);
      auto [it, ins] = fresh.emplace(std::make_pair(block_of[i], std::move(sig)),
                                     static_cast<int>(fresh.size()));
      next[i] = it->second;
    }
    bool stable = fresh.size() == static_cast<size_t>(*std::max_element(block_of.begin(), block_of.end()) + 1);
    block_of = std::move(next);
    if (stable) break;
  }

  Partition classes = detail::to_partition(g, block_of);
  std::map<std::string, std::string> name_of;
  std::vector<std::string> names;
  for (const auto& block : classes.blocks) {
    std::string name = class_name(block);
    names.push_back(name);
    for (const std::string& q : block) name_of[q] = name;
  }
  std::vector<Edge> edges;
  std::map<std::string, std::string> labels;
  for (const auto& block : classes.blocks) {
    const std::string& rep = block.front();
    for (const std::string& a : dfa.out_letters(rep)) {
      std::string id = name_of[rep] + ":" + a;
      edges.push_back(Edge{id, name_of[rep], name_of[*dfa.step(rep, a)]});
      labels[id] = a;
    }
  }
  Multigraph qg(names, name_of.at(g.root()), std::move(edges));
  return Dfa(std::move(qg), dfa.alphabet(), std::move(labels));
}

/// Order of the edge automorphism group: the product over ordered state
/// pairs of the factorials of the parallel-edge counts.
inline BigInt edge_automorphism_order(const Multigraph& g) {
  std::map<std::pair<std::string, std::string>, size_t> counts;
  for (const Edge& e : g.edges()) ++counts[{e.src, e.dst}];
  BigInt order = 1;
  for (const auto& [pair, k] : counts) order *= factorial_big(k);
  return order;
}

}  // namespace conetype
