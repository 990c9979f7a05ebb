#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "conetype/error.hpp"

namespace conetype {

struct Edge {
  std::string id;
  std::string src;
  std::string dst;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A rooted directed multigraph. States and edge ids are opaque strings with
/// lexicographic canonical order; construction normalizes: states are stored
/// sorted and edges sorted by id, so iteration order is the canonical order.
class Multigraph {
 public:
  Multigraph(std::vector<std::string> states, std::string root, std::vector<Edge> edges)
      : states_(std::move(states)), root_(std::move(root)), edges_(std::move(edges)) {
    std::sort(states_.begin(), states_.end());
    states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    if (!has_state(root_)) fail(Errc::UnknownState, "root '" + root_ + "' is not a state");
    for (size_t i = 0; i + 1 < edges_.size(); ++i)
      if (edges_[i].id == edges_[i + 1].id)
        fail(Errc::DuplicateEdgeId, "edge id '" + edges_[i].id + "'");
    out_.assign(states_.size(), {});
    for (size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (!has_state(e.src))
        fail(Errc::UnknownState, "edge '" + e.id + "' has unknown source '" + e.src + "'");
      if (!has_state(e.dst))
        fail(Errc::UnknownState, "edge '" + e.id + "' has unknown target '" + e.dst + "'");
      out_[state_index(e.src)].push_back(i);
    }
  }

  const std::vector<std::string>& states() const { return states_; }
  const std::string& root() const { return root_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_state(const std::string& q) const {
    return std::binary_search(states_.begin(), states_.end(), q);
  }

  size_t state_index(const std::string& q) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), q);
    if (it == states_.end() || *it != q) fail(Errc::UnknownState, "state '" + q + "'");
    return static_cast<size_t>(it - states_.begin());
  }

  bool has_edge(const std::string& id) const { return find_edge(id) != edges_.size(); }

  size_t edge_index(const std::string& id) const {
    size_t i = find_edge(id);
    if (i == edges_.size()) fail(Errc::UnknownEdge, "edge '" + id + "'");
    return i;
  }

  const Edge& edge(const std::string& id) const { return edges_[edge_index(id)]; }

  // Indices into edges(), in canonical (id) order.
  const std::vector<size_t>& out_edges(const std::string& q) const {
    return out_[state_index(q)];
  }

  size_t out_degree(const std::string& q) const { return out_edges(q).size(); }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.states_ == b.states_ && a.root_ == b.root_ && a.edges_ == b.edges_;
  }

 private:
  size_t find_edge(const std::string& id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, const std::string& k) { return e.id < k; });
    if (it == edges_.end() || it->id != id) return edges_.size();
    return static_cast<size_t>(it - edges_.begin());
  }

  std::vector<std::string> states_;
  std::string root_;
  std::vector<Edge> edges_;
  std::vector<std::vector<size_t>> out_;
};

/// States reachable from `from` (inclusive), sorted canonically.
inline std::vector<std::string> reachable_states(const Multigraph& g, const std::string& from) {
  g.state_index(from);
  std::set<std::string> seen{from};
  std::vector<std::string> stack{from};
  while (!stack.empty()) {
    std::string q = stack.back();
    stack.pop_back();
    for (size_t i : g.out_edges(q)) {
      const std::string& t = g.edges()[i].dst;
      if (seen.insert(t).second) stack.push_back(t);
    }
  }
  return {seen.begin(), seen.end()};
}

inline bool is_connected(const Multigraph& g) {
  return reachable_states(g, g.root()).size() == g.states().size();
}

/// Induced subgraph on the states reachable from q, rooted at q.
inline Multigraph reachable_closure(const Multigraph& g, const std::string& q) {
  std::vector<std::string> keep = reachable_states(g, q);
  std::set<std::string> kept(keep.begin(), keep.end());
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (kept.count(e.src)) edges.push_back(e);
  return Multigraph(std::move(keep), q, std::move(edges));
}

// Number of parallel edges q1 -> q2.
inline size_t parallel_count(const Multigraph& g, const std::string& q1, const std::string& q2) {
  size_t n = 0;
  for (size_t i : g.out_edges(q1))
    if (g.edges()[i].dst == q2) ++n;
  return n;
}

}  // namespace conetype
