#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conetype/error.hpp"
#include "conetype/multigraph.hpp"
#include "conetype/word.hpp"

namespace conetype {

/// A DFA presented as an admissibly labelled multigraph: every state accepts,
/// the transition delta(q, a) is the unique out-edge of q labelled a.
///
/// Construction never throws on labelling defects; it records the first
/// violation instead, so invalid inputs can be built and then reported
/// through validate(). The transition index is materialized up front, which
/// keeps the value immutable and safe for concurrent reads.
class Dfa {
 public:
  Dfa(Multigraph graph, std::vector<std::string> alphabet, std::map<std::string, std::string> label)
      : graph_(std::move(graph)), alphabet_(std::move(alphabet)), label_(std::move(label)) {
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    for (const Edge& e : graph_.edges())
      if (!label_.count(e.id))
        fail(Errc::ParseError, "edge '" + e.id + "' has no label");
    for (const auto& [id, letter] : label_)
      if (!graph_.has_edge(id)) fail(Errc::UnknownEdge, "label for unknown edge '" + id + "'");
    build_index();
  }

  const Multigraph& graph() const { return graph_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::map<std::string, std::string>& labels() const { return label_; }
  const std::string& label(const std::string& edge_id) const {
    auto it = label_.find(edge_id);
    if (it == label_.end()) fail(Errc::UnknownEdge, "edge '" + edge_id + "'");
    return it->second;
  }

  bool has_letter(const std::string& a) const {
    return std::binary_search(alphabet_.begin(), alphabet_.end(), a);
  }

  bool valid() const { return !violation_; }
  void ensure_valid() const {
    if (violation_) throw *violation_;
  }

  /// Out-labels of q, sorted: the set Sigma(q).
  const std::vector<std::string>& out_letters(const std::string& q) const {
    ensure_valid();
    return out_letters_[graph_.state_index(q)];
  }

  /// The transition: edge index of the unique out-edge of q labelled a, if any.
  std::optional<size_t> step_edge(const std::string& q, const std::string& a) const {
    ensure_valid();
    if (!has_letter(a)) fail(Errc::LetterNotInAlphabet, "letter '" + a + "'");
    const auto& row = delta_[graph_.state_index(q)];
    auto it = row.find(a);
    if (it == row.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::string> step(const std::string& q, const std::string& a) const {
    auto e = step_edge(q, a);
    if (!e) return std::nullopt;
    return graph_.edges()[*e].dst;
  }

  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.graph_ == b.graph_ && a.alphabet_ == b.alphabet_ && a.label_ == b.label_;
  }

 private:
  void build_index() {
    size_t n = graph_.states().size();
    delta_.assign(n, {});
    out_letters_.assign(n, {});
    for (size_t qi = 0; qi < n && !violation_; ++qi) {
      const std::string& q = graph_.states()[qi];
      for (size_t ei : graph_.out_edges(q)) {
        const Edge& e = graph_.edges()[ei];
        const std::string& a = label_.at(e.id);
        if (!has_letter(a)) {
          violation_ = Error(Errc::LetterNotInAlphabet,
                             "edge '" + e.id + "' labelled '" + a + "' outside the alphabet");
          break;
        }
        if (!delta_[qi].emplace(a, ei).second) {
          violation_ = Error(Errc::DuplicateOutLabel,
                             "state '" + q + "' has two out-edges labelled '" + a + "'");
          break;
        }
        out_letters_[qi].push_back(a);
      }
      std::sort(out_letters_[qi].begin(), out_letters_[qi].end());
    }
  }

  Multigraph graph_;
  std::vector<std::string> alphabet_;
  std::map<std::string, std::string> label_;
  std::vector<std::map<std::string, size_t>> delta_;
  std::vector<std::vector<std::string>> out_letters_;
  std::optional<Error> violation_;
};

/// Checks all Dfa invariants: admissibility of the labelling and that every
/// label belongs to the alphabet. Structural multigraph invariants are
/// enforced at construction time.
inline void validate(const Dfa& dfa) { dfa.ensure_valid(); }

/// The state q(w) reached from the root after reading w, absent if w is not
/// accepted.
inline std::optional<std::string> run(const Dfa& dfa, const Word& w) {
  dfa.ensure_valid();
  std::string q = dfa.graph().root();
  for (const std::string& a : w) {
    auto next = dfa.step(q, a);
    if (!next) return std::nullopt;
    q = *next;
  }
  return q;
}

inline bool accepts(const Dfa& dfa, const Word& w) { return run(dfa, w).has_value(); }

/// All accepted words of length exactly n, in lexicographic order. Callers
/// must bound n; levels can grow exponentially.
inline std::vector<Word> level(const Dfa& dfa, size_t n) {
  dfa.ensure_valid();
  std::vector<std::pair<Word, std::string>> frontier{{Word(), dfa.graph().root()}};
  for (size_t k = 0; k < n; ++k) {
    std::vector<std::pair<Word, std::string>> next;
    for (const auto& [w, q] : frontier)
      for (const std::string& a : dfa.out_letters(q)) next.emplace_back(w.with(a), *dfa.step(q, a));
    frontier = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(frontier.size());
  for (auto& [w, q] : frontier) out.push_back(std::move(w));
  return out;
}

/// The reachable closure A[q]: the induced sub-DFA on states reachable from
/// q, rooted at q. The alphabet is kept as-is.
inline Dfa reachable_closure(const Dfa& dfa, const std::string& q) {
  dfa.ensure_valid();
  Multigraph sub = reachable_closure(dfa.graph(), q);
  std::map<std::string, std::string> labels;
  for (const Edge& e : sub.edges()) labels[e.id] = dfa.label(e.id);
  return Dfa(std::move(sub), dfa.alphabet(), std::move(labels));
}

/// The depth-d truncation of the path language tree, with the covering
/// projection (vertex -> state) as type map. Vertices are prefix-closed and
/// listed in level order.
struct TruncatedTree {
  size_t depth = 0;
  std::vector<Word> vertices;
  std::map<Word, std::string> type_of;
};

inline TruncatedTree truncated_cover(const Dfa& dfa, size_t d) {
  dfa.ensure_valid();
  TruncatedTree t;
  t.depth = d;
  std::vector<std::pair<Word, std::string>> frontier{{Word(), dfa.graph().root()}};
  for (size_t k = 0; k <= d; ++k) {
    std::vector<std::pair<Word, std::string>> next;
    for (const auto& [w, q] : frontier) {
      t.vertices.push_back(w);
      t.type_of.emplace(w, q);
      if (k < d)
        for (const std::string& a : dfa.out_letters(q))
          next.emplace_back(w.with(a), *dfa.step(q, a));
    }
    frontier = std::move(next);
  }
  return t;
}

/// Labels a bare multigraph deterministically: the k-th outgoing edge of each
/// state, in canonical edge order, gets letter "e<k>".
inline Dfa canonical_labelling(const Multigraph& g) {
  std::map<std::string, std::string> labels;
  size_t max_deg = 0;
  for (const std::string& q : g.states()) {
    const auto& out = g.out_edges(q);
    max_deg = std::max(max_deg, out.size());
    for (size_t k = 0; k < out.size(); ++k)
      labels[g.edges()[out[k]].id] = "e" + std::to_string(k);
  }
  std::vector<std::string> alphabet;
  for (size_t k = 0; k < max_deg; ++k) alphabet.push_back("e" + std::to_string(k));
  if (alphabet.empty()) alphabet.push_back("e0");  // a DFA needs a non-empty alphabet
  return Dfa(g, std::move(alphabet), std::move(labels));
}

}  // namespace conetype
