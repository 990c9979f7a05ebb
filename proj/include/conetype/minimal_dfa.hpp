#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "conetype/bigint.hpp"
#include "conetype/dfa.hpp"
#include "conetype/error.hpp"
#include "conetype/minimize.hpp"
#include "conetype/perm.hpp"

namespace conetype {

/// The admissible permutation group Sym(q) at a state, described by its
/// blocks Sigma(q, q') and its order (the product of block factorials).
struct SymGroup {
  // (target state, letters into it), ordered by target.
  std::vector<std::pair<std::string, std::vector<std::string>>> blocks;
  BigInt order = 1;

  std::vector<std::string> domain() const {
    std::vector<std::string> d;
    for (const auto& [t, letters] : blocks) d.insert(d.end(), letters.begin(), letters.end());
    std::sort(d.begin(), d.end());
    return d;
  }
};

/// A validated, connected, geometrically minimal DFA with the per-state data
/// the portrait calculus needs precomputed. Cheap to copy; the payload is
/// shared and immutable.
class MinimalDfa {
 public:
  static MinimalDfa wrap(Dfa dfa) {
    validate(dfa);
    if (!is_connected(dfa.graph())) fail(Errc::NotConnected, "automaton is not connected");
    if (!is_minimal(dfa.graph()))
      fail(Errc::NotMinimal, "automaton is not geometrically minimal");
    auto impl = std::make_shared<Impl>(std::move(dfa));
    return MinimalDfa(std::move(impl));
  }

  const Dfa& dfa() const { return impl_->dfa; }
  const Multigraph& graph() const { return impl_->dfa.graph(); }

  const SymGroup& sym(const std::string& q) const {
    return impl_->sym.at(graph().state_index(q));
  }

  /// States of the reachable closure A[q], sorted.
  const std::vector<std::string>& reachable_from(const std::string& q) const {
    return impl_->reach.at(graph().state_index(q));
  }

  bool state_reachable(const std::string& from, const std::string& q) const {
    const auto& r = reachable_from(from);
    return std::binary_search(r.begin(), r.end(), q);
  }

  friend bool operator==(const MinimalDfa& a, const MinimalDfa& b) {
    return a.impl_ == b.impl_ || a.dfa() == b.dfa();
  }

 private:
  struct Impl {
    explicit Impl(Dfa d) : dfa(std::move(d)) {
      const Multigraph& g = dfa.graph();
      for (const std::string& q : g.states()) {
        SymGroup s;
        std::map<std::string, std::vector<std::string>> by_target;
        for (const std::string& a : dfa.out_letters(q)) by_target[*dfa.step(q, a)].push_back(a);
        for (auto& [t, letters] : by_target) {
          std::sort(letters.begin(), letters.end());
          s.order *= factorial_big(letters.size());
          s.blocks.emplace_back(t, std::move(letters));
        }
        sym.push_back(std::move(s));
        reach.push_back(reachable_states(g, q));
      }
    }

    Dfa dfa;
    std::vector<SymGroup> sym;
    std::vector<std::vector<std::string>> reach;
  };

  explicit MinimalDfa(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// The group of admissible permutations at q: block sizes and order.
inline const SymGroup& admissible_perms(const MinimalDfa& m, const std::string& q) {
  return m.sym(q);
}

/// Whether p lies in Sym(q): p permutes Sigma(q) and preserves every block,
/// i.e. delta(q, p(a)) = delta(q, a) for every out-letter a.
inline bool is_admissible(const MinimalDfa& m, const std::string& q, const Perm& p) {
  if (p.domain() != m.dfa().out_letters(q)) return false;
  for (const std::string& a : p.domain())
    if (*m.dfa().step(q, p.apply(a)) != *m.dfa().step(q, a)) return false;
  return true;
}

inline void require_admissible(const MinimalDfa& m, const std::string& q, const Perm& p) {
  if (!is_admissible(m, q, p))
    fail(Errc::NotAdmissible, "permutation is not admissible at state '" + q + "'");
}

/// All elements of Sym(q) in a deterministic order: per-block permutations in
/// lexicographic image order, combined with the first block most significant.
inline std::vector<Perm> enumerate_sym(const MinimalDfa& m, const std::string& q) {
  const SymGroup& s = m.sym(q);
  std::vector<std::string> domain = s.domain();

  // Per-block image lists, each in lexicographic order.
  std::vector<std::vector<std::vector<std::string>>> block_perms;
  for (const auto& [t, letters] : s.blocks) {
    std::vector<std::vector<std::string>> perms;
    std::vector<std::string> images = letters;
    do {
      perms.push_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    block_perms.push_back(std::move(perms));
  }

  std::vector<Perm> out;
  std::vector<size_t> pick(block_perms.size(), 0);
  for (;;) {
    std::map<std::string, std::string> map;
    for (size_t b = 0; b < pick.size(); ++b) {
      const auto& letters = s.blocks[b].second;
      const auto& images = block_perms[b][pick[b]];
      for (size_t i = 0; i < letters.size(); ++i) map[letters[i]] = images[i];
    }
    std::vector<std::string> images;
    images.reserve(domain.size());
    for (const std::string& a : domain) images.push_back(map.at(a));
    out.push_back(Perm::from_images(domain, images));

    size_t b = pick.size();
    while (b > 0) {
      --b;
      if (++pick[b] < block_perms[b].size()) break;
      pick[b] = 0;
      if (b == 0) return out;
    }
    if (pick.empty()) return out;
  }
}

}  // namespace conetype
