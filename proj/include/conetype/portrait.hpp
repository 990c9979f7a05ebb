#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "conetype/bigint.hpp"
#include "conetype/error.hpp"
#include "conetype/minimal_dfa.hpp"
#include "conetype/minimize.hpp"
#include "conetype/perm.hpp"
#include "conetype/word.hpp"

namespace conetype {

struct AdmissiblePerm {
  std::string state;
  Perm perm;
};

/// An element of Aut(T) over a geometrically minimal DFA, represented by its
/// portrait: the assignment of an admissible local permutation to every
/// accepted word. Evaluation is lazy; nothing is ever materialized beyond the
/// queried depth. Values are immutable and share structure.
///
/// Primitive forms are finite-support maps and cone-uniform assignments (the
/// basic automorphisms g_sigma^w); products, retractions and inverses are
/// kept symbolic and evaluated through the local-permutation recursion.
class Portrait {
 public:
  enum class Kind { Finite, Cone, Product, Retract, RetractLevel, Inverse };

  static Portrait identity(MinimalDfa base) {
    return Portrait(std::move(base), make_finite({}));
  }

  /// Finite support: the given vertices carry the given permutations,
  /// everything else is the identity. Entries must be admissible at the
  /// state reached by their vertex.
  static Portrait finite_support(MinimalDfa base, const std::map<Word, Perm>& entries) {
    std::map<Word, Perm> kept;
    for (const auto& [v, p] : entries) {
      auto q = run(base.dfa(), v);
      if (!q) fail(Errc::WordNotAccepted, "support vertex '" + v.joined(" ") + "'");
      require_admissible(base, *q, p);
      if (!p.is_identity()) kept.emplace(v, p);
    }
    return Portrait(std::move(base), make_finite(std::move(kept)));
  }

  /// Cone-uniform at w: inside the cone T_w every vertex of type q carries
  /// assign[q]; outside the portrait is trivial. Assignments at states not
  /// reachable from q(w) cannot act and are dropped.
  static Portrait cone_uniform(MinimalDfa base, Word w, const std::map<std::string, Perm>& assign) {
    auto qw = run(base.dfa(), w);
    if (!qw) fail(Errc::WordNotAccepted, "cone base '" + w.joined(" ") + "'");
    std::map<std::string, Perm> kept;
    for (const auto& [q, p] : assign) {
      require_admissible(base, q, p);
      if (!p.is_identity() && base.state_reachable(*qw, q)) kept.emplace(q, p);
    }
    NodePtr node = kept.empty() ? make_finite({}) : make_cone(std::move(w), std::move(kept));
    return Portrait(std::move(base), std::move(node));
  }

  /// Composition g1 * g2 * ... * gk, rightmost factor applied first.
  static Portrait product(const std::vector<Portrait>& factors) {
    if (factors.empty()) fail(Errc::BaseMismatch, "empty product");
    for (size_t i = 1; i < factors.size(); ++i)
      if (!(factors[i].base_ == factors[0].base_))
        fail(Errc::BaseMismatch, "product factors live over different automata");
    std::vector<NodePtr> nodes;
    for (const Portrait& f : factors) {
      if (f.kind() == Kind::Product)
        nodes.insert(nodes.end(), f.node_->inner.begin(), f.node_->inner.end());
      else if (!f.is_identity_node())
        nodes.push_back(f.node_);
    }
    if (nodes.empty()) return identity(factors[0].base_);
    if (nodes.size() == 1) return Portrait(factors[0].base_, nodes[0]);
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->inner = std::move(nodes);
    return Portrait(factors[0].base_, std::move(node));
  }

  const MinimalDfa& base() const { return base_; }
  Kind kind() const { return node_->kind; }

  /// The local permutation at an accepted vertex v.
  AdmissiblePerm local_permutation(const Word& v) const {
    auto q = run(base_.dfa(), v);
    if (!q) fail(Errc::WordNotAccepted, "'" + v.joined(" ") + "'");
    return AdmissiblePerm{*q, eval_local(*node_, v)};
  }

  /// The image of an accepted word; always accepted again.
  Word act(const Word& v) const {
    if (!accepts(base_.dfa(), v)) fail(Errc::WordNotAccepted, "'" + v.joined(" ") + "'");
    return eval_act(*node_, v);
  }

  Portrait inverse() const {
    switch (node_->kind) {
      case Kind::Finite: {
        std::map<Word, Perm> entries;
        for (const auto& [v, p] : node_->entries) entries.emplace(act(v), p.inverse());
        return Portrait(base_, make_finite(std::move(entries)));
      }
      case Kind::Cone: {
        std::map<std::string, Perm> assign;
        for (const auto& [q, p] : node_->assign) assign.emplace(q, p.inverse());
        return Portrait(base_, make_cone(node_->base_word, std::move(assign)));
      }
      case Kind::Product: {
        auto node = std::make_shared<Node>();
        node->kind = Kind::Product;
        for (auto it = node_->inner.rbegin(); it != node_->inner.rend(); ++it)
          node->inner.push_back(invert_node(*it));
        return Portrait(base_, std::move(node));
      }
      case Kind::Inverse:
        return Portrait(base_, node_->inner[0]);
      default:
        return Portrait(base_, invert_node(node_));
    }
  }

  /// Retraction onto the rigid stabilizer of w: local permutations are kept
  /// inside the cone T_w and become the identity outside.
  Portrait retract(const Word& w) const {
    if (!accepts(base_.dfa(), w)) fail(Errc::WordNotAccepted, "'" + w.joined(" ") + "'");
    switch (node_->kind) {
      case Kind::Finite: {
        std::map<Word, Perm> entries;
        for (const auto& [v, p] : node_->entries)
          if (v.starts_with(w)) entries.emplace(v, p);
        return Portrait(base_, make_finite(std::move(entries)));
      }
      case Kind::Cone: {
        if (node_->base_word.starts_with(w)) return *this;  // T_base inside T_w
        if (w.starts_with(node_->base_word)) {
          std::string qw = *run(base_.dfa(), w);
          std::map<std::string, Perm> assign;
          for (const auto& [q, p] : node_->assign)
            if (base_.state_reachable(qw, q)) assign.emplace(q, p);
          if (assign.empty()) return identity(base_);
          return Portrait(base_, make_cone(w, std::move(assign)));
        }
        return identity(base_);  // disjoint cones
      }
      default: {
        auto node = std::make_shared<Node>();
        node->kind = Kind::Retract;
        node->base_word = w;
        node->inner = {node_};
        return Portrait(base_, std::move(node));
      }
    }
  }

  /// Retraction onto the n-th rigid level stabilizer: local permutations
  /// survive at depth >= n and become trivial below.
  Portrait retract_level(size_t n) const {
    if (n == 0) return *this;
    switch (node_->kind) {
      case Kind::Finite: {
        std::map<Word, Perm> entries;
        for (const auto& [v, p] : node_->entries)
          if (v.size() >= n) entries.emplace(v, p);
        return Portrait(base_, make_finite(std::move(entries)));
      }
      case Kind::Cone: {
        if (node_->base_word.size() >= n) return *this;
        break;
      }
      default:
        break;
    }
    auto node = std::make_shared<Node>();
    node->kind = Kind::RetractLevel;
    node->level = n;
    node->inner = {node_};
    return Portrait(base_, std::move(node));
  }

  // Accessors for the primitive forms (serialization, tests).
  const std::map<Word, Perm>& finite_entries() const { return node_->entries; }
  const Word& cone_base() const { return node_->base_word; }
  const std::map<std::string, Perm>& cone_assign() const { return node_->assign; }
  std::vector<Portrait> factors() const {
    std::vector<Portrait> out;
    for (const NodePtr& n : node_->inner) out.push_back(Portrait(base_, n));
    return out;
  }

 private:
  struct Node {
    Kind kind = Kind::Finite;
    std::map<Word, Perm> entries;         // Finite
    Word base_word;                       // Cone, Retract
    std::map<std::string, Perm> assign;   // Cone
    std::vector<std::shared_ptr<const Node>> inner;  // Product, Retract, RetractLevel, Inverse
    size_t level = 0;                     // RetractLevel
  };
  using NodePtr = std::shared_ptr<const Node>;

  Portrait(MinimalDfa base, NodePtr node) : base_(std::move(base)), node_(std::move(node)) {}

  static NodePtr make_finite(std::map<Word, Perm> entries) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Finite;
    node->entries = std::move(entries);
    return node;
  }

  static NodePtr make_cone(Word base_word, std::map<std::string, Perm> assign) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Cone;
    node->base_word = std::move(base_word);
    node->assign = std::move(assign);
    return node;
  }

  static NodePtr invert_node(const NodePtr& n) {
    if (n->kind == Kind::Inverse) return n->inner[0];
    auto node = std::make_shared<Node>();
    node->kind = Kind::Inverse;
    node->inner = {n};
    return node;
  }

  bool is_identity_node() const {
    return node_->kind == Kind::Finite && node_->entries.empty();
  }

  Perm identity_at(const Word& v) const {
    return Perm::identity(base_.dfa().out_letters(*run(base_.dfa(), v)));
  }

  // The composition rule for portraits: the local permutation of g1*g2 at v
  // is (local of g1 at g2(v)) after (local of g2 at v).
  Perm eval_local(const Node& node, const Word& v) const {
    switch (node.kind) {
      case Kind::Finite: {
        auto it = node.entries.find(v);
        return it != node.entries.end() ? it->second : identity_at(v);
      }
      case Kind::Cone: {
        if (!v.starts_with(node.base_word)) return identity_at(v);
        auto it = node.assign.find(*run(base_.dfa(), v));
        return it != node.assign.end() ? it->second : identity_at(v);
      }
      case Kind::Product: {
        Word u = v;
        Perm acc = identity_at(v);
        for (auto it = node.inner.rbegin(); it != node.inner.rend(); ++it) {
          acc = eval_local(**it, u).compose(acc);
          u = eval_act(**it, u);
        }
        return acc;
      }
      case Kind::Retract:
        return v.starts_with(node.base_word) ? eval_local(*node.inner[0], v) : identity_at(v);
      case Kind::RetractLevel:
        return v.size() >= node.level ? eval_local(*node.inner[0], v) : identity_at(v);
      case Kind::Inverse: {
        Word u = eval_act_inverse(*node.inner[0], v);
        return eval_local(*node.inner[0], u).inverse();
      }
    }
    throw std::logic_error("unreachable portrait kind");
  }

  // sigma(a1...an) = local(e)(a1) local(a1)(a2) ... local(a1..a(n-1))(an).
  Word eval_act(const Node& node, const Word& v) const {
    if (node.kind == Kind::Product) {
      Word u = v;
      for (auto it = node.inner.rbegin(); it != node.inner.rend(); ++it) u = eval_act(**it, u);
      return u;
    }
    if (node.kind == Kind::Inverse) return eval_act_inverse(*node.inner[0], v);
    Word image;
    for (size_t i = 0; i < v.size(); ++i)
      image = image.with(eval_local(node, v.prefix(i)).apply(v[i]));
    return image;
  }

  // Rebuilds u with node(u) = v letter by letter; local permutations are
  // admissible, so the preimage prefix always reaches the same state as the
  // image prefix and the inversion stays inside the language.
  Word eval_act_inverse(const Node& node, const Word& v) const {
    Word u;
    for (size_t i = 0; i < v.size(); ++i)
      u = u.with(eval_local(node, u).inverse().apply(v[i]));
    return u;
  }

  MinimalDfa base_;
  NodePtr node_;
};

/// g1 after g2. Cone-uniform portraits over the same base word merge into a
/// single cone-uniform portrait with state-wise composed permutations;
/// anything else stays a symbolic product.
inline Portrait compose(const Portrait& g1, const Portrait& g2) {
  if (!(g1.base() == g2.base())) fail(Errc::BaseMismatch, "portraits over different automata");
  if (g1.kind() == Portrait::Kind::Cone && g2.kind() == Portrait::Kind::Cone &&
      g1.cone_base() == g2.cone_base()) {
    std::map<std::string, Perm> merged = g1.cone_assign();
    for (const auto& [q, p] : g2.cone_assign()) {
      auto it = merged.find(q);
      if (it == merged.end())
        merged.emplace(q, p);
      else
        it->second = it->second.compose(p);
    }
    return Portrait::cone_uniform(g1.base(), g1.cone_base(), merged);
  }
  return Portrait::product({g1, g2});
}

inline Portrait invert(const Portrait& g) { return g.inverse(); }

/// The basic automorphism g_sigma: the unique lift of the edge automorphism
/// sigma at state q; its portrait carries sigma at every vertex of type q.
inline Portrait basic_automorphism(const MinimalDfa& m, const std::string& q, const Perm& sigma) {
  require_admissible(m, q, sigma);
  return Portrait::cone_uniform(m, Word(), {{q, sigma}});
}

/// g_sigma^w: the retraction of g_sigma into the rigid stabilizer of w.
/// Non-trivial iff sigma is and q is a state of A[q(w)].
inline Portrait basic_at(const MinimalDfa& m, const Word& w, const std::string& q,
                         const Perm& sigma) {
  require_admissible(m, q, sigma);
  return Portrait::cone_uniform(m, w, {{q, sigma}});
}

/// Depth-bounded portrait equality: local permutations agree on every
/// accepted word of length <= n. No infinite-depth equality is offered.
inline bool equal_to_depth(const Portrait& g, const Portrait& h, size_t n) {
  if (!(g.base() == h.base())) return false;
  for (size_t k = 0; k <= n; ++k)
    for (const Word& v : level(g.base().dfa(), k))
      if (!(g.local_permutation(v).perm == h.local_permutation(v).perm)) return false;
  return true;
}

/// Flattens a portrait into finite-support form on words of length <= n.
/// Entries beyond the depth are dropped; the result is a truncation and is
/// marked as such.
struct NormalizedPortrait {
  Portrait portrait;
  size_t depth;
  bool truncated = true;
};

inline NormalizedPortrait normalize_to_depth(const Portrait& g, size_t n) {
  std::map<Word, Perm> entries;
  for (size_t k = 0; k <= n; ++k)
    for (const Word& v : level(g.base().dfa(), k)) {
      Perm p = g.local_permutation(v).perm;
      if (!p.is_identity()) entries.emplace(v, std::move(p));
    }
  return NormalizedPortrait{Portrait::finite_support(g.base(), entries), n, true};
}

/// |Sym^A(n)|: the order of the level-n factor, the product over level-n
/// words of |Sym(q(w))|. Computed from per-state word counts, not by
/// enumerating the level.
inline BigInt level_group_order(const MinimalDfa& m, size_t n) {
  const Multigraph& g = m.graph();
  std::vector<BigInt> count(g.states().size(), 0);
  count[g.state_index(g.root())] = 1;
  for (size_t k = 0; k < n; ++k) {
    std::vector<BigInt> next(g.states().size(), 0);
    for (const Edge& e : g.edges()) {
      const BigInt& c = count[g.state_index(e.src)];
      if (c != 0) next[g.state_index(e.dst)] += c;
    }
    count = std::move(next);
  }
  BigInt order = 1;
  for (size_t i = 0; i < g.states().size(); ++i)
    if (count[i] != 0) order *= pow_big(m.sym(g.states()[i]).order, count[i]);
  return order;
}

/// |Sym^A_{<=n}| = |Aut(T)/Rist(n+1)|: the product of the level orders for
/// levels 0..n.
inline BigInt truncated_order(const MinimalDfa& m, size_t n) {
  BigInt order = 1;
  for (size_t k = 0; k <= n; ++k) order *= level_group_order(m, k);
  return order;
}

/// Finiteness of Aut(T) for the tree of a minimal graph, with the recurrent
/// double edges as witnesses. Aut(T) is infinite (then uncountable) iff some
/// double edge lies on, or is reachable from, a directed cycle.
struct FinitenessResult {
  bool finite = true;
  // One (first, second) edge-id pair per recurrent parallel bucket.
  std::vector<std::pair<std::string, std::string>> witnesses;
};

inline FinitenessResult is_finite(const Multigraph& g) {
  if (!is_connected(g)) fail(Errc::NotConnected, "graph is not connected");
  if (!is_minimal(g)) fail(Errc::NotMinimal, "graph is not geometrically minimal");

  std::set<std::string> after_cycle;
  for (const std::string& q : g.states()) {
    bool on_cycle = false;
    for (size_t ei : g.out_edges(q)) {
      std::vector<std::string> r = reachable_states(g, g.edges()[ei].dst);
      if (std::binary_search(r.begin(), r.end(), q)) {
        on_cycle = true;
        break;
      }
    }
    if (on_cycle)
      for (const std::string& t : reachable_states(g, q)) after_cycle.insert(t);
  }

  std::map<std::pair<std::string, std::string>, std::vector<std::string>> buckets;
  for (const Edge& e : g.edges()) buckets[{e.src, e.dst}].push_back(e.id);
  FinitenessResult result;
  for (const auto& [pair, ids] : buckets)
    if (ids.size() >= 2 && after_cycle.count(pair.first))
      result.witnesses.emplace_back(ids[0], ids[1]);
  result.finite = result.witnesses.empty();
  return result;
}

/// The topological generating set truncated at |w| <= max_len: all triples
/// (w, q, sigma) with sigma a non-identity admissible permutation at a state
/// q of A[q(w)], in deterministic order.
struct Generator {
  Word w;
  std::string q;
  Perm sigma;
};

inline std::vector<Generator> enumerate_generators(const MinimalDfa& m, size_t max_len) {
  std::vector<Generator> out;
  for (size_t k = 0; k <= max_len; ++k)
    for (const Word& w : level(m.dfa(), k)) {
      const std::string& qw = *run(m.dfa(), w);
      for (const std::string& q : m.reachable_from(qw))
        for (const Perm& sigma : enumerate_sym(m, q))
          if (!sigma.is_identity()) out.push_back(Generator{w, q, sigma});
    }
  return out;
}

}  // namespace conetype
