#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "conetype/dfa.hpp"
#include "conetype/error.hpp"
#include "conetype/minimize.hpp"
#include "conetype/morphism.hpp"
#include "conetype/portrait.hpp"
#include "conetype/word.hpp"

namespace conetype {

/// The fiber alphabet Sigma': one letter per quotient edge, whose members are
/// the original edges in the covering fiber over it. The fibers partition the
/// original edge set.
struct QuotientAlphabet {
  std::vector<std::string> letters;                          // sorted
  std::map<std::string, std::string> fiber_of;               // original edge id -> letter
  std::map<std::string, std::vector<std::string>> members;   // letter -> original edge ids
  std::map<std::string, std::string> quotient_edge_of;       // letter -> quotient edge id
};

struct EdgeTriple {
  std::string src;
  std::string label;
  std::string dst;
};

inline std::vector<EdgeTriple> member_triples(const QuotientAlphabet& qa, const Dfa& original,
                                              const std::string& letter) {
  auto it = qa.members.find(letter);
  if (it == qa.members.end()) fail(Errc::LetterNotInAlphabet, "fiber '" + letter + "'");
  std::vector<EdgeTriple> out;
  for (const std::string& id : it->second) {
    const Edge& e = original.graph().edge(id);
    out.push_back(EdgeTriple{e.src, original.label(id), e.dst});
  }
  return out;
}

/// The geometric minimization of a DFA: the minimal covering quotient,
/// labelled over the fiber alphabet, plus the covering morphism that defines
/// the fibers. The original automaton is kept around for path pushing and
/// lifting.
struct MinimizedLabelled {
  Dfa original;        // reduced if the input was not connected
  Dfa quotient_dfa;    // geometrically minimal, labelled over the fiber alphabet
  GraphMorphism covering;
  QuotientAlphabet qalpha;
  bool reduced_input = false;
};

namespace detail {

// Root class gets prefix "a", the remaining classes get "b", "c", ... in
// canonical class order.
inline std::string fiber_prefix(size_t nonroot_rank) {
  if (nonroot_rank <= 25) return std::string(1, static_cast<char>('a' + nonroot_rank));
  return "z" + std::to_string(nonroot_rank) + "_";
}

}  // namespace detail

inline MinimizedLabelled geometric_minimization(const Dfa& input) {
  validate(input);
  bool reduced = !is_connected(input.graph());
  Dfa original = reduced ? reachable_closure(input, input.graph().root()) : input;

  MinimizationResult mr = minimal_quotient(original.graph());
  const Multigraph& q = mr.quotient;

  QuotientAlphabet qa;
  std::map<std::string, std::string> quotient_labels;  // quotient edge id -> letter
  size_t nonroot_rank = 0;
  for (const std::string& cls : q.states()) {
    std::string prefix = cls == q.root() ? "a" : detail::fiber_prefix(++nonroot_rank);
    size_t k = 0;
    for (size_t ei : q.out_edges(cls)) {
      const std::string& qe = q.edges()[ei].id;
      std::string letter = prefix + std::to_string(k++);
      quotient_labels[qe] = letter;
      qa.letters.push_back(letter);
      qa.quotient_edge_of[letter] = qe;
      qa.members[letter] = {};
    }
  }
  std::sort(qa.letters.begin(), qa.letters.end());
  for (const Edge& e : original.graph().edges()) {
    const std::string& letter = quotient_labels.at(mr.projection.edge_map.at(e.id));
    qa.fiber_of[e.id] = letter;
    qa.members[letter].push_back(e.id);  // edges() is id-sorted
  }

  Dfa quotient_dfa(q, qa.letters, std::move(quotient_labels));
  return MinimizedLabelled{std::move(original), std::move(quotient_dfa), std::move(mr.projection),
                           std::move(qa), reduced};
}

/// Path pushing P: reads w through the original automaton and records the
/// fiber of each traversed edge.
inline Word push_word(const MinimizedLabelled& ml, const Word& w) {
  std::string q = ml.original.graph().root();
  Word out;
  for (const std::string& a : w) {
    auto ei = ml.original.step_edge(q, a);
    if (!ei) fail(Errc::WordNotAccepted, "'" + w.joined(" ") + "'");
    const Edge& e = ml.original.graph().edges()[*ei];
    out = out.with(ml.qalpha.fiber_of.at(e.id));
    q = e.dst;
  }
  return out;
}

/// Path lifting P^{-1}: scans the fiber word, at each step selecting the
/// unique member edge whose source is the current original state.
inline Word lift_word(const MinimizedLabelled& ml, const Word& wq) {
  std::string q = ml.original.graph().root();
  Word out;
  for (const std::string& f : wq) {
    auto it = ml.qalpha.members.find(f);
    if (it == ml.qalpha.members.end()) fail(Errc::LetterNotInAlphabet, "fiber '" + f + "'");
    const Edge* chosen = nullptr;
    for (const std::string& id : it->second) {
      const Edge& e = ml.original.graph().edge(id);
      if (e.src == q) {
        if (chosen) throw std::logic_error("fiber has two members at one source");
        chosen = &e;
      }
    }
    if (!chosen) fail(Errc::WordNotAccepted, "'" + wq.joined(" ") + "'");
    out = out.with(ml.original.label(chosen->id));
    q = chosen->dst;
  }
  return out;
}

/// The action of Aut(T) on the original language, conjugated through the
/// fiber alphabet: sigma(w) = P^{-1}(sigma(P(w))).
inline Word act_on_original(const MinimizedLabelled& ml, const Portrait& g, const Word& w) {
  if (!(g.base().dfa() == ml.quotient_dfa))
    fail(Errc::BaseMismatch, "portrait is not over this geometric minimization");
  return lift_word(ml, g.act(push_word(ml, w)));
}

}  // namespace conetype
