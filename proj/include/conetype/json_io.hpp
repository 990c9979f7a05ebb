#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conetype/dfa.hpp"
#include "conetype/error.hpp"
#include "conetype/general_portrait.hpp"
#include "conetype/minimal_dfa.hpp"
#include "conetype/minimize.hpp"
#include "conetype/morphism.hpp"
#include "conetype/multigraph.hpp"
#include "conetype/portrait.hpp"
#include "conetype/word.hpp"

namespace conetype {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- words ----

/// Parses a word from a string. Space-separated tokens take precedence; a
/// plain string is split per character when every alphabet letter is a
/// single character, and by greedy longest-match against the alphabet
/// otherwise.
inline Word parse_word(const std::vector<std::string>& alphabet, const std::string& s) {
  auto known = [&](const std::string& a) {
    return std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
  };
  std::vector<std::string> letters;
  if (s.find(' ') != std::string::npos) {
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) letters.push_back(tok);
  } else if (!s.empty()) {
    bool single = std::all_of(alphabet.begin(), alphabet.end(),
                              [](const std::string& a) { return a.size() == 1; });
    if (single) {
      for (char c : s) letters.emplace_back(1, c);
    } else {
      std::vector<std::string> sorted = alphabet;  // longest first, then lexicographic
      std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
      });
      std::vector<std::string> out;
      auto match = [&](auto&& self, size_t pos) -> bool {
        if (pos == s.size()) return true;
        for (const std::string& a : sorted) {
          if (s.compare(pos, a.size(), a) == 0) {
            out.push_back(a);
            if (self(self, pos + a.size())) return true;
            out.pop_back();
          }
        }
        return false;
      };
      if (!match(match, 0))
        fail(Errc::ParseError, "cannot tokenize '" + s + "' over the alphabet");
      letters = std::move(out);
    }
  }
  for (const std::string& a : letters)
    if (!known(a)) fail(Errc::LetterNotInAlphabet, "letter '" + a + "'");
  return Word(std::move(letters));
}

inline std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  bool single = std::all_of(alphabet.begin(), alphabet.end(),
                            [](const std::string& a) { return a.size() == 1; });
  return w.joined(single ? "" : " ");
}

// ------------------------------------------------------------- automata ----

inline Dfa automaton_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("states") || !j.contains("root") || !j.contains("edges"))
    fail(Errc::ParseError, "automaton needs 'states', 'root' and 'edges'");
  std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
  std::string root = j.at("root").get<std::string>();
  std::vector<Edge> edges;
  std::map<std::string, std::string> labels;
  size_t labelled = 0;
  for (const Json& je : j.at("edges")) {
    Edge e{je.at("id").get<std::string>(), je.at("src").get<std::string>(),
           je.at("dst").get<std::string>()};
    if (je.contains("label")) {
      labels[e.id] = je.at("label").get<std::string>();
      ++labelled;
    }
    edges.push_back(std::move(e));
  }
  if (labelled != 0 && labelled != edges.size())
    fail(Errc::ParseError, "either all edges carry labels or none");

  Multigraph g(std::move(states), std::move(root), std::move(edges));
  if (labelled == 0 && !g.edges().empty() && !j.contains("alphabet")) return canonical_labelling(g);
  if (labelled == 0 && !g.edges().empty())
    fail(Errc::ParseError, "an alphabet was given but the edges are unlabelled");

  std::vector<std::string> alphabet;
  if (j.contains("alphabet")) {
    alphabet = j.at("alphabet").get<std::vector<std::string>>();
  } else {
    for (const auto& [id, a] : labels) alphabet.push_back(a);
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }
  if (alphabet.empty()) alphabet.push_back("e0");
  return Dfa(std::move(g), std::move(alphabet), std::move(labels));
}

inline Json automaton_to_json(const Dfa& dfa) {
  Json j;
  j["alphabet"] = dfa.alphabet();
  j["states"] = dfa.graph().states();
  j["root"] = dfa.graph().root();
  Json edges = Json::array();
  for (const Edge& e : dfa.graph().edges()) {  // canonical id order
    Json je;
    je["id"] = e.id;
    je["src"] = e.src;
    je["label"] = dfa.label(e.id);
    je["dst"] = e.dst;
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

// ------------------------------------------------------------ morphisms ----

inline GraphMorphism morphism_from_json(const Json& j, Multigraph source, Multigraph target) {
  if (!j.is_object() || !j.contains("vertex_map") || !j.contains("edge_map"))
    fail(Errc::ParseError, "morphism needs 'vertex_map' and 'edge_map'");
  GraphMorphism m{std::move(source), std::move(target), {}, {}};
  for (const auto& [k, v] : j.at("vertex_map").items()) m.vertex_map[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("edge_map").items()) m.edge_map[k] = v.get<std::string>();
  return m;
}

inline Json morphism_to_json(const GraphMorphism& m) {
  Json j;
  j["vertex_map"] = Json::object();
  for (const auto& [k, v] : m.vertex_map) j["vertex_map"][k] = v;
  j["edge_map"] = Json::object();
  for (const auto& [k, v] : m.edge_map) j["edge_map"][k] = v;
  return j;
}

inline Json minimization_to_json(const MinimizationResult& mr) {
  Json j;
  j["quotient"] = automaton_to_json(canonical_labelling(mr.quotient));
  j["projection"] = morphism_to_json(mr.projection);
  j["classes"] = mr.classes.blocks;
  j["reduced_input"] = mr.reduced_input;
  return j;
}

// ------------------------------------------------------------ portraits ----

inline std::vector<std::vector<std::string>> cycles_from_json(const Json& j) {
  std::vector<std::vector<std::string>> cycles;
  if (!j.is_array()) fail(Errc::ParseError, "cycle notation must be a list of cycles");
  for (const Json& jc : j) cycles.push_back(jc.get<std::vector<std::string>>());
  return cycles;
}

inline Portrait portrait_from_json(const Json& j, const MinimalDfa& base) {
  if (!j.is_object() || !j.contains("kind")) fail(Errc::ParseError, "portrait needs a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  const Dfa& dfa = base.dfa();
  if (kind == "finite") {
    std::map<Word, Perm> entries;
    for (const Json& je : j.value("entries", Json::array())) {
      Word v = parse_word(dfa.alphabet(), je.at("vertex").get<std::string>());
      auto q = run(dfa, v);
      if (!q) fail(Errc::WordNotAccepted, "'" + je.at("vertex").get<std::string>() + "'");
      entries.emplace(std::move(v),
                      Perm::from_cycles(dfa.out_letters(*q), cycles_from_json(je.at("perm"))));
    }
    return Portrait::finite_support(base, entries);
  }
  if (kind == "cone") {
    Word w = parse_word(dfa.alphabet(), j.value("base", std::string()));
    std::map<std::string, Perm> assign;
    for (const auto& [q, jc] : j.value("assign", Json::object()).items())
      assign.emplace(q, Perm::from_cycles(dfa.out_letters(q), cycles_from_json(jc)));
    return Portrait::cone_uniform(base, std::move(w), assign);
  }
  if (kind == "product") {
    std::vector<Portrait> factors;
    for (const Json& jf : j.value("factors", Json::array()))
      factors.push_back(portrait_from_json(jf, base));
    if (factors.empty()) return Portrait::identity(base);
    return Portrait::product(factors);
  }
  fail(Errc::ParseError, "unknown portrait kind '" + kind + "'");
}

inline Json portrait_to_json(const Portrait& g) {
  const std::vector<std::string>& alphabet = g.base().dfa().alphabet();
  switch (g.kind()) {
    case Portrait::Kind::Finite: {
      Json j;
      j["kind"] = "finite";
      Json entries = Json::array();
      for (const auto& [v, p] : g.finite_entries()) {
        Json je;
        je["vertex"] = format_word(alphabet, v);
        je["perm"] = p.cycles();
        entries.push_back(std::move(je));
      }
      j["entries"] = std::move(entries);
      return j;
    }
    case Portrait::Kind::Cone: {
      Json j;
      j["kind"] = "cone";
      j["base"] = format_word(alphabet, g.cone_base());
      j["assign"] = Json::object();
      for (const auto& [q, p] : g.cone_assign()) j["assign"][q] = p.cycles();
      return j;
    }
    case Portrait::Kind::Product: {
      Json j;
      j["kind"] = "product";
      Json factors = Json::array();
      for (const Portrait& f : g.factors()) factors.push_back(portrait_to_json(f));
      j["factors"] = std::move(factors);
      return j;
    }
    default:
      throw std::logic_error("only finite, cone and product portraits serialize; normalize first");
  }
}

/// General portraits accept either explicit injections ("inj": {"a": "b"})
/// or cycle notation over Sigma(q(vertex)) as a shorthand for bijections.
inline GeneralPortrait general_portrait_from_json(const Json& j, const Dfa& dfa) {
  if (!j.is_object()) fail(Errc::ParseError, "portrait must be an object");
  const std::string kind = j.value("kind", std::string("general"));
  if (kind != "general" && kind != "finite")
    fail(Errc::ParseError, "general portrait kind must be 'general' or 'finite'");
  std::map<Word, GeneralPortrait::Injection> local;
  for (const Json& je : j.value("entries", Json::array())) {
    Word v = parse_word(dfa.alphabet(), je.at("vertex").get<std::string>());
    auto q = run(dfa, v);
    if (!q) fail(Errc::WordNotAccepted, "'" + je.at("vertex").get<std::string>() + "'");
    GeneralPortrait::Injection inj;
    if (je.contains("inj")) {
      for (const auto& [a, b] : je.at("inj").items()) inj[a] = b.get<std::string>();
    } else if (je.contains("perm")) {
      Perm p = Perm::from_cycles(dfa.out_letters(*q), cycles_from_json(je.at("perm")));
      for (const std::string& a : p.domain()) inj[a] = p.apply(a);
    } else {
      fail(Errc::ParseError, "entry needs 'inj' or 'perm'");
    }
    local.emplace(std::move(v), std::move(inj));
  }
  return GeneralPortrait(dfa, std::move(local));
}

// ---------------------------------------------------------------- files ----

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, "'" + path + "': " + e.what());
  }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace conetype
