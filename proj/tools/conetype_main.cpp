// conetype: a command-line front end for self-similar tree automata.
//
// Exit codes: 0 success, 1 domain/input errors (JSON error object on stderr),
// 2 usage errors.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conetype/conetype.hpp"

using namespace conetype;

namespace {

struct Options {
  std::string automaton;
  std::string portrait;
  std::string word;
  long level = -1;
  long depth = -1;
  long max_len = 0;
  bool plain = false;
  bool strict = false;
  bool trace = false;
  std::vector<std::string> states;  // positional, for cone-eq
};

Dfa load_automaton_file(const std::string& path) {
  return automaton_from_json(load_json_file(path));
}

void emit(const Options& opt, const Json& j, const std::string& plain_text) {
  if (opt.plain)
    std::cout << plain_text << "\n";
  else
    std::cout << dump_json(j);
}

// Commands that need a geometrically minimal automaton accept any automaton
// and minimize it first; --strict turns that into an error instead.
struct MinimalInput {
  MinimalDfa dfa;
  bool minimized = false;
  std::optional<Json> quotient_used;
};

MinimalInput minimal_input(const Dfa& input, bool strict) {
  Dfa reduced = is_connected(input.graph()) ? input : reachable_closure(input, input.graph().root());
  if (is_minimal(reduced.graph())) return {MinimalDfa::wrap(reduced), false, std::nullopt};
  if (strict) fail(Errc::NotMinimal, "input automaton is not geometrically minimal");
  MinimizedLabelled ml = geometric_minimization(input);
  Json used = automaton_to_json(ml.quotient_dfa);
  return {MinimalDfa::wrap(ml.quotient_dfa), true, used};
}

void attach_minimization_note(Json& j, const MinimalInput& mi) {
  j["minimized"] = mi.minimized;
  if (mi.quotient_used) j["quotient_used"] = *mi.quotient_used;
}

int run_validate(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  validate(dfa);
  Json j;
  j["ok"] = true;
  emit(opt, j, "ok");
  return 0;
}

int run_minimize(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  validate(dfa);
  Json j = minimization_to_json(minimal_quotient(dfa.graph()));
  emit(opt, j, dump_json(j));
  return 0;
}

int run_classical_minimize(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  Json j = automaton_to_json(classical_minimize(dfa));
  emit(opt, j, dump_json(j));
  return 0;
}

int run_is_minimal(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  validate(dfa);
  Dfa reduced =
      is_connected(dfa.graph()) ? dfa : reachable_closure(dfa, dfa.graph().root());
  bool minimal = is_minimal(reduced.graph());
  Json j;
  j["minimal"] = minimal;
  emit(opt, j, minimal ? "true" : "false");
  return 0;
}

int run_is_finite(const Options& opt) {
  MinimalInput mi = minimal_input(load_automaton_file(opt.automaton), opt.strict);
  FinitenessResult r = is_finite(mi.dfa.graph());
  Json j;
  j["finite"] = r.finite;
  Json w = Json::array();
  for (const auto& [e1, e2] : r.witnesses) w.push_back(Json::array({e1, e2}));
  j["witnesses"] = std::move(w);
  attach_minimization_note(j, mi);
  emit(opt, j, r.finite ? "true" : "false");
  return 0;
}

int run_order(const Options& opt) {
  if (opt.level < 0) fail(Errc::ParseError, "--level is required");
  MinimalInput mi = minimal_input(load_automaton_file(opt.automaton), opt.strict);
  BigInt order = truncated_order(mi.dfa, static_cast<size_t>(opt.level));
  Json j;
  j["level"] = opt.level;
  j["order"] = order.str();
  Json per_level = Json::array();
  for (long k = 0; k <= opt.level; ++k)
    per_level.push_back(level_group_order(mi.dfa, static_cast<size_t>(k)).str());
  j["level_orders"] = std::move(per_level);
  attach_minimization_note(j, mi);
  emit(opt, j, order.str());
  return 0;
}

int run_levels(const Options& opt) {
  if (opt.level < 0) fail(Errc::ParseError, "--level is required");
  Dfa dfa = load_automaton_file(opt.automaton);
  validate(dfa);
  std::vector<Word> words = level(dfa, static_cast<size_t>(opt.level));
  Json j;
  j["level"] = opt.level;
  Json list = Json::array();
  std::string plain;
  for (const Word& w : words) {
    std::string s = format_word(dfa.alphabet(), w);
    list.push_back(s);
    plain += s + "\n";
  }
  if (!plain.empty()) plain.pop_back();
  j["words"] = std::move(list);
  emit(opt, j, plain);
  return 0;
}

int run_generators(const Options& opt) {
  MinimalInput mi = minimal_input(load_automaton_file(opt.automaton), opt.strict);
  std::vector<Generator> gens = enumerate_generators(mi.dfa, static_cast<size_t>(opt.max_len));
  const auto& alphabet = mi.dfa.dfa().alphabet();
  Json j;
  j["max_len"] = opt.max_len;
  j["count"] = gens.size();
  Json list = Json::array();
  std::string plain;
  for (const Generator& g : gens) {
    Json jg;
    jg["word"] = format_word(alphabet, g.w);
    jg["state"] = g.q;
    jg["perm"] = g.sigma.cycles();
    list.push_back(std::move(jg));
    plain += format_word(alphabet, g.w) + "\t" + g.q + "\t" + Json(g.sigma.cycles()).dump() + "\n";
  }
  if (!plain.empty()) plain.pop_back();
  j["generators"] = std::move(list);
  attach_minimization_note(j, mi);
  emit(opt, j, plain);
  return 0;
}

int run_verify_portrait(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  validate(dfa);
  GeneralPortrait gp = general_portrait_from_json(load_json_file(opt.portrait), dfa);
  size_t depth = opt.depth < 0 ? 6 : static_cast<size_t>(opt.depth);
  GeneralPortraitCheck r = check_general_portrait(gp, depth);
  Json j;
  j["ok"] = r.ok;
  j["depth"] = depth;
  if (!r.ok) {
    j["offending"] = format_word(dfa.alphabet(), *r.offending);
    j["reason"] = r.reason;
  }
  emit(opt, j, r.ok ? "true" : "false");
  return 0;
}

int run_act(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  MinimizedLabelled ml = geometric_minimization(dfa);
  MinimalDfa m = MinimalDfa::wrap(ml.quotient_dfa);
  Portrait g = portrait_from_json(load_json_file(opt.portrait), m);
  Word w = parse_word(ml.original.alphabet(), opt.word);

  Word pushed = push_word(ml, w);
  Word moved = g.act(pushed);
  Word image = lift_word(ml, moved);

  const auto& sigma = ml.quotient_dfa.alphabet();
  Json j;
  j["word"] = format_word(ml.original.alphabet(), w);
  j["image"] = format_word(ml.original.alphabet(), image);
  if (opt.trace) {
    Json t;
    t["pushed"] = format_word(sigma, pushed);
    t["moved"] = format_word(sigma, moved);
    t["lifted"] = format_word(ml.original.alphabet(), image);
    j["trace"] = std::move(t);
  }
  std::string plain;
  if (opt.trace) {
    plain += "Step 1: P(" + format_word(ml.original.alphabet(), w) + ") = " +
             format_word(sigma, pushed) + "\n";
    plain += "Step 2: sigma'(" + format_word(sigma, pushed) + ") = " + format_word(sigma, moved) +
             "\n";
    plain += "Step 3: P^-1(" + format_word(sigma, moved) + ") = " +
             format_word(ml.original.alphabet(), image) + "\n";
  }
  plain += format_word(ml.original.alphabet(), image);
  emit(opt, j, plain);
  return 0;
}

int run_push(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  MinimizedLabelled ml = geometric_minimization(dfa);
  Word w = parse_word(ml.original.alphabet(), opt.word);
  Word pushed = push_word(ml, w);
  Json j;
  j["word"] = format_word(ml.original.alphabet(), w);
  j["pushed"] = format_word(ml.quotient_dfa.alphabet(), pushed);
  emit(opt, j, format_word(ml.quotient_dfa.alphabet(), pushed));
  return 0;
}

int run_lift(const Options& opt) {
  Dfa dfa = load_automaton_file(opt.automaton);
  MinimizedLabelled ml = geometric_minimization(dfa);
  Word wq = parse_word(ml.quotient_dfa.alphabet(), opt.word);
  Word lifted = lift_word(ml, wq);
  Json j;
  j["word"] = format_word(ml.quotient_dfa.alphabet(), wq);
  j["lifted"] = format_word(ml.original.alphabet(), lifted);
  emit(opt, j, format_word(ml.original.alphabet(), lifted));
  return 0;
}

int run_cone_eq(const Options& opt) {
  if (opt.states.size() != 2) fail(Errc::ParseError, "cone-eq needs two states");
  Dfa dfa = load_automaton_file(opt.automaton);
  size_t depth = opt.depth < 0 ? 0 : static_cast<size_t>(opt.depth);
  bool eq = cone_equivalent(dfa.graph(), opt.states[0], opt.states[1], depth);
  Json j;
  j["equivalent"] = eq;
  j["depth"] = depth;
  emit(opt, j, eq ? "true" : "false");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-similar trees, geometric minimization and Aut(T) portraits"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_automaton = true) {
    auto* a = cmd->add_option("--automaton", opt.automaton, "automaton JSON file");
    if (needs_automaton) a->required();
    cmd->add_flag("--plain", opt.plain, "plain text output instead of JSON");
    return cmd;
  };

  int (*handler)(const Options&) = nullptr;
  auto set = [&](int (*h)(const Options&)) {
    return [&handler, h]() { handler = h; };
  };

  add_common(app.add_subcommand("validate", "check the DFA invariants"))
      ->callback(set(run_validate));
  add_common(app.add_subcommand("minimize", "geometric minimal quotient, covering and classes"))
      ->callback(set(run_minimize));
  add_common(app.add_subcommand("classical-minimize", "labelled Myhill-Nerode minimization"))
      ->callback(set(run_classical_minimize));
  add_common(app.add_subcommand("is-minimal", "test geometric minimality"))
      ->callback(set(run_is_minimal));

  CLI::App* fin = add_common(app.add_subcommand("is-finite", "finiteness of Aut(T)"));
  fin->add_flag("--strict", opt.strict, "fail instead of auto-minimizing");
  fin->callback(set(run_is_finite));

  CLI::App* ord = add_common(app.add_subcommand("order", "|Aut(T)/Rist(n+1)| at --level n"));
  ord->add_option("--level", opt.level, "level n")->required();
  ord->add_flag("--strict", opt.strict, "fail instead of auto-minimizing");
  ord->callback(set(run_order));

  CLI::App* lv = add_common(app.add_subcommand("levels", "accepted words of length --level"));
  lv->add_option("--level", opt.level, "word length")->required();
  lv->callback(set(run_levels));

  CLI::App* gen = add_common(app.add_subcommand("generators", "basic generators up to --max-len"));
  gen->add_option("--max-len", opt.max_len, "maximal base word length");
  gen->add_flag("--strict", opt.strict, "fail instead of auto-minimizing");
  gen->callback(set(run_generators));

  CLI::App* vp = add_common(app.add_subcommand("verify-portrait", "check a general portrait"));
  vp->add_option("--portrait", opt.portrait, "portrait JSON file")->required();
  vp->add_option("--depth", opt.depth, "check depth (default 6)");
  vp->callback(set(run_verify_portrait));

  CLI::App* act = add_common(app.add_subcommand("act", "apply a portrait to a word"));
  act->add_option("--portrait", opt.portrait, "portrait JSON over the minimization")->required();
  act->add_option("--word", opt.word, "input word")->required();
  act->add_flag("--trace", opt.trace, "include the push/move/lift trace");
  act->callback(set(run_act));

  CLI::App* push = add_common(app.add_subcommand("push", "path pushing P(w)"));
  push->add_option("--word", opt.word, "word over the original alphabet")->required();
  push->callback(set(run_push));

  CLI::App* lift = add_common(app.add_subcommand("lift", "path lifting P^-1(w')"));
  lift->add_option("--word", opt.word, "word over the fiber alphabet")->required();
  lift->callback(set(run_lift));

  CLI::App* ce = add_common(app.add_subcommand("cone-eq", "depth-bounded cone equivalence"));
  ce->add_option("--depth", opt.depth, "cone depth")->required();
  ce->add_option("states", opt.states, "two states")->expected(2);
  ce->callback(set(run_cone_eq));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    return handler(opt);
  } catch (const Error& e) {
    Json err;
    err["error"] = std::string(errc_name(e.code()));
    err["message"] = e.what();
    std::cerr << dump_json(err);
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "InternalError";
    err["message"] = e.what();
    std::cerr << dump_json(err);
    return 1;
  }
}
