#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "synchrokit/automaton.hpp"
#include "synchrokit/construct.hpp"
#include "synchrokit/dfa_io.hpp"
#include "synchrokit/errors.hpp"
#include "synchrokit/extremal.hpp"
#include "synchrokit/harness.hpp"
#include "synchrokit/power_search.hpp"
#include "synchrokit/structure.hpp"

namespace synchrokit::cli {
namespace {

using nlohmann::json;

constexpr const char* kVersion = "synchrokit 0.1.0";

json states_json(StateSet set) {
  json out = json::array();
  set.for_each([&](State q) { out.push_back(q + 1); });
  return out;
}

std::string join(const std::vector<std::size_t>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? " " : "") << values[i];
  return os.str();
}

/// "{1,3}", "1,3" or "1 3"; 1-based.
StateSet parse_state_set(const Dfa& dfa, std::string text) {
  std::replace_if(text.begin(), text.end(), [](char c) { return c == '{' || c == '}' || c == ','; }, ' ');
  std::istringstream in(text);
  StateSet out;
  long long q = 0;
  while (in >> q) {
    if (q < 1 || static_cast<std::size_t>(q) > dfa.size()) {
      throw std::invalid_argument("state " + std::to_string(q) + " outside 1.." + std::to_string(dfa.size()));
    }
    out.insert(static_cast<State>(q - 1));
  }
  if (!in.eof()) throw std::invalid_argument("malformed state set");
  return out;
}

json certificate_json(const Dfa& dfa, const StructureCertificate& cert) {
  json renumbering = json::array();
  for (State q : cert.renumbering) renumbering.push_back(q + 1);
  json orbit = json::array();
  for (State q : cert.orbit) orbit.push_back(q + 1);
  return {{"renumbering", renumbering},
          {"b", dfa.name(cert.b)},
          {"a", dfa.name(cert.a)},
          {"d", dfa.name(cert.d)},
          {"q", cert.q + 1},
          {"X", orbit},
          {"case_tag", to_string(cert.case_tag)},
          {"a_replaced", cert.a_replaced}};
}

void print_certificate(std::ostream& out, const Dfa& dfa, const StructureCertificate& cert) {
  out << "renumbering =";
  for (std::size_t q = 0; q < cert.renumbering.size(); ++q) out << ' ' << q + 1 << "->" << cert.renumbering[q] + 1;
  out << "\nb = " << dfa.name(cert.b) << ", a = " << dfa.name(cert.a) << ", d = " << dfa.name(cert.d)
      << "\nq = " << cert.q + 1 << "\nX = (";
  for (std::size_t i = 0; i < cert.orbit.size(); ++i) out << (i ? "," : "") << cert.orbit[i] + 1;
  out << ")\ncase = " << to_string(cert.case_tag) << "\na_replaced = " << (cert.a_replaced ? "true" : "false")
      << '\n';
}

json trail_json(const CaseTrail& trail, const Dfa& dfa) {
  json out{{"case", trail.label()}, {"tag", to_string(trail.tag)}, {"subcase", trail.subcase}, {"steps", trail.steps}};
  if (trail.aux_letter) out["aux_letter"] = dfa.name(*trail.aux_letter);
  return out;
}

std::string optional_word(const Dfa& dfa, const std::optional<Word>& w) {
  return w ? format_word(dfa, *w) : std::string("none");
}

json optional_word_json(const Dfa& dfa, const std::optional<Word>& w) {
  return w ? json(format_word(dfa, *w)) : json();
}

/// The reachable part of the power automaton from Q, with the edges along
/// `path` drawn bold.
void write_dot(std::ostream& out, const Dfa& dfa, const Word& path) {
  PowerAutomaton pa(dfa);
  const auto tree = reachable_closure(pa, dfa.states());
  std::vector<std::pair<StateSet, Letter>> bold;
  StateSet cur = dfa.states();
  for (Letter s : path) {
    bold.emplace_back(cur, s);
    cur = pa.image(cur, s);
  }
  out << "digraph power {\n  node [shape=box];\n";
  for (const auto& node : tree.nodes) {
    out << "  s" << node.set.bits() << " [label=\"" << node.set.to_string() << "\"];\n";
  }
  for (const auto& node : tree.nodes) {
    for (Letter s = 0; s < dfa.letter_count(); ++s) {
      const StateSet to = pa.image(node.set, s);
      const bool on_path = std::find(bold.begin(), bold.end(), std::make_pair(node.set, s)) != bold.end();
      out << "  s" << node.set.bits() << " -> s" << to.bits() << " [label=\"" << dfa.name(s) << "\""
          << (on_path ? ", penwidth=2" : "") << "];\n";
    }
  }
  out << "}\n";
}

struct Common {
  std::string file;
  bool json = false;
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

  int run(std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    try {
      app_.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app_.exit(e, out_, err_);
      return code == 0 ? kExitOk : kExitError;
    }
    if (!handler_) {
      err_ << app_.help();
      return kExitError;
    }
    try {
      return handler_();
    } catch (const ParseError& e) {
      err_ << "error: parse error at " << e.what() << '\n';
    } catch (const BudgetExceeded& e) {
      err_ << "error: " << e.what() << '\n';
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
      err_ << "error: " << e.what() << '\n';
    } catch (const std::runtime_error& e) {
      err_ << "error: " << e.what() << '\n';
    }
    return kExitError;
  }

 private:
  CLI::App* verb(const std::string& name, const std::string& description, Common& common, bool needs_file = true) {
    auto* sub = app_.add_subcommand(name, description);
    sub->set_version_flag("--version", kVersion);
    if (needs_file) sub->add_option("file", common.file, "automaton file (text or JSON)")->required();
    sub->add_flag("--json", common.json, "emit JSON");
    return sub;
  }

  void on(CLI::App* sub, std::function<int()> handler) {
    sub->callback([this, handler = std::move(handler)] { handler_ = handler; });
  }

  Dfa load(const Common& common) { return read_dfa_file(common.file); }

  int emit(const json& j) {
    out_ << j.dump(2) << '\n';
    return kExitOk;
  }

  void build() {
    app_.description("Compression words for deterministic automata");
    app_.set_version_flag("--version", kVersion);
    app_.require_subcommand(1);

    {
      auto* sub = verb("rank", "minimal image size and a shortest word reaching it", rank_);
      on(sub, [this] {
        const Dfa dfa = load(rank_);
        const auto r = rank_witness(dfa);
        if (rank_.json) {
          return emit({{"rank", r.final_set.size()},
                       {"witness", format_word(dfa, r.word)},
                       {"witness_length", r.word.size()},
                       {"image", states_json(r.final_set)},
                       {"profile", r.profile}});
        }
        out_ << "rank = " << r.final_set.size() << ", witness length = " << r.word.size() << '\n'
             << "witness = " << format_word(dfa, r.word) << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("compress", "shortest word compressing a set to a target size", compress_.common);
      auto* target = sub->add_option("--target-size", compress_.target_size, "target image size");
      auto* corank = sub->add_option("--corank", compress_.corank, "target corank (n - size)");
      target->excludes(corank);
      sub->add_option("--letters", compress_.letters, "allowed letters, e.g. ab");
      sub->add_option("--max-len", compress_.max_len, "longest word considered");
      sub->add_option("--from", compress_.from, "start set, e.g. {1,3} (default Q)");
      on(sub, [this] { return run_compress(); });
    }
    {
      auto* sub = verb("profile", "image sizes along a word", profile_.common);
      sub->add_option("word", profile_.word, "word over the letter names")->required();
      sub->add_flag("--dot", profile_.dot, "emit the reachable power automaton as DOT");
      on(sub, [this] {
        const Dfa dfa = load(profile_.common);
        const Word w = parse_word(dfa, profile_.word);
        if (profile_.dot) {
          write_dot(out_, dfa, w);
          return kExitOk;
        }
        const auto profile = size_profile(dfa, w);
        if (profile_.common.json) return emit({{"word", format_word(dfa, w)}, {"profile", profile}});
        out_ << "profile = " << join(profile) << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("greedy", "stage-by-stage shortest shrinking words", greedy_.common);
      sub->add_option("--corank", greedy_.corank, "target corank")->required();
      on(sub, [this] {
        const Dfa dfa = load(greedy_.common);
        const auto g = greedy_word(dfa, greedy_.corank);
        if (!g) throw HypothesisFailed("Q cannot be compressed to corank " + std::to_string(greedy_.corank));
        json stages = json::array();
        for (const auto& s : g->stage_words) stages.push_back(format_word(dfa, s));
        const auto profile = size_profile(dfa, g->total);
        if (greedy_.common.json) {
          return emit({{"word", format_word(dfa, g->total)},
                       {"stages", stages},
                       {"stage_lengths", g->stage_lengths},
                       {"profile", profile}});
        }
        out_ << "word = " << format_word(dfa, g->total) << "\nlength = " << g->total.size() << "\nstages =";
        for (const auto& s : g->stage_words) out_ << ' ' << format_word(dfa, s);
        out_ << "\nprofile = " << join(profile) << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("apply", "image of a set under a word", apply_.common);
      sub->add_option("word", apply_.word, "word over the letter names")->required();
      sub->add_option("--from", apply_.from, "start set (default Q)");
      on(sub, [this] {
        const Dfa dfa = load(apply_.common);
        const Word w = parse_word(dfa, apply_.word);
        const StateSet start = apply_.from.empty() ? dfa.states() : parse_state_set(dfa, apply_.from);
        const StateSet image = apply_word(dfa, start, w);
        if (apply_.common.json) return emit({{"word", format_word(dfa, w)}, {"image", states_json(image)}});
        out_ << image.to_string() << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("structure", "corank-2 structure certificate", structure_.common);
      sub->add_flag("--exhaustive-iii", structure_.exhaustive, "check clause (iii) over every subset");
      on(sub, [this] { return run_structure(); });
    }
    {
      auto* sub = verb("classify", "per-letter AD/B1 classification under the certificate", classify_);
      on(sub, [this] {
        const Dfa dfa = load(classify_);
        const auto cert = extract_certificate(dfa);
        const auto classes = classify_pinlem(dfa, cert);
        bool total = true;
        json letters = json::array();
        for (const auto& c : classes) {
          total = total && c.letter_class.has_value();
          letters.push_back({{"letter", dfa.name(c.letter)},
                             {"class", c.letter_class ? json(to_string(*c.letter_class)) : json()}});
        }
        if (classify_.json) {
          emit({{"letters", letters}, {"all_classified", total}, {"certificate", certificate_json(dfa, cert)}});
        } else {
          for (const auto& c : classes) {
            out_ << dfa.name(c.letter) << ": " << (c.letter_class ? to_string(*c.letter_class) : "none") << '\n';
          }
        }
        if (!total) {
          err_ << "error: a letter matches neither letter equation\n";
          return kExitError;
        }
        return kExitOk;
      });
    }
    {
      auto* sub = verb("construct", "corank-3 word from the case construction", construct_);
      on(sub, [this] {
        const Dfa dfa = load(construct_);
        const auto cert = extract_certificate(dfa);
        const auto w = corank3_word(dfa, cert);
        if (construct_.json) {
          return emit({{"word", format_word(dfa, w.word)},
                       {"length", w.word.size()},
                       {"case", w.trail.label()},
                       {"trail", trail_json(w.trail, dfa)},
                       {"image", states_json(w.image)}});
        }
        out_ << "word = " << format_word(dfa, w.word) << "\nlength = " << w.word.size()
             << "\ncase = " << w.trail.label() << "\nimage = " << w.image.to_string() << '\n';
        for (const auto& step : w.trail.steps) out_ << "  " << step << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("extend", "shortest m with |Q w m w| <= n - c", extend_.common);
      sub->add_option("word", extend_.word, "the word w")->required();
      sub->add_option("--corank", extend_.corank, "the corank c")->required();
      on(sub, [this] {
        const Dfa dfa = load(extend_.common);
        const Word w = parse_word(dfa, extend_.word);
        const Word m = pin_extension(dfa, w, extend_.corank);
        const StateSet image = apply_word(dfa, dfa.states(), w + m + w);
        if (extend_.common.json) {
          return emit({{"w", format_word(dfa, w)},
                       {"m", format_word(dfa, m)},
                       {"m_length", m.size()},
                       {"image", states_json(image)}});
        }
        out_ << "m = " << format_word(dfa, m) << "\nlength = " << m.size() << "\nimage = " << image.to_string()
             << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("pipeline", "synchronizing word from bounded stages", pipeline_);
      on(sub, [this] {
        const Dfa dfa = load(pipeline_);
        const auto r = sync_pipeline(dfa);
        json stages = json::array();
        for (const auto& s : r.stages) stages.push_back(format_word(dfa, s));
        if (pipeline_.json) {
          json out{{"word", format_word(dfa, r.word)},
                   {"length", r.word.size()},
                   {"bound", r.bound},
                   {"prefix", format_word(dfa, r.prefix)},
                   {"constructive_prefix", r.constructive_prefix},
                   {"stages", stages},
                   {"final", states_json(r.final_set)}};
          if (r.prefix_trail) out["prefix_case"] = r.prefix_trail->label();
          return emit(out);
        }
        out_ << "word = " << format_word(dfa, r.word) << "\nlength = " << r.word.size() << ", bound = " << r.bound
             << "\nprefix = " << format_word(dfa, r.prefix)
             << (r.prefix_trail ? " (" + r.prefix_trail->label() + ")" : std::string(" (search)")) << "\nstages =";
        for (const auto& s : r.stages) out_ << ' ' << format_word(dfa, s);
        out_ << '\n';
        return kExitOk;
      });
    }
    {
      auto* sub = verb("greedy-conditions", "the four equivalent extremality conditions", conditions_);
      on(sub, [this] { return run_conditions(); });
    }
    {
      auto* sub = verb("extremal", "print the extremal automaton on n states", extremal_.common, false);
      sub->add_option("--n", extremal_.n, "number of states")->required();
      sub->add_flag("--no-identity", extremal_.no_identity, "omit the identity letter");
      on(sub, [this] {
        const Dfa dfa = build_extremal_dfa(extremal_.n, !extremal_.no_identity);
        if (extremal_.common.json) return emit(dfa_to_json(dfa));
        out_ << serialize_dfa(dfa);
        return kExitOk;
      });
    }
    {
      auto* sub = verb("pincor", "check |Q b a^3 b a^3 b| = n-3 when Q b a d b is slow", pincor_);
      on(sub, [this] {
        const Dfa dfa = load(pincor_);
        const auto cert = extract_certificate(dfa);
        const auto r = pincor_check(dfa, cert);
        const std::size_t bound_len = r.shortest_from_badb ? r.shortest_from_badb->size() : 0;
        if (pincor_.json) {
          emit({{"applicable", r.applicable},
                {"holds", r.holds},
                {"shortest_from_badb", optional_word_json(dfa, r.shortest_from_badb)},
                {"shortest_length", r.shortest_from_badb ? json(bound_len) : json()}});
        } else {
          out_ << "applicable = " << (r.applicable ? "true" : "false") << "\nholds = " << (r.holds ? "true" : "false")
               << "\nshortest from Q b a d b = " << optional_word(dfa, r.shortest_from_badb) << '\n';
        }
        return r.holds ? kExitOk : kExitViolations;
      });
    }
    {
      auto* sub = verb("verify", "run a theorem check over a population of automata", verify_.common, false);
      sub->add_option("theorem", verify_.theorem, "theorem id, comma-separated list, all, or list")->required();
      sub->add_option("--n", verify_.n, "number of states");
      sub->add_option("--k", verify_.k, "number of letters");
      auto* exhaustive = sub->add_flag("--exhaustive", verify_.exhaustive, "enumerate every automaton");
      auto* samples = sub->add_option("--samples", verify_.samples, "number of random automata");
      exhaustive->excludes(samples);
      sub->add_option("--seed", verify_.seed, "seed for random sampling");
      sub->add_flag("--canonical", verify_.canonical, "skip non-canonical automata (exhaustive only)");
      sub->add_option("--jobs", verify_.jobs, "worker threads");
      sub->add_option("--budget", verify_.budget, "largest exhaustive population accepted");
      sub->add_option("--pin-length", verify_.pin_length, "longest w tried by the pin check");
      sub->add_flag("--timing", verify_.timing, "include wall time in the report");
      on(sub, [this] { return run_verify(); });
    }
  }

  int run_compress() {
    const Dfa dfa = load(compress_.common);
    const StateSet start = compress_.from.empty() ? dfa.states() : parse_state_set(dfa, compress_.from);
    std::size_t target = 0;
    if (compress_.target_size) {
      target = *compress_.target_size;
    } else if (compress_.corank) {
      if (*compress_.corank >= dfa.size()) throw std::invalid_argument("corank must be below n");
      target = dfa.size() - *compress_.corank;
    } else {
      throw std::invalid_argument("compress needs --target-size or --corank");
    }
    SearchOptions options;
    options.max_len = compress_.max_len;
    if (!compress_.letters.empty()) {
      Word letters = parse_word(dfa, compress_.letters);
      options.allowed_letters = letters.letters();
    }
    const auto result = shortest_compressing_word(dfa, start, target, options);
    if (!result) {
      if (compress_.common.json) emit({{"word", nullptr}, {"target_size", target}});
      err_ << "error: no word takes " << start.to_string() << " to size <= " << target << '\n';
      return kExitError;
    }
    if (compress_.common.json) {
      return emit({{"word", format_word(dfa, result->word)},
                   {"length", result->word.size()},
                   {"final", states_json(result->final_set)},
                   {"profile", result->profile}});
    }
    out_ << "word = " << format_word(dfa, result->word) << "\nlength = " << result->word.size()
         << "\nfinal = " << result->final_set.to_string() << "\nprofile = " << join(result->profile) << '\n';
    return kExitOk;
  }

  int run_structure() {
    const Dfa dfa = load(structure_.common);
    const auto cert = extract_certificate(dfa);
    const auto report = validate_certificate(dfa, cert, structure_.exhaustive);
    json clauses = json::array();
    for (const auto& c : report.clauses) {
      clauses.push_back({{"clause", c.clause}, {"passed", c.passed}, {"detail", c.detail}});
    }
    if (structure_.common.json) {
      emit({{"certificate", certificate_json(dfa, cert)}, {"clauses", clauses}, {"valid", report.all_passed()}});
    } else {
      print_certificate(out_, dfa, cert);
      for (const auto& c : report.clauses) {
        out_ << "clause (" << c.clause << "): " << (c.passed ? "pass" : "FAIL");
        if (!c.detail.empty()) out_ << " - " << c.detail;
        out_ << '\n';
      }
    }
    if (const auto* failure = report.first_failure()) {
      err_ << "error: corank-2 structure clause (" << failure->clause << ") failed\n";
      return kExitError;
    }
    return kExitOk;
  }

  int run_conditions() {
    const Dfa dfa = load(conditions_);
    const auto r = assert_equivalence(dfa);
    json renumbering;
    if (r.renumbering) {
      renumbering = json::array();
      for (State q : *r.renumbering) renumbering.push_back(q + 1);
    }
    if (conditions_.json) {
      emit({{"cond1", r.cond1},
            {"cond2", r.cond2},
            {"cond3", r.cond3},
            {"cond4", r.cond4},
            {"cond2_sharpened", r.cond2_sharpened},
            {"detector_sound", r.detector_sound},
            {"consistent", r.consistent()},
            {"cond1_witness", optional_word_json(dfa, r.cond1_witness)},
            {"cond2_witness", optional_word_json(dfa, r.cond2_witness)},
            {"certificate", r.certificate ? certificate_json(dfa, *r.certificate) : json()},
            {"renumbering", renumbering},
            {"cond4_witness", optional_word_json(dfa, r.cond4_witness)}});
    } else {
      auto b = [](bool v) { return v ? "true" : "false"; };
      out_ << "cond1 = " << b(r.cond1) << " (witness " << optional_word(dfa, r.cond1_witness) << ")\n"
           << "cond2 = " << b(r.cond2) << " (witness " << optional_word(dfa, r.cond2_witness) << ")\n"
           << "cond3 = " << b(r.cond3) << '\n'
           << "cond4 = " << b(r.cond4) << " (witness " << optional_word(dfa, r.cond4_witness) << ")\n"
           << "consistent = " << b(r.consistent()) << '\n';
    }
    if (!r.consistent()) {
      err_ << "error: the greedy conditions disagree\n";
      return kExitViolations;
    }
    return kExitOk;
  }

  int run_verify() {
    if (verify_.theorem == "list") {
      if (verify_.common.json) {
        json names = json::array();
        for (auto id : all_theorem_ids()) names.push_back(to_string(id));
        return emit(names);
      }
      for (auto id : all_theorem_ids()) out_ << to_string(id) << '\n';
      return kExitOk;
    }
    if (!verify_.n || !verify_.k) throw std::invalid_argument("verify needs --n and --k");
    std::vector<TheoremId> ids;
    if (verify_.theorem == "all") {
      ids = all_theorem_ids();
    } else {
      std::istringstream in(verify_.theorem);
      std::string name;
      while (std::getline(in, name, ',')) {
        auto id = parse_theorem_id(name);
        if (!id) throw std::invalid_argument("unknown theorem id '" + name + "'");
        ids.push_back(*id);
      }
    }
    EnumerationScope scope;
    scope.n = *verify_.n;
    scope.k = *verify_.k;
    if (verify_.samples) {
      scope.mode = EnumerationMode::kRandom;
      scope.sample_count = *verify_.samples;
    } else {
      scope.mode = EnumerationMode::kExhaustive;
    }
    scope.seed = verify_.seed;
    scope.canonical_filter = verify_.canonical;
    if (verify_.budget) scope.budget = *verify_.budget;
    scope.pin_word_length = verify_.pin_length;
    RunOptions options;
    options.jobs = verify_.jobs;

    const auto reports = run_checks(ids, scope, options);
    std::uint64_t violations = 0;
    for (const auto& r : reports) violations += r.violation_count;
    if (verify_.common.json) {
      if (reports.size() == 1) {
        emit(to_json(reports.front(), verify_.timing));
      } else {
        json all = json::array();
        for (const auto& r : reports) all.push_back(to_json(r, verify_.timing));
        emit(all);
      }
    } else {
      for (const auto& r : reports) {
        out_ << to_string(r.theorem) << ": checked " << r.checked_count << ", applicable " << r.applicable_count
             << ", violations " << r.violation_count;
        if (verify_.timing) out_ << ", time " << r.wall_time_seconds << " s";
        out_ << '\n';
        for (const auto& c : r.counterexamples) {
          out_ << "  counterexample: " << c.detail.dump() << '\n';
          std::istringstream lines(c.dfa);
          for (std::string line; std::getline(lines, line);) out_ << "    " << line << '\n';
        }
      }
    }
    return violations > 0 ? kExitViolations : kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"synchrokit"};
  std::function<int()> handler_;

  Common rank_, classify_, construct_, pipeline_, conditions_, pincor_;
  struct {
    Common common;
    std::optional<std::size_t> target_size, corank, max_len;
    std::string letters, from;
  } compress_;
  struct {
    Common common;
    std::string word;
    bool dot = false;
  } profile_;
  struct {
    Common common;
    std::size_t corank = 1;
  } greedy_;
  struct {
    Common common;
    std::string word, from;
  } apply_;
  struct {
    Common common;
    bool exhaustive = false;
  } structure_;
  struct {
    Common common;
    std::string word;
    std::size_t corank = 1;
  } extend_;
  struct {
    Common common;
    std::size_t n = 5;
    bool no_identity = false;
  } extremal_;
  struct {
    Common common;
    std::string theorem;
    std::optional<std::size_t> n, k;
    std::size_t jobs = 1, pin_length = 6;
    bool exhaustive = false, canonical = false, timing = false;
    std::optional<std::uint64_t> samples, budget;
    std::uint64_t seed = 0;
  } verify_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  return cli.run(args);
}

}  // namespace synchrokit::cli
