#include "synchrokit/construct.hpp"

#include <algorithm>

#include "synchrokit/errors.hpp"
#include "synchrokit/power_search.hpp"

namespace synchrokit {
namespace {

constexpr State kOne = 0;
constexpr State kTwo = 1;
constexpr State kThree = 2;

std::string label(State s) { return std::to_string(static_cast<int>(s) + 1); }

StateSet pair(State x, State y) { return StateSet::singleton(x).with(y); }

std::string pair_label(State x, State y) { return "{" + label(x) + "," + label(y) + "}"; }

/// Preimage of `target` under a permutation letter.
State preimage(const Dfa& view, Letter s, State target) {
  for (State x = 0; x < view.size(); ++x) {
    if (view.next(x, s) == target) return x;
  }
  throw ConstructionContradiction("letter " + view.name(s) + " is not a permutation");
}

struct PairRoute {
  StateSet pair;
  Word suffix;
  std::string description;
};

/// Returns the first route whose pair lies inside `set`.
const PairRoute* first_route(const std::vector<PairRoute>& routes, StateSet set) {
  for (const auto& route : routes) {
    if (set.contains_all(route.pair)) return &route;
  }
  return nullptr;
}

class Builder {
 public:
  explicit Builder(const Dfa& view) : view_(view) {}

  StateSet image(const Word& w) const { return apply_word(view_, view_.states(), w); }
  std::string show(const Word& w) const { return format_word(view_, w); }

  /// Appends the suffix of the first matching route to `prefix`.
  Word finish(const Word& prefix, StateSet reached, const std::vector<PairRoute>& routes,
              CaseTrail& trail) const {
    const PairRoute* route = first_route(routes, reached);
    if (!route) {
      throw ConstructionContradiction(to_string(trail.tag) + ": none of the expected pairs lies in " +
                                      reached.to_string());
    }
    trail.steps.push_back(route->description + " in " + reached.to_string() + ", append " +
                          show(route->suffix));
    return prefix + route->suffix;
  }

 private:
  const Dfa& view_;
};

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::kI: return "CASE_I";
    case CaseTag::kII: return "CASE_II";
    case CaseTag::kIII: return "CASE_III";
    case CaseTag::kIV: return "CASE_IV";
  }
  return "CASE_?";
}

std::string CaseTrail::label() const {
  return subcase.empty() ? to_string(tag) : to_string(tag) + "/" + subcase;
}

Word corank2_word(const StructureCertificate& cert) { return Word{cert.b, cert.a, cert.d, cert.b}; }

Corank3Witness corank3_word(const Dfa& dfa, const StructureCertificate& cert) {
  auto report = validate_certificate(dfa, cert);
  if (const auto* failure = report.first_failure()) {
    throw HypothesisFailed("certificate does not validate: clause (" + failure->clause + ") " + failure->detail);
  }
  const std::size_t n = dfa.size();
  {
    PowerAutomaton pa(dfa);
    if (n < 4 || summarize_reach(pa, dfa.states()).min_size > n - 3) {
      throw HypothesisFailed("Q cannot be compressed to size n-3");
    }
  }

  const Dfa view = certified_view(dfa, cert);
  const Builder build(view);
  const Letter a = cert.a;
  const Letter b = cert.b;
  const Letter d = cert.d;
  const Word badb{b, a, d, b};
  const std::size_t orbit = cert.orbit.size();

  CaseTrail trail;
  Word word;

  if (orbit >= 4) {
    trail.tag = CaseTag::kI;
    // Orbit of a read backwards from 1: r -> three -> four -> 1.
    const State four = preimage(view, a, kOne);
    const State three = preimage(view, a, four);
    const State r = preimage(view, a, three);
    const State qb = view.next(cert.q, b);
    Word prefix;
    if (qb != three) {
      trail.subcase = "qb!=3";
      prefix = badb;
    } else {
      trail.subcase = "qb=3";
      prefix = Word{b, a, a, a, b};
    }
    StateSet reached = build.image(prefix);
    trail.steps.push_back("R = Q." + build.show(prefix) + " = " + reached.to_string());
    std::vector<PairRoute> routes{
        {pair(r, three), Word{a, a, a, b}, "{r,3} = " + pair_label(r, three)},
        {pair(three, four), Word{a, a, b}, "{3,4} = " + pair_label(three, four)},
    };
    word = build.finish(prefix, reached, routes, trail);
  } else if (orbit == 2 && view.next(kTwo, d) != kThree) {
    trail.tag = CaseTag::kII;
    StateSet reached = build.image(badb);
    trail.steps.push_back("R = Q.badb = " + reached.to_string());
    Word prefix = badb;
    if (view.next(cert.q, b) != kTwo) {
      prefix.push_back(a);
    } else {
      prefix.push_back(d);
      prefix.push_back(a);
    }
    reached = build.image(prefix);
    trail.steps.push_back("R' = Q." + build.show(prefix) + " = " + reached.to_string());
    const State r = preimage(view, d, kThree);
    std::vector<PairRoute> routes{
        {pair(kOne, r), Word{d, d, b}, "{1,r} = " + pair_label(kOne, r)},
        {pair(kOne, kThree), Word{d, b}, "{1,3}"},
        {pair(kOne, kTwo), Word{b}, "{1,2}"},
    };
    word = build.finish(prefix, reached, routes, trail);
  } else if (orbit == 2 && view.next(kThree, a) != kThree) {
    trail.tag = CaseTag::kIII;
    const State four = preimage(view, a, kThree);
    const State r = preimage(view, d, four);
    Word prefix = badb;
    if (view.next(kThree, b) != four) {
      trail.subcase = "3b!=4";
    } else {
      trail.subcase = "3b=4";
      prefix.push_back(b);
    }
    StateSet reached = build.image(prefix);
    trail.steps.push_back("R = Q." + build.show(prefix) + " = " + reached.to_string());
    std::vector<PairRoute> routes{
        {pair(kThree, r), Word{d, a, d, b}, "{3,r} = " + pair_label(kThree, r)},
        {pair(kTwo, four), Word{a, d, b}, "{2,4} = " + pair_label(kTwo, four)},
    };
    word = build.finish(prefix, reached, routes, trail);
  } else {
    trail.tag = CaseTag::kIV;
    const State three = orbit == 3 ? view.next(kTwo, a) : kThree;
    const StateSet core = pair(kOne, kTwo).with(three);
    const StateSet rest = view.states() - core;
    std::optional<Letter> s;
    for (Letter t = 0; t < view.letter_count() && !s; ++t) {
      if (apply_letter(view, rest, t) != rest) s = t;
    }
    if (!s) throw ConstructionContradiction("CASE_IV: every letter fixes Q \\ {1,2,3} setwise");
    trail.aux_letter = s;
    trail.subcase = core.contains(view.next(three, *s)) ? "3s_in_123" : "3s_notin_123";

    std::vector<Letter> alphabet{a, b, d, *s};
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

    const StateSet r0 = build.image(badb);
    trail.steps.push_back("R = Q.badb = " + r0.to_string() + ", s = " + view.name(*s));
    std::optional<Word> hop;
    auto try_hop = [&](const Word& h) {
      if (!hop && (apply_word(view, r0, h) & core).size() >= 2) hop = h;
    };
    try_hop(Word{});
    for (Letter x : alphabet) try_hop(Word{x});
    for (Letter x : alphabet) {
      for (Letter y : alphabet) try_hop(Word{x, y});
    }
    if (!hop) {
      throw ConstructionContradiction("CASE_IV: no set within two steps of R meets {1,2,3} twice");
    }
    Word prefix = badb + *hop;
    StateSet reached = build.image(prefix);
    trail.steps.push_back("R'' = Q." + build.show(prefix) + " = " + reached.to_string());
    std::vector<PairRoute> routes{
        {pair(kTwo, three), Word{a, d, b}, "{2,3} = " + pair_label(kTwo, three)},
        {pair(kOne, three), Word{d, b}, "{1,3} = " + pair_label(kOne, three)},
        {pair(kOne, kTwo), Word{b}, "{1,2}"},
    };
    word = build.finish(prefix, reached, routes, trail);
  }

  StateSet image = apply_word(dfa, dfa.states(), word);
  if (word.size() > 9 || image.size() != n - 3) {
    throw ConstructionContradiction(trail.label() + " produced " + format_word(view, word) + " of length " +
                                    std::to_string(word.size()) + " with image size " +
                                    std::to_string(image.size()));
  }
  return {std::move(word), std::move(trail), image};
}

Word pin_extension(const Dfa& dfa, const Word& w, std::size_t c) {
  const std::size_t n = dfa.size();
  PowerAutomaton pa(dfa);
  if (c >= n + 1 || summarize_reach(pa, dfa.states()).min_size + c > n) {
    throw PreconditionFailed("Q cannot be compressed to size n-c");
  }
  const StateSet qw = pa.image(dfa.states(), w);
  if (qw.size() + c > n + 1) throw PreconditionFailed("|Q w| exceeds n-c+1");
  const std::size_t target = n - c;
  auto m = find_shortest_word(
      pa, qw, [&](StateSet t) { return pa.image(t, w).size() <= target; }, c);
  if (!m) {
    throw TheoremViolation("no m with |m| <= " + std::to_string(c) + " gives |Q w m w| <= n-" +
                           std::to_string(c) + " for w = " + format_word(dfa, w));
  }
  return *m;
}

Word franklpin_word(const Dfa& dfa, StateSet r, std::size_t c) {
  const std::size_t n = dfa.size();
  PowerAutomaton pa(dfa);
  if (c >= n + 1 || summarize_reach(pa, dfa.states()).min_size + c > n) {
    throw PreconditionFailed("Q cannot be compressed to size n-c");
  }
  if (!r.subset_of(dfa.states())) throw std::invalid_argument("set outside the state set");
  if (r.size() + c > n + 1) throw PreconditionFailed("|R| exceeds n-c+1");
  const std::size_t target = n - c;
  const std::size_t bound = c * (c + 1) / 2;
  auto w = find_shortest_word(pa, r, [target](StateSet t) { return t.size() <= target; });
  if (!w || w->size() > bound) {
    throw TheoremViolation("shortest word from " + r.to_string() + " to size <= n-" + std::to_string(c) +
                           (w ? " has length " + std::to_string(w->size()) : std::string(" does not exist")) +
                           ", bound " + std::to_string(bound));
  }
  return *w;
}

std::size_t pipeline_bound(std::size_t n) { return (n * n * n - n) / 6 - 1; }

PipelineResult sync_pipeline(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  if (n < 4) throw PreconditionFailed("pipeline needs at least 4 states");
  PowerAutomaton pa(dfa);
  if (summarize_reach(pa, dfa.states()).min_size != 1) {
    throw PreconditionFailed("automaton is not synchronizable");
  }

  PipelineResult out;
  out.bound = pipeline_bound(n);
  if (satisfies_corank2_hypothesis(dfa)) {
    auto cert = extract_certificate(dfa);
    auto witness = corank3_word(dfa, cert);
    out.prefix = witness.word;
    out.prefix_trail = witness.trail;
    out.constructive_prefix = true;
  } else {
    const std::size_t target = n - 3;
    auto u = find_shortest_word(pa, dfa.states(), [target](StateSet s) { return s.size() <= target; });
    if (!u || u->size() > 9) {
      throw TheoremViolation("shortest word to corank 3 has length " +
                             (u ? std::to_string(u->size()) : std::string("infinity")) + " > 9");
    }
    out.prefix = *u;
  }
  out.word = out.prefix;
  StateSet set = pa.image(dfa.states(), out.prefix);
  for (std::size_t c = 4; c + 1 <= n; ++c) {
    Word stage = franklpin_word(dfa, set, c);
    set = pa.image(set, stage);
    out.word += stage;
    out.stages.push_back(std::move(stage));
  }
  out.final_set = set;
  if (set.size() != 1 || out.word.size() > out.bound) {
    throw TheoremViolation("pipeline word of length " + std::to_string(out.word.size()) + " exceeds bound " +
                           std::to_string(out.bound) + " or does not synchronize");
  }
  return out;
}

}  // namespace synchrokit
