#include "synchrokit/structure.hpp"

#include <algorithm>
#include <numeric>

#include "synchrokit/errors.hpp"
#include "synchrokit/power_search.hpp"

namespace synchrokit {
namespace {

constexpr State kOne = 0;
constexpr State kTwo = 1;
constexpr State kThree = 2;

std::string label(State s) { return std::to_string(static_cast<int>(s) + 1); }

/// first -> 1, second -> 2, every other state keeps its relative order.
std::vector<State> renumbering_with_pair(std::size_t n, State first, State second) {
  std::vector<State> perm(n);
  State next = 2;
  for (State q = 0; q < n; ++q) {
    if (q == first) {
      perm[q] = kOne;
    } else if (q == second) {
      perm[q] = kTwo;
    } else {
      perm[q] = next++;
    }
  }
  return perm;
}

std::vector<State> orbit_of(const Dfa& dfa, State start, Letter s) {
  std::vector<State> orbit{start};
  std::uint64_t seen = std::uint64_t{1} << start;
  for (State q = dfa.next(start, s); !((seen >> q) & 1U); q = dfa.next(q, s)) {
    orbit.push_back(q);
    seen |= std::uint64_t{1} << q;
  }
  return orbit;
}

struct MergeShape {
  State missing;
  State first;
  State second;
};

/// For a letter whose image has size n-1: the missing state and the merged pair.
std::optional<MergeShape> merge_shape(const Dfa& dfa, Letter s) {
  const std::size_t n = dfa.size();
  StateSet image = apply_letter(dfa, dfa.states(), s);
  if (image.size() + 1 != n) return std::nullopt;
  MergeShape shape{};
  shape.missing = static_cast<State>(std::countr_zero((dfa.states() - image).bits()));
  std::vector<int> first_preimage(n, -1);
  for (State q = 0; q < n; ++q) {
    State t = dfa.next(q, s);
    if (first_preimage[t] >= 0) {
      shape.first = static_cast<State>(first_preimage[t]);
      shape.second = q;
      return shape;
    }
    first_preimage[t] = q;
  }
  return std::nullopt;
}

std::optional<LetterClass> classify_in_view(const Dfa& view, Letter s) {
  StateSet image = apply_letter(view, view.states(), s);
  const State one = view.next(kOne, s);
  if (image == view.states() && (one == kOne || one == kTwo)) return LetterClass::kPermutationNear1;
  if (view.size() >= 2 && image == view.states().without(kOne) && one == view.next(kTwo, s)) {
    return LetterClass::kMergesPair12;
  }
  return std::nullopt;
}

[[noreturn]] void contradiction(const std::string& clause, const std::string& detail) {
  throw CertificateContradiction("corank-2 structure clause (" + clause + ") failed: " + detail);
}

}  // namespace

std::string to_string(CertificateCase c) {
  return c == CertificateCase::kOrbitAtLeast3 ? "X_GE_3" : "X_EQ_2";
}

std::string to_string(LetterClass c) { return c == LetterClass::kPermutationNear1 ? "AD" : "B1"; }

bool satisfies_corank2_hypothesis(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  if (n < 3) return false;
  PowerAutomaton pa(dfa);
  auto steps = summarize_reach(pa, dfa.states()).steps_to_at_most(n - 2);
  return steps && *steps >= 4;
}

Dfa certified_view(const Dfa& dfa, const StructureCertificate& cert) {
  return dfa.renumbered(cert.renumbering);
}

StructureCertificate extract_certificate(const Dfa& dfa) {
  if (!satisfies_corank2_hypothesis(dfa)) {
    throw HypothesisFailed("automaton cannot compress Q to size n-2, or can do so in at most 3 letters");
  }
  const std::size_t n = dfa.size();
  PowerAutomaton pa(dfa);
  const std::size_t target = n - 2;
  auto w = find_shortest_word(pa, dfa.states(), [target](StateSet s) { return s.size() <= target; });
  if (!w || w->size() < 4) contradiction("i", "no minimal compressing word of length >= 4");

  StructureCertificate cert;
  cert.b = (*w)[0];
  auto shape = merge_shape(dfa, cert.b);
  if (!shape) contradiction("i", "first letter does not drop exactly one state");
  if (shape->missing != shape->first && shape->missing != shape->second) {
    contradiction("i", "state missing from Q b is not in the merged pair");
  }
  State partner = shape->missing == shape->first ? shape->second : shape->first;
  cert.renumbering = renumbering_with_pair(n, shape->missing, partner);
  Dfa view = dfa.renumbered(cert.renumbering);

  cert.a = (*w)[1];
  cert.orbit = orbit_of(view, kOne, cert.a);
  if (cert.orbit.size() >= 3) {
    cert.d = cert.a;
  } else {
    const Letter third = (*w)[2];
    bool hits_one = false;
    for (State r = 2; r < n; ++r) hits_one = hits_one || view.next(r, third) == kOne;
    if (hits_one) {
      cert.a = third;
      cert.d = third;
      cert.a_replaced = true;
      cert.orbit = orbit_of(view, kOne, cert.a);
    } else {
      cert.d = third;
      std::optional<State> r;
      for (State x = 2; x < n && !r; ++x) {
        if (view.next(x, third) == kTwo) r = x;
      }
      if (!r) contradiction("iv", "no state outside {1,2} is mapped to 2 by d");
      // Move r to label 3; labels between 3 and r shift up by one.
      for (auto& l : cert.renumbering) {
        if (l == *r) {
          l = kThree;
        } else if (l >= kThree && l < *r) {
          ++l;
        }
      }
      view = dfa.renumbered(cert.renumbering);
      cert.orbit = orbit_of(view, kOne, cert.a);
    }
  }
  cert.case_tag = cert.orbit.size() >= 3 ? CertificateCase::kOrbitAtLeast3 : CertificateCase::kOrbitEquals2;

  StateSet bad = apply_word(view, view.states(), Word{cert.b, cert.a, cert.d});
  if (bad.size() + 1 != n) contradiction("iv", "Q b a d has size " + std::to_string(bad.size()));
  cert.q = static_cast<State>(std::countr_zero((view.states() - bad).bits()));

  auto report = validate_certificate(dfa, cert);
  if (const auto* failure = report.first_failure()) contradiction(failure->clause, failure->detail);
  return cert;
}

bool ClauseReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

const ClauseResult* ClauseReport::first_failure() const {
  for (const auto& c : clauses) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

ClauseReport validate_certificate(const Dfa& dfa, const StructureCertificate& cert, bool exhaustive_iii) {
  ClauseReport report;
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.letter_count();

  std::string shape_error;
  std::vector<State> sorted = cert.renumbering;
  std::sort(sorted.begin(), sorted.end());
  std::vector<State> identity(n);
  std::iota(identity.begin(), identity.end(), State{0});
  if (n < 3) {
    shape_error = "automaton has fewer than 3 states";
  } else if (sorted != identity) {
    shape_error = "renumbering is not a permutation of the states";
  } else if (cert.b >= k || cert.a >= k || cert.d >= k) {
    shape_error = "letter index out of range";
  } else if (cert.q >= n) {
    shape_error = "q outside the state set";
  } else if (cert.orbit.empty() || cert.orbit.front() != kOne ||
             std::any_of(cert.orbit.begin(), cert.orbit.end(), [n](State s) { return s >= n; })) {
    shape_error = "orbit must start at state 1";
  }
  if (!shape_error.empty()) {
    report.clauses.push_back({"shape", false, shape_error});
    return report;
  }

  const Dfa view = dfa.renumbered(cert.renumbering);
  const StateSet all = view.states();
  auto img = [&](StateSet set, std::initializer_list<Letter> letters) {
    return apply_word(view, set, Word(letters));
  };

  {
    ClauseResult c{"i", true, ""};
    StateSet qb = img(all, {cert.b});
    if (qb != all.without(kOne)) {
      c = {"i", false, "Q b = " + qb.to_string() + " is not Q \\ {1}"};
    } else if (view.next(kOne, cert.b) != view.next(kTwo, cert.b)) {
      c = {"i", false, "1 b != 2 b"};
    }
    report.clauses.push_back(c);
  }
  {
    ClauseResult c{"ii", true, ""};
    StateSet qba = img(all, {cert.b, cert.a});
    if (qba != all.without(kTwo)) {
      c = {"ii", false, "Q b a = " + qba.to_string() + " is not Q \\ {2}"};
    } else if (img(all, {cert.a}) != all) {
      c = {"ii", false, "Q a != Q"};
    } else if (view.next(kOne, cert.a) != kTwo) {
      c = {"ii", false, "1 a = " + label(view.next(kOne, cert.a)) + ", expected 2"};
    }
    report.clauses.push_back(c);
  }
  {
    ClauseResult c{"iii", true, ""};
    for (Letter s = 0; s < k && c.passed; ++s) {
      if (view.is_permutation(s)) continue;
      bool merges_12 = view.next(kOne, s) == view.next(kTwo, s);
      if (!merges_12 || img(all, {s}).size() + 1 != n) {
        c = {"iii", false, "letter " + view.name(s) + " compresses a pair other than {1,2}"};
      }
    }
    report.clauses.push_back(c);
  }
  if (exhaustive_iii) {
    ClauseResult c{"iii (all subsets)", true, ""};
    if (n > PowerAutomaton::kDenseLimit) {
      c = {"iii (all subsets)", false, "exhaustive check limited to n <= 12"};
    } else {
      const std::uint64_t subsets = std::uint64_t{1} << n;
      const StateSet pair = StateSet::singleton(kOne).with(kTwo);
      for (Letter s = 0; s < k && c.passed; ++s) {
        const bool merges_12 = view.next(kOne, s) == view.next(kTwo, s);
        for (std::uint64_t bits = 0; bits < subsets && c.passed; ++bits) {
          StateSet r = StateSet::from_bits(bits);
          StateSet rs = img(r, {s});
          bool shrinks = rs.size() != r.size();
          bool pair_in = merges_12 && r.contains_all(pair);
          bool by_one = rs.size() + 1 == r.size();
          if (shrinks != pair_in || pair_in != by_one) {
            c = {"iii (all subsets)", false, "fails for R = " + r.to_string() + ", s = " + view.name(s)};
          }
        }
      }
    }
    report.clauses.push_back(c);
  }
  {
    ClauseResult c{"iv", true, ""};
    StateSet bad = img(all, {cert.b, cert.a, cert.d});
    StateSet badb = img(bad, {cert.b});
    const State qb = view.next(cert.q, cert.b);
    if (orbit_of(view, kOne, cert.a) != cert.orbit) {
      c = {"iv", false, "X is not the orbit of 1 under a"};
    } else if (bad != all.without(cert.q)) {
      c = {"iv", false, "Q b a d = " + bad.to_string() + " is not Q \\ {" + label(cert.q) + "}"};
    } else if (cert.q == kOne || cert.q == kTwo) {
      c = {"iv", false, "q lies in {1,2}"};
    } else if (qb == kOne) {
      c = {"iv", false, "q b = 1"};
    } else if (badb != all.without(kOne).without(qb)) {
      c = {"iv", false, "Q b a d b = " + badb.to_string() + " is not Q \\ {1," + label(qb) + "}"};
    } else if (cert.case_tag == CertificateCase::kOrbitAtLeast3) {
      if (cert.orbit.size() < 3) c = {"iv", false, "case X_GE_3 with |X| < 3"};
      else if (cert.d != cert.a) c = {"iv", false, "case X_GE_3 with d != a"};
    } else {
      if (cert.orbit.size() != 2) {
        c = {"iv", false, "case X_EQ_2 with |X| != 2"};
      } else if (img(all, {cert.d}) != all) {
        c = {"iv", false, "Q d != Q"};
      } else if (view.next(kOne, cert.d) != kOne) {
        c = {"iv", false, "1 d != 1"};
      } else if (view.next(kThree, cert.d) != kTwo) {
        c = {"iv", false, "3 d != 2"};
      }
    }
    report.clauses.push_back(c);
  }
  return report;
}

std::vector<LetterClassification> classify_pinlem(const Dfa& dfa, const StructureCertificate& cert) {
  const Dfa view = certified_view(dfa, cert);
  std::vector<LetterClassification> out;
  for (Letter s = 0; s < view.letter_count(); ++s) out.push_back({s, classify_in_view(view, s)});
  return out;
}

std::optional<std::vector<State>> find_pinlem_renumbering(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  if (n < 2) return std::nullopt;
  for (Letter t = 0; t < dfa.letter_count(); ++t) {
    if (dfa.is_permutation(t)) continue;
    auto shape = merge_shape(dfa, t);
    if (!shape || (shape->missing != shape->first && shape->missing != shape->second)) continue;
    State partner = shape->missing == shape->first ? shape->second : shape->first;
    auto perm = renumbering_with_pair(n, shape->missing, partner);
    Dfa view = dfa.renumbered(perm);
    bool all_match = true;
    for (Letter s = 0; s < view.letter_count() && all_match; ++s) {
      all_match = classify_in_view(view, s).has_value();
    }
    if (all_match) return perm;
  }
  return std::nullopt;
}

bool pinlem_converse_check(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  if (n < 3) return true;
  PowerAutomaton pa(dfa);
  const std::size_t target = n - 2;
  return !find_shortest_word(
              pa, dfa.states(), [target](StateSet s) { return s.size() <= target; }, std::size_t{3})
              .has_value();
}

}  // namespace synchrokit
