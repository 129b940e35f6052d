#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "synchrokit/errors.hpp"
#include "synchrokit/extremal.hpp"
#include "synchrokit/power_search.hpp"
#include "synchrokit/structure.hpp"

using namespace synchrokit;

namespace {

/// Conditions evaluated by listing every word of length <= 9 that takes Q
/// to size exactly n-3.
struct Enumerated {
  bool hypothesis = false;
  bool cond1 = true;
  bool cond2 = true;
  bool cond3 = false;
  bool cond4 = true;
};

bool equations_hold(const Dfa& dfa, Letter s, const std::array<State, 4>& r, int which) {
  auto at = [&](int i) { return dfa.next(r[i], s); };
  const StateSet image = apply_letter(dfa, dfa.states(), s);
  switch (which) {
    case 0:
      return image == dfa.states() && at(0) == r[0] && at(1) == r[1] && at(2) == r[2] && at(3) == r[3];
    case 1:
      return image == dfa.states() && at(0) == r[1] && at(1) == r[2] && at(2) == r[3] && at(3) == r[0];
    default:
      return image == dfa.states().without(r[0]) && at(0) == at(1) && at(2) == r[2] && at(3) == r[3];
  }
}

/// Tries every injective choice of states 1..4.
bool cond3_by_search(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  std::array<State, 4> r{};
  for (r[0] = 0; r[0] < n; ++r[0]) {
    for (r[1] = 0; r[1] < n; ++r[1]) {
      for (r[2] = 0; r[2] < n; ++r[2]) {
        for (r[3] = 0; r[3] < n; ++r[3]) {
          std::array<State, 4> sorted = r;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
          bool all = true;
          for (Letter s = 0; s < dfa.letter_count() && all; ++s) {
            all = equations_hold(dfa, s, r, 0) || equations_hold(dfa, s, r, 1) || equations_hold(dfa, s, r, 2);
          }
          if (all) return true;
        }
      }
    }
  }
  return false;
}

Enumerated enumerate_conditions(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  Enumerated out;
  std::optional<StructureCertificate> cert;
  if (satisfies_corank2_hypothesis(dfa)) cert = extract_certificate(dfa);
  if (!cert) out.cond2 = false;
  const std::vector<std::size_t> profile4{n, n - 1, n - 1, n - 1, n - 1, n - 2, n - 2, n - 2, n - 2, n - 3};
  oracle::for_each_word_upto(dfa.letter_count(), 9, [&](const Word& w) {
    if (apply_word(dfa, dfa.states(), w).size() + 3 != n) return true;
    out.hypothesis = true;
    const std::size_t prefix4 = apply_word(dfa, dfa.states(), w.prefix(4)).size();
    if (w.size() < 4 || prefix4 + 2 <= n) out.cond1 = false;
    if (cert && w.size() >= 4 && w[0] == cert->b && w[3] == cert->b && w[1] == cert->a && prefix4 + 2 <= n) {
      out.cond2 = false;
    }
    if (w.size() != 9 || size_profile(dfa, w) != profile4) out.cond4 = false;
    return true;
  });
  out.cond3 = cond3_by_search(dfa);
  return out;
}

void check_against_enumeration(const Dfa& dfa) {
  const auto expected = enumerate_conditions(dfa);
  REQUIRE(hypothesis_greedy(dfa) == expected.hypothesis);
  if (!expected.hypothesis) return;
  const auto report = assert_equivalence(dfa);
  CHECK(report.cond1 == expected.cond1);
  CHECK(report.cond2 == expected.cond2);
  CHECK(report.cond3 == expected.cond3);
  CHECK(report.cond4 == expected.cond4);
  CHECK(report.consistent());
}

}  // namespace

TEST_CASE("hypothesis") {
  CHECK(hypothesis_greedy(oracle::load("e5.dfa")));
  CHECK(hypothesis_greedy(oracle::load("c4.dfa")));
  CHECK_FALSE(hypothesis_greedy(oracle::load("i3.dfa")));
  CHECK_FALSE(hypothesis_greedy(oracle::load("c3.dfa")));
  CHECK_THROWS_AS(check_condition_1(oracle::load("i3.dfa")), HypothesisFailed);
  CHECK_THROWS_AS(assert_equivalence(oracle::load("i3.dfa")), HypothesisFailed);
}

TEST_CASE("E5 satisfies every condition") {
  const Dfa e5 = oracle::load("e5.dfa");
  CHECK(build_extremal_dfa(5) == e5);
  CHECK(check_condition_1(e5).holds);
  CHECK(check_condition_2(e5).holds);
  CHECK(check_condition_2_sharpened(e5).holds);
  const auto renumbering = check_condition_3(e5);
  REQUIRE(renumbering);
  CHECK(*renumbering == std::vector<State>{0, 1, 2, 3, 4});
  const Dfa view = e5.renumbered(*renumbering);
  CHECK(classify_greedy_letter(view, 0) == GreedyLetterClass::kEqI);
  CHECK(classify_greedy_letter(view, 1) == GreedyLetterClass::kEqA);
  CHECK(classify_greedy_letter(view, 2) == GreedyLetterClass::kEqB);
  CHECK(check_condition_4(e5).holds);
  const auto report = assert_equivalence(e5);
  CHECK(report.consistent());
  CHECK(report.cond1);
  check_against_enumeration(e5);
}

TEST_CASE("C4 is the four-state member of the extremal family") {
  const Dfa c4 = oracle::load("c4.dfa");
  CHECK(build_extremal_dfa(4, false) == c4);
  const auto report = assert_equivalence(c4);
  CHECK(report.cond1);
  CHECK(report.cond2);
  CHECK(report.cond3);
  CHECK(report.cond4);
  // Q b a a b has size 2 = n-2 but it cannot be completed to size 1 within
  // nine letters, so it is no choice of w.
  CHECK(apply_word(c4, c4.states(), parse_word(c4, "baab")).size() == 2);
  check_against_enumeration(c4);
}

TEST_CASE("C5 fails every condition") {
  const Dfa c5 = oracle::load("c5.dfa");
  const auto report = assert_equivalence(c5);
  CHECK_FALSE(report.cond1);
  CHECK_FALSE(report.cond2);
  CHECK_FALSE(report.cond3);
  CHECK_FALSE(report.cond4);
  REQUIRE(report.cond1_witness);
  CHECK(apply_word(c5, c5.states(), *report.cond1_witness).size() == 2);
  check_against_enumeration(c5);
}

TEST_CASE("extremal family") {
  for (std::size_t n : {5, 6, 7}) {
    CAPTURE(n);
    for (bool identity : {true, false}) {
      const Dfa dfa = build_extremal_dfa(n, identity);
      const auto report = assert_equivalence(dfa);
      CHECK(report.cond1);
      CHECK(report.cond2);
      CHECK(report.cond3);
      CHECK(report.cond4);
      CHECK(report.consistent());
      CHECK(shortest_compressing_word(dfa, dfa.states(), n - 3)->word.size() == 9);
    }
  }
  const Dfa twisted = build_extremal_dfa(7, true, std::vector<State>{5, 6, 4});
  CHECK(assert_equivalence(twisted).cond3);
  CHECK(assert_equivalence(twisted).consistent());
  CHECK_THROWS_AS(build_extremal_dfa(3), std::invalid_argument);
  CHECK_THROWS_AS(build_extremal_dfa(6, true, std::vector<State>{4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(build_extremal_dfa(6, true, std::vector<State>{4}), std::invalid_argument);
}

TEST_CASE("letter classes") {
  const Dfa e5 = oracle::load("e5.dfa");
  const Dfa with_d = e5.with_letter({0, 3, 2, 1, 4}, "d");
  CHECK(classify_greedy_letter(with_d, 3) == GreedyLetterClass::kEqD);
  const Dfa with_other = e5.with_letter({1, 0, 2, 3, 4}, "s");
  CHECK(classify_greedy_letter(with_other, 3) == GreedyLetterClass::kOther);
  CHECK(to_string(GreedyLetterClass::kEqD) == "EQ_D");
  CHECK_THROWS_AS(classify_greedy_letter(oracle::load("c3.dfa"), 0), std::invalid_argument);

  // An EQ_D letter lets b a d b reach size n-2; both checks see it.
  const auto report = assert_equivalence(with_d);
  CHECK_FALSE(report.cond2);
  CHECK_FALSE(report.cond2_sharpened);
  CHECK(report.consistent());
}

TEST_CASE("orbit of size two: the sharpened check also tries d") {
  const Dfa dfa = parse_dfa("5 3\n2 2 3 4 5\n2 1 4 5 3\n1 3 4 2 5\n");
  const auto cert = extract_certificate(dfa);
  CHECK(cert.case_tag == CertificateCase::kOrbitEquals2);
  const auto report = assert_equivalence(dfa);
  CHECK_FALSE(report.cond2);
  CHECK_FALSE(report.cond2_sharpened);
  CHECK(report.consistent());
  check_against_enumeration(dfa);
}

TEST_CASE("equality reading: a letter jumping past n-3 splits the conditions") {
  // Every word reaching size exactly n-3 avoids z, so conditions 1 and 4
  // only see the extremal letters, while z alone already reaches n-2.
  const Dfa dfa = build_extremal_dfa(5, false).with_letter({0, 0, 0, 0, 0}, "z");
  const auto report = assert_equivalence(dfa);
  CHECK(report.cond1);
  CHECK(report.cond4);
  CHECK_FALSE(report.cond2);
  CHECK_FALSE(report.cond3);
  CHECK_FALSE(report.consistent());
}

TEST_CASE("conditions match enumeration on random automata") {
  std::mt19937_64 rng(31);
  int checked = 0;
  int extremal = 0;
  for (int it = 0; it < 400; ++it) {
    const std::size_t n = 4 + rng() % 3;
    Dfa dfa = it % 4 == 0 ? build_extremal_dfa(n, rng() % 2) : oracle::random_structured_dfa(rng, n, 2);
    if (it % 8 == 0) dfa = dfa.with_letter(oracle::random_dfa(rng, n, 1).tables()[0], "x");
    if (!hypothesis_greedy(dfa)) continue;
    ++checked;
    check_against_enumeration(dfa);
    extremal += assert_equivalence(dfa).cond1;
  }
  CHECK(checked > 100);
  CHECK(extremal > 10);
}

TEST_CASE("pincor") {
  const Dfa e5 = oracle::load("e5.dfa");
  auto r = pincor_check(e5, extract_certificate(e5));
  CHECK(r.applicable);
  CHECK(r.holds);
  REQUIRE(r.shortest_from_badb);
  CHECK(r.shortest_from_badb->size() == 6);
  CHECK(apply_word(e5, e5.states(), parse_word(e5, "baaabaaab")).size() == 2);

  const Dfa c4 = oracle::load("c4.dfa");
  r = pincor_check(c4, extract_certificate(c4));
  CHECK(r.applicable);
  CHECK(r.holds);
  CHECK(r.shortest_from_badb->size() == 6);

  const Dfa c5 = oracle::load("c5.dfa");
  r = pincor_check(c5, extract_certificate(c5));
  CHECK_FALSE(r.applicable);
  CHECK(r.holds);

  const Dfa c3 = oracle::load("c3.dfa");
  CHECK_THROWS_AS(pincor_check(c3, extract_certificate(c3)), HypothesisFailed);
}
