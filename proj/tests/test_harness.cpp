#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracle.hpp"
#include "synchrokit/dfa_io.hpp"
#include "synchrokit/errors.hpp"
#include "synchrokit/harness.hpp"
#include "synchrokit/power_search.hpp"

using namespace synchrokit;

namespace {

EnumerationScope exhaustive(std::size_t n, std::size_t k) {
  EnumerationScope s;
  s.n = n;
  s.k = k;
  return s;
}

EnumerationScope sampled(std::size_t n, std::size_t k, std::uint64_t samples, std::uint64_t seed) {
  EnumerationScope s;
  s.n = n;
  s.k = k;
  s.mode = EnumerationMode::kRandom;
  s.sample_count = samples;
  s.seed = seed;
  return s;
}

/// Every table-order relabelling, listed by brute force.
std::set<std::string> orbit(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.letter_count();
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> letters(k);
  std::set<std::string> out;
  do {
    std::iota(letters.begin(), letters.end(), 0);
    do {
      std::vector<std::vector<State>> tables(k, std::vector<State>(n));
      for (std::size_t s = 0; s < k; ++s) {
        for (State q = 0; q < n; ++q) tables[s][perm[q]] = perm[dfa.next(q, static_cast<Letter>(letters[s]))];
      }
      out.insert(serialize_dfa(Dfa(n, tables)));
    } while (std::next_permutation(letters.begin(), letters.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("population sizes") {
  CHECK(exhaustive_count(2, 1) == 4);
  CHECK(exhaustive_count(4, 2) == 65536);
  CHECK(exhaustive_count(5, 2) == 9765625);
  CHECK(exhaustive_count(64, 64) == std::numeric_limits<std::uint64_t>::max());
  CHECK(exhaustive(3, 2).population() == 729);
  CHECK(sampled(9, 3, 17, 1).population() == 17);

  std::uint64_t visited = 0;
  enumerate_dfas(exhaustive(2, 1), [&](std::uint64_t, const Dfa&) { ++visited; });
  CHECK(visited == 4);
}

TEST_CASE("exhaustive order") {
  std::vector<std::string> seen;
  enumerate_dfas(exhaustive(2, 1), [&](std::uint64_t i, const Dfa& d) {
    CHECK(d == dfa_at_index(2, 1, i));
    seen.push_back(serialize_dfa(d));
  });
  CHECK(seen == std::vector<std::string>{"2 1\n1 1\n", "2 1\n1 2\n", "2 1\n2 1\n", "2 1\n2 2\n"});
  CHECK(dfa_at_index(3, 2, 728) == Dfa(3, {{2, 2, 2}, {2, 2, 2}}));
  CHECK(dfa_at_index(3, 2, 1) == Dfa(3, {{0, 0, 0}, {0, 0, 1}}));
}

TEST_CASE("canonical filter keeps one automaton per relabelling class") {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 1}, {3, 2}}) {
    CAPTURE(n);
    CAPTURE(k);
    std::set<std::string> classes;
    std::uint64_t canonical = 0;
    enumerate_dfas(exhaustive(n, k), [&](std::uint64_t, const Dfa& d) {
      const auto o = orbit(d);
      classes.insert(*o.begin());
      if (is_canonical(d)) {
        ++canonical;
        // The least member of the orbit in table order.
        CHECK(serialize_dfa(d) == *o.begin());
      }
    });
    auto scope = exhaustive(n, k);
    scope.canonical_filter = true;
    std::uint64_t filtered = 0;
    enumerate_dfas(scope, [&](std::uint64_t, const Dfa& d) {
      CHECK(is_canonical(d));
      ++filtered;
    });
    CHECK(canonical == classes.size());
    CHECK(filtered == canonical);
  }
}

TEST_CASE("scope validation") {
  CHECK_THROWS_AS(exhaustive(65, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive(0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive(3, 0).validate(), std::invalid_argument);
  auto s = sampled(5, 2, 10, 1);
  s.canonical_filter = true;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_check(TheoremId::kCorank3, exhaustive(65, 2)), std::invalid_argument);

  auto big = exhaustive(7, 3);
  try {
    big.validate();
    FAIL("expected a budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.count() == exhaustive_count(7, 3));
  }
  big.budget = std::numeric_limits<std::uint64_t>::max();
  CHECK_NOTHROW(big.validate());
  CHECK_NOTHROW(sampled(64, 64, 1, 0).validate());
}

TEST_CASE("theorem ids") {
  CHECK(all_theorem_ids().size() == 11);
  for (auto id : all_theorem_ids()) CHECK(parse_theorem_id(to_string(id)) == id);
  CHECK(to_string(TheoremId::kGreedyEquiv) == "greedy-equiv");
  CHECK_FALSE(parse_theorem_id("nope"));
}

TEST_CASE("sampling is a pure function of seed and index") {
  const auto scope = sampled(5, 2, 1000, 42);
  CHECK(sampled_dfa(scope, 17) == sampled_dfa(scope, 17));
  CHECK_FALSE(sampled_dfa(scope, 17) == sampled_dfa(scope, 18));
  auto other = scope;
  other.seed = 43;
  CHECK_FALSE(sampled_dfa(scope, 17) == sampled_dfa(other, 17));

  std::vector<Dfa> seen;
  enumerate_dfas(scope, [&](std::uint64_t i, const Dfa& d) {
    CHECK(d == sampled_dfa(scope, i));
    seen.push_back(d);
  });
  CHECK(seen.size() == 1000);

  SplitMix64 a(9), b(9);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  SplitMix64 rng(1);
  CHECK_THROWS_AS(random_dfa(0, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_dfa(65, 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_dfa(3, 0, rng), std::invalid_argument);
}

TEST_CASE("random automata look uniform") {
  // Mean image size of a uniform map on 5 points is 5 (1 - (4/5)^5).
  SplitMix64 rng(2025);
  double total = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) total += apply_letter(random_dfa(5, 1, rng), StateSet::full(5), 0).size();
  const double expected = 5.0 * (1.0 - 1024.0 / 3125.0);
  CHECK(std::abs(total / draws - expected) < 0.01);
}

TEST_CASE("reports are deterministic and independent of job count") {
  const auto scope = sampled(5, 2, 3000, 42);
  const auto& ids = all_theorem_ids();
  const auto one = run_checks(ids, scope);
  const auto again = run_checks(ids, scope);
  RunOptions three;
  three.jobs = 3;
  const auto sharded = run_checks(ids, scope, three);
  REQUIRE(one.size() == ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    CAPTURE(to_string(ids[i]));
    CHECK(to_json(one[i]).dump() == to_json(again[i]).dump());
    CHECK(to_json(one[i]).dump() == to_json(sharded[i]).dump());
    CHECK(one[i].checked_count == 3000);
    CHECK(one[i].violation_count == 0);
  }

  const auto ex = run_checks(ids, exhaustive(3, 2));
  RunOptions four;
  four.jobs = 4;
  const auto ex_sharded = run_checks(ids, exhaustive(3, 2), four);
  for (std::size_t i = 0; i < ids.size(); ++i) CHECK(to_json(ex[i]).dump() == to_json(ex_sharded[i]).dump());
}

TEST_CASE("report JSON") {
  const auto r = run_check(TheoremId::kCorank3, exhaustive(3, 2));
  const auto j = to_json(r);
  CHECK(j["theorem"] == "corank3");
  CHECK(j["checked_count"] == 729);
  CHECK(j["violation_count"] == 0);
  CHECK(j["counterexamples"].empty());
  CHECK_FALSE(j.contains("wall_time_seconds"));
  CHECK(to_json(r, true).contains("wall_time_seconds"));
  CHECK(j["scope"]["mode"] == "exhaustive");
  CHECK_FALSE(j["scope"].contains("seed"));
  CHECK(scope_to_json(sampled(4, 2, 5, 3))["seed"] == 3);
}

TEST_CASE("small exhaustive sweeps have no violations") {
  const auto& ids = all_theorem_ids();
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& r : run_checks(ids, exhaustive(n, n <= 3 ? 2 : 1))) {
      CAPTURE(to_string(r.theorem));
      CHECK(r.violation_count == 0);
    }
  }
  const auto corank3 = run_check(TheoremId::kCorank3, exhaustive(3, 2));
  CHECK(corank3.tallies.at("synchronizing") == corank3.tallies.at("synchronizing_within_(n-1)^2"));
  std::uint64_t sync = 0;
  enumerate_dfas(exhaustive(3, 2), [&](std::uint64_t, const Dfa& d) { sync += rank(d) == 1; });
  CHECK(corank3.tallies.at("synchronizing") == sync);
}
