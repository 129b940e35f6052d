#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "synchrokit/automaton.hpp"

using namespace synchrokit;

TEST_CASE("StateSet basics") {
  const auto s = StateSet::one_based({1, 3, 4});
  CHECK(s.size() == 3);
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
  CHECK(s.to_string() == "{1,3,4}");
  CHECK(StateSet{}.to_string() == "{}");
  CHECK(StateSet::full(4).bits() == 0xF);
  CHECK(StateSet::full(64).size() == 64);
  CHECK((s - StateSet::singleton(0)).to_string() == "{3,4}");
  CHECK(s.with(1).size() == 4);
  CHECK(s.subset_of(StateSet::full(4)));
  CHECK(s.members() == std::vector<State>{0, 2, 3});
}

TEST_CASE("Word operations") {
  const Word w{0, 1, 1};
  CHECK(w.size() == 3);
  CHECK(w.prefix(2) == Word{0, 1});
  CHECK(w.prefix(9) == w);
  CHECK(w.repeat(2) == Word{0, 1, 1, 0, 1, 1});
  CHECK(Word{0} + Word{1} == Word{0, 1});
  CHECK(Word{0, 1} < Word{1});
}

TEST_CASE("Dfa validation") {
  CHECK_THROWS_AS(Dfa(0, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(65, {std::vector<State>(65, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, {{0, 1}, {1, 0}}, {"x", "x"}), std::invalid_argument);
  CHECK_THROWS_AS(Dfa(2, {{0, 1}}, {"a b"}), std::invalid_argument);
  Dfa ok(2, {{0, 1}, {1, 0}});
  CHECK(ok.names() == std::vector<std::string>{"a", "b"});
  CHECK(ok.has_default_names());
  CHECK(default_letter_name(25) == "z");
  CHECK(default_letter_name(26) == "s26");
  CHECK(ok.is_permutation(1));
}

TEST_CASE("apply on the standard fixtures") {
  const Dfa c4 = oracle::load("c4.dfa");
  CHECK(apply_letter(c4, c4.states(), 1) == StateSet::one_based({2, 3, 4}));
  CHECK(apply_letter(c4, StateSet{}, 0).empty());
  CHECK(apply_word(c4, c4.states(), parse_word(c4, "baab")) == StateSet::one_based({2, 4}));
  CHECK(apply_word(c4, c4.states(), parse_word(c4, "baaabaaab")) == StateSet::one_based({2}));
  CHECK(apply_word(c4, StateSet::one_based({1, 3}), Word{}) == StateSet::one_based({1, 3}));
  CHECK_THROWS_AS(apply_letter(c4, c4.states(), 2), std::out_of_range);
  CHECK_THROWS_AS(apply_letter(c4, StateSet::one_based({5}), 0), std::out_of_range);

  const Dfa i3 = oracle::load("i3.dfa");
  CHECK(apply_letter(i3, StateSet::one_based({1, 3}), 0) == StateSet::one_based({1, 3}));
}

TEST_CASE("word formatting and parsing") {
  const Dfa c4 = oracle::load("c4.dfa");
  CHECK(format_word(c4, Word{1, 0, 0, 1}) == "baab");
  CHECK(format_word(c4, Word{}) == "-");
  CHECK(parse_word(c4, "-").empty());
  CHECK(parse_word(c4, "").empty());
  CHECK(parse_word(c4, "b a,a.b") == Word{1, 0, 0, 1});
  CHECK_THROWS_AS(parse_word(c4, "bx"), std::invalid_argument);

  Dfa long_names(2, {{0, 1}, {1, 0}}, {"ab", "a"});
  CHECK(format_word(long_names, Word{0, 1}) == "ab a");
  CHECK(parse_word(long_names, "ab a") == Word{0, 1});
  CHECK(parse_word(long_names, "aba") == Word{0, 1});
}

TEST_CASE("renumbering and added letters") {
  const Dfa c4 = oracle::load("c4.dfa");
  const std::vector<State> swap01{1, 0, 2, 3};
  const Dfa r = c4.renumbered(swap01);
  // b merged 1 into 2; after swapping labels it merges 2 into 1.
  CHECK(apply_letter(r, r.states(), 1) == StateSet::one_based({1, 3, 4}));
  CHECK(r.renumbered(swap01) == c4);
  const Dfa e = c4.with_letter({0, 0, 0, 0}, "z");
  CHECK(e.letter_count() == 3);
  CHECK(e.find_letter("z") == 2u);
  CHECK_THROWS_AS(c4.with_letter({0, 0, 0, 0}, "a"), std::invalid_argument);
}

TEST_CASE("action properties on random automata") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 9;
    const std::size_t k = 1 + rng() % 3;
    const Dfa dfa = oracle::random_dfa(rng, n, k);
    auto random_word = [&] {
      Word w;
      for (std::size_t i = rng() % 7; i > 0; --i) w.push_back(static_cast<Letter>(rng() % k));
      return w;
    };
    const auto r = StateSet::from_bits(rng() & dfa.states().bits());
    const Word u = random_word();
    const Word v = random_word();
    CHECK(apply_word(dfa, r, u).size() <= r.size());
    CHECK(apply_word(dfa, r, u + v) == apply_word(dfa, apply_word(dfa, r, u), v));
    CHECK(apply_word(dfa, r, u).subset_of(apply_word(dfa, dfa.states(), u)));
    const auto single = StateSet::singleton(static_cast<State>(rng() % n));
    CHECK(apply_word(dfa, single, u).size() == 1);
  }
}
