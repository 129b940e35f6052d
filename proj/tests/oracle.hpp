#pragma once

// Brute-force references used by the tests. Everything here goes through
// apply_word on explicit words and never touches the power-automaton search.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "synchrokit/automaton.hpp"
#include "synchrokit/dfa_io.hpp"

namespace oracle {

using synchrokit::Dfa;
using synchrokit::Letter;
using synchrokit::State;
using synchrokit::StateSet;
using synchrokit::Word;

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SYNCHROKIT_FIXTURE_DIR) / name;
}

inline Dfa load(const std::string& name) { return synchrokit::read_dfa_file(fixture(name)); }

/// All words of exactly `length` letters over `k` letters, in lexicographic order.
inline void for_each_word(std::size_t k, std::size_t length, const std::function<bool(const Word&)>& f) {
  std::vector<Letter> letters(length, 0);
  while (true) {
    if (!f(Word(letters))) return;
    std::size_t pos = length;
    while (pos > 0 && letters[pos - 1] + 1 == k) letters[--pos] = 0;
    if (pos == 0) return;
    ++letters[pos - 1];
  }
}

/// Words of length 0, 1, ..., max_len in length-lex order; stops when f returns false.
inline void for_each_word_upto(std::size_t k, std::size_t max_len, const std::function<bool(const Word&)>& f) {
  bool go = true;
  for (std::size_t len = 0; len <= max_len && go; ++len) {
    for_each_word(k, len, [&](const Word& w) { return go = f(w); });
  }
}

/// First word (length-lex) over `letters` taking `start` into `goal`.
inline std::optional<Word> first_word(const Dfa& dfa, StateSet start, const std::function<bool(StateSet)>& goal,
                                      std::size_t max_len, const std::vector<Letter>& letters = {}) {
  std::vector<Letter> alphabet = letters;
  if (alphabet.empty()) {
    for (Letter s = 0; s < dfa.letter_count(); ++s) alphabet.push_back(s);
  }
  std::optional<Word> found;
  for_each_word_upto(alphabet.size(), max_len, [&](const Word& idx) {
    Word w;
    for (Letter i : idx) w.push_back(alphabet[i]);
    if (goal(synchrokit::apply_word(dfa, start, w))) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

/// Smallest |Q w| over all words of length <= max_len.
inline std::size_t min_image(const Dfa& dfa, std::size_t max_len) {
  std::size_t best = dfa.size();
  for_each_word_upto(dfa.letter_count(), max_len, [&](const Word& w) {
    best = std::min(best, synchrokit::apply_word(dfa, dfa.states(), w).size());
    return true;
  });
  return best;
}

inline Dfa random_dfa(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<unsigned> entry(0, static_cast<unsigned>(n - 1));
  std::vector<std::vector<State>> tables(k, std::vector<State>(n));
  for (auto& t : tables) {
    for (auto& q : t) q = static_cast<State>(entry(rng));
  }
  return Dfa(n, tables);
}

/// Random automaton whose letters all match the two letter equations under
/// the identity numbering: permutations with 1 s in {1, 2}, and merges of
/// {1, 2} that miss state 1. At least one merge letter is included.
inline Dfa random_structured_dfa(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::vector<State>> tables;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<State> p(n);
    for (State q = 0; q < n; ++q) p[q] = q;
    std::shuffle(p.begin(), p.end(), rng);
    const bool merge = j == 0 || rng() % 3 == 0;
    const State first = merge ? 0 : static_cast<State>(rng() % 2);
    for (State q = 0; q < n; ++q) {
      if (p[q] == first) std::swap(p[q], p[0]);
    }
    if (merge) p[0] = p[1];
    tables.push_back(p);
  }
  std::shuffle(tables.begin(), tables.end(), rng);
  return Dfa(n, tables);
}

}  // namespace oracle
