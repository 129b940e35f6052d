#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synchrokit {

/// Internal 0-based state index. Everything user-facing prints states 1-based.
using State = std::uint8_t;
/// Index into Dfa letters.
using Letter = std::uint32_t;

inline constexpr std::size_t kMaxStates = 64;

/// A subset of the state set, stored as a 64-bit mask (bit i = state i).
class StateSet {
 public:
  constexpr StateSet() = default;

  static constexpr StateSet from_bits(std::uint64_t bits) { return StateSet(bits); }
  static constexpr StateSet full(std::size_t n) {
    return StateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr StateSet singleton(State s) { return StateSet(std::uint64_t{1} << s); }
  /// Builds a set from 1-based state numbers, as they appear in files and messages.
  static StateSet one_based(std::initializer_list<std::size_t> states);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(State s) const { return (bits_ >> s) & 1U; }
  constexpr bool contains_all(StateSet other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool subset_of(StateSet other) const { return other.contains_all(*this); }

  constexpr void insert(State s) { bits_ |= std::uint64_t{1} << s; }
  constexpr void erase(State s) { bits_ &= ~(std::uint64_t{1} << s); }

  constexpr StateSet with(State s) const { return StateSet(bits_ | (std::uint64_t{1} << s)); }
  constexpr StateSet without(State s) const { return StateSet(bits_ & ~(std::uint64_t{1} << s)); }

  friend constexpr StateSet operator|(StateSet x, StateSet y) { return StateSet(x.bits_ | y.bits_); }
  friend constexpr StateSet operator&(StateSet x, StateSet y) { return StateSet(x.bits_ & y.bits_); }
  friend constexpr StateSet operator-(StateSet x, StateSet y) { return StateSet(x.bits_ & ~y.bits_); }
  friend constexpr bool operator==(StateSet, StateSet) = default;
  friend constexpr auto operator<=>(StateSet, StateSet) = default;

  /// Calls f(State) for every member in increasing order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      f(static_cast<State>(std::countr_zero(rest)));
    }
  }

  std::vector<State> members() const;
  /// "{1,3,4}" in 1-based numbering.
  std::string to_string() const;

 private:
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// A finite sequence of letter indices; the empty word is the identity action.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  const std::vector<Letter>& letters() const { return letters_; }

  void push_back(Letter s) { letters_.push_back(s); }
  void pop_back() { letters_.pop_back(); }
  Word& operator+=(const Word& other);
  friend Word operator+(Word lhs, const Word& rhs) { return lhs += rhs; }
  /// The first `length` letters (clamped).
  Word prefix(std::size_t length) const;
  /// `count` copies of this word.
  Word repeat(std::size_t count) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Deterministic automaton without initial or final states: n states and k
/// total transition functions. Immutable after construction.
class Dfa {
 public:
  /// `tables[j][q]` is the 0-based image of state q under letter j. Empty
  /// `names` selects the defaults a, b, c, ...
  Dfa(std::size_t n, const std::vector<std::vector<State>>& tables,
      std::vector<std::string> names = {});

  std::size_t size() const { return n_; }
  std::size_t letter_count() const { return k_; }

  State next(State q, Letter s) const { return table_[static_cast<std::size_t>(s) * n_ + q]; }
  std::span<const State> table(Letter s) const {
    return {table_.data() + static_cast<std::size_t>(s) * n_, n_};
  }
  std::vector<std::vector<State>> tables() const;

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Letter s) const { return names_.at(s); }
  std::optional<Letter> find_letter(std::string_view name) const;
  bool has_default_names() const;

  StateSet states() const { return StateSet::full(n_); }
  bool is_permutation(Letter s) const;

  /// Same automaton with state q relabelled old_to_new[q].
  Dfa renumbered(std::span<const State> old_to_new) const;
  /// Same automaton with one more letter appended.
  Dfa with_letter(std::vector<State> table, std::string name) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<State> table_;
  std::vector<std::string> names_;
};

/// a, b, ..., z, then s26, s27, ...
std::string default_letter_name(Letter index);

/// { q s : q in R }. Throws std::out_of_range on a bad letter or a set that
/// is not contained in the state set.
StateSet apply_letter(const Dfa& dfa, StateSet set, Letter s);
/// Left fold of apply_letter; the empty word leaves the set unchanged.
StateSet apply_word(const Dfa& dfa, StateSet set, const Word& word);

/// Letter names concatenated (space-separated if any name is longer than one
/// character). The empty word renders as "-".
std::string format_word(const Dfa& dfa, const Word& word);
/// Inverse of format_word. Accepts "-" or "" for the empty word. Throws
/// std::invalid_argument on an unknown letter name.
Word parse_word(const Dfa& dfa, std::string_view text);

}  // namespace synchrokit
