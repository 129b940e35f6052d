#include "synchrokit/automaton.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace synchrokit {

StateSet StateSet::one_based(std::initializer_list<std::size_t> states) {
  StateSet set;
  for (std::size_t s : states) {
    if (s < 1 || s > kMaxStates) {
      throw std::out_of_range("state " + std::to_string(s) + " outside [1, 64]");
    }
    set.insert(static_cast<State>(s - 1));
  }
  return set;
}

std::vector<State> StateSet::members() const {
  std::vector<State> out;
  out.reserve(size());
  for_each([&](State s) { out.push_back(s); });
  return out;
}

std::string StateSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](State s) {
    if (!first) out += ',';
    out += std::to_string(s + 1);
    first = false;
  });
  return out + "}";
}

Word& Word::operator+=(const Word& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
  return *this;
}

Word Word::prefix(std::size_t length) const {
  length = std::min(length, letters_.size());
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Word Word::repeat(std::size_t count) const {
  Word out;
  for (std::size_t i = 0; i < count; ++i) out += *this;
  return out;
}

std::string default_letter_name(Letter index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "s" + std::to_string(index);
}

Dfa::Dfa(std::size_t n, const std::vector<std::vector<State>>& tables,
         std::vector<std::string> names)
    : n_(n), k_(tables.size()), names_(std::move(names)) {
  if (n_ < 1) throw std::invalid_argument("automaton needs at least one state");
  if (n_ > kMaxStates) {
    throw std::invalid_argument("automaton has " + std::to_string(n_) +
                                " states; at most 64 are supported");
  }
  if (k_ < 1) throw std::invalid_argument("automaton needs at least one letter");
  table_.reserve(n_ * k_);
  for (const auto& t : tables) {
    if (t.size() != n_) throw std::invalid_argument("transition table has the wrong length");
    for (State q : t) {
      if (q >= n_) throw std::invalid_argument("transition target outside the state set");
    }
    table_.insert(table_.end(), t.begin(), t.end());
  }
  if (names_.empty()) {
    for (Letter j = 0; j < k_; ++j) names_.push_back(default_letter_name(j));
  }
  if (names_.size() != k_) throw std::invalid_argument("letter name count does not match letter count");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw std::invalid_argument("empty letter name");
    if (name.find_first_of(" \t\r\n") != std::string::npos) {
      throw std::invalid_argument("letter name '" + name + "' contains whitespace");
    }
    if (!seen.insert(name).second) throw std::invalid_argument("duplicate letter name '" + name + "'");
  }
}

std::vector<std::vector<State>> Dfa::tables() const {
  std::vector<std::vector<State>> out;
  out.reserve(k_);
  for (Letter s = 0; s < k_; ++s) {
    auto t = table(s);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

std::optional<Letter> Dfa::find_letter(std::string_view name) const {
  for (Letter s = 0; s < k_; ++s) {
    if (names_[s] == name) return s;
  }
  return std::nullopt;
}

bool Dfa::has_default_names() const {
  for (Letter s = 0; s < k_; ++s) {
    if (names_[s] != default_letter_name(s)) return false;
  }
  return true;
}

bool Dfa::is_permutation(Letter s) const {
  std::uint64_t seen = 0;
  for (State q : table(s)) seen |= std::uint64_t{1} << q;
  return StateSet::from_bits(seen).size() == n_;
}

Dfa Dfa::renumbered(std::span<const State> old_to_new) const {
  if (old_to_new.size() != n_) throw std::invalid_argument("renumbering has the wrong length");
  std::uint64_t seen = 0;
  for (State q : old_to_new) {
    if (q >= n_) throw std::invalid_argument("renumbering target outside the state set");
    seen |= std::uint64_t{1} << q;
  }
  if (StateSet::from_bits(seen).size() != n_) throw std::invalid_argument("renumbering is not a permutation");
  std::vector<std::vector<State>> out(k_, std::vector<State>(n_));
  for (Letter s = 0; s < k_; ++s) {
    for (State q = 0; q < n_; ++q) out[s][old_to_new[q]] = old_to_new[next(q, s)];
  }
  return Dfa(n_, out, names_);
}

Dfa Dfa::with_letter(std::vector<State> table, std::string name) const {
  auto t = tables();
  t.push_back(std::move(table));
  auto names = names_;
  names.push_back(std::move(name));
  return Dfa(n_, t, std::move(names));
}

StateSet apply_letter(const Dfa& dfa, StateSet set, Letter s) {
  if (s >= dfa.letter_count()) {
    throw std::out_of_range("letter index " + std::to_string(s) + " out of range");
  }
  if (!set.subset_of(dfa.states())) throw std::out_of_range("set is not contained in the state set");
  StateSet out;
  auto t = dfa.table(s);
  set.for_each([&](State q) { out.insert(t[q]); });
  return out;
}

StateSet apply_word(const Dfa& dfa, StateSet set, const Word& word) {
  for (Letter s : word) set = apply_letter(dfa, set, s);
  return set;
}

std::string format_word(const Dfa& dfa, const Word& word) {
  if (word.empty()) return "-";
  bool single = std::all_of(dfa.names().begin(), dfa.names().end(),
                            [](const std::string& n) { return n.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single && i > 0) out += ' ';
    out += dfa.name(word[i]);
  }
  return out;
}

Word parse_word(const Dfa& dfa, std::string_view text) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '.'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  Word word;
  if (text.empty() || text == "-") return word;

  if (std::any_of(text.begin(), text.end(), is_space)) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j])) ++j;
      if (j > i) {
        auto token = text.substr(i, j - i);
        auto s = dfa.find_letter(token);
        if (!s) throw std::invalid_argument("unknown letter '" + std::string(token) + "'");
        word.push_back(*s);
      }
      i = j;
    }
    return word;
  }

  // Longest-match tokenization over the letter names.
  std::size_t i = 0;
  while (i < text.size()) {
    std::optional<Letter> best;
    std::size_t best_len = 0;
    for (Letter s = 0; s < dfa.letter_count(); ++s) {
      const auto& name = dfa.name(s);
      if (name.size() > best_len && text.substr(i, name.size()) == name) {
        best = s;
        best_len = name.size();
      }
    }
    if (!best) throw std::invalid_argument("unknown letter at '" + std::string(text.substr(i)) + "'");
    word.push_back(*best);
    i += best_len;
  }
  return word;
}

}  // namespace synchrokit
