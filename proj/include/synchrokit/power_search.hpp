#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "synchrokit/automaton.hpp"

namespace synchrokit {

/// Subset-level view of a Dfa. For small n the image of every subset under
/// every letter is tabulated once. The Dfa must outlive this object.
class PowerAutomaton {
 public:
  static constexpr std::size_t kDenseLimit = 12;

  explicit PowerAutomaton(const Dfa& dfa);
  PowerAutomaton(Dfa&&) = delete;

  const Dfa& dfa() const { return *dfa_; }
  std::size_t size() const { return dfa_->size(); }
  std::size_t letter_count() const { return dfa_->letter_count(); }
  bool dense() const { return !image_.empty(); }
  StateSet states() const { return dfa_->states(); }

  StateSet image(StateSet set, Letter s) const {
    if (!image_.empty()) {
      return StateSet::from_bits(image_[(static_cast<std::size_t>(s) << dfa_->size()) | set.bits()]);
    }
    StateSet out;
    auto t = dfa_->table(s);
    set.for_each([&](State q) { out.insert(t[q]); });
    return out;
  }
  StateSet image(StateSet set, const Word& word) const {
    for (Letter s : word) set = image(set, s);
    return set;
  }

 private:
  const Dfa* dfa_;
  std::vector<std::uint64_t> image_;
};

/// Maps visited subsets to node ids: a flat array for n <= 16, a hash map
/// beyond that.
class SubsetIndex {
 public:
  explicit SubsetIndex(std::size_t n);
  std::int32_t find(StateSet set) const {
    if (!dense_.empty()) return dense_[set.bits()];
    auto it = sparse_.find(set.bits());
    return it == sparse_.end() ? -1 : it->second;
  }
  void insert(StateSet set, std::int32_t id) {
    if (!dense_.empty()) {
      dense_[set.bits()] = id;
    } else {
      sparse_.emplace(set.bits(), id);
    }
  }

 private:
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

struct SearchNode {
  StateSet set;
  std::int32_t parent;  // -1 for the root
  Letter letter;        // letter on the edge from the parent
  std::uint32_t depth;
};

/// Breadth-first tree over subsets in discovery order. Letters are tried in
/// the given order, so the path to every node is the lexicographically least
/// among its shortest paths.
class SearchTree {
 public:
  std::vector<SearchNode> nodes;
  Word word_to(std::size_t node) const;
};

std::vector<Letter> all_letters(const Dfa& dfa);

/// Shortest word over `letters` taking `start` to a set satisfying `goal`,
/// lexicographically least among the shortest. `start` itself is tested
/// first. Absent if no such word of length <= max_len exists.
template <class Goal>
std::optional<Word> find_shortest_word(const PowerAutomaton& pa, StateSet start, Goal&& goal,
                                       std::span<const Letter> letters,
                                       std::optional<std::size_t> max_len = std::nullopt) {
  SearchTree tree;
  if (goal(start)) return Word{};
  SubsetIndex index(pa.size());
  tree.nodes.push_back({start, -1, 0, 0});
  index.insert(start, 0);
  for (std::size_t head = 0; head < tree.nodes.size(); ++head) {
    const SearchNode node = tree.nodes[head];
    if (max_len && node.depth >= *max_len) break;
    for (Letter s : letters) {
      StateSet next = pa.image(node.set, s);
      if (index.find(next) >= 0) continue;
      auto id = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.push_back({next, static_cast<std::int32_t>(head), s, node.depth + 1});
      index.insert(next, id);
      if (goal(next)) return tree.word_to(static_cast<std::size_t>(id));
    }
  }
  return std::nullopt;
}

template <class Goal>
std::optional<Word> find_shortest_word(const PowerAutomaton& pa, StateSet start, Goal&& goal,
                                       std::optional<std::size_t> max_len = std::nullopt) {
  auto letters = all_letters(pa.dfa());
  return find_shortest_word(pa, start, std::forward<Goal>(goal), letters, max_len);
}

/// Every subset reachable from `start` (forward closure), breadth first.
SearchTree reachable_closure(const PowerAutomaton& pa, StateSet start);

struct CompressionResult {
  Word word;
  StateSet final_set;
  /// |start . w_1..w_i| for i = 0..|w|.
  std::vector<std::size_t> profile;
};

struct SearchOptions {
  /// Letters the word may use; all letters when absent.
  std::optional<std::vector<Letter>> allowed_letters;
  std::optional<std::size_t> max_len;
};

/// Minimal-length word over the allowed letters taking `start` to a set of
/// size <= target_size, ties broken lexicographically by letter index.
/// Throws std::invalid_argument unless 1 <= target_size <= |start| and the
/// allowed letters are a nonempty set of valid indices.
std::optional<CompressionResult> shortest_compressing_word(const Dfa& dfa, StateSet start,
                                                           std::size_t target_size,
                                                           const SearchOptions& options = {});

/// Minimal |Q w| over all words w.
std::size_t rank(const Dfa& dfa);
/// A shortest word reaching the rank, with its profile.
CompressionResult rank_witness(const Dfa& dfa);

/// Sizes of Q . prefix for every prefix of w, including the empty one.
std::vector<std::size_t> size_profile(const Dfa& dfa, const Word& word);

struct GreedyProfile {
  std::vector<Word> stage_words;
  std::vector<std::size_t> stage_lengths;
  Word total;
};

/// Repeatedly appends a shortest word strictly shrinking the current image
/// until |Q| - |image| >= target_corank. Absent if some stage cannot shrink.
std::optional<GreedyProfile> greedy_word(const Dfa& dfa, std::size_t target_corank);

/// Shortest-word lengths from a start set, grouped by image size.
struct ReachSummary {
  static constexpr std::uint32_t kNever = std::numeric_limits<std::uint32_t>::max();
  /// exact[m]: shortest length reaching a set of size exactly m.
  std::vector<std::uint32_t> exact;
  /// at_most[m]: shortest length reaching a set of size <= m.
  std::vector<std::uint32_t> at_most;
  std::size_t min_size = 0;

  std::optional<std::uint32_t> steps_to_exact(std::size_t m) const;
  std::optional<std::uint32_t> steps_to_at_most(std::size_t m) const;
};

ReachSummary summarize_reach(const PowerAutomaton& pa, StateSet start);

/// For every subset S (indexed by its bits), the length of a shortest word
/// taking S to a set of size <= max_size, or kUnreachable. Requires a dense
/// PowerAutomaton.
inline constexpr std::uint16_t kUnreachable = std::numeric_limits<std::uint16_t>::max();
std::vector<std::uint16_t> distances_to_size(const PowerAutomaton& pa, std::size_t max_size);

}  // namespace synchrokit
