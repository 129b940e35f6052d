#include "synchrokit/power_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace synchrokit {

PowerAutomaton::PowerAutomaton(const Dfa& dfa) : dfa_(&dfa) {
  const std::size_t n = dfa.size();
  if (n > kDenseLimit) return;
  const std::size_t subsets = std::size_t{1} << n;
  image_.assign(dfa.letter_count() * subsets, 0);
  for (Letter s = 0; s < dfa.letter_count(); ++s) {
    auto t = dfa.table(s);
    std::uint64_t* row = image_.data() + (static_cast<std::size_t>(s) << n);
    for (std::size_t bits = 1; bits < subsets; ++bits) {
      auto low = static_cast<unsigned>(std::countr_zero(bits));
      row[bits] = row[bits & (bits - 1)] | (std::uint64_t{1} << t[low]);
    }
  }
}

SubsetIndex::SubsetIndex(std::size_t n) {
  if (n <= 16) dense_.assign(std::size_t{1} << n, -1);
}

Word SearchTree::word_to(std::size_t node) const {
  std::vector<Letter> letters;
  for (auto i = static_cast<std::int32_t>(node); nodes[static_cast<std::size_t>(i)].parent >= 0;
       i = nodes[static_cast<std::size_t>(i)].parent) {
    letters.push_back(nodes[static_cast<std::size_t>(i)].letter);
  }
  std::reverse(letters.begin(), letters.end());
  return Word(std::move(letters));
}

std::vector<Letter> all_letters(const Dfa& dfa) {
  std::vector<Letter> out(dfa.letter_count());
  for (Letter s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

SearchTree reachable_closure(const PowerAutomaton& pa, StateSet start) {
  SearchTree tree;
  SubsetIndex index(pa.size());
  tree.nodes.push_back({start, -1, 0, 0});
  index.insert(start, 0);
  const auto k = static_cast<Letter>(pa.letter_count());
  for (std::size_t head = 0; head < tree.nodes.size(); ++head) {
    const SearchNode node = tree.nodes[head];
    for (Letter s = 0; s < k; ++s) {
      StateSet next = pa.image(node.set, s);
      if (index.find(next) >= 0) continue;
      index.insert(next, static_cast<std::int32_t>(tree.nodes.size()));
      tree.nodes.push_back({next, static_cast<std::int32_t>(head), s, node.depth + 1});
    }
  }
  return tree;
}

namespace {

CompressionResult make_result(const PowerAutomaton& pa, StateSet start, Word word) {
  CompressionResult result;
  result.profile.push_back(start.size());
  StateSet set = start;
  for (Letter s : word) {
    set = pa.image(set, s);
    result.profile.push_back(set.size());
  }
  result.final_set = set;
  result.word = std::move(word);
  return result;
}

}  // namespace

std::optional<CompressionResult> shortest_compressing_word(const Dfa& dfa, StateSet start,
                                                           std::size_t target_size,
                                                           const SearchOptions& options) {
  if (!start.subset_of(dfa.states())) throw std::invalid_argument("start set outside the state set");
  if (target_size < 1 || target_size > start.size()) {
    throw std::invalid_argument("target size must lie in [1, |start|]");
  }
  std::vector<Letter> letters;
  if (options.allowed_letters) {
    letters = *options.allowed_letters;
    if (letters.empty()) throw std::invalid_argument("allowed letter set is empty");
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    if (letters.back() >= dfa.letter_count()) throw std::invalid_argument("allowed letter out of range");
  } else {
    letters = all_letters(dfa);
  }
  PowerAutomaton pa(dfa);
  auto word = find_shortest_word(
      pa, start, [target_size](StateSet s) { return s.size() <= target_size; }, letters,
      options.max_len);
  if (!word) return std::nullopt;
  return make_result(pa, start, std::move(*word));
}

std::size_t rank(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  return summarize_reach(pa, dfa.states()).min_size;
}

CompressionResult rank_witness(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  auto tree = reachable_closure(pa, dfa.states());
  std::size_t best = 0;
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    if (tree.nodes[i].set.size() < tree.nodes[best].set.size()) best = i;
  }
  return make_result(pa, dfa.states(), tree.word_to(best));
}

std::vector<std::size_t> size_profile(const Dfa& dfa, const Word& word) {
  std::vector<std::size_t> out{dfa.size()};
  StateSet set = dfa.states();
  for (Letter s : word) {
    set = apply_letter(dfa, set, s);
    out.push_back(set.size());
  }
  return out;
}

std::optional<GreedyProfile> greedy_word(const Dfa& dfa, std::size_t target_corank) {
  if (target_corank < 1) throw std::invalid_argument("target corank must be at least 1");
  PowerAutomaton pa(dfa);
  GreedyProfile out;
  StateSet set = dfa.states();
  const std::size_t n = dfa.size();
  while (n - set.size() < target_corank) {
    if (set.size() <= 1) return std::nullopt;
    const std::size_t goal = set.size() - 1;
    auto stage = find_shortest_word(pa, set, [goal](StateSet s) { return s.size() <= goal; });
    if (!stage) return std::nullopt;
    set = pa.image(set, *stage);
    out.stage_lengths.push_back(stage->size());
    out.total += *stage;
    out.stage_words.push_back(std::move(*stage));
  }
  return out;
}

std::optional<std::uint32_t> ReachSummary::steps_to_exact(std::size_t m) const {
  if (m >= exact.size() || exact[m] == kNever) return std::nullopt;
  return exact[m];
}

std::optional<std::uint32_t> ReachSummary::steps_to_at_most(std::size_t m) const {
  if (m >= at_most.size() || at_most[m] == kNever) return std::nullopt;
  return at_most[m];
}

ReachSummary summarize_reach(const PowerAutomaton& pa, StateSet start) {
  const std::size_t n = pa.size();
  ReachSummary out;
  out.exact.assign(n + 1, ReachSummary::kNever);
  out.at_most.assign(n + 1, ReachSummary::kNever);
  out.min_size = start.size();

  // Plain BFS without parent links; this runs once per automaton in sweeps.
  thread_local std::vector<std::uint64_t> queue;
  thread_local std::vector<std::uint32_t> depth;
  queue.clear();
  depth.clear();
  SubsetIndex seen(n);
  queue.push_back(start.bits());
  depth.push_back(0);
  seen.insert(start, 0);
  const auto k = static_cast<Letter>(pa.letter_count());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    StateSet set = StateSet::from_bits(queue[head]);
    const std::uint32_t d = depth[head];
    auto& e = out.exact[set.size()];
    if (e == ReachSummary::kNever) e = d;
    out.min_size = std::min(out.min_size, set.size());
    for (Letter s = 0; s < k; ++s) {
      StateSet next = pa.image(set, s);
      if (seen.find(next) >= 0) continue;
      seen.insert(next, 0);
      queue.push_back(next.bits());
      depth.push_back(d + 1);
    }
  }
  std::uint32_t best = ReachSummary::kNever;
  for (std::size_t m = 0; m <= n; ++m) {
    best = std::min(best, out.exact[m]);
    out.at_most[m] = best;
  }
  return out;
}

std::vector<std::uint16_t> distances_to_size(const PowerAutomaton& pa, std::size_t max_size) {
  if (!pa.dense()) throw std::invalid_argument("distance fields need a dense power automaton");
  const std::size_t n = pa.size();
  const std::size_t subsets = std::size_t{1} << n;
  const auto k = static_cast<Letter>(pa.letter_count());

  // Predecessor lists in compressed form: preds[offset[t] .. offset[t+1]).
  thread_local std::vector<std::uint32_t> offset;
  thread_local std::vector<std::uint32_t> preds;
  thread_local std::vector<std::uint32_t> queue;
  offset.assign(subsets + 1, 0);
  for (std::size_t bits = 0; bits < subsets; ++bits) {
    for (Letter s = 0; s < k; ++s) ++offset[pa.image(StateSet::from_bits(bits), s).bits() + 1];
  }
  for (std::size_t i = 0; i < subsets; ++i) offset[i + 1] += offset[i];
  preds.assign(offset[subsets], 0);
  {
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t bits = 0; bits < subsets; ++bits) {
      for (Letter s = 0; s < k; ++s) {
        auto t = pa.image(StateSet::from_bits(bits), s).bits();
        preds[fill[t]++] = static_cast<std::uint32_t>(bits);
      }
    }
  }

  std::vector<std::uint16_t> dist(subsets, kUnreachable);
  queue.clear();
  for (std::size_t bits = 0; bits < subsets; ++bits) {
    if (StateSet::from_bits(bits).size() <= max_size) {
      dist[bits] = 0;
      queue.push_back(static_cast<std::uint32_t>(bits));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t t = queue[head];
    for (std::uint32_t i = offset[t]; i < offset[t + 1]; ++i) {
      const std::uint32_t p = preds[i];
      if (dist[p] != kUnreachable) continue;
      dist[p] = static_cast<std::uint16_t>(dist[t] + 1);
      queue.push_back(p);
    }
  }
  return dist;
}

}  // namespace synchrokit
