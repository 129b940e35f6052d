#include "synchrokit/extremal.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "synchrokit/errors.hpp"
#include "synchrokit/power_search.hpp"

namespace synchrokit {
namespace {

constexpr std::size_t kMaxLength = 9;

struct TaggedNode {
  StateSet set;
  std::uint8_t tag;
  std::int32_t parent;
  Letter letter;
};

/// Deduplicates (set, tag) pairs within one layer.
class LayerIndex {
 public:
  explicit LayerIndex(std::size_t n) {
    if (n <= 16) dense_.assign(std::size_t{2} << n, -1);
  }
  std::int32_t find(StateSet set, std::uint8_t tag) const {
    const std::uint64_t key = (set.bits() << 1) | tag;
    if (!dense_.empty()) return dense_[key];
    auto it = sparse_.find(key);
    return it == sparse_.end() ? -1 : it->second;
  }
  void insert(StateSet set, std::uint8_t tag, std::int32_t id) {
    const std::uint64_t key = (set.bits() << 1) | tag;
    if (!dense_.empty()) {
      dense_[key] = id;
    } else {
      sparse_.emplace(key, id);
    }
  }
  void clear(const std::vector<TaggedNode>& layer) {
    if (dense_.empty()) {
      sparse_.clear();
      return;
    }
    for (const auto& node : layer) dense_[(node.set.bits() << 1) | node.tag] = -1;
  }

 private:
  std::vector<std::int32_t> dense_;
  std::unordered_map<std::uint64_t, std::int32_t> sparse_;
};

/// Walks all words of length <= max_len from Q, one layer per length,
/// keeping one representative (the lexicographically least word) per
/// (set, tag). `step(len, tag, set)` gives the tag of a prefix of length
/// len ending in set; `bad` flags a violating word; `prune` drops prefixes
/// that can never become bad. Returns the first bad word in length-lex order.
template <class Step, class Bad, class Prune>
std::optional<Word> find_tagged_word(const PowerAutomaton& pa, std::size_t max_len, Step step, Bad bad,
                                     Prune prune) {
  std::vector<std::vector<TaggedNode>> layers(1);
  layers[0].push_back({pa.states(), 0, -1, 0});
  auto reconstruct = [&](std::size_t len, std::size_t idx) {
    std::vector<Letter> letters(len);
    for (std::size_t l = len; l > 0; --l) {
      const auto& node = layers[l][idx];
      letters[l - 1] = node.letter;
      idx = static_cast<std::size_t>(node.parent);
    }
    return Word(std::move(letters));
  };
  if (bad(0, std::uint8_t{0}, pa.states())) return Word{};

  LayerIndex index(pa.size());
  const auto k = static_cast<Letter>(pa.letter_count());
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<TaggedNode> next;
    const auto& prev = layers[len - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      for (Letter s = 0; s < k; ++s) {
        StateSet set = pa.image(prev[i].set, s);
        std::uint8_t tag = step(len, prev[i].tag, set);
        if (bad(len, tag, set)) {
          layers.push_back(std::move(next));
          layers.back().push_back({set, tag, static_cast<std::int32_t>(i), s});
          return reconstruct(len, layers.back().size() - 1);
        }
        if (prune(len, tag, set) || index.find(set, tag) >= 0) continue;
        index.insert(set, tag, static_cast<std::int32_t>(next.size()));
        next.push_back({set, tag, static_cast<std::int32_t>(i), s});
      }
    }
    index.clear(next);
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return std::nullopt;
}

ConditionResult condition_1(const PowerAutomaton& pa) {
  const std::size_t n = pa.size();
  auto witness = find_tagged_word(
      pa, kMaxLength,
      [n](std::size_t len, std::uint8_t tag, StateSet set) -> std::uint8_t {
        if (len == 4) return set.size() + 2 <= n ? 1 : 0;
        return tag;
      },
      [n](std::size_t len, std::uint8_t tag, StateSet set) {
        return set.size() + 3 == n && (len < 4 || tag == 1);
      },
      [n](std::size_t len, std::uint8_t tag, StateSet set) {
        return set.size() + 3 < n || (len >= 4 && tag == 0);
      });
  return {!witness.has_value(), std::move(witness)};
}

ConditionResult condition_4(const PowerAutomaton& pa) {
  const std::size_t n = pa.size();
  auto expected = [n](std::size_t len) -> std::size_t {
    if (len == 0) return n;
    if (len <= 4) return n - 1;
    if (len <= 8) return n - 2;
    return n - 3;
  };
  auto witness = find_tagged_word(
      pa, kMaxLength,
      [&](std::size_t len, std::uint8_t tag, StateSet set) -> std::uint8_t {
        return tag | (set.size() != expected(len) ? 1 : 0);
      },
      [n](std::size_t len, std::uint8_t tag, StateSet set) {
        return set.size() + 3 == n && (len < kMaxLength || tag == 1);
      },
      [n](std::size_t, std::uint8_t, StateSet set) { return set.size() + 3 < n; });
  return {!witness.has_value(), std::move(witness)};
}

/// Roles of states 1..4 in the original numbering.
using Roles = std::array<State, 4>;

GreedyLetterClass classify_with_roles(const Dfa& dfa, Letter s, const Roles& r) {
  auto at = [&](State q) { return dfa.next(q, s); };
  const bool perm = dfa.is_permutation(s);
  if (perm && at(r[0]) == r[0] && at(r[1]) == r[1] && at(r[2]) == r[2] && at(r[3]) == r[3]) {
    return GreedyLetterClass::kEqI;
  }
  if (perm && at(r[0]) == r[1] && at(r[1]) == r[2] && at(r[2]) == r[3] && at(r[3]) == r[0]) {
    return GreedyLetterClass::kEqA;
  }
  if (!perm && at(r[0]) == at(r[1]) && at(r[2]) == r[2] && at(r[3]) == r[3] &&
      apply_letter(dfa, dfa.states(), s) == dfa.states().without(r[0])) {
    return GreedyLetterClass::kEqB;
  }
  if (perm && at(r[0]) == r[0] && at(r[1]) == r[3] && at(r[2]) == r[2] && at(r[3]) == r[1]) {
    return GreedyLetterClass::kEqD;
  }
  return GreedyLetterClass::kOther;
}

std::vector<State> renumbering_from_roles(std::size_t n, const Roles& r) {
  std::vector<State> perm(n, 0);
  std::vector<bool> used(n, false);
  for (State i = 0; i < 4; ++i) {
    perm[r[i]] = i;
    used[r[i]] = true;
  }
  State next = 4;
  for (State q = 0; q < n; ++q) {
    if (!used[q]) perm[q] = next++;
  }
  return perm;
}

std::optional<std::vector<State>> condition_3(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  if (n < 4) return std::nullopt;
  for (Letter t = 0; t < dfa.letter_count(); ++t) {
    if (dfa.is_permutation(t)) continue;
    StateSet image = apply_letter(dfa, dfa.states(), t);
    if (image.size() + 1 != n) continue;
    const auto one = static_cast<State>(std::countr_zero((dfa.states() - image).bits()));
    std::optional<State> two;
    for (State q = 0; q < n && !two; ++q) {
      if (q != one && dfa.next(q, t) == dfa.next(one, t)) two = q;
    }
    if (!two) continue;
    for (Letter p = 0; p < dfa.letter_count(); ++p) {
      if (dfa.next(one, p) != *two || !dfa.is_permutation(p)) continue;
      const State three = dfa.next(*two, p);
      const State four = dfa.next(three, p);
      if (three == one || four == one || dfa.next(four, p) != one) continue;
      const Roles roles{one, *two, three, four};
      bool all = true;
      for (Letter s = 0; s < dfa.letter_count() && all; ++s) {
        auto c = classify_with_roles(dfa, s, roles);
        all = c == GreedyLetterClass::kEqI || c == GreedyLetterClass::kEqA || c == GreedyLetterClass::kEqB;
      }
      if (all) return renumbering_from_roles(n, roles);
    }
  }
  return std::nullopt;
}

/// Condition 2 over every third letter, or (sharpened) only over a, d and
/// the EQ_D letters.
Condition2Result condition_2(const Dfa& dfa, const PowerAutomaton& pa, bool sharpened) {
  Condition2Result out;
  if (!satisfies_corank2_hypothesis(dfa)) {
    out.note = "corank-2 structure does not hold";
    return out;
  }
  try {
    out.certificate = extract_certificate(dfa);
  } catch (const CertificateContradiction& e) {
    out.note = e.what();
    return out;
  }
  const auto& cert = *out.certificate;
  const std::size_t n = dfa.size();

  std::vector<Letter> thirds;
  if (!sharpened) {
    thirds = all_letters(dfa);
  } else {
    thirds.push_back(cert.a);
    if (cert.d != cert.a) thirds.push_back(cert.d);
    if (cert.orbit.size() == 4) {
      const Dfa view = certified_view(dfa, cert);
      const Roles roles{0, 1, cert.orbit[2], cert.orbit[3]};
      for (Letter s = 0; s < view.letter_count(); ++s) {
        if (s != cert.a && classify_with_roles(view, s, roles) == GreedyLetterClass::kEqD) thirds.push_back(s);
      }
    }
  }

  const StateSet qba = pa.image(pa.image(dfa.states(), cert.b), cert.a);
  for (Letter s : thirds) {
    const StateSet t = pa.image(pa.image(qba, s), cert.b);
    if (t.size() + 2 > n) continue;
    auto rest = find_shortest_word(
        pa, t, [n](StateSet x) { return x.size() + 3 == n; }, kMaxLength - 4);
    if (rest) {
      out.witness = Word{cert.b, cert.a, s, cert.b} + *rest;
      return out;
    }
  }
  out.holds = true;
  return out;
}

bool hypothesis(const PowerAutomaton& pa) {
  const std::size_t n = pa.size();
  if (n < 4) return false;
  auto steps = summarize_reach(pa, pa.states()).steps_to_exact(n - 3);
  return steps && *steps <= kMaxLength;
}

void require_hypothesis(const PowerAutomaton& pa) {
  if (!hypothesis(pa)) throw HypothesisFailed("no word of length <= 9 compresses Q to size exactly n-3");
}

}  // namespace

std::string to_string(GreedyLetterClass c) {
  switch (c) {
    case GreedyLetterClass::kEqI: return "EQ_I";
    case GreedyLetterClass::kEqA: return "EQ_A";
    case GreedyLetterClass::kEqB: return "EQ_B";
    case GreedyLetterClass::kEqD: return "EQ_D";
    case GreedyLetterClass::kOther: return "OTHER";
  }
  return "OTHER";
}

GreedyLetterClass classify_greedy_letter(const Dfa& renumbered, Letter s) {
  if (renumbered.size() < 4) throw std::invalid_argument("letter classes need at least 4 states");
  return classify_with_roles(renumbered, s, Roles{0, 1, 2, 3});
}

bool hypothesis_greedy(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  return hypothesis(pa);
}

ConditionResult check_condition_1(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  require_hypothesis(pa);
  return condition_1(pa);
}

Condition2Result check_condition_2(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  require_hypothesis(pa);
  return condition_2(dfa, pa, false);
}

Condition2Result check_condition_2_sharpened(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  require_hypothesis(pa);
  return condition_2(dfa, pa, true);
}

std::optional<std::vector<State>> check_condition_3(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  require_hypothesis(pa);
  return condition_3(dfa);
}

ConditionResult check_condition_4(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  require_hypothesis(pa);
  return condition_4(pa);
}

bool GreedyConditionReport::consistent() const {
  return cond1 == cond2 && cond2 == cond3 && cond3 == cond4 && cond2_sharpened == cond2 && detector_sound;
}

GreedyConditionReport assert_equivalence(const Dfa& dfa) {
  PowerAutomaton pa(dfa);
  require_hypothesis(pa);
  GreedyConditionReport report;

  auto c1 = condition_1(pa);
  report.cond1 = c1.holds;
  report.cond1_witness = std::move(c1.witness);

  auto c2 = condition_2(dfa, pa, false);
  report.cond2 = c2.holds;
  report.cond2_witness = std::move(c2.witness);
  report.certificate = std::move(c2.certificate);
  report.cond2_sharpened = condition_2(dfa, pa, true).holds;

  report.renumbering = condition_3(dfa);
  report.cond3 = report.renumbering.has_value();
  if (report.renumbering) {
    const Dfa view = dfa.renumbered(*report.renumbering);
    for (Letter s = 0; s < view.letter_count(); ++s) {
      auto c = classify_greedy_letter(view, s);
      if (c != GreedyLetterClass::kEqI && c != GreedyLetterClass::kEqA && c != GreedyLetterClass::kEqB) {
        report.detector_sound = false;
      }
    }
  }

  auto c4 = condition_4(pa);
  report.cond4 = c4.holds;
  report.cond4_witness = std::move(c4.witness);
  return report;
}

Dfa build_extremal_dfa(std::size_t n, bool include_identity, const std::optional<std::vector<State>>& tail) {
  if (n < 4 || n > kMaxStates) throw std::invalid_argument("extremal automata need 4 <= n <= 64");
  std::vector<State> cycle(n);
  for (State q = 0; q < n; ++q) cycle[q] = q;
  cycle[0] = 1;
  cycle[1] = 2;
  cycle[2] = 3;
  cycle[3] = 0;
  if (tail) {
    if (tail->size() != n - 4) throw std::invalid_argument("tail permutation has the wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < tail->size(); ++i) {
      State t = (*tail)[i];
      if (t < 4 || t >= n || seen[t]) throw std::invalid_argument("tail is not a permutation of states 5..n");
      seen[t] = true;
      cycle[4 + i] = t;
    }
  }
  std::vector<State> merge(n);
  for (State q = 0; q < n; ++q) merge[q] = q;
  merge[0] = 1;

  std::vector<std::vector<State>> tables;
  std::vector<std::string> names;
  if (include_identity) {
    std::vector<State> identity(n);
    for (State q = 0; q < n; ++q) identity[q] = q;
    tables.push_back(std::move(identity));
    names.emplace_back("e");
  }
  tables.push_back(std::move(cycle));
  names.emplace_back("a");
  tables.push_back(std::move(merge));
  names.emplace_back("b");
  return Dfa(n, tables, std::move(names));
}

PincorResult pincor_check(const Dfa& dfa, const StructureCertificate& cert) {
  auto report = validate_certificate(dfa, cert);
  if (const auto* failure = report.first_failure()) {
    throw HypothesisFailed("certificate does not validate: clause (" + failure->clause + ") " + failure->detail);
  }
  const std::size_t n = dfa.size();
  PowerAutomaton pa(dfa);
  if (n < 4 || summarize_reach(pa, dfa.states()).min_size + 3 > n) {
    throw HypothesisFailed("Q cannot be compressed to size n-3");
  }
  PincorResult out;
  const StateSet badb = pa.image(dfa.states(), Word{cert.b, cert.a, cert.d, cert.b});
  auto to_corank3 = [n](StateSet s) { return s.size() + 3 <= n; };
  out.shortest_from_badb = find_shortest_word(pa, badb, to_corank3);
  out.applicable = !out.shortest_from_badb || out.shortest_from_badb->size() > 5;
  if (out.applicable) {
    const Word a3{cert.a, cert.a, cert.a};
    const Word w = Word{cert.b} + a3 + Word{cert.b} + a3 + Word{cert.b};
    out.holds = pa.image(dfa.states(), w).size() + 3 == n;
  }
  return out;
}

}  // namespace synchrokit
