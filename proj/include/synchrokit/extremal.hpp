#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synchrokit/automaton.hpp"
#include "synchrokit/structure.hpp"

namespace synchrokit {

// Detection of automata on which greedy compression to corank 3 fails. All
// four conditions below are stated for automata where some word of length
// <= 9 compresses Q to size exactly n-3; "every choice of w" ranges over
// those words.
//
//   (1) every such w has |w| >= 4 and |Q w1..w4| > n-2
//   (2) the corank-2 structure holds, and every such w starting b a ? b has
//       |Q w1..w4| > n-2
//   (3) up to renumbering, every letter is EQ_I, EQ_A or EQ_B
//   (4) every such w has length 9 and size profile
//       (n, n-1, n-1, n-1, n-1, n-2, n-2, n-2, n-2, n-3)

/// Letter shapes on states 1..4 after renumbering (outside {1,2,3,4} the
/// action is unconstrained apart from the image condition):
///   EQ_I  Q s = Q, fixes 1, 2, 3, 4
///   EQ_A  Q s = Q, 1 -> 2 -> 3 -> 4 -> 1
///   EQ_B  Q s = Q \ {1}, 1 s = 2 s, 3 s = 3, 4 s = 4
///   EQ_D  Q s = Q, 1 -> 1, 2 -> 4, 3 -> 3, 4 -> 2
enum class GreedyLetterClass { kEqI, kEqA, kEqB, kEqD, kOther };

std::string to_string(GreedyLetterClass c);

/// Classifies letter s of an already renumbered automaton (n >= 4).
GreedyLetterClass classify_greedy_letter(const Dfa& renumbered, Letter s);

/// Some word of length <= 9 takes Q to a set of size exactly n-3.
bool hypothesis_greedy(const Dfa& dfa);

struct ConditionResult {
  bool holds = false;
  /// A word violating the condition when it does not hold.
  std::optional<Word> witness;
};

struct Condition2Result {
  bool holds = false;
  /// Present when the corank-2 structure holds.
  std::optional<StructureCertificate> certificate;
  std::optional<Word> witness;
  std::string note;
};

// The check_condition_* functions throw HypothesisFailed unless
// hypothesis_greedy holds.

ConditionResult check_condition_1(const Dfa& dfa);
Condition2Result check_condition_2(const Dfa& dfa);
/// Same decision as check_condition_2, trying only w3 = a, w3 = d (which
/// differs from a only when |X| = 2) and, when |X| = 4, the EQ_D letters.
Condition2Result check_condition_2_sharpened(const Dfa& dfa);
/// A renumbering (old -> new) under which every letter is EQ_I, EQ_A or EQ_B.
std::optional<std::vector<State>> check_condition_3(const Dfa& dfa);
ConditionResult check_condition_4(const Dfa& dfa);

struct GreedyConditionReport {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool cond4 = false;
  bool cond2_sharpened = false;
  /// Re-classifying under the condition-3 renumbering gives only EQ_I/A/B.
  bool detector_sound = true;

  std::optional<Word> cond1_witness;
  std::optional<Word> cond2_witness;
  std::optional<StructureCertificate> certificate;
  std::optional<std::vector<State>> renumbering;
  std::optional<Word> cond4_witness;

  /// All four conditions agree, the sharpened check agrees with condition
  /// 2, and the detector is sound.
  bool consistent() const;
};

/// Evaluates all conditions. Throws HypothesisFailed unless hypothesis_greedy.
GreedyConditionReport assert_equivalence(const Dfa& dfa);

/// Letters (in order): identity "e" if requested, "a" = the 4-cycle
/// 1->2->3->4->1 acting on states 5..n by `tail` (identity by default), and
/// "b" merging 1 and 2 into 2 while fixing every other state. `tail[i]` is
/// the 0-based image of state 4+i and must permute 4..n-1. Requires n >= 4.
Dfa build_extremal_dfa(std::size_t n, bool include_identity = true,
                       const std::optional<std::vector<State>>& tail = std::nullopt);

struct PincorResult {
  /// Q b a d b needs more than 5 letters to reach size n-3.
  bool applicable = false;
  bool holds = true;
  /// Shortest word from Q b a d b to size <= n-3, when one exists.
  std::optional<Word> shortest_from_badb;
};

/// If Q b a d b cannot reach size n-3 within 5 letters, checks that
/// |Q b a a a b a a a b| = n-3. Requires a validating certificate and
/// rank <= n-3 (HypothesisFailed otherwise).
PincorResult pincor_check(const Dfa& dfa, const StructureCertificate& cert);

}  // namespace synchrokit
