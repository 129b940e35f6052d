#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synchrokit/automaton.hpp"

namespace synchrokit {

// Automata that can reach corank 2 but need at least four letters to do so
// have a rigid shape. After renumbering (labels 1, 2, 3 below are stored
// internally as 0, 1, 2):
//
//   (i)   Q b = Q \ {1} and 1 b = 2 b
//   (ii)  Q b a = Q \ {2}, Q a = Q, 1 a = 2
//   (iii) every letter is injective or merges exactly the pair {1, 2}
//   (iv)  Q b a d = Q \ {q}, q not in {1, 2}, q b != 1, Q b a d b = Q \ {1, q b},
//         and either |X| >= 3 with d = a, or |X| = 2 with Q d = Q, 1 d = 1, 3 d = 2
//
// where X is the orbit of 1 under a.

enum class CertificateCase { kOrbitAtLeast3, kOrbitEquals2 };

struct StructureCertificate {
  /// renumbering[original state] = state in the certificate's numbering.
  std::vector<State> renumbering;
  Letter b = 0;
  Letter a = 0;
  Letter d = 0;
  /// In the certificate's numbering.
  State q = 0;
  /// Orbit of state 1 under a, starting at 1, without repetition.
  std::vector<State> orbit;
  CertificateCase case_tag = CertificateCase::kOrbitAtLeast3;
  /// True when a was replaced by the third letter of the minimal word.
  bool a_replaced = false;

  friend bool operator==(const StructureCertificate&, const StructureCertificate&) = default;
};

std::string to_string(CertificateCase c);

/// Q compresses to size <= n-2, but every word doing so has length >= 4.
bool satisfies_corank2_hypothesis(const Dfa& dfa);

/// Builds the canonical certificate from the lexicographically least
/// shortest word w compressing Q to size <= n-2 (b = w1, a = w2, d = w3 or a).
/// Throws HypothesisFailed if the hypothesis does not hold and
/// CertificateContradiction if some clause cannot be established.
StructureCertificate extract_certificate(const Dfa& dfa);

struct ClauseResult {
  std::string clause;
  bool passed = false;
  std::string detail;
};

struct ClauseReport {
  std::vector<ClauseResult> clauses;
  bool all_passed() const;
  /// First failing clause, if any.
  const ClauseResult* first_failure() const;
};

/// Checks clauses (i), (ii), (iii) at letter level, and (iv). With
/// `exhaustive_iii` (n <= 12 only) clause (iii) is also checked literally
/// over every subset R and letter s.
ClauseReport validate_certificate(const Dfa& dfa, const StructureCertificate& cert,
                                  bool exhaustive_iii = false);

/// The automaton with the certificate's renumbering applied.
Dfa certified_view(const Dfa& dfa, const StructureCertificate& cert);

enum class LetterClass {
  kPermutationNear1,  // Q s = Q and 1 s in {1, 2}
  kMergesPair12,      // Q s = Q \ {1} and 1 s = 2 s
};

std::string to_string(LetterClass c);

struct LetterClassification {
  Letter letter = 0;
  std::optional<LetterClass> letter_class;  // absent: matches neither equation
};

/// Classifies every letter under the certificate's numbering.
std::vector<LetterClassification> classify_pinlem(const Dfa& dfa, const StructureCertificate& cert);

/// A renumbering under which every letter matches one of the two equations,
/// built from a non-permutation letter (its missing state becomes 1, its
/// merge partner 2). Absent if no non-permutation letter yields one.
std::optional<std::vector<State>> find_pinlem_renumbering(const Dfa& dfa);

/// True iff no word of length <= 3 takes Q to a set of size <= n-2.
bool pinlem_converse_check(const Dfa& dfa);

}  // namespace synchrokit
