#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synchrokit/automaton.hpp"
#include "synchrokit/structure.hpp"

namespace synchrokit {

/// Which of the four corank-3 constructions applies to a certificate.
///   I:   |X| >= 4
///   II:  |X| = 2 and 2 d != 3
///   III: |X| = 2, 2 d = 3 and 3 a != 3
///   IV:  |X| = 2, 2 d = 3 and 3 a = 3, or |X| = 3
enum class CaseTag { kI, kII, kIII, kIV };

std::string to_string(CaseTag tag);

struct CaseTrail {
  CaseTag tag = CaseTag::kI;
  /// "qb=3", "qb!=3" (I); "3b=4", "3b!=4" (III); "3s_in_123", "3s_notin_123" (IV); empty for II.
  std::string subcase;
  /// The auxiliary letter s of case IV.
  std::optional<Letter> aux_letter;
  /// Human-readable record of the pair tests that selected the suffix.
  std::vector<std::string> steps;

  /// "CASE_I/qb=3" style label.
  std::string label() const;
};

struct Corank3Witness {
  Word word;
  CaseTrail trail;
  StateSet image;  // Q . word, original numbering
};

/// b a d b; always length 4 and compresses Q to size n-2.
Word corank2_word(const StructureCertificate& cert);

/// A word of length <= 9 compressing Q to size exactly n-3, assembled by the
/// case construction matching the certificate. Requires a validating
/// certificate and rank <= n-3 (HypothesisFailed otherwise); throws
/// ConstructionContradiction if the construction does not land on n-3.
Corank3Witness corank3_word(const Dfa& dfa, const StructureCertificate& cert);

/// Shortest m (lexicographically least among shortest) with |m| <= c and
/// |Q w m w| <= n-c. Throws PreconditionFailed unless rank <= n-c and
/// |Q w| <= n-c+1; TheoremViolation if no such m exists.
Word pin_extension(const Dfa& dfa, const Word& w, std::size_t c);

/// Shortest word taking R to size <= n-c; its length is bounded by c(c+1)/2.
/// Throws PreconditionFailed unless rank <= n-c and |R| <= n-c+1;
/// TheoremViolation if the bound fails.
Word franklpin_word(const Dfa& dfa, StateSet r, std::size_t c);

struct PipelineResult {
  Word word;
  /// The corank-3 prefix u and the stage words for c = 4 .. n-1.
  Word prefix;
  std::vector<Word> stages;
  /// True when the prefix came from the case construction rather than BFS.
  bool constructive_prefix = false;
  std::optional<CaseTrail> prefix_trail;
  StateSet final_set;
  /// (n^3 - n)/6 - 1.
  std::size_t bound = 0;
};

/// (n^3 - n)/6 - 1.
std::size_t pipeline_bound(std::size_t n);

/// Synchronizing word built as a corank-3 prefix followed by one bounded
/// stage per c = 4 .. n-1. Requires rank 1 and n >= 4 (PreconditionFailed);
/// throws TheoremViolation if a stage or the total exceeds its bound.
PipelineResult sync_pipeline(const Dfa& dfa);

}  // namespace synchrokit
