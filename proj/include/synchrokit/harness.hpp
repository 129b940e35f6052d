#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "synchrokit/automaton.hpp"

namespace synchrokit {

enum class TheoremId {
  kCorank3,
  kPin,
  kFranklPin,
  kCorank2Cert,
  kLemmaX,
  kGreedyEquiv,
  kPinlem,
  kPinlemConverse,
  kPincor,
  kPipeline,
  kGreedyStages,
};

std::string to_string(TheoremId id);
/// Accepts the names printed by to_string ("corank3", "greedy-equiv", ...).
std::optional<TheoremId> parse_theorem_id(std::string_view name);
const std::vector<TheoremId>& all_theorem_ids();

enum class EnumerationMode { kExhaustive, kRandom };

struct EnumerationScope {
  std::size_t n = 3;
  std::size_t k = 2;
  EnumerationMode mode = EnumerationMode::kExhaustive;
  std::uint64_t sample_count = 1;
  std::uint64_t seed = 0;
  /// Exhaustive mode only: skip automata that are not the least member of
  /// their class under state and letter relabelling.
  bool canonical_filter = false;
  /// Largest exhaustive population accepted.
  std::uint64_t budget = 100'000'000;
  /// Longest w tried by the pin check.
  std::size_t pin_word_length = 6;

  /// Number of automata visited before canonical filtering.
  std::uint64_t population() const;
  /// Throws std::invalid_argument on a malformed scope and BudgetExceeded
  /// when an exhaustive scope is too large.
  void validate() const;
};

/// n^(n k), saturating at the largest uint64.
std::uint64_t exhaustive_count(std::size_t n, std::size_t k);

/// The automaton at position `index` of the exhaustive order: tables are
/// read letter by letter, state by state, as digits of `index` in base n
/// with the first entry most significant.
Dfa dfa_at_index(std::size_t n, std::size_t k, std::uint64_t index);

/// Least among all relabellings of states (n!) and letters (k!) in the
/// exhaustive order.
bool is_canonical(const Dfa& dfa);

/// SplitMix64; small, seedable and platform independent.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Uniform table entries, drawn in table order from `rng`.
template <class Rng>
Dfa random_dfa(std::size_t n, std::size_t k, Rng& rng) {
  if (n == 0 || n > kMaxStates) throw std::invalid_argument("random_dfa needs 1 <= n <= 64");
  if (k == 0) throw std::invalid_argument("random_dfa needs at least one letter");
  std::uniform_int_distribution<unsigned> entry(0, static_cast<unsigned>(n - 1));
  std::vector<std::vector<State>> tables(k, std::vector<State>(n));
  for (auto& table : tables) {
    for (auto& q : table) q = static_cast<State>(entry(rng));
  }
  return Dfa(n, tables);
}

/// Sample `index` of a random scope; independent of how samples are
/// distributed over workers.
Dfa sampled_dfa(const EnumerationScope& scope, std::uint64_t index);

/// Calls f(index, dfa) for every automaton of the scope in order, after the
/// canonical filter.
void enumerate_dfas(const EnumerationScope& scope, const std::function<void(std::uint64_t, const Dfa&)>& f);

struct Counterexample {
  std::string dfa;  // serialized text form
  nlohmann::json detail;
};

struct VerificationReport {
  TheoremId theorem = TheoremId::kCorank3;
  EnumerationScope scope;
  std::uint64_t checked_count = 0;
  std::uint64_t applicable_count = 0;
  std::uint64_t violation_count = 0;
  /// Sorted by serialized automaton, then detail.
  std::vector<Counterexample> counterexamples;
  /// Named counters, e.g. how often each construction case fired.
  std::map<std::string, std::uint64_t> tallies;
  double wall_time_seconds = 0;
};

/// Timing is left out unless requested so that identical scopes give
/// byte-identical output.
nlohmann::json to_json(const VerificationReport& report, bool include_timing = false);
nlohmann::json scope_to_json(const EnumerationScope& scope);

struct RunOptions {
  std::size_t jobs = 1;
};

/// Evaluates every listed theorem on each automaton of the scope in one
/// pass. Work is split into contiguous index blocks, one per job.
std::vector<VerificationReport> run_checks(std::span<const TheoremId> theorems, const EnumerationScope& scope,
                                           const RunOptions& options = {});
VerificationReport run_check(TheoremId theorem, const EnumerationScope& scope, const RunOptions& options = {});

}  // namespace synchrokit
