#include "synchrokit/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <thread>

#include "synchrokit/construct.hpp"
#include "synchrokit/dfa_io.hpp"
#include "synchrokit/errors.hpp"
#include "synchrokit/extremal.hpp"
#include "synchrokit/power_search.hpp"
#include "synchrokit/structure.hpp"

namespace synchrokit {
namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 11> kTheoremNames{{
    {TheoremId::kCorank3, "corank3"},
    {TheoremId::kPin, "pin"},
    {TheoremId::kFranklPin, "franklpin"},
    {TheoremId::kCorank2Cert, "corank2-cert"},
    {TheoremId::kLemmaX, "lemmaX"},
    {TheoremId::kGreedyEquiv, "greedy-equiv"},
    {TheoremId::kPinlem, "pinlem"},
    {TheoremId::kPinlemConverse, "pinlem-converse"},
    {TheoremId::kPincor, "pincor"},
    {TheoremId::kPipeline, "pipeline"},
    {TheoremId::kGreedyStages, "greedy-stages"},
}};

nlohmann::json word_json(const Dfa& dfa, const Word& w) { return format_word(dfa, w); }

/// Per-automaton data shared by all theorem checks of one pass.
class Context {
 public:
  explicit Context(const Dfa& dfa) : dfa(dfa), pa(dfa), reach(summarize_reach(pa, dfa.states())) {}

  const Dfa& dfa;
  PowerAutomaton pa;
  ReachSummary reach;

  std::size_t n() const { return dfa.size(); }
  bool rank_at_most(std::size_t m) const { return reach.min_size <= m; }

  bool corank2_hypothesis() {
    if (!corank2_) corank2_ = satisfies_corank2_hypothesis(dfa);
    return *corank2_;
  }

  /// The certificate, or the contradiction message when extraction failed.
  const std::optional<StructureCertificate>& certificate(std::string* error = nullptr) {
    if (!cert_done_) {
      cert_done_ = true;
      try {
        cert_ = extract_certificate(dfa);
      } catch (const CertificateContradiction& e) {
        cert_error_ = e.what();
      }
    }
    if (error) *error = cert_error_;
    return cert_;
  }

 private:
  std::optional<bool> corank2_;
  bool cert_done_ = false;
  std::optional<StructureCertificate> cert_;
  std::string cert_error_;
};

struct Accumulator {
  std::uint64_t checked = 0;
  std::uint64_t applicable = 0;
  std::vector<Counterexample> counterexamples;
  std::map<std::string, std::uint64_t> tallies;

  void violation(const Dfa& dfa, nlohmann::json detail) {
    counterexamples.push_back({serialize_dfa(dfa), std::move(detail)});
  }
  void tally(const std::string& key) { ++tallies[key]; }

  void merge(Accumulator&& other) {
    checked += other.checked;
    applicable += other.applicable;
    std::move(other.counterexamples.begin(), other.counterexamples.end(), std::back_inserter(counterexamples));
    for (const auto& [key, count] : other.tallies) tallies[key] += count;
  }
};

void check_corank3(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (!ctx.rank_at_most(n - 1)) return;
  ++acc.applicable;
  for (std::size_t c = 1; c <= 3 && c < n; ++c) {
    if (!ctx.rank_at_most(n - c)) break;
    const auto steps = ctx.reach.steps_to_at_most(n - c);
    if (!steps || *steps > c * c) {
      acc.violation(ctx.dfa, {{"c", c}, {"length", steps ? nlohmann::json(*steps) : nlohmann::json()},
                              {"bound", c * c}});
      return;
    }
  }
  if (ctx.reach.min_size == 1) {
    acc.tally("synchronizing");
    const auto steps = *ctx.reach.steps_to_at_most(1);
    if (n <= 4) {
      if (steps > (n - 1) * (n - 1)) {
        acc.violation(ctx.dfa, {{"claim", "reset word within (n-1)^2"}, {"length", steps}});
        return;
      }
      acc.tally("synchronizing_within_(n-1)^2");
    }
  }
}

/// Every w with |w| <= L and |Q w| = n-c+1 (the smaller c are met by the
/// empty m) must admit m with |m| <= c and |Q w m w| <= n-c.
void check_pin(Context& ctx, Accumulator& acc, std::size_t max_word) {
  const std::size_t n = ctx.n();
  if (!ctx.rank_at_most(n - 1)) return;
  ++acc.applicable;
  const auto letters = all_letters(ctx.dfa);
  std::vector<Letter> stack;
  std::optional<nlohmann::json> failure;
  std::uint64_t pairs = 0;

  auto visit = [&](auto&& self, StateSet qw) -> void {
    if (failure) return;
    const std::size_t c = n + 1 - qw.size();
    if (c >= 1 && c < n && ctx.rank_at_most(n - c)) {
      ++pairs;
      const Word w(stack);
      const std::size_t target = n - c;
      auto m = find_shortest_word(
          ctx.pa, qw, [&](StateSet t) { return ctx.pa.image(t, w).size() <= target; }, letters, c);
      if (!m) {
        failure = nlohmann::json{{"w", format_word(ctx.dfa, w)}, {"c", c}};
        return;
      }
    }
    if (stack.size() == max_word) return;
    for (Letter s : letters) {
      stack.push_back(s);
      self(self, ctx.pa.image(qw, s));
      stack.pop_back();
    }
  };
  visit(visit, ctx.dfa.states());
  acc.tallies["pairs_checked"] += pairs;
  if (failure) acc.violation(ctx.dfa, *failure);
}

void check_franklpin(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (!ctx.rank_at_most(n - 1)) return;
  ++acc.applicable;
  for (std::size_t c = 1; c < n && ctx.rank_at_most(n - c); ++c) {
    const auto dist = distances_to_size(ctx.pa, n - c);
    const std::size_t bound = c * (c + 1) / 2;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t bits = 1; bits < subsets; ++bits) {
      const auto r = StateSet::from_bits(bits);
      if (r.size() + c > n + 1) continue;
      if (dist[bits] == kUnreachable || dist[bits] > bound) {
        acc.violation(ctx.dfa, {{"c", c},
                                {"R", r.to_string()},
                                {"length", dist[bits] == kUnreachable ? nlohmann::json() : nlohmann::json(dist[bits])},
                                {"bound", bound}});
        return;
      }
    }
  }
}

void check_corank2_cert(Context& ctx, Accumulator& acc) {
  if (!ctx.corank2_hypothesis()) return;
  ++acc.applicable;
  std::string error;
  const auto& cert = ctx.certificate(&error);
  if (!cert) {
    acc.violation(ctx.dfa, {{"error", error}});
    return;
  }
  const auto report = validate_certificate(ctx.dfa, *cert, ctx.n() <= 12);
  if (const auto* failure = report.first_failure()) {
    acc.violation(ctx.dfa, {{"clause", failure->clause}, {"detail", failure->detail}});
    return;
  }
  acc.tally(to_string(cert->case_tag));
  if (cert->a_replaced) acc.tally("a_replaced");
}

void check_lemma_x(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (n < 4 || !ctx.rank_at_most(n - 3) || !ctx.corank2_hypothesis()) return;
  ++acc.applicable;
  std::string error;
  const auto& cert = ctx.certificate(&error);
  if (!cert) {
    acc.violation(ctx.dfa, {{"error", error}});
    return;
  }
  try {
    const auto witness = corank3_word(ctx.dfa, *cert);
    const auto shortest = ctx.reach.steps_to_at_most(n - 3);
    const std::size_t size = ctx.pa.image(ctx.dfa.states(), witness.word).size();
    if (witness.word.size() > 9 || size + 3 != n || !shortest || *shortest > witness.word.size()) {
      acc.violation(ctx.dfa, {{"word", word_json(ctx.dfa, witness.word)},
                              {"image_size", size},
                              {"case", witness.trail.label()}});
      return;
    }
    acc.tally(witness.trail.label());
  } catch (const Error& e) {
    acc.violation(ctx.dfa, {{"error", e.what()}});
  }
}

void check_greedy_equiv(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (n < 4) return;
  const auto steps = ctx.reach.steps_to_exact(n - 3);
  if (!steps || *steps > 9) return;
  ++acc.applicable;
  const auto report = assert_equivalence(ctx.dfa);
  if (!report.consistent()) {
    acc.violation(ctx.dfa, {{"cond1", report.cond1},
                            {"cond2", report.cond2},
                            {"cond2_sharpened", report.cond2_sharpened},
                            {"cond3", report.cond3},
                            {"cond4", report.cond4},
                            {"detector_sound", report.detector_sound}});
    return;
  }
  acc.tally(report.cond1 ? "extremal" : "not_extremal");
}

void check_pinlem(Context& ctx, Accumulator& acc) {
  if (!ctx.corank2_hypothesis()) return;
  ++acc.applicable;
  std::string error;
  const auto& cert = ctx.certificate(&error);
  if (!cert) {
    acc.violation(ctx.dfa, {{"error", error}});
    return;
  }
  for (const auto& c : classify_pinlem(ctx.dfa, *cert)) {
    if (!c.letter_class) {
      acc.violation(ctx.dfa, {{"unclassified_letter", ctx.dfa.name(c.letter)}});
      return;
    }
    acc.tally(to_string(*c.letter_class));
  }
}

void check_pinlem_converse(Context& ctx, Accumulator& acc) {
  if (ctx.n() < 3 || !find_pinlem_renumbering(ctx.dfa)) return;
  ++acc.applicable;
  if (!pinlem_converse_check(ctx.dfa)) {
    const auto w = ctx.reach.steps_to_at_most(ctx.n() - 2);
    acc.violation(ctx.dfa, {{"length_to_n-2", w ? nlohmann::json(*w) : nlohmann::json()}});
  }
}

void check_pincor(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (n < 4 || !ctx.rank_at_most(n - 3) || !ctx.corank2_hypothesis()) return;
  ++acc.applicable;
  std::string error;
  const auto& cert = ctx.certificate(&error);
  if (!cert) {
    acc.violation(ctx.dfa, {{"error", error}});
    return;
  }
  const auto result = pincor_check(ctx.dfa, *cert);
  if (result.applicable) acc.tally("non_vacuous");
  if (!result.holds) acc.violation(ctx.dfa, {{"claim", "|Q b a^3 b a^3 b| = n-3"}});
}

void check_pipeline(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (n < 4 || ctx.reach.min_size != 1) return;
  ++acc.applicable;
  try {
    const auto result = sync_pipeline(ctx.dfa);
    const auto final_set = apply_word(ctx.dfa, ctx.dfa.states(), result.word);
    if (final_set.size() != 1 || result.word.size() > pipeline_bound(n)) {
      acc.violation(ctx.dfa, {{"word", word_json(ctx.dfa, result.word)}, {"bound", pipeline_bound(n)}});
      return;
    }
    acc.tally(result.constructive_prefix ? "constructive_prefix" : "search_prefix");
  } catch (const Error& e) {
    acc.violation(ctx.dfa, {{"error", e.what()}});
  }
}

/// Along a greedy word to corank 3, at most 3 prefixes have size n-1 and at
/// most 6 have size n-2; each stage from size s stays within the bound for
/// c = n-s+1.
void check_greedy_stages(Context& ctx, Accumulator& acc) {
  const std::size_t n = ctx.n();
  if (n < 4 || !ctx.rank_at_most(n - 3)) return;
  ++acc.applicable;
  const auto greedy = greedy_word(ctx.dfa, 3);
  if (!greedy) {
    acc.violation(ctx.dfa, {{"error", "greedy stage could not shrink"}});
    return;
  }
  const auto profile = size_profile(ctx.dfa, greedy->total);
  std::size_t i = 0;
  std::size_t j = 0;
  for (std::size_t p = 1; p < profile.size(); ++p) {
    if (profile[p] + 1 == n) ++i;
    if (profile[p] + 2 == n) ++j;
  }
  bool stages_ok = true;
  std::size_t pos = 0;
  for (std::size_t len : greedy->stage_lengths) {
    const std::size_t c = n - profile[pos] + 1;
    if (len > c * (c + 1) / 2) stages_ok = false;
    pos += len;
  }
  if (i > 3 || j > 6 || !stages_ok) {
    acc.violation(ctx.dfa, {{"word", word_json(ctx.dfa, greedy->total)}, {"i", i}, {"j", j}});
    return;
  }
  acc.tally("i=" + std::to_string(i));
  acc.tally("j=" + std::to_string(j));
}

void run_one(TheoremId id, Context& ctx, Accumulator& acc, const EnumerationScope& scope) {
  ++acc.checked;
  switch (id) {
    case TheoremId::kCorank3: return check_corank3(ctx, acc);
    case TheoremId::kPin: return check_pin(ctx, acc, scope.pin_word_length);
    case TheoremId::kFranklPin: return check_franklpin(ctx, acc);
    case TheoremId::kCorank2Cert: return check_corank2_cert(ctx, acc);
    case TheoremId::kLemmaX: return check_lemma_x(ctx, acc);
    case TheoremId::kGreedyEquiv: return check_greedy_equiv(ctx, acc);
    case TheoremId::kPinlem: return check_pinlem(ctx, acc);
    case TheoremId::kPinlemConverse: return check_pinlem_converse(ctx, acc);
    case TheoremId::kPincor: return check_pincor(ctx, acc);
    case TheoremId::kPipeline: return check_pipeline(ctx, acc);
    case TheoremId::kGreedyStages: return check_greedy_stages(ctx, acc);
  }
}

/// Lexicographic successor of the flattened tables; false after the last.
bool advance(std::vector<std::vector<State>>& tables, std::size_t n) {
  for (auto letter = tables.rbegin(); letter != tables.rend(); ++letter) {
    for (auto entry = letter->rbegin(); entry != letter->rend(); ++entry) {
      if (*entry + 1U < n) {
        ++*entry;
        return true;
      }
      *entry = 0;
    }
  }
  return false;
}

std::vector<std::vector<State>> tables_at_index(std::size_t n, std::size_t k, std::uint64_t index) {
  std::vector<std::vector<State>> tables(k, std::vector<State>(n));
  for (std::size_t pos = n * k; pos-- > 0;) {
    tables[pos / n][pos % n] = static_cast<State>(index % n);
    index /= n;
  }
  return tables;
}

/// Visits the automata with indices in [begin, end).
template <class F>
void visit_block(const EnumerationScope& scope, std::uint64_t begin, std::uint64_t end, F&& f) {
  if (begin >= end) return;
  if (scope.mode == EnumerationMode::kRandom) {
    for (std::uint64_t i = begin; i < end; ++i) f(i, sampled_dfa(scope, i));
    return;
  }
  auto tables = tables_at_index(scope.n, scope.k, begin);
  for (std::uint64_t i = begin; i < end; ++i) {
    Dfa dfa(scope.n, tables);
    if (!scope.canonical_filter || is_canonical(dfa)) f(i, dfa);
    advance(tables, scope.n);
  }
}

std::string mode_name(EnumerationMode mode) {
  return mode == EnumerationMode::kExhaustive ? "exhaustive" : "random";
}

}  // namespace

std::string to_string(TheoremId id) {
  for (const auto& [key, name] : kTheoremNames) {
    if (key == id) return std::string(name);
  }
  return "unknown";
}

std::optional<TheoremId> parse_theorem_id(std::string_view name) {
  for (const auto& [key, value] : kTheoremNames) {
    if (value == name) return key;
  }
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorem_ids() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& entry : kTheoremNames) out.push_back(entry.first);
    return out;
  }();
  return ids;
}

std::uint64_t exhaustive_count(std::size_t n, std::size_t k) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n * k; ++i) {
    if (count > kMax / n) return kMax;
    count *= n;
  }
  return count;
}

std::uint64_t EnumerationScope::population() const {
  return mode == EnumerationMode::kExhaustive ? exhaustive_count(n, k) : sample_count;
}

void EnumerationScope::validate() const {
  if (n < 1 || n > kMaxStates) throw std::invalid_argument("n must lie in [1, 64]");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (mode == EnumerationMode::kRandom) {
    if (sample_count < 1) throw std::invalid_argument("sample_count must be at least 1");
    if (canonical_filter) throw std::invalid_argument("the canonical filter applies to exhaustive scopes only");
    return;
  }
  const std::uint64_t count = exhaustive_count(n, k);
  if (count > budget) throw BudgetExceeded(count, budget);
}

Dfa dfa_at_index(std::size_t n, std::size_t k, std::uint64_t index) {
  if (index >= exhaustive_count(n, k)) throw std::out_of_range("enumeration index out of range");
  return Dfa(n, tables_at_index(n, k, index));
}

bool is_canonical(const Dfa& dfa) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.letter_count();
  std::vector<State> original;
  original.reserve(n * k);
  for (Letter s = 0; s < k; ++s) {
    auto t = dfa.table(s);
    original.insert(original.end(), t.begin(), t.end());
  }
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), State{0});
  std::vector<Letter> order(k);
  std::vector<State> relabelled(n * k);
  do {
    std::iota(order.begin(), order.end(), Letter{0});
    do {
      for (std::size_t j = 0; j < k; ++j) {
        auto t = dfa.table(order[j]);
        for (State q = 0; q < n; ++q) relabelled[j * n + perm[q]] = perm[t[q]];
      }
      if (relabelled < original) return false;
    } while (std::next_permutation(order.begin(), order.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

Dfa sampled_dfa(const EnumerationScope& scope, std::uint64_t index) {
  SplitMix64 mixer(scope.seed ^ (index * 0xD1B54A32D192ED03ULL));
  SplitMix64 rng(mixer());
  return random_dfa(scope.n, scope.k, rng);
}

void enumerate_dfas(const EnumerationScope& scope, const std::function<void(std::uint64_t, const Dfa&)>& f) {
  scope.validate();
  visit_block(scope, 0, scope.population(), f);
}

nlohmann::json scope_to_json(const EnumerationScope& scope) {
  nlohmann::json out{{"n", scope.n},
                     {"k", scope.k},
                     {"mode", mode_name(scope.mode)},
                     {"canonical_filter", scope.canonical_filter},
                     {"pin_word_length", scope.pin_word_length}};
  if (scope.mode == EnumerationMode::kRandom) {
    out["sample_count"] = scope.sample_count;
    out["seed"] = scope.seed;
  }
  return out;
}

nlohmann::json to_json(const VerificationReport& report, bool include_timing) {
  nlohmann::json examples = nlohmann::json::array();
  for (const auto& c : report.counterexamples) examples.push_back({{"dfa", c.dfa}, {"detail", c.detail}});
  nlohmann::json out{{"theorem", to_string(report.theorem)},
                     {"scope", scope_to_json(report.scope)},
                     {"checked_count", report.checked_count},
                     {"applicable_count", report.applicable_count},
                     {"violation_count", report.violation_count},
                     {"counterexamples", std::move(examples)},
                     {"tallies", report.tallies}};
  if (include_timing) out["wall_time_seconds"] = report.wall_time_seconds;
  return out;
}

std::vector<VerificationReport> run_checks(std::span<const TheoremId> theorems, const EnumerationScope& scope,
                                           const RunOptions& options) {
  scope.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t total = scope.population();
  const std::size_t jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(options.jobs, total));

  std::vector<std::vector<Accumulator>> partial(jobs, std::vector<Accumulator>(theorems.size()));
  auto work = [&](std::size_t job) {
    const std::uint64_t begin = total / jobs * job + std::min<std::uint64_t>(job, total % jobs);
    const std::uint64_t end = begin + total / jobs + (job < total % jobs ? 1 : 0);
    visit_block(scope, begin, end, [&](std::uint64_t, const Dfa& dfa) {
      Context ctx(dfa);
      for (std::size_t t = 0; t < theorems.size(); ++t) run_one(theorems[t], ctx, partial[job][t], scope);
    });
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(work, j);
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<VerificationReport> reports;
  for (std::size_t t = 0; t < theorems.size(); ++t) {
    Accumulator merged;
    for (auto& block : partial) merged.merge(std::move(block[t]));
    std::sort(merged.counterexamples.begin(), merged.counterexamples.end(),
              [](const Counterexample& x, const Counterexample& y) {
                if (x.dfa != y.dfa) return x.dfa < y.dfa;
                return x.detail.dump() < y.detail.dump();
              });
    VerificationReport report;
    report.theorem = theorems[t];
    report.scope = scope;
    report.checked_count = merged.checked;
    report.applicable_count = merged.applicable;
    report.violation_count = merged.counterexamples.size();
    report.counterexamples = std::move(merged.counterexamples);
    report.tallies = std::move(merged.tallies);
    report.wall_time_seconds = seconds;
    reports.push_back(std::move(report));
  }
  return reports;
}

VerificationReport run_check(TheoremId theorem, const EnumerationScope& scope, const RunOptions& options) {
  const TheoremId ids[] = {theorem};
  return std::move(run_checks(ids, scope, options).front());
}

}  // namespace synchrokit
