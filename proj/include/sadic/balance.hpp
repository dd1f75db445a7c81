#pragma once

// Occurrence-count discrepancy between equal-length factors, and a dashboard tying the
// observed profiles to the rank of the letter-frequency group.

#include "sadic/dimgroup.hpp"
#include "sadic/language.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sadic {

/// Thresholds for classifying a discrepancy profile D(1..N).
///  bounded(C): D is constant (= C) on [ceil(sqrt N), N].
///  growing:    least-squares slope of D against log2 n over the dyadic lengths in
///              [sqrt N, N] is at least `slope_per_doubling`, and D(N) >= `min_growth`.
struct GrowthRule {
  double slope_per_doubling = 0.25;
  std::size_t min_growth = 5;
};

enum class Growth { bounded, growing, inconclusive };
std::string to_string(Growth g);

struct DiscrepancyProfile {
  Word v;
  /// gap[n] = max - min of |w|_v over factors w of length n; index 0 unused.
  std::vector<std::size_t> gap;
  /// profile[n] = max_{m <= n} gap[m].
  std::vector<std::size_t> profile;
  Growth growth = Growth::inconclusive;
  std::size_t bound = 0;  // C for bounded profiles
  double slope = 0;       // per doubling over the upper half
  /// Equal-length factors whose counts differ by profile.back().
  std::optional<std::pair<Word, Word>> witness;
  GrowthRule rule;

  std::size_t up_to() const { return profile.empty() ? 0 : profile.size() - 1; }
};

/// Profile of a single letter. Throws InputError for a letter outside the alphabet and
/// RangeError when up_to exceeds the table's max_len.
DiscrepancyProfile letter_discrepancy(const LanguageTable& lang, Letter v, std::size_t up_to, const GrowthRule& rule = {});

/// Profile of occurrences of a factor v. Throws InputError when v is not in the language.
DiscrepancyProfile factor_discrepancy(const LanguageTable& lang, const Word& v, std::size_t up_to, const GrowthRule& rule = {});

enum class BalanceVerdict {
  empirically_balanced,      // bounded profiles up to the horizon
  not_balanced_witness,      // a growing profile with an explicit pair
  not_balanced_rank,         // letter frequencies are rationally dependent
  not_balanced_equivalence,  // letters refuted, and letters and factors agree for this class
  inconclusive
};
std::string to_string(BalanceVerdict v);

struct BalanceProbes {
  std::size_t max_len = 64;
  std::vector<Word> factors;  // extra factor profiles
  GrowthRule rule;
  DescriptorOptions measure;
  Integer coefficient_bound = 1000000;
};

/// Centered letter counts along the first text: max over prefixes of
/// |count_v(prefix) - |prefix| mu_v|, as an upper bound from the measure enclosure.
struct BirkhoffCheck {
  Letter v = 0;
  Rational max_centered;
  std::size_t prefixes = 0;
  std::size_t bound = 0;  // the profile bound C
  bool within = false;
};

struct BalanceReport {
  std::size_t d = 0;
  std::vector<DiscrepancyProfile> letters;
  std::vector<DiscrepancyProfile> factors;
  std::optional<std::size_t> frequency_rank;
  std::string rank_method;
  BalanceVerdict letters_verdict = BalanceVerdict::inconclusive;
  BalanceVerdict factors_verdict = BalanceVerdict::inconclusive;
  std::vector<BirkhoffCheck> birkhoff;
  /// Whether the sequence was certified primitive and unimodular with a proper window.
  bool class_certified = false;
  std::vector<std::string> notes;
};

BalanceReport balance_dashboard(const DirectiveSequence& ds, const BalanceProbes& probes = {});

/// Dashboard for a system given by a language table and, optionally, its letter measures.
BalanceReport balance_dashboard(const LanguageTable& lang, const std::optional<DimensionGroupDescriptor>& measures,
                                const BalanceProbes& probes = {}, bool class_certified = false);

nlohmann::json to_json(const DiscrepancyProfile& p, const Alphabet& alphabet);
nlohmann::json to_json(const BalanceReport& r, const Alphabet& alphabet);

}  // namespace sadic
