#pragma once

// Directive sequences (eventually periodic, or generator-driven up to a horizon),
// telescoping, certificates and the proper-ization step.

#include "sadic/words.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sadic {

/// An integer sequence a_1, a_2, ... given in closed form.
/// kind "geometric": a_n = base^(n + shift). kind "list": explicit values a_1..a_k.
struct IntegerSequence {
  std::string kind = "geometric";
  Integer base = 2;
  long shift = 1;
  std::vector<Integer> values;

  Integer at(std::size_t n) const;
  /// Number of defined terms for "list", empty for closed forms.
  std::optional<std::size_t> length() const;
  /// Parses "geometric:BASE:SHIFT" or "list:v1,v2,...".
  static IntegerSequence parse(std::string_view text);
  std::string to_string() const;
};

/// Closed-form family of morphisms indexed by n. Only "sec65" exists:
/// tau_n maps 1 to 3 2^{a_n} for odd n, to 2^{a_n} 3 for even n, 2 to 1 and 3 to 2.
struct Generator {
  std::string name = "sec65";
  IntegerSequence a;
  std::size_t horizon = 40;
};

/// Images longer than this are never materialized; matrix and first/last letter
/// queries still work past it.
inline constexpr std::size_t kMaxMaterializedImage = std::size_t{1} << 24;

class DirectiveSequence {
 public:
  DirectiveSequence() = default;
  /// Eventually periodic sequence prefix, period, period, ...  The period must be non-empty.
  DirectiveSequence(Alphabet alphabet, std::vector<Morphism> prefix, std::vector<Morphism> period);
  /// Constant sequence (m, m, m, ...).
  static DirectiveSequence constant(const Morphism& m);
  static DirectiveSequence generated(Generator g);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dimension() const { return alphabet_.size(); }
  const std::vector<Morphism>& prefix() const { return prefix_; }
  const std::vector<Morphism>& period() const { return period_; }
  const std::optional<Generator>& generator() const { return generator_; }
  bool is_generated() const { return generator_.has_value(); }
  /// Last index covered by a generator; empty for eventually periodic sequences.
  std::optional<std::size_t> horizon() const;

  /// tau_n for n >= 1. Throws RangeError beyond the horizon or for oversized images.
  Morphism at(std::size_t n) const;
  IntegerMatrix matrix_at(std::size_t n) const;
  /// First and last letter of tau_n(a), per letter a.
  std::vector<Letter> first_letters_at(std::size_t n) const;
  std::vector<Letter> last_letters_at(std::size_t n) const;

  /// Indices 1..k such that every later index repeats one of them with the same morphism
  /// (prefix length + period length; the horizon for generators).
  std::size_t distinct_positions() const;
  /// The repetition period of the tail (1 for generators).
  std::size_t tail_period() const;

 private:
  void check_index(std::size_t n) const;

  Alphabet alphabet_;
  std::vector<Morphism> prefix_;
  std::vector<Morphism> period_;
  std::optional<Generator> generator_;
};

/// tau_n o tau_{n+1} o ... o tau_{N-1}. Throws InputError unless 1 <= n < N.
Morphism telescope(const DirectiveSequence& ds, std::size_t n, std::size_t N);
/// M_{tau_n} ... M_{tau_{N-1}} without materializing images.
IntegerMatrix telescope_matrix(const DirectiveSequence& ds, std::size_t n, std::size_t N);

enum class Verdict { yes, no, inconclusive };
std::string to_string(Verdict v);

struct PrimitivityCertificate {
  Verdict verdict = Verdict::inconclusive;
  /// A window [n, N) with positive product (the longest among the minimal windows found).
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  /// Max over checked starts n of the minimal N - n making M_{[n,N)} positive.
  std::size_t window = 0;
  std::string obstruction;
};

struct SequenceCertificate {
  PrimitivityCertificate primitive;
  bool unimodular = false;
  bool left_proper = false;
  bool right_proper = false;
  bool proper() const { return left_proper && right_proper; }
  /// Properness of each tau_n, n = 1 .. distinct_positions().
  std::vector<Properness> levels;
  /// Smallest W such that every checked tau_{[n,n+W)} is proper, if found under the cap.
  std::optional<std::size_t> proper_window;
  std::size_t probe_depth = 0;
  /// Min and max of |tau_{[1,probe_depth]}(a)| over letters a.
  Integer growth_min;
  Integer growth_max;
  /// For generators: statements hold for indices up to this bound only.
  std::optional<std::size_t> valid_up_to;
  bool truncated = false;
};

/// Decides primitivity exactly for eventually periodic input (cycle detection on zero
/// patterns) with window cap 8 d^2, and collects unimodularity, properness and growth.
SequenceCertificate certify(const DirectiveSequence& ds, std::size_t probe_depth);

/// Pairs tau_{2n-1} with the right-proper conjugate of tau_{2n}. Throws PreconditionError
/// when some morphism is not left proper or the sequence is not primitive.
DirectiveSequence properize(const DirectiveSequence& ds);

struct AperiodicityReport {
  bool aperiodic = false;
  /// Smallest n with p(n) = p(n+1), when found.
  std::optional<std::size_t> period_length;
  std::vector<std::size_t> complexity;
};

/// Morse-Hedlund check on p(n), n <= max_len. Requires a primitive unimodular sequence.
AperiodicityReport aperiodicity_witness(const DirectiveSequence& ds, std::size_t max_len);

nlohmann::json to_json(const SequenceCertificate& c);
nlohmann::json to_json(const DirectiveSequence& ds);
DirectiveSequence directive_from_json(const nlohmann::json& j);

}  // namespace sadic
