#pragma once

// Built-in directive sequences and measure descriptors for the standard example families.

#include "sadic/dimgroup.hpp"
#include "sadic/directive.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sadic {

DirectiveSequence fibonacci();             // a -> ab, b -> a
DirectiveSequence tribonacci();            // a -> ab, b -> ac, c -> a
DirectiveSequence thue_morse();            // a -> ab, b -> ba
DirectiveSequence thue_morse_conjugate();  // a -> bb, b -> bd, c -> ca, d -> cb

/// Periodic Arnoux-Rauzy sequence over {1..d}: the period applies alpha_k for each letter k
/// of `period`, where alpha_k fixes k and sends every other letter j to kj.
/// d defaults to the largest letter. Throws InputError if a letter is missing from the period.
DirectiveSequence arnoux_rauzy(std::string_view period, std::size_t d = 0);

/// One Brun pair "ab": the morphism b -> ab fixing the other letters.
struct BrunPair {
  std::size_t a;
  std::size_t b;
};

/// Parses "12,23,31" (letters are 1-based digits).
std::vector<BrunPair> parse_brun_pairs(std::string_view text);

/// Whether consecutive pairs (x, y) then (u, v) satisfy u == x, v == y or u == y, cyclically
/// when `cyclic`, and every letter occurs as a first component.
bool brun_admissible(const std::vector<BrunPair>& pairs, std::size_t d, bool cyclic);

/// Periodic Brun sequence over {1..d}. Throws InputError if inadmissible.
DirectiveSequence brun(const std::vector<BrunPair>& period, std::size_t d = 3);
DirectiveSequence brun(std::string_view period, std::size_t d = 3);

/// Alternating 3-letter family driven by an increasing integer sequence a_n.
DirectiveSequence two_measure_family(const IntegerSequence& a = IntegerSequence::parse("geometric:2:1"), std::size_t horizon = 40);

struct FamilySpec {
  std::string name;
  std::string word;          // Arnoux-Rauzy letter period or Brun pair list
  std::size_t letters = 0;   // alphabet size for arnoux_rauzy / brun
  std::optional<IntegerSequence> a;
  std::size_t horizon = 40;
};

/// Names: fibonacci, tribonacci, thue_morse, thue_morse_conjugate, arnoux_rauzy, brun, sec65.
DirectiveSequence make(const FamilySpec& spec);
std::vector<std::string> family_names();

/// Exact lengths (sqrt5 - 2, alpha, alpha), alpha = (3 - sqrt5)/2, of the three-interval
/// exchange with permutation (1,3,2); it acts as rotation by 2 alpha.
QuadraticVector iet3_lengths();

/// Natural coding over {1,2,3} of the orbit of 0 under that exchange, computed exactly.
Word iet3_coding(std::size_t length);
Alphabet iet3_alphabet();

/// Descriptors without a directive sequence: "iet3" (exact, the exchange above) and
/// "iet3_tribonacci", alias "iet64" (lengths equal to the Tribonacci letter measure).
std::optional<DimensionGroupDescriptor> builtin_descriptor(std::string_view name);

}  // namespace sadic
