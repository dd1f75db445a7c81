#include "sadic/families.hpp"

#include "sadic/errors.hpp"

#include <algorithm>
#include <set>

namespace sadic {

DirectiveSequence fibonacci() { return DirectiveSequence::constant(Morphism::from_strings(Alphabet::latin(2), {"ab", "a"})); }

DirectiveSequence tribonacci() {
  return DirectiveSequence::constant(Morphism::from_strings(Alphabet::latin(3), {"ab", "ac", "a"}));
}

DirectiveSequence thue_morse() { return DirectiveSequence::constant(Morphism::from_strings(Alphabet::latin(2), {"ab", "ba"})); }

DirectiveSequence thue_morse_conjugate() {
  return DirectiveSequence::constant(Morphism::from_strings(Alphabet::latin(4), {"bb", "bd", "ca", "cb"}));
}

namespace {

std::size_t digit(char c, std::string_view text) {
  if (c < '1' || c > '9') throw InputError("expected a letter 1-9 in '" + std::string(text) + "'");
  return static_cast<std::size_t>(c - '1');
}

void check_letters(std::size_t d) {
  if (d < 2 || d > 9) throw InputError("alphabet size must be between 2 and 9");
}

}  // namespace

DirectiveSequence arnoux_rauzy(std::string_view period, std::size_t d) {
  if (period.empty()) throw InputError("arnoux_rauzy: empty period");
  std::vector<std::size_t> letters;
  for (char c : period) letters.push_back(digit(c, period));
  if (d == 0) d = *std::max_element(letters.begin(), letters.end()) + 1;
  check_letters(d);
  const std::set<std::size_t> seen(letters.begin(), letters.end());
  if (seen.size() != d || *seen.rbegin() >= d) throw InputError("arnoux_rauzy: every letter must occur in the period");
  const Alphabet alphabet = Alphabet::numbered(d);
  std::vector<Morphism> morphisms;
  for (std::size_t k : letters) {
    std::vector<Word> images;
    for (std::size_t j = 0; j < d; ++j) {
      Word w;
      if (j != k) w.push_back(static_cast<Letter>(k));
      w.push_back(static_cast<Letter>(j));
      images.push_back(std::move(w));
    }
    morphisms.emplace_back(alphabet, alphabet, std::move(images));
  }
  return DirectiveSequence(alphabet, {}, std::move(morphisms));
}

std::vector<BrunPair> parse_brun_pairs(std::string_view text) {
  std::vector<BrunPair> pairs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item.size() != 2) throw InputError("brun: pairs are two letters, e.g. '12,23,31'");
    const BrunPair p{digit(item[0], text), digit(item[1], text)};
    if (p.a == p.b) throw InputError("brun: a pair needs two distinct letters");
    pairs.push_back(p);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return pairs;
}

bool brun_admissible(const std::vector<BrunPair>& pairs, std::size_t d, bool cyclic) {
  if (pairs.empty()) return false;
  for (const auto& p : pairs)
    if (p.a >= d || p.b >= d) return false;
  const std::size_t steps = cyclic ? pairs.size() : pairs.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& x = pairs[i];
    const auto& y = pairs[(i + 1) % pairs.size()];
    const bool repeat = y.a == x.a && y.b == x.b;
    if (!repeat && y.a != x.b) return false;
  }
  std::set<std::size_t> firsts;
  for (const auto& p : pairs) firsts.insert(p.a);
  return firsts.size() == d;
}

DirectiveSequence brun(const std::vector<BrunPair>& period, std::size_t d) {
  check_letters(d);
  if (!brun_admissible(period, d, true)) throw InputError("brun: inadmissible pair sequence");
  const Alphabet alphabet = Alphabet::numbered(d);
  std::vector<Morphism> morphisms;
  for (const auto& p : period) {
    std::vector<Word> images;
    for (std::size_t j = 0; j < d; ++j) {
      Word w;
      if (j == p.b) w.push_back(static_cast<Letter>(p.a));
      w.push_back(static_cast<Letter>(j));
      images.push_back(std::move(w));
    }
    morphisms.emplace_back(alphabet, alphabet, std::move(images));
  }
  return DirectiveSequence(alphabet, {}, std::move(morphisms));
}

DirectiveSequence brun(std::string_view period, std::size_t d) { return brun(parse_brun_pairs(period), d); }

DirectiveSequence two_measure_family(const IntegerSequence& a, std::size_t horizon) {
  Generator g;
  g.a = a;
  g.horizon = horizon;
  return DirectiveSequence::generated(g);
}

std::vector<std::string> family_names() {
  return {"fibonacci", "tribonacci", "thue_morse", "thue_morse_conjugate", "arnoux_rauzy", "brun", "sec65"};
}

DirectiveSequence make(const FamilySpec& spec) {
  if (spec.name == "fibonacci") return fibonacci();
  if (spec.name == "tribonacci") return tribonacci();
  if (spec.name == "thue_morse") return thue_morse();
  if (spec.name == "thue_morse_conjugate") return thue_morse_conjugate();
  if (spec.name == "arnoux_rauzy") return arnoux_rauzy(spec.word.empty() ? "123" : spec.word, spec.letters);
  if (spec.name == "brun") return brun(spec.word.empty() ? "12,23,31" : spec.word, spec.letters == 0 ? 3 : spec.letters);
  if (spec.name == "sec65") return two_measure_family(spec.a.value_or(IntegerSequence::parse("geometric:2:1")), spec.horizon);
  throw InputError("unknown family '" + spec.name + "'");
}

// Points of the orbit are 3k - k sqrt5 - m with integers k, m; the sign of p + q sqrt5 is
// decided on integers. The half-integer boundary (sqrt5 - 1)/2 is handled by doubling.
namespace {

int sign_sqrt5(long long p, long long q) {
  if (p >= 0 && q >= 0) return (p == 0 && q == 0) ? 0 : 1;
  if (p <= 0 && q <= 0) return -1;
  const long long lhs = p * p, rhs = 5 * q * q;  // |p| vs |q| sqrt5
  if (lhs == rhs) return 0;
  return (p > 0) == (lhs > rhs) ? 1 : -1;
}

}  // namespace

QuadraticVector iet3_lengths() {
  const QuadraticNumber s5 = QuadraticNumber::sqrt(5);
  const QuadraticNumber alpha = (QuadraticNumber(3) - s5) / QuadraticNumber(2);
  return {s5 - QuadraticNumber(2), alpha, alpha};
}

Alphabet iet3_alphabet() { return Alphabet::numbered(3); }

Word iet3_coding(std::size_t length) {
  if (length == 0) throw InputError("iet3_coding: length must be positive");
  if (length > 100000000) throw InputError("iet3_coding: length too large");
  Word out;
  out.reserve(length);
  // x = p + q sqrt5, starting at 0; the map adds 2 alpha = 3 - sqrt5 modulo 1.
  long long p = 0, q = 0;
  for (std::size_t k = 0; k < length; ++k) {
    // Boundaries sqrt5 - 2 and (sqrt5 - 1)/2, compared via 2x against sqrt5 - 1.
    const int s1 = sign_sqrt5(p + 2, q - 1);
    const int s2 = sign_sqrt5(2 * p + 1, 2 * q - 1);
    if (s1 == 0 || s2 == 0) throw std::logic_error("iet3_coding: orbit hit a discontinuity");
    out.push_back(s1 < 0 ? 0 : (s2 < 0 ? 1 : 2));
    p += 3;
    q -= 1;
    if (sign_sqrt5(p - 1, q) >= 0) p -= 1;
  }
  return out;
}

std::optional<DimensionGroupDescriptor> builtin_descriptor(std::string_view name) {
  if (name == "iet3") return exact_descriptor({iet3_lengths()}, "three-interval exchange (1,3,2), lengths (sqrt5-2, alpha, alpha)");
  if (name == "iet3_tribonacci" || name == "iet64") {
    auto D = descriptor(tribonacci());
    D.provenance = "three-interval exchange whose lengths are the Tribonacci letter measure";
    return D;
  }
  return std::nullopt;
}

}  // namespace sadic
