#pragma once

// Alphabets, finite words and non-erasing morphisms.

#include "sadic/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sadic {

/// Coordinate index of a symbol in its Alphabet.
using Letter = std::uint16_t;
/// A finite word stored as letter indices. The empty vector is the empty word.
using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

/// Ordered list of distinct single-codepoint symbols. The order fixes the coordinates of
/// every vector and matrix indexed by letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  /// "a", "b", ... (d <= 26).
  static Alphabet latin(std::size_t d);
  /// "1", "2", ..., "d" (d <= 9).
  static Alphabet numbered(std::size_t d);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(Letter a) const { return symbols_.at(a); }

  std::optional<Letter> find(std::string_view symbol) const;
  /// Throws InputError for an unknown symbol.
  Letter index(std::string_view symbol) const;

  /// Splits UTF-8 text into codepoints and maps each to its letter.
  Word parse(std::string_view text) const;
  std::string render(WordView w) const;

  friend bool operator==(const Alphabet& x, const Alphabet& y) { return x.symbols_ == y.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, Letter, std::less<>> index_;
};

/// Splits UTF-8 text into codepoints (each returned as its own UTF-8 string).
std::vector<std::string> split_codepoints(std::string_view text);

/// A non-erasing morphism from source* to target*.
class Morphism {
 public:
  Morphism() = default;
  Morphism(Alphabet source, Alphabet target, std::vector<Word> images);

  /// Endomorphism from image strings, e.g. from_strings(Alphabet::latin(2), {"ab", "a"}).
  static Morphism from_strings(const Alphabet& alphabet, const std::vector<std::string>& images);
  static Morphism identity(const Alphabet& alphabet);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  bool is_endomorphism() const { return source_ == target_; }

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

Word apply_morphism(const Morphism& m, WordView w);

/// m(w_1) m(w_2) ... m(w_k). A function object, so unqualified calls never pick up
/// std::apply through argument-dependent lookup.
inline constexpr struct {
  Word operator()(const Morphism& m, WordView w) const { return apply_morphism(m, w); }
} apply{};

/// outer ∘ inner, i.e. a -> outer(inner(a)).
Morphism compose(const Morphism& outer, const Morphism& inner);

/// Entry (b, a) counts the occurrences of b in m(a).
IntegerMatrix incidence_matrix(const Morphism& m);

/// Letter-count vector of w over an alphabet of size d.
IntegerVector abelianization(WordView w, std::size_t d);

struct Properness {
  std::optional<Letter> left;   // common first letter of all images
  std::optional<Letter> right;  // common last letter of all images
  bool proper() const { return left.has_value() && right.has_value(); }
  friend bool operator==(const Properness&, const Properness&) = default;
};

Properness properness(const Morphism& m);

/// |det M_m| == 1, computed exactly. Throws InputError for non-endomorphisms.
bool is_unimodular(const Morphism& m);

/// For a left proper m with common first letter b, the morphism m' with b m'(a) = m(a) b.
/// Throws PreconditionError when m is not left proper.
Morphism right_proper_conjugate(const Morphism& m);

/// Occurrences of u in w, overlaps counted. Throws InputError when u is empty.
std::size_t count_occurrences(WordView w, WordView u);

/// {"alphabet": [...], "images": {"a": "ab", ...}}
nlohmann::json to_json(const Morphism& m);
/// Parses the morphism JSON. The target alphabet defaults to the source alphabet; a
/// "target" array may name a different one.
Morphism morphism_from_json(const nlohmann::json& j);

}  // namespace sadic
