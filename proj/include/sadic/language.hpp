#pragma once

// Factor languages of S-adic subshifts, extension graphs, return words and derived
// sequences.

#include "sadic/directive.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace sadic {

/// The images tau_{[1,N)}(a), one per letter, grown one level at a time.
class ImageSequence {
 public:
  explicit ImageSequence(const DirectiveSequence& ds);

  /// Current N (images are tau_{[1,N)}(a)); starts at 1 with single letters.
  std::size_t depth() const { return depth_; }
  const std::vector<Word>& images() const { return images_; }
  std::size_t min_length() const;
  std::size_t total_length() const;
  /// Moves to depth N + 1. Throws InconclusiveError when the images would exceed `limit`
  /// letters in total.
  void grow(std::size_t limit = kDefaultLimit);

  static constexpr std::size_t kDefaultLimit = std::size_t{1} << 26;

 private:
  const DirectiveSequence* ds_;
  std::size_t depth_ = 1;
  std::vector<Word> images_;
};

/// Position of a factor inside one of the table's texts.
struct FactorRef {
  std::uint32_t text;
  std::uint32_t pos;
};

/// Sorted, deduplicated factors of each length 0..max_len, stored as references into
/// the generating texts.
class LanguageTable {
 public:
  LanguageTable() = default;
  /// Factors of the given texts. Every text must be over `alphabet`.
  LanguageTable(Alphabet alphabet, std::vector<Word> texts, std::size_t max_len, std::size_t generation_depth = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t max_len() const { return max_len_; }
  std::size_t generation_depth() const { return generation_depth_; }
  const std::vector<Word>& texts() const { return texts_; }

  /// Number of factors of length n. Throws RangeError beyond max_len.
  std::size_t count(std::size_t n) const;
  WordView factor(std::size_t n, std::size_t i) const;
  std::vector<Word> factors(std::size_t n) const;
  bool contains(WordView w) const;

 private:
  Alphabet alphabet_;
  std::size_t max_len_ = 0;
  std::size_t generation_depth_ = 0;
  std::vector<Word> texts_;
  std::vector<std::vector<FactorRef>> slices_;  // slices_[n] sorted lexicographically
};

struct LanguageOptions {
  /// Consecutive depths with unchanged factor counts required before stopping.
  std::size_t stability_rounds = 2;
  std::size_t text_limit = ImageSequence::kDefaultLimit;
};

/// Factors of length <= max_len of the subshift generated by a primitive sequence.
/// The depth grows until min image length exceeds 2 max_len and the counts are stable.
/// Throws PreconditionError for non-primitive input.
LanguageTable build_language(const DirectiveSequence& ds, std::size_t max_len, const LanguageOptions& options = {});

/// p(n). Throws RangeError for n > max_len.
std::size_t complexity(const LanguageTable& lang, std::size_t n);

struct ExtensionGraph {
  Word word;
  std::vector<Letter> left;
  std::vector<Letter> right;
  std::vector<std::pair<Letter, Letter>> edges;  // (a, b) with a w b a factor

  bool connected() const;
  bool is_tree() const { return connected() && edges.size() + 1 == left.size() + right.size(); }
  bool bispecial() const { return left.size() > 1 && right.size() > 1; }
};

/// Throws RangeError when |w| > max_len - 2 and InputError when w is not a factor.
ExtensionGraph extension_graph(const LanguageTable& lang, WordView w);

struct DendricReport {
  bool dendric = true;
  std::size_t up_to = 0;
  std::size_t bispecial_checked = 0;
  /// First bispecial factor (shortlex) whose graph is not a tree.
  std::optional<ExtensionGraph> witness;
};

/// Tests every bispecial factor of length <= up_to. Throws RangeError when
/// up_to > max_len - 2.
DendricReport is_dendric(const LanguageTable& lang, std::size_t up_to);

struct ReturnWords {
  /// Sorted lexicographically.
  std::vector<Word> words;
  std::size_t depth = 0;
  std::size_t occurrences = 0;
};

/// Complete set of return words to w, found by scanning tau_{[1,N)}(a) for growing N.
/// Throws InputError when w is not a factor and InconclusiveError when the set does not
/// stabilize within the text limit.
ReturnWords return_words(const DirectiveSequence& ds, WordView w, std::size_t stability_rounds = 3);
/// Same, reusing a table for the membership test.
ReturnWords return_words(const DirectiveSequence& ds, const LanguageTable& lang, WordView w,
                         std::size_t stability_rounds = 3);

/// Element of a free group: letter k is +(k+1), its inverse -(k+1).
using FreeWord = std::vector<int>;

struct FreeBasisReport {
  bool basis = false;
  /// Determinant of the abelianization matrix, when the set has exactly d words.
  std::optional<Integer> abelian_determinant;
  std::vector<FreeWord> reduced;
};

/// Nielsen reduction (total length decreasing, lexicographic tie-break). The set is a
/// basis of the free group on d letters iff it reduces to the d letters.
FreeBasisReport free_basis_check(const std::vector<Word>& words, std::size_t d);

FreeWord free_reduce(FreeWord w);
FreeWord free_inverse(const FreeWord& w);
FreeWord free_product(const FreeWord& u, const FreeWord& v);

struct DerivedStep {
  Morphism lambda;
  /// Return words to x_[0,n_i) and x_[0,n_{i+1}), ordered by first occurrence in x.
  std::vector<Word> returns_short;
  std::vector<Word> returns_long;
  Word reference_prefix;
  bool left_proper = false;
  bool unimodular = false;
};

/// Expresses each return word to x_[0,n_{i+1}) over the return words to x_[0,n_i), where
/// x is the limit of the common prefixes of tau_{[1,N)}(a). Throws PreconditionError
/// ("not dendric at this scale") when a return-word set does not have d elements.
DerivedStep derived_step(const DirectiveSequence& ds, std::pair<std::size_t, std::size_t> lengths);

}  // namespace sadic
