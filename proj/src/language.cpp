#include "sadic/language.hpp"

#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sadic {

// ---------------------------------------------------------------- ImageSequence

ImageSequence::ImageSequence(const DirectiveSequence& ds) : ds_(&ds) {
  for (std::size_t a = 0; a < ds.dimension(); ++a) images_.push_back({static_cast<Letter>(a)});
}

std::size_t ImageSequence::min_length() const {
  std::size_t m = images_.front().size();
  for (const auto& w : images_) m = std::min(m, w.size());
  return m;
}

std::size_t ImageSequence::total_length() const {
  std::size_t t = 0;
  for (const auto& w : images_) t += w.size();
  return t;
}

void ImageSequence::grow(std::size_t limit) {
  if (auto h = ds_->horizon(); h && depth_ > *h)
    throw InconclusiveError("image growth reached the generator horizon " + std::to_string(*h));
  const Morphism tau = ds_->at(depth_);
  std::vector<Word> next;
  std::size_t total = 0;
  for (const auto& img : tau.images()) {
    std::size_t len = 0;
    for (Letter b : img) len += images_[b].size();
    total += len;
    if (total > limit) throw InconclusiveError("images exceed the text limit of " + std::to_string(limit) + " letters");
    Word w;
    w.reserve(len);
    for (Letter b : img) w.insert(w.end(), images_[b].begin(), images_[b].end());
    next.push_back(std::move(w));
  }
  images_ = std::move(next);
  ++depth_;
}

// ---------------------------------------------------------------- LanguageTable

LanguageTable::LanguageTable(Alphabet alphabet, std::vector<Word> texts, std::size_t max_len, std::size_t generation_depth)
    : alphabet_(std::move(alphabet)), max_len_(max_len), generation_depth_(generation_depth), texts_(std::move(texts)) {
  std::vector<FactorRef> refs;
  for (std::size_t t = 0; t < texts_.size(); ++t) {
    for (Letter a : texts_[t])
      if (a >= alphabet_.size()) throw InputError("text letter outside the alphabet");
    for (std::size_t p = 0; p < texts_[t].size(); ++p)
      refs.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(p)});
  }
  auto view = [&](const FactorRef& r) {
    const auto& text = texts_[r.text];
    const std::size_t len = std::min(max_len_, text.size() - r.pos);
    return WordView(text.data() + r.pos, len);
  };
  std::sort(refs.begin(), refs.end(), [&](const FactorRef& x, const FactorRef& y) {
    const auto a = view(x), b = view(y);
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  std::vector<std::size_t> lcp(refs.size(), 0);  // with the previous ref
  for (std::size_t i = 1; i < refs.size(); ++i) {
    const auto a = view(refs[i - 1]), b = view(refs[i]);
    const auto bound = std::min(a.size(), b.size());
    lcp[i] = static_cast<std::size_t>(std::mismatch(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(bound), b.begin()).first - a.begin());
  }
  slices_.assign(max_len_ + 1, {});
  if (!refs.empty()) slices_[0].push_back({0, 0});
  for (std::size_t n = 1; n <= max_len_; ++n) {
    bool first = true;
    std::size_t run_min = 0;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      if (!first) run_min = std::min(run_min, lcp[i]);
      if (view(refs[i]).size() < n) continue;
      if (first || run_min < n) slices_[n].push_back(refs[i]);
      first = false;
      run_min = max_len_;
    }
  }
}

std::size_t LanguageTable::count(std::size_t n) const {
  if (n > max_len_) throw RangeError("length " + std::to_string(n) + " exceeds the table bound " + std::to_string(max_len_));
  if (n == 0) return 1;
  return slices_[n].size();
}

WordView LanguageTable::factor(std::size_t n, std::size_t i) const {
  if (n > max_len_) throw RangeError("length exceeds the table bound");
  if (n == 0) return {};
  const auto& r = slices_[n].at(i);
  return WordView(texts_[r.text].data() + r.pos, n);
}

std::vector<Word> LanguageTable::factors(std::size_t n) const {
  std::vector<Word> out;
  for (std::size_t i = 0; i < count(n); ++i) {
    const auto f = factor(n, i);
    out.emplace_back(f.begin(), f.end());
  }
  return out;
}

bool LanguageTable::contains(WordView w) const {
  const std::size_t n = w.size();
  if (n > max_len_) throw RangeError("word longer than the table bound");
  if (n == 0) return true;
  const auto& slice = slices_[n];
  auto it = std::lower_bound(slice.begin(), slice.end(), w, [&](const FactorRef& r, WordView key) {
    const WordView f(texts_[r.text].data() + r.pos, n);
    return std::lexicographical_compare(f.begin(), f.end(), key.begin(), key.end());
  });
  if (it == slice.end()) return false;
  const WordView f(texts_[it->text].data() + it->pos, n);
  return std::equal(f.begin(), f.end(), w.begin());
}

namespace {

void require_primitive(const DirectiveSequence& ds, const char* what) {
  if (certify(ds, 1).primitive.verdict != Verdict::yes)
    throw PreconditionError(std::string(what) + " needs a sequence certified primitive");
}

std::vector<std::size_t> counts_of(const LanguageTable& t) {
  std::vector<std::size_t> c;
  for (std::size_t n = 0; n <= t.max_len(); ++n) c.push_back(t.count(n));
  return c;
}

}  // namespace

LanguageTable build_language(const DirectiveSequence& ds, std::size_t max_len, const LanguageOptions& options) {
  require_primitive(ds, "build_language");
  ImageSequence seq(ds);
  while (seq.min_length() <= 2 * max_len) seq.grow(options.text_limit);
  LanguageTable table(ds.alphabet(), seq.images(), max_len, seq.depth());
  auto counts = counts_of(table);
  std::size_t stable = 0;
  while (stable < options.stability_rounds) {
    seq.grow(options.text_limit);
    LanguageTable next(ds.alphabet(), seq.images(), max_len, seq.depth());
    auto next_counts = counts_of(next);
    stable = next_counts == counts ? stable + 1 : 0;
    counts = std::move(next_counts);
    table = std::move(next);
  }
  return table;
}

std::size_t complexity(const LanguageTable& lang, std::size_t n) { return lang.count(n); }

// ---------------------------------------------------------------- extension graphs

bool ExtensionGraph::connected() const {
  const std::size_t nl = left.size(), nr = right.size();
  if (nl + nr == 0) return true;
  std::vector<std::size_t> parent(nl + nr);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index_of = [](const std::vector<Letter>& v, Letter a) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), a) - v.begin());
  };
  std::size_t components = nl + nr;
  for (const auto& [a, b] : edges) {
    const auto x = find(index_of(left, a)), y = find(nl + index_of(right, b));
    if (x != y) {
      parent[x] = y;
      --components;
    }
  }
  return components == 1;
}

ExtensionGraph extension_graph(const LanguageTable& lang, WordView w) {
  if (w.size() + 2 > lang.max_len()) throw RangeError("extension graph needs a table reaching |w| + 2");
  if (!lang.contains(w)) throw InputError("word '" + lang.alphabet().render(w) + "' is not a factor");
  ExtensionGraph g;
  g.word.assign(w.begin(), w.end());
  const auto d = static_cast<Letter>(lang.alphabet().size());
  Word buffer(w.size() + 2);
  std::copy(w.begin(), w.end(), buffer.begin() + 1);
  for (Letter a = 0; a < d; ++a) {
    buffer[0] = a;
    if (lang.contains(WordView(buffer.data(), w.size() + 1))) g.left.push_back(a);
  }
  for (Letter b = 0; b < d; ++b) {
    buffer[w.size() + 1] = b;
    if (lang.contains(WordView(buffer.data() + 1, w.size() + 1))) g.right.push_back(b);
  }
  for (Letter a : g.left)
    for (Letter b : g.right) {
      buffer[0] = a;
      buffer[w.size() + 1] = b;
      if (lang.contains(buffer)) g.edges.emplace_back(a, b);
    }
  return g;
}

DendricReport is_dendric(const LanguageTable& lang, std::size_t up_to) {
  if (up_to + 2 > lang.max_len()) throw RangeError("is_dendric needs a table reaching up_to + 2");
  DendricReport report;
  report.up_to = up_to;
  const auto d = static_cast<Letter>(lang.alphabet().size());
  Word buffer;
  for (std::size_t n = 0; n <= up_to; ++n) {
    for (std::size_t i = 0; i < lang.count(n); ++i) {
      const auto w = lang.factor(n, i);
      buffer.assign(w.size() + 1, 0);
      // Cheap bispecial screen before the full graph.
      int left = 0, right = 0;
      std::copy(w.begin(), w.end(), buffer.begin() + 1);
      for (Letter a = 0; a < d && left < 2; ++a) {
        buffer[0] = a;
        left += lang.contains(buffer);
      }
      if (left < 2) continue;
      std::copy(w.begin(), w.end(), buffer.begin());
      for (Letter b = 0; b < d && right < 2; ++b) {
        buffer[w.size()] = b;
        right += lang.contains(buffer);
      }
      if (right < 2) continue;
      ++report.bispecial_checked;
      auto g = extension_graph(lang, w);
      if (!g.is_tree()) {
        report.dendric = false;
        report.witness = std::move(g);
        return report;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------- return words

namespace {

std::vector<std::size_t> occurrences(WordView text, WordView w) {
  std::vector<std::size_t> out;
  if (w.size() > text.size()) return out;
  for (std::size_t i = 0; i + w.size() <= text.size(); ++i)
    if (std::equal(w.begin(), w.end(), text.begin() + static_cast<std::ptrdiff_t>(i))) out.push_back(i);
  return out;
}

}  // namespace

ReturnWords return_words(const DirectiveSequence& ds, WordView w, std::size_t stability_rounds) {
  const auto lang = build_language(ds, w.size());
  return return_words(ds, lang, w, stability_rounds);
}

ReturnWords return_words(const DirectiveSequence& ds, const LanguageTable& lang, WordView w, std::size_t stability_rounds) {
  if (w.empty()) throw InputError("return words need a non-empty word");
  if (!lang.contains(w)) throw InputError("word '" + ds.alphabet().render(w) + "' is not a factor");
  require_primitive(ds, "return_words");
  ImageSequence seq(ds);
  while (seq.min_length() < w.size()) seq.grow();
  std::set<Word> previous;
  std::size_t stable = 0;
  for (;;) {
    std::set<Word> found;
    std::size_t count = 0;
    for (const auto& text : seq.images()) {
      const auto occ = occurrences(text, w);
      count += occ.size();
      for (std::size_t k = 0; k + 1 < occ.size(); ++k)
        found.emplace(text.begin() + static_cast<std::ptrdiff_t>(occ[k]), text.begin() + static_cast<std::ptrdiff_t>(occ[k + 1]));
    }
    stable = (!found.empty() && found == previous) ? stable + 1 : 0;
    if (stable >= stability_rounds && count >= 2 * found.size() * w.size()) {
      return {std::vector<Word>(found.begin(), found.end()), seq.depth(), count};
    }
    previous = std::move(found);
    try {
      seq.grow();
    } catch (const InconclusiveError& e) {
      throw InconclusiveError(std::string("return words did not stabilize: ") + e.what());
    }
  }
}

// ---------------------------------------------------------------- free groups

FreeWord free_reduce(FreeWord w) {
  FreeWord out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

FreeWord free_inverse(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

FreeWord free_product(const FreeWord& u, const FreeWord& v) {
  FreeWord w = u;
  w.insert(w.end(), v.begin(), v.end());
  return free_reduce(std::move(w));
}

namespace {

// Order on signed letters: a < a^-1 < b < b^-1 < ...
bool letter_less(int x, int y) {
  const int ax = std::abs(x), ay = std::abs(y);
  if (ax != ay) return ax < ay;
  return x > y;
}

bool shortlex_less(const FreeWord& u, const FreeWord& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end(), letter_less);
}

}  // namespace

FreeBasisReport free_basis_check(const std::vector<Word>& words, std::size_t d) {
  FreeBasisReport report;
  if (words.size() == d) {
    IntegerMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) m.col(static_cast<Eigen::Index>(j)) = abelianization(words[j], d);
    report.abelian_determinant = bareiss_determinant(m);
  }
  std::vector<FreeWord> s;
  for (const auto& w : words) {
    FreeWord f;
    for (Letter a : w) f.push_back(static_cast<int>(a) + 1);
    if (!f.empty()) s.push_back(std::move(f));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < s.size() && !changed; ++i) {
      for (std::size_t j = 0; j < s.size() && !changed; ++j) {
        if (i == j) continue;
        const FreeWord inv = free_inverse(s[j]);
        for (const FreeWord& c : {free_product(s[i], s[j]), free_product(s[i], inv), free_product(s[j], s[i]),
                                  free_product(inv, s[i])}) {
          if (shortlex_less(c, s[i])) {
            if (c.empty()) s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
            else s[i] = c;
            changed = true;
            break;
          }
        }
      }
    }
  }
  report.reduced = s;
  if (s.size() == d) {
    std::vector<bool> seen(d, false);
    bool ok = true;
    for (const auto& f : s) {
      if (f.size() != 1 || static_cast<std::size_t>(std::abs(f[0])) > d || seen[static_cast<std::size_t>(std::abs(f[0]) - 1)]) {
        ok = false;
        break;
      }
      seen[static_cast<std::size_t>(std::abs(f[0]) - 1)] = true;
    }
    report.basis = ok;
  }
  return report;
}

// ---------------------------------------------------------------- derived sequences

namespace {

std::size_t common_prefix_length(const std::vector<Word>& words) {
  std::size_t n = words.front().size();
  for (const auto& w : words) {
    const auto bound = std::min(n, w.size());
    n = static_cast<std::size_t>(std::mismatch(words.front().begin(), words.front().begin() + static_cast<std::ptrdiff_t>(bound), w.begin()).first -
                                 words.front().begin());
  }
  return n;
}

// Return words to the prefix u of x, in order of first occurrence along x; empty when
// x is too short to show all of `expected`.
std::vector<Word> ordered_returns(WordView x, std::size_t u_len, const std::vector<Word>& expected) {
  const WordView u = x.first(u_len);
  const auto occ = occurrences(x, u);
  std::vector<Word> order;
  for (std::size_t k = 0; k + 1 < occ.size() && order.size() < expected.size(); ++k) {
    Word r(x.begin() + static_cast<std::ptrdiff_t>(occ[k]), x.begin() + static_cast<std::ptrdiff_t>(occ[k + 1]));
    if (std::find(order.begin(), order.end(), r) == order.end()) order.push_back(std::move(r));
  }
  if (order.size() < expected.size()) return {};
  return order;
}

}  // namespace

DerivedStep derived_step(const DirectiveSequence& ds, std::pair<std::size_t, std::size_t> lengths) {
  const auto [short_len, long_len] = lengths;
  if (short_len < 1 || short_len >= long_len) throw InputError("derived_step needs 1 <= n_i < n_{i+1}");
  const std::size_t d = ds.dimension();

  const auto lang = build_language(ds, long_len + 2);
  if (const auto dendric = is_dendric(lang, long_len); !dendric.dendric)
    throw PreconditionError("not dendric at this scale: extension graph of '" + ds.alphabet().render(dendric.witness->word) +
                            "' is not a tree");

  // Reference point: the common prefix of the images tau_{[1,N)}(a). Sequences that are
  // not left proper may have no long common prefix; the longest image stands in then.
  ImageSequence seq(ds);
  auto reference = [&]() -> WordView {
    const auto& images = seq.images();
    const auto cp = common_prefix_length(images);
    if (cp >= long_len) return WordView(images.front().data(), cp);
    const auto longest = std::max_element(images.begin(), images.end(),
                                          [](const Word& a, const Word& b) { return a.size() < b.size(); });
    return *longest;
  };
  while (seq.min_length() < long_len || reference().size() < long_len) seq.grow();
  const Word prefix(reference().first(long_len).begin(), reference().first(long_len).end());
  const Word u(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(short_len));

  const auto short_set = return_words(ds, lang, u).words;
  const auto long_set = return_words(ds, lang, prefix).words;
  if (short_set.size() != d || long_set.size() != d)
    throw PreconditionError("not dendric at this scale: " + std::to_string(short_set.size()) + " and " +
                            std::to_string(long_set.size()) + " return words, expected " + std::to_string(d));

  std::vector<Word> theta_short, theta_long;
  for (;;) {
    const auto x = reference();
    if (std::equal(prefix.begin(), prefix.end(), x.begin())) {
      theta_short = ordered_returns(x, short_len, short_set);
      theta_long = ordered_returns(x, long_len, long_set);
      if (!theta_short.empty() && !theta_long.empty()) break;
    }
    seq.grow();
  }

  std::vector<Word> lambda_images;
  for (const auto& r : theta_long) {
    Word ru = r;
    ru.insert(ru.end(), u.begin(), u.end());
    auto occ = occurrences(ru, u);
    Word image;
    for (std::size_t k = 0; k + 1 < occ.size(); ++k) {
      const Word piece(ru.begin() + static_cast<std::ptrdiff_t>(occ[k]), ru.begin() + static_cast<std::ptrdiff_t>(occ[k + 1]));
      const auto it = std::find(theta_short.begin(), theta_short.end(), piece);
      if (it == theta_short.end()) throw InconclusiveError("a long return word does not factor over the short ones");
      image.push_back(static_cast<Letter>(it - theta_short.begin()));
    }
    lambda_images.push_back(std::move(image));
  }

  DerivedStep out;
  out.lambda = Morphism(ds.alphabet(), ds.alphabet(), std::move(lambda_images));
  // theta_{i+1} = theta_i o lambda, as word identities.
  for (std::size_t k = 0; k < d; ++k) {
    Word expanded;
    for (Letter j : out.lambda.image(static_cast<Letter>(k))) expanded.insert(expanded.end(), theta_short[j].begin(), theta_short[j].end());
    if (expanded != theta_long[k]) throw InconclusiveError("derived step failed the word identity check");
  }
  out.returns_short = std::move(theta_short);
  out.returns_long = std::move(theta_long);
  out.reference_prefix = prefix;
  out.left_proper = properness(out.lambda).left.has_value();
  out.unimodular = is_unimodular(out.lambda);
  return out;
}

// ---------------------------------------------------------------- aperiodicity

AperiodicityReport aperiodicity_witness(const DirectiveSequence& ds, std::size_t max_len) {
  const auto cert = certify(ds, 1);
  if (cert.primitive.verdict != Verdict::yes) throw PreconditionError("aperiodicity_witness needs a primitive sequence");
  if (!cert.unimodular) throw PreconditionError("aperiodicity_witness needs a unimodular sequence");
  const auto lang = build_language(ds, max_len + 1);
  AperiodicityReport report;
  for (std::size_t n = 0; n <= max_len + 1; ++n) report.complexity.push_back(lang.count(n));
  for (std::size_t n = 1; n < max_len + 1; ++n) {
    if (report.complexity[n] == report.complexity[n + 1]) {
      report.period_length = n;
      return report;
    }
  }
  for (std::size_t n = 1; n <= max_len; ++n)
    if (report.complexity[n] < n + 1)
      throw InconclusiveError("complexity below n + 1 without a plateau; this contradicts Morse-Hedlund");
  report.aperiodic = true;
  return report;
}

}  // namespace sadic
