#include "sadic/words.hpp"

#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"

#include <algorithm>

namespace sadic {

std::vector<std::string> split_codepoints(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    else if (lead >= 0x80) throw InputError("invalid UTF-8 lead byte");
    if (i + len > text.size()) throw InputError("truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) throw InputError("invalid UTF-8 continuation");
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) throw InputError("an alphabet needs at least two letters");
  if (symbols_.size() > 0xFFFF) throw InputError("alphabet too large");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (split_codepoints(symbols_[i]).size() != 1)
      throw InputError("alphabet symbol '" + symbols_[i] + "' is not a single codepoint");
    if (!index_.emplace(symbols_[i], static_cast<Letter>(i)).second)
      throw InputError("duplicate alphabet symbol '" + symbols_[i] + "'");
  }
}

Alphabet Alphabet::latin(std::size_t d) {
  if (d > 26) throw InputError("latin alphabet supports at most 26 letters");
  std::vector<std::string> s;
  for (std::size_t i = 0; i < d; ++i) s.emplace_back(1, static_cast<char>('a' + i));
  return Alphabet(std::move(s));
}

Alphabet Alphabet::numbered(std::size_t d) {
  if (d > 9) throw InputError("numbered alphabet supports at most 9 letters");
  std::vector<std::string> s;
  for (std::size_t i = 0; i < d; ++i) s.emplace_back(1, static_cast<char>('1' + i));
  return Alphabet(std::move(s));
}

std::optional<Letter> Alphabet::find(std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::index(std::string_view symbol) const {
  if (auto l = find(symbol)) return *l;
  throw InputError("symbol '" + std::string(symbol) + "' is not in the alphabet");
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  for (const auto& cp : split_codepoints(text)) w.push_back(index(cp));
  return w;
}

std::string Alphabet::render(WordView w) const {
  std::string out;
  out.reserve(w.size());
  for (Letter a : w) out += symbols_.at(a);
  return out;
}

Morphism::Morphism(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size()) throw InputError("a morphism needs one image per source letter");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].empty()) throw InputError("image of '" + source_.symbol(static_cast<Letter>(a)) + "' is empty");
    for (Letter b : images_[a])
      if (b >= target_.size()) throw InputError("image letter outside the target alphabet");
  }
}

Morphism Morphism::from_strings(const Alphabet& alphabet, const std::vector<std::string>& images) {
  std::vector<Word> w;
  w.reserve(images.size());
  for (const auto& s : images) w.push_back(alphabet.parse(s));
  return Morphism(alphabet, alphabet, std::move(w));
}

Morphism Morphism::identity(const Alphabet& alphabet) {
  std::vector<Word> w;
  for (std::size_t a = 0; a < alphabet.size(); ++a) w.push_back({static_cast<Letter>(a)});
  return Morphism(alphabet, alphabet, std::move(w));
}

Word apply_morphism(const Morphism& m, WordView w) {
  std::size_t length = 0;
  for (Letter a : w) {
    if (a >= m.source().size()) throw InputError("letter outside the source alphabet");
    length += m.image(a).size();
  }
  Word out;
  out.reserve(length);
  for (Letter a : w) {
    const auto& img = m.image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (!(inner.target() == outer.source())) throw InputError("compose: alphabet mismatch");
  std::vector<Word> images;
  images.reserve(inner.images().size());
  for (const auto& img : inner.images()) images.push_back(apply(outer, img));
  return Morphism(inner.source(), outer.target(), std::move(images));
}

IntegerMatrix incidence_matrix(const Morphism& m) {
  const auto rows = static_cast<Eigen::Index>(m.target().size());
  const auto cols = static_cast<Eigen::Index>(m.source().size());
  std::vector<std::vector<long>> counts(static_cast<std::size_t>(cols), std::vector<long>(static_cast<std::size_t>(rows), 0));
  for (Eigen::Index a = 0; a < cols; ++a)
    for (Letter b : m.image(static_cast<Letter>(a))) ++counts[static_cast<std::size_t>(a)][b];
  IntegerMatrix out(rows, cols);
  for (Eigen::Index a = 0; a < cols; ++a)
    for (Eigen::Index b = 0; b < rows; ++b) out(b, a) = counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return out;
}

IntegerVector abelianization(WordView w, std::size_t d) {
  std::vector<long> counts(d, 0);
  for (Letter a : w) {
    if (a >= d) throw InputError("letter outside the alphabet");
    ++counts[a];
  }
  IntegerVector out(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) out(static_cast<Eigen::Index>(i)) = counts[i];
  return out;
}

Properness properness(const Morphism& m) {
  Properness p;
  const auto& images = m.images();
  const Letter first = images.front().front();
  const Letter last = images.front().back();
  if (std::all_of(images.begin(), images.end(), [&](const Word& w) { return w.front() == first; })) p.left = first;
  if (std::all_of(images.begin(), images.end(), [&](const Word& w) { return w.back() == last; })) p.right = last;
  return p;
}

bool is_unimodular(const Morphism& m) {
  if (!m.is_endomorphism()) throw InputError("unimodularity needs an endomorphism");
  return abs(bareiss_determinant(incidence_matrix(m))) == 1;
}

Morphism right_proper_conjugate(const Morphism& m) {
  const auto p = properness(m);
  if (!p.left) throw PreconditionError("right_proper_conjugate: morphism is not left proper");
  const Letter b = *p.left;
  std::vector<Word> images;
  for (const auto& img : m.images()) {
    Word w(img.begin() + 1, img.end());
    w.push_back(b);
    images.push_back(std::move(w));
  }
  return Morphism(m.source(), m.target(), std::move(images));
}

std::size_t count_occurrences(WordView w, WordView u) {
  if (u.empty()) throw InputError("count_occurrences: empty pattern");
  if (u.size() > w.size()) return 0;
  std::size_t n = 0;
  for (std::size_t j = 0; j + u.size() <= w.size(); ++j)
    if (std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(j))) ++n;
  return n;
}

nlohmann::json to_json(const Morphism& m) {
  nlohmann::json j;
  j["alphabet"] = m.source().symbols();
  if (!m.is_endomorphism()) j["target"] = m.target().symbols();
  nlohmann::json images = nlohmann::json::object();
  for (std::size_t a = 0; a < m.source().size(); ++a)
    images[m.source().symbol(static_cast<Letter>(a))] = m.target().render(m.image(static_cast<Letter>(a)));
  j["images"] = images;
  return j;
}

Morphism morphism_from_json(const nlohmann::json& j) {
  try {
    Alphabet source(j.at("alphabet").get<std::vector<std::string>>());
    Alphabet target = j.contains("target") ? Alphabet(j.at("target").get<std::vector<std::string>>()) : source;
    const auto& images = j.at("images");
    if (!images.is_object()) throw InputError("morphism 'images' must be an object");
    for (auto it = images.begin(); it != images.end(); ++it) source.index(it.key());
    std::vector<Word> w;
    for (const auto& s : source.symbols()) {
      if (!images.contains(s)) throw InputError("missing image for letter '" + s + "'");
      w.push_back(target.parse(images.at(s).get<std::string>()));
    }
    return Morphism(source, target, std::move(w));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed morphism JSON: ") + e.what());
  }
}

}  // namespace sadic
