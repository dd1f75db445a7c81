#include <doctest.h>

#include "oracles.hpp"
#include "sadic/errors.hpp"
#include "sadic/language.hpp"

#include <random>

using namespace sadic;

namespace {

const Alphabet ab = Alphabet::latin(2);
const Alphabet abc = Alphabet::latin(3);

DirectiveSequence fib() { return DirectiveSequence::constant(Morphism::from_strings(ab, {"ab", "a"})); }
DirectiveSequence trib() { return DirectiveSequence::constant(Morphism::from_strings(abc, {"ab", "ac", "a"})); }

std::vector<std::pair<Letter, Letter>> edges(const Alphabet& a, std::initializer_list<const char*> pairs) {
  std::vector<std::pair<Letter, Letter>> out;
  for (const char* p : pairs) {
    const auto w = a.parse(p);
    out.emplace_back(w[0], w[1]);
  }
  return out;
}

}  // namespace

TEST_CASE("complexity of Sturmian and Arnoux-Rauzy languages") {
  const auto f = build_language(fib(), 10);
  CHECK(complexity(f, 0) == 1);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(complexity(f, n) == n + 1);
  CHECK(complexity(f, 10) == 11);
  CHECK_THROWS_AS(complexity(f, 11), RangeError);
  const auto t = build_language(trib(), 10);
  CHECK(complexity(t, 1) == 3);
  CHECK(complexity(t, 2) == 5);
  CHECK(complexity(t, 3) == 7);
  CHECK(complexity(t, 10) == 21);
  const auto empty = build_language(fib(), 0);
  CHECK(empty.count(0) == 1);
}

TEST_CASE("language tables are factor closed and biextendable") {
  for (const auto& ds : {fib(), trib()}) {
    const auto lang = build_language(ds, 14);
    for (std::size_t n = 1; n <= 14; ++n) {
      for (const auto& w : lang.factors(n)) {
        CHECK(lang.contains(WordView(w).subspan(1)));
        CHECK(lang.contains(WordView(w).first(n - 1)));
        if (n < 14) {
          bool left = false, right = false;
          for (Letter a = 0; a < ds.dimension(); ++a) {
            Word lw{a};
            lw.insert(lw.end(), w.begin(), w.end());
            Word rw = w;
            rw.push_back(a);
            left = left || lang.contains(lw);
            right = right || lang.contains(rw);
          }
          CHECK(left);
          CHECK(right);
        }
      }
    }
  }
}

TEST_CASE("language tables match a brute-force factor scan") {
  for (const auto& ds : {fib(), trib()}) {
    const auto lang = build_language(ds, 12);
    const auto text = oracle::long_image(ds, 2 * lang.generation_depth());
    for (std::size_t n = 0; n <= 12; ++n) CHECK(lang.factors(n) == oracle::factors(text, n));
  }
}

TEST_CASE("extension graphs of the Fibonacci language") {
  const auto lang = build_language(fib(), 12);
  const auto eps = extension_graph(lang, Word{});
  CHECK(eps.left == std::vector<Letter>{0, 1});
  CHECK(eps.right == std::vector<Letter>{0, 1});
  CHECK(eps.edges == edges(ab, {"aa", "ab", "ba"}));
  const auto b = extension_graph(lang, ab.parse("b"));
  CHECK(b.edges == edges(ab, {"aa"}));
  const auto a = extension_graph(lang, ab.parse("a"));
  CHECK(a.edges == edges(ab, {"ab", "ba", "bb"}));
  CHECK_THROWS_AS(extension_graph(lang, ab.parse("bb")), InputError);
  CHECK_THROWS_AS(extension_graph(lang, Word(11, 0)), RangeError);
}

TEST_CASE("dendric test") {
  const auto f = is_dendric(build_language(fib(), 22), 20);
  CHECK(f.dendric);
  CHECK(f.bispecial_checked > 0);
  const auto t = is_dendric(build_language(trib(), 22), 20);
  CHECK(t.dendric);

  // Brun pair word 32,32,23,31,13 repeated: has a strong bispecial factor.
  const Alphabet num = Alphabet::numbered(3);
  auto beta = [&](int a, int b) {
    std::vector<std::string> images{"1", "2", "3"};
    images[static_cast<std::size_t>(b - 1)] = std::to_string(a) + std::to_string(b);
    return Morphism::from_strings(num, images);
  };
  const DirectiveSequence brun(num, {}, {beta(3, 2), beta(3, 2), beta(2, 3), beta(3, 1), beta(1, 3)});
  const auto report = is_dendric(build_language(brun, 12), 10);
  CHECK_FALSE(report.dendric);
  REQUIRE(report.witness.has_value());
  CHECK_FALSE(report.witness->is_tree());
  // p(n) departs from 2n + 1.
  const auto lang = build_language(brun, 12);
  bool off = false;
  for (std::size_t n = 1; n <= 12; ++n) off = off || lang.count(n) != 2 * n + 1;
  CHECK(off);
}

TEST_CASE("return words") {
  const auto f = return_words(fib(), ab.parse("a"));
  CHECK(f.words == std::vector<Word>{ab.parse("a"), ab.parse("ab")});
  CHECK(return_words(fib(), ab.parse("ab")).words.size() == 2);
  CHECK(return_words(trib(), abc.parse("a")).words.size() == 3);
  CHECK_THROWS_AS(return_words(fib(), ab.parse("bb")), InputError);
}

TEST_CASE("return words agree with a brute-force scan") {
  for (const auto& ds : {fib(), trib()}) {
    const auto lang = build_language(ds, 6);
    const auto text = oracle::long_image(ds, 2 * lang.generation_depth());
    for (std::size_t n = 1; n <= 6; ++n)
      for (const auto& w : lang.factors(n)) CHECK(return_words(ds, lang, w).words == oracle::return_words(text, w));
  }
}

TEST_CASE("free basis check") {
  const auto r = free_basis_check({ab.parse("a"), ab.parse("ab")}, 2);
  CHECK(r.basis);
  CHECK(abs(*r.abelian_determinant) == 1);
  const auto s = free_basis_check({ab.parse("ab"), ab.parse("ba")}, 2);
  CHECK_FALSE(s.basis);
  CHECK(*s.abelian_determinant == 0);
  CHECK_FALSE(free_basis_check({ab.parse("a")}, 2).basis);
  // Primitive but not letter-like: {aab, ab} is a basis.
  CHECK(free_basis_check({ab.parse("aab"), ab.parse("ab")}, 2).basis);
  // Unimodular abelianization, not a basis: {ab a^-1 ... } cannot be built from positive
  // words, so use a Stallings cross-check on random positive sets instead.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Word> set;
    for (int k = 0; k < 3; ++k) {
      Word w(1 + rng() % 4);
      for (auto& x : w) x = static_cast<Letter>(rng() % 3);
      set.push_back(w);
    }
    const auto report = free_basis_check(set, 3);
    CHECK(report.basis == oracle::stallings_is_basis(set, 3));
    if (report.basis) CHECK(abs(*report.abelian_determinant) == 1);
  }
}

TEST_CASE("derived step") {
  const auto f = derived_step(fib(), {1, 2});
  CHECK(f.left_proper);
  CHECK(f.unimodular);
  CHECK(f.lambda == Morphism::from_strings(ab, {"ab", "a"}));
  const auto t = derived_step(trib(), {1, 2});
  CHECK(t.left_proper);
  CHECK(t.unimodular);
  CHECK(t.lambda.source().size() == 3);

  const Alphabet num = Alphabet::numbered(3);
  auto beta = [&](int a, int b) {
    std::vector<std::string> images{"1", "2", "3"};
    images[static_cast<std::size_t>(b - 1)] = std::to_string(a) + std::to_string(b);
    return Morphism::from_strings(num, images);
  };
  const DirectiveSequence brun(num, {}, {beta(3, 2), beta(3, 2), beta(2, 3), beta(3, 1), beta(1, 3)});
  bool failed = false;
  for (std::size_t n = 1; n <= 6 && !failed; ++n) {
    try {
      derived_step(brun, {n, n + 1});
    } catch (const PreconditionError&) {
      failed = true;
    } catch (const InconclusiveError&) {
    }
  }
  CHECK(failed);
}
