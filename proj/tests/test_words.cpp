#include <doctest.h>

#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"
#include "sadic/words.hpp"

#include <random>

using namespace sadic;

namespace {

const Alphabet ab = Alphabet::latin(2);
const Alphabet abc = Alphabet::latin(3);

Morphism fib() { return Morphism::from_strings(ab, {"ab", "a"}); }
Morphism trib() { return Morphism::from_strings(abc, {"ab", "ac", "a"}); }

IntegerMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntegerMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

Morphism random_morphism(std::mt19937& rng, const Alphabet& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet.size()) - 1);
  std::vector<Word> images;
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    Word w(len(rng));
    for (auto& x : w) x = static_cast<Letter>(letter(rng));
    images.push_back(w);
  }
  return Morphism(alphabet, alphabet, images);
}

}  // namespace

TEST_CASE("alphabets reject duplicates and tiny sizes") {
  CHECK_THROWS_AS(Alphabet({"a"}), InputError);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), InputError);
  CHECK_THROWS_AS(Alphabet({"ab", "c"}), InputError);
  const Alphabet greek({"α", "β"});
  CHECK(greek.render(greek.parse("αββ")) == "αββ");
  CHECK_THROWS_AS(ab.parse("abc"), InputError);
}

TEST_CASE("apply") {
  CHECK(ab.render(apply(fib(), ab.parse("ab"))) == "aba");
  CHECK(apply(fib(), Word{}).empty());
  CHECK(abc.render(apply(trib(), abc.parse("abc"))) == "abaca");
  CHECK_THROWS_AS(apply(fib(), Word{5}), InputError);
}

TEST_CASE("compose and incidence matrices") {
  const auto s2 = compose(fib(), fib());
  CHECK(s2 == Morphism::from_strings(ab, {"aba", "ab"}));
  CHECK(compose(fib(), Morphism::identity(ab)) == fib());
  CHECK(incidence_matrix(fib()) == mat({{1, 1}, {1, 0}}));
  CHECK(incidence_matrix(s2) == mat({{2, 1}, {1, 1}}));
  CHECK(incidence_matrix(Morphism::identity(abc)) == IntegerMatrix::Identity(3, 3));
  CHECK_THROWS_AS(compose(fib(), trib()), InputError);

  // A 2^4 3 style image: 1 -> 2222 3, 2 -> 1, 3 -> 2.
  const auto num = Alphabet::numbered(3);
  const auto tau = Morphism::from_strings(num, {"22223", "1", "2"});
  CHECK(incidence_matrix(tau) == mat({{0, 1, 0}, {4, 0, 1}, {1, 0, 0}}));
}

TEST_CASE("properness") {
  CHECK(properness(fib()) == Properness{0, std::nullopt});
  CHECK(properness(trib()) == Properness{0, std::nullopt});
  CHECK(properness(Morphism::identity(ab)) == Properness{});
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(fib()));
  CHECK(bareiss_determinant(incidence_matrix(fib())) == -1);
  CHECK(is_unimodular(trib()));
  CHECK(bareiss_determinant(incidence_matrix(trib())) == 1);
  CHECK_FALSE(is_unimodular(Morphism::from_strings(ab, {"ab", "ab"})));
  const Morphism cross(ab, abc, {{0}, {1, 2}});
  CHECK_THROWS_AS(is_unimodular(cross), InputError);
}

TEST_CASE("right proper conjugate") {
  CHECK(right_proper_conjugate(fib()) == Morphism::from_strings(ab, {"ba", "a"}));
  const auto one = Morphism::from_strings(ab, {"a", "ab"});
  CHECK(right_proper_conjugate(one) == Morphism::from_strings(ab, {"a", "ba"}));
  const auto brun = Morphism::from_strings(Alphabet::numbered(3), {"1", "12", "3"});
  CHECK_THROWS_AS(right_proper_conjugate(brun), PreconditionError);
}

TEST_CASE("count occurrences") {
  CHECK(count_occurrences(ab.parse("abaab"), ab.parse("a")) == 3);
  CHECK(count_occurrences(ab.parse("aaaa"), ab.parse("aa")) == 3);
  CHECK(count_occurrences(ab.parse("abaababa"), ab.parse("aba")) == 3);
  CHECK_THROWS_AS(count_occurrences(ab.parse("ab"), Word{}), InputError);
}

TEST_CASE("morphism JSON round trip") {
  const auto j = to_json(trib());
  CHECK(j.dump() == R"({"alphabet":["a","b","c"],"images":{"a":"ab","b":"ac","c":"a"}})");
  CHECK(morphism_from_json(j) == trib());
  CHECK_THROWS_AS(morphism_from_json(nlohmann::json::parse(R"({"alphabet":["a","b"],"images":{"a":"ab"}})")), InputError);
  CHECK_THROWS_AS(morphism_from_json(nlohmann::json::parse(R"({"alphabet":["a","b"],"images":{"a":"","b":"a"}})")), InputError);
}

TEST_CASE("random morphism laws") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m1 = random_morphism(rng, abc, 4);
    const auto m2 = random_morphism(rng, abc, 4);
    const auto c = compose(m1, m2);
    CHECK(incidence_matrix(c) == IntegerMatrix(incidence_matrix(m1) * incidence_matrix(m2)));

    Word w(7);
    for (auto& x : w) x = static_cast<Letter>(rng() % 3);
    const auto image = apply(m1, w);
    std::size_t expected = 0;
    for (Letter a : w) expected += m1.image(a).size();
    CHECK(image.size() == expected);
    CHECK(abelianization(image, 3) == IntegerVector(incidence_matrix(m1) * abelianization(w, 3)));

    if (is_unimodular(m1) && is_unimodular(m2)) CHECK(is_unimodular(c));

    if (auto p = properness(m1); p.left) {
      const auto conj = right_proper_conjugate(m1);
      CHECK(incidence_matrix(conj) == incidence_matrix(m1));
      for (Letter a = 0; a < 3; ++a) {
        Word lhs{*p.left};
        lhs.insert(lhs.end(), conj.image(a).begin(), conj.image(a).end());
        Word rhs = m1.image(a);
        rhs.push_back(*p.left);
        CHECK(lhs == rhs);
      }
    }
  }
}
