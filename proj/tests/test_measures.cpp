#include <doctest.h>

#include "oracles.hpp"
#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"
#include "sadic/measures.hpp"

using namespace sadic;

namespace {

const Alphabet ab = Alphabet::latin(2);
const Alphabet abc = Alphabet::latin(3);

DirectiveSequence fib() { return DirectiveSequence::constant(Morphism::from_strings(ab, {"ab", "a"})); }
DirectiveSequence trib() { return DirectiveSequence::constant(Morphism::from_strings(abc, {"ab", "ac", "a"})); }

DirectiveSequence sec65(std::size_t horizon = 40) {
  Generator g;
  g.a = IntegerSequence::parse("geometric:2:1");
  g.horizon = horizon;
  return DirectiveSequence::generated(g);
}

const QuadraticNumber inv_phi(Rational(-1, 2), Rational(1, 2), 5);  // (sqrt5 - 1)/2
const QuadraticNumber inv_phi2(Rational(3, 2), Rational(-1, 2), 5); // (3 - sqrt5)/2

IntegerVector unit(Eigen::Index i) {
  IntegerVector e = IntegerVector::Zero(3);
  e(i) = 1;
  return e;
}

}  // namespace

TEST_CASE("cones at depth zero are the simplex corners") {
  const auto c = cone_at(trib(), 0);
  CHECK(c.columns == RationalMatrix::Identity(3, 3));
  CHECK(c.diameter == 2);
}

TEST_CASE("Fibonacci cone at depth 10 hugs the golden direction") {
  const auto c = cone_at(fib(), 10);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto col = c.column(j);
    // L1 distance to (1/phi, 1/phi^2), evaluated exactly in Q(sqrt5).
    const QuadraticNumber dist = abs(QuadraticNumber(col(0)) - inv_phi) + abs(QuadraticNumber(col(1)) - inv_phi2);
    CHECK(dist < QuadraticNumber(Rational(1, 50)));
  }
}

TEST_CASE("nesting coefficients are exact convex weights") {
  const Alphabet num = Alphabet::numbered(3);
  const DirectiveSequence brun(num, {}, {Morphism::from_strings(num, {"1", "2", "23"}), Morphism::from_strings(num, {"1", "12", "3"}),
                                         Morphism::from_strings(num, {"31", "2", "3"})});
  for (const auto& ds : {trib(), brun, sec65(20)}) {
    for (std::size_t n = 0; n < 15; ++n) {
      const auto k = nesting_coefficients(ds, n);
      const auto before = cone_at(ds, n), after = cone_at(ds, n + 1);
      CHECK(RationalMatrix(before.columns * k) == after.columns);
      for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) CHECK(k(i, j) >= 0);
      // Independent solve of columns(n) x = column_j(n+1); the shallow cone is a basis.
      for (Eigen::Index j = 0; j < 3; ++j) {
        const auto x = solve_exact<Rational>(before.columns, after.columns.col(j));
        REQUIRE(x.has_value());
        for (Eigen::Index i = 0; i < 3; ++i) CHECK((*x)(i) >= 0);
        CHECK(x->sum() == 1);
      }
    }
  }
}

TEST_CASE("two-measure family: recurrence and coefficient bound") {
  const auto ds = sec65(40);
  std::vector<IntegerVector> c{unit(2), unit(1), unit(0)};  // C_{-2}, C_{-1}, C_0
  for (std::size_t n = 1; n <= 40; ++n) {
    const IntegerVector cn = telescope_matrix(ds, 1, n + 1).col(0);
    const Integer a = pow(Integer(2), static_cast<unsigned>(n + 1));
    const std::size_t k = n + 2;  // index of C_n in c
    CHECK(cn == IntegerVector(a * c[k - 2] + c[k - 3]));
    c.push_back(cn);
    const Rational cn_coeff(c[k - 3].sum(), cn.sum());
    CHECK(cn_coeff <= Rational(1) / Rational(a));
  }
  // Columns do not contract to one ray.
  CHECK(cone_at(ds, 40).diameter > 1);
}

TEST_CASE("diameters shrink along primitivity windows") {
  const auto window = certify(trib(), 1).primitive.window;
  for (std::size_t n = 0; n < 30; ++n) CHECK(cone_at(trib(), n + window).diameter < cone_at(trib(), n).diameter);
}

TEST_CASE("ergodicity probe") {
  const Rational eps = pow10(-8);
  const auto t = ergodicity_probe(trib(), 200, eps);
  CHECK(t.kind == ProbeKind::unique);
  const auto oracle_box = oracle::tribonacci_frequencies(pow10(-40));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(t.enclosure[i].contains(oracle_box[i].lo));
    CHECK(t.enclosure[i].contains(oracle_box[i].hi));
    CHECK(t.enclosure[i].width() < eps);
  }

  const auto s = ergodicity_probe(sec65(40), 40, eps);
  CHECK(s.kind == ProbeKind::multiple);
  REQUIRE(s.clusters.size() == 2);
  CHECK(*s.cluster_gap >= 1);

  CHECK_THROWS_AS(ergodicity_probe(trib(), 2, eps), InputError);
  const DirectiveSequence id(ab, {}, {Morphism::identity(ab)});
  CHECK_THROWS_AS(ergodicity_probe(id, 10, eps), PreconditionError);
}

TEST_CASE("letter measure enclosure") {
  const auto box = letter_measure_enclosure(fib(), 100, pow10(-6));
  CHECK(box[0].width() < pow10(-6));
  CHECK(QuadraticNumber(box[0].lo) <= inv_phi);
  CHECK(inv_phi <= QuadraticNumber(box[0].hi));
  CHECK_THROWS_AS(letter_measure_enclosure(sec65(40), 40, pow10(-8)), InconclusiveError);
}

TEST_CASE("exact letter measures") {
  const auto f = exact_letter_measure(fib());
  REQUIRE(f.has_value());
  CHECK((*f)[0] == inv_phi);
  CHECK((*f)[1] == inv_phi2);
  CHECK_FALSE(exact_letter_measure(trib()).has_value());
  const auto tmc = DirectiveSequence::constant(Morphism::from_strings(Alphabet::latin(4), {"bb", "bd", "ca", "cb"}));
  const auto q = exact_letter_measure(tmc);
  REQUIRE(q.has_value());
  // Perron vector of the incidence matrix for eigenvalue 2, solved by hand.
  const std::vector<Rational> expected{Rational(1, 9), Rational(4, 9), Rational(2, 9), Rational(2, 9)};
  for (std::size_t i = 0; i < 4; ++i) CHECK((*q)[i] == QuadraticNumber(expected[i]));
}
