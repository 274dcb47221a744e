#include "doctest.h"
#include "oracle.hpp"

#include "pimat/ncpoly.hpp"

#include <random>

using namespace pimat;

TEST_SUITE("ncpoly") {
  TEST_CASE("words compare by length first, then letters") {
    CHECK(Word{2} < Word{1, 1});
    CHECK(Word{1, 2} < Word{2, 1});
    CHECK(Word{1, 2} * Word{3} == Word{1, 2, 3});
    CHECK(Word{} * Word{4} == Word{4});
    CHECK(Word{1, 2, 1}.count(1) == 2);
  }

  TEST_CASE("words longer than the packing limit are rejected") {
    std::vector<int> letters(kMaxWordLength, 1);
    Word w{std::span<const int>(letters)};
    CHECK_THROWS_AS(w * Word{1}, std::length_error);
    CHECK_THROWS(Word{10});
    CHECK_THROWS(Word{0});
  }

  TEST_CASE("commutator square expands to four words") {
    const NCPoly x = NCPoly::variable(1), y = NCPoly::variable(2);
    const NCPoly expected = y * x * y * x - y * x * x * y - x * y * y * x + x * y * x * y;
    CHECK(parse_ncpoly("[y,x]^2") == expected);
    CHECK(power(commutator(y, x), 2) == expected);
  }

  TEST_CASE("left-normed commutators nest to the left") {
    const NCPoly x = NCPoly::variable(1), y = NCPoly::variable(2);
    CHECK(expand_commutator({2, 1, 1}) == commutator(commutator(y, x), x));
    CHECK(parse_ncpoly("[y,x,x,y]") == commutator(commutator(commutator(y, x), x), y));
    CHECK_THROWS(expand_commutator({1}));
  }

  TEST_CASE("parser accepts coefficients, products and indexed variables") {
    const NCPoly p = parse_ncpoly("3/4*x y - 2 x3^2 + (x - y)");
    CHECK(p.coefficient(Word{1, 2}) == Rational(3, 4));
    CHECK(p.coefficient(Word{3, 3}) == -2);
    CHECK(p.coefficient(Word{2}) == -1);
    CHECK(p.max_variable() == 3);
    CHECK_THROWS_AS(parse_ncpoly("x +"), ParseError);
    CHECK_THROWS_AS(parse_ncpoly("[x]"), ParseError);
  }

  TEST_CASE("text form round trips") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const NCPoly p = oracle::random_poly(rng, i % 2 ? 2 : 5, 5, 6);
      CHECK(parse_ncpoly(to_string(p)) == p);
    }
    CHECK(to_string(parse_ncpoly("[y,x]")) == "-xy + yx");
  }

  TEST_CASE("standard polynomial has signed permutation terms") {
    const NCPoly s3 = standard_polynomial(3);
    CHECK(s3.size() == 6);
    CHECK(s3.coefficient(Word{1, 2, 3}) == 1);
    CHECK(s3.coefficient(Word{2, 1, 3}) == -1);
    CHECK(s3.coefficient(Word{3, 1, 2}) == 1);
    CHECK(standard_polynomial(2) == commutator(NCPoly::variable(1), NCPoly::variable(2)));
  }

  TEST_CASE("substitution is a ring morphism on generators") {
    const NCPoly c = parse_ncpoly("[x,y]");
    const NCPoly swapped = substitute(c, {{1, NCPoly::variable(2)}, {2, NCPoly::variable(1)}});
    CHECK(swapped == -c);
    CHECK(substitute(NCPoly(5), {}) == NCPoly(5));
    CHECK_THROWS_AS(substitute(c, {{1, NCPoly::variable(1)}}), std::invalid_argument);
  }

  TEST_CASE("multidegree and homogeneous components") {
    const NCPoly p = parse_ncpoly("xxy + xyx + y");
    CHECK_FALSE(multidegree(p, 2).has_value());
    CHECK(homogeneous_component(p, {2, 1}) == parse_ncpoly("xxy + xyx"));
    CHECK(*multidegree(parse_ncpoly("[y,x]^2"), 2) == MultiDegree{2, 2});
    CHECK(parse_ncpoly("[y,x,x]").degree() == 3);
    CHECK(NCPoly().degree() == -1);
  }
}
