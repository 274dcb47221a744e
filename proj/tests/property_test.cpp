#include "doctest.h"
#include "oracle.hpp"

#include "pimat/mateval.hpp"
#include "pimat/ncpoly.hpp"

#include <random>

using namespace pimat;

TEST_SUITE("properties") {
  TEST_CASE("substitution respects sums and products") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; ++t) {
      const NCPoly p = oracle::random_poly(rng, 3, 3, 4), q = oracle::random_poly(rng, 3, 3, 4);
      std::map<int, NCPoly> images;
      for (int v = 1; v <= 3; ++v) images[v] = oracle::random_poly(rng, 3, 2, 3);
      const NCPoly sp = substitute(p, images), sq = substitute(q, images);
      CHECK(substitute(p * q, images) == sp * sq);
      CHECK(substitute(p + q, images) == sp + sq);
      CHECK(substitute(Rational(3, 2) * p, images) == Rational(3, 2) * sp);
    }
  }

  TEST_CASE("evaluation at constant matrices respects sums and products") {
    std::mt19937_64 rng(77);
    const auto ctx = VarContext::make({});
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = 1 + rng() % 3;
      const NCPoly p = oracle::random_poly(rng, 2, 3, 4), q = oracle::random_poly(rng, 2, 3, 4);
      std::vector<oracle::Mat> reference;
      MatrixImages images;
      for (int v = 1; v <= 2; ++v) {
        const oracle::Mat m = oracle::random_matrix(rng, n, 3);
        std::vector<std::vector<int>> rows(n, std::vector<int>(n));
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) rows[r][c] = static_cast<int>(m(r, c).get_num().get_si());
        images.emplace(v, PolyMatrix::from_constants(ctx, rows));
        reference.push_back(m);
      }
      const PolyMatrix ep = eval_nc(p, images), eq = eval_nc(q, images);
      CHECK(eval_nc(p * q, images) == ep * eq);
      CHECK(eval_nc(p + q, images) == ep + eq);
      const oracle::Mat expected = oracle::evaluate(p * q, reference, n);
      const PolyMatrix got = ep * eq;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          const auto value = got(r, c).constant_value();
          CHECK(value.value_or(Rational(0)) == expected(r, c));
        }
    }
  }

  TEST_CASE("evaluation commutes with substitution") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 300; ++t) {
      const NCPoly p = oracle::random_poly(rng, 2, 4, 4);
      const std::map<int, NCPoly> images{{1, oracle::random_poly(rng, 2, 2, 3)},
                                         {2, oracle::random_poly(rng, 2, 2, 3)}};
      const std::vector<oracle::Mat> xs{oracle::random_matrix(rng, 2, 3), oracle::random_matrix(rng, 2, 3)};
      const std::vector<oracle::Mat> inner{oracle::evaluate(images.at(1), xs, 2), oracle::evaluate(images.at(2), xs, 2)};
      CHECK(oracle::evaluate(substitute(p, images), xs, 2) == oracle::evaluate(p, inner, 2));
    }
  }
}
