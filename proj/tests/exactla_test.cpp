#include "doctest.h"
#include "oracle.hpp"

#include "pimat/exactla.hpp"

#include <random>

using namespace pimat;

namespace {

/// A rows x cols matrix of rank at most r, built as a product of random factors.
ExactMatrix low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<Vector> left(rows, Vector(r)), right(r, Vector(cols));
  for (auto& row : left)
    for (auto& v : row) {
      v = Rational(d(rng), 1 + std::abs(d(rng)));
      v.canonicalize();
    }
  for (auto& row : right)
    for (auto& v : row) v = d(rng);
  ExactMatrix m(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Vector row(cols);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t j = 0; j < cols; ++j) row[j] += left[i][k] * right[k][j];
    m.append_row(std::move(row));
  }
  return m;
}

}  // namespace

TEST_SUITE("exactla") {
  TEST_CASE("hilbert matrix has full rank") {
    ExactMatrix h(6);
    for (int i = 0; i < 6; ++i) {
      Vector row;
      for (int j = 0; j < 6; ++j) row.emplace_back(1, i + j + 1);
      h.append_row(row);
    }
    const auto cert = certified_rank(h);
    CHECK(cert.rank == 6);
    CHECK(cert.fraction_free == 6);
    CHECK(cert.modular.size() >= 2);
  }

  TEST_CASE("backends agree with plain elimination on random low-rank matrices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 150; ++t) {
      const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9, r = rng() % 6;
      const ExactMatrix m = low_rank(rng, rows, cols, r);
      const std::size_t expected = oracle::rank(m.row_data());
      CHECK(rank_fraction_free(m) == expected);
      CHECK(certified_rank(m).rank == expected);
      const auto modular = rank_modular(m, 2305843009213693951ULL);
      if (modular) CHECK(*modular <= expected);
    }
  }

  TEST_CASE("nullspace vectors are annihilated and complement the rank") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
      const ExactMatrix m = low_rank(rng, 2 + rng() % 6, 2 + rng() % 7, rng() % 5);
      const Nullspace ns = nullspace(m);
      CHECK(ns.dimension() + rank(m) == m.cols());
      for (const auto& v : ns.basis)
        for (const auto& x : m.multiply(v)) CHECK(x == 0);
      CHECK(independent_columns(m).size() == rank(m));
    }
  }

  TEST_CASE("incremental echelon form reports rank growth") {
    RowEchelon e(3);
    CHECK(e.add_row(Vector{1, 2, 3}));
    CHECK_FALSE(e.add_row(Vector{2, 4, 6}));
    CHECK(e.add_row(Vector{0, 1, 1}));
    CHECK(e.rank() == 2);
    CHECK_FALSE(e.full());
    CHECK(e.add_row(Vector{0, 0, Rational(1, 7)}));
    CHECK(e.full());
  }

  TEST_CASE("modular rank is unavailable when a denominator vanishes") {
    const ExactMatrix m = ExactMatrix::from_rows(1, {Vector{Rational(1, 7)}});
    CHECK_FALSE(rank_modular(m, 7).has_value());
    CHECK(rank_modular(m, 11).value() == 1);
  }

  TEST_CASE("primes are drawn from the expected window") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5; ++i) {
      const auto p = random_prime(rng);
      CHECK(p > (std::uint64_t{1} << 61));
      CHECK(p < (std::uint64_t{1} << 62));
      CHECK(is_prime_u64(p));
    }
    CHECK(is_prime_u64(2305843009213693951ULL));
    CHECK_FALSE(is_prime_u64(2305843009213693953ULL));
  }

  TEST_CASE("shape errors and dumps") {
    ExactMatrix m(2);
    CHECK_THROWS_AS(m.append_row(Vector{1}), std::invalid_argument);
    m.append_row(Vector{Rational(-1, 2), 3});
    CHECK(parse_dump(dump(m), 2) == m);
    const ExactMatrix blocks[] = {m, ExactMatrix(3)};
    CHECK_THROWS(stack(blocks));
  }

  TEST_CASE("single-backend modes report their own rank") {
    const ExactMatrix m = ExactMatrix::identity(4);
    RankOptions o;
    o.backend = RankBackend::FractionFree;
    CHECK(certified_rank(m, o).rank == 4);
    CHECK(certified_rank(m, o).modular.empty());
    o.backend = RankBackend::Modular;
    CHECK(certified_rank(m, o).rank == 4);
  }
}
