#pragma once

// Exact linear algebra over Q with two independent rank backends:
// fraction-free (Bareiss) integer elimination and elimination modulo random
// primes above 2^60. A rank is only reported once both agree.

#include "pimat/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pimat {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix that grows by appending rows.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  explicit ExactMatrix(std::size_t cols) : cols_(cols) {}
  ExactMatrix(std::size_t rows, std::size_t cols);

  static ExactMatrix identity(std::size_t k);
  static ExactMatrix from_rows(std::size_t cols, std::vector<Vector> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return rows_[r][c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Vector& row(std::size_t r) const { return rows_[r]; }
  const std::vector<Vector>& row_data() const { return rows_; }

  /// Throws std::invalid_argument on a length mismatch.
  void append_row(Vector row);

  Vector multiply(std::span<const Rational> v) const;
  ExactMatrix transpose() const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Vector> rows_;
};

/// Vertical concatenation; all inputs must have the same column count.
ExactMatrix stack(std::span<const ExactMatrix> blocks);

/// Rank by Bareiss elimination on integer-scaled rows. Every division is
/// checked for exactness; an inexact division throws BackendDisagreement.
std::size_t rank_fraction_free(const ExactMatrix& m);

/// Rank modulo `prime`, or nullopt when a denominator vanishes modulo it.
std::optional<std::size_t> rank_modular(const ExactMatrix& m, std::uint64_t prime);

bool is_prime_u64(std::uint64_t n);
/// Uniform random prime in (2^61, 2^62).
std::uint64_t random_prime(std::mt19937_64& rng);

class BackendDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Both: fraction-free confirmed by modular ranks. The single-backend modes
/// exist for diagnosis and skip the cross-check.
enum class RankBackend { Both, FractionFree, Modular };

/// Process-wide backend used when RankOptions does not name one.
void set_default_rank_backend(RankBackend b);
RankBackend default_rank_backend();

struct RankOptions {
  std::uint64_t seed = 0x70c1a55eedULL;
  int primes = 2;
  /// Extra primes drawn when a modular rank falls short (unlucky prime).
  int max_extra_primes = 3;
  std::optional<RankBackend> backend;
};

struct ModularRank {
  std::uint64_t prime;
  std::size_t rank;
};

struct RankCertificate {
  RankBackend backend = RankBackend::Both;
  std::size_t rank = 0;
  std::size_t fraction_free = 0;
  std::vector<ModularRank> modular;
};

/// Fraction-free rank confirmed by `options.primes` modular ranks. A modular
/// rank can only undershoot the true rank; overshoot, or failing to collect
/// enough confirming primes, throws BackendDisagreement.
RankCertificate certified_rank(const ExactMatrix& m, const RankOptions& options = {});

inline std::size_t rank(const ExactMatrix& m) { return certified_rank(m).rank; }

struct Rref {
  ExactMatrix reduced;             // nonzero rows only
  std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row echelon form; the pivot of each row is its first nonzero column.
Rref reduced_row_echelon(const ExactMatrix& m);

struct Nullspace {
  std::size_t cols = 0;
  std::vector<Vector> basis;

  std::size_t dimension() const { return basis.size(); }
};

/// Basis of {v : M v = 0}: one vector per non-pivot column of the RREF, with a
/// 1 in that column. Deterministic.
Nullspace nullspace(const ExactMatrix& m);

/// Pivot columns of the RREF, i.e. the lexicographically first maximal set of
/// linearly independent columns.
std::vector<std::size_t> independent_columns(const ExactMatrix& m);

/// Incrementally maintained reduced row echelon form. Rows are fed one at a
/// time; `add_row` reports whether the rank grew.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  bool add_row(std::span<const Rational> row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool full() const { return rows_.size() == cols_; }
  ExactMatrix matrix() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Debug format: one row per line, space-separated rationals.
std::string dump(const ExactMatrix& m);
ExactMatrix parse_dump(const std::string& text, std::size_t cols);

}  // namespace pimat
