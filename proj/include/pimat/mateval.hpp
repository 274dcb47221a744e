#pragma once

// Evaluation of free-algebra polynomials at matrices: symbolic matrices with
// commutative polynomial entries, numeric integer matrices and matrix units.

#include "pimat/cpoly.hpp"
#include "pimat/glrep.hpp"
#include "pimat/ncpoly.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pimat {

/// Square matrix with CPoly entries sharing one variable context. Indices
/// are 0-based.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t n, ContextPtr ctx);

  static PolyMatrix identity(std::size_t n, const ContextPtr& ctx);
  static PolyMatrix from_constants(const ContextPtr& ctx, const std::vector<std::vector<int>>& rows);

  std::size_t size() const { return n_; }
  const ContextPtr& context() const { return ctx_; }

  CPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const CPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  bool is_zero() const;
  /// Off-diagonal entries vanish and diagonal entries coincide.
  bool is_scalar() const;
  CPoly trace() const;

  PolyMatrix& operator+=(const PolyMatrix& rhs);
  PolyMatrix& operator-=(const PolyMatrix& rhs);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Rational& c, PolyMatrix a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  void check_compatible(const PolyMatrix& other) const;

  std::size_t n_ = 0;
  ContextPtr ctx_;
  std::vector<CPoly> entries_;
};

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);
std::string to_string(const PolyMatrix& m);

/// Context {u1,...,un}.
ContextPtr diagonal_context(std::size_t n);
/// Context {u1,u2,u3,u4,v13} used with the matrices v2 and v3.
ContextPtr v13_context();
/// Context {u1..un, w11..wnn}: diagonal generic x plus a full generic y.
ContextPtr generic_pair_context(std::size_t n);

/// diag(u1,...,un); the context must contain u1..un.
PolyMatrix generic_diagonal(std::size_t n, const ContextPtr& ctx);
/// Matrix of fresh symbols w11..wnn from the context.
PolyMatrix generic_matrix(std::size_t n, const ContextPtr& ctx);
/// Cyclic permutation matrix with ones at (i, i+1) and (n, 1).
PolyMatrix cycle_matrix(std::size_t n, const ContextPtr& ctx);

/// The fixed 4x4 substitution matrices "v", "v1", "v2", "v3". v2 and v3
/// carry the symbol v13. Unknown names throw std::invalid_argument.
PolyMatrix fixed_matrix(std::string_view name, const ContextPtr& ctx);
bool needs_v13(std::string_view name);

using MatrixImages = std::map<int, PolyMatrix>;

/// Morphism evaluation, word by word with prefix sharing.
PolyMatrix eval_nc(const NCPoly& w, const MatrixImages& images);

/// Caches evaluations of basic commutators at a fixed (x, y) pair and
/// evaluates products factor by factor.
class ProductEvaluator {
 public:
  ProductEvaluator(PolyMatrix x, PolyMatrix y);

  const PolyMatrix& commutator_value(const BasicCommutator& c);
  PolyMatrix evaluate(const ShapeProduct& p);
  /// Row `r` of the evaluated product: e_r^T * A_1 * ... * A_k.
  std::vector<CPoly> evaluate_row(const ShapeProduct& p, std::size_t r);

  const PolyMatrix& x() const { return x_; }
  const PolyMatrix& y() const { return y_; }

 private:
  PolyMatrix x_;
  PolyMatrix y_;
  std::map<BasicCommutator, PolyMatrix> cache_;
};

// ---- numeric evaluation ------------------------------------------------------

/// Square matrix over a numeric ring (int64 or Integer/Rational), row-major.
template <class T>
struct NumMatrix {
  std::size_t n = 0;
  std::vector<T> a;

  NumMatrix() = default;
  explicit NumMatrix(std::size_t size) : n(size), a(size * size, T(0)) {}

  T& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  bool is_zero() const {
    for (const auto& v : a)
      if (v != 0) return false;
    return true;
  }
  bool is_scalar() const {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r == c ? (*this)(r, r) != (*this)(0, 0) : (*this)(r, c) != 0) return false;
    return true;
  }
};

/// Prefix tree of an integer-scaled NCPoly, evaluated Horner-style from the
/// root: value(node) = c_node * I + sum_children x_letter * value(child).
class NumericEvaluator {
 public:
  explicit NumericEvaluator(const NCPoly& p);

  int variables() const { return variables_; }
  int degree() const { return degree_; }
  /// sum |c_w| after clearing denominators.
  const Integer& coefficient_mass() const { return mass_; }

  /// Exact value of (scale * p) at the images, where scale is the common
  /// denominator; scaling does not affect zero/scalar tests.
  NumMatrix<Integer> evaluate(const std::vector<NumMatrix<std::int64_t>>& images) const;

 private:
  struct Node {
    int letter = 0;
    Integer coeff;
    std::int64_t coeff64 = 0;
    std::vector<std::size_t> children;
  };

  template <class T>
  NumMatrix<T> eval_node(std::size_t node, const std::vector<NumMatrix<T>>& images) const;

  std::vector<Node> nodes_;
  int variables_ = 0;
  int degree_ = 0;
  Integer mass_;
};

// ---- matrix units -------------------------------------------------------------

/// Matrix unit E_pq, 1-based.
struct BasisIndex {
  int p = 1;
  int q = 1;
  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

/// Unknown i stands for the coefficient of the multilinear word
/// x_{perm_i(1)} ... x_{perm_i(m)}; permutations in lexicographic order.
struct MultilinearLayout {
  int degree = 0;
  std::vector<std::vector<int>> words;

  static MultilinearLayout all_permutations(int m);
  /// Lexicographic rank of a permutation of 1..m.
  static std::size_t rank_of(std::span<const int> perm);
};

/// Sparse linear forms in the unknowns, keyed by entry (r, s) (1-based).
using EntryForms = std::map<std::pair<int, int>, std::map<std::size_t, Rational>>;

/// Evaluates sum_i xi_i * word_i at the tuple of matrix units. Each word
/// contributes to at most one entry; only nonzero chains are visited.
EntryForms eval_multilinear_row(const MultilinearLayout& layout, std::span<const BasisIndex> tuple);

/// Calls fn(r, s, unknown) for every chain of the tuple; the hot-loop version
/// of eval_multilinear_row. Words of the layout must be all permutations.
template <class Fn>
void for_each_unit_chain(std::span<const BasisIndex> tuple, Fn&& fn);

/// Value of a multilinear polynomial (coefficients by permutation rank) at a
/// tuple of matrix units; dense n x n result with 0-based indexing.
NumMatrix<Integer> eval_multilinear_units(std::span<const Integer> coefficients, std::size_t n,
                                          std::span<const BasisIndex> tuple);

// ---- template implementation ---------------------------------------------------

namespace detail {

template <class Fn>
void unit_chain_step(std::span<const BasisIndex> tuple, std::vector<int>& perm, std::uint32_t used,
                     int row, int column, Fn& fn) {
  const int m = static_cast<int>(tuple.size());
  if (static_cast<int>(perm.size()) == m) {
    fn(row, column, MultilinearLayout::rank_of(perm));
    return;
  }
  for (int i = 0; i < m; ++i) {
    if (used & (1u << i)) continue;
    if (!perm.empty() && tuple[static_cast<std::size_t>(i)].p != column) continue;
    perm.push_back(i + 1);
    const int next_row = perm.size() == 1 ? tuple[static_cast<std::size_t>(i)].p : row;
    unit_chain_step(tuple, perm, used | (1u << i), next_row, tuple[static_cast<std::size_t>(i)].q, fn);
    perm.pop_back();
  }
}

}  // namespace detail

template <class Fn>
void for_each_unit_chain(std::span<const BasisIndex> tuple, Fn&& fn) {
  std::vector<int> perm;
  perm.reserve(tuple.size());
  detail::unit_chain_step(tuple, perm, 0u, 0, 0, fn);
}

}  // namespace pimat
