#pragma once

// Two-row GL_2 combinatorics and highest weight vectors inside spans of
// products of basic commutators in K<x,y>.

#include "pimat/exactla.hpp"
#include "pimat/ncpoly.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pimat {

inline constexpr int kVarX = 1;
inline constexpr int kVarY = 2;

/// Two-row partition (first, second), first >= second >= 0.
struct Partition2 {
  int first = 0;
  int second = 0;

  Partition2() = default;
  Partition2(int a, int b);

  int size() const { return first + second; }
  /// dim W(lambda) for GL_2.
  int dimension() const { return first - second + 1; }

  friend auto operator<=>(const Partition2&, const Partition2&) = default;
};

std::string to_string(const Partition2& p);
/// "a,b" or "(a,b)".
Partition2 parse_partition(std::string_view text);

/// Multiset of irreducibles, printed largest first.
class Decomposition {
 public:
  void add(const Partition2& p, int multiplicity = 1);
  int multiplicity(const Partition2& p) const;
  const std::map<Partition2, int, std::greater<>>& parts() const { return parts_; }
  /// Sum of multiplicity * dim W(lambda).
  int dimension() const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  std::map<Partition2, int, std::greater<>> parts_;
};

/// "W(8,4) ⊕ 3W(7,5) ⊕ 2W(6,6)".
std::string to_string(const Decomposition& d);

/// W(lambda) ⊗ W(mu); multiplicity free.
Decomposition clebsch_gordan(const Partition2& lambda, const Partition2& mu);
Decomposition tensor(const Decomposition& d, const Partition2& mu);

/// Ordered commutator lengths (m_1,...,m_k), each >= 2.
using CommutatorShape = std::vector<int>;

std::string to_string(const CommutatorShape& shape);
CommutatorShape parse_shape(std::string_view text);

/// W(m_1-1,1) ⊗ ... ⊗ W(m_k-1,1), decomposed left to right.
Decomposition decompose_shape(const CommutatorShape& shape);

/// Ordered compositions of `total` into at least `min_parts` parts, each >= 2.
/// Sorted by number of parts, then lexicographically descending.
std::vector<CommutatorShape> enumerate_shapes(int total, int min_parts);

/// [y,x,x^(xdeg-1),y^(ydeg-1)], the unique basic commutator of its bidegree.
struct BasicCommutator {
  int xdeg = 1;
  int ydeg = 1;

  BasicCommutator() = default;
  BasicCommutator(int x, int y);

  int length() const { return xdeg + ydeg; }
  std::vector<int> entries() const;
  NCPoly expand() const;

  friend auto operator<=>(const BasicCommutator&, const BasicCommutator&) = default;
};

std::string to_string(const BasicCommutator& c);

struct ShapeProduct {
  std::vector<BasicCommutator> factors;

  CommutatorShape shape() const;
  Partition2 bidegree_partition() const;  // requires xdeg total >= ydeg total
  int xdeg() const;
  int ydeg() const;
  NCPoly expand() const;

  friend auto operator<=>(const ShapeProduct&, const ShapeProduct&) = default;
};

/// Factors juxtaposed, equal neighbours collapsed: "[y,x,x][y,x]^2".
std::string to_string(const ShapeProduct& p);

/// All products of basic commutators with the given lengths and total
/// bidegree lambda; x-heavier splits come first.
std::vector<ShapeProduct> shape_basis(const CommutatorShape& shape, const Partition2& lambda);

/// Every ShapeProduct of bidegree lambda with at least min_parts factors, in
/// enumerate_shapes order.
std::vector<ShapeProduct> candidate_products(const Partition2& lambda, int min_parts);

/// Component of bidegree (a+1, b-1) of substitute(p, y -> y+x) for p of
/// bidegree (a, b): the GL_2 raising operator.
NCPoly raise(const NCPoly& p);

/// Raising operator applied to a product factor by factor (Leibniz rule).
NCPoly raise(const ShapeProduct& p);

/// Highest weight vectors of weight lambda in the span of products of at
/// least min_parts basic commutators.
struct HwvSpace {
  Partition2 lambda;
  int min_parts = 0;
  /// Linearly independent products spanning the candidate space.
  std::vector<ShapeProduct> products;
  /// Basis vectors as coefficient vectors over `products`.
  std::vector<Vector> coordinates;
  /// Basis vectors expanded in the free algebra.
  std::vector<NCPoly> vectors;
  /// Rank certificates of the independence check and of the raising system.
  RankCertificate span_rank;
  RankCertificate raise_rank;

  std::size_t dimension() const { return vectors.size(); }
};

HwvSpace hwv_space(const Partition2& lambda, int min_parts);

/// Linear combination of products in the commutator grammar.
std::string to_string(const std::vector<ShapeProduct>& products, const Vector& coordinates);

/// True iff w != 0 and w(x, y+x) = w(x, y). Throws std::invalid_argument for
/// input that is not bihomogeneous in x, y.
bool verify_hwv(const NCPoly& w);

/// Sum over shapes of the multiplicity of lambda in decompose_shape.
int expected_hwv_count(const Partition2& lambda, int min_parts);

/// Partitions of `degree` into two rows with second part >= min_second.
std::vector<Partition2> partitions_of(int degree, int min_second);

/// Word-coordinate matrix: one column per polynomial, rows indexed by all words
/// occurring in any of them (sorted).
ExactMatrix word_matrix(const std::vector<NCPoly>& polys);

}  // namespace pimat
