#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the NCPoly container and Rational.

#include "pimat/ncpoly.hpp"

#include <random>
#include <vector>

namespace oracle {

using pimat::Integer;
using pimat::NCPoly;
using pimat::Rational;

/// Dense square matrix over the rationals.
struct Mat {
  std::size_t n = 0;
  std::vector<Rational> a;

  explicit Mat(std::size_t size = 0) : n(size), a(size * size) {}
  static Mat identity(std::size_t size) {
    Mat m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
    return m;
  }
  Rational& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
  friend bool operator==(const Mat&, const Mat&) = default;
};

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat z(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      if (x(i, k) != 0)
        for (std::size_t j = 0; j < x.n; ++j) z(i, j) += x(i, k) * y(k, j);
  return z;
}

inline Mat operator+(Mat x, const Mat& y) {
  for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
  return x;
}

inline bool is_scalar(const Mat& m) {
  for (std::size_t r = 0; r < m.n; ++r)
    for (std::size_t c = 0; c < m.n; ++c)
      if (r == c ? m(r, r) != m(0, 0) : m(r, c) != 0) return false;
  return true;
}

inline bool is_zero(const Mat& m) {
  for (const auto& v : m.a)
    if (v != 0) return false;
  return true;
}

/// Term-by-term evaluation with no prefix sharing; images[v-1] is x_v.
inline Mat evaluate(const NCPoly& p, const std::vector<Mat>& images, std::size_t n) {
  Mat out(n);
  for (const auto& [w, c] : p.terms()) {
    Mat m = Mat::identity(n);
    for (int l : w.letters()) m = m * images[static_cast<std::size_t>(l - 1)];
    for (auto& v : m.a) v *= c;
    out = out + m;
  }
  return out;
}

inline Mat random_matrix(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Mat m(n);
  for (auto& v : m.a) v = d(rng);
  return m;
}

inline Mat unit(std::size_t n, int p, int q) {
  Mat m(n);
  m(static_cast<std::size_t>(p - 1), static_cast<std::size_t>(q - 1)) = 1;
  return m;
}

/// Random polynomial with small integer or half-integer coefficients.
inline NCPoly random_poly(std::mt19937_64& rng, int variables, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> len(0, max_degree), var(1, variables), coef(-4, 4),
      count(0, max_terms);
  std::vector<NCPoly::Term> terms;
  const int k = count(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<int> letters(static_cast<std::size_t>(len(rng)));
    for (int& l : letters) l = var(rng);
    Rational c(coef(rng), 1 + (t % 2));
    c.canonicalize();
    terms.emplace_back(pimat::Word(std::span<const int>(letters)), c);
  }
  return NCPoly::from_terms(std::move(terms));
}

/// Rank by plain Gaussian elimination over the rationals.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
