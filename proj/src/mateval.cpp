#include "pimat/mateval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pimat {

// ---- PolyMatrix -----------------------------------------------------------------

PolyMatrix::PolyMatrix(std::size_t n, ContextPtr ctx)
    : n_(n), ctx_(std::move(ctx)), entries_(n * n, CPoly(ctx_)) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  if (!ctx_) throw std::invalid_argument("matrix needs a variable context");
}

PolyMatrix PolyMatrix::identity(std::size_t n, const ContextPtr& ctx) {
  PolyMatrix m(n, ctx);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CPoly(ctx, 1);
  return m;
}

PolyMatrix PolyMatrix::from_constants(const ContextPtr& ctx, const std::vector<std::vector<int>>& rows) {
  PolyMatrix m(rows.size(), ctx);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw std::invalid_argument("matrix must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = CPoly(ctx, rows[r][c]);
  }
  return m;
}

void PolyMatrix::check_compatible(const PolyMatrix& other) const {
  if (n_ != other.n_) throw std::invalid_argument("matrix sizes differ");
  if (!same_context(ctx_, other.ctx_)) throw ContextMismatch("matrices from different contexts");
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CPoly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_scalar() const {
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) {
      if (r != c && !(*this)(r, c).is_zero()) return false;
      if (r == c && !((*this)(r, r) == (*this)(0, 0))) return false;
    }
  return true;
}

CPoly PolyMatrix::trace() const {
  CPoly t(ctx_);
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& rhs) {
  check_compatible(rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& rhs) {
  check_compatible(rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  a.check_compatible(b);
  PolyMatrix out(a.n_, a.ctx_);
  for (std::size_t r = 0; r < a.n_; ++r)
    for (std::size_t k = 0; k < a.n_; ++k) {
      const CPoly& ark = a(r, k);
      if (ark.is_zero()) continue;
      for (std::size_t c = 0; c < a.n_; ++c) out(r, c).add_product(ark, b(k, c));
    }
  return out;
}

PolyMatrix operator*(const Rational& c, PolyMatrix a) {
  for (auto& e : a.entries_) e *= c;
  return a;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.n_ == b.n_ && same_context(a.ctx_, b.ctx_) && a.entries_ == b.entries_;
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

std::string to_string(const PolyMatrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.size(); ++r) {
    s += "[";
    for (std::size_t c = 0; c < m.size(); ++c) s += (c ? ", " : "") + to_string(m(r, c));
    s += "]\n";
  }
  return s;
}

// ---- contexts and fixed matrices -------------------------------------------------

ContextPtr diagonal_context(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  return VarContext::make(std::move(names));
}

ContextPtr v13_context() { return VarContext::make({"u1", "u2", "u3", "u4", "v13"}); }

ContextPtr generic_pair_context(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  for (std::size_t r = 1; r <= n; ++r)
    for (std::size_t c = 1; c <= n; ++c) names.push_back("w" + std::to_string(r) + std::to_string(c));
  return VarContext::make(std::move(names));
}

PolyMatrix generic_diagonal(std::size_t n, const ContextPtr& ctx) {
  PolyMatrix m(n, ctx);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CPoly::variable(ctx, "u" + std::to_string(i + 1));
  return m;
}

PolyMatrix generic_matrix(std::size_t n, const ContextPtr& ctx) {
  PolyMatrix m(n, ctx);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = CPoly::variable(ctx, "w" + std::to_string(r + 1) + std::to_string(c + 1));
  return m;
}

PolyMatrix cycle_matrix(std::size_t n, const ContextPtr& ctx) {
  PolyMatrix m(n, ctx);
  for (std::size_t i = 0; i < n; ++i) m(i, (i + 1) % n) += CPoly(ctx, 1);
  return m;
}

bool needs_v13(std::string_view name) { return name == "v2" || name == "v3"; }

PolyMatrix fixed_matrix(std::string_view name, const ContextPtr& ctx) {
  // -1 marks the symbolic entry v13.
  std::vector<std::vector<int>> rows;
  if (name == "v") {
    rows = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
  } else if (name == "v1") {
    rows = {{0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
  } else if (name == "v2") {
    rows = {{1, 1, -1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 0, 0}};
  } else if (name == "v3") {
    rows = {{0, 1, -1, 0}, {0, 1, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 0}};
  } else {
    throw std::invalid_argument("unknown substitution matrix '" + std::string(name) + "'");
  }
  PolyMatrix m(4, ctx);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      m(r, c) = rows[r][c] == -1 ? CPoly::variable(ctx, "v13") : CPoly(ctx, rows[r][c]);
  return m;
}

// ---- symbolic evaluation ------------------------------------------------------------

PolyMatrix eval_nc(const NCPoly& w, const MatrixImages& images) {
  if (images.empty()) throw std::invalid_argument("eval_nc needs at least one image");
  const PolyMatrix& any = images.begin()->second;
  for (const auto& [v, m] : images) {
    if (m.size() != any.size()) throw std::invalid_argument("images have different sizes");
    if (!same_context(m.context(), any.context())) throw ContextMismatch("images from different contexts");
  }
  const std::size_t n = any.size();
  const ContextPtr& ctx = any.context();
  PolyMatrix result(n, ctx);
  std::vector<PolyMatrix> prefix{PolyMatrix::identity(n, ctx)};
  Word previous;
  for (const auto& [word, c] : w.terms()) {
    std::size_t common = 0;
    while (common < word.length() && common < previous.length() && word[common] == previous[common])
      ++common;
    prefix.resize(common + 1);
    for (std::size_t i = common; i < word.length(); ++i) {
      auto it = images.find(word[i]);
      if (it == images.end()) {
        throw std::invalid_argument("no image for variable x" + std::to_string(word[i]));
      }
      prefix.push_back(prefix.back() * it->second);
    }
    result += c * prefix.back();
    previous = word;
  }
  return result;
}

ProductEvaluator::ProductEvaluator(PolyMatrix x, PolyMatrix y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw std::invalid_argument("images have different sizes");
  if (!same_context(x_.context(), y_.context())) throw ContextMismatch("images from different contexts");
}

const PolyMatrix& ProductEvaluator::commutator_value(const BasicCommutator& c) {
  auto it = cache_.find(c);
  if (it != cache_.end()) return it->second;
  const std::vector<int> entries = c.entries();
  PolyMatrix value = commutator(y_, x_);
  for (std::size_t i = 2; i < entries.size(); ++i) value = commutator(value, entries[i] == kVarX ? x_ : y_);
  return cache_.emplace(c, std::move(value)).first->second;
}

PolyMatrix ProductEvaluator::evaluate(const ShapeProduct& p) {
  PolyMatrix acc = PolyMatrix::identity(x_.size(), x_.context());
  for (const auto& f : p.factors) acc = acc * commutator_value(f);
  return acc;
}

std::vector<CPoly> ProductEvaluator::evaluate_row(const ShapeProduct& p, std::size_t r) {
  const std::size_t n = x_.size();
  std::vector<CPoly> row(n, CPoly(x_.context()));
  row[r] = CPoly(x_.context(), 1);
  for (const auto& f : p.factors) {
    const PolyMatrix& m = commutator_value(f);
    std::vector<CPoly> next(n, CPoly(x_.context()));
    for (std::size_t k = 0; k < n; ++k) {
      if (row[k].is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) next[c].add_product(row[k], m(k, c));
    }
    row = std::move(next);
  }
  return row;
}

// ---- numeric evaluation -------------------------------------------------------------

NumericEvaluator::NumericEvaluator(const NCPoly& p) {
  std::vector<Rational> coeffs;
  for (const auto& t : p.terms()) coeffs.push_back(t.second);
  const Integer scale = common_denominator(coeffs);
  nodes_.push_back(Node{});
  mass_ = 0;
  for (const auto& [w, c] : p.terms()) {
    std::size_t node = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      const int letter = w[i];
      variables_ = std::max(variables_, letter);
      std::size_t next = 0;
      for (std::size_t ch : nodes_[node].children)
        if (nodes_[ch].letter == letter) next = ch;
      if (next == 0) {
        nodes_.push_back(Node{letter, 0, 0, {}});
        next = nodes_.size() - 1;
        nodes_[node].children.push_back(next);
      }
      node = next;
    }
    const Rational scaled = c * scale;
    nodes_[node].coeff = scaled.get_num();
    mass_ += abs(nodes_[node].coeff);
    degree_ = std::max(degree_, static_cast<int>(w.length()));
  }
  for (auto& nd : nodes_)
    if (nd.coeff.fits_slong_p()) nd.coeff64 = nd.coeff.get_si();
}

template <class T>
NumMatrix<T> NumericEvaluator::eval_node(std::size_t node, const std::vector<NumMatrix<T>>& images) const {
  const std::size_t n = images.front().n;
  const Node& nd = nodes_[node];
  NumMatrix<T> value(n);
  if (nd.coeff != 0) {
    T c;
    if constexpr (std::is_same_v<T, std::int64_t>) {
      c = nd.coeff64;
    } else {
      c = nd.coeff;
    }
    for (std::size_t i = 0; i < n; ++i) value(i, i) = c;
  }
  for (std::size_t ch : nd.children) {
    const NumMatrix<T>& x = images[static_cast<std::size_t>(nodes_[ch].letter - 1)];
    const NumMatrix<T> sub = eval_node(ch, images);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const T& xrk = x(r, k);
        if (xrk == 0) continue;
        for (std::size_t c = 0; c < n; ++c) value(r, c) += xrk * sub(k, c);
      }
  }
  return value;
}

NumMatrix<Integer> NumericEvaluator::evaluate(const std::vector<NumMatrix<std::int64_t>>& images) const {
  if (images.size() < static_cast<std::size_t>(variables_)) {
    throw std::invalid_argument("not enough matrices for the polynomial's variables");
  }
  if (images.empty()) throw std::invalid_argument("at least one image is required");
  const std::size_t n = images.front().n;
  std::int64_t bound_entry = 1;
  for (const auto& m : images) {
    if (m.n != n) throw std::invalid_argument("images have different sizes");
    for (auto v : m.a) bound_entry = std::max<std::int64_t>(bound_entry, v < 0 ? -v : v);
  }
  // |value| <= mass * n^(deg-1) * B^deg bounds every intermediate node value.
  Integer bound = mass_;
  for (int i = 0; i < degree_; ++i) {
    bound *= Integer(static_cast<long>(bound_entry));
    if (i > 0) bound *= Integer(static_cast<unsigned long>(n));
  }
  NumMatrix<Integer> out(n);
  if (bound < Integer(1) << 62) {
    const NumMatrix<std::int64_t> v = eval_node(0, images);
    for (std::size_t i = 0; i < v.a.size(); ++i) out.a[i] = static_cast<long>(v.a[i]);
    return out;
  }
  std::vector<NumMatrix<Integer>> big;
  for (const auto& m : images) {
    NumMatrix<Integer> b(n);
    for (std::size_t i = 0; i < m.a.size(); ++i) b.a[i] = static_cast<long>(m.a[i]);
    big.push_back(std::move(b));
  }
  return eval_node(0, big);
}

// ---- matrix units -------------------------------------------------------------------

MultilinearLayout MultilinearLayout::all_permutations(int m) {
  if (m < 1 || m > kMaxVariables) throw std::invalid_argument("multilinear degree out of range");
  MultilinearLayout layout;
  layout.degree = m;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    layout.words.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return layout;
}

std::size_t MultilinearLayout::rank_of(std::span<const int> perm) {
  std::size_t rank = 0;
  const std::size_t m = perm.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < m; ++j) smaller += perm[j] < perm[i];
    rank = rank * (m - i) + smaller;
  }
  return rank;
}

EntryForms eval_multilinear_row(const MultilinearLayout& layout, std::span<const BasisIndex> tuple) {
  if (static_cast<int>(tuple.size()) != layout.degree) {
    throw std::invalid_argument("tuple length must equal the multilinear degree");
  }
  if (layout.words.size() != static_cast<std::size_t>(std::tgamma(layout.degree + 1) + 0.5)) {
    throw std::invalid_argument("layout must list every permutation");
  }
  EntryForms forms;
  for_each_unit_chain(tuple, [&](int r, int s, std::size_t unknown) {
    forms[{r, s}][unknown] += 1;
  });
  return forms;
}

NumMatrix<Integer> eval_multilinear_units(std::span<const Integer> coefficients, std::size_t n,
                                          std::span<const BasisIndex> tuple) {
  NumMatrix<Integer> out(n);
  for_each_unit_chain(tuple, [&](int r, int s, std::size_t unknown) {
    out(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(s - 1)) += coefficients[unknown];
  });
  return out;
}

}  // namespace pimat
