#include "pimat/glrep.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace pimat {

// ---- partitions and decompositions --------------------------------------------

Partition2::Partition2(int a, int b) : first(a), second(b) {
  if (b < 0 || a < b) {
    throw std::invalid_argument("not a two-row partition: (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
  }
}

std::string to_string(const Partition2& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') s += c;
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string_view item(s.data() + pos, comma - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw ParseError("expected a comma-separated integer list, got '" + std::string(text) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Partition2 parse_partition(std::string_view text) {
  const auto v = parse_int_list(text);
  if (v.size() != 2) throw ParseError("a two-row partition has two parts: '" + std::string(text) + "'");
  try {
    return Partition2(v[0], v[1]);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void Decomposition::add(const Partition2& p, int multiplicity) {
  if (multiplicity <= 0) return;
  parts_[p] += multiplicity;
}

int Decomposition::multiplicity(const Partition2& p) const {
  auto it = parts_.find(p);
  return it == parts_.end() ? 0 : it->second;
}

int Decomposition::dimension() const {
  int d = 0;
  for (const auto& [p, m] : parts_) d += m * p.dimension();
  return d;
}

std::string to_string(const Decomposition& d) {
  std::string s;
  for (const auto& [p, m] : d.parts()) {
    if (!s.empty()) s += " ⊕ ";
    if (m > 1) s += std::to_string(m);
    s += "W" + to_string(p);
  }
  return s.empty() ? "0" : s;
}

Decomposition clebsch_gordan(const Partition2& lambda, const Partition2& mu) {
  int p1 = lambda.first - lambda.second;
  int p2 = lambda.second;
  int q1 = mu.first - mu.second;
  int q2 = mu.second;
  if (p1 < q1) {
    std::swap(p1, q1);
    std::swap(p2, q2);
  }
  Decomposition d;
  for (int j = 0; j <= q1; ++j) d.add(Partition2(p1 + p2 + q1 + q2 - j, p2 + q2 + j));
  return d;
}

Decomposition tensor(const Decomposition& d, const Partition2& mu) {
  Decomposition out;
  for (const auto& [p, m] : d.parts()) {
    const Decomposition step = clebsch_gordan(p, mu);
    for (const auto& [q, k] : step.parts()) out.add(q, m * k);
  }
  return out;
}

std::string to_string(const CommutatorShape& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "," : "") + std::to_string(shape[i]);
  return s + ")";
}

CommutatorShape parse_shape(std::string_view text) {
  auto v = parse_int_list(text);
  for (int m : v)
    if (m < 2) throw ParseError("commutator lengths must be at least 2");
  return v;
}

Decomposition decompose_shape(const CommutatorShape& shape) {
  if (shape.empty()) throw std::invalid_argument("empty commutator shape");
  Decomposition d;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] < 2) throw std::invalid_argument("commutator lengths must be at least 2");
    const Partition2 factor(shape[i] - 1, 1);
    if (i == 0) {
      d.add(factor);
    } else {
      d = tensor(d, factor);
    }
  }
  return d;
}

std::vector<CommutatorShape> enumerate_shapes(int total, int min_parts) {
  std::vector<CommutatorShape> out;
  CommutatorShape current;
  std::function<void(int)> recurse = [&](int remaining) {
    if (remaining == 0) {
      if (static_cast<int>(current.size()) >= min_parts) out.push_back(current);
      return;
    }
    for (int m = remaining; m >= 2; --m) {
      if (remaining - m == 1) continue;
      current.push_back(m);
      recurse(remaining - m);
      current.pop_back();
    }
  };
  if (total >= 2) recurse(total);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

// ---- commutators and products --------------------------------------------------

BasicCommutator::BasicCommutator(int x, int y) : xdeg(x), ydeg(y) {
  if (x < 1 || y < 1) throw std::invalid_argument("basic commutator needs xdeg, ydeg >= 1");
}

std::vector<int> BasicCommutator::entries() const {
  std::vector<int> e{kVarY, kVarX};
  e.insert(e.end(), static_cast<std::size_t>(xdeg - 1), kVarX);
  e.insert(e.end(), static_cast<std::size_t>(ydeg - 1), kVarY);
  return e;
}

NCPoly BasicCommutator::expand() const {
  const auto e = entries();
  return expand_commutator(std::span<const int>(e));
}

std::string to_string(const BasicCommutator& c) {
  std::string s = "[";
  const auto e = c.entries();
  for (std::size_t i = 0; i < e.size(); ++i) s += std::string(i ? "," : "") + (e[i] == kVarX ? "x" : "y");
  return s + "]";
}

CommutatorShape ShapeProduct::shape() const {
  CommutatorShape s;
  for (const auto& f : factors) s.push_back(f.length());
  return s;
}

int ShapeProduct::xdeg() const {
  int d = 0;
  for (const auto& f : factors) d += f.xdeg;
  return d;
}

int ShapeProduct::ydeg() const {
  int d = 0;
  for (const auto& f : factors) d += f.ydeg;
  return d;
}

Partition2 ShapeProduct::bidegree_partition() const { return Partition2(xdeg(), ydeg()); }

namespace {

const NCPoly& cached_expansion(const BasicCommutator& c) {
  // Keyed by bidegree; populated lazily. Guarded for parallel callers.
  static std::mutex mutex;
  static std::map<BasicCommutator, NCPoly> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(c);
  if (it == cache.end()) it = cache.emplace(c, c.expand()).first;
  return it->second;
}

}  // namespace

NCPoly ShapeProduct::expand() const {
  NCPoly p(1);
  for (const auto& f : factors) p = p * cached_expansion(f);
  return p;
}

std::string to_string(const ShapeProduct& p) {
  std::string s;
  for (std::size_t i = 0; i < p.factors.size();) {
    std::size_t j = i;
    while (j < p.factors.size() && p.factors[j] == p.factors[i]) ++j;
    s += to_string(p.factors[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s.empty() ? "1" : s;
}

std::vector<ShapeProduct> shape_basis(const CommutatorShape& shape, const Partition2& lambda) {
  int total = 0;
  for (int m : shape) total += m;
  if (total != lambda.size()) {
    throw std::invalid_argument("shape " + to_string(shape) + " does not have degree " +
                                std::to_string(lambda.size()));
  }
  std::vector<ShapeProduct> out;
  ShapeProduct current;
  std::function<void(std::size_t, int)> recurse = [&](std::size_t i, int xleft) {
    if (i == shape.size()) {
      if (xleft == 0) out.push_back(current);
      return;
    }
    for (int a = shape[i] - 1; a >= 1; --a) {
      if (a > xleft) continue;
      current.factors.emplace_back(a, shape[i] - a);
      recurse(i + 1, xleft - a);
      current.factors.pop_back();
    }
  };
  recurse(0, lambda.first);
  return out;
}

std::vector<ShapeProduct> candidate_products(const Partition2& lambda, int min_parts) {
  std::vector<ShapeProduct> out;
  for (const auto& shape : enumerate_shapes(lambda.size(), min_parts)) {
    auto b = shape_basis(shape, lambda);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

// ---- raising operator and highest weight vectors -------------------------------

NCPoly raise(const NCPoly& p) {
  std::vector<NCPoly::Term> terms;
  for (const auto& [w, c] : p.terms()) {
    auto letters = w.letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (letters[i] != kVarY) continue;
      letters[i] = kVarX;
      terms.emplace_back(Word(std::span<const int>(letters)), c);
      letters[i] = kVarY;
    }
  }
  return NCPoly::from_terms(std::move(terms));
}

NCPoly raise(const ShapeProduct& p) {
  NCPoly total;
  for (std::size_t i = 0; i < p.factors.size(); ++i) {
    NCPoly term(1);
    for (std::size_t j = 0; j < p.factors.size(); ++j)
      term = term * (i == j ? raise(cached_expansion(p.factors[j])) : cached_expansion(p.factors[j]));
    total += term;
  }
  return total;
}

ExactMatrix word_matrix(const std::vector<NCPoly>& polys) {
  std::vector<Word> words;
  for (const auto& p : polys)
    for (const auto& t : p.terms()) words.push_back(t.first);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::unordered_map<Word, std::size_t, WordHash> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], i);
  ExactMatrix m(words.size(), polys.size());
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (const auto& [w, c] : polys[j].terms()) m(index.at(w), j) = c;
  return m;
}

namespace {

/// Scales v to a primitive integer vector whose first nonzero entry is positive.
Vector primitive(Vector v) {
  const Integer den = common_denominator(v);
  Integer g = 0;
  for (auto& q : v) {
    q *= den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g == 0) return v;
  auto lead = std::find_if(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; });
  if (sgn(*lead) < 0) g = -g;
  for (auto& q : v) q /= g;
  return v;
}

}  // namespace

HwvSpace hwv_space(const Partition2& lambda, int min_parts) {
  if (min_parts < 1) throw std::invalid_argument("min_parts must be positive");
  if (lambda.size() < 2 * min_parts) {
    throw std::invalid_argument("degree " + std::to_string(lambda.size()) + " admits no product of " +
                                std::to_string(min_parts) + " commutators");
  }
  HwvSpace space;
  space.lambda = lambda;
  space.min_parts = min_parts;

  auto all = candidate_products(lambda, min_parts);
  std::vector<NCPoly> expanded;
  expanded.reserve(all.size());
  for (const auto& p : all) expanded.push_back(p.expand());

  // Keep a linearly independent spanning subset of the products.
  const ExactMatrix span = word_matrix(expanded);
  space.span_rank = certified_rank(span);
  std::vector<NCPoly> kept;
  if (space.span_rank.rank == all.size()) {
    space.products = std::move(all);
    kept = std::move(expanded);
  } else {
    for (std::size_t j : independent_columns(span)) {
      space.products.push_back(all[j]);
      kept.push_back(expanded[j]);
    }
  }

  std::vector<NCPoly> raised;
  raised.reserve(space.products.size());
  for (const auto& p : space.products) raised.push_back(raise(p));
  const ExactMatrix system = word_matrix(raised);
  space.raise_rank = certified_rank(system);

  const Nullspace ns = nullspace(system);
  if (ns.dimension() + space.raise_rank.rank != space.products.size()) {
    throw BackendDisagreement("nullspace dimension inconsistent with certified rank");
  }
  for (const auto& v : ns.basis) {
    Vector coords = primitive(v);
    NCPoly w;
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (sgn(coords[j]) != 0) w += coords[j] * kept[j];
    space.coordinates.push_back(std::move(coords));
    space.vectors.push_back(std::move(w));
  }
  return space;
}

std::string to_string(const std::vector<ShapeProduct>& products, const Vector& coordinates) {
  std::string s;
  for (std::size_t j = 0; j < products.size(); ++j) {
    const Rational& c = coordinates[j];
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    const Rational a = abs(c);
    if (a != 1) s += to_string(a) + "*";
    s += to_string(products[j]);
  }
  return s.empty() ? "0" : s;
}

bool verify_hwv(const NCPoly& w) {
  if (w.is_zero()) return false;
  if (w.max_variable() > 2 || !multidegree(w, 2)) {
    throw std::invalid_argument("verify_hwv needs a bihomogeneous polynomial in x, y");
  }
  const std::map<int, NCPoly> images{{kVarX, NCPoly::variable(kVarX)},
                                     {kVarY, NCPoly::variable(kVarY) + NCPoly::variable(kVarX)}};
  return substitute(w, images) == w;
}

int expected_hwv_count(const Partition2& lambda, int min_parts) {
  int count = 0;
  for (const auto& shape : enumerate_shapes(lambda.size(), min_parts))
    count += decompose_shape(shape).multiplicity(lambda);
  return count;
}

std::vector<Partition2> partitions_of(int degree, int min_second) {
  std::vector<Partition2> out;
  for (int b = degree / 2; b >= std::max(0, min_second); --b) out.emplace_back(degree - b, b);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace pimat
