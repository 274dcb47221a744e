#pragma once

// Sparse commutative polynomials over a declared variable context.

#include "pimat/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pimat {

/// Thrown when polynomials or matrices from different variable contexts meet.
class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list of commuting symbols (u1..u4, v13, ...). Contexts are compared
/// by their symbol lists.
class VarContext {
 public:
  static std::shared_ptr<const VarContext> make(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Like index_of but throws std::out_of_range.
  std::size_t require(std::string_view name) const;

  friend bool operator==(const VarContext& a, const VarContext& b) { return a.names_ == b.names_; }

 private:
  explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

bool same_context(const ContextPtr& a, const ContextPtr& b);

/// Exponent vector, one entry per context variable.
struct CMonomial {
  std::vector<std::uint8_t> exponents;

  int total_degree() const;
  friend bool operator==(const CMonomial&, const CMonomial&) = default;
};

/// Graded lexicographic order: higher total degree first, then larger
/// exponent of the earlier variable first.
struct GrlexDescending {
  bool operator()(const CMonomial& a, const CMonomial& b) const;
};

class CPoly {
 public:
  using TermMap = std::map<CMonomial, Rational, GrlexDescending>;

  /// The context-free zero; it adopts the context of whatever it is combined with.
  CPoly() = default;
  explicit CPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  CPoly(ContextPtr ctx, const Rational& constant);

  static CPoly variable(const ContextPtr& ctx, std::string_view name);
  static CPoly variable(const ContextPtr& ctx, std::size_t index);
  static CPoly monomial(const ContextPtr& ctx, CMonomial m, const Rational& c);

  const ContextPtr& context() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  /// Constant term when the polynomial is constant, otherwise nullopt.
  std::optional<Rational> constant_value() const;
  int total_degree() const;

  CPoly& operator+=(const CPoly& rhs);
  CPoly& operator-=(const CPoly& rhs);
  CPoly& operator*=(const Rational& c);
  /// this += a * b without materialising the product.
  void add_product(const CPoly& a, const CPoly& b);

  friend CPoly operator+(CPoly a, const CPoly& b) { return a += b; }
  friend CPoly operator-(CPoly a, const CPoly& b) { return a -= b; }
  friend CPoly operator-(const CPoly& a);
  friend CPoly operator*(const CPoly& a, const CPoly& b);
  friend CPoly operator*(const Rational& c, CPoly a) { return a *= c; }
  friend bool operator==(const CPoly& a, const CPoly& b);

 private:
  void adopt(const ContextPtr& other);

  ContextPtr ctx_;
  TermMap terms_;
};

/// All nonzero terms in canonical (graded lexicographic, descending) order.
std::vector<std::pair<CMonomial, Rational>> coefficients(const CPoly& p);

/// Rebuilds a polynomial from coefficients(); inverse of the above.
CPoly from_coefficients(const ContextPtr& ctx,
                        const std::vector<std::pair<CMonomial, Rational>>& terms);

std::string to_string(const CMonomial& m, const VarContext& ctx);
std::string to_string(const CPoly& p);

}  // namespace pimat
