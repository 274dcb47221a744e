#pragma once

// Free associative algebra K<x_1,...,x_d> over the rationals.

#include "pimat/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pimat {

inline constexpr int kMaxVariables = 9;
inline constexpr std::size_t kMaxWordLength = 32;

/// Monomial of the free algebra: a sequence of variable indices in 1..kMaxVariables.
///
/// Letters are packed four bits each, first letter most significant, so that
/// for equal lengths the integer order of the packed code is the lexicographic
/// order of the letter sequences.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const int> letters);
  Word(std::initializer_list<int> letters);

  static Word letter(int variable);

  std::size_t length() const { return len_; }
  bool empty() const { return len_ == 0; }
  int operator[](std::size_t i) const;
  std::vector<int> letters() const;
  int count(int variable) const;

  /// Concatenation; throws std::length_error past kMaxWordLength.
  Word operator*(const Word& rhs) const;

  /// Graded lexicographic: shorter words first, then letter by letter.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.len_ != b.len_) return a.len_ <=> b.len_;
    if (a.code_ == b.code_) return std::strong_ordering::equal;
    return a.code_ < b.code_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  friend bool operator==(const Word& a, const Word& b) = default;

  std::size_t hash() const;

 private:
  unsigned __int128 code_ = 0;
  std::uint8_t len_ = 0;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

/// Per-variable letter counts, index 0 is x_1.
using MultiDegree = std::vector<int>;

/// Element of the free algebra. Terms are kept sorted by Word with no zero
/// coefficients, so structural equality is polynomial equality.
class NCPoly {
 public:
  using Term = std::pair<Word, Rational>;

  NCPoly() = default;
  NCPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  NCPoly(int constant) : NCPoly(Rational(constant)) {}  // NOLINT

  static NCPoly variable(int index);
  static NCPoly monomial(const Word& w, const Rational& c = 1);
  /// Merges duplicate words and drops zeros.
  static NCPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const Word& w) const;

  /// Largest variable index occurring, 0 for constants.
  int max_variable() const;
  /// Largest word length, -1 for the zero polynomial.
  int degree() const;

  NCPoly& operator+=(const NCPoly& rhs);
  NCPoly& operator-=(const NCPoly& rhs);
  NCPoly& operator*=(const Rational& c);

  friend NCPoly operator+(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator-(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator-(const NCPoly& a);
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const Rational& c, const NCPoly& a);
  friend bool operator==(const NCPoly& a, const NCPoly& b) = default;

 private:
  std::vector<Term> terms_;
};

NCPoly power(const NCPoly& p, int exponent);

/// [a,b] = ab - ba.
NCPoly commutator(const NCPoly& a, const NCPoly& b);

/// Left-normed commutator [e_1,...,e_m] = [[e_1,...,e_{m-1}],e_m]; requires m >= 2.
NCPoly expand_commutator(std::span<const NCPoly> entries);
NCPoly expand_commutator(std::span<const int> variables);
NCPoly expand_commutator(std::initializer_list<int> variables);

/// Unital ring morphism x_i -> images[i]. Every variable occurring in p needs
/// an image; otherwise std::invalid_argument.
NCPoly substitute(const NCPoly& p, const std::map<int, NCPoly>& images);

/// s_k = sum over S_k of sign(sigma) x_sigma(1)...x_sigma(k).
NCPoly standard_polynomial(int k);

/// Common multidegree over `alphabet` variables, or nullopt when terms disagree.
/// The zero polynomial has no multidegree.
std::optional<MultiDegree> multidegree(const NCPoly& p, int alphabet);

NCPoly homogeneous_component(const NCPoly& p, const MultiDegree& degree);

/// Canonical text form. Uses x,y when only x_1,x_2 occur, else x1..x9.
std::string to_string(const NCPoly& p);
std::string to_string(const Word& w, bool indexed);

/// Parses the polynomial grammar: variables x, y or x1..x9, left-normed
/// commutators [a,b,...], juxtaposition or '*', '^k', rational coefficients,
/// '+'/'-' and parentheses. Throws ParseError.
NCPoly parse_ncpoly(std::string_view text);

}  // namespace pimat
