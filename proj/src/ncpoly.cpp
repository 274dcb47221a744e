#include "pimat/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace pimat {

namespace {

using Accumulator = std::unordered_map<Word, Rational, WordHash>;

void check_variable(int v) {
  if (v < 1 || v > kMaxVariables) {
    throw std::invalid_argument("variable index out of range: " + std::to_string(v));
  }
}

NCPoly from_accumulator(Accumulator&& acc) {
  std::vector<NCPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (sgn(c) != 0) terms.emplace_back(w, std::move(c));
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return NCPoly::from_terms(std::move(terms));
}

}  // namespace

// ---- Word -------------------------------------------------------------------

Word::Word(std::span<const int> letters) {
  if (letters.size() > kMaxWordLength) throw std::length_error("word too long");
  for (int v : letters) {
    check_variable(v);
    code_ = (code_ << 4) | static_cast<unsigned>(v);
  }
  len_ = static_cast<std::uint8_t>(letters.size());
}

Word::Word(std::initializer_list<int> letters)
    : Word(std::span<const int>(letters.begin(), letters.size())) {}

Word Word::letter(int variable) {
  const int l[1] = {variable};
  return Word(std::span<const int>(l, 1));
}

int Word::operator[](std::size_t i) const {
  const unsigned shift = 4 * static_cast<unsigned>(len_ - 1 - i);
  return static_cast<int>((code_ >> shift) & 0xF);
}

std::vector<int> Word::letters() const {
  std::vector<int> out(len_);
  for (std::size_t i = 0; i < len_; ++i) out[i] = (*this)[i];
  return out;
}

int Word::count(int variable) const {
  int n = 0;
  for (std::size_t i = 0; i < len_; ++i) n += (*this)[i] == variable;
  return n;
}

Word Word::operator*(const Word& rhs) const {
  if (len_ + rhs.len_ > kMaxWordLength) throw std::length_error("word too long");
  if (len_ == 0) return rhs;
  Word w;
  w.len_ = static_cast<std::uint8_t>(len_ + rhs.len_);
  w.code_ = rhs.len_ == 0 ? code_ : ((code_ << (4 * rhs.len_)) | rhs.code_);
  return w;
}

std::size_t Word::hash() const {
  const auto lo = static_cast<std::uint64_t>(code_);
  const auto hi = static_cast<std::uint64_t>(code_ >> 64);
  std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL;
  h ^= (hi + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
  h ^= len_ * 0xC2B2AE3D27D4EB4FULL;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

// ---- NCPoly -----------------------------------------------------------------

NCPoly::NCPoly(const Rational& constant) {
  if (sgn(constant) != 0) terms_.emplace_back(Word{}, constant);
}

NCPoly NCPoly::variable(int index) { return monomial(Word::letter(index)); }

NCPoly NCPoly::monomial(const Word& w, const Rational& c) {
  NCPoly p;
  if (sgn(c) != 0) p.terms_.emplace_back(w, c);
  return p;
}

NCPoly NCPoly::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.first < b.first; });
  NCPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    t.second.canonicalize();
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (sgn(p.terms_.back().second) == 0) p.terms_.pop_back();
    } else if (sgn(t.second) != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rational NCPoly::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const Word& key) { return t.first < key; });
  if (it != terms_.end() && it->first == w) return it->second;
  return 0;
}

int NCPoly::max_variable() const {
  int m = 0;
  for (const auto& [w, c] : terms_)
    for (std::size_t i = 0; i < w.length(); ++i) m = std::max(m, w[i]);
  return m;
}

int NCPoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.length());
}

NCPoly& NCPoly::operator+=(const NCPoly& rhs) { return *this = *this + rhs; }
NCPoly& NCPoly::operator-=(const NCPoly& rhs) { return *this = *this - rhs; }

NCPoly& NCPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

NCPoly operator+(const NCPoly& a, const NCPoly& b) {
  NCPoly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == a.terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      Rational c = i->second + j->second;
      if (sgn(c) != 0) r.terms_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

NCPoly operator-(const NCPoly& a) {
  NCPoly r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

NCPoly operator-(const NCPoly& a, const NCPoly& b) { return a + (-b); }

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Accumulator acc;
  acc.reserve(a.size() * b.size());
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) acc[wa * wb] += ca * cb;
  return from_accumulator(std::move(acc));
}

NCPoly operator*(const Rational& c, const NCPoly& a) {
  NCPoly r = a;
  r *= c;
  return r;
}

NCPoly power(const NCPoly& p, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  NCPoly r(1);
  for (int i = 0; i < exponent; ++i) r = r * p;
  return r;
}

NCPoly commutator(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

NCPoly expand_commutator(std::span<const NCPoly> entries) {
  if (entries.size() < 2) throw std::invalid_argument("commutator needs at least two entries");
  NCPoly acc = entries[0];
  for (std::size_t i = 1; i < entries.size(); ++i) acc = commutator(acc, entries[i]);
  return acc;
}

NCPoly expand_commutator(std::span<const int> variables) {
  std::vector<NCPoly> entries;
  entries.reserve(variables.size());
  for (int v : variables) entries.push_back(NCPoly::variable(v));
  return expand_commutator(std::span<const NCPoly>(entries));
}

NCPoly expand_commutator(std::initializer_list<int> variables) {
  return expand_commutator(std::span<const int>(variables.begin(), variables.size()));
}

NCPoly substitute(const NCPoly& p, const std::map<int, NCPoly>& images) {
  std::vector<const NCPoly*> image(kMaxVariables + 1, nullptr);
  for (const auto& [v, q] : images) {
    check_variable(v);
    image[v] = &q;
  }
  for (const auto& [w, c] : p.terms())
    for (std::size_t i = 0; i < w.length(); ++i)
      if (image[w[i]] == nullptr) {
        throw std::invalid_argument("no image for variable x" + std::to_string(w[i]));
      }

  // Terms are sorted, so consecutive words share prefixes; cache the expanded
  // image of the previous word's prefixes.
  Accumulator acc;
  std::vector<NCPoly> prefix(1, NCPoly(1));
  Word previous;
  for (const auto& [w, c] : p.terms()) {
    std::size_t common = 0;
    while (common < w.length() && common < previous.length() && w[common] == previous[common])
      ++common;
    prefix.resize(common + 1);
    for (std::size_t i = common; i < w.length(); ++i) prefix.push_back(prefix.back() * *image[w[i]]);
    for (const auto& [u, d] : prefix.back().terms()) acc[u] += c * d;
    previous = w;
  }
  return from_accumulator(std::move(acc));
}

NCPoly standard_polynomial(int k) {
  if (k < 1) throw std::invalid_argument("standard polynomial needs k >= 1");
  if (k > kMaxVariables) throw std::invalid_argument("standard polynomial limited to 9 variables");
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<NCPoly::Term> terms;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    terms.emplace_back(Word(std::span<const int>(perm)), inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return NCPoly::from_terms(std::move(terms));
}

std::optional<MultiDegree> multidegree(const NCPoly& p, int alphabet) {
  if (p.is_zero()) return std::nullopt;
  std::optional<MultiDegree> result;
  for (const auto& [w, c] : p.terms()) {
    MultiDegree d(alphabet, 0);
    for (std::size_t i = 0; i < w.length(); ++i) {
      if (w[i] > alphabet) return std::nullopt;
      ++d[w[i] - 1];
    }
    if (!result) {
      result = std::move(d);
    } else if (*result != d) {
      return std::nullopt;
    }
  }
  return result;
}

NCPoly homogeneous_component(const NCPoly& p, const MultiDegree& degree) {
  std::vector<NCPoly::Term> keep;
  for (const auto& t : p.terms()) {
    bool match = true;
    std::size_t total = 0;
    for (std::size_t v = 0; v < degree.size() && match; ++v) {
      const int c = t.first.count(static_cast<int>(v) + 1);
      match = c == degree[v];
      total += static_cast<std::size_t>(c);
    }
    if (match && total == t.first.length()) keep.push_back(t);
  }
  return NCPoly::from_terms(std::move(keep));
}

// ---- printing ---------------------------------------------------------------

std::string to_string(const Word& w, bool indexed) {
  std::string s;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (indexed) {
      s += 'x';
      s += static_cast<char>('0' + w[i]);
    } else {
      s += w[i] == 1 ? 'x' : 'y';
    }
  }
  return s;
}

std::string to_string(const NCPoly& p) {
  if (p.is_zero()) return "0";
  const bool indexed = p.max_variable() > 2;
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    const Rational a = abs(c);
    if (w.empty()) {
      s += to_string(a);
    } else {
      if (a != 1) s += to_string(a) + "*";
      s += to_string(w, indexed);
    }
  }
  return s;
}

// ---- parsing ----------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NCPoly parse() {
    NCPoly p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) +
                     "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NCPoly expression() {
    NCPoly acc;
    bool negate = false;
    const char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    NCPoly t = term();
    acc = negate ? -t : t;
    while (true) {
      const char op = peek();
      if (op != '+' && op != '-') break;
      ++pos_;
      t = term();
      acc = op == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  static bool starts_factor(char c) {
    return c == 'x' || c == 'y' || c == '[' || c == '(' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  NCPoly term() {
    NCPoly acc = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  NCPoly factor() {
    NCPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      base = power(base, e);
    }
    return base;
  }

  NCPoly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NCPoly inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '[') {
      ++pos_;
      std::vector<NCPoly> entries;
      entries.push_back(expression());
      while (peek() == ',') {
        ++pos_;
        entries.push_back(expression());
      }
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      if (entries.size() < 2) fail("commutator needs at least two entries");
      return expand_commutator(std::span<const NCPoly>(entries));
    }
    if (c == 'x' || c == 'y') {
      ++pos_;
      if (c == 'x' && pos_ < text_.size() && text_[pos_] >= '1' && text_[pos_] <= '9') {
        return NCPoly::variable(text_[pos_++] - '0');
      }
      return NCPoly::variable(c == 'x' ? 1 : 2);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected denominator");
      }
      try {
        return NCPoly(parse_rational(text_.substr(start, pos_ - start)));
      } catch (const ParseError&) {
        fail("invalid coefficient");
      }
    }
    fail("expected a factor");
  }
};

}  // namespace

NCPoly parse_ncpoly(std::string_view text) { return Parser(text).parse(); }

}  // namespace pimat
