#include "pimat/cpoly.hpp"

#include <algorithm>
#include <numeric>

namespace pimat {

std::shared_ptr<const VarContext> VarContext::make(std::vector<std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw std::invalid_argument("duplicate symbol " + names[i]);
  return std::shared_ptr<const VarContext>(new VarContext(std::move(names)));
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VarContext::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw std::out_of_range("symbol '" + std::string(name) + "' is not in the context");
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && *a == *b);
}

int CMonomial::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

bool GrlexDescending::operator()(const CMonomial& a, const CMonomial& b) const {
  const int da = a.total_degree();
  const int db = b.total_degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exponents.begin(), b.exponents.end(),
                                      a.exponents.begin(), a.exponents.end());
}

CPoly::CPoly(ContextPtr ctx, const Rational& constant) : ctx_(std::move(ctx)) {
  if (!ctx_) throw std::invalid_argument("CPoly constant needs a context");
  if (sgn(constant) != 0) terms_.emplace(CMonomial{std::vector<std::uint8_t>(ctx_->size(), 0)}, constant);
}

CPoly CPoly::variable(const ContextPtr& ctx, std::string_view name) {
  return variable(ctx, ctx->require(name));
}

CPoly CPoly::variable(const ContextPtr& ctx, std::size_t index) {
  if (index >= ctx->size()) throw std::out_of_range("symbol index out of range");
  CMonomial m{std::vector<std::uint8_t>(ctx->size(), 0)};
  m.exponents[index] = 1;
  return monomial(ctx, std::move(m), 1);
}

CPoly CPoly::monomial(const ContextPtr& ctx, CMonomial m, const Rational& c) {
  if (m.exponents.size() != ctx->size()) throw ContextMismatch("monomial length does not match context");
  CPoly p(ctx);
  if (sgn(c) != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

std::optional<Rational> CPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0) return terms_.begin()->second;
  return std::nullopt;
}

int CPoly::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.total_degree();
}

void CPoly::adopt(const ContextPtr& other) {
  if (!other) return;
  if (!ctx_) {
    ctx_ = other;
  } else if (!same_context(ctx_, other)) {
    throw ContextMismatch("polynomials from different variable contexts");
  }
}

CPoly& CPoly::operator+=(const CPoly& rhs) {
  adopt(rhs.ctx_);
  for (const auto& [m, c] : rhs.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

CPoly& CPoly::operator-=(const CPoly& rhs) {
  adopt(rhs.ctx_);
  for (const auto& [m, c] : rhs.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

CPoly& CPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

void CPoly::add_product(const CPoly& a, const CPoly& b) {
  adopt(a.ctx_);
  adopt(b.ctx_);
  if (a.is_zero() || b.is_zero()) return;
  CMonomial m;
  Rational c;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      m.exponents.resize(ma.exponents.size());
      for (std::size_t i = 0; i < m.exponents.size(); ++i)
        m.exponents[i] = static_cast<std::uint8_t>(ma.exponents[i] + mb.exponents[i]);
      c = ca * cb;
      auto [it, inserted] = terms_.try_emplace(m, c);
      if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
      }
    }
  }
}

CPoly operator-(const CPoly& a) {
  CPoly r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CPoly operator*(const CPoly& a, const CPoly& b) {
  CPoly r;
  r.add_product(a, b);
  return r;
}

bool operator==(const CPoly& a, const CPoly& b) {
  if (a.ctx_ && b.ctx_ && !same_context(a.ctx_, b.ctx_)) return false;
  return a.terms_ == b.terms_;
}

std::vector<std::pair<CMonomial, Rational>> coefficients(const CPoly& p) {
  return {p.terms().begin(), p.terms().end()};
}

CPoly from_coefficients(const ContextPtr& ctx,
                        const std::vector<std::pair<CMonomial, Rational>>& terms) {
  CPoly p(ctx);
  for (const auto& [m, c] : terms) p += CPoly::monomial(ctx, m, c);
  return p;
}

std::string to_string(const CMonomial& m, const VarContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ctx.names()[i];
    if (m.exponents[i] > 1) s += "^" + std::to_string(m.exponents[i]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const CPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    const Rational a = abs(c);
    const std::string mono = to_string(m, *p.context());
    if (mono == "1") {
      s += to_string(a);
    } else {
      if (a != 1) s += to_string(a) + "*";
      s += mono;
    }
  }
  return s;
}

}  // namespace pimat
