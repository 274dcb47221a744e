#include "pimat/exactla.hpp"

#include "pimat/parallel.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <set>
#include <sstream>

namespace pimat {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, Vector(cols)) {}

ExactMatrix ExactMatrix::identity(std::size_t k) {
  ExactMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(std::size_t cols, std::vector<Vector> rows) {
  ExactMatrix m(cols);
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

void ExactMatrix::append_row(Vector row) {
  if (row.size() != cols_) {
    throw std::invalid_argument("row length " + std::to_string(row.size()) +
                                " does not match column count " + std::to_string(cols_));
  }
  rows_.push_back(std::move(row));
}

Vector ExactMatrix::multiply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vector out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(rows_[r][c]) != 0 && sgn(v[c]) != 0) out[r] += rows_[r][c] * v[c];
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = rows_[r][c];
  return t;
}

ExactMatrix stack(std::span<const ExactMatrix> blocks) {
  if (blocks.empty()) return ExactMatrix();
  ExactMatrix out(blocks.front().cols());
  for (const auto& b : blocks) {
    if (b.cols() != out.cols()) throw std::invalid_argument("stack: column counts differ");
    for (const auto& r : b.row_data()) out.append_row(r);
  }
  return out;
}

// ---- fraction-free backend ----------------------------------------------------

namespace {

/// Integer rows with common denominators cleared; zero and repeated rows dropped.
std::vector<std::vector<Integer>> integer_rows(const ExactMatrix& m) {
  std::vector<std::vector<Integer>> out;
  std::set<std::vector<Integer>> seen;
  for (const auto& row : m.row_data()) {
    const Integer scale = common_denominator(row);
    std::vector<Integer> z(row.size());
    Integer content = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (sgn(row[c]) == 0) continue;
      z[c] = row[c].get_num() * (scale / row[c].get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[c].get_mpz_t());
    }
    if (content == 0) continue;
    // Normalise sign and content so proportional rows collapse.
    std::size_t lead = 0;
    while (z[lead] == 0) ++lead;
    if (z[lead] < 0) content = -content;
    for (auto& v : z) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
    if (seen.insert(z).second) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

std::size_t rank_fraction_free(const ExactMatrix& m) {
  auto a = integer_rows(m);
  const std::size_t rows = a.size();
  const std::size_t cols = m.cols();
  Integer previous = 1;
  std::size_t r = 0;
  Integer t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Integer& pivot = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer factor = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        t = pivot * a[i][j] - factor * a[r][j];
        if (!mpz_divisible_p(t.get_mpz_t(), previous.get_mpz_t())) {
          throw BackendDisagreement("Bareiss step produced an inexact division");
        }
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][c] = 0;
    }
    previous = pivot;
    ++r;
  }
  return r;
}

// ---- modular backend ----------------------------------------------------------

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(const Integer& z, u64 p) {
  // mpz_fdiv_ui takes an unsigned long, which is 64-bit on the supported targets.
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all 64-bit integers.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist((1ULL << 61) + 1, (1ULL << 62) - 1);
  while (true) {
    const u64 candidate = dist(rng) | 1ULL;
    if (is_prime_u64(candidate)) return candidate;
  }
}

std::optional<std::size_t> rank_modular(const ExactMatrix& m, std::uint64_t prime) {
  const std::size_t cols = m.cols();
  std::vector<std::vector<u64>> a;
  a.reserve(m.rows());
  for (const auto& row : m.row_data()) {
    std::vector<u64> r(cols, 0);
    bool nonzero = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(row[c]) == 0) continue;
      const u64 den = reduce(row[c].get_den(), prime);
      if (den == 0) return std::nullopt;
      r[c] = mulmod(reduce(row[c].get_num(), prime), invmod(den, prime), prime);
      nonzero |= r[c] != 0;
    }
    if (nonzero) a.push_back(std::move(r));
  }
  const std::size_t rows = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const u64 inv = invmod(a[r][c], prime);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, prime);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const u64 f = a[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const u64 sub = mulmod(f, a[r][j], prime);
        a[i][j] = a[i][j] >= sub ? a[i][j] - sub : a[i][j] + prime - sub;
      }
    }
    ++r;
  }
  return r;
}

namespace {
std::atomic<RankBackend> g_backend{RankBackend::Both};
}  // namespace

void set_default_rank_backend(RankBackend b) { g_backend = b; }
RankBackend default_rank_backend() { return g_backend; }

RankCertificate certified_rank(const ExactMatrix& m, const RankOptions& options) {
  RankCertificate cert;
  cert.backend = options.backend.value_or(default_rank_backend());
  std::mt19937_64 rng(options.seed ^ (m.rows() * 0x9E3779B97F4A7C15ULL) ^ m.cols());

  if (cert.backend == RankBackend::FractionFree) {
    cert.rank = cert.fraction_free = rank_fraction_free(m);
    return cert;
  }
  if (cert.backend == RankBackend::Modular) {
    // Modular ranks never overshoot; the largest one seen is kept.
    for (int i = 0; i < options.primes + options.max_extra_primes; ++i) {
      const u64 p = random_prime(rng);
      if (const auto r = rank_modular(m, p)) {
        cert.modular.push_back({p, *r});
        cert.rank = std::max(cert.rank, *r);
      }
      if (static_cast<int>(cert.modular.size()) >= options.primes) break;
    }
    return cert;
  }

  // The two backends are independent; run them side by side when allowed.
  std::vector<u64> primes;
  for (int i = 0; i < options.primes; ++i) primes.push_back(random_prime(rng));
  std::vector<std::optional<std::size_t>> mod_ranks(primes.size());
  parallel_for(primes.size() + 1, [&](std::size_t i) {
    if (i == 0) {
      cert.fraction_free = rank_fraction_free(m);
    } else {
      mod_ranks[i - 1] = rank_modular(m, primes[i - 1]);
    }
  });

  int confirmations = 0;
  auto record = [&](u64 prime, std::optional<std::size_t> r) {
    if (!r) return;
    cert.modular.push_back({prime, *r});
    if (*r > cert.fraction_free) {
      throw BackendDisagreement("modular rank " + std::to_string(*r) + " exceeds fraction-free rank " +
                                std::to_string(cert.fraction_free));
    }
    if (*r == cert.fraction_free) ++confirmations;
  };
  for (std::size_t i = 0; i < primes.size(); ++i) record(primes[i], mod_ranks[i]);
  for (int extra = 0; confirmations < options.primes && extra < options.max_extra_primes; ++extra) {
    const u64 p = random_prime(rng);
    record(p, rank_modular(m, p));
  }
  if (confirmations < options.primes) {
    throw BackendDisagreement("fraction-free rank " + std::to_string(cert.fraction_free) +
                              " not confirmed by modular elimination");
  }
  cert.rank = cert.fraction_free;
  return cert;
}

// ---- reduced echelon form -----------------------------------------------------

bool RowEchelon::add_row(std::span<const Rational> row) {
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  if (full()) return false;
  Vector v(row.begin(), row.end());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const std::size_t c = pivots_[k];
    if (sgn(v[c]) == 0) continue;
    const Rational f = v[c];
    const Vector& p = rows_[k];
    for (std::size_t j = c; j < cols_; ++j)
      if (sgn(p[j]) != 0) v[j] -= f * p[j];
  }
  std::size_t lead = 0;
  while (lead < cols_ && sgn(v[lead]) == 0) ++lead;
  if (lead == cols_) return false;
  const Rational inv = 1 / v[lead];
  for (std::size_t j = lead; j < cols_; ++j)
    if (sgn(v[j]) != 0) v[j] *= inv;
  for (auto& r : rows_) {
    if (sgn(r[lead]) == 0) continue;
    const Rational f = r[lead];
    for (std::size_t j = lead; j < cols_; ++j)
      if (sgn(v[j]) != 0) r[j] -= f * v[j];
  }
  // Keep rows ordered by pivot column.
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin());
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
  return true;
}

ExactMatrix RowEchelon::matrix() const { return ExactMatrix::from_rows(cols_, rows_); }

Rref reduced_row_echelon(const ExactMatrix& m) {
  RowEchelon e(m.cols());
  for (const auto& row : m.row_data()) {
    e.add_row(row);
    if (e.full()) break;
  }
  return {e.matrix(), e.pivots()};
}

Nullspace nullspace(const ExactMatrix& m) {
  const Rref rref = reduced_row_echelon(m);
  Nullspace ns;
  ns.cols = m.cols();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rref.pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < rref.pivots.size(); ++k) v[rref.pivots[k]] = -rref.reduced(k, free);
    ns.basis.push_back(std::move(v));
  }
  return ns;
}

std::vector<std::size_t> independent_columns(const ExactMatrix& m) {
  return reduced_row_echelon(m).pivots;
}

std::string dump(const ExactMatrix& m) {
  std::ostringstream os;
  for (const auto& row : m.row_data()) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c].get_str();
    os << '\n';
  }
  return os.str();
}

ExactMatrix parse_dump(const std::string& text, std::size_t cols) {
  ExactMatrix m(cols);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string f;
    Vector row;
    while (fields >> f) row.push_back(parse_rational(f));
    if (row.empty()) continue;
    m.append_row(std::move(row));
  }
  return m;
}

}  // namespace pimat
