#include "pimat/search.hpp"

#include "pimat/parallel.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace pimat {

// ---- conditions and verdicts ----------------------------------------------------

EntryCondition EntryCondition::off_diagonal(std::string substitution, int r, int s) {
  if (r == s) throw std::invalid_argument("off-diagonal condition needs r != s");
  return {std::move(substitution), Kind::OffDiagonal, r, s};
}

EntryCondition EntryCondition::diagonal_equality(std::string substitution, int a, int b) {
  if (a == b) throw std::invalid_argument("diagonal equality needs two different entries");
  return {std::move(substitution), Kind::DiagonalEquality, a, b};
}

EntryCondition EntryCondition::entry_zero(std::string substitution, int r, int s) {
  return {std::move(substitution), Kind::EntryZero, r, s};
}

std::string to_string(const EntryCondition& c) {
  const std::string at = "(" + c.substitution + ")";
  switch (c.kind) {
    case EntryCondition::Kind::DiagonalEquality:
      return "z" + std::to_string(c.r) + std::to_string(c.r) + " - z" + std::to_string(c.s) +
             std::to_string(c.s) + at + " = 0";
    default:
      return "z" + std::to_string(c.r) + std::to_string(c.s) + at + " = 0";
  }
}

EntryCondition parse_condition(const std::string& text, const std::string& default_substitution) {
  std::string spec = text;
  std::string label = default_substitution;
  if (const auto at = text.find('@'); at != std::string::npos) {
    spec = text.substr(0, at);
    label = text.substr(at + 1);
  }
  if (spec.size() != 3 || (spec[0] != 'z' && spec[0] != 'd') || !std::isdigit(spec[1]) ||
      !std::isdigit(spec[2])) {
    throw ParseError("condition must look like z12, z13@label or d34@label: '" + text + "'");
  }
  const int a = spec[1] - '0';
  const int b = spec[2] - '0';
  try {
    return spec[0] == 'd' ? EntryCondition::diagonal_equality(label, a, b)
                          : EntryCondition::off_diagonal(label, a, b);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::None:
      return "NONE";
    case VerdictKind::Undecided:
      return "UNDECIDED(" + std::to_string(v.dimension) + ")";
    case VerdictKind::Identities:
      return "IDENTITIES(" + std::to_string(v.dimension) + ")";
    case VerdictKind::Central:
      return "CENTRAL(" + std::to_string(v.dimension) + ")";
  }
  return "?";
}

std::vector<std::size_t> SearchReport::free_trace() const {
  std::vector<std::size_t> trace{candidates};
  for (const auto& s : stages) trace.push_back(s.free_unknowns);
  return trace;
}

// ---- highest weight vector search ---------------------------------------------------

namespace {

class SystemBuilder {
 public:
  SystemBuilder(const HwvSpace& space, int n) : space_(space), n_(n), stack_(space.dimension()) {}

  void add_substitution(const Substitution& s) {
    if (static_cast<int>(s.x.size()) != n_ || static_cast<int>(s.y.size()) != n_) {
      throw std::invalid_argument("substitution '" + s.label + "' does not have size " + std::to_string(n_));
    }
    if (evaluators_.count(s.label)) throw std::invalid_argument("duplicate substitution label " + s.label);
    evaluators_.emplace(s.label, std::make_unique<ProductEvaluator>(s.x, s.y));
    labels_.push_back(s.label);
  }

  bool has(const std::string& label) const { return evaluators_.count(label) != 0; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Appends the rows of each condition and records one stage.
  void apply(const std::string& name, const std::vector<EntryCondition>& conditions,
             std::vector<Stage>& stages) {
    std::size_t added = 0;
    for (const auto& c : conditions) added += append_rows(c);
    Stage st;
    st.condition = name;
    st.rows_added = added;
    st.certificate = certified_rank(stack_);
    st.rank = st.certificate.rank;
    st.free_unknowns = stack_.cols() - st.rank;
    rank_ = st.rank;
    stages.push_back(std::move(st));
  }

  std::size_t rank() const { return rank_; }
  bool full() const { return rank_ == stack_.cols(); }
  const ExactMatrix& matrix() const { return stack_; }

 private:
  const std::vector<CPoly>& product_row(const std::string& label, std::size_t product, int r) {
    const auto key = std::make_tuple(label, product, r);
    auto it = rows_.find(key);
    if (it != rows_.end()) return it->second;
    auto& ev = *evaluators_.at(label);
    return rows_.emplace(key, ev.evaluate_row(space_.products[product], static_cast<std::size_t>(r - 1)))
        .first->second;
  }

  CPoly entry(const std::string& label, const Vector& coords, int r, int s) {
    CPoly value;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (sgn(coords[j]) == 0) continue;
      value += coords[j] * product_row(label, j, r)[static_cast<std::size_t>(s - 1)];
    }
    return value;
  }

  std::size_t append_rows(const EntryCondition& c) {
    if (!has(c.substitution)) throw std::invalid_argument("unknown substitution '" + c.substitution + "'");
    if (c.r < 1 || c.s < 1 || c.r > n_ || c.s > n_) throw std::invalid_argument("entry out of range");
    const std::size_t k = space_.dimension();
    std::vector<CPoly> values(k);
    for (std::size_t i = 0; i < k; ++i) {
      const Vector& h = space_.coordinates[i];
      if (c.kind == EntryCondition::Kind::DiagonalEquality) {
        values[i] = entry(c.substitution, h, c.r, c.r) - entry(c.substitution, h, c.s, c.s);
      } else {
        values[i] = entry(c.substitution, h, c.r, c.s);
      }
    }
    // One equation per monomial: the coefficient of that monomial in each column.
    std::map<CMonomial, Vector, GrlexDescending> equations;
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& [mono, coeff] : coefficients(values[i])) {
        auto [eq, inserted] = equations.try_emplace(mono, Vector(k));
        eq->second[i] = coeff;
      }
    for (auto& [mono, row] : equations) stack_.append_row(std::move(row));
    return equations.size();
  }

  const HwvSpace& space_;
  int n_;
  std::map<std::string, std::unique_ptr<ProductEvaluator>> evaluators_;
  std::vector<std::string> labels_;
  std::map<std::tuple<std::string, std::size_t, int>, std::vector<CPoly>> rows_;
  ExactMatrix stack_;
  std::size_t rank_ = 0;
};

std::vector<EntryCondition> all_entry_conditions(const std::string& label, int n) {
  std::vector<EntryCondition> out;
  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s)
      if (r != s) out.push_back(EntryCondition::off_diagonal(label, r, s));
  for (int a = 1; a < n; ++a) out.push_back(EntryCondition::diagonal_equality(label, a, a + 1));
  return out;
}

}  // namespace

SearchReport hwv_search(const HwvSearchConfig& config) {
  const int min_parts = config.min_parts > 0 ? config.min_parts : config.n;
  if (config.lambda.size() < 2 * config.n) {
    throw std::invalid_argument("degree " + std::to_string(config.lambda.size()) +
                                " is below 2n; no proper candidate of the required form exists");
  }
  return hwv_search(hwv_space(config.lambda, min_parts), config);
}

SearchReport hwv_search(const HwvSpace& space, const HwvSearchConfig& config) {
  if (config.n < 1) throw std::invalid_argument("matrix size must be positive");
  if (config.lambda.second < 1) throw std::invalid_argument("lambda_2 must be at least 1");
  if (config.lambda.size() < 2 * config.n) {
    throw std::invalid_argument("degree " + std::to_string(config.lambda.size()) +
                                " is below 2n; no proper candidate of the required form exists");
  }
  if (!(space.lambda == config.lambda)) throw std::invalid_argument("candidate space has a different lambda");

  SearchReport rep;
  rep.n = config.n;
  rep.lambda = config.lambda;
  rep.min_parts = space.min_parts;
  rep.candidates = space.dimension();

  if (rep.candidates == 0) {
    rep.verdict = {VerdictKind::None, 0};
    rep.notes.push_back("no candidates: the candidate space is zero");
    return rep;
  }

  SystemBuilder builder(space, config.n);
  for (const auto& s : config.substitutions) {
    builder.add_substitution(s);
    rep.substitutions.push_back(s.label);
  }
  for (const auto& c : config.conditions) {
    if (builder.full()) {
      rep.notes.push_back("skipped " + to_string(c) + ": system already has full rank");
      continue;
    }
    builder.apply(to_string(c), {c}, rep.stages);
  }

  if (!builder.full() && config.escalate) {
    rep.escalated = true;
    rep.notes.push_back("escalation order (more entries, fixed matrices, full generic y) is a design choice");
    // 1. every entry of the substitutions already in use
    std::vector<EntryCondition> more;
    for (const auto& label : builder.labels()) {
      auto all = all_entry_conditions(label, config.n);
      more.insert(more.end(), all.begin(), all.end());
    }
    builder.apply("escalation: all entries of the given substitutions", more, rep.stages);

    // 2. other fixed matrices paired with the diagonal generic matrix
    if (!builder.full()) {
      std::vector<Substitution> extra;
      if (config.n == 4) {
        const auto plain = diagonal_context(4);
        const auto with_v13 = v13_context();
        for (const std::string name : {"v", "v1", "v2", "v3"}) {
          const auto& ctx = needs_v13(name) ? with_v13 : plain;
          extra.push_back({"u," + name, generic_diagonal(4, ctx), fixed_matrix(name, ctx)});
        }
      } else {
        const auto ctx = diagonal_context(static_cast<std::size_t>(config.n));
        extra.push_back({"u,cycle", generic_diagonal(static_cast<std::size_t>(config.n), ctx),
                         cycle_matrix(static_cast<std::size_t>(config.n), ctx)});
      }
      std::vector<EntryCondition> conds;
      for (auto& s : extra) {
        if (builder.has(s.label)) continue;
        auto all = all_entry_conditions(s.label, config.n);
        conds.insert(conds.end(), all.begin(), all.end());
        rep.substitutions.push_back(s.label);
        builder.add_substitution(s);
      }
      if (!conds.empty()) builder.apply("escalation: fixed matrices", conds, rep.stages);
    }

    // 3. full generic y; the surviving space is exactly central + identities
    if (!builder.full()) {
      const auto n = static_cast<std::size_t>(config.n);
      const auto ctx = generic_pair_context(n);
      const std::string label = "u,generic";
      builder.add_substitution({label, generic_diagonal(n, ctx), generic_matrix(n, ctx)});
      rep.substitutions.push_back(label);
      builder.apply("escalation: full generic y", all_entry_conditions(label, config.n), rep.stages);
      if (!builder.full()) {
        // Identities additionally kill the (common) diagonal entry.
        ExactMatrix identity_system = builder.matrix();
        std::vector<Stage> scratch;
        SystemBuilder probe(space, config.n);
        probe.add_substitution({label, generic_diagonal(n, ctx), generic_matrix(n, ctx)});
        probe.apply("identity", {EntryCondition::entry_zero(label, 1, 1)}, scratch);
        const ExactMatrix blocks[] = {identity_system, probe.matrix()};
        const auto cert = certified_rank(stack(blocks));
        rep.identity_dimension = space.dimension() - cert.rank;
      }
    }
  }

  rep.rank = builder.rank();
  const Nullspace ns = nullspace(builder.matrix());
  if (ns.dimension() + rep.rank != rep.candidates) {
    throw BackendDisagreement("nullspace dimension inconsistent with certified rank");
  }
  for (const auto& v : ns.basis) {
    NCPoly w;
    Vector product_coords(space.products.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      w += v[i] * space.vectors[i];
      for (std::size_t j = 0; j < product_coords.size(); ++j)
        product_coords[j] += v[i] * space.coordinates[i][j];
    }
    rep.nullspace.push_back(v);
    rep.survivors.push_back(std::move(w));
    rep.survivor_text.push_back(to_string(space.products, product_coords));
  }

  const std::size_t kernel = ns.dimension();
  if (kernel == 0) {
    rep.verdict = {VerdictKind::None, 0};
  } else if (rep.identity_dimension) {
    const std::size_t d_pi = *rep.identity_dimension;
    rep.verdict = kernel > d_pi ? Verdict{VerdictKind::Central, kernel - d_pi}
                                : Verdict{VerdictKind::Identities, d_pi};
  } else {
    rep.verdict = {VerdictKind::Undecided, kernel};
  }
  return rep;
}

// ---- presets ---------------------------------------------------------------------------

namespace {

Substitution fixed_substitution(const std::string& name) {
  const auto ctx = needs_v13(name) ? v13_context() : diagonal_context(4);
  return {"u," + name, generic_diagonal(4, ctx), fixed_matrix(name, ctx)};
}

}  // namespace

HwvSearchConfig preset_degree10() {
  HwvSearchConfig c;
  c.n = 4;
  c.lambda = Partition2(5, 5);
  c.min_parts = 4;
  c.substitutions = {fixed_substitution("v")};
  c.conditions = {EntryCondition::off_diagonal("u,v", 1, 2)};
  return c;
}

HwvSearchConfig preset_degree11() {
  HwvSearchConfig c;
  c.n = 4;
  c.lambda = Partition2(6, 5);
  c.min_parts = 4;
  c.substitutions = {fixed_substitution("v"), fixed_substitution("v1")};
  c.conditions = {EntryCondition::off_diagonal("u,v", 1, 2), EntryCondition::off_diagonal("u,v1", 1, 3),
                  EntryCondition::off_diagonal("u,v1", 1, 4)};
  return c;
}

HwvSearchConfig preset_degree12_75() {
  HwvSearchConfig c;
  c.n = 4;
  c.lambda = Partition2(7, 5);
  c.min_parts = 4;
  c.substitutions = {fixed_substitution("v2")};
  c.conditions = {EntryCondition::off_diagonal("u,v2", 1, 2)};
  return c;
}

HwvSearchConfig preset_degree12_66_v2() {
  HwvSearchConfig c = preset_degree12_75();
  c.lambda = Partition2(6, 6);
  return c;
}

HwvSearchConfig preset_degree12_66_v3() {
  HwvSearchConfig c;
  c.n = 4;
  c.lambda = Partition2(6, 6);
  c.min_parts = 4;
  c.substitutions = {fixed_substitution("v3")};
  c.conditions = {EntryCondition::off_diagonal("u,v3", 1, 2)};
  return c;
}

HwvSearchConfig default_config(int n, const Partition2& lambda, int min_parts) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  HwvSearchConfig c;
  c.n = n;
  c.lambda = lambda;
  c.min_parts = min_parts;
  const auto size = static_cast<std::size_t>(n);
  const auto ctx = diagonal_context(size);
  c.substitutions = {{"u,cycle", generic_diagonal(size, ctx), cycle_matrix(size, ctx)}};
  if (n > 1) c.conditions = {EntryCondition::off_diagonal("u,cycle", 1, 2)};
  return c;
}

// ---- multilinear method ---------------------------------------------------------------

std::uint64_t multilinear_work(int n, int m) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 62;
  std::uint64_t w = 1;
  for (int i = 0; i < 2 * m; ++i) {
    w *= static_cast<std::uint64_t>(n) * 1;
    if (w > cap) return cap;
  }
  for (int i = 2; i <= m; ++i) {
    w *= static_cast<std::uint64_t>(i);
    if (w > cap) return cap;
  }
  return w;
}

namespace {

using SparseRow = std::vector<std::pair<std::uint32_t, int>>;

std::vector<BasisIndex> tuple_at(std::uint64_t index, int n, int m) {
  std::vector<BasisIndex> t(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    const auto cell = static_cast<int>(index % static_cast<std::uint64_t>(n * n));
    index /= static_cast<std::uint64_t>(n * n);
    t[static_cast<std::size_t>(i)] = {cell / n + 1, cell % n + 1};
  }
  return t;
}

SparseRow to_sparse(const std::map<std::size_t, int>& form) {
  SparseRow row;
  for (const auto& [k, v] : form)
    if (v != 0) row.emplace_back(static_cast<std::uint32_t>(k), v);
  return row;
}

ExactMatrix dense(const std::set<SparseRow>& rows, std::size_t cols) {
  ExactMatrix m(cols);
  for (const auto& r : rows) {
    Vector v(cols);
    for (const auto& [k, c] : r) v[k] = c;
    m.append_row(std::move(v));
  }
  return m;
}

NCPoly multilinear_poly(const MultilinearLayout& layout, const Vector& coeffs) {
  std::vector<NCPoly::Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) terms.emplace_back(Word(std::span<const int>(layout.words[i])), coeffs[i]);
  return NCPoly::from_terms(std::move(terms));
}

}  // namespace

MultilinearReport multilinear_search(int n, int m, const MultilinearBudget& budget) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (m < 1 || m > kMaxVariables) throw std::invalid_argument("multilinear degree must be in 1..9");
  const std::uint64_t work = multilinear_work(n, m);
  if (work > budget.max_work) {
    throw BudgetExceeded("multilinear search n=" + std::to_string(n) + " m=" + std::to_string(m) +
                         " needs work " + std::to_string(work) + " > budget " +
                         std::to_string(budget.max_work));
  }
  MultilinearReport rep;
  rep.n = n;
  rep.m = m;
  const MultilinearLayout layout = MultilinearLayout::all_permutations(m);
  rep.unknowns = layout.words.size();
  std::uint64_t tuples = 1;
  for (int i = 0; i < m; ++i) tuples *= static_cast<std::uint64_t>(n * n);
  rep.tuples = tuples;

  // Split by the first matrix unit; merge ordered sets so the result is
  // scheduling independent.
  const auto blocks = static_cast<std::size_t>(n * n);
  const std::uint64_t per_block = tuples / blocks;
  std::vector<std::set<SparseRow>> rows_a(blocks), rows_b(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    for (std::uint64_t t = b * per_block; t < (b + 1) * per_block; ++t) {
      const auto tuple = tuple_at(t, n, m);
      std::map<std::pair<int, int>, std::map<std::size_t, int>> forms;
      for_each_unit_chain(std::span<const BasisIndex>(tuple),
                          [&](int r, int s, std::size_t unknown) { forms[{r, s}][unknown] += 1; });
      for (const auto& [rs, form] : forms) {
        SparseRow row = to_sparse(form);
        if (row.empty()) continue;
        rows_a[b].insert(row);
        if (rs.first != rs.second) rows_b[b].insert(std::move(row));
      }
      for (int a = 1; a < n; ++a) {
        std::map<std::size_t, int> diff;
        if (auto it = forms.find({a, a}); it != forms.end())
          for (const auto& [k, v] : it->second) diff[k] += v;
        if (auto it = forms.find({a + 1, a + 1}); it != forms.end())
          for (const auto& [k, v] : it->second) diff[k] -= v;
        SparseRow row = to_sparse(diff);
        if (!row.empty()) rows_b[b].insert(std::move(row));
      }
    }
  });
  std::set<SparseRow> all_a, all_b;
  for (auto& s : rows_a) all_a.merge(s);
  for (auto& s : rows_b) all_b.merge(s);
  rep.rows_identity = all_a.size();
  rep.rows_central = all_b.size();

  const ExactMatrix system_a = dense(all_a, rep.unknowns);
  const ExactMatrix system_b = dense(all_b, rep.unknowns);
  rep.rank_identity = certified_rank(system_a);
  rep.rank_central = certified_rank(system_b);
  rep.d_pi = rep.unknowns - rep.rank_identity.rank;
  rep.d_c = rep.unknowns - rep.rank_central.rank;

  const Nullspace ns_a = nullspace(system_a);
  const Nullspace ns_b = nullspace(system_b);
  if (ns_a.dimension() != rep.d_pi || ns_b.dimension() != rep.d_c) {
    throw BackendDisagreement("multilinear nullspace dimension inconsistent with certified rank");
  }
  RowEchelon span(rep.unknowns);
  for (const auto& v : ns_a.basis) {
    span.add_row(v);
    rep.identity_basis.push_back(multilinear_poly(layout, v));
  }
  for (const auto& v : ns_b.basis)
    if (span.add_row(v)) rep.central_basis.push_back(multilinear_poly(layout, v));
  return rep;
}

bool in_span(const std::vector<NCPoly>& vectors, const NCPoly& p) {
  std::vector<NCPoly> all = vectors;
  const std::size_t base = vectors.empty() ? 0 : certified_rank(word_matrix(vectors)).rank;
  all.push_back(p);
  return certified_rank(word_matrix(all)).rank == base;
}

NCPoly full_linearization(const NCPoly& p) {
  const int d = p.max_variable();
  const auto deg = multidegree(p, std::max(d, 1));
  if (!deg) throw std::invalid_argument("full linearization needs a multihomogeneous polynomial");
  std::vector<int> offset(static_cast<std::size_t>(d) + 1, 0);
  int total = 0;
  for (int v = 1; v <= d; ++v) {
    offset[static_cast<std::size_t>(v)] = total;
    total += (*deg)[static_cast<std::size_t>(v - 1)];
  }
  if (total > kMaxVariables) throw std::invalid_argument("linearization needs more than 9 variables");

  std::vector<NCPoly::Term> terms;
  for (const auto& [w, c] : p.terms()) {
    const auto letters = w.letters();
    // One permutation per variable block, enumerated as an odometer.
    std::vector<std::vector<int>> perms(static_cast<std::size_t>(d) + 1);
    for (int v = 1; v <= d; ++v) {
      perms[static_cast<std::size_t>(v)].resize(static_cast<std::size_t>((*deg)[static_cast<std::size_t>(v - 1)]));
      std::iota(perms[static_cast<std::size_t>(v)].begin(), perms[static_cast<std::size_t>(v)].end(), 0);
    }
    while (true) {
      std::vector<int> seen(static_cast<std::size_t>(d) + 1, 0);
      std::vector<int> out;
      for (int l : letters) {
        const auto lv = static_cast<std::size_t>(l);
        out.push_back(offset[lv] + perms[lv][static_cast<std::size_t>(seen[lv]++)] + 1);
      }
      terms.emplace_back(Word(std::span<const int>(out)), c);
      int v = d;
      while (v >= 1 && !std::next_permutation(perms[static_cast<std::size_t>(v)].begin(),
                                              perms[static_cast<std::size_t>(v)].end()))
        --v;
      if (v < 1) break;
    }
  }
  return NCPoly::from_terms(std::move(terms));
}

// ---- verify_central ------------------------------------------------------------------

std::string to_string(CentralVerdict v) {
  switch (v) {
    case CentralVerdict::Central:
      return "CENTRAL";
    case CentralVerdict::Identity:
      return "IDENTITY";
    case CentralVerdict::Neither:
      return "NEITHER";
  }
  return "?";
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::Exhaustive:
      return "exhaustive";
    case Evidence::Symbolic:
      return "symbolic";
    case Evidence::RandomTrials:
      return "random-trials";
  }
  return "?";
}

namespace {

template <class T>
std::string matrix_text(const NumMatrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.n; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < m.n; ++c) os << (c ? " " : "") << m(r, c);
  }
  os << "]";
  return os.str();
}

bool is_multilinear(const NCPoly& p) {
  const int d = p.max_variable();
  const auto deg = multidegree(p, d);
  return deg && std::all_of(deg->begin(), deg->end(), [](int k) { return k == 1; });
}

/// Sound status of a set of evaluations: non-scalar beats everything.
struct Tally {
  bool non_scalar = false;
  bool nonzero = false;
  std::string witness;
};

}  // namespace

CentralCheck verify_central(int n, const NCPoly& c, const VerifyOptions& options) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  CentralCheck out;
  if (c.is_zero()) {
    out.verdict = CentralVerdict::Identity;
    out.evidence = Evidence::Symbolic;
    out.certified = true;
    return out;
  }
  const int d = std::max(1, c.max_variable());
  const auto size = static_cast<std::size_t>(n);
  Tally tally;

  // Exhaustive matrix-unit evaluation: a complete test for multilinear input.
  const bool multilinear = is_multilinear(c);
  std::uint64_t tuples = 1;
  for (int i = 0; i < 2 * d && tuples <= options.max_tuples; ++i) tuples *= size;
  const bool exhaustive_ok = multilinear && tuples <= options.max_tuples;
  if (options.mode == VerifyOptions::Mode::Exhaustive) {
    if (!multilinear) throw std::invalid_argument("exhaustive evaluation needs a multilinear polynomial");
    if (!exhaustive_ok) throw BudgetExceeded("exhaustive evaluation exceeds the tuple budget");
  }

  // Random integer trials. Each trial owns a generator seeded by (seed, index)
  // so the outcome does not depend on scheduling.
  if (options.mode != VerifyOptions::Mode::Exhaustive) {
    const NumericEvaluator evaluator(c);
    struct Outcome {
      int status = 0;  // 0 zero, 1 nonzero scalar, 2 not scalar
      std::string witness;
    };
    const std::size_t batch = static_cast<std::size_t>(std::max(1, thread_cap())) * 4;
    for (std::size_t start = 0; start < options.trials && !tally.non_scalar; start += batch) {
      const std::size_t count = std::min(batch, options.trials - start);
      std::vector<Outcome> outcomes(count);
      parallel_for(count, [&](std::size_t i) {
        const std::size_t t = start + i;
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<int> dist(-options.entry_bound, options.entry_bound);
        std::vector<NumMatrix<std::int64_t>> images;
        for (int v = 0; v < d; ++v) {
          NumMatrix<std::int64_t> m(size);
          for (auto& e : m.a) e = dist(rng);
          images.push_back(std::move(m));
        }
        const auto value = evaluator.evaluate(images);
        if (!value.is_scalar()) {
          std::string w = "trial " + std::to_string(t) + ":";
          for (int v = 0; v < d; ++v) w += " x" + std::to_string(v + 1) + "=" + matrix_text(images[static_cast<std::size_t>(v)]);
          outcomes[i] = {2, w + " value=" + matrix_text(value)};
        } else {
          outcomes[i].status = value.is_zero() ? 0 : 1;
        }
      });
      for (auto& o : outcomes) {
        ++out.trials;
        if (o.status == 2) {
          tally.non_scalar = true;
          tally.witness = std::move(o.witness);
          out.evidence = Evidence::RandomTrials;
          break;
        }
        tally.nonzero |= o.status == 1;
      }
    }
  }

  // Fixed pairs (diagonal generic x with the cycle / fixed matrices) for
  // two-variable input.
  if (!tally.non_scalar && d <= 2 && options.mode == VerifyOptions::Mode::Auto) {
    std::vector<Substitution> pairs;
    if (n == 4) {
      for (const std::string name : {"v", "v1"}) pairs.push_back(fixed_substitution(name));
    } else {
      const auto ctx = diagonal_context(size);
      pairs.push_back({"u,cycle", generic_diagonal(size, ctx), cycle_matrix(size, ctx)});
    }
    for (const auto& s : pairs) {
      const PolyMatrix value = eval_nc(c, {{1, s.x}, {2, s.y}});
      if (!value.is_scalar()) {
        tally.non_scalar = true;
        tally.witness = "(" + s.label + "): " + to_string(value);
        out.evidence = Evidence::Symbolic;
        break;
      }
      if (!value.is_zero()) tally.nonzero = true;
    }
  }

  if (tally.non_scalar) {
    out.verdict = CentralVerdict::Neither;
    out.certified = true;
    out.witness = tally.witness;
    return out;
  }
  if (options.mode == VerifyOptions::Mode::Random) {
    out.verdict = tally.nonzero ? CentralVerdict::Central : CentralVerdict::Identity;
    out.evidence = Evidence::RandomTrials;
    return out;
  }

  if (exhaustive_ok) {
    std::vector<Integer> coeffs(MultilinearLayout::all_permutations(d).words.size());
    for (const auto& [w, q] : c.terms()) {
      if (q.get_den() != 1) {
        // Clear denominators; scaling does not change zero/scalar.
        const std::vector<Rational> all = [&] {
          std::vector<Rational> v;
          for (const auto& t : c.terms()) v.push_back(t.second);
          return v;
        }();
        const Integer den = common_denominator(all);
        for (const auto& [w2, q2] : c.terms()) {
          const Rational scaled = q2 * den;
          coeffs[MultilinearLayout::rank_of(w2.letters())] = scaled.get_num();
        }
        break;
      }
      coeffs[MultilinearLayout::rank_of(w.letters())] = q.get_num();
    }
    bool nonzero = false;
    std::vector<BasisIndex> tuple(static_cast<std::size_t>(d));
    std::vector<int> cells(static_cast<std::size_t>(d), 0);
    const int units = n * n;
    std::uint64_t visited = 0;
    while (true) {
      for (std::size_t i = 0; i < cells.size(); ++i) tuple[i] = {cells[i] / n + 1, cells[i] % n + 1};
      const auto value = eval_multilinear_units(coeffs, size, tuple);
      ++visited;
      if (!value.is_scalar()) {
        out.verdict = CentralVerdict::Neither;
        out.evidence = Evidence::Exhaustive;
        out.certified = true;
        out.tuples = visited;
        std::string w = "units:";
        for (const auto& b : tuple) w += " E" + std::to_string(b.p) + std::to_string(b.q);
        out.witness = w + " value=" + matrix_text(value);
        return out;
      }
      nonzero |= !value.is_zero();
      int i = d - 1;
      while (i >= 0 && ++cells[static_cast<std::size_t>(i)] == units) cells[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
    out.tuples = visited;
    out.verdict = nonzero ? CentralVerdict::Central : CentralVerdict::Identity;
    out.evidence = Evidence::Exhaustive;
    out.certified = true;
    return out;
  }

  // Symbolic generic evaluation when it fits the budget.
  std::uint64_t work = c.size();
  for (int i = 1; i < c.degree() && work <= options.max_symbolic_work; ++i) work *= size;
  if (work <= options.max_symbolic_work && size * size * static_cast<std::size_t>(d) + size <= 64) {
    PolyMatrix value;
    if (d <= 2) {
      // A generic x may be taken diagonal.
      const auto ctx = generic_pair_context(size);
      MatrixImages images{{1, generic_diagonal(size, ctx)}};
      if (d == 2) images.emplace(2, generic_matrix(size, ctx));
      value = eval_nc(c, images);
    } else {
      std::vector<std::string> names;
      for (int v = 1; v <= d; ++v)
        for (std::size_t r = 1; r <= size; ++r)
          for (std::size_t col = 1; col <= size; ++col)
            names.push_back("g" + std::to_string(v) + "_" + std::to_string(r) + std::to_string(col));
      const auto ctx = VarContext::make(names);
      MatrixImages images;
      for (int v = 1; v <= d; ++v) {
        PolyMatrix g(size, ctx);
        for (std::size_t r = 0; r < size; ++r)
          for (std::size_t col = 0; col < size; ++col)
            g(r, col) = CPoly::variable(ctx, "g" + std::to_string(v) + "_" + std::to_string(r + 1) +
                                                 std::to_string(col + 1));
        images.emplace(v, std::move(g));
      }
      value = eval_nc(c, images);
    }
    out.evidence = Evidence::Symbolic;
    out.certified = true;
    if (!value.is_scalar()) {
      out.verdict = CentralVerdict::Neither;
      out.witness = "generic evaluation: " + to_string(value);
    } else {
      out.verdict = value.is_zero() ? CentralVerdict::Identity : CentralVerdict::Central;
    }
    return out;
  }

  out.verdict = tally.nonzero ? CentralVerdict::Central : CentralVerdict::Identity;
  out.evidence = Evidence::RandomTrials;
  out.certified = false;
  return out;
}

// ---- sweep ---------------------------------------------------------------------------

std::vector<Partition2> sweep_partitions(int degree) { return partitions_of(degree, 5); }

SweepReport degree_sweep() {
  SweepReport rep;
  rep.notes.push_back(
      "degrees <= 9: two-variable central polynomials of M_4 are ruled out by the divisibility bound "
      "on the associated commutative polynomial; two-variable identities of degree <= 10 by the classical "
      "minimal-degree results");
  rep.notes.push_back(
      "lambda_2 <= 4: central polynomials are ruled out by the same divisibility bound and identities "
      "need degree >= 14");
  rep.notes.push_back(
      "remaining weights (5,5), (6,5), (7,5), (6,6): candidates are highest weight vectors in products "
      "of >= 4 commutators");

  std::map<Partition2, std::vector<HwvSearchConfig>> plan;
  plan[Partition2(5, 5)] = {preset_degree10()};
  plan[Partition2(6, 5)] = {preset_degree11()};
  plan[Partition2(7, 5)] = {preset_degree12_75()};
  plan[Partition2(6, 6)] = {preset_degree12_66_v2(), preset_degree12_66_v3()};

  rep.all_none = true;
  for (int degree = 10; degree <= 12; ++degree) {
    for (const auto& lambda : sweep_partitions(degree)) {
      const HwvSpace space = hwv_space(lambda, 4);
      for (const auto& cfg : plan.at(lambda)) {
        rep.runs.push_back(hwv_search(space, cfg));
        rep.all_none &= rep.runs.back().verdict.kind == VerdictKind::None;
      }
    }
  }
  rep.conclusion = rep.all_none
                       ? "M_4 has no central polynomials and no polynomial identities in two variables "
                         "of degree <= 12"
                       : "sweep inconclusive: at least one run did not return NONE";
  return rep;
}

}  // namespace pimat
