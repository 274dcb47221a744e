// One line per acceptance criterion. Exit status is nonzero when any line is FAIL.

#include "pimat/glrep.hpp"
#include "pimat/mateval.hpp"
#include "pimat/search.hpp"

#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace pimat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      out_.detail += (out_.detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { notes_ += (notes_.empty() ? "" : "; ") + what; }
  Outcome result() const {
    Outcome o = out_;
    if (o.pass) o.detail = notes_;
    return o;
  }

 private:
  Outcome out_;
  std::string notes_;
};

/// Every rank certificate gathered in criteria 2 to 8, for criterion 9.
std::vector<std::pair<std::string, RankCertificate>> g_certificates;

void keep(const std::string& where, const RankCertificate& c) { g_certificates.emplace_back(where, c); }

std::string trace_text(const std::vector<std::size_t>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "->" : "") + std::to_string(t[i]);
  return s;
}

Outcome criterion_1() {
  Checker c;
  const std::vector<std::pair<std::string, std::string>> table = {
      {"4,2,2,2", "W(6,4)"},
      {"3,3,2,2", "W(6,4) ⊕ W(5,5)"},
      {"2,2,2,2,2", "W(5,5)"},
      {"5,2,2,2", "W(7,4)"},
      {"4,3,2,2", "W(7,4) ⊕ W(6,5)"},
      {"3,3,3,2", "W(7,4) ⊕ 2W(6,5)"},
      {"3,2,2,2,2", "W(6,5)"},
      {"6,2,2,2", "W(8,4)"},
      {"5,3,2,2", "W(8,4) ⊕ W(7,5)"},
      {"4,4,2,2", "W(8,4) ⊕ W(7,5) ⊕ W(6,6)"},
      {"4,3,3,2", "W(8,4) ⊕ 2W(7,5) ⊕ W(6,6)"},
      {"3,3,3,3", "W(8,4) ⊕ 3W(7,5) ⊕ 2W(6,6)"},
      {"4,2,2,2,2", "W(7,5)"},
      {"3,3,2,2,2", "W(7,5) ⊕ W(6,6)"},
      {"2,2,2,2,2,2", "W(6,6)"},
  };
  for (const auto& [shape, text] : table) {
    const std::string got = to_string(decompose_shape(parse_shape(shape)));
    c.expect(got == text, shape + " gave " + got);
  }
  c.note(std::to_string(table.size()) + " tables");
  return c.result();
}

Outcome criterion_2() {
  Checker c;
  const std::vector<std::pair<Partition2, std::size_t>> expected = {{{5, 5}, 7}, {{6, 5}, 25}, {{7, 5}, 60}, {{6, 6}, 31}};
  std::string counts;
  for (const auto& [lambda, count] : expected) {
    const HwvSpace s = hwv_space(lambda, 4);
    keep("hwv " + to_string(lambda) + " span", s.span_rank);
    keep("hwv " + to_string(lambda) + " raise", s.raise_rank);
    c.expect(s.dimension() == count, to_string(lambda) + " gave " + std::to_string(s.dimension()));
    counts += (counts.empty() ? "" : ", ") + std::to_string(s.dimension());
  }
  c.note("counts " + counts);
  return c.result();
}

void keep_stages(const SearchReport& r) {
  for (const auto& s : r.stages) keep(to_string(r.lambda) + " " + s.condition, s.certificate);
}

Outcome criterion_3() {
  Checker c;
  const auto r = hwv_search(preset_degree10());
  keep_stages(r);
  c.expect(r.candidates == 7 && r.rank == 7, "rank " + std::to_string(r.rank) + "/" + std::to_string(r.candidates));
  c.expect(r.verdict.kind == VerdictKind::None, "verdict " + to_string(r.verdict));
  c.note("rank 7/7, " + to_string(r.verdict));
  return c.result();
}

Outcome criterion_4() {
  Checker c;
  const auto r = hwv_search(preset_degree11());
  keep_stages(r);
  const std::vector<std::size_t> expected{25, 10, 2, 0};
  c.expect(r.free_trace() == expected, "free-unknown trace " + trace_text(r.free_trace()) + ", expected " + trace_text(expected));
  c.expect(r.verdict.kind == VerdictKind::None, "verdict " + to_string(r.verdict));
  c.note("trace " + trace_text(r.free_trace()) + ", " + to_string(r.verdict));
  return c.result();
}

Outcome criterion_5() {
  Checker c;
  const std::vector<std::pair<std::function<HwvSearchConfig()>, std::size_t>> runs = {
      {preset_degree12_75, 60}, {preset_degree12_66_v2, 31}, {preset_degree12_66_v3, 31}};
  for (const auto& [preset, count] : runs) {
    const auto cfg = preset();
    const auto r = hwv_search(cfg);
    keep_stages(r);
    const std::string name = to_string(r.lambda) + " with " + cfg.substitutions.front().label;
    c.expect(r.candidates == count, name + ": " + std::to_string(r.candidates) + " candidates");
    c.expect(r.verdict.kind == VerdictKind::None, name + ": " + to_string(r.verdict));
  }
  c.note("60, 31, 31 candidates, all NONE");
  return c.result();
}

Outcome criterion_6() {
  Checker c;
  const auto sweep = degree_sweep();
  for (const auto& r : sweep.runs) keep_stages(r);
  c.expect(sweep.runs.size() == 5, std::to_string(sweep.runs.size()) + " runs");
  c.expect(sweep.all_none, "not every run returned NONE");
  c.expect(sweep.conclusion ==
               "M_4 has no central polynomials and no polynomial identities in two variables of degree <= 12",
           "conclusion: " + sweep.conclusion);
  c.note(sweep.conclusion);
  return c.result();
}

Outcome criterion_7() {
  Checker c;
  const auto central = verify_central(2, parse_ncpoly("[y,x]^2"));
  c.expect(central.verdict == CentralVerdict::Central && central.certified, "[y,x]^2 on M_2: " + to_string(central.verdict));

  VerifyOptions exhaustive;
  exhaustive.mode = VerifyOptions::Mode::Exhaustive;
  const auto s4 = verify_central(2, standard_polynomial(4), exhaustive);
  c.expect(s4.verdict == CentralVerdict::Identity && s4.tuples == 256, "s4 on M_2");
  const auto s6 = verify_central(3, standard_polynomial(6), exhaustive);
  c.expect(s6.verdict == CentralVerdict::Identity && s6.tuples == 531441, "s6 on M_3");

  VerifyOptions random;
  random.mode = VerifyOptions::Mode::Random;
  random.trials = 1000;
  const auto s8 = verify_central(4, standard_polynomial(8), random);
  c.expect(s8.verdict == CentralVerdict::Identity && s8.trials >= 1000, "s8 on M_4");
  c.note("[y,x]^2 " + to_string(central.evidence) + ", s4 256 tuples, s6 531441 tuples, s8 " +
         std::to_string(s8.trials) + " random trials (not certified)");
  return c.result();
}

Outcome criterion_8() {
  Checker c;
  const auto r4 = multilinear_search(2, 4);
  const auto r2 = multilinear_search(2, 2);
  const auto r3 = multilinear_search(2, 3);
  for (const auto* r : {&r2, &r3, &r4}) {
    keep("multilinear identity m=" + std::to_string(r->m), r->rank_identity);
    keep("multilinear central m=" + std::to_string(r->m), r->rank_central);
  }
  c.expect(r4.d_c > r4.d_pi, "(2,4): d_C <= d_PI");
  auto span = r4.identity_basis;
  span.insert(span.end(), r4.central_basis.begin(), r4.central_basis.end());
  const NCPoly lin = full_linearization(parse_ncpoly("[y,x]^2"));
  c.expect(in_span(span, lin) && !in_span(r4.identity_basis, lin), "linearized [y,x]^2 not central modulo identities");
  c.expect(r2.d_c == r2.d_pi, "(2,2): d_C - d_PI = " + std::to_string(r2.d_c - r2.d_pi));
  c.expect(r3.d_pi == 0, "(2,3): d_PI = " + std::to_string(r3.d_pi));
  c.note("(2,4) d_PI=" + std::to_string(r4.d_pi) + " d_C=" + std::to_string(r4.d_c) + "; (2,2) d_C-d_PI=" +
         std::to_string(r2.d_c - r2.d_pi) + "; (2,3) d_PI=" + std::to_string(r3.d_pi));
  return c.result();
}

Outcome criterion_9() {
  Checker c;
  for (const auto& [where, cert] : g_certificates) {
    std::size_t agreeing = 0;
    for (const auto& m : cert.modular) agreeing += m.rank == cert.fraction_free;
    c.expect(cert.rank == cert.fraction_free && agreeing >= 2, where);
  }
  // Independent reruns under each single backend.
  for (const auto backend : {RankBackend::FractionFree, RankBackend::Modular}) {
    set_default_rank_backend(backend);
    const auto a = hwv_search(preset_degree10());
    const auto b = hwv_search(preset_degree11());
    const auto m = multilinear_search(2, 4);
    set_default_rank_backend(RankBackend::Both);
    c.expect(a.free_trace() == std::vector<std::size_t>{7, 0}, "single-backend degree 10 trace");
    c.expect(b.free_trace() == hwv_search(preset_degree11()).free_trace(), "single-backend degree 11 trace");
    c.expect(m.rank_identity.rank == multilinear_search(2, 4).rank_identity.rank, "single-backend multilinear rank");
  }
  c.note(std::to_string(g_certificates.size()) + " certified ranks");
  return c.result();
}

Outcome criterion_10() {
  Checker c;
  std::size_t vectors = 0;
  for (const Partition2 l : {Partition2(5, 5), Partition2(6, 5), Partition2(7, 5), Partition2(6, 6)}) {
    for (const auto& v : hwv_space(l, 4).vectors) {
      c.expect(verify_hwv(v), "non-invariant vector in " + to_string(l));
      ++vectors;
    }
  }
  std::size_t shapes = 0;
  for (int total = 2; total <= 12; ++total)
    for (const auto& s : enumerate_shapes(total, 1)) {
      int dim = 1;
      for (int m : s) dim *= m - 1;
      c.expect(decompose_shape(s).dimension() == dim, "dimension of " + to_string(s));
      ++shapes;
    }

  std::mt19937_64 rng(10);
  std::size_t evaluations = 0, substitutions = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const NCPoly p = oracle::random_poly(rng, 2, 3, 4), q = oracle::random_poly(rng, 2, 3, 4);
    const std::vector<oracle::Mat> xs{oracle::random_matrix(rng, n, 3), oracle::random_matrix(rng, n, 3)};
    std::vector<NumMatrix<std::int64_t>> images;
    for (const auto& m : xs) {
      NumMatrix<std::int64_t> im(n);
      for (std::size_t i = 0; i < im.a.size(); ++i) im.a[i] = m.a[i].get_num().get_si();
      images.push_back(im);
    }
    // Evaluation morphism, checked against the term-by-term reference.
    const oracle::Mat ep = oracle::evaluate(p, xs, n), eq = oracle::evaluate(q, xs, n);
    c.expect(oracle::evaluate(p * q, xs, n) == ep * eq, "evaluation of a product");
    const NCPoly pq = p * q;
    if (!pq.is_zero()) {
      std::vector<Rational> cs;
      for (const auto& term : pq.terms()) cs.push_back(term.second);
      const Rational scale(common_denominator(cs));
      const auto fast = NumericEvaluator(pq).evaluate(images);
      const oracle::Mat expected = ep * eq;
      for (std::size_t i = 0; i < n * n; ++i) c.expect(Rational(fast.a[i]) == scale * expected.a[i], "numeric evaluator");
    }
    ++evaluations;

    // Substitution morphism.
    const std::map<int, NCPoly> sub{{1, oracle::random_poly(rng, 2, 2, 3)}, {2, oracle::random_poly(rng, 2, 2, 3)}};
    c.expect(substitute(p * q, sub) == substitute(p, sub) * substitute(q, sub), "substitution of a product");
    c.expect(substitute(p + q, sub) == substitute(p, sub) + substitute(q, sub), "substitution of a sum");
    ++substitutions;
  }
  c.note(std::to_string(vectors) + " vectors invariant, " + std::to_string(shapes) + " shapes, " +
         std::to_string(evaluations) + " evaluation and " + std::to_string(substitutions) + " substitution cases");
  return c.result();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "clebsch-gordan tables", 1, criterion_1},
      {2, "hwv dimensions 7/25/60/31", 30, criterion_2},
      {3, "degree 10: (u,v), z12", 60, criterion_3},
      {4, "degree 11: staged z12, z13', z14'", 300, criterion_4},
      {5, "degree 12: (7,5) and (6,6)", 600, criterion_5},
      {6, "aggregate sweep", 900, criterion_6},
      {7, "positive controls", 600, criterion_7},
      {8, "multilinear cross-check", 600, criterion_8},
      {9, "backend agreement", 600, criterion_9},
      {10, "property suites", 600, criterion_10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
    }
    failures += !o.pass;
    std::printf("criterion %2d %s  %-36s %7.2f s  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
