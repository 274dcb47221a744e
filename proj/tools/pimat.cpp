// Command-line front end. Exit codes: 0 verdict produced (and matched, for
// presets), 1 mismatch, 2 usage error, 3 budget exceeded.

#include "pimat/glrep.hpp"
#include "pimat/parallel.hpp"
#include "pimat/report.hpp"
#include "pimat/search.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <functional>
#include <map>

namespace {

using namespace pimat;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct RunConfig {
  std::string format = "text";
  std::uint64_t seed = 1;
  int threads = 0;
  std::string backend = "both";

  int n = 4;
  std::string lambda;
  int min_parts = 0;
  std::vector<std::string> substitutions;
  std::vector<std::string> conditions;
  bool escalate = false;

  std::string lengths;
  std::string preset;
  int m = 0;
  int k = 0;
  std::string polynomial;
  std::string mode = "auto";
  std::size_t trials = 100;
};

bool json_mode(const RunConfig& c) { return c.format == "json"; }

void emit(const RunConfig& c, const Json& j, const std::string& text) {
  if (json_mode(c))
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

Substitution named_substitution(const std::string& name, int n) {
  const auto size = static_cast<std::size_t>(n);
  if (name == "cycle") {
    const auto ctx = diagonal_context(size);
    return {"u,cycle", generic_diagonal(size, ctx), cycle_matrix(size, ctx)};
  }
  if (name == "generic") {
    const auto ctx = generic_pair_context(size);
    return {"u,generic", generic_diagonal(size, ctx), generic_matrix(size, ctx)};
  }
  if (n != 4) throw std::invalid_argument("matrix '" + name + "' is only defined for n = 4");
  const auto ctx = needs_v13(name) ? v13_context() : diagonal_context(4);
  return {"u," + name, generic_diagonal(4, ctx), fixed_matrix(name, ctx)};
}

int cmd_decompose(const RunConfig& c) {
  const auto shape = parse_shape(c.lengths);
  const auto d = decompose_shape(shape);
  Json parts = Json::array();
  for (const auto& [lambda, mult] : d.parts())
    parts.push_back({{"lambda", {lambda.first, lambda.second}}, {"multiplicity", mult}});
  emit(c, {{"shape", shape}, {"decomposition", to_string(d)}, {"components", parts}, {"dimension", d.dimension()}},
       to_string(d) + "\n");
  return kOk;
}

int cmd_hwv(const RunConfig& c) {
  const auto space = hwv_space(parse_partition(c.lambda), c.min_parts > 0 ? c.min_parts : 4);
  emit(c, to_json(space), render_text(space));
  return kOk;
}

int cmd_search(const RunConfig& c) {
  HwvSearchConfig cfg;
  cfg.n = c.n;
  cfg.lambda = parse_partition(c.lambda);
  cfg.min_parts = c.min_parts;
  cfg.escalate = c.escalate;
  std::vector<std::string> subs = c.substitutions;
  if (subs.empty()) subs.push_back(c.n == 4 ? "v" : "cycle");
  for (const auto& s : subs) cfg.substitutions.push_back(named_substitution(s, c.n));
  std::vector<std::string> conds = c.conditions;
  if (conds.empty()) conds.push_back("z12");
  for (const auto& s : conds) cfg.conditions.push_back(parse_condition(s, cfg.substitutions.front().label));
  const auto rep = hwv_search(cfg);
  emit(c, to_json(rep), render_text(rep));
  return kOk;
}

struct Expectation {
  std::function<HwvSearchConfig()> preset;
  std::vector<std::size_t> trace;
};

bool check_run(const SearchReport& r, const Expectation& e, std::vector<std::string>& failures) {
  bool ok = true;
  if (r.free_trace() != e.trace) {
    failures.push_back("lambda " + to_string(r.lambda) + ": unexpected free-unknown trace");
    ok = false;
  }
  if (r.verdict.kind != VerdictKind::None) {
    failures.push_back("lambda " + to_string(r.lambda) + ": verdict " + to_string(r.verdict));
    ok = false;
  }
  return ok;
}

int cmd_reproduce(const RunConfig& c) {
  std::vector<std::string> failures;
  if (c.preset == "sweep") {
    const auto rep = degree_sweep();
    if (!rep.all_none || rep.runs.size() != 5) failures.push_back("sweep did not return NONE everywhere");
    Json j = to_json(rep);
    j["expected_matched"] = failures.empty();
    emit(c, j, render_text(rep) + (failures.empty() ? "matched\n" : "MISMATCH\n"));
    return failures.empty() ? kOk : kMismatch;
  }
  std::vector<Expectation> plan;
  if (c.preset == "degree10") {
    plan = {{preset_degree10, {7, 0}}};
  } else if (c.preset == "degree11") {
    plan = {{preset_degree11, {25, 10, 2, 0}}};
  } else if (c.preset == "degree12") {
    plan = {{preset_degree12_75, {60, 0}}, {preset_degree12_66_v2, {31, 0}}, {preset_degree12_66_v3, {31, 0}}};
  } else {
    throw std::invalid_argument("unknown preset '" + c.preset + "'");
  }
  Json runs = Json::array();
  std::string text;
  for (const auto& e : plan) {
    const auto rep = hwv_search(e.preset());
    check_run(rep, e, failures);
    runs.push_back(to_json(rep));
    text += render_text(rep) + "\n";
  }
  for (const auto& f : failures) text += "MISMATCH: " + f + "\n";
  if (failures.empty()) text += "matched\n";
  emit(c, {{"preset", c.preset}, {"runs", runs}, {"expected_matched", failures.empty()}, {"failures", failures}},
       text);
  return failures.empty() ? kOk : kMismatch;
}

int cmd_multilinear(const RunConfig& c) {
  const auto rep = multilinear_search(c.n, c.m);
  emit(c, to_json(rep), render_text(rep));
  return kOk;
}

VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.seed = c.seed;
  o.trials = c.trials;
  if (c.mode == "exhaustive")
    o.mode = VerifyOptions::Mode::Exhaustive;
  else if (c.mode == "random")
    o.mode = VerifyOptions::Mode::Random;
  return o;
}

int cmd_verify(const RunConfig& c) {
  const auto check = verify_central(c.n, parse_ncpoly(c.polynomial), verify_options(c));
  emit(c, to_json(check), render_text(check));
  return kOk;
}

int cmd_standard(const RunConfig& c) {
  const auto check = verify_central(c.n, standard_polynomial(c.k), verify_options(c));
  Json j = to_json(check);
  j["k"] = c.k;
  j["n"] = c.n;
  emit(c, j, "s" + std::to_string(c.k) + " on " + std::to_string(c.n) + "x" + std::to_string(c.n) + ": " +
                 render_text(check));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial identities and central polynomials of matrix algebras"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "Seed for random trials");
  app.add_option("--threads", c.threads, "Thread cap (overrides PIMAT_THREADS)")->check(CLI::PositiveNumber);
  app.add_option("--backend", c.backend, "Rank backend")->check(CLI::IsMember({"both", "fraction-free", "modular"}));

  auto* decompose = app.add_subcommand("decompose", "Decompose a product of commutators of given lengths");
  decompose->add_option("lengths", c.lengths, "Commutator lengths, e.g. 3,2")->required();

  auto* hwv = app.add_subcommand("hwv", "Highest weight vectors of a given weight");
  hwv->add_option("lambda", c.lambda, "Two-row partition, e.g. 5,5")->required();
  hwv->add_option("--min-parts", c.min_parts, "Least number of commutator factors")->default_val(4);

  auto* search = app.add_subcommand("search", "Candidate search with chosen substitutions");
  search->add_option("--n", c.n, "Matrix size")->default_val(4);
  search->add_option("--lambda", c.lambda, "Two-row partition")->required();
  search->add_option("--min-parts", c.min_parts, "Least number of commutator factors (default n)");
  search->add_option("--sub", c.substitutions, "Matrices paired with diag(u): v, v1, v2, v3, cycle, generic");
  search->add_option("--cond", c.conditions, "Conditions like z12, z13@u,v1, d12@u,v");
  search->add_flag("--escalate", c.escalate, "Escalate when the kernel stays nonzero");

  auto* reproduce = app.add_subcommand("reproduce", "Run a preset and compare with the expected constants");
  // prop4.x are accepted as alternative names of the degree presets.
  const std::map<std::string, std::string> aliases{
      {"prop4.2", "degree10"}, {"prop4.4", "degree11"}, {"prop4.6", "degree12"}};
  reproduce->add_option("preset", c.preset, "degree10, degree11, degree12 or sweep")
      ->required()
      ->transform(CLI::Transformer(aliases))
      ->check(CLI::IsMember({"degree10", "degree11", "degree12", "sweep"}));

  auto* multilinear = app.add_subcommand("multilinear", "Multilinear identities and central polynomials");
  multilinear->add_option("--n", c.n, "Matrix size")->required();
  multilinear->add_option("--m", c.m, "Degree")->required();

  auto* verify = app.add_subcommand("verify", "Classify one polynomial on n x n matrices");
  verify->add_option("--n", c.n, "Matrix size")->required();
  verify->add_option("polynomial", c.polynomial, "Polynomial, e.g. \"[y,x]^2\"")->required();
  verify->add_option("--mode", c.mode)->check(CLI::IsMember({"auto", "exhaustive", "random"}));
  verify->add_option("--trials", c.trials, "Random trials");

  auto* standard = app.add_subcommand("standard", "Check the standard polynomial s_k on n x n matrices");
  standard->add_option("--k", c.k, "Degree")->required();
  standard->add_option("--n", c.n, "Matrix size")->required();
  standard->add_option("--mode", c.mode)->check(CLI::IsMember({"auto", "exhaustive", "random"}));
  standard->add_option("--trials", c.trials, "Random trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (c.threads > 0) set_thread_cap(c.threads);
  if (c.backend == "fraction-free")
    set_default_rank_backend(RankBackend::FractionFree);
  else if (c.backend == "modular")
    set_default_rank_backend(RankBackend::Modular);

  try {
    if (*decompose) return cmd_decompose(c);
    if (*hwv) return cmd_hwv(c);
    if (*search) return cmd_search(c);
    if (*reproduce) return cmd_reproduce(c);
    if (*multilinear) return cmd_multilinear(c);
    if (*verify) return cmd_verify(c);
    if (*standard) return cmd_standard(c);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const BackendDisagreement& e) {
    std::cerr << "rank backends disagree: " << e.what() << "\n";
    return kMismatch;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
