#pragma once

// Decision procedures for polynomial identities and central polynomials of
// n x n matrices: the highest-weight-vector search and the multilinear method.

#include "pimat/exactla.hpp"
#include "pimat/glrep.hpp"
#include "pimat/mateval.hpp"
#include "pimat/ncpoly.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pimat {

/// A named pair of images for (x, y).
struct Substitution {
  std::string label;
  PolyMatrix x;
  PolyMatrix y;
};

/// A linear condition on one evaluation. Entries are 1-based.
struct EntryCondition {
  enum class Kind {
    OffDiagonal,       // z_rs = 0 with r != s
    DiagonalEquality,  // z_rr - z_ss = 0
    EntryZero,         // z_rs = 0, any entry (identity systems)
  };

  std::string substitution;
  Kind kind = Kind::OffDiagonal;
  int r = 1;
  int s = 2;

  static EntryCondition off_diagonal(std::string substitution, int r, int s);
  static EntryCondition diagonal_equality(std::string substitution, int a, int b);
  static EntryCondition entry_zero(std::string substitution, int r, int s);
};

/// "z12(u,v) = 0", "z33 - z44(u,v2) = 0".
std::string to_string(const EntryCondition& c);

/// Parses "z12", "z12@label", "d34@label" (diagonal equality).
EntryCondition parse_condition(const std::string& text, const std::string& default_substitution);

enum class VerdictKind { None, Undecided, Identities, Central };

struct Verdict {
  VerdictKind kind = VerdictKind::Undecided;
  std::size_t dimension = 0;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// "NONE", "UNDECIDED(2)", "IDENTITIES(1)", "CENTRAL(1)".
std::string to_string(const Verdict& v);

struct Stage {
  std::string condition;
  std::size_t rows_added = 0;
  std::size_t rank = 0;
  std::size_t free_unknowns = 0;
  RankCertificate certificate;
};

struct SearchReport {
  int n = 0;
  Partition2 lambda;
  int min_parts = 0;
  std::size_t candidates = 0;
  std::vector<std::string> substitutions;
  std::vector<Stage> stages;
  std::size_t rank = 0;
  /// Surviving combinations, as coordinates in the candidate basis.
  std::vector<Vector> nullspace;
  std::vector<NCPoly> survivors;
  std::vector<std::string> survivor_text;
  /// Dimension of the identity part, known only after full generic escalation.
  std::optional<std::size_t> identity_dimension;
  bool escalated = false;
  std::vector<std::string> notes;
  Verdict verdict;

  /// 25 -> 10 -> 2 -> 0 style trace of free unknowns, starting with the candidate count.
  std::vector<std::size_t> free_trace() const;
};

struct HwvSearchConfig {
  int n = 4;
  Partition2 lambda;
  /// 0 means n (products of at least n commutators).
  int min_parts = 0;
  std::vector<Substitution> substitutions;
  std::vector<EntryCondition> conditions;
  /// On a nontrivial kernel: all entries of the given substitutions, then the
  /// other fixed matrices, then a full generic y.
  bool escalate = false;
};

SearchReport hwv_search(const HwvSearchConfig& config);
/// Same, reusing a precomputed candidate space.
SearchReport hwv_search(const HwvSpace& space, const HwvSearchConfig& config);

// ---- presets reproducing the fixed-substitution runs for M_4 -------------------

HwvSearchConfig preset_degree10();        // (5,5): (u,v), z12
HwvSearchConfig preset_degree11();        // (6,5): (u,v),(u,v1), z12, then z13 and z14 at (u,v1)
HwvSearchConfig preset_degree12_75();     // (7,5): (u,v2), z12
HwvSearchConfig preset_degree12_66_v2();  // (6,6): (u,v2), z12
HwvSearchConfig preset_degree12_66_v3();  // (6,6): (u,v3), z12

/// Default substitutions for an exploratory run: u with the n-cycle.
HwvSearchConfig default_config(int n, const Partition2& lambda, int min_parts);

// ---- multilinear method ---------------------------------------------------------

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MultilinearBudget {
  /// Upper bound on n^(2m) * m!, the chain-enumeration work.
  std::uint64_t max_work = 10'000'000;
};

struct MultilinearReport {
  int n = 0;
  int m = 0;
  std::size_t unknowns = 0;
  std::uint64_t tuples = 0;
  std::size_t rows_identity = 0;
  std::size_t rows_central = 0;
  RankCertificate rank_identity;
  RankCertificate rank_central;
  /// Dimension of the multilinear identities.
  std::size_t d_pi = 0;
  /// Dimension of identities plus central polynomials.
  std::size_t d_c = 0;
  std::vector<NCPoly> identity_basis;
  /// Central polynomials completing identity_basis to the d_c-dimensional space.
  std::vector<NCPoly> central_basis;
};

/// Work estimate n^(2m) * m! (saturating).
std::uint64_t multilinear_work(int n, int m);

/// Throws BudgetExceeded rather than truncating.
MultilinearReport multilinear_search(int n, int m, const MultilinearBudget& budget = {});

/// True iff p lies in span(vectors) (all multilinear of the same degree).
bool in_span(const std::vector<NCPoly>& vectors, const NCPoly& p);

/// Full linearization: the i-th occurrence block of each variable is replaced
/// by fresh variables, summed over all placements. Multihomogeneous input.
NCPoly full_linearization(const NCPoly& p);

// ---- verification of a single polynomial ------------------------------------------

enum class CentralVerdict { Central, Identity, Neither };
enum class Evidence { Exhaustive, Symbolic, RandomTrials };

std::string to_string(CentralVerdict v);
std::string to_string(Evidence e);

struct CentralCheck {
  CentralVerdict verdict = CentralVerdict::Neither;
  /// Strongest evidence obtained. Exhaustive and Symbolic are proofs.
  Evidence evidence = Evidence::RandomTrials;
  bool certified = false;
  std::size_t trials = 0;
  std::uint64_t tuples = 0;
  std::string witness;
};

struct VerifyOptions {
  enum class Mode { Auto, Exhaustive, Random };

  Mode mode = Mode::Auto;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  int entry_bound = 3;
  /// Largest n^(2m) tuple count for exhaustive matrix-unit evaluation.
  std::uint64_t max_tuples = 20'000'000;
  /// Largest (terms * n^(deg-1)) estimate for symbolic evaluation.
  std::uint64_t max_symbolic_work = 5'000'000;
};

CentralCheck verify_central(int n, const NCPoly& c, const VerifyOptions& options = {});

// ---- degree sweep -------------------------------------------------------------

struct SweepReport {
  std::vector<SearchReport> runs;
  std::vector<std::string> notes;
  bool all_none = false;
  std::string conclusion;
};

/// Two-row partitions per degree that the sweep has to examine.
std::vector<Partition2> sweep_partitions(int degree);

SweepReport degree_sweep();

}  // namespace pimat
