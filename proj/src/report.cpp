#include "pimat/report.hpp"

#include <sstream>

namespace pimat {

namespace {

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::string trace_text(const std::vector<std::size_t>& trace) {
  std::string s;
  for (std::size_t i = 0; i < trace.size(); ++i) s += (i ? " -> " : "") + std::to_string(trace[i]);
  return s;
}

std::string backend_name(RankBackend b) {
  switch (b) {
    case RankBackend::FractionFree:
      return "fraction-free";
    case RankBackend::Modular:
      return "modular";
    default:
      return "both";
  }
}

std::string certificate_text(const RankCertificate& c) {
  std::string s = c.backend == RankBackend::Modular ? std::string("modular only")
                                                    : "fraction-free " + std::to_string(c.fraction_free);
  for (const auto& m : c.modular) s += ", mod " + std::to_string(m.prime) + ": " + std::to_string(m.rank);
  return s;
}

}  // namespace

Json to_json(const RankCertificate& c) {
  Json mod = Json::array();
  for (const auto& m : c.modular) mod.push_back({{"prime", m.prime}, {"rank", m.rank}});
  Json out = {{"backend", backend_name(c.backend)}, {"rank", c.rank}};
  if (c.backend != RankBackend::Modular) out["fraction_free"] = c.fraction_free;
  out["modular"] = mod;
  return out;
}

Json to_json(const SearchReport& r) {
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"condition", s.condition},
                      {"rows_added", s.rows_added},
                      {"rank", s.rank},
                      {"free_unknowns", s.free_unknowns},
                      {"certificate", to_json(s.certificate)}});
  }
  Json nullspace = Json::array();
  for (std::size_t i = 0; i < r.nullspace.size(); ++i) {
    nullspace.push_back({{"coordinates", vector_json(r.nullspace[i])},
                         {"products", r.survivor_text[i]},
                         {"polynomial", to_string(r.survivors[i])}});
  }
  Json out = {{"n", r.n},
              {"lambda", {r.lambda.first, r.lambda.second}},
              {"min_parts", r.min_parts},
              {"candidates", r.candidates},
              {"substitutions", r.substitutions},
              {"stages", stages},
              {"free_trace", r.free_trace()},
              {"rank", r.rank},
              {"nullspace", nullspace},
              {"escalated", r.escalated}};
  if (r.identity_dimension) out["identity_dimension"] = *r.identity_dimension;
  out["notes"] = r.notes;
  out["verdict"] = to_string(r.verdict);
  return out;
}

Json to_json(const MultilinearReport& r) {
  Json ids = Json::array(), central = Json::array();
  for (const auto& p : r.identity_basis) ids.push_back(to_string(p));
  for (const auto& p : r.central_basis) central.push_back(to_string(p));
  return {{"n", r.n},
          {"m", r.m},
          {"unknowns", r.unknowns},
          {"tuples", r.tuples},
          {"rows_identity", r.rows_identity},
          {"rows_central", r.rows_central},
          {"rank", {{"identity", to_json(r.rank_identity)}, {"central", to_json(r.rank_central)}}},
          {"d_pi", r.d_pi},
          {"d_c", r.d_c},
          {"identity_basis", ids},
          {"central_basis", central},
          {"verdict", r.d_c > r.d_pi ? "CENTRAL(" + std::to_string(r.d_c - r.d_pi) + ")"
                      : r.d_pi > 0  ? "IDENTITIES(" + std::to_string(r.d_pi) + ")"
                                    : std::string("NONE")}};
}

Json to_json(const CentralCheck& c) {
  return {{"verdict", to_string(c.verdict)},
          {"evidence", to_string(c.evidence)},
          {"certified", c.certified},
          {"trials", c.trials},
          {"tuples", c.tuples},
          {"witness", c.witness}};
}

Json to_json(const SweepReport& r) {
  Json runs = Json::array();
  for (const auto& run : r.runs) runs.push_back(to_json(run));
  return {{"runs", runs}, {"notes", r.notes}, {"all_none", r.all_none}, {"conclusion", r.conclusion}};
}

Json to_json(const HwvSpace& s) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < s.vectors.size(); ++i) basis.push_back(to_string(s.products, s.coordinates[i]));
  return {{"lambda", {s.lambda.first, s.lambda.second}},
          {"min_parts", s.min_parts},
          {"products", s.products.size()},
          {"candidates", s.dimension()},
          {"rank", {{"span", to_json(s.span_rank)}, {"raise", to_json(s.raise_rank)}}},
          {"basis", basis}};
}

std::string render_text(const SearchReport& r) {
  std::ostringstream os;
  os << "lambda " << to_string(r.lambda) << ", n = " << r.n << ", products of >= " << r.min_parts
     << " commutators\n";
  os << "candidates: " << r.candidates << "\n";
  for (const auto& s : r.stages) {
    os << "  " << s.condition << ": +" << s.rows_added << " rows, rank " << s.rank << ", free "
       << s.free_unknowns << "  [" << certificate_text(s.certificate) << "]\n";
  }
  os << "free unknowns: " << trace_text(r.free_trace()) << "\n";
  os << "rank " << r.rank << "/" << r.candidates << "\n";
  for (const auto& t : r.survivor_text) os << "  survivor: " << t << "\n";
  if (r.identity_dimension) os << "identity part: " << *r.identity_dimension << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  return os.str();
}

std::string render_text(const MultilinearReport& r) {
  std::ostringstream os;
  os << "multilinear degree " << r.m << " for " << r.n << "x" << r.n << " matrices: " << r.unknowns
     << " unknowns, " << r.tuples << " tuples\n";
  os << "identity system: " << r.rows_identity << " rows, rank " << r.rank_identity.rank << " ["
     << certificate_text(r.rank_identity) << "]\n";
  os << "central system: " << r.rows_central << " rows, rank " << r.rank_central.rank << " ["
     << certificate_text(r.rank_central) << "]\n";
  os << "d_PI = " << r.d_pi << ", d_C = " << r.d_c << "\n";
  for (const auto& p : r.central_basis) os << "  central: " << to_string(p) << "\n";
  return os.str();
}

std::string render_text(const CentralCheck& c) {
  std::ostringstream os;
  os << to_string(c.verdict) << " (" << to_string(c.evidence) << (c.certified ? ", certified" : ", not certified");
  if (c.tuples) os << ", " << c.tuples << " tuples";
  if (c.trials) os << ", " << c.trials << " trials";
  os << ")\n";
  if (!c.witness.empty()) os << "witness: " << c.witness << "\n";
  return os.str();
}

std::string render_text(const SweepReport& r) {
  std::ostringstream os;
  for (const auto& run : r.runs) {
    os << to_string(run.lambda) << " with " << (run.substitutions.empty() ? "" : run.substitutions.front())
       << ": " << trace_text(run.free_trace()) << ", " << to_string(run.verdict) << "\n";
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << r.conclusion << "\n";
  return os.str();
}

std::string render_text(const HwvSpace& s) {
  std::ostringstream os;
  os << "lambda " << to_string(s.lambda) << ", products of >= " << s.min_parts << " commutators\n";
  os << "count: " << s.dimension() << "\n";
  for (std::size_t i = 0; i < s.vectors.size(); ++i)
    os << "  " << to_string(s.products, s.coordinates[i]) << "\n";
  return os.str();
}

}  // namespace pimat
