#include "freecairn/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "freecairn/errors.hpp"

namespace freecairn {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json words_to_json(std::span<const Word> words) {
  std::vector<Word> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());
  Json out = Json::array();
  for (const Word& w : sorted) out.push_back(to_string(w));
  return out;
}

std::vector<Word> words_from_json(const Json& j) {
  std::vector<Word> out;
  for (const auto& item : j) out.push_back(parse_word(item.get<std::string>()));
  std::sort(out.begin(), out.end());
  return out;
}

Json to_json(const Interval& I) {
  Json out;
  out["rank"] = I.rank();
  out["translate"] = to_string(I.translate());
  out["elements"] = words_to_json(I.elements());
  return out;
}

Interval interval_from_json(const IntervalSystem& sys, const Json& j) {
  const int rank = j.at("rank").get<int>();
  if (rank < 0) return {};
  Interval I = sys.translate(parse_word(j.at("translate").get<std::string>()), sys.base_interval(rank));
  if (j.contains("elements") && words_from_json(j.at("elements")) != I.elements()) {
    throw ConsistencyError("interval JSON: elements disagree with rank and translate");
  }
  return I;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({round12(v(i).real()), round12(v(i).imag())});
  return out;
}

Vector vector_from_json(const Json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Scalar(j[i].at(0).get<double>(), j[i].at(1).get<double>());
  }
  return v;
}

Json to_json(const IntervalReport& report) {
  Json out;
  out["max_n"] = report.max_n;
  out["pair_cap"] = report.pair_cap;
  out["passed"] = report.passed();
  out["sizes"] = report.sizes;
  Json statements = Json::object();
  for (const auto& s : report.statements) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
      rows.push_back({{"n", r.n}, {"instances", r.instances}, {"failures", r.failures}});
    }
    statements[s.name] = std::move(rows);
  }
  out["statements"] = std::move(statements);
  Json meets = Json::array();
  for (const auto& b : report.intersections) {
    meets.push_back({{"n", b.n},
                     {"step", std::string(1, letter_char(b.step))},
                     {"result", to_literal(b.result)},
                     {"expected_rank", b.expected_rank}});
  }
  out["basic_intersections"] = std::move(meets);
  return out;
}

Json to_json(const CairnReport& report) {
  Json out;
  out["model"] = report.model;
  out["window_rank"] = report.window_rank;
  out["tol"] = report.tol;
  out["passed"] = report.passed();
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        {{"kind", c.kind}, {"I", c.I}, {"J", c.J}, {"residual", round12(c.residual)}, {"pass", c.pass}});
  }
  out["checks"] = std::move(checks);
  return out;
}

Json to_json(const MeasureReport& report) {
  Json out;
  out["model"] = "measure";
  out["window_rank"] = report.window_rank;
  out["atoms"] = report.atoms;
  out["passed"] = report.passed();
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"kind", c.kind},
                      {"I", c.I},
                      {"J", c.J},
                      {"K", c.K},
                      {"instances", c.instances},
                      {"defect", c.defect},
                      {"pass", c.pass}});
  }
  out["checks"] = std::move(checks);
  return out;
}

Json to_json(const AxiomReport& report) {
  Json out;
  out["trials"] = report.trials;
  out["dim"] = report.dim;
  out["seed"] = report.seed;
  out["tol"] = report.tol;
  out["passed"] = report.passed();
  Json axioms = Json::array();
  for (const auto& a : report.axioms) {
    axioms.push_back({{"name", a.name},
                      {"instances", a.instances},
                      {"applicable", a.applicable},
                      {"violations", a.violations}});
  }
  out["axioms"] = std::move(axioms);
  return out;
}

Json to_json(const RegularCertificate& cert) {
  Json out;
  out["valid"] = cert.valid;
  Json stabilizers = Json::object();
  Json levels = Json::array();
  for (const auto& lc : cert.levels) {
    stabilizers[std::to_string(lc.n)] = words_to_json(lc.stabilizer);
    levels.push_back({{"n", lc.n},
                      {"translates", lc.translates},
                      {"reachable", lc.reachable},
                      {"shift_pairs", lc.shift_pairs},
                      {"worst_permutation_residual", round12(lc.worst_permutation_residual)}});
  }
  out["stabilizers"] = std::move(stabilizers);
  out["levels"] = std::move(levels);
  out["witnesses"] = cert.witnesses;
  out["scope"] = cert.scope;
  return out;
}

Json to_json(const Decomposition& d, const RegularCertificate& cert) {
  Json out;
  out["window_rank"] = d.window_rank;
  out["ambient_dim"] = d.ambient_dim;
  Json levels = Json::array();
  for (const auto& level : d.levels) {
    levels.push_back({{"n", level.n},
                      {"dim", level.tilde_E.dim()},
                      {"block_count", level.blocks.size()},
                      {"worst_orthogonality_residual", round12(level.worst_orthogonality)}});
  }
  out["levels"] = std::move(levels);
  out["worst_across_levels"] = round12(d.worst_across_levels);
  out["completeness_residual"] = round12(d.completeness_residual);
  out["level_residual"] = round12(d.level_residual);
  out["certificate"] = to_json(cert);
  return out;
}

Json to_json(const DisplacementResult& r) {
  return {{"radius", r.radius},
          {"min_eig", round12(r.min_eig)},
          {"threshold", round12(r.threshold)},
          {"eta", round12(r.eta)},
          {"pass", r.pass},
          {"identity_error", round12(r.identity_error)},
          {"identity_samples", r.identity_samples}};
}

Json to_json(const KazhdanConstant& k) {
  return {{"eta", round12(k.eta)},
          {"eta_squared", round12(k.eta_squared)},
          {"kesten_norm", round12(k.kesten_norm)},
          {"identity_residual", round12(k.identity_residual)}};
}

Json to_json(std::span<const KestenRow> rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"radius", r.radius},
                   {"dimension", r.dimension},
                   {"lambda_max", round12(r.lambda_max)},
                   {"gap", round12(r.gap)},
                   {"residual", round12(r.residual)}});
  }
  return out;
}

void write_levels_csv(std::ostream& out, const Decomposition& d) {
  out << "n,dim,block_count,worst_orthogonality_residual\n";
  char buf[128];
  for (const auto& level : d.levels) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%zu,%.12g\n", level.n, static_cast<long long>(level.tilde_E.dim()),
                  level.blocks.size(), level.worst_orthogonality);
    out << buf;
  }
}

}  // namespace freecairn
