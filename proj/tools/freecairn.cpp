#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "freecairn/cairn.hpp"
#include "freecairn/errors.hpp"
#include "freecairn/interval_checks.hpp"
#include "freecairn/measure.hpp"
#include "freecairn/repsplit.hpp"
#include "freecairn/serialize.hpp"
#include "freecairn/spectral.hpp"

namespace fs = std::filesystem;
using namespace freecairn;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Caps {
  int interval_rank = kDefaultIntervalRankCap;
  int ball_radius = kDefaultSpectralRadiusCap;
  Eigen::Index ambient_dim = kDefaultAmbientCap;
};

struct Config {
  Caps caps;
  Tolerances tol;
  std::uint64_t seed = 0;
  std::string format;  // empty: command default
  std::string out;
};

struct Result {
  Json json;
  std::string csv;   // empty when the command has no CSV form
  std::string text;
  bool passed = true;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void validate(const Config& cfg) {
  if (cfg.caps.interval_rank <= 0 || cfg.caps.ball_radius <= 0 || cfg.caps.ambient_dim <= 0) {
    throw UsageError("caps must be positive");
  }
  if (cfg.caps.interval_rank > kDefaultIntervalRankCap) {
    throw UsageError("interval rank cap cannot exceed " + std::to_string(kDefaultIntervalRankCap));
  }
  const auto& t = cfg.tol;
  if (!(t.construction > 0 && t.relation > 0 && t.decomposition > 0)) {
    throw UsageError("tolerances must be positive");
  }
  if (!(t.construction <= t.relation && t.relation <= t.decomposition)) {
    throw UsageError("tolerances must satisfy construction <= relation <= decomposition");
  }
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") {
    throw UsageError("format must be json, csv or text");
  }
}

void check_rank(const Config& cfg, int n, const char* what) {
  if (n < 0) throw UsageError(std::string(what) + " must be nonnegative");
  if (n > cfg.caps.interval_rank) {
    throw ResourceError(std::string(what) + " " + std::to_string(n) + " exceeds interval rank cap " +
                        std::to_string(cfg.caps.interval_rank));
  }
}

const IntervalSystem& sys() { return IntervalSystem::standard(); }

Interval interval_arg(const std::string& text) {
  return sys().from_literal(parse_interval_literal(text));
}

std::string words_text(const std::vector<Word>& words) {
  std::string s = "{";
  for (std::size_t i = 0; i < words.size(); ++i) s += (i ? "," : "") + to_string(words[i]);
  return s + "}";
}

// ---------------------------------------------------------------------------

Result intervals_gen(int n) {
  const auto I = sys().base_interval(n);
  Result r;
  r.json = to_json(I);
  r.text = to_literal(I) + " = " + words_text(I.elements()) + " (" + std::to_string(I.size()) + " elements)\n";
  std::ostringstream csv;
  csv << "word\n";
  for (const Word& w : I.elements()) csv << to_string(w) << '\n';
  r.csv = csv.str();
  return r;
}

Result intervals_verify(int max_n, int pair_cap) {
  const auto report = verify_interval_calculus(sys(), max_n, pair_cap);
  Result r;
  r.passed = report.passed();
  r.json = to_json(report);
  std::ostringstream text, csv;
  csv << "statement,n,instances,failures\n";
  for (const auto& s : report.statements) {
    std::size_t failures = 0;
    for (const auto& row : s.rows) {
      failures += row.failures.size();
      csv << s.name << ',' << row.n << ',' << row.instances << ',' << row.failures.size() << '\n';
    }
    text << (s.passed() ? "PASS " : "FAIL ") << s.name << "  instances=" << s.instances()
         << " failures=" << failures << '\n';
  }
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Result intervals_subs(int n) {
  const auto subs = sys().subintervals(sys().base_interval(n));
  Result r;
  Json list = Json::array();
  std::vector<std::size_t> by_rank(static_cast<std::size_t>(n + 1), 0);
  std::ostringstream text, csv;
  csv << "interval,rank,size\n";
  for (const auto& I : subs) {
    Json item = to_json(I);
    item["literal"] = to_literal(I);
    list.push_back(std::move(item));
    ++by_rank[static_cast<std::size_t>(I.rank())];
    text << to_literal(I) << " = " << words_text(I.elements()) << '\n';
    csv << to_literal(I) << ',' << I.rank() << ',' << I.size() << '\n';
  }
  r.json = {{"n", n}, {"count", subs.size()}, {"count_by_rank", by_rank}, {"subintervals", list}};
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Result intervals_stab(int max_n) {
  Result r;
  Json stab = Json::object();
  std::ostringstream text, csv;
  csv << "n,stabilizer\n";
  for (int n = 0; n <= max_n; ++n) {
    const auto s = sys().stabilizer(n);
    stab[std::to_string(n)] = words_to_json(s);
    if (s.size() != 1 || !s.front().is_identity()) r.passed = false;
    text << "I" << n << ": " << words_text(s) << '\n';
    csv << n << ',' << words_text(s) << '\n';
  }
  r.json = {{"max_n", max_n}, {"trivial", r.passed}, {"stabilizers", stab}};
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Result intervals_intersect(const std::string& a, const std::string& b) {
  const auto I = interval_arg(a);
  const auto J = interval_arg(b);
  const auto K = sys().intersect(I, J);
  Result r;
  Json k = to_json(K);
  k["literal"] = to_literal(K);
  r.json = {{"I", to_literal(I)}, {"J", to_literal(J)}, {"intersection", k}};
  r.text = to_literal(I) + " ∩ " + to_literal(J) + " = " + to_literal(K) + " = " + words_text(K.elements()) + "\n";
  r.csv = "I,J,intersection\n" + to_literal(I) + "," + to_literal(J) + "," + to_literal(K) + "\n";
  return r;
}

// ---------------------------------------------------------------------------

std::unique_ptr<HilbertCairn> hilbert_cairn(const Config& cfg, const std::string& model, int window,
                                            int fiber_dim) {
  if (model == "graded") {
    return std::make_unique<GradedCairn>(build_graded(sys(), window, {}, cfg.seed, cfg.caps.ambient_dim));
  }
  return std::make_unique<CoordinateCairn>(sys(), window, fiber_dim, cfg.caps.ambient_dim);
}

Result cairn_build(const Config& cfg, const std::string& model, int window, int fiber_dim) {
  check_rank(cfg, window, "window");
  Result r;
  std::ostringstream text, csv;
  if (model == "measure") {
    const auto c = build_measure_cairn(sys(), window);
    Json coords = words_to_json(c.coordinates());
    r.json = {{"model", "measure"},
              {"window_rank", window},
              {"coordinates", coords},
              {"atoms", c.atom_count()},
              {"total_weight", c.total_weight()},
              {"intervals", c.index().size()}};
    text << "measure cairn over I" << window << ": " << c.coordinates().size() << " coordinates, "
         << c.atom_count() << " atoms, " << c.index().size() << " intervals\n";
    csv << "interval,coordinates\n";
    for (const auto& I : c.index()) csv << to_literal(I) << ',' << I.size() << '\n';
  } else {
    const auto c = hilbert_cairn(cfg, model, window, fiber_dim);
    Json spaces = Json::array();
    csv << "interval,dim\n";
    for (const auto& I : c->index()) {
      const auto dim = c->subspace_of(I).dim();
      spaces.push_back({{"I", to_literal(I)}, {"dim", dim}});
      csv << to_literal(I) << ',' << dim << '\n';
    }
    r.json = {{"model", c->model_name()},
              {"window_rank", window},
              {"seed", cfg.seed},
              {"ambient_dim", c->ambient_dim()},
              {"intervals", c->index().size()},
              {"subspaces", spaces}};
    text << c->model_name() << " cairn over I" << window << ": ambient dimension " << c->ambient_dim() << ", "
         << c->index().size() << " intervals\n";
  }
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Result cairn_verify(const Config& cfg, const std::string& model, int window, int fiber_dim) {
  check_rank(cfg, window, "window");
  Result r;
  std::ostringstream text, csv;
  if (model == "measure") {
    const auto report = verify_measure_independence(build_measure_cairn(sys(), window));
    r.passed = report.passed();
    r.json = to_json(report);
    csv << "kind,I,J,K,instances,defect,pass\n";
    for (const auto& c : report.checks) {
      csv << c.kind << ',' << c.I << ',' << c.J << ',' << c.K << ',' << c.instances << ',' << c.defect << ','
          << (c.pass ? 1 : 0) << '\n';
    }
    text << (r.passed ? "PASS" : "FAIL") << " measure cairn over I" << window << ": " << report.checks.size()
         << " checks, " << report.atoms << " atoms, " << report.failures() << " failures\n";
  } else {
    const auto c = hilbert_cairn(cfg, model, window, fiber_dim);
    const auto report = verify_cairn(*c, cfg.tol.relation);
    r.passed = report.passed();
    r.json = to_json(report);
    csv << "kind,I,J,residual,pass\n";
    for (const auto& k : report.checks) {
      csv << k.kind << ',' << k.I << ',' << k.J << ',' << fmt(k.residual) << ',' << (k.pass ? 1 : 0) << '\n';
    }
    text << (r.passed ? "PASS" : "FAIL") << ' ' << report.model << " cairn over I" << window << '\n';
    for (const char* kind : {"independence", "monotone", "equivariance", "exhaustion"}) {
      text << "  " << kind << ": " << report.count(kind) << " checks, worst residual " << fmt(report.worst(kind))
           << '\n';
    }
  }
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------------------

Result split_run(const Config& cfg, int window, bool certificate_only) {
  check_rank(cfg, window, "window");
  const auto c = build_graded(sys(), window, {}, cfg.seed, cfg.caps.ambient_dim);
  Result r;
  try {
    const auto d = decompose(c, cfg.tol, cfg.seed);
    const auto cert = certify_regular_multiple(c, d, cfg.tol.decomposition);
    r.passed = cert.valid;
    r.json = certificate_only ? Json{{"window_rank", window}, {"certificate", to_json(cert)}} : to_json(d, cert);
    std::ostringstream text, csv;
    write_levels_csv(csv, d);
    text << (cert.valid ? "valid" : "INVALID") << " certificate for I" << window << " (ambient dimension "
         << d.ambient_dim << ")\n";
    for (const auto& level : d.levels) {
      text << "  level " << level.n << ": dim " << level.tilde_E.dim() << ", " << level.blocks.size()
           << " blocks\n";
    }
    for (const auto& w : cert.witnesses) text << "  witness: " << w << '\n';
    r.text = text.str();
    r.csv = csv.str();
  } catch (const DecompositionError& e) {
    r.passed = false;
    r.json = {{"window_rank", window},
              {"error", e.what()},
              {"worst_offender", e.worst_offender()},
              {"residual", round12(e.residual())}};
    r.text = std::string("decomposition failed: ") + e.what() + "\n";
  }
  return r;
}

Result split_displacement(const Config& cfg, int radius) {
  if (radius < 0) throw UsageError("radius must be nonnegative");
  Result r;
  Json rows = Json::array();
  std::ostringstream text, csv;
  csv << "radius,min_eig,threshold,pass,identity_error\n";
  EigenSolverOptions opts;
  opts.seed = cfg.seed;
  for (int R = radius == 0 ? 0 : 1; R <= radius; ++R) {
    const auto d = displacement_bound(R, cfg.seed, 16, opts, cfg.caps.ball_radius);
    r.passed = r.passed && d.pass;
    rows.push_back(to_json(d));
    csv << R << ',' << fmt(d.min_eig) << ',' << fmt(d.threshold) << ',' << (d.pass ? 1 : 0) << ','
        << fmt(d.identity_error) << '\n';
    text << "R=" << R << "  min_eig=" << fmt(d.min_eig) << "  threshold=" << fmt(d.threshold) << "  "
         << (d.pass ? "pass" : "FAIL") << '\n';
  }
  r.json = {{"eta", round12(kazhdan_eta().eta)}, {"rows", rows}};
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

Result spectral_kesten(const Config& cfg, int max_radius) {
  EigenSolverOptions opts;
  opts.seed = cfg.seed;
  const auto rows = kesten_report(max_radius, opts, cfg.caps.ball_radius);
  Result r;
  for (const auto& row : rows) r.passed = r.passed && row.gap > 0.0;
  r.json = {{"kesten_norm", round12(kazhdan_eta().kesten_norm)}, {"rows", to_json(rows)}};
  std::ostringstream csv, text;
  write_kesten_csv(csv, rows);
  for (const auto& row : rows) {
    text << "R=" << row.radius << "  dim=" << row.dimension << "  lambda_max=" << fmt(row.lambda_max)
         << "  gap=" << fmt(row.gap) << '\n';
  }
  r.csv = csv.str();
  r.text = text.str();
  return r;
}

Result spectral_eta() {
  const auto k = kazhdan_eta();
  Result r;
  r.passed = k.identity_residual <= 1e-12;
  r.json = to_json(k);
  r.csv = "eta,eta_squared,kesten_norm\n" + fmt(k.eta) + "," + fmt(k.eta_squared) + "," + fmt(k.kesten_norm) + "\n";
  r.text = "eta = " + fmt(k.eta) + "\neta^2 = " + fmt(k.eta_squared) + "\nkesten norm = " + fmt(k.kesten_norm) + "\n";
  return r;
}

Result spectral_edges(const Config& cfg, int radius) {
  const auto op = cayley_adjacency(radius, cfg.caps.ball_radius);
  Result r;
  std::ostringstream edges;
  op.write_edge_list(edges);
  r.text = edges.str();
  r.csv = "u v\n" + r.text;
  r.json = {{"radius", radius}, {"dimension", op.dimension()}, {"edges", op.edge_count()}};
  return r;
}

Result hilbert_axioms(const Config& cfg, std::size_t trials, int dim, double tol) {
  const auto report = check_independence_axioms(trials, dim, cfg.seed, tol);
  Result r;
  r.passed = report.passed();
  r.json = to_json(report);
  std::ostringstream text, csv;
  csv << "axiom,instances,applicable,violations\n";
  for (const auto& a : report.axioms) {
    csv << a.name << ',' << a.instances << ',' << a.applicable << ',' << a.violations << '\n';
    text << (a.violations ? "FAIL " : "PASS ") << a.name << "  applicable=" << a.applicable
         << " violations=" << a.violations << '\n';
  }
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

// ---------------------------------------------------------------------------

void emit(const Result& r, const std::string& format, const std::string& out_flag) {
  std::string body;
  if (format == "csv") {
    if (r.csv.empty()) throw UsageError("this command has no CSV output");
    body = r.csv;
  } else if (format == "text") {
    body = r.text;
  } else {
    body = r.json.dump(2) + "\n";
  }
  if (out_flag.empty()) {
    std::cout << body;
    return;
  }
  fs::path path(out_flag);
  if (const char* dir = std::getenv("FREECAIRN_OUT_DIR"); dir && *dir) path = fs::path(dir) / path.filename();
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ResourceError("cannot open " + path.string() + " for writing");
  file << body;
}

// Fills options that were not given on the command line from the config
// file. Unknown keys are ignored; "caps" and "tolerances" are nested.
void apply_config(CLI::App* leaf, const Json& j, Config& cfg) {
  for (const auto& [key, value] : j.items()) {
    if (key == "caps") {
      if (value.contains("interval_rank")) cfg.caps.interval_rank = value["interval_rank"].get<int>();
      if (value.contains("ball_radius")) cfg.caps.ball_radius = value["ball_radius"].get<int>();
      if (value.contains("ambient_dim")) cfg.caps.ambient_dim = value["ambient_dim"].get<Eigen::Index>();
      continue;
    }
    if (key == "tolerances") {
      if (value.contains("construction")) cfg.tol.construction = value["construction"].get<double>();
      if (value.contains("relation")) cfg.tol.relation = value["relation"].get<double>();
      if (value.contains("decomposition")) cfg.tol.decomposition = value["decomposition"].get<double>();
      continue;
    }
    if (key == "config") continue;
    CLI::Option* opt = leaf->get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() > 0) continue;
    opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval calculus, cairns and spectral checks for the free group on two generators"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  std::string tol_flag;
  std::function<Result()> action;
  // Options that must come from the command line or the config file.
  std::map<CLI::App*, std::vector<CLI::Option*>> needed;

  auto common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--format", cfg.format, "json | csv | text");
    sub->add_option("--out", cfg.out, "Write to this file instead of stdout");
    sub->add_option("--config", config_path, "JSON file with default option values");
    if (seeded) sub->add_option("--seed", cfg.seed, "Random seed");
  };

  int n = 0, max_n = 0, pair_cap = kDefaultPairCap, window = 0, radius = 0, fiber_dim = 1, dim = 12;
  std::size_t trials = 10000;
  double tol = 0.0;
  std::string model = "graded", lit_i, lit_j;

  auto* intervals = app.add_subcommand("intervals", "Base chain and interval calculus");
  intervals->require_subcommand(1);
  {
    auto* s = intervals->add_subcommand("gen", "Print the base interval I_n");
    s->add_option("--n", n, "Rank");
    needed[s].push_back(s->get_options().back());
    common(s, false);
    s->callback([&] { action = [&] { check_rank(cfg, n, "n"); return intervals_gen(n); }; });
  }
  {
    auto* s = intervals->add_subcommand("verify", "Exhaustive check of the interval calculus");
    s->add_option("--max-n", max_n, "Largest rank");
    needed[s].push_back(s->get_options().back());
    s->add_option("--pair-cap", pair_cap, "Largest rank for the subinterval checks");
    common(s, false);
    s->callback([&] {
      action = [&] {
        check_rank(cfg, max_n, "max-n");
        return intervals_verify(max_n, pair_cap);
      };
    });
  }
  {
    auto* s = intervals->add_subcommand("subs", "List the subintervals of I_n");
    s->add_option("--n", n, "Rank");
    needed[s].push_back(s->get_options().back());
    common(s, false);
    s->callback([&] { action = [&] { check_rank(cfg, n, "n"); return intervals_subs(n); }; });
  }
  {
    auto* s = intervals->add_subcommand("stab", "Stabilizers of I_0 .. I_max-n");
    s->add_option("--max-n", max_n, "Largest rank");
    needed[s].push_back(s->get_options().back());
    common(s, false);
    s->callback([&] { action = [&] { check_rank(cfg, max_n, "max-n"); return intervals_stab(max_n); }; });
  }
  {
    auto* s = intervals->add_subcommand("intersect", "Intersect two intervals");
    s->add_option("--i", lit_i, "Interval literal, e.g. I3 or b^-1*I3");
    needed[s].push_back(s->get_options().back());
    s->add_option("--j", lit_j, "Interval literal");
    needed[s].push_back(s->get_options().back());
    common(s, false);
    s->callback([&] { action = [&] { return intervals_intersect(lit_i, lit_j); }; });
  }

  auto* cairn = app.add_subcommand("cairn", "Windowed cairn models");
  cairn->require_subcommand(1);
  for (const char* name : {"build", "verify"}) {
    const bool verify = std::string(name) == "verify";
    auto* s = cairn->add_subcommand(name, verify ? "Check independence, monotonicity and equivariance"
                                                 : "Build a cairn and list its subspaces");
    s->add_option("--model", model, "graded | coordinate | measure")
        ->check(CLI::IsMember({"graded", "coordinate", "measure"}));
    s->add_option("--window", window, "Window rank N");
    needed[s].push_back(s->get_options().back());
    s->add_option("--fiber-dim", fiber_dim, "Fiber dimension of the coordinate model");
    s->add_option("--tol", tol_flag, "Residual tolerance");
    common(s, true);
    s->callback([&, verify] {
      action = [&, verify] {
        return verify ? cairn_verify(cfg, model, window, fiber_dim) : cairn_build(cfg, model, window, fiber_dim);
      };
    });
  }

  auto* split = app.add_subcommand("split", "Level decomposition and displacement bounds");
  split->require_subcommand(1);
  for (const char* name : {"run", "certify"}) {
    const bool certify = std::string(name) == "certify";
    auto* s = split->add_subcommand(name, certify ? "Certify the block permutation structure"
                                                  : "Decompose the graded cairn into levels");
    s->add_option("--window", window, "Window rank N");
    needed[s].push_back(s->get_options().back());
    s->add_option("--tol", tol_flag, "Decomposition tolerance");
    common(s, true);
    s->callback([&, certify] { action = [&, certify] { return split_run(cfg, window, certify); }; });
  }
  {
    auto* s = split->add_subcommand("displacement", "Spectral lower bound on displacement");
    s->add_option("--radius", radius, "Ball radius");
    needed[s].push_back(s->get_options().back());
    common(s, true);
    s->callback([&] { action = [&] { return split_displacement(cfg, radius); }; });
  }

  auto* spectral = app.add_subcommand("spectral", "Cayley ball spectra");
  spectral->require_subcommand(1);
  {
    auto* s = spectral->add_subcommand("kesten", "Top eigenvalue by radius");
    s->add_option("--max-radius", radius, "Largest radius");
    needed[s].push_back(s->get_options().back());
    common(s, true);
    s->callback([&] {
      action = [&] {
        if (cfg.format.empty()) cfg.format = "csv";
        return spectral_kesten(cfg, radius);
      };
    });
  }
  {
    auto* s = spectral->add_subcommand("eta", "Kazhdan constant");
    common(s, false);
    s->callback([&] { action = [&] { return spectral_eta(); }; });
  }
  {
    auto* s = spectral->add_subcommand("edges", "Edge list of the Cayley ball");
    s->add_option("--radius", radius, "Ball radius");
    needed[s].push_back(s->get_options().back());
    common(s, false);
    s->callback([&] {
      action = [&] {
        if (cfg.format.empty()) cfg.format = "text";
        return spectral_edges(cfg, radius);
      };
    });
  }

  auto* hilbert = app.add_subcommand("hilbert", "Relative orthogonality");
  hilbert->require_subcommand(1);
  {
    auto* s = hilbert->add_subcommand("axioms", "Random checks of the independence axioms");
    s->add_option("--trials", trials, "Number of random instances per axiom");
    s->add_option("--dim", dim, "Ambient dimension");
    s->add_option("--tol", tol, "Tolerance")->default_val(1e-8);
    common(s, true);
    s->callback([&] { action = [&] { return hilbert_axioms(cfg, trials, dim, tol); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read config " + config_path);
      const Json j = Json::parse(in);
      CLI::App* leaf = &app;
      while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
      apply_config(leaf, j, cfg);
    }
    CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    for (CLI::Option* opt : needed[leaf]) {
      if (opt->count() == 0) throw UsageError(opt->get_name() + " is required");
    }
    if (!tol_flag.empty()) {
      const double t = std::stod(tol_flag);
      if (!(t > 0.0)) throw UsageError("tolerance must be positive");
      // --tol sets the relation level of the ladder and keeps it ordered.
      cfg.tol.relation = t;
      cfg.tol.construction = std::min(cfg.tol.construction, t);
      cfg.tol.decomposition = std::max(cfg.tol.decomposition, t);
    }
    validate(cfg);
    const Result r = action();
    emit(r, cfg.format.empty() ? "json" : cfg.format, cfg.out);
    return r.passed ? kExitPass : kExitFailed;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position() << ": " << e.what() << '\n';
  } catch (const OutOfWindowError& e) {
    std::cerr << "out of window: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    std::cerr << "config: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
