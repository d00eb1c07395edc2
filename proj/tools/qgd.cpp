// qgd — command-line workbench for two-qubit geometric discord.
//
// Subcommands:
//   analyze    report discord / separability / closest classical state
//   sweep      one-parameter families to CSV
//   search     random-restart separable search for conjecture violations
//   reproduce  re-derive the headline analytic claims and check them
//
// Exit codes: 0 success, 1 reproduce-claim failure, 2 parse error,
// 3 validation error, 4 I/O error, 10 counterexample found.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgd/discord.hpp"
#include "qgd/errors.hpp"
#include "qgd/lu.hpp"
#include "qgd/qstate.hpp"
#include "qgd/search.hpp"
#include "qgd/separability.hpp"
#include "qgd/statespec.hpp"
#include "qgd/xmax.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitClaimFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;
constexpr int kExitCounterexample = 10;

struct GlobalOptions {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string format;  // "", "json", "csv" or "table"
  int threads = 0;     // 0 = hardware concurrency
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    if (std::cin.bad()) throw qgd::IoError("failed to read stdin");
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw qgd::IoError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw qgd::IoError("failed to read input file: " + path);
  return ss.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // binary: keep LF line endings
  if (!f) throw qgd::IoError("cannot open output file: " + path);
  return f;
}

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw qgd::ParseError("input is not valid JSON");
  return j;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

json analyze_to_json(const qgd::DensityMatrix& rho, double tol) {
  using namespace qgd;
  const BlochForm b = to_bloch(rho);
  const GSpectrum spec = eig3_sym(g_matrix(b));
  const double discord = geometric_discord(b);
  const auto rep = separability_report(rho, tol);
  const auto cq = closest_cq(rho);
  const auto res = stationarity_residual(b);
  const auto fp = lu_fingerprint(rho);

  double purity = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) purity += std::norm(rho(i, j));

  json out;
  out["discord"] = discord;
  out["conjecture_gap"] = conjecture_gap(b);
  out["rank"] = numerical_rank(rho, tol);
  out["purity"] = purity;
  out["bloch"] = bloch_to_json(b);
  out["g_spectrum"] = {
      {"lambdas", {spec.lambdas[0], spec.lambdas[1], spec.lambdas[2]}},
      {"vectors",
       {{spec.vectors[0][0], spec.vectors[0][1], spec.vectors[0][2]},
        {spec.vectors[1][0], spec.vectors[1][1], spec.vectors[1][2]},
        {spec.vectors[2][0], spec.vectors[2][1], spec.vectors[2][2]}}}};
  json sep;
  sep["ppt"] = rep.ppt;
  sep["separable"] = rep.ppt;  // PPT is exact for two qubits
  sep["min_pt_eigenvalue"] = rep.min_pt_eigenvalue;
  sep["t_trace_norm"] = rep.t_trace_norm;
  sep["chsh_M"] = rep.chsh_M;
  if (rep.x_condition) sep["x_condition"] = *rep.x_condition;
  out["separability"] = sep;
  out["closest_cq"] = {{"axis", {cq.cq.axis[0], cq.cq.axis[1], cq.cq.axis[2]}},
                       {"distance_sq", cq.distance_sq},
                       {"state", qgd::state_to_json(cq.cq.state)}};
  out["stationarity_residual"] = {{"r_x", res.r_x}, {"r_T", res.r_T}};
  out["fingerprint"] = {
      {"x_norm", fp.x_norm},
      {"y_norm", fp.y_norm},
      {"t_singulars", {fp.t_singulars[0], fp.t_singulars[1], fp.t_singulars[2]}},
      {"t_det_sign", fp.t_det_sign}};
  return out;
}

void print_analyze_table(const json& a, std::ostream& os) {
  using qgd::fmt17;
  const auto num = [&](const json& v) { return fmt17(v.get<double>()); };
  os << "discord             " << num(a["discord"]) << "\n";
  os << "conjecture_gap      " << num(a["conjecture_gap"]) << "\n";
  os << "rank                " << a["rank"].get<int>() << "\n";
  os << "purity              " << num(a["purity"]) << "\n";
  os << "separable (PPT)     " << (a["separability"]["ppt"].get<bool>() ? "yes" : "no")
     << "\n";
  os << "min PT eigenvalue   " << num(a["separability"]["min_pt_eigenvalue"])
     << "\n";
  os << "||T||_tr            " << num(a["separability"]["t_trace_norm"]) << "\n";
  os << "CHSH M              " << num(a["separability"]["chsh_M"]) << "\n";
  if (a["separability"].contains("x_condition"))
    os << "X-state condition   "
       << (a["separability"]["x_condition"].get<bool>() ? "separable"
                                                        : "entangled")
       << "\n";
  const auto& lam = a["g_spectrum"]["lambdas"];
  os << "G spectrum          " << num(lam[0]) << " " << num(lam[1]) << " "
     << num(lam[2]) << "\n";
  const auto& ax = a["closest_cq"]["axis"];
  os << "optimal axis        " << num(ax[0]) << " " << num(ax[1]) << " "
     << num(ax[2]) << "\n";
  os << "||rho - chi||^2     " << num(a["closest_cq"]["distance_sq"]) << "\n";
  os << "residual r_x        " << num(a["stationarity_residual"]["r_x"])
     << "\n";
  os << "residual r_T        " << num(a["stationarity_residual"]["r_T"])
     << "\n";
}

void print_analyze_csv(const json& a, std::ostream& os) {
  using qgd::fmt17;
  const auto num = [&](const json& v) { return fmt17(v.get<double>()); };
  os << "discord,gap,separable,rank,purity,min_pt_eigenvalue,t_trace_norm,"
        "chsh_M,r_x,r_T\n";
  os << num(a["discord"]) << ',' << num(a["conjecture_gap"]) << ','
     << (a["separability"]["ppt"].get<bool>() ? 1 : 0) << ','
     << a["rank"].get<int>() << ',' << num(a["purity"]) << ','
     << num(a["separability"]["min_pt_eigenvalue"]) << ','
     << num(a["separability"]["t_trace_norm"]) << ','
     << num(a["separability"]["chsh_M"]) << ','
     << num(a["stationarity_residual"]["r_x"]) << ','
     << num(a["stationarity_residual"]["r_T"]) << "\n";
}

int cmd_analyze(const GlobalOptions& g, const std::string& in_path) {
  const json spec = parse_json_text(read_input(in_path));
  const qgd::DensityMatrix rho = qgd::parse_state_spec(spec);
  const json report = analyze_to_json(rho, g.tol);
  if (g.format == "table")
    print_analyze_table(report, std::cout);
  else if (g.format == "csv")
    print_analyze_csv(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const GlobalOptions& g, const std::string& family, double lo,
              double hi, int steps, const std::string& out_path) {
  using namespace qgd;
  if (steps < 1) throw ParamOutOfRange("sweep needs at least 1 step");
  if (!(lo <= hi)) throw ParamOutOfRange("sweep range must have lo <= hi");

  const auto make_state = [&](double param) -> DensityMatrix {
    if (family == "werner") return werner(param);
    if (family == "rho_epsilon") return rho_epsilon(param);
    return x_state(solve_constraints(param, AppendixBranch::plus).params);
  };
  if (family == "werner") {
    if (lo < 0.0 || hi > 1.0)
      throw ParamOutOfRange("werner sweep range must lie in [0, 1]");
  } else if (family == "rho_epsilon") {
    if (lo < 0.0 || hi > 0.75)
      throw ParamOutOfRange("rho_epsilon sweep range must lie in [0, 3/4]");
  } else if (family == "appendix_k") {
    if (!(lo > 0.0))
      throw ParamOutOfRange("appendix_k sweep range must have lo > 0");
  } else {
    throw ParamOutOfRange("unknown sweep family: " + family);
  }

  std::ostringstream csv;
  csv << "param,discord,gap,separable,rank\n";
  for (int i = 0; i < steps; ++i) {
    double t = (steps == 1) ? 0.0 : static_cast<double>(i) / (steps - 1);
    // appendix_k is scanned on a log scale; the linear families linearly
    const double param = (family == "appendix_k")
                             ? lo * std::pow(hi / lo, t)
                             : lo + (hi - lo) * t;
    const DensityMatrix rho = make_state(param);
    const BlochForm b = to_bloch(rho);
    csv << fmt17(param) << ',' << fmt17(geometric_discord(b)) << ','
        << fmt17(conjecture_gap(b)) << ',' << (is_separable(rho, g.tol) ? 1 : 0)
        << ',' << numerical_rank(rho, g.tol) << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    auto f = open_output(out_path);
    f << csv.str();
    if (!f) throw IoError("failed to write output file: " + out_path);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

json record_to_json(const qgd::SearchRecord& r, double tol) {
  return json{{"seed", r.seed},
              {"method", qgd::to_string(r.method)},
              {"discord", r.discord},
              {"gap", r.gap},
              {"separable", qgd::is_separable(r.state, tol)},
              {"rank", qgd::numerical_rank(r.state, tol)},
              {"iterations", r.iterations},
              {"state", qgd::state_to_json(r.state)}};
}

int cmd_search(const GlobalOptions& g, std::uint64_t seeds, int terms,
               int iters, double step0, const std::string& out_prefix,
               const std::string& warm_start_path, double gap_threshold) {
  using namespace qgd;
  CampaignOptions opt;
  opt.terms = terms;
  opt.refine_iters = iters;
  opt.step0 = step0;
  opt.workers = g.threads;

  std::vector<SearchRecord> records = campaign(g.seed, seeds, opt);
  if (!warm_start_path.empty()) {
    const ProductEnsemble warm =
        parse_ensemble(parse_json_text(read_input(warm_start_path)));
    records.push_back(refine(warm, iters > 0 ? iters : 500, step0, g.seed)
                          .record);
    std::sort(records.begin(), records.end(),
              [](const SearchRecord& l, const SearchRecord& r) {
                if (l.discord != r.discord) return l.discord > r.discord;
                return l.seed < r.seed;
              });
  }

  const auto bad = counterexample_candidates(records, gap_threshold);

  std::ostringstream csv;
  csv << "seed,method,discord,gap,separable,rank,iterations\n";
  for (const auto& r : records) {
    csv << r.seed << ',' << to_string(r.method) << ',' << fmt17(r.discord)
        << ',' << fmt17(r.gap) << ',' << (is_separable(r.state, g.tol) ? 1 : 0)
        << ',' << numerical_rank(r.state, g.tol) << ',' << r.iterations
        << "\n";
  }

  json summary;
  summary["records"] = records.size();
  summary["options"] = {{"seed_begin", g.seed},
                        {"seeds", seeds},
                        {"terms", terms},
                        {"iterations", iters},
                        {"step0", step0},
                        {"warm_start", !warm_start_path.empty()}};
  if (!records.empty()) {
    summary["best"] = record_to_json(records.front(), g.tol);
    double worst_gap = records.front().gap;
    for (const auto& r : records) worst_gap = std::min(worst_gap, r.gap);
    summary["worst_gap"] = worst_gap;
  }
  summary["counterexamples"] = bad.size();

  if (out_prefix.empty()) {
    std::cout << csv.str();
    std::cerr << summary.dump(2) << "\n";
  } else {
    auto fc = open_output(out_prefix + ".csv");
    fc << csv.str();
    if (!fc) throw IoError("failed to write " + out_prefix + ".csv");
    auto fj = open_output(out_prefix + ".json");
    fj << summary.dump(2) << "\n";
    if (!fj) throw IoError("failed to write " + out_prefix + ".json");
  }

  if (!bad.empty()) {
    json blob = json::array();
    for (const auto& r : bad) blob.push_back(record_to_json(r, g.tol));
    if (out_prefix.empty()) {
      std::cerr << blob.dump(2) << "\n";
    } else {
      auto fb = open_output(out_prefix + ".counterexamples.json");
      fb << blob.dump(2) << "\n";
    }
    std::cerr << "counterexample candidates found: " << bad.size() << "\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct Claim {
  std::string id;
  std::string description;
  double expected;
  double computed;
  double tolerance;
  bool pass;
};

std::vector<Claim> run_claims() {
  using namespace qgd;
  std::vector<Claim> claims;
  const auto push = [&](const std::string& id, const std::string& desc,
                        double expected, double computed, double tol) {
    claims.push_back(Claim{id, desc, expected, computed, tol,
                           std::abs(computed - expected) <= tol});
  };

  // Analytic maximum over separable X states.
  const XMaxResult xm = max_separable_x_discord();
  push("prop1_max", "max discord over separable X states", 0.25, xm.value,
       1e-12);

  const auto& plus =
      (xm.states[0].branch == AppendixBranch::plus) ? xm.states[0]
                                                    : xm.states[1];
  const XStateParams want = rho_star_params();
  double dev = std::max({std::abs(plus.params.a - want.a),
                         std::abs(plus.params.b - want.b),
                         std::abs(plus.params.c - want.c),
                         std::abs(plus.params.d - want.d),
                         std::abs(plus.params.p - want.p),
                         std::abs(plus.params.q - want.q)});
  push("prop1_extremal", "extremal parameters reach the closed-form point",
       0.0, dev, 1e-8);
  push("prop1_rank", "extremal state has rank 2", 2.0,
       static_cast<double>(numerical_rank(x_state(plus.params))), 0.0);

  const auto eq = verify_rho_sigma_equivalence();
  push("lu_equiv", "explicit local unitaries map rho* to sigma", 0.0,
       eq.residual, 1e-12);
  push("sigma_discord", "discord of sigma equals 1/4", 0.25,
       geometric_discord(sigma_star()), 1e-12);

  // Werner family: discord w^2, separability boundary at w = 1/3.
  double werner_dev = 0.0;
  double last_separable = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double w = i / 100.0;
    const DensityMatrix rho = werner(w);
    werner_dev = std::max(werner_dev,
                          std::abs(geometric_discord(rho) - w * w));
    if (is_separable(rho)) last_separable = w;
  }
  push("werner_family", "Werner discord equals w^2 on a 101-point grid", 0.0,
       werner_dev, 1e-12);
  push("werner_boundary", "Werner separability flips at w = 1/3",
       1.0 / 3.0, last_separable, 1.0 / 100.0);

  // rho_epsilon family: discord 1 - eps, entangled throughout.
  double eps_dev = 0.0;
  double max_min_pt = -1.0;
  for (int i = 0; i <= 75; ++i) {
    const double eps = 0.01 * i;
    const DensityMatrix rho = rho_epsilon(eps);
    eps_dev = std::max(eps_dev,
                       std::abs(geometric_discord(rho) - (1.0 - eps)));
    max_min_pt = std::max(max_min_pt, min_pt_eigenvalue(rho));
  }
  push("rho_eps_family", "rho_epsilon discord equals 1 - eps on [0, 3/4]",
       0.0, eps_dev, 1e-10);
  claims.push_back(Claim{"rho_eps_entangled",
                         "rho_epsilon stays entangled on [0, 3/4]", -1.0,
                         max_min_pt, 0.0, max_min_pt < 0.0});

  // Appendix maximization.
  const MaximizeResult mr = maximize_f();
  push("appendix_k", "scalar maximization lands on k = 1", 1.0, mr.k_star,
       1e-8);
  push("appendix_f", "maximum of f equals 1/8", 0.125, mr.f_star, 1e-12);

  // Fourth derivative at the flat maximum via a 7-point central stencil.
  {
    const double h = 0.01;
    const double c[7] = {-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0};
    double acc = 0.0;
    for (int i = -3; i <= 3; ++i)
      acc += c[i + 3] * f_appendix(1.0 + i * h);
    const double f4 = acc / (6.0 * h * h * h * h);
    push("appendix_f4", "f''''(1) equals -3/16", -0.1875, f4, 1e-5);
  }

  // Simplex lemma: the stated interior value 2/9. The faithful grid maximum
  // is 1/4 (boundary point (0, 1/2, 1/2)), so this claim fails as published;
  // the downstream conclusion (bound < 1/2) is unaffected.
  push("prop2_bound", "simplex lemma maximum equals 2/9",
       2.0 / 9.0, prop2_simplex_oracle(300), 2e-3);

  // Brute-force grid over the separable X polytope stays at/below 1/4.
  const GridCertifyResult gc = grid_certify(40, GridMode::full);
  claims.push_back(Claim{"grid_bound",
                         "separable X-state grid max lies in [0.24, 0.25]",
                         0.25, gc.max_found, 0.0,
                         gc.max_found >= 0.24 &&
                             gc.max_found <= 0.25 + 1e-12});

  // Correlation diagnostics of the extremal state.
  const BlochForm bs = to_bloch(rho_star());
  push("rho_star_t_norm", "||T||_tr of rho* equals 1/sqrt(2)",
       1.0 / std::numbers::sqrt2, t_trace_norm(bs), 1e-12);
  push("rho_star_chsh", "CHSH M of rho* equals 1/2", 0.5, chsh_M(bs), 1e-12);

  push("bell_discord", "discord of a Bell state equals 1", 1.0,
       geometric_discord(bell_phi_plus()), 1e-12);

  return claims;
}

int cmd_reproduce(const GlobalOptions& g) {
  const auto claims = run_claims();
  bool all_pass = true;
  for (const auto& c : claims) all_pass = all_pass && c.pass;

  if (g.format == "json") {
    json rows = json::array();
    for (const auto& c : claims)
      rows.push_back({{"id", c.id},
                      {"description", c.description},
                      {"expected", c.expected},
                      {"computed", c.computed},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    std::cout << json{{"claims", rows}, {"all_pass", all_pass}}.dump(2)
              << "\n";
  } else if (g.format == "csv") {
    std::cout << "claim,expected,computed,tolerance,pass\n";
    for (const auto& c : claims)
      std::cout << c.id << ',' << qgd::fmt17(c.expected) << ','
                << qgd::fmt17(c.computed) << ',' << qgd::fmt17(c.tolerance)
                << ',' << (c.pass ? 1 : 0) << "\n";
  } else {
    std::printf("%-18s %-52s %-24s %-24s %s\n", "claim", "description",
                "expected", "computed", "status");
    for (const auto& c : claims)
      std::printf("%-18s %-52s %-24s %-24s %s\n", c.id.c_str(),
                  c.description.c_str(), qgd::fmt17(c.expected).c_str(),
                  qgd::fmt17(c.computed).c_str(), c.pass ? "pass" : "FAIL");
    std::printf("%zu/%zu claims pass\n",
                static_cast<std::size_t>(
                    std::count_if(claims.begin(), claims.end(),
                                  [](const Claim& c) { return c.pass; })),
                claims.size());
  }
  return all_pass ? kExitOk : kExitClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit geometric-discord workbench"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--tol", g.tol, "separability / rank tolerance")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
  app.add_option("--format", g.format, "output format: json, csv, or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--threads", g.threads,
                 "worker threads (0 = hardware concurrency)")
      ->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "analyze a single state");
  std::string in_path = "-";
  analyze->add_option("--in", in_path,
                      "state spec JSON file ('-' for stdin)");

  auto* sweep = app.add_subcommand("sweep", "sweep a one-parameter family");
  std::string family;
  double lo = 0.0, hi = 1.0;
  int steps = 101;
  std::string sweep_out;
  sweep->add_option("family", family,
                    "werner | rho_epsilon | appendix_k")
      ->required();
  sweep->add_option("--lo", lo, "lower end of the parameter range")
      ->capture_default_str();
  sweep->add_option("--hi", hi, "upper end of the parameter range")
      ->capture_default_str();
  sweep->add_option("--steps", steps, "number of grid points")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "output CSV path ('-' for stdout)");

  auto* search = app.add_subcommand("search", "random-restart separable search");
  std::uint64_t seeds = 100;
  int terms = 6, iters = 500;
  double step0 = 0.1, gap_threshold = 1e-6;
  std::string search_out, warm_start;
  search->add_option("--seeds", seeds, "number of seeds (from --seed upward)")
      ->capture_default_str();
  search->add_option("--terms", terms, "product terms per ensemble")
      ->capture_default_str();
  search->add_option("--iters", iters, "refinement cycles (0 = raw samples)")
      ->capture_default_str();
  search->add_option("--step", step0, "initial refinement step")
      ->capture_default_str();
  search->add_option("--out", search_out,
                     "artifact prefix (writes PREFIX.csv and PREFIX.json)");
  search->add_option("--warm-start", warm_start,
                     "ensemble JSON refined alongside the random seeds");
  search->add_option("--gap-threshold", gap_threshold,
                     "flag records with gap < -threshold (diagnostic)")
      ->capture_default_str();

  auto* reproduce =
      app.add_subcommand("reproduce", "check the headline analytic claims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(g, in_path);
    if (sweep->parsed())
      return cmd_sweep(g, family, lo, hi, steps, sweep_out);
    if (search->parsed())
      return cmd_search(g, seeds, terms, iters, step0, search_out, warm_start,
                        gap_threshold);
    if (reproduce->parsed()) return cmd_reproduce(g);
  } catch (const qgd::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qgd::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const qgd::Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
