#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsn/coefficients.hpp"
#include "hsn/grids.hpp"
#include "hsn/halfspace.hpp"
#include "hsn/io.hpp"
#include "hsn/norms.hpp"
#include "hsn/verify.hpp"

namespace {

using namespace hsn;

constexpr double kTwoPi = 6.28318530717958647692;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIllPosed = 2;
constexpr int kExitVerify = 3;

struct RunConfig {
  std::string op = "special";  // special | biharmonic_rho | path to tensor JSON
  int n = 1;
  int m = 1;
  double rho = 0.0;
  double xi_min = 1e-3;
  double xi_max = 10.0;
  int radial = 24;
  int angular = 8;
  double rtol = 1e-9;
  double root_tol = 1e-7;
  double quad_tol = 1e-9;
  double cond_max = 1e12;
  unsigned long long seed = 1234;
  std::string out = "out";

  std::string problem = "neumann_L2";  // solve
  std::string suite = "rellich";       // verify
  int trials = 0;                      // 0 = suite default
  double rho_min = -4.0;               // sweep
  double rho_max = 2.0;
  int steps = 121;
};

void apply_config_file(RunConfig& cfg, const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(path));
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": config parse error: " + e.what());
  }
  for (const auto& [key, val] : doc.items()) {
    if (key == "operator") cfg.op = val.get<std::string>();
    else if (key == "n") cfg.n = val.get<int>();
    else if (key == "m") cfg.m = val.get<int>();
    else if (key == "rho") cfg.rho = val.get<double>();
    else if (key == "xi_min") cfg.xi_min = val.get<double>();
    else if (key == "xi_max") cfg.xi_max = val.get<double>();
    else if (key == "radial") cfg.radial = val.get<int>();
    else if (key == "angular") cfg.angular = val.get<int>();
    else if (key == "rtol") cfg.rtol = val.get<double>();
    else if (key == "root_tol") cfg.root_tol = val.get<double>();
    else if (key == "quad_tol") cfg.quad_tol = val.get<double>();
    else if (key == "cond_max") cfg.cond_max = val.get<double>();
    else if (key == "seed") cfg.seed = val.get<unsigned long long>();
    else if (key == "out") cfg.out = val.get<std::string>();
    else if (key == "problem") cfg.problem = val.get<std::string>();
    else if (key == "suite") cfg.suite = val.get<std::string>();
    else if (key == "trials") cfg.trials = val.get<int>();
    else if (key == "rho_min") cfg.rho_min = val.get<double>();
    else if (key == "rho_max") cfg.rho_max = val.get<double>();
    else if (key == "steps") cfg.steps = val.get<int>();
    else throw std::invalid_argument(path + ": unknown config key '" + key + "'");
  }
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1) throw std::invalid_argument("n and m must be >= 1");
  if (!(cfg.xi_min > 0) || !(cfg.xi_max >= cfg.xi_min))
    throw std::invalid_argument("need 0 < xi_min <= xi_max");
  if (cfg.radial < 1 || cfg.angular < 1)
    throw std::invalid_argument("grid counts must be >= 1");
  if (!(cfg.rtol > 0) || !(cfg.root_tol > 0) || !(cfg.quad_tol > 0) || !(cfg.cond_max > 0))
    throw std::invalid_argument("tolerances must be positive");
}

Json config_json(const RunConfig& cfg, const std::string& command) {
  Json j = Json::object();
  j["command"] = Json::string(command);
  j["operator"] = Json::string(cfg.op);
  j["n"] = Json::integer(cfg.n);
  j["m"] = Json::integer(cfg.m);
  j["rho"] = Json::number(cfg.rho);
  j["xi_min"] = Json::number(cfg.xi_min);
  j["xi_max"] = Json::number(cfg.xi_max);
  j["radial"] = Json::integer(cfg.radial);
  j["angular"] = Json::integer(cfg.angular);
  j["rtol"] = Json::number(cfg.rtol);
  j["root_tol"] = Json::number(cfg.root_tol);
  j["quad_tol"] = Json::number(cfg.quad_tol);
  j["cond_max"] = Json::number(cfg.cond_max);
  j["seed"] = Json::integer(static_cast<long long>(cfg.seed));
  j["out"] = Json::string(cfg.out);
  j["problem"] = Json::string(cfg.problem);
  j["suite"] = Json::string(cfg.suite);
  j["trials"] = Json::integer(cfg.trials);
  j["rho_min"] = Json::number(cfg.rho_min);
  j["rho_max"] = Json::number(cfg.rho_max);
  j["steps"] = Json::integer(cfg.steps);
  return j;
}

/// Builds the operator and records any file input hash; for file operators
/// n and m are taken from the file.
CoefTensor resolve_operator(RunConfig& cfg,
                            std::vector<std::pair<std::string, std::string>>& hashes) {
  if (cfg.op == "special") return make_special_operator(cfg.n, cfg.m);
  if (cfg.op == "biharmonic_rho") {
    cfg.m = 2;
    return make_biharmonic_rho(cfg.n, cfg.rho);
  }
  const CoefTensor t = read_tensor(cfg.op);
  hashes.emplace_back(cfg.op, fnv1a64_hex(read_text(cfg.op)));
  cfg.n = t.n;
  cfg.m = t.m;
  return t;
}

std::vector<Eigen::VectorXd> sweep_frequencies(const RunConfig& cfg) {
  const std::vector<Eigen::VectorXd> dirs = sphere_samples(cfg.n, cfg.angular);
  const double radii[3] = {cfg.xi_min, std::sqrt(cfg.xi_min * cfg.xi_max), cfg.xi_max};
  std::vector<Eigen::VectorXd> out;
  for (const Eigen::VectorXd& d : dirs)
    for (double r : radii) out.push_back(r * d);
  return out;
}

void write_outputs(const RunConfig& cfg, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& hashes) {
  write_text(cfg.out + "/manifest.json", make_manifest(config_json(cfg, command), hashes).dump());
}

int cmd_solve(RunConfig cfg, const std::string& data_path) {
  std::vector<std::pair<std::string, std::string>> hashes;
  const CoefTensor A = resolve_operator(cfg, hashes);
  const std::string raw = read_text(data_path);
  hashes.emplace_back(data_path, fnv1a64_hex(raw));
  const FrequencyField data = read_frequency_field(data_path, A.m, A.n);
  validate_field(data);

  SolveOptions opt;
  opt.rtol = cfg.rtol;
  opt.cond_max = cfg.cond_max;
  opt.root_tol = cfg.root_tol;
  const bool dirichlet = cfg.problem == "dirichlet";
  if (!dirichlet && cfg.problem != "neumann_L2" && cfg.problem != "neumann_rough")
    throw std::invalid_argument("unknown problem '" + cfg.problem + "'");
  const FieldSolve sol = dirichlet ? solve_dirichlet(A, data, Side::upper, opt)
                                   : solve_neumann(A, data, Side::upper, opt);

  std::filesystem::create_directories(cfg.out);
  write_frequency_field(cfg.out + "/solution.csv", sol.coeffs, "c");

  // Synthesis of the order-0 field on a fixed plot grid: a segment along the
  // first horizontal axis at a ladder of heights.
  std::vector<SpatialPoint> pts;
  const double heights[5] = {0.1, 0.25, 0.5, 1.0, 2.0};
  for (double t : heights) {
    for (int i = 0; i < 33; ++i) {
      SpatialPoint p;
      p.x = Eigen::VectorXd::Zero(cfg.n);
      p.x[0] = -2.0 + 4.0 * i / 32.0;
      p.t = t;
      pts.push_back(p);
    }
  }
  const Synthesis syn = synthesize(A, sol.coeffs, Side::upper, pts, 0, cfg.root_tol);
  std::string csv;
  for (int k = 0; k < cfg.n; ++k) csv += "x_" + std::to_string(k + 1) + ",";
  csv += "t,u_re,u_im\n";
  for (size_t p = 0; p < pts.size(); ++p) {
    for (int k = 0; k < cfg.n; ++k) csv += format_double(pts[p].x[k]) + ",";
    csv += format_double(pts[p].t) + "," + format_double(syn.values(p, 0).real()) + "," +
           format_double(syn.values(p, 0).imag()) + "\n";
  }
  write_text(cfg.out + "/synthesis.csv", csv);

  Json rep = norm_report_json(solution_report(A, sol.coeffs, Side::upper, cfg.root_tol));
  const DataNorms dn = data_norms(data, A.m);
  Json dj = Json::object();
  dj["whitney_L2"] = Json::number(dn.whitney_L2);
  dj["whitney_W1"] = Json::number(dn.whitney_W1);
  dj["besov_half"] = Json::number(dn.besov_half);
  dj["neumann_L2_weighted"] = Json::number(dn.neumann_L2_weighted);
  dj["neumann_Wminus1_weighted"] = Json::number(dn.neumann_Wminus1_weighted);
  rep["data"] = std::move(dj);
  Json sj = Json::object();
  sj["flagged"] = Json::integer(sol.flagged);
  sj["samples"] = Json::integer(data.size());
  double cond_max_seen = 0;
  Json flagged_idx = Json::array();
  for (int i = 0; i < data.size(); ++i) {
    if (sol.ill_posed[i]) flagged_idx.arr.push_back(Json::integer(i));
    else cond_max_seen = std::max(cond_max_seen, sol.cond[i]);
  }
  sj["cond_max_ok"] = Json::number(cond_max_seen);
  sj["flagged_indices"] = std::move(flagged_idx);
  rep["solver"] = std::move(sj);
  write_text(cfg.out + "/norms.json", rep.dump());
  write_outputs(cfg, "solve", hashes);

  if (sol.flagged > 0) {
    std::cerr << "solve: " << sol.flagged << " of " << data.size()
              << " frequencies flagged ill-posed\n";
    return kExitIllPosed;
  }
  return kExitOk;
}

int cmd_sweep(RunConfig cfg) {
  if (cfg.steps < 1) throw std::invalid_argument("sweep needs steps >= 1");
  if (!(cfg.rho_max >= cfg.rho_min))
    throw std::invalid_argument("sweep needs rho_min <= rho_max");
  cfg.m = 2;
  const int n = cfg.n;
  const auto family = [n](double v) { return make_biharmonic_rho(n, v); };
  const SweepReport rep = wellposedness_sweep(family, cfg.rho_min, cfg.rho_max, cfg.steps,
                                              sweep_frequencies(cfg));
  std::filesystem::create_directories(cfg.out);
  write_sweep_csv(cfg.out + "/sweep.csv", rep);
  write_text(cfg.out + "/sweep.json", sweep_report_json(rep).dump());
  std::string zeros = "zero\n";
  for (double z : rep.zeros) zeros += format_double(z) + "\n";
  write_text(cfg.out + "/zeros.csv", zeros);
  write_outputs(cfg, "sweep", {});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify suites

struct SuiteResult {
  bool ok = true;
  Json report = Json::object();
  std::string detail;  // stderr line on failure
};

Eigen::VectorXd draw_frequency(int n, std::mt19937_64& rng) {
  // 2 pi |xi| in [1/2, 2] keeps absolute tolerances meaningful.
  std::uniform_real_distribution<double> u(0.5, 2.0);
  return random_direction(n, rng) * (u(rng) / kTwoPi);
}

void schedule_nm(int trial, int& n, int& m) {
  n = 1 + trial % 2;
  m = 1 + trial % 3;
}

SuiteResult suite_rellich(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 200;
  std::mt19937_64 rng(cfg.seed);
  SuiteResult res;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    int n, m;
    schedule_nm(t, n, m);
    const CoefTensor A = random_selfadjoint_tensor(n, m, 0.3, rng);
    FrequencyField field;
    field.n = n;
    for (int s = 0; s < 2; ++s) {
      FrequencySample sample;
      sample.xi = draw_frequency(n, rng);
      sample.weight = 1.0;
      field.samples.push_back(sample);
      field.payload.push_back(random_complex_vector(m, rng));
    }
    const RellichReport rr = rellich_check(A, field, Side::upper, cfg.root_tol);
    const double floor = -1e-9 * (1.0 + rr.rhs);
    worst = std::min(worst, rr.margin);
    if (!(rr.margin >= floor)) {
      res.ok = false;
      res.detail = "rellich: trial " + std::to_string(t) + " margin " +
                   format_double(rr.margin) + " below floor " + format_double(floor) +
                   " at xi = [" + format_double(field.samples[0].xi[0]) + ", ...]";
    }
  }
  res.report["trials"] = Json::integer(trials);
  res.report["worst_margin"] = Json::number(worst);
  res.report["pass"] = Json::boolean(res.ok);
  return res;
}

SuiteResult suite_jumps(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 50;
  std::mt19937_64 rng(cfg.seed);
  SuiteResult res;
  double w_single = 0, w_double = 0;
  for (int t = 0; t < trials; ++t) {
    int n, m;
    schedule_nm(t, n, m);
    const CoefTensor A = random_tensor(n, m, 0.3, rng);
    const Eigen::VectorXd xi = draw_frequency(n, rng);
    const NeumannVector g = random_complex_vector(m, rng);
    const TraceVector f = random_complex_vector(m, rng);
    const JumpReport jr = jump_check(A, xi, g, f, cfg.quad_tol);
    w_single = std::max({w_single, jr.single_trace, jr.single_conormal});
    w_double = std::max({w_double, jr.double_trace, jr.double_conormal});
    if (std::max(jr.single_trace, jr.single_conormal) > 1e-9 ||
        std::max(jr.double_trace, jr.double_conormal) > 1e-6 || !jr.quad_ok) {
      res.ok = false;
      res.detail = "jumps: trial " + std::to_string(t) + " deviations " +
                   format_double(jr.single_trace) + "/" + format_double(jr.single_conormal) +
                   "/" + format_double(jr.double_trace) + "/" +
                   format_double(jr.double_conormal) + " at xi = [" +
                   format_double(xi[0]) + ", ...]";
    }
  }
  res.report["trials"] = Json::integer(trials);
  res.report["worst_single"] = Json::number(w_single);
  res.report["worst_double"] = Json::number(w_double);
  res.report["pass"] = Json::boolean(res.ok);
  return res;
}

SuiteResult suite_green(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 50;
  std::mt19937_64 rng(cfg.seed);
  SuiteResult res;
  double w_int = 0, w_ext = 0;
  for (int t = 0; t < trials; ++t) {
    int n, m;
    schedule_nm(t, n, m);
    const CoefTensor A = random_tensor(n, m, 0.3, rng);
    const Eigen::VectorXd xi = draw_frequency(n, rng);
    const ModeBasis mb = mode_basis(reduce(A, xi), cfg.root_tol);
    const ModeProfile w = profile_from_coeffs(mb.decaying, random_complex_vector(m, rng));
    const GreenReport gr = green_check(A, xi, w, cfg.quad_tol);
    w_int = std::max(w_int, gr.interior);
    w_ext = std::max(w_ext, gr.exterior);
    if (gr.interior > 1e-6 || gr.exterior > 1e-6 || !gr.quad_ok) {
      res.ok = false;
      res.detail = "green: trial " + std::to_string(t) + " interior " +
                   format_double(gr.interior) + " exterior " + format_double(gr.exterior) +
                   " at xi = [" + format_double(xi[0]) + ", ...]";
    }
  }
  res.report["trials"] = Json::integer(trials);
  res.report["worst_interior"] = Json::number(w_int);
  res.report["worst_exterior"] = Json::number(w_ext);
  res.report["pass"] = Json::boolean(res.ok);
  return res;
}

SuiteResult suite_adjoint(const RunConfig& cfg) {
  const int trials = cfg.trials > 0 ? cfg.trials : 50;
  std::mt19937_64 rng(cfg.seed);
  SuiteResult res;
  double w_d = 0, w_s = 0;
  for (int t = 0; t < trials; ++t) {
    int n, m;
    schedule_nm(t, n, m);
    const CoefTensor A = random_tensor(n, m, 0.3, rng);
    const Eigen::VectorXd xi = draw_frequency(n, rng);
    const DualityReport dr =
        duality_check(A, xi, random_complex_vector(m, rng), random_complex_vector(m, rng),
                      random_complex_vector(m, rng), random_complex_vector(m, rng),
                      cfg.quad_tol);
    w_d = std::max(w_d, dr.deviation_double);
    w_s = std::max(w_s, dr.deviation_single);
    if (dr.deviation_double > 1e-6 || dr.deviation_single > 1e-6 || !dr.quad_ok) {
      res.ok = false;
      res.detail = "adjoint: trial " + std::to_string(t) + " deviations " +
                   format_double(dr.deviation_double) + "/" + format_double(dr.deviation_single) +
                   " at xi = [" + format_double(xi[0]) + ", ...]";
    }
  }
  res.report["trials"] = Json::integer(trials);
  res.report["worst_double"] = Json::number(w_d);
  res.report["worst_single"] = Json::number(w_s);
  res.report["pass"] = Json::boolean(res.ok);
  return res;
}

SuiteResult suite_continuation(const RunConfig& cfg) {
  SuiteResult res;
  const int n = cfg.n;
  const std::vector<Eigen::VectorXd> xis = sweep_frequencies(cfg);
  const CoefTensor base = make_special_operator(n, 2);
  const ContinuationReport good = continuation_certificate(base, make_biharmonic_rho(n, 0.0), xis);
  const ContinuationReport bad = continuation_certificate(base, make_biharmonic_rho(n, 1.0), xis);
  res.ok = good.success && !bad.success;
  auto rj = [](const ContinuationReport& r) {
    Json j = Json::object();
    j["success"] = Json::boolean(r.success);
    j["failure_point"] = Json::number(r.failure_point);
    Json steps = Json::array();
    for (double s : r.steps) steps.arr.push_back(Json::number(s));
    j["steps"] = std::move(steps);
    return j;
  };
  res.report["to_rho_0"] = rj(good);
  res.report["to_rho_1"] = rj(bad);
  res.report["pass"] = Json::boolean(res.ok);
  if (!res.ok)
    res.detail = "continuation: expected success to rho=0 (got " +
                 std::string(good.success ? "success" : "failure") +
                 ") and failure to rho=1 (got " +
                 std::string(bad.success ? "success" : "failure") + ")";
  return res;
}

SuiteResult suite_norms(const RunConfig& cfg) {
  const int extra = cfg.trials > 0 ? cfg.trials : 10;
  std::mt19937_64 rng(cfg.seed);
  SuiteResult res;
  std::vector<CoefTensor> tensors;
  tensors.push_back(make_special_operator(cfg.n, cfg.m));
  for (int t = 0; t < extra; ++t)
    tensors.push_back(random_selfadjoint_tensor(cfg.n, cfg.m, 0.3, rng));

  Json all = Json::array();
  double worst_spread = 0;
  for (size_t k = 0; k < tensors.size(); ++k) {
    const CoefTensor& A = tensors[k];
    std::vector<double> ratios;
    for (int refine = 0; refine < 3; ++refine) {
      GridConfig gc;
      gc.xi_min = cfg.xi_min;
      gc.xi_max = cfg.xi_max;
      gc.radial = cfg.radial << refine;
      gc.angular = cfg.angular << refine;
      FrequencyField data;
      data.n = A.n;
      data.samples = frequency_grid(A.n, gc);
      for (const FrequencySample& s : data.samples) {
        const double r = s.xi.norm();
        Eigen::VectorXcd g(A.m);
        for (int l = 0; l < A.m; ++l) g[l] = std::exp(-r - 1.0 / r) * std::pow(cplx(0.8, 0.6), l);
        data.payload.push_back(g);
      }
      SolveOptions opt;
      opt.rtol = cfg.rtol;
      opt.cond_max = cfg.cond_max;
      opt.root_tol = cfg.root_tol;
      const FieldSolve sol = solve_neumann(A, data, Side::upper, opt);
      if (sol.flagged > 0) {
        res.ok = false;
        res.detail = "norms: tensor " + std::to_string(k) + " flagged frequencies";
      }
      ratios.push_back(uniqueness_estimate(A, sol.coeffs, Side::upper, cfg.root_tol));
    }
    const double mean = (ratios[0] + ratios[1] + ratios[2]) / 3.0;
    double spread = 0;
    for (double r : ratios) spread = std::max(spread, std::abs(r - mean) / mean);
    worst_spread = std::max(worst_spread, spread);
    Json jk = Json::object();
    jk["tensor"] = Json::integer(static_cast<long long>(k));
    Json rj = Json::array();
    for (double r : ratios) rj.arr.push_back(Json::number(r));
    jk["ratios"] = std::move(rj);
    jk["spread"] = Json::number(spread);
    all.arr.push_back(std::move(jk));
    if (!(spread <= 0.2) || !std::isfinite(mean)) {
      res.ok = false;
      res.detail = "norms: tensor " + std::to_string(k) + " ratio spread " +
                   format_double(spread) + " exceeds 20%";
    }
  }
  res.report["tensors"] = std::move(all);
  res.report["worst_spread"] = Json::number(worst_spread);
  res.report["pass"] = Json::boolean(res.ok);
  return res;
}

int cmd_verify(RunConfig cfg) {
  SuiteResult res;
  if (cfg.suite == "rellich") res = suite_rellich(cfg);
  else if (cfg.suite == "jumps") res = suite_jumps(cfg);
  else if (cfg.suite == "green") res = suite_green(cfg);
  else if (cfg.suite == "adjoint") res = suite_adjoint(cfg);
  else if (cfg.suite == "continuation") res = suite_continuation(cfg);
  else if (cfg.suite == "norms") res = suite_norms(cfg);
  else throw std::invalid_argument("unknown suite '" + cfg.suite + "'");

  std::filesystem::create_directories(cfg.out);
  write_text(cfg.out + "/verify_" + cfg.suite + ".json", res.report.dump());
  write_outputs(cfg, "verify", {});
  if (!res.ok) {
    std::cerr << res.detail << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-frequency solver and verification lab for half-space Neumann problems"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, data_path;
  app.add_option("--config", config_path, "JSON config file; its keys override flags");
  app.add_option("--operator", cfg.op, "special | biharmonic_rho | tensor JSON path");
  app.add_option("--n", cfg.n, "horizontal dimension");
  app.add_option("--m", cfg.m, "operator half-order");
  app.add_option("--rho", cfg.rho, "biharmonic family parameter");
  app.add_option("--xi-min", cfg.xi_min, "smallest |xi| on the grid");
  app.add_option("--xi-max", cfg.xi_max, "largest |xi| on the grid");
  app.add_option("--radial", cfg.radial, "radial grid count");
  app.add_option("--angular", cfg.angular, "angular grid count");
  app.add_option("--rtol", cfg.rtol, "residual tolerance for boundary solves");
  app.add_option("--root-tol", cfg.root_tol, "root clustering tolerance");
  app.add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
  app.add_option("--cond-max", cfg.cond_max, "conditioning ceiling before flagging");
  app.add_option("--seed", cfg.seed, "RNG seed for randomized suites");
  app.add_option("--out", cfg.out, "output directory");

  CLI::App* solve = app.add_subcommand("solve", "solve a boundary problem from a data CSV");
  solve->add_option("data", data_path, "frequency-field CSV")->required();
  solve->add_option("--problem", cfg.problem, "neumann_L2 | neumann_rough | dirichlet");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep of the biharmonic family");
  sweep->add_option("--rho-min", cfg.rho_min, "sweep start");
  sweep->add_option("--rho-max", cfg.rho_max, "sweep end");
  sweep->add_option("--steps", cfg.steps, "sweep sample count");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite,
                     "rellich | jumps | green | adjoint | continuation | norms");
  verify->add_option("--trials", cfg.trials, "trial count (0 = suite default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message or requested help text
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    validate_config(cfg);
    if (solve->parsed()) return cmd_solve(cfg, data_path);
    if (sweep->parsed()) return cmd_sweep(cfg);
    return cmd_verify(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
