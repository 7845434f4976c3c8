// Command-line runner: single experiments, grid sweeps, and offline
// re-verification of result files. Exit code 0 iff all guarantee checks pass.

#include "datr/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int cmd_run(const std::string& problem_name, int q, std::vector<double> eps, double noise_f,
            double noise_d, const std::string& noise_model, std::uint64_t seed, bool global_step,
            const std::string& out, const std::map<std::string, std::string>& overrides,
            const std::vector<double>& x0_list, datr::NoiseParams params, bool timing) {
  const std::vector<datr::ProblemSpec> suite = datr::problem_suite();

  datr::RunRequest req;
  req.problem = &datr::find_problem(suite, problem_name);
  if (eps.empty()) eps = {1e-3};
  if (static_cast<int>(eps.size()) == 1 && q > 1) eps.assign(static_cast<std::size_t>(q), eps[0]);
  if (static_cast<int>(eps.size()) != q)
    throw std::invalid_argument("--eps needs one value, or exactly q values");
  req.cfg = datr::SolverConfig::defaults(q, eps[0]);
  req.cfg.eps = eps;
  datr::apply_config_overrides(req.cfg, overrides);
  req.cfg.enforce_global_step = global_step;
  req.kind = datr::noise_kind_from_string(noise_model);
  req.params = params;
  req.params.theta_f = noise_f;
  req.params.theta_d = noise_d;
  req.seed = seed;
  req.timing = timing;
  if (!x0_list.empty()) {
    datr::Vec x0(static_cast<int>(x0_list.size()));
    for (std::size_t i = 0; i < x0_list.size(); ++i) x0[static_cast<int>(i)] = x0_list[i];
    req.x0_override = std::move(x0);
  }

  const datr::ResultRow row = datr::run_single(req);

  std::cout << "problem:    " << row.problem << " (n=" << req.problem->dimension << ")\n"
            << "status:     " << row.status << "\n"
            << "order:      " << row.order << "\n"
            << "delta:      " << datr::format_double(row.delta) << "\n"
            << "radius:     " << datr::format_double(row.radius) << "\n"
            << "iterations: " << row.iterations << "\n"
            << "f_evals:    " << row.f_evals << "\n"
            << "deriv_evals:" << row.deriv_evals << "\n"
            << "tightenings:" << row.tightenings << "\n"
            << "guarantee:  bound=" << datr::format_double(row.guarantee_bound)
            << " satisfied=" << (row.guarantee_satisfied ? "yes" : "no") << "\n";

  if (!out.empty()) {
    std::map<std::string, std::string> echo = overrides;
    std::string eps_str;
    for (std::size_t i = 0; i < eps.size(); ++i)
      eps_str += (i ? "," : "") + datr::format_double(eps[i]);
    echo["eps"] = eps_str;
    echo["cap_scale"] = datr::format_double(req.params.cap_scale);
    if (req.kind == datr::NoiseKind::quantized) {
      echo["quant_bits"] = std::to_string(req.params.bits);
      echo["quant_mag_f"] = datr::format_double(req.params.mag_f);
      echo["quant_mag_d"] = datr::format_double(req.params.mag_d);
    }
    if (req.x0_override) {
      std::string s;
      for (int i = 0; i < req.x0_override->size(); ++i)
        s += (i ? "," : "") + datr::format_double((*req.x0_override)[i]);
      echo["x0"] = s;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write: " + out);
    datr::write_csv(os, {row}, echo);
  }
  return row.guarantee_satisfied ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noise-aware dynamic-accuracy trust-region experiments"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "solve one problem instance");
  std::string problem, noise_model = "exact", out;
  int q = 1;
  std::vector<double> eps, x0;
  double noise_f = 0.0, noise_d = 0.0;
  std::uint64_t seed = 0;
  bool global_step = false, timing = false;
  datr::NoiseParams params;
  std::map<std::string, std::string> overrides;
  run->add_option("--problem", problem, "problem name")->required();
  run->add_option("--q", q, "optimality order");
  run->add_option("--eps", eps, "accuracy targets (one value or q values)")->delimiter(',');
  run->add_option("--noise-f", noise_f, "function noise floor");
  run->add_option("--noise-d", noise_d, "derivative noise floor");
  run->add_option("--noise-model", noise_model, "exact|bounded|quantized");
  run->add_option("--seed", seed, "noise seed");
  run->add_option("--global-step", global_step, "recompute a global step at the noise gate");
  run->add_option("--out", out, "write a one-row CSV here");
  run->add_option("--x0", x0, "start point override")->delimiter(',');
  run->add_option("--cap-scale", params.cap_scale, "bounded-noise cap, multiples of the floor");
  run->add_option("--quant-bits", params.bits, "quantized significand bits");
  run->add_option("--quant-mag-f", params.mag_f, "quantized |f| magnitude bound");
  run->add_option("--quant-mag-d", params.mag_d, "quantized derivative magnitude bound");
  run->add_flag("--timing", timing, "record wall-clock in the CSV (breaks byte reproducibility)");
  for (const char* key : {"omega", "sigma", "theta", "eta1", "eta2", "gamma1", "gamma2", "gamma3",
                          "gamma_zeta", "Delta0", "Delta_max", "kappa_zeta", "zeta_d0",
                          "max_iterations"}) {
    run->add_option_function<std::string>(
        std::string("--") + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
        std::string("solver config override: ") + key);
  }

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a grid of experiments from a spec file");
  std::string spec_path, sweep_out;
  sweep->add_option("--spec", spec_path, "sweep spec file (key=value)")->required();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "re-check guarantees of a results file");
  std::string results_path;
  verify->add_option("--results", results_path, "results CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(problem, q, eps, noise_f, noise_d, noise_model, seed, global_step, out,
                     overrides, x0, params, timing);
    if (sweep->parsed()) {
      const datr::SweepSpec spec = datr::parse_sweep_spec(spec_path);
      const std::vector<datr::ResultRow> rows = datr::run_sweep(spec, sweep_out);
      long bad = 0;
      for (const datr::ResultRow& r : rows) bad += r.guarantee_satisfied ? 0 : 1;
      std::cout << rows.size() << " rows written to " << sweep_out << ", " << bad
                << " guarantee failures\n";
      return bad == 0 ? 0 : 1;
    }
    if (verify->parsed()) {
      const int failures = datr::verify_results(results_path, std::cout);
      std::cout << (failures == 0 ? "all rows verified\n"
                                  : std::to_string(failures) + " rows failed\n");
      return failures == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
