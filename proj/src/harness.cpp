#include "datr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace datr {

namespace {

constexpr double kGuaranteeSlack = 1.01;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vec clip(const Vec& v, double radius) {
  const double n = v.norm();
  if (n <= radius || n == 0.0) return v;
  return v * (radius / n);
}

// Backtracking projected ascent on the decrement; harness-local so the grid
// oracle shares no search code with the subproblem solver.
double polish(const TaylorModel& m, int j, Vec d, double radius, int iters) {
  d = clip(d, radius);
  double best = decrement(m, j, d);
  double step = 0.1 * radius;
  for (int it = 0; it < iters; ++it) {
    const Vec grad = decrement_gradient(m, j, d);
    const double gn = grad.norm();
    if (gn < 1e-300) break;
    bool moved = false;
    while (step > 1e-16 * radius) {
      const Vec cand = clip(d + (step / gn) * grad, radius);
      const double v = decrement(m, j, cand);
      if (v > best) {
        d = cand;
        best = v;
        moved = true;
        step *= 1.4;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return best;
}

struct TopK {
  static constexpr int kK = 5;
  std::array<double, kK> val;
  std::array<Vec, kK> pt;
  TopK() { val.fill(-std::numeric_limits<double>::infinity()); }
  void offer(double v, const Vec& p) {
    int worst = 0;
    for (int i = 1; i < kK; ++i)
      if (val[i] < val[worst]) worst = i;
    if (v > val[worst]) {
      val[worst] = v;
      pt[worst] = p;
    }
  }
};

TaylorModel exact_model(const ProblemSpec& problem, const Vec& x, int degree) {
  std::vector<DerivTensor> raw;
  raw.reserve(static_cast<std::size_t>(degree));
  for (int l = 1; l <= degree; ++l) raw.push_back(problem.derivative(x, l));
  return model_from_raw(x, problem.value(x), 0.0, raw, 0.0);
}

}  // namespace

double brute_force_phi(const TaylorModel& model, int j, double delta) {
  if (j < 1 || j > model.degree) throw std::invalid_argument("brute_force_phi: order out of range");
  if (!(delta >= 0)) throw std::invalid_argument("brute_force_phi: delta must be >= 0");
  if (delta == 0.0) return 0.0;
  if (j == 1) return delta * model.tensors[0].as_vector().norm();

  const int n = static_cast<int>(model.center.size());
  if (n > 3)
    throw std::invalid_argument("brute_force_phi: dimension <= 3 required for j >= 2");

  TopK top;
  auto offer = [&](const Vec& d) { top.offer(decrement(model, j, d), d); };
  if (n == 1) {
    const int nr = 50000;
    Vec d(1);
    for (int i = 1; i <= nr; ++i) {
      const double r = delta * i / nr;
      d[0] = r;
      offer(d);
      d[0] = -r;
      offer(d);
    }
  } else if (n == 2) {
    const int nr = 200, na = 502;
    Vec d(2);
    for (int i = 1; i <= nr; ++i) {
      const double r = delta * i / nr;
      for (int a = 0; a < na; ++a) {
        const double phi = 2.0 * M_PI * a / na;
        d[0] = r * std::cos(phi);
        d[1] = r * std::sin(phi);
        offer(d);
      }
    }
  } else {
    const int nr = 48, nt = 46, np = 46;
    Vec d(3);
    for (int i = 1; i <= nr; ++i) {
      const double r = delta * i / nr;
      for (int t = 0; t < nt; ++t) {
        const double theta = M_PI * (t + 0.5) / nt;
        for (int f = 0; f < np; ++f) {
          const double phi = 2.0 * M_PI * f / np;
          d[0] = r * std::sin(theta) * std::cos(phi);
          d[1] = r * std::sin(theta) * std::sin(phi);
          d[2] = r * std::cos(theta);
          offer(d);
        }
      }
    }
  }

  double best = 0.0;
  for (int i = 0; i < TopK::kK; ++i)
    if (std::isfinite(top.val[i]))
      best = std::max(best, polish(model, j, top.pt[i], delta, 300));
  return best;
}

double brute_force_phi(const ProblemSpec& problem, const Vec& x, int j, double delta) {
  return brute_force_phi(exact_model(problem, x, j), j, delta);
}

double phi_lower_bound(const ProblemSpec& problem, const Vec& x, int j, double delta, int starts) {
  const TaylorModel model = exact_model(problem, x, j);
  const int n = problem.dimension;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    best = std::max(best, polish(model, j, delta * Vec::Unit(n, i), delta, 200));
    best = std::max(best, polish(model, j, -delta * Vec::Unit(n, i), delta, 200));
  }
  std::mt19937_64 rng(0xabcdefULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < starts; ++s) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    const double vn = v.norm();
    if (vn < 1e-300) continue;
    best = std::max(best, polish(model, j, (delta / vn) * v, delta, 200));
  }
  return best;
}

namespace {

double phi_estimate(const ProblemSpec& problem, const Vec& x, int j, double delta) {
  if (j == 1 || problem.dimension <= 3) return brute_force_phi(problem, x, j, delta);
  return phi_lower_bound(problem, x, j, delta, 64);
}

double order_threshold(const SolverConfig& cfg, int i, double delta) {
  double fact = 1.0;
  for (int l = 2; l <= i; ++l) fact *= l;
  return cfg.eps[static_cast<std::size_t>(i - 1)] * std::pow(delta, i) / fact;
}

}  // namespace

GuaranteeCheck verify_guarantee(const TerminationReport& report, const ProblemSpec& problem) {
  GuaranteeCheck out;
  out.phi.fill(kNaN);
  out.bound = kNaN;
  const SolverConfig& cfg = report.config;
  const int j = report.order;

  if (report.status == TerminationStatus::budget_exhausted ||
      report.status == TerminationStatus::oracle_refused) {
    out.clause = "none";
    out.satisfied = false;
    return out;
  }

  for (int i = 1; i <= std::min(cfg.q, 3); ++i)
    out.phi[static_cast<std::size_t>(i - 1)] =
        phi_estimate(problem, report.x_tilde, i, report.delta);

  bool ok = true;
  // Lower orders always carry the plain accuracy thresholds at radius delta.
  for (int i = 1; i < j; ++i)
    ok = ok && out.phi[static_cast<std::size_t>(i - 1)] <=
                   order_threshold(cfg, i, report.delta) * kGuaranteeSlack;

  switch (report.status) {
    case TerminationStatus::approximate_minimizer: {
      out.clause = "approximate-minimizer";
      for (int i = j; i <= cfg.q; ++i) {
        const double phi_i = i <= 3 ? out.phi[static_cast<std::size_t>(i - 1)]
                                    : phi_estimate(problem, report.x_tilde, i, report.delta);
        ok = ok && phi_i <= order_threshold(cfg, i, report.delta) * kGuaranteeSlack;
      }
      out.bound = order_threshold(cfg, cfg.q, report.delta);
      break;
    }
    case TerminationStatus::in_noise_phi: {
      out.clause = "in-noise-phi";
      out.bound = 4.0 * report.noise.theta_d / (cfg.gamma_zeta * cfg.omega) * report.delta;
      const double phi_j = j <= 3 ? out.phi[static_cast<std::size_t>(j - 1)]
                                  : phi_estimate(problem, report.x_tilde, j, report.delta);
      ok = ok && phi_j <= out.bound * kGuaranteeSlack;
      break;
    }
    case TerminationStatus::in_noise_s: {
      out.clause = "in-noise-s";
      const double nu = report.radius;
      out.bound = 4.0 * report.noise.theta_d / (cfg.gamma_zeta * cfg.omega) *
                  std::max(nu, std::pow(nu, j));
      const double phi_j = phi_estimate(problem, report.x_tilde, j, nu);
      ok = ok && phi_j <= out.bound * kGuaranteeSlack;
      break;
    }
    case TerminationStatus::in_noise_f: {
      out.clause = "in-noise-f";
      if (cfg.enforce_global_step) {
        out.bound = (report.noise.theta_f / cfg.sigma) * (1.0 + 1.0 / cfg.omega);
        const double phi_j = phi_estimate(problem, report.x_tilde, j, report.radius);
        ok = ok && phi_j <= out.bound * kGuaranteeSlack;
      }
      break;
    }
    default:
      break;
  }
  out.satisfied = ok;
  return out;
}

ResultRow run_single(const RunRequest& req) {
  Oracle oracle = make_oracle(*req.problem, req.kind, req.seed, req.params);
  const Vec x0 = req.x0_override ? *req.x0_override : req.problem->x0;
  const auto t0 = std::chrono::steady_clock::now();
  const TerminationReport rep = run_solver(oracle, req.cfg, x0);
  const auto t1 = std::chrono::steady_clock::now();
  const GuaranteeCheck g = verify_guarantee(rep, *req.problem);

  ResultRow row;
  row.problem = req.problem->name;
  row.q = req.cfg.q;
  row.eps_min = *std::min_element(req.cfg.eps.begin(), req.cfg.eps.end());
  row.theta_f = oracle.profile().theta_f;
  row.theta_d = oracle.profile().theta_d;
  row.seed = req.seed;
  row.noise_model = std::string(to_string(req.kind));
  row.global_step = req.cfg.enforce_global_step;
  row.status = std::string(to_string(rep.status));
  row.order = rep.order;
  row.delta = rep.delta;
  row.radius = rep.radius;
  row.iterations = rep.iterations;
  row.f_evals = rep.counters.f_evals;
  row.deriv_evals = rep.counters.deriv_evals;
  row.tightenings = rep.counters.accuracy_tightenings;
  row.phi_bf = g.phi;
  row.guarantee_bound = g.bound;
  row.guarantee_satisfied = g.satisfied;
  const BoundRecord b = theoretical_bounds(
      req.cfg, problem_constants(*req.problem, x0, req.cfg.q), oracle.profile());
  row.bound_f_evals = b.f_evals_named;
  row.bound_deriv_evals = b.deriv_evals_named;
  row.runtime_ms =
      req.timing
          ? std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count()
          : 0.0;
  return row;
}

namespace {

const std::vector<std::string>& solver_config_keys() {
  static const std::vector<std::string> keys = {
      "eps",        "omega",      "sigma",      "theta",          "eta1",
      "eta2",       "gamma1",     "gamma2",     "gamma3",         "gamma_zeta",
      "Delta0",     "Delta_max",  "kappa_zeta", "zeta_d0",        "enforce_global_step",
      "max_iterations"};
  return keys;
}

bool is_solver_key(const std::string& k) {
  const auto& keys = solver_config_keys();
  return std::find(keys.begin(), keys.end(), k) != keys.end();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s) {
  return std::strtod(s.c_str(), nullptr);
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ','))
    if (!trim(tok).empty()) out.push_back(parse_double(trim(tok)));
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("cannot parse boolean: " + s);
}

}  // namespace

void apply_config_overrides(SolverConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "eps") {
      cfg.eps = parse_double_list(value);
      cfg.q = static_cast<int>(cfg.eps.size());
    } else if (key == "omega") cfg.omega = parse_double(value);
    else if (key == "sigma") cfg.sigma = parse_double(value);
    else if (key == "theta") cfg.theta = parse_double(value);
    else if (key == "eta1") cfg.eta1 = parse_double(value);
    else if (key == "eta2") cfg.eta2 = parse_double(value);
    else if (key == "gamma1") cfg.gamma1 = parse_double(value);
    else if (key == "gamma2") cfg.gamma2 = parse_double(value);
    else if (key == "gamma3") cfg.gamma3 = parse_double(value);
    else if (key == "gamma_zeta") cfg.gamma_zeta = parse_double(value);
    else if (key == "Delta0") cfg.Delta0 = parse_double(value);
    else if (key == "Delta_max") cfg.Delta_max = parse_double(value);
    else if (key == "kappa_zeta") cfg.kappa_zeta = parse_double(value);
    else if (key == "zeta_d0") cfg.zeta_d0 = parse_double(value);
    else if (key == "enforce_global_step") cfg.enforce_global_step = parse_bool(value);
    else if (key == "max_iterations") cfg.max_iterations = std::stol(value);
    else throw std::invalid_argument("unknown solver config key: " + key);
  }
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed config line: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

SweepSpec parse_sweep_spec(const std::string& path) {
  const auto kv = parse_kv_file(path);
  SweepSpec spec;
  for (const auto& [key, value] : kv) {
    if (key == "problems") {
      for (const std::string& tok : split(value, ','))
        if (!trim(tok).empty()) spec.problems.push_back(trim(tok));
    } else if (key == "q") spec.q = std::stoi(value);
    else if (key == "eps_grid") spec.eps_grid = parse_double_list(value);
    else if (key == "theta_f_grid") spec.theta_f_grid = parse_double_list(value);
    else if (key == "theta_d_grid") spec.theta_d_grid = parse_double_list(value);
    else if (key == "seeds") {
      spec.seeds.clear();
      for (const std::string& tok : split(value, ','))
        if (!trim(tok).empty()) spec.seeds.push_back(std::stoull(trim(tok)));
    } else if (key == "noise_model") spec.noise_model = noise_kind_from_string(value);
    else if (key == "global_step") spec.global_step = parse_bool(value);
    else if (key == "timing") spec.timing = parse_bool(value);
    else if (key == "threads") spec.threads = std::stoi(value);
    else if (key == "cap_scale") spec.noise_params.cap_scale = parse_double(value);
    else if (key == "quant_bits") spec.noise_params.bits = std::stoi(value);
    else if (key == "quant_mag_f") spec.noise_params.mag_f = parse_double(value);
    else if (key == "quant_mag_d") spec.noise_params.mag_d = parse_double(value);
    else if (is_solver_key(key)) spec.config_overrides[key] = value;
    else throw std::invalid_argument("unknown sweep key: " + key);
  }
  if (spec.problems.empty()) throw std::invalid_argument("sweep spec: problems must be non-empty");
  if (spec.eps_grid.empty()) throw std::invalid_argument("sweep spec: eps_grid must be non-empty");
  if (spec.theta_f_grid.empty() || spec.theta_d_grid.empty() || spec.seeds.empty())
    throw std::invalid_argument("sweep spec: grids must be non-empty");
  return spec;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

const char* kHeader =
    "problem,q,eps_min,theta_f,theta_d,seed,noise_model,global_step,status,order,delta,radius,"
    "iterations,f_evals,deriv_evals,tightenings,phi_bf_1,phi_bf_2,phi_bf_3,guarantee_bound,"
    "guarantee_satisfied,bound_f_evals,bound_deriv_evals,runtime_ms";

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows,
               const std::map<std::string, std::string>& config_echo) {
  os << "schema=1\n";
  for (const auto& [k, v] : config_echo) os << "# config " << k << "=" << v << "\n";
  os << kHeader << "\n";
  for (const ResultRow& r : rows) {
    os << r.problem << ',' << r.q << ',' << format_double(r.eps_min) << ','
       << format_double(r.theta_f) << ',' << format_double(r.theta_d) << ',' << r.seed << ','
       << r.noise_model << ',' << (r.global_step ? 1 : 0) << ',' << r.status << ',' << r.order
       << ',' << format_double(r.delta) << ',' << format_double(r.radius) << ',' << r.iterations
       << ',' << r.f_evals << ',' << r.deriv_evals << ',' << r.tightenings << ','
       << format_double(r.phi_bf[0]) << ',' << format_double(r.phi_bf[1]) << ','
       << format_double(r.phi_bf[2]) << ',' << format_double(r.guarantee_bound) << ','
       << (r.guarantee_satisfied ? 1 : 0) << ',' << format_double(r.bound_f_evals) << ','
       << format_double(r.bound_deriv_evals) << ',' << format_double(r.runtime_ms) << "\n";
  }
}

CsvFile read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  CsvFile file;
  std::string line;
  if (!std::getline(in, line) || trim(line) != "schema=1")
    throw std::runtime_error("results file: missing schema=1 line");
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("# config ", 0) == 0) {
      const std::string kvs = line.substr(9);
      const std::size_t eq = kvs.find('=');
      if (eq == std::string::npos) throw std::runtime_error("malformed config echo: " + line);
      file.config_echo[trim(kvs.substr(0, eq))] = trim(kvs.substr(eq + 1));
      continue;
    }
    if (trim(line).empty()) continue;
    if (!header_seen) {
      if (trim(line) != kHeader) throw std::runtime_error("results file: unexpected header");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split(trim(line), ',');
    if (f.size() != 24) throw std::runtime_error("results file: bad row: " + line);
    ResultRow r;
    r.problem = f[0];
    r.q = std::stoi(f[1]);
    r.eps_min = parse_double(f[2]);
    r.theta_f = parse_double(f[3]);
    r.theta_d = parse_double(f[4]);
    r.seed = std::stoull(f[5]);
    r.noise_model = f[6];
    r.global_step = f[7] == "1";
    r.status = f[8];
    r.order = std::stoi(f[9]);
    r.delta = parse_double(f[10]);
    r.radius = parse_double(f[11]);
    r.iterations = std::stol(f[12]);
    r.f_evals = std::stol(f[13]);
    r.deriv_evals = std::stol(f[14]);
    r.tightenings = std::stol(f[15]);
    r.phi_bf = {parse_double(f[16]), parse_double(f[17]), parse_double(f[18])};
    r.guarantee_bound = parse_double(f[19]);
    r.guarantee_satisfied = f[20] == "1";
    r.bound_f_evals = parse_double(f[21]);
    r.bound_deriv_evals = parse_double(f[22]);
    r.runtime_ms = parse_double(f[23]);
    file.rows.push_back(std::move(r));
  }
  if (!header_seen) throw std::runtime_error("results file: no header");
  return file;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const std::string& out_path) {
  const std::vector<ProblemSpec> suite = problem_suite();
  std::vector<RunRequest> reqs;
  for (const std::string& pname : spec.problems) {
    const ProblemSpec& problem = find_problem(suite, pname);
    for (double eps : spec.eps_grid)
      for (double tf : spec.theta_f_grid)
        for (double td : spec.theta_d_grid)
          for (std::uint64_t seed : spec.seeds) {
            RunRequest req;
            req.problem = &problem;
            req.cfg = SolverConfig::defaults(spec.q, eps);
            apply_config_overrides(req.cfg, spec.config_overrides);
            req.cfg.enforce_global_step = spec.global_step;
            req.kind = spec.noise_model;
            req.params = spec.noise_params;
            req.params.theta_f = tf;
            req.params.theta_d = td;
            req.seed = seed;
            req.timing = spec.timing;
            reqs.push_back(std::move(req));
          }
  }

  std::vector<ResultRow> rows(reqs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= reqs.size()) return;
      try {
        rows[i] = run_single(reqs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_threads = std::min<std::size_t>(
      reqs.size(), spec.threads > 0 ? static_cast<unsigned>(spec.threads) : hw);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  if (!out_path.empty()) {
    std::map<std::string, std::string> echo = spec.config_overrides;
    echo["cap_scale"] = format_double(spec.noise_params.cap_scale);
    if (spec.noise_model == NoiseKind::quantized) {
      echo["quant_bits"] = std::to_string(spec.noise_params.bits);
      echo["quant_mag_f"] = format_double(spec.noise_params.mag_f);
      echo["quant_mag_d"] = format_double(spec.noise_params.mag_d);
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write: " + out_path);
    write_csv(os, rows, echo);
  }
  return rows;
}

int verify_results(const std::string& path, std::ostream& os) {
  const CsvFile file = read_csv(path);
  const std::vector<ProblemSpec> suite = problem_suite();

  std::map<std::string, std::string> solver_overrides;
  NoiseParams base_params;
  std::optional<Vec> x0_override;
  for (const auto& [k, v] : file.config_echo) {
    if (is_solver_key(k)) solver_overrides[k] = v;
    else if (k == "cap_scale") base_params.cap_scale = parse_double(v);
    else if (k == "quant_bits") base_params.bits = std::stoi(v);
    else if (k == "quant_mag_f") base_params.mag_f = parse_double(v);
    else if (k == "quant_mag_d") base_params.mag_d = parse_double(v);
    else if (k == "x0") {
      const std::vector<double> xs = parse_double_list(v);
      Vec x0(static_cast<int>(xs.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) x0[static_cast<int>(i)] = xs[i];
      x0_override = std::move(x0);
    }
  }

  int failures = 0;
  for (std::size_t i = 0; i < file.rows.size(); ++i) {
    const ResultRow& row = file.rows[i];
    RunRequest req;
    req.problem = &find_problem(suite, row.problem);
    req.cfg = SolverConfig::defaults(row.q, row.eps_min);
    apply_config_overrides(req.cfg, solver_overrides);
    req.cfg.enforce_global_step = row.global_step;
    req.kind = noise_kind_from_string(row.noise_model);
    req.params = base_params;
    req.params.theta_f = row.theta_f;
    req.params.theta_d = row.theta_d;
    req.seed = row.seed;
    req.x0_override = x0_override;

    std::string reason;
    try {
      const ResultRow fresh = run_single(req);
      if (fresh.status != row.status) reason = "status changed to " + fresh.status;
      else if (fresh.order != row.order) reason = "order changed";
      else if (fresh.iterations != row.iterations || fresh.f_evals != row.f_evals ||
               fresh.deriv_evals != row.deriv_evals || fresh.tightenings != row.tightenings)
        reason = "counters changed";
      else if (!fresh.guarantee_satisfied) reason = "guarantee check failed";
    } catch (const std::exception& e) {
      reason = std::string("error: ") + e.what();
    }
    if (reason.empty()) {
      os << "row " << i << " " << row.problem << " " << row.status << ": ok\n";
    } else {
      os << "row " << i << " " << row.problem << " " << row.status << ": FAIL (" << reason
         << ")\n";
      ++failures;
    }
  }
  return failures;
}

}  // namespace datr
