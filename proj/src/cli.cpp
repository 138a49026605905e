#include "hsl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "hsl/asymptotics.hpp"
#include "hsl/bump.hpp"
#include "hsl/grids.hpp"
#include "hsl/scalar_ground_state.hpp"
#include "hsl/system_ground_state.hpp"

#ifndef HSL_VERSION
#define HSL_VERSION "0.0.0"
#endif

namespace hsl::cli {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int exit_status(ErrorCode code) { return 10 + static_cast<int>(code); }

std::vector<double> parse_alphas(const std::string& text) {
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "bad number in alpha list: '" + s + "'");
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) fail(ErrorCode::InvalidArgument, "alpha range must be lo:step:hi");
    const double lo = num(parts[0]), step = num(parts[1]), hi = num(parts[2]);
    if (!(step > 0.0) || !(hi >= lo)) fail(ErrorCode::InvalidArgument, "alpha range needs step > 0 and hi >= lo");
    for (int k = 0;; ++k) {
      const double a = lo + k * step;
      if (a > hi + 1e-9 * step) break;
      out.push_back(a);
    }
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(num(p));
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "empty alpha list");
  return out;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_region_csv(std::ostream& os, const ProblemSpec& spec, double pq_max, int steps) {
  if (!(pq_max > 2.0) || steps < 2) fail(ErrorCode::InvalidArgument, "region needs pq_max > 2 and steps >= 2");
  os << "P,Q,gap,side\n";
  ProblemSpec s = spec;
  for (int i = 1; i <= steps; ++i) {
    for (int j = 1; j <= steps; ++j) {
      const double P = 2.0 + (pq_max - 2.0) * i / steps;
      const double Q = 2.0 + (pq_max - 2.0) * j / steps;
      s.p = P - 1.0;
      s.q = Q - 1.0;
      const auto rep = classify_point(s);
      os << fmt(P) << ',' << fmt(Q) << ',' << fmt(rep.gap) << ',' << to_string(rep.side) << '\n';
    }
  }
}

namespace {

struct Config {
  std::string command;
  int N = 3;
  double p = 2.0, q = 2.0, alpha = 0.0, beta = 0.0;
  int grid = 0, grid_theta = 0;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  // command specific
  std::string init = "multi";
  std::string alphas = "0:25:200";
  double delta = 0.02, lo = 0.0, hi = 400.0, step = 25.0;
  bool no_refine = false;
  std::string kind = "scalar";
  std::optional<double> alpha_min, alpha_max;
  double eps_min = 1e-6;
  std::string csv;
  bool q_given = false;
  std::string u_path, v_path;
  double lambda = 1.0, residual_tol = 1e-3, margin = 0.02;
  double pq_max = 12.0;
  int region_steps = 100;

  json to_json() const {
    json j{{"command", command}, {"N", N},          {"p", p},       {"q", q},
           {"alpha", alpha},     {"beta", beta},    {"grid", grid}, {"grid_theta", grid_theta},
           {"tol", tol ? json(*tol) : json()},      {"seed", seed}, {"jobs", jobs}};
    if (command == "solve-scalar") j["init"] = init;
    if (command == "scan") j["alphas"] = alphas;
    if (command == "alpha-star") {
      j["delta"] = delta;
      j["lo"] = lo;
      j["hi"] = hi;
      j["step"] = step;
      j["refine"] = !no_refine;
    }
    if (command == "asymptotics") {
      j["kind"] = kind;
      j["alpha_min"] = alpha_min ? json(*alpha_min) : json();
      j["alpha_max"] = alpha_max ? json(*alpha_max) : json();
      j["eps_min"] = eps_min;
      j["csv"] = csv;
      if (kind == "dominated" && !q_given) j["q"] = 4.0;
    }
    if (command == "pohozaev") {
      j["u"] = u_path;
      j["v"] = v_path;
      j["lambda"] = lambda;
      j["residual_tol"] = residual_tol;
    }
    if (command == "solve-system") j["margin"] = margin;
    if (command == "classify") {
      j["pq_max"] = pq_max;
      j["region_steps"] = region_steps;
    }
    return j;
  }
};

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err) {
    if (const char* v = std::getenv("HSL_LOG")) {
      const std::string s(v);
      if (s == "1" || s == "info") level_ = 1;
      if (s == "2" || s == "debug") level_ = 2;
    }
  }
  void info(const std::string& msg) const {
    if (level_ >= 1) err_ << "[hsl] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ >= 2) err_ << "[hsl:debug] " << msg << '\n';
  }

 private:
  std::ostream& err_;
  int level_ = 0;
};

struct Context {
  Config cfg;
  json config_json;
  std::string hash;
  const Logger& log;
  std::ostream& out;

  std::string provenance_line() const {
    return std::string("# hsl ") + HSL_VERSION + " config=" + hash + " seed=" + std::to_string(cfg.seed);
  }

  json envelope(json result) const {
    return json{{"command", cfg.command},
                {"provenance", {{"version", HSL_VERSION}, {"config_hash", hash}, {"seed", cfg.seed}}},
                {"config", config_json},
                {"result", std::move(result)}};
  }

  std::optional<std::filesystem::path> out_dir() const {
    if (cfg.out.empty()) return std::nullopt;
    std::error_code ec;
    std::filesystem::create_directories(cfg.out, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create output directory " + cfg.out + ": " + ec.message());
    return std::filesystem::path(cfg.out);
  }

  std::ofstream open(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    os << provenance_line() << '\n';
    return os;
  }

  template <class F>
  void save(const std::string& name, const F& f) const {
    if (auto dir = out_dir()) {
      auto os = open(*dir / name);
      write_function(os, f);
      if (!os) fail(ErrorCode::IoError, "write failed: " + (*dir / name).string());
      log.info("wrote " + (*dir / name).string());
    }
  }
};

ProblemSpec base_spec(const Config& c) { return ProblemSpec{c.N, c.alpha, c.beta, c.p, c.q}; }

json fit_json(const SlopeFit& f, double theory) {
  return json{{"slope", f.slope},           {"intercept", f.intercept}, {"half_width", f.half_width},
              {"n_points", f.n_points},     {"theory", theory}};
}

int cmd_classify(const Context& ctx) {
  const auto spec = base_spec(ctx.cfg);
  spec.validate();
  const auto rep = classify_point(spec);
  json hyp = json::object();
  for (const auto& [id, v] : rep.hypotheses) hyp[id] = {{"holds", v.holds}, {"reason", v.reason}};
  if (auto dir = ctx.out_dir()) {
    auto os = ctx.open(*dir / "region.csv");
    write_region_csv(os, spec, ctx.cfg.pq_max, ctx.cfg.region_steps);
  }
  ctx.out << ctx.envelope({{"gap", rep.gap}, {"side", to_string(rep.side)}, {"m_gap", rep.m_gap},
                           {"hypotheses", hyp}})
                 .dump(2)
          << '\n';
  return 0;
}

template <class GS>
json state_json(const GS& gs) {
  return json{{"level", gs.level},
              {"iterations", gs.iterations},
              {"kkt", gs.grad_norm},
              {"converged", gs.converged}};
}

int not_converged(const Context& ctx, std::ostream& err, double kkt) {
  err << json{{"error",
               {{"code", to_string(ErrorCode::NotConverged)},
                {"status", exit_status(ErrorCode::NotConverged)},
                {"message", "stopped at relative KKT residual " + fmt(kkt) + " above tol"}}}}
             .dump()
      << '\n';
  ctx.log.info("not converged");
  return exit_status(ErrorCode::NotConverged);
}

int cmd_solve_scalar(const Context& ctx, std::ostream& err) {
  const auto& c = ctx.cfg;
  SolverOptions o;
  o.tol = c.tol.value_or(1e-6);
  o.seed = c.seed;
  if (c.grid_theta > 0) {
    if (c.N != 2) fail(ErrorCode::InvalidArgument, "--grid-theta selects the disk solver, which needs N = 2");
    const DiskGrid grid(c.grid > 0 ? c.grid : 128, c.grid_theta);
    const auto gs = c.init == "multi" ? minimize_disk_multistart(c.p, c.alpha, grid, o)
                                      : minimize_disk(c.p, c.alpha, grid, o, parse_disk_init(c.init));
    ctx.save("u.grid", gs.minimizer);
    auto r = state_json(gs);
    r["grid"] = {{"kind", "disk"}, {"m_r", grid.radial_cells()}, {"m_t", grid.angular_cells()}};
    ctx.out << ctx.envelope(r).dump(2) << '\n';
    return gs.converged ? 0 : not_converged(ctx, err, gs.grad_norm);
  }
  const int m = c.grid > 0 ? c.grid : recommended_radial_cells(c.N, c.alpha);
  const RadialGrid grid(c.N, m);
  const auto gs = minimize_radial(c.N, c.p, c.alpha, grid, o);
  ctx.save("u.grid", gs.minimizer);
  auto r = state_json(gs);
  r["grid"] = {{"kind", "radial"}, {"N", c.N}, {"m", m}};
  ctx.out << ctx.envelope(r).dump(2) << '\n';
  return gs.converged ? 0 : not_converged(ctx, err, gs.grad_norm);
}

int cmd_solve_system(const Context& ctx, std::ostream& err) {
  const auto& c = ctx.cfg;
  const SystemSpec spec(base_spec(c));
  SolverOptions o;
  o.tol = c.tol.value_or(1e-10);
  o.seed = c.seed;
  const int m = c.grid > 0 ? c.grid : recommended_radial_cells(c.N, c.alpha);
  const RadialGrid grid(c.N, m);
  const auto gs = minimize_system_radial(spec, grid, o);
  ctx.save("u.grid", gs.u);
  ctx.save("v.grid", gs.v);
  json r{{"N", c.N}, {"p", c.p}, {"q", c.q}, {"alpha", c.alpha}, {"beta", c.beta}, {"r", spec.r}};
  r.update(state_json(gs));
  r["scale"] = gs.scale;
  r["lambda"] = gs.lambda;
  r["residual"] = gs.residual;
  r["pohozaev_residual"] = gs.pohozaev_residual;
  r["m"] = m;
  if (c.alpha >= 0.0 && m_hyperbola_gap(spec.base) > 0.0) {
    const auto b = bump_upper_system(c.N, c.alpha, c.beta, c.p, c.q);
    r["bump_upper"] = b.quotient;
    r["bump_width"] = b.width;
    r["breaks"] = b.quotient < gs.level * (1.0 - c.margin);
  } else {
    r["bump_upper"] = nullptr;
    r["breaks"] = nullptr;
  }
  ctx.out << ctx.envelope(r).dump(2) << '\n';
  return gs.converged ? 0 : not_converged(ctx, err, gs.grad_norm);
}

json rows_json(const std::vector<ScanRow>& rows) {
  json a = json::array();
  for (const auto& row : rows)
    a.push_back({{"alpha", row.alpha},
                 {"level_rad", row.level_rad},
                 {"level_full", row.level_full},
                 {"ratio", row.ratio},
                 {"iterations", row.iterations}});
  return a;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "alpha,level_rad,level_full,ratio,iterations\n";
  for (const auto& r : rows)
    os << fmt(r.alpha) << ',' << fmt(r.level_rad) << ',' << fmt(r.level_full) << ',' << fmt(r.ratio) << ','
       << r.iterations << '\n';
}

int cmd_scan(const Context& ctx) {
  const auto& c = ctx.cfg;
  const auto alphas = parse_alphas(c.alphas);
  const DiskGrid grid(c.grid > 0 ? c.grid : 128, c.grid_theta > 0 ? c.grid_theta : 128);
  ScanOptions so;
  so.solver.tol = c.tol.value_or(1e-6);
  so.solver.seed = c.seed;
  so.jobs = c.jobs;
  ctx.log.info("scan over " + std::to_string(alphas.size()) + " alphas");
  const auto res = scan_alpha(c.p, alphas, grid, so);
  if (auto dir = ctx.out_dir()) {
    auto os = ctx.open(*dir / "scan.csv");
    write_scan_csv(os, res.rows);
  }
  ctx.out << ctx.envelope({{"p", c.p},
                           {"m_r", grid.radial_cells()},
                           {"m_t", grid.angular_cells()},
                           {"rows", rows_json(res.rows)}})
                 .dump(2)
          << '\n';
  return 0;
}

int cmd_alpha_star(const Context& ctx) {
  const auto& c = ctx.cfg;
  AlphaStarOptions ao;
  ao.delta = c.delta;
  ao.lo = c.lo;
  ao.hi = c.hi;
  ao.coarse_step = c.step;
  ao.m_r = c.grid > 0 ? c.grid : 128;
  ao.m_t = c.grid_theta > 0 ? c.grid_theta : 128;
  ao.refine = !c.no_refine;
  ao.scan.jobs = c.jobs;
  ao.scan.solver.tol = c.tol.value_or(1e-6);
  ao.scan.solver.seed = c.seed;
  const auto res = find_alpha_star(c.p, ao);
  if (auto dir = ctx.out_dir()) {
    auto os = ctx.open(*dir / "coarse_scan.csv");
    write_scan_csv(os, res.coarse_scan);
  }
  json fine = std::isnan(res.alpha_star_fine) ? json() : json(res.alpha_star_fine);
  ctx.out << ctx.envelope({{"alpha_star", res.alpha_star},
                           {"alpha_star_coarse", res.alpha_star_coarse},
                           {"alpha_star_fine", fine},
                           {"ratio_at_star", res.ratio_at_star},
                           {"evaluations", res.evaluations},
                           {"coarse_scan", rows_json(res.coarse_scan)}})
                 .dump(2)
          << '\n';
  return 0;
}

int cmd_asymptotics(const Context& ctx) {
  const auto& c = ctx.cfg;
  if (c.kind == "dominated") {
    std::vector<double> eps;
    for (double e = 0.1; e >= c.eps_min * (1 - 1e-12); e /= 2) eps.push_back(e);
    const auto r = dominated_limit_check(c.p, c.N, eps, c.q_given ? c.q : 4.0, c.beta);
    ctx.out << ctx.envelope({{"kappa", r.kappa},
                             {"limit", r.limit},
                             {"eps", r.eps},
                             {"integrals", r.integrals},
                             {"errors", r.errors},
                             {"monotone", r.monotone},
                             {"dominated", r.dominated}})
                   .dump(2)
            << '\n';
    return 0;
  }
  if (c.kind == "csv") {
    std::ifstream is(c.csv);
    if (!is) fail(ErrorCode::IoError, "cannot open " + c.csv);
    const auto f = fit_log_slope(read_alpha_level_csv(is));
    ctx.out << ctx.envelope({{"fit", fit_json(f, NAN)}}).dump(2) << '\n';
    return 0;
  }
  LevelSweep s;
  const double tol = c.tol.value_or(1e-8);
  if (c.kind == "scalar") {
    s = scalar_level_sweep(c.N, c.p, geometric_sweep(c.alpha_min.value_or(100.0), c.alpha_max.value_or(1000.0)),
                           tol, c.jobs);
  } else if (c.kind == "system") {
    s = system_level_sweep(base_spec(c), geometric_sweep(c.alpha_min.value_or(50.0), c.alpha_max.value_or(800.0)),
                           tol, c.jobs);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown asymptotics kind '" + c.kind + "'");
  }
  if (auto dir = ctx.out_dir()) {
    auto os = ctx.open(*dir / "sweep.csv");
    os << "alpha,cells,level_rad,bump_upper,converged\n";
    for (std::size_t k = 0; k < s.alphas.size(); ++k)
      os << fmt(s.alphas[k]) << ',' << s.cells[k] << ',' << fmt(s.radial[k]) << ',' << fmt(s.upper[k]) << ','
         << (s.converged[k] ? 1 : 0) << '\n';
  }
  json rows = json::array();
  for (std::size_t k = 0; k < s.alphas.size(); ++k)
    rows.push_back({{"alpha", s.alphas[k]},
                    {"cells", s.cells[k]},
                    {"level_rad", s.radial[k]},
                    {"bump_upper", s.upper[k]},
                    {"converged", static_cast<bool>(s.converged[k])}});
  ctx.out << ctx.envelope({{"radial_fit", fit_json(s.radial_fit, s.radial_theory)},
                           {"upper_fit", fit_json(s.upper_fit, s.upper_theory)},
                           {"rows", rows}})
                 .dump(2)
          << '\n';
  return 0;
}

RadialFunction load_radial(const std::string& path) {
  auto f = load_function(path);
  if (!std::holds_alternative<RadialFunction>(f)) fail(ErrorCode::InvalidArgument, path + " is not a radial function");
  return std::get<RadialFunction>(std::move(f));
}

int cmd_pohozaev(const Context& ctx) {
  const auto& c = ctx.cfg;
  const auto u = load_radial(c.u_path);
  const auto v = load_radial(c.v_path);
  ProblemSpec b = base_spec(c);
  b.N = u.grid.dimension();
  const SystemSpec spec(b);
  const auto rep = pohozaev_residual(u, v, spec, c.residual_tol, c.lambda);
  ctx.out << ctx.envelope({{"residual", rep.residual},
                           {"boundary_term", rep.boundary_term},
                           {"gap", rep.gap},
                           {"mass", rep.mass},
                           {"branch", rep.branch}})
                 .dump(2)
          << '\n';
  return 0;
}

void add_common(CLI::App* sub, Config& c, bool system) {
  sub->add_option("--N", c.N, "dimension")->capture_default_str();
  sub->add_option("--p", c.p, "exponent p")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "weight exponent alpha")->capture_default_str();
  if (system) {
    sub->add_option("--q", c.q, "exponent q")->capture_default_str();
    sub->add_option("--beta", c.beta, "weight exponent beta")->capture_default_str();
  }
  sub->add_option("--grid", c.grid, "radial cells (0 = automatic)")->capture_default_str();
  sub->add_option("--grid-theta", c.grid_theta, "angular cells of the polar disk grid")->capture_default_str();
  sub->add_option("--tol", c.tol, "relative KKT tolerance");
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out, "output directory");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Logger log(err);
  Config cfg;
  CLI::App app{"Ground states of weighted Lane-Emden equations and systems on the unit ball", "hsl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HSL_VERSION);

  auto* classify = app.add_subcommand("classify", "Position of (N,p,q,alpha,beta) against the critical hyperbolas");
  add_common(classify, cfg, true);
  classify->add_option("--pq-max", cfg.pq_max, "upper end of p+1 and q+1 in region.csv")->capture_default_str();
  classify->add_option("--region-steps", cfg.region_steps, "samples per axis in region.csv")->capture_default_str();
  classify->footer("Writes OUT/region.csv with columns P,Q,gap,side (P = p+1, Q = q+1).");

  auto* solve_scalar = app.add_subcommand("solve-scalar", "Scalar ground state; radial, or on the disk with --grid-theta");
  add_common(solve_scalar, cfg, false);
  solve_scalar->add_option("--init", cfg.init, "disk start: multi, radial, bump or random")->capture_default_str();
  solve_scalar->footer("Writes OUT/u.grid.");

  auto* solve_system = app.add_subcommand("solve-system", "Radial ground state of the system");
  add_common(solve_system, cfg, true);
  solve_system->add_option("--margin", cfg.margin, "relative margin for breaks")->capture_default_str();
  solve_system->footer("Writes OUT/u.grid and OUT/v.grid. Default --tol 1e-10.");

  auto* scan = app.add_subcommand("scan", "Radial and full disk levels over alpha (N = 2)");
  add_common(scan, cfg, false);
  scan->add_option("--alphas", cfg.alphas, "lo:step:hi or a comma list")->capture_default_str();
  scan->footer("Writes OUT/scan.csv with columns alpha,level_rad,level_full,ratio,iterations.");

  auto* alpha_star = app.add_subcommand("alpha-star", "Smallest alpha with a symmetry-breaking ratio (N = 2)");
  add_common(alpha_star, cfg, false);
  alpha_star->add_option("--delta", cfg.delta, "breaking declared at ratio > 1 + delta")->capture_default_str();
  alpha_star->add_option("--lo", cfg.lo)->capture_default_str();
  alpha_star->add_option("--hi", cfg.hi)->capture_default_str();
  alpha_star->add_option("--step", cfg.step, "coarse scan step")->capture_default_str();
  alpha_star->add_flag("--no-refine", cfg.no_refine, "skip the doubled-grid pass");
  alpha_star->footer("Writes OUT/coarse_scan.csv with columns alpha,level_rad,level_full,ratio,iterations.");

  auto* asym = app.add_subcommand("asymptotics", "Log-log slopes of levels in alpha, or the dominated limit");
  add_common(asym, cfg, true);
  asym->add_option("--kind", cfg.kind, "scalar, system, dominated (q defaults to 4) or csv")->capture_default_str();
  asym->add_option("--alpha-min", cfg.alpha_min, "sweep start (scalar 100, system 50)");
  asym->add_option("--alpha-max", cfg.alpha_max, "sweep end (scalar 1000, system 800)");
  asym->add_option("--eps-min", cfg.eps_min, "smallest eps for --kind dominated")->capture_default_str();
  asym->add_option("--csv", cfg.csv, "alpha,level file for --kind csv");
  asym->footer("Writes OUT/sweep.csv with columns alpha,cells,level_rad,bump_upper,converged.");

  auto* poh = app.add_subcommand("pohozaev", "Pohozaev balance of a saved pair (u, v)");
  add_common(poh, cfg, true);
  poh->add_option("--u", cfg.u_path, "grid file of u")->required();
  poh->add_option("--v", cfg.v_path, "grid file of v")->required();
  poh->add_option("--lambda", cfg.lambda, "constant in the second equation")->capture_default_str();
  poh->add_option("--residual-tol", cfg.residual_tol, "largest accepted system residual")->capture_default_str();

  auto error_json = [&](std::string_view code, int status, const std::string& msg) {
    err << json{{"error", {{"code", code}, {"status", status}, {"message", msg}}}}.dump() << '\n';
    return status;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    return error_json(to_string(ErrorCode::InvalidArgument), exit_status(ErrorCode::InvalidArgument), e.what());
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (auto* o = sub->get_option_no_throw("--q")) cfg.q_given = o->count() > 0;
  }
  const json cj = cfg.to_json();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(cj.dump())));
  Context ctx{cfg, cj, hex, log, out};
  log.debug("config " + cj.dump());

  const auto t0 = std::chrono::steady_clock::now();
  try {
    int rc = 0;
    if (cfg.command == "classify") rc = cmd_classify(ctx);
    else if (cfg.command == "solve-scalar") rc = cmd_solve_scalar(ctx, err);
    else if (cfg.command == "solve-system") rc = cmd_solve_system(ctx, err);
    else if (cfg.command == "scan") rc = cmd_scan(ctx);
    else if (cfg.command == "alpha-star") rc = cmd_alpha_star(ctx);
    else if (cfg.command == "asymptotics") rc = cmd_asymptotics(ctx);
    else if (cfg.command == "pohozaev") rc = cmd_pohozaev(ctx);
    log.info(cfg.command + " finished in " +
             fmt(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s");
    return rc;
  } catch (const Error& e) {
    return error_json(to_string(e.code()), exit_status(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_json("Internal", 1, e.what());
  }
}

}  // namespace hsl::cli
