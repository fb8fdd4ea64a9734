// mubsdp: statistics, export and checks for the symmetry-reduced MUB SDPs.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mub/sdp.hpp"
#include "mub/selftest.hpp"

namespace {

constexpr int kOk = 0, kError = 1, kLinearInfeasible = 10, kSolverInfeasible = 11;

struct RunConfig {
  int d = 2, k = 2;
  std::string t = "1";
  std::string mode = "full";
  int sweep_cap = -1;
  int digits = 40;
  std::string solver;
  std::string out = ".";
  unsigned threads = 0;

  int twice_t() const {
    auto v = mub::parse_level(t);
    if (!v || *v < 2) throw std::invalid_argument("--t must be an integer or half-integer >= 1");
    return *v;
  }
  mub::Mode mode_value() const {
    auto m = mub::parse_mode(mode);
    if (!m) throw std::invalid_argument("--mode must be full or bases_only");
    return *m;
  }
  void validate() const {
    if (d < 2 || k < 2) throw std::invalid_argument("--d and --k must be at least 2");
    if (d > 16 || k > 16) throw std::invalid_argument("--d and --k must be at most 16");
    twice_t();
    mode_value();
  }
  std::string solver_path() const {
    if (!solver.empty()) return solver;
    const char *env = std::getenv("MUBSDP_SOLVER");
    return env ? env : "";
  }
  std::string stem() const {
    return "sdp_d" + std::to_string(d) + "_k" + std::to_string(k) + "_t" + mub::level_string(twice_t()) + "_" + mode;
  }
};

void add_config_flags(CLI::App *app, RunConfig &c) {
  app->add_option("--d", c.d, "number of elements per basis (dimension)");
  app->add_option("--k", c.k, "number of bases");
  app->add_option("--t", c.t, "level, e.g. 2 or 4.5");
  app->add_option("--mode", c.mode, "full or bases_only");
  app->add_option("--sweep-cap", c.sweep_cap, "degree budget of the constraint sweep (default 2t)");
  app->add_option("--digits", c.digits, "significant digits in exported values");
  app->add_option("--solver", c.solver, "SDPA-compatible solver executable (default $MUBSDP_SOLVER)");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

std::string shell_quote(const std::string &s) {
  std::string q = "'";
  for (char ch : s) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return q + "'";
}

mub::SolverStatus run_solver(const std::string &solver, const std::string &input, const std::string &output) {
  std::string cmd = shell_quote(solver) + " " + shell_quote(input) + " " + shell_quote(output) + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc != 0 && !std::filesystem::exists(output)) throw std::runtime_error("solver failed: " + cmd);
  return mub::parse_solver_output(output);
}

void print_witness(std::ostream &os, const mub::InfeasibilityReport &rep, const std::vector<mub::ConstraintRow> &rows) {
  os << "residual=" << rep.residual.get_str() << "\n";
  for (const auto &[i, c] : rep.witness)
    os << "witness." << i << "=" << c.get_str() << " * [" << rows[i].provenance << "] " << rows[i].form.to_string() << "\n";
}

struct Exported {
  std::string dat, sidecar;
};

Exported export_instance(const RunConfig &c, const mub::SDPInstance &inst) {
  std::filesystem::create_directories(c.out);
  Exported e{(std::filesystem::path(c.out) / (c.stem() + ".dat-s")).string(),
             (std::filesystem::path(c.out) / (c.stem() + ".txt")).string()};
  mub::export_sdpa(inst, e.dat, c.digits);
  std::ofstream side(e.sidecar);
  if (!side) throw std::runtime_error("cannot write " + e.sidecar);
  side << "verdict=undetermined\n" << mub::sidecar_string(inst);
  return e;
}

int cmd_stats(const RunConfig &c) {
  mub::Reducer reducer(c.d, c.k);
  mub::AssemblyOptions opt{c.sweep_cap, true, c.threads};
  auto s = mub::compute_stats(reducer, c.twice_t(), c.mode_value(), opt);
  std::string result = s.linear_infeasible ? "infeasible(linear)" : "-";
  int code = s.linear_infeasible ? kLinearInfeasible : kOk;
  std::string solver = c.solver_path();
  if (!s.linear_infeasible && !solver.empty()) {
    auto inst = mub::assemble_instance(reducer, c.twice_t(), c.mode_value(), opt);
    auto e = export_instance(c, inst);
    auto st = run_solver(solver, e.dat, e.dat + ".out");
    result = mub::status_name(st);
    if (st == mub::SolverStatus::Infeasible) code = kSolverInfeasible;
  }
  std::cout << "d k t size vars linear sum max result\n"
            << c.d << " " << c.k << " " << mub::level_string(c.twice_t()) << " " << s.size << " " << s.n_vars << " "
            << s.n_linear << " " << s.block_sum << " " << s.block_max << " " << result << "\n";
  std::cout << "d=" << c.d << "\nk=" << c.k << "\nt=" << mub::level_string(c.twice_t()) << "\nmode=" << c.mode
            << "\nsize=" << s.size << "\nvars=" << s.n_vars << "\nlinear=" << s.n_linear << "\nblock_sum=" << s.block_sum
            << "\nblock_max=" << s.block_max << "\nresult=" << result << "\n";
  return code;
}

int cmd_generate(const RunConfig &c) {
  mub::Reducer reducer(c.d, c.k);
  mub::AssemblyOptions opt{c.sweep_cap, true, c.threads};
  try {
    auto inst = mub::assemble_instance(reducer, c.twice_t(), c.mode_value(), opt);
    auto e = export_instance(c, inst);
    std::cout << "dat=" << e.dat << "\nsidecar=" << e.sidecar << "\nfree_vars=" << inst.free_vars.size() << "\n";
    std::string solver = c.solver_path();
    if (!solver.empty()) {
      auto st = run_solver(solver, e.dat, e.dat + ".out");
      std::cout << "result=" << mub::status_name(st) << "\n";
      if (st == mub::SolverStatus::Infeasible) return kSolverInfeasible;
    }
    return kOk;
  } catch (const mub::LinearInfeasible &li) {
    std::filesystem::create_directories(c.out);
    auto path = (std::filesystem::path(c.out) / (c.stem() + ".txt")).string();
    std::ofstream side(path);
    if (!side) throw std::runtime_error("cannot write " + path);
    side << "verdict=infeasible(linear)\n";
    print_witness(side, li.report, li.rows);
    std::cout << "sidecar=" << path << "\nresult=infeasible(linear)\n";
    return kLinearInfeasible;
  }
}

int cmd_check(const RunConfig &c) {
  mub::Reducer reducer(c.d, c.k);
  auto sys = mub::linear_system(reducer, c.twice_t(), c.mode_value(), c.sweep_cap);
  bool inf = sys.report.verdict == mub::Verdict::Infeasible;
  std::cout << "vars=" << sys.variables.size() << "\nlinear=" << sys.constraints.size()
            << "\nverdict=" << (inf ? "infeasible" : "undetermined") << "\n";
  if (inf) print_witness(std::cout, sys.report, sys.constraints);
  return inf ? kLinearInfeasible : kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Symmetry-reduced SDP relaxations for mutually unbiased bases"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto *stats = app.add_subcommand("stats", "print size, variables, constraints and block sizes");
  auto *generate = app.add_subcommand("generate", "write the SDPA sparse file and a sidecar");
  auto *check = app.add_subcommand("check", "run the linear constraint sweep only");
  auto *selftest = app.add_subcommand("selftest", "run the invariant suite");
  auto *parse = app.add_subcommand("parse", "read an SDPA result file");
  for (auto *s : {stats, generate, check}) add_config_flags(s, cfg);
  bool corrupt = false;
  selftest->add_flag("--corrupt-nu-order", corrupt, "negative test hook")->group("");
  std::string result_file;
  parse->add_option("file", result_file, "solver output")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*selftest) return mub::run_selftest(std::cout, {corrupt}) ? kOk : kError;
    if (*parse) {
      auto st = mub::parse_solver_output(result_file);
      std::cout << "result=" << mub::status_name(st) << "\n";
      return st == mub::SolverStatus::Infeasible ? kSolverInfeasible : kOk;
    }
    cfg.validate();
    if (*stats) return cmd_stats(cfg);
    if (*generate) return cmd_generate(cfg);
    if (*check) return cmd_check(cfg);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
