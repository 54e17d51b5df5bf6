// vodplace: content placement simulator for cache-based video-on-demand
// systems. Subcommands: gen, curve, place, reproduce. See README for the
// file formats and the reproduction targets.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vodplace/adaptive.hpp"
#include "vodplace/allocate.hpp"
#include "vodplace/analytic.hpp"
#include "vodplace/model.hpp"
#include "vodplace/rng.hpp"

namespace fs = std::filesystem;
using namespace vodplace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitIo = 4;

struct SystemOpts {
  int caches = 50;
  int peers = 40000;
  int degree = 4;
  int videos = 2000;
  double zipf = 0.8;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void add_system_opts(CLI::App* cmd, SystemOpts& o) {
  cmd->add_option("--caches", o.caches, "Number of caches");
  cmd->add_option("--peers", o.peers, "Number of peers");
  cmd->add_option("--degree", o.degree, "Cache connections per peer");
  cmd->add_option("--videos", o.videos, "Catalog size");
  cmd->add_option("--zipf", o.zipf, "Zipf popularity exponent");
  cmd->add_option("--seed", o.seed, "RNG seed (omitted: drawn from entropy)")
      ->each([&o](const std::string&) { o.seed_given = true; });
}

std::uint64_t resolve_seed(SystemOpts& o) {
  if (!o.seed_given) {
    o.seed = std::random_device{}();
    std::cout << "seed drawn from entropy: " << o.seed << "\n";
  }
  return o.seed;
}

void add_solver_opts(CLI::App* cmd, SolverConfig& c) {
  cmd->add_option("--solver.delta", c.step_rate, "Download-rate step");
  cmd->add_option("--solver.kappa", c.step_rate_price, "Rate-price step");
  cmd->add_option("--solver.iota", c.step_storage, "Storage step");
  cmd->add_option("--solver.nu", c.step_storage_price, "Storage-price step");
  cmd->add_option("--solver.max-iters", c.max_iters, "Iteration cap");
  cmd->add_option("--solver.tol-objective", c.tol_objective,
                  "Objective tolerance (negative: 1e-4*|U|)");
  cmd->add_option("--solver.tol-feasibility", c.tol_feasibility,
                  "Budget tolerance (negative: 1e-3*S)");
  cmd->add_option("--solver.warmup", c.warmup, "Steps before 1/sqrt(t) decay");
  cmd->add_option("--solver.smoothing", c.smoothing_width,
                  "Indicator smoothing width (0: hard indicator)");
  cmd->add_option("--solver.trace", c.trace_path, "Iteration trace CSV path");
}

std::string param_header(const SystemOpts& o, double budget = -1.0) {
  std::ostringstream s;
  s << "caches=" << o.caches << " peers=" << o.peers << " degree=" << o.degree
    << " videos=" << o.videos << " zipf=" << o.zipf << " seed=" << o.seed;
  if (budget >= 0.0) s << " budget=" << budget;
  return s.str();
}

// Paper-scale solver settings for the adaptive-fractional run: gradient
// magnitudes grow with the instance, so the raw default steps are scaled
// down. Overridable through --solver.* flags.
SolverConfig scale_solver_defaults(SolverConfig c, int peers, double budget) {
  if (peers > 1000) {
    c.step_rate = std::min(c.step_rate, 0.05);
    c.step_rate_price = std::min(c.step_rate_price, 0.05);
    c.step_storage = std::min(c.step_storage, 0.002);
    c.step_storage_price = std::min(c.step_storage_price, 1e-5);
    c.check_every = 100;
    if (c.tol_objective < 0) c.tol_objective = 1e-3 * peers;
    if (c.tol_feasibility < 0) c.tol_feasibility = 1e-3 * budget;
  }
  return c;
}

struct PolicyRun {
  AllocationResult alloc;
  Evaluation eval;
};

PolicyRun run_policy(const Topology& t, const Demand& d, Policy policy,
                     double budget, std::uint64_t seed,
                     const SolverConfig& solver, int hybrid_threshold,
                     const Placement* warm) {
  PolicyRun r;
  switch (policy) {
    case Policy::fixed_whole:
      r.alloc = fixed_whole_allocate(t, d, budget, seed);
      break;
    case Policy::fixed_fractional:
      r.alloc = fixed_fractional_allocate(t, d, budget);
      break;
    case Policy::adaptive_whole:
      r.alloc = adaptive_whole_allocate(t, d, budget);
      break;
    case Policy::adaptive_fractional:
      r.alloc = adaptive_fractional_allocate(t, d, budget, solver, warm);
      break;
    case Policy::hybrid:
      r.alloc = hybrid_allocate(t, d, budget, true, hybrid_threshold);
      break;
  }
  r.eval = evaluate_placement(t, d, r.alloc.placement);
  return r;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(SystemOpts& o, const std::string& out_dir) {
  resolve_seed(o);
  Topology t = sample_topology(o.caches, o.peers, o.degree, o.seed);
  Demand d = make_demand(o.videos, o.zipf, o.peers, o.seed);
  fs::create_directories(out_dir);
  save_topology(t, (fs::path(out_dir) / "topology.tsv").string());
  save_demand(d, (fs::path(out_dir) / "demand.tsv").string());
  std::cout << "wrote " << out_dir << "/topology.tsv and demand.tsv (seed="
            << o.seed << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// curve

struct CurveOpts {
  std::string policy = "fw";
  int requesters = 20;
  double copies_max = -1.0;
  double grid_step = 0.0;  // 0: policy default
  int mc_seeds = 200;
  bool bounds = false;
  bool allow_slow = false;
  std::string out = "curve.csv";
};

// Monte Carlo mean of the greedy-peeling coverage over random graphs, one
// row per integer copy count.
std::vector<double> aw_mc_curve(int caches, int degree, int requesters,
                                int c_max, int seeds, std::uint64_t seed0) {
  std::vector<double> mean(c_max + 1, 0.0);
  std::vector<int> everyone(requesters);
  std::iota(everyone.begin(), everyone.end(), 0);
  for (int s = 0; s < seeds; ++s) {
    Topology t = sample_topology(caches, requesters, degree, seed0 + s);
    auto peel = greedy_peel(t, everyone, c_max);
    double acc = 0.0;
    std::size_t i = 0;
    for (int c = 1; c <= c_max; ++c) {
      if (i < peel.gains.size()) acc += peel.gains[i++];
      mean[c] += acc;
    }
  }
  for (double& v : mean) v /= seeds;
  return mean;
}

int cmd_curve(SystemOpts& o, CurveOpts& c) {
  resolve_seed(o);
  if (c.copies_max < 0) c.copies_max = o.caches;
  Policy policy = parse_policy(c.policy);
  if (c.grid_step <= 0)
    c.grid_step =
        (policy == Policy::fixed_whole || policy == Policy::fixed_fractional)
            ? 0.5
            : 1.0;

  std::ofstream out(c.out, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << c.out << "\n";
    return kExitIo;
  }
  out << "#" << param_header(o) << " policy=" << c.policy
      << " requesters=" << c.requesters << " mc_seeds=" << c.mc_seeds << "\n";

  const int n = static_cast<int>(c.copies_max / c.grid_step);
  switch (policy) {
    case Policy::fixed_whole: {
      out << (c.bounds ? "copies,value,lower_bound\n" : "copies,value\n");
      for (int i = 0; i <= n; ++i) {
        const double cc = i * c.grid_step;
        out << cc << ',' << fw_curve(o.caches, o.degree, c.requesters, cc);
        if (c.bounds) {
          const double alpha = cc / o.caches;
          out << ',' << c.requesters * (1.0 - std::pow(1.0 - alpha, o.degree));
        }
        out << '\n';
      }
      break;
    }
    case Policy::fixed_fractional: {
      out << "copies,value\n";
      for (int i = 0; i <= n; ++i) {
        const double cc = i * c.grid_step;
        out << cc << ',' << ff_curve(o.caches, o.degree, c.requesters, cc)
            << '\n';
      }
      break;
    }
    case Policy::adaptive_whole: {
      const int cm = static_cast<int>(c.copies_max);
      auto mc = aw_mc_curve(o.caches, o.degree, c.requesters, cm, c.mc_seeds,
                            o.seed);
      out << (c.bounds ? "copies,value,upper_bound\n" : "copies,value\n");
      for (int cc = 0; cc <= cm; ++cc) {
        out << cc << ',' << mc[cc];
        if (c.bounds) {
          const double ub =
              aw_upper_bound(o.caches, o.degree, c.requesters, cc);
          if (mc[cc] > ub + 1e-9) {
            std::cerr << "invariant violated: MC mean above the upper bound at"
                         " C=" << cc << "\n";
            return 1;
          }
          out << ',' << ub;
        }
        out << '\n';
      }
      break;
    }
    case Policy::adaptive_fractional: {
      if (c.requesters > 500 && !c.allow_slow) {
        std::cerr << "af curve at this scale needs --allow-slow\n";
        return kExitParam;
      }
      Topology t = sample_topology(o.caches, c.requesters, o.degree, o.seed);
      std::vector<int> everyone(c.requesters);
      std::iota(everyone.begin(), everyone.end(), 0);
      SolverConfig cfg;
      out << "copies,value\n0,0\n";
      double prev = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double budget = i * c.grid_step;
        auto r = primal_dual_single(t, everyone, budget, cfg);
        prev = std::max(prev, r.objective);
        out << budget << ',' << prev << '\n';
        if (prev >= c.requesters - 1e-6) break;
      }
      break;
    }
    case Policy::hybrid:
      std::cerr << "curve: hybrid has no single-video curve\n";
      return kExitParam;
  }
  std::cout << "wrote " << c.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// place

struct PlaceOpts {
  std::string policy = "hybrid";
  double budget = -1.0;
  double per_cache = -1.0;
  int hybrid_threshold = -1;
  std::string topology_file, demand_file;
  std::string out = "run";
};

int cmd_place(SystemOpts& o, PlaceOpts& p, SolverConfig& solver) {
  Topology t;
  Demand d;
  if (!p.topology_file.empty() || !p.demand_file.empty()) {
    if (p.topology_file.empty() || p.demand_file.empty()) {
      std::cerr << "--topology and --demand must be given together\n";
      return kExitParam;
    }
    t = load_topology(p.topology_file);
    d = load_demand(p.demand_file);
    o.caches = t.num_caches;
    o.peers = t.num_peers();
    o.degree = t.degree;
    o.videos = d.num_videos;
    o.zipf = d.zipf_exponent;
    o.seed = t.seed;
  } else {
    resolve_seed(o);
    t = sample_topology(o.caches, o.peers, o.degree, o.seed);
    d = make_demand(o.videos, o.zipf, o.peers, o.seed);
  }

  if (p.budget >= 0 && p.per_cache >= 0 &&
      std::abs(p.budget - p.per_cache * o.caches) > 1e-9) {
    std::cerr << "--budget must equal --per-cache * caches when both given\n";
    return kExitParam;
  }
  double budget = p.budget >= 0 ? p.budget
                : p.per_cache >= 0 ? p.per_cache * o.caches
                                   : 2.5 * o.videos;

  Policy policy = parse_policy(p.policy);
  SolverConfig cfg = scale_solver_defaults(solver, o.peers, budget);
  auto run = run_policy(t, d, policy, budget, o.seed, cfg,
                        p.hybrid_threshold, nullptr);

  fs::create_directories(p.out);
  const std::string header =
      param_header(o, budget) + " policy=" + p.policy +
      (run.alloc.converged ? "" : " converged=0");
  save_placement_csv(run.alloc.placement,
                     (fs::path(p.out) / "placement.csv").string(), header);
  save_report_csv(run.alloc, run.eval,
                  (fs::path(p.out) / "report.csv").string(), header);

  std::cout << "policy=" << p.policy << " total_copies="
            << run.alloc.total_copies << " estimate="
            << run.alloc.objective_estimate << " evaluated_served="
            << run.eval.total << "\n";
  if (policy == Policy::hybrid) {
    const int ff_count = static_cast<int>(
        std::count(run.alloc.policy_choice.begin(),
                   run.alloc.policy_choice.end(), 0));
    std::cout << "hybrid: ff_videos=" << ff_count
              << " hull_value=" << run.alloc.hull_value
              << " hull_gap_last=" << run.alloc.hull_gap_last << "\n";
  }
  if (!run.alloc.converged) {
    std::cerr << "warning: solver did not converge within its budget\n";
    return kExitNoConverge;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceOpts {
  std::string target = "table1";
  std::string out = "reproduce";
  int mc_seeds = 200;
  double af_minutes = 10.0;
  int hybrid_threshold = -1;
};

int reproduce_table1(SystemOpts& o, ReproduceOpts& r, SolverConfig& solver) {
  const double budget = 2.5 * o.videos;
  Topology t = sample_topology(o.caches, o.peers, o.degree, o.seed);
  Demand d = make_demand(o.videos, o.zipf, o.peers, o.seed);

  auto fw = run_policy(t, d, Policy::fixed_whole, budget, o.seed, solver, -1,
                       nullptr);
  auto ff = run_policy(t, d, Policy::fixed_fractional, budget, o.seed, solver,
                       -1, nullptr);
  auto aw = run_policy(t, d, Policy::adaptive_whole, budget, o.seed, solver,
                       -1, nullptr);
  auto hy = run_policy(t, d, Policy::hybrid, budget, o.seed, solver,
                       r.hybrid_threshold, nullptr);

  SolverConfig cfg = scale_solver_defaults(solver, o.peers, budget);
  cfg.wall_clock_seconds = r.af_minutes * 60.0;
  // warm start from the hybrid placement: the dynamics then only have to
  // close the hybrid-to-optimal gap
  auto af = run_policy(t, d, Policy::adaptive_fractional, budget, o.seed, cfg,
                       -1, &hy.alloc.placement);

  struct Row {
    const char* name;
    double served;
    bool converged;
  };
  std::vector<Row> rows = {
      {"fw", fw.eval.total, true},
      {"ff", ff.eval.total, true},
      {"aw", aw.eval.total, true},
      {"af", af.eval.total, af.alloc.converged},
      {"hybrid", hy.eval.total, true},
  };

  fs::create_directories(r.out);
  std::ofstream out(fs::path(r.out) / "table1.csv", std::ios::binary);
  out << "#" << param_header(o, budget) << " af_converged="
      << (af.alloc.converged ? 1 : 0) << "\n";
  out << "policy,total_served,fraction_of_af\n";
  for (const auto& row : rows) {
    out << row.name << ',' << row.served << ','
        << row.served / af.eval.total << '\n';
    std::printf("%-8s %10.1f  (%.1f%% of af)%s\n", row.name, row.served,
                100.0 * row.served / af.eval.total,
                row.converged ? "" : "  [not converged]");
  }

  const bool ordered = fw.eval.total < ff.eval.total &&
                       ff.eval.total < aw.eval.total &&
                       aw.eval.total <= hy.eval.total + 1e-9 &&
                       hy.eval.total <= af.eval.total + 1e-9;
  std::cout << "ordering fw<ff<aw<=hybrid<=af: " << (ordered ? "ok" : "VIOLATED")
            << "\n";
  if (!af.alloc.converged)
    std::cerr << "warning: af solver stopped at its iteration/time budget\n";
  return af.alloc.converged ? kExitOk : kExitNoConverge;
}

int reproduce_fig(SystemOpts& o, ReproduceOpts& r, SolverConfig& solver,
                  const std::string& target) {
  fs::create_directories(r.out);
  const std::string path = (fs::path(r.out) / (target + ".csv")).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) return kExitIo;

  auto single_comparison = [&](int requesters) {
    out << "#" << param_header(o) << " requesters=" << requesters << "\n";
    out << "copies,fw,ff,aw_mc,af\n";
    Topology t = sample_topology(o.caches, requesters, o.degree, o.seed);
    std::vector<int> everyone(requesters);
    std::iota(everyone.begin(), everyone.end(), 0);
    auto mc = aw_mc_curve(o.caches, o.degree, requesters, o.caches,
                          r.mc_seeds, o.seed);
    SolverConfig cfg = scale_solver_defaults(solver, requesters, 1.0);
    double af_prev = 0.0;
    for (int c = 0; c <= o.caches; ++c) {
      double af_v = af_prev;
      if (c > 0 && af_prev < requesters - 1e-6) {
        auto pd = primal_dual_single(t, everyone, c, cfg);
        af_v = std::max(af_prev, pd.objective);
      }
      af_prev = af_v;
      out << c << ',' << fw_curve(o.caches, o.degree, requesters, c) << ','
          << ff_curve(o.caches, o.degree, requesters, c) << ',' << mc[c]
          << ',' << af_v << '\n';
    }
  };

  if (target == "fig2") {
    out << "#" << param_header(o) << " requesters=20\n";
    out << "copies,value,lower_bound\n";
    for (double c = 0.0; c <= o.caches + 1e-9; c += 0.5) {
      const double alpha = c / o.caches;
      out << c << ',' << fw_curve(o.caches, o.degree, 20, c) << ','
          << 20 * (1.0 - std::pow(1.0 - alpha, o.degree)) << '\n';
    }
  } else if (target == "fig3") {
    out << "#" << param_header(o) << " requesters=20\n";
    out << "copies,value\n";
    for (double c = 0.0; c <= o.caches + 1e-9; c += 0.5)
      out << c << ',' << ff_curve(o.caches, o.degree, 20, c) << '\n';
  } else if (target == "fig4") {
    out << "#" << param_header(o) << " requesters=20 mc_seeds=" << r.mc_seeds
        << "\n";
    out << "copies,lower_bound_mc,upper_bound\n";
    auto mc = aw_mc_curve(o.caches, o.degree, 20, o.caches, r.mc_seeds, o.seed);
    for (int c = 0; c <= o.caches; ++c)
      out << c << ',' << mc[c] << ','
          << aw_upper_bound(o.caches, o.degree, 20, c) << '\n';
  } else if (target == "fig5") {
    single_comparison(20);
  } else if (target == "fig6") {
    single_comparison(100);
  } else if (target == "fig7") {
    single_comparison(2000);
  } else if (target == "fig8") {
    const int requesters = 200;
    out << "#" << param_header(o) << " requesters=" << requesters << "\n";
    out << "copies,ff,aw,max,hull\n";
    Topology t = sample_topology(o.caches, requesters, o.degree, o.seed);
    std::vector<int> everyone(requesters);
    std::iota(everyone.begin(), everyone.end(), 0);
    auto peel = greedy_peel(t, everyone, o.caches);
    std::vector<double> f1(o.caches + 1, 0.0), fmax(o.caches + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < peel.gains.size(); ++i) {
      acc += peel.gains[i];
      f1[i + 1] = acc;
    }
    for (std::size_t i = peel.gains.size() + 1; i < f1.size(); ++i) f1[i] = acc;
    for (int c = 0; c <= o.caches; ++c)
      fmax[c] = std::max(ff_curve(o.caches, o.degree, requesters, c), f1[c]);
    auto hull = concave_hull(fmax);
    for (int c = 0; c <= o.caches; ++c)
      out << c << ',' << ff_curve(o.caches, o.degree, requesters, c) << ','
          << f1[c] << ',' << fmax[c] << ',' << hull.hull[c] << '\n';
  } else if (target == "fig9" || target == "fig10" || target == "fig11") {
    const double budget = 2.5 * o.videos;
    Topology t = sample_topology(o.caches, o.peers, o.degree, o.seed);
    Demand d = make_demand(o.videos, o.zipf, o.peers, o.seed);
    auto hy = run_policy(t, d, Policy::hybrid, budget, o.seed, solver,
                         r.hybrid_threshold, nullptr);
    if (target == "fig10") {
      out << "#" << param_header(o, budget) << "\n";
      out << "video_id,copies\n";
      for (int m = 0; m < o.videos; ++m)
        out << m << ',' << hy.alloc.copies[m] << '\n';
    } else if (target == "fig11") {
      out << "#" << param_header(o, budget) << "\n";
      out << "video_id,policy\n";
      for (int m = 0; m < o.videos; ++m)
        out << m << ',' << (hy.alloc.policy_choice[m] == 0 ? "ff" : "aw")
            << '\n';
    } else {
      auto fw = run_policy(t, d, Policy::fixed_whole, budget, o.seed, solver,
                           -1, nullptr);
      auto ff = run_policy(t, d, Policy::fixed_fractional, budget, o.seed,
                           solver, -1, nullptr);
      auto aw = run_policy(t, d, Policy::adaptive_whole, budget, o.seed,
                           solver, -1, nullptr);
      SolverConfig cfg = scale_solver_defaults(solver, o.peers, budget);
      cfg.wall_clock_seconds = r.af_minutes * 60.0;
      auto af = run_policy(t, d, Policy::adaptive_fractional, budget, o.seed,
                           cfg, -1, &hy.alloc.placement);
      out << "#" << param_header(o, budget) << " af_converged="
          << (af.alloc.converged ? 1 : 0) << "\n";
      out << "video_id,fw,ff,aw,af\n";
      for (int m = 0; m < o.videos; ++m)
        out << m << ',' << fw.alloc.copies[m] << ',' << ff.alloc.copies[m]
            << ',' << aw.alloc.copies[m] << ',' << af.alloc.copies[m] << '\n';
    }
  } else {
    std::cerr << "unknown reproduce target: " << target << "\n";
    return kExitParam;
  }
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Content placement simulator for cache-based VoD systems"};
  app.require_subcommand(1);

  SystemOpts gen_sys;
  std::string gen_out = "data";
  auto* gen = app.add_subcommand("gen", "Generate topology and demand files");
  add_system_opts(gen, gen_sys);
  gen->add_option("--out", gen_out, "Output directory");

  SystemOpts curve_sys;
  CurveOpts curve_opts;
  auto* curve = app.add_subcommand("curve", "Emit a single-video service curve");
  add_system_opts(curve, curve_sys);
  curve->add_option("--policy", curve_opts.policy, "fw|ff|aw|af");
  curve->add_option("--requesters", curve_opts.requesters, "Requesting peers");
  curve->add_option("--copies", curve_opts.copies_max, "Max copies on the grid");
  curve->add_option("--grid-step", curve_opts.grid_step, "Grid spacing");
  curve->add_option("--mc-seeds", curve_opts.mc_seeds,
                    "Monte Carlo replications (aw)");
  curve->add_flag("--bounds", curve_opts.bounds, "Emit analytic bound columns");
  curve->add_flag("--allow-slow", curve_opts.allow_slow,
                  "Allow large af solves");
  curve->add_option("--out", curve_opts.out, "Output CSV path");

  SystemOpts place_sys;
  PlaceOpts place_opts;
  SolverConfig place_solver;
  auto* place = app.add_subcommand("place", "Run an allocator and evaluate it");
  add_system_opts(place, place_sys);
  add_solver_opts(place, place_solver);
  place->add_option("--policy", place_opts.policy, "fw|ff|aw|af|hybrid");
  place->add_option("--budget", place_opts.budget, "Total copy budget");
  place->add_option("--per-cache", place_opts.per_cache, "Copies per cache");
  place->add_option("--hybrid-threshold", place_opts.hybrid_threshold,
                    "Force ff for the N most popular videos");
  place->add_option("--topology", place_opts.topology_file, "Topology TSV");
  place->add_option("--demand", place_opts.demand_file, "Demand TSV");
  place->add_option("--out", place_opts.out, "Output directory");

  SystemOpts rep_sys;
  ReproduceOpts rep_opts;
  SolverConfig rep_solver;
  auto* rep = app.add_subcommand(
      "reproduce", "Regenerate the reference table or figure data");
  add_system_opts(rep, rep_sys);
  add_solver_opts(rep, rep_solver);
  rep->add_option("target", rep_opts.target, "table1 or fig2..fig11")
      ->required();
  rep->add_option("--out", rep_opts.out, "Output directory");
  rep->add_option("--mc-seeds", rep_opts.mc_seeds, "Monte Carlo replications");
  rep->add_option("--af-minutes", rep_opts.af_minutes,
                  "Wall-clock budget for the af solver");
  rep->add_option("--hybrid-threshold", rep_opts.hybrid_threshold,
                  "Fixed-threshold hybrid variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParam;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_sys, gen_out);
    if (curve->parsed()) return cmd_curve(curve_sys, curve_opts);
    if (place->parsed()) return cmd_place(place_sys, place_opts, place_solver);
    if (rep->parsed()) {
      resolve_seed(rep_sys);
      if (rep_opts.target == "table1")
        return reproduce_table1(rep_sys, rep_opts, rep_solver);
      return reproduce_fig(rep_sys, rep_opts, rep_solver, rep_opts.target);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParam;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
