#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vodplace/model.hpp"

namespace vodplace {

struct SolverConfig {
  double step_rate = 0.1;           // delta, download-rate step
  double step_rate_price = 0.1;     // kappa, connection price step
  double step_storage = 0.1;        // iota, storage step
  double step_storage_price = 0.1;  // nu, storage price step
  int max_iters = 50000;
  // Negative tolerances mean "auto": 1e-4 * |U| and 1e-3 * budget.
  double tol_objective = -1.0;
  double tol_feasibility = -1.0;
  int warmup = 100;           // iterations before the 1/sqrt(t) decay starts
  double smoothing_width = 0.0;  // optional indicator smoothing, off by default
  int check_every = 50;       // objective/feasibility check cadence
  int trailing_window = 4;    // consecutive stable checks required
  double wall_clock_seconds = 0.0;  // 0 = unlimited
  std::string trace_path;     // optional CSV trace of the iteration

  void validate() const;  // throws std::invalid_argument
};

struct GreedyPeelResult {
  std::vector<int> caches;  // chosen caches, in pick order
  std::vector<int> gains;   // newly covered requesters per pick, non-increasing
  int total_covered() const;
};

// Greedy peeling: repeatedly store a copy at the cache connected to the most
// uncovered requesters, then remove the covered requesters. Ties break to the
// lowest cache index. Stops early once every requester is covered (the
// returned lists may then be shorter than `copies`).
GreedyPeelResult greedy_peel(const Topology& topology,
                             std::span<const int> requesters, int copies);

// Brute-force maximum coverage over all C-subsets of caches. Test-scale
// oracle: refuses instances with more than 10^6 subsets.
int exact_cover(const Topology& topology, std::span<const int> requesters,
                int copies);

struct PrimalDualResult {
  // storage[h * num_videos + m], budget-feasible, entries in [0,1]
  std::vector<double> storage;
  std::vector<double> rates;   // x per (peer, slot), row-major like adjacency
  std::vector<double> prices;  // lambda per (peer, slot)
  double omega = 0.0;
  double objective = 0.0;         // optimal-routing objective of `storage`
  double storage_residual = 0.0;  // sum(storage) - budget at the last iterate
  bool converged = false;
  int iterations = 0;
};

// Euler-discretized primal-dual dynamics for the fractional placement LP
// under a total storage budget, one storage column per video, one price per
// cache-peer connection driven by the peer's requested video. Non-convergence
// at max_iters is reported through the flag, not an exception.
//
// `warm_start` (optional) is a storage matrix of the same shape used to
// initialize W.
PrimalDualResult primal_dual(const Topology& topology,
                             const std::vector<int>& requests, int num_videos,
                             double budget, const SolverConfig& config,
                             const std::vector<double>* warm_start = nullptr);

// Single-video convenience wrapper: peers not requesting the video are
// dropped from the instance.
PrimalDualResult primal_dual_single(const Topology& topology,
                                    std::span<const int> requesters,
                                    double budget, const SolverConfig& config);

// Optimal-routing objective for a storage matrix: each peer is served
// min(sum of stored fractions over its caches, 1).
double routing_objective(const Topology& topology,
                         const std::vector<int>& requests, int num_videos,
                         std::span<const double> storage);

}  // namespace vodplace
