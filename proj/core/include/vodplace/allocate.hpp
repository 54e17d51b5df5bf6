#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vodplace/adaptive.hpp"
#include "vodplace/model.hpp"

namespace vodplace {

enum class Policy {
  fixed_whole,
  fixed_fractional,
  adaptive_whole,
  adaptive_fractional,
  hybrid,
};

const char* policy_name(Policy p);
Policy parse_policy(const std::string& name);  // throws std::invalid_argument

// Cache-served rate as a function of copies stored, tabulated on a uniform
// grid: values[i] = f(i * step).
struct ServiceCurve {
  int video_id = 0;
  Policy policy = Policy::fixed_whole;
  double step = 1.0;
  bool realized = false;  // graph-specific (true) vs expected/analytic (false)
  std::vector<double> values;

  double max_copies() const { return step * (values.size() - 1); }
  double value_at(double copies) const;  // linear interpolation, clamped
  void validate() const;  // monotone, f(0)=0; throws on violation
};

struct HullResult {
  std::vector<double> hull;  // least concave majorant on the grid
  double gap = 0.0;          // max over the grid of hull - values
  int gap_index = 0;         // grid index attaining the max gap
  int segment_lo = 0;        // widest bridged segment [lo, hi] (grid indices);
  int segment_hi = 0;        // lo == hi when the input is already concave
};

HullResult concave_hull(std::span<const double> values);

struct AllocationResult {
  Policy policy = Policy::fixed_whole;
  std::vector<double> copies;      // C_m; integral for whole-storage policies
  std::vector<int> policy_choice;  // hybrid: 0 = FF, 1 = AW; empty otherwise
  double total_copies = 0.0;
  double objective_estimate = 0.0;  // U(C, theta) from the service curves
  double hull_value = 0.0;          // hybrid: V-bar
  double hull_gap_last = 0.0;  // hybrid: hull shortfall at m*'s final point
  int last_video = -1;              // hybrid: m*
  Placement placement;
  bool converged = true;  // false if a solver hit its iteration cap
};

// Per-video service curves for one policy. FW/FF curves are analytic with
// expected requester counts |U|*p(m); AW curves come from greedy peeling on
// the realized graph; AF curves from per-video primal-dual budget sweeps
// (test scale; pass a config to override solver defaults).
std::vector<ServiceCurve> build_curves(const Topology& topology,
                                       const Demand& demand, Policy policy,
                                       int c_max,
                                       const SolverConfig* config = nullptr);

// Unit-step greedy over concave curves: repeatedly grant one grid step of
// copies to the video with the best marginal gain (ties to the lowest video
// index). All curves must share the same grid step and have non-increasing
// marginal gains; a non-concave curve is a contract error.
AllocationResult greedy_allocate(const std::vector<ServiceCurve>& curves,
                                 double budget);

AllocationResult fixed_whole_allocate(const Topology& topology,
                                      const Demand& demand, double budget,
                                      std::uint64_t seed);

// Top K*L most popular videos at |H|/L copies each, stored as the uniform
// 1/L fraction in every cache. objective_estimate is the deterministic
// analytic value |U| * sum of their popularities.
AllocationResult fixed_fractional_allocate(const Topology& topology,
                                           const Demand& demand,
                                           double budget);

// Multi-video greedy peeling over the realized graph. With `balance` set,
// ties in marginal gain break toward the least-loaded cache.
AllocationResult adaptive_whole_allocate(const Topology& topology,
                                         const Demand& demand, double budget,
                                         bool balance = true);

AllocationResult adaptive_fractional_allocate(const Topology& topology,
                                              const Demand& demand,
                                              double budget,
                                              const SolverConfig& config,
                                              const Placement* warm = nullptr);

// Concave-hull hybrid over the FF (analytic) and AW (realized) curve pair,
// greedy on hulls with ties broken in favor of the previously allocated
// video. `threshold >= 0` switches to the fixed-threshold variant: the
// `threshold` most popular videos are forced to FF, the rest to AW.
AllocationResult hybrid_allocate(const Topology& topology,
                                 const Demand& demand, double budget,
                                 bool balance = true, int threshold = -1);

struct Evaluation {
  double total = 0.0;
  std::vector<double> per_video;
};

// Optimal no-upload-constraint routing of a placement on the realized graph:
// each peer is served min(sum of stored fractions over its caches, 1).
Evaluation evaluate_placement(const Topology& topology, const Demand& demand,
                              const Placement& placement);

// CSV exports (see README for the formats).
void save_placement_csv(const Placement& p, const std::string& path,
                        const std::string& header_params = "");
void save_report_csv(const AllocationResult& r, const Evaluation& e,
                     const std::string& path,
                     const std::string& header_params = "");
void save_curves_csv(const std::vector<ServiceCurve>& curves,
                     const std::string& path,
                     const std::string& header_params = "");

}  // namespace vodplace
