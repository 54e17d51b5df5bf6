#pragma once

#include <cstdint>
#include <vector>

namespace vodplace {

// Closed-form single-video quantities for the fixed placement policies, the
// adaptive-whole upper bound, and the KKT copy-count optimization for
// fixed-whole multi-video placement. All functions are pure.

// Hypergeometric miss probability for an integer number of copies: the
// probability that none of a peer's `degree` random caches stores the video.
double pmiss_exact(int num_caches, int degree, int copies);

// Fractional copy counts are interpreted through randomized rounding: the
// copy count is floor(C) with probability 1-theta and floor(C)+1 with
// probability theta, theta the fractional part of C.
double pmiss_randomized(int num_caches, int degree, double copies);

// Expected cache-served rate for fixed whole placement of C copies.
double fw_curve(int num_caches, int degree, double num_requesters,
                double copies);

// Deterministic cache-served rate for fixed uniform fractional placement:
// requesters * min(degree * C / num_caches, 1).
double ff_curve(int num_caches, int degree, double num_requesters,
                double copies);

// First-moment upper bound on the expected rate of the optimal adaptive
// whole placement of C copies. Binomial tails are combined with the cache
// subset count in log space.
double aw_upper_bound(int num_caches, int degree, int num_requesters,
                      int copies);

struct AlphaResult {
  std::vector<double> alpha;  // per-video presence probability, sums to K
  double lagrange_c = 0.0;
};

// Water-filling solution of min sum p(m)(1-alpha(m))^L s.t. sum alpha = K,
// alpha(m) = (1 - c / p(m)^(1/(L-1)))_+ with c found by bisection.
// Requires degree >= 2 and 0 < per_cache_capacity < num_videos.
AlphaResult optimize_alpha(const std::vector<double>& popularity, int degree,
                           double per_cache_capacity);

// Systematic-sampling dependent rounding of targets alpha(m)*|H| to integer
// copy counts: marginals are preserved and the total is hit exactly.
// Requires the total of the targets to be integral (tolerance 1e-6).
std::vector<int> dependent_rounding(const std::vector<double>& alpha,
                                    int num_caches, std::uint64_t seed);

}  // namespace vodplace
