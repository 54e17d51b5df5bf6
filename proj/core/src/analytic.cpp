#include "vodplace/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vodplace/rng.hpp"

namespace vodplace {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double log_binom(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log(exp(a) + exp(b)) without overflow
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double pmiss_exact(int num_caches, int degree, int copies) {
  require(num_caches >= 1 && degree >= 1 && degree <= num_caches,
          "pmiss_exact: bad system parameters");
  require(copies >= 0, "pmiss_exact: negative copies");
  double p = 1.0;
  for (int i = 0; i < degree; ++i) {
    double factor =
        static_cast<double>(num_caches - copies - i) / (num_caches - i);
    if (factor <= 0.0) return 0.0;
    p *= factor;
  }
  return p;
}

double pmiss_randomized(int num_caches, int degree, double copies) {
  require(copies >= 0.0 && copies <= num_caches,
          "pmiss_randomized: copies outside [0, num_caches]");
  const int lo = static_cast<int>(std::floor(copies));
  const double theta = copies - lo;
  if (theta == 0.0) return pmiss_exact(num_caches, degree, lo);
  return (1.0 - theta) * pmiss_exact(num_caches, degree, lo) +
         theta * pmiss_exact(num_caches, degree, lo + 1);
}

double fw_curve(int num_caches, int degree, double num_requesters,
                double copies) {
  require(num_requesters >= 0.0, "fw_curve: negative requesters");
  return num_requesters * (1.0 - pmiss_randomized(num_caches, degree, copies));
}

double ff_curve(int num_caches, int degree, double num_requesters,
                double copies) {
  require(num_requesters >= 0.0, "ff_curve: negative requesters");
  require(copies >= 0.0, "ff_curve: negative copies");
  return num_requesters *
         std::min(degree * copies / num_caches, 1.0);
}

double aw_upper_bound(int num_caches, int degree, int num_requesters,
                      int copies) {
  require(num_requesters >= 0, "aw_upper_bound: negative requesters");
  require(copies >= 0 && copies <= num_caches,
          "aw_upper_bound: copies outside [0, num_caches]");
  if (num_requesters == 0 || copies == 0) return 0.0;

  const double p_hit = 1.0 - pmiss_exact(num_caches, degree, copies);
  if (p_hit >= 1.0) return num_requesters;
  if (p_hit <= 0.0) return 0.0;

  const int n = num_requesters;
  const double log_p = std::log(p_hit);
  const double log_q = std::log1p(-p_hit);
  const double log_subsets = log_binom(num_caches, copies);

  // log_tail[tau] = log P(X >= tau), X ~ Binomial(n, p_hit), accumulated
  // from the top so every term enters in log space.
  std::vector<double> log_tail(n + 1);
  double acc = -std::numeric_limits<double>::infinity();
  for (int k = n; k >= 1; --k) {
    double log_pmf = log_binom(n, k) + k * log_p + (n - k) * log_q;
    acc = log_add(acc, log_pmf);
    log_tail[k] = acc;
  }

  double bound = 0.0;
  for (int tau = 1; tau <= n; ++tau) {
    double log_term = log_subsets + log_tail[tau];
    bound += log_term >= 0.0 ? 1.0 : std::exp(log_term);
  }
  return bound;
}

AlphaResult optimize_alpha(const std::vector<double>& popularity, int degree,
                           double per_cache_capacity) {
  require(degree >= 2, "optimize_alpha: degree must be >= 2");
  require(!popularity.empty(), "optimize_alpha: empty popularity");
  require(per_cache_capacity > 0.0, "optimize_alpha: capacity must be > 0");
  const int m_count = static_cast<int>(popularity.size());
  // alpha(m) < 1 strictly, so the total presence mass is below |M|.
  require(per_cache_capacity < static_cast<double>(m_count),
          "optimize_alpha: capacity >= num_videos is infeasible");

  std::vector<double> root(m_count);
  double root_max = 0.0;
  for (int m = 0; m < m_count; ++m) {
    root[m] = std::pow(popularity[m], 1.0 / (degree - 1));
    root_max = std::max(root_max, root[m]);
  }

  auto alpha_sum = [&](double c) {
    double s = 0.0;
    for (int m = 0; m < m_count; ++m) s += std::max(0.0, 1.0 - c / root[m]);
    return s;
  };

  // c -> sum alpha_c is continuous and non-increasing; bracket [0, root_max]
  // maps the sum from |M| down to 0.
  double lo = 0.0, hi = root_max;
  double c = 0.0;
  bool hit = false;
  for (int it = 0; it < 200; ++it) {
    c = 0.5 * (lo + hi);
    double s = alpha_sum(c);
    if (std::abs(s - per_cache_capacity) < 1e-9) {
      hit = true;
      break;
    }
    if (s > per_cache_capacity)
      lo = c;
    else
      hi = c;
  }
  if (!hit && std::abs(alpha_sum(c) - per_cache_capacity) >= 1e-9)
    throw std::runtime_error("optimize_alpha: bisection did not converge");

  AlphaResult out;
  out.lagrange_c = c;
  out.alpha.resize(m_count);
  for (int m = 0; m < m_count; ++m)
    out.alpha[m] = std::max(0.0, 1.0 - c / root[m]);
  return out;
}

std::vector<int> dependent_rounding(const std::vector<double>& alpha,
                                    int num_caches, std::uint64_t seed) {
  require(num_caches >= 1, "dependent_rounding: num_caches must be >= 1");
  const int m_count = static_cast<int>(alpha.size());

  std::vector<double> target(m_count);
  double total = 0.0;
  for (int m = 0; m < m_count; ++m) {
    require(alpha[m] >= 0.0, "dependent_rounding: negative alpha");
    target[m] = alpha[m] * num_caches;
    total += target[m];
  }
  const double total_rounded = std::round(total);
  require(std::abs(total - total_rounded) <= 1e-6,
          "dependent_rounding: total copies is not integral");

  std::vector<int> copies(m_count);
  std::vector<double> frac(m_count);
  double frac_total = 0.0;
  for (int m = 0; m < m_count; ++m) {
    copies[m] = static_cast<int>(std::floor(target[m]));
    frac[m] = target[m] - copies[m];
    frac_total += frac[m];
  }
  const int extras = static_cast<int>(std::llround(frac_total));
  if (extras > 0) {
    // Systematic sampling over cumulative fractional parts with one uniform
    // offset: video m gains a copy iff some grid point u, u+1, ... lands in
    // its fractional interval. Marginals equal frac[m]; the total is exact.
    Rng rng(seed, Rng::Stream::rounding);
    double offset = rng.uniform01();
    double cum = 0.0;
    int next = 0;
    for (int m = 0; m < m_count && next < extras; ++m) {
      cum += frac[m];
      while (next < extras && offset + next < cum) {
        ++copies[m];
        ++next;
      }
    }
  }
  return copies;
}

}  // namespace vodplace
