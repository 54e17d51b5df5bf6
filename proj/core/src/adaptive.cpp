#include "vodplace/adaptive.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace vodplace {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

void SolverConfig::validate() const {
  require(step_rate > 0 && step_rate_price > 0 && step_storage > 0 &&
              step_storage_price > 0,
          "SolverConfig: step sizes must be positive");
  require(max_iters >= 1, "SolverConfig: max_iters must be >= 1");
  require(check_every >= 1 && trailing_window >= 1,
          "SolverConfig: check cadence must be >= 1");
}

int GreedyPeelResult::total_covered() const {
  return std::accumulate(gains.begin(), gains.end(), 0);
}

GreedyPeelResult greedy_peel(const Topology& topology,
                             std::span<const int> requesters, int copies) {
  require(copies >= 0 && copies <= topology.num_caches,
          "greedy_peel: copies outside [0, num_caches]");

  const int caches = topology.num_caches;
  std::vector<int> count(caches, 0);
  for (int u : requesters)
    for (int h : topology.neighbors(u)) ++count[h];

  std::vector<char> covered(requesters.size(), 0);
  GreedyPeelResult out;
  for (int step = 0; step < copies; ++step) {
    int best = 0;
    for (int h = 1; h < caches; ++h)
      if (count[h] > count[best]) best = h;  // ties: lowest cache index
    if (count[best] == 0) break;             // everyone already covered
    out.caches.push_back(best);
    out.gains.push_back(count[best]);
    for (std::size_t i = 0; i < requesters.size(); ++i) {
      if (covered[i]) continue;
      auto nb = topology.neighbors(requesters[i]);
      if (std::find(nb.begin(), nb.end(), best) == nb.end()) continue;
      covered[i] = 1;
      for (int h : nb) --count[h];
    }
  }
  return out;
}

int exact_cover(const Topology& topology, std::span<const int> requesters,
                int copies) {
  const int caches = topology.num_caches;
  if (copies >= caches) copies = caches;
  if (copies <= 0) return 0;

  double subsets = 1.0;
  for (int i = 0; i < copies; ++i)
    subsets *= static_cast<double>(caches - i) / (i + 1);
  require(subsets <= 1e6, "exact_cover: instance too large for the oracle");
  require(caches <= 64, "exact_cover: more than 64 caches");

  // per-requester cache mask
  std::vector<std::uint64_t> mask(requesters.size());
  for (std::size_t i = 0; i < requesters.size(); ++i) {
    std::uint64_t m = 0;
    for (int h : topology.neighbors(requesters[i])) m |= 1ULL << h;
    mask[i] = m;
  }

  int best = 0;
  std::vector<int> pick(copies);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::uint64_t sel = 0;
    for (int h : pick) sel |= 1ULL << h;
    int covered = 0;
    for (std::uint64_t m : mask)
      if (m & sel) ++covered;
    best = std::max(best, covered);

    // next combination
    int i = copies - 1;
    while (i >= 0 && pick[i] == caches - copies + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < copies; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

double routing_objective(const Topology& topology,
                         const std::vector<int>& requests, int num_videos,
                         std::span<const double> storage) {
  double total = 0.0;
  for (int u = 0; u < topology.num_peers(); ++u) {
    const int m = requests[u];
    double s = 0.0;
    for (int h : topology.neighbors(u))
      s += storage[static_cast<std::size_t>(h) * num_videos + m];
    total += std::min(s, 1.0);
  }
  return total;
}

PrimalDualResult primal_dual(const Topology& topology,
                             const std::vector<int>& requests, int num_videos,
                             double budget, const SolverConfig& config,
                             const std::vector<double>* warm_start) {
  config.validate();
  require(budget > 0.0, "primal_dual: budget must be positive");
  require(static_cast<int>(requests.size()) == topology.num_peers(),
          "primal_dual: requests size mismatch");

  const int peers = topology.num_peers();
  const int degree = topology.degree;
  const std::size_t edges = static_cast<std::size_t>(peers) * degree;
  const std::size_t cells =
      static_cast<std::size_t>(topology.num_caches) * num_videos;

  const double tol_obj =
      config.tol_objective >= 0 ? config.tol_objective : 1e-4 * peers;
  const double tol_feas =
      config.tol_feasibility >= 0 ? config.tol_feasibility : 1e-3 * budget;

  // edge -> storage cell of the requested video
  std::vector<std::size_t> cell(edges);
  for (int u = 0; u < peers; ++u) {
    auto nb = topology.neighbors(u);
    for (int l = 0; l < degree; ++l)
      cell[static_cast<std::size_t>(u) * degree + l] =
          static_cast<std::size_t>(nb[l]) * num_videos + requests[u];
  }

  std::vector<double> x(edges, 0.0), lambda(edges, 0.0);
  std::vector<double> storage(cells, 0.0);
  if (warm_start) {
    require(warm_start->size() == cells, "primal_dual: warm start size");
    storage = *warm_start;
  }
  std::vector<double> grad(cells, 0.0);
  double omega = 0.0;

  // Reported states are projected onto the budget (uniform scaling keeps
  // entries in [0,1]), so best-so-far objectives are always feasible.
  auto feasible_objective = [&](const std::vector<double>& w,
                                std::vector<double>& scratch) {
    double tot = std::accumulate(w.begin(), w.end(), 0.0);
    if (tot <= budget + 1e-12)
      return routing_objective(topology, requests, num_videos, w);
    scratch = w;
    const double scale = budget / tot;
    for (double& v : scratch) v *= scale;
    return routing_objective(topology, requests, num_videos, scratch);
  };

  std::ofstream trace;
  if (!config.trace_path.empty()) {
    trace.open(config.trace_path);
    trace << "iter,objective,storage_residual,omega\n";
  }

  PrimalDualResult out;
  std::vector<double> scratch;
  double best = feasible_objective(storage, scratch);
  std::vector<double> best_storage =
      std::accumulate(storage.begin(), storage.end(), 0.0) <= budget + 1e-12
          ? storage
          : scratch;

  double last_obj = best;
  int stable = 0;
  const auto t_start = std::chrono::steady_clock::now();

  int t = 1;
  for (; t <= config.max_iters; ++t) {
    const double decay =
        t > config.warmup ? 1.0 / std::sqrt(static_cast<double>(t - config.warmup))
                          : 1.0;
    const double dt = config.step_rate * decay;

    // Primal 1: drive each edge rate by (indicator of unmet demand) - price.
    // The positivity projection acts only at x = 0; the [0,1] box is the
    // problem's own rate constraint.
    for (int u = 0; u < peers; ++u) {
      const std::size_t base = static_cast<std::size_t>(u) * degree;
      double s = 0.0;
      for (int l = 0; l < degree; ++l) s += x[base + l];
      double drive;
      if (config.smoothing_width > 0.0)
        drive = std::clamp((1.0 - s) / config.smoothing_width, 0.0, 1.0);
      else
        drive = s < 1.0 ? 1.0 : 0.0;
      for (int l = 0; l < degree; ++l) {
        const std::size_t e = base + l;
        x[e] = std::clamp(x[e] + dt * (drive - lambda[e]), 0.0, 1.0);
      }
    }

    // Dual 1: connection prices chase (x - W)+.
    for (std::size_t e = 0; e < edges; ++e) {
      lambda[e] = std::max(
          0.0, lambda[e] + config.step_rate_price * (x[e] - storage[cell[e]]));
    }

    // Primal 2: storage follows accumulated prices minus the storage price.
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t e = 0; e < edges; ++e) grad[cell[e]] += lambda[e];
    double total_storage = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      storage[c] = std::clamp(
          storage[c] + config.step_storage * (grad[c] - omega), 0.0, 1.0);
      total_storage += storage[c];
    }

    // Dual 2: storage price chases the budget violation.
    omega = std::max(
        0.0, omega + config.step_storage_price * (total_storage - budget));

    if (t % config.check_every == 0) {
      const double obj = feasible_objective(storage, scratch);
      const double residual = total_storage - budget;
      if (obj > best) {
        best = obj;
        best_storage = residual <= 1e-12 ? storage : scratch;
      }
      if (trace.is_open())
        trace << t << ',' << obj << ',' << residual << ',' << omega << '\n';
      if (std::abs(obj - last_obj) < tol_obj && std::abs(residual) < tol_feas)
        ++stable;
      else
        stable = 0;
      last_obj = obj;
      if (stable >= config.trailing_window) {
        out.converged = true;
        break;
      }
      if (config.wall_clock_seconds > 0.0) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t_start)
                .count();
        if (elapsed > config.wall_clock_seconds) break;
      }
    }
  }

  out.iterations = std::min(t, config.max_iters);
  out.storage = std::move(best_storage);
  out.rates = std::move(x);
  out.prices = std::move(lambda);
  out.omega = omega;
  out.objective = best;
  out.storage_residual =
      std::accumulate(out.storage.begin(), out.storage.end(), 0.0) - budget;
  return out;
}

PrimalDualResult primal_dual_single(const Topology& topology,
                                    std::span<const int> requesters,
                                    double budget, const SolverConfig& config) {
  // Restrict the instance to the requesting peers; other peers neither
  // contribute objective nor constrain the single video's storage.
  Topology sub;
  sub.num_caches = topology.num_caches;
  sub.degree = topology.degree;
  sub.seed = topology.seed;
  sub.adjacency.reserve(requesters.size() * topology.degree);
  for (int u : requesters) {
    auto nb = topology.neighbors(u);
    sub.adjacency.insert(sub.adjacency.end(), nb.begin(), nb.end());
  }
  std::vector<int> requests(requesters.size(), 0);
  return primal_dual(sub, requests, 1, budget, config);
}

}  // namespace vodplace
