#include "vodplace/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "vodplace/analytic.hpp"
#include "vodplace/rng.hpp"

namespace vodplace {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<std::vector<int>> requesters_by_video(const Demand& demand) {
  std::vector<std::vector<int>> by_video(demand.num_videos);
  for (int m = 0; m < demand.num_videos; ++m)
    by_video[m].reserve(demand.counts[m]);
  for (int u = 0; u < demand.num_peers(); ++u)
    by_video[demand.requests[u]].push_back(u);
  return by_video;
}

}  // namespace

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::fixed_whole: return "fw";
    case Policy::fixed_fractional: return "ff";
    case Policy::adaptive_whole: return "aw";
    case Policy::adaptive_fractional: return "af";
    case Policy::hybrid: return "hybrid";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  if (name == "fw") return Policy::fixed_whole;
  if (name == "ff") return Policy::fixed_fractional;
  if (name == "aw") return Policy::adaptive_whole;
  if (name == "af") return Policy::adaptive_fractional;
  if (name == "hybrid") return Policy::hybrid;
  throw std::invalid_argument("unknown policy: " + name);
}

double ServiceCurve::value_at(double copies) const {
  if (values.empty()) return 0.0;
  const double pos = copies / step;
  if (pos <= 0.0) return values.front();
  if (pos >= static_cast<double>(values.size() - 1)) return values.back();
  const int lo = static_cast<int>(pos);
  const double frac = pos - lo;
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

void ServiceCurve::validate() const {
  require(!values.empty(), "ServiceCurve: empty");
  require(std::abs(values.front()) <= 1e-9, "ServiceCurve: f(0) != 0");
  for (std::size_t i = 1; i < values.size(); ++i)
    require(values[i] >= values[i - 1] - 1e-9,
            "ServiceCurve: not non-decreasing (video " +
                std::to_string(video_id) + ")");
}

HullResult concave_hull(std::span<const double> values) {
  require(!values.empty(), "concave_hull: empty input");
  const int n = static_cast<int>(values.size());

  // Upper hull by monotone chain over the points (i, values[i]).
  std::vector<int> chain;
  for (int i = 0; i < n; ++i) {
    while (chain.size() >= 2) {
      const int a = chain[chain.size() - 2], b = chain.back();
      // pop b if it lies on or below segment a-i
      if ((values[b] - values[a]) * (i - b) <=
          (values[i] - values[b]) * (b - a) + 1e-12)
        chain.pop_back();
      else
        break;
    }
    chain.push_back(i);
  }

  HullResult out;
  out.hull.resize(n);
  for (std::size_t s = 0; s + 1 < chain.size(); ++s) {
    const int a = chain[s], b = chain[s + 1];
    const double slope = (values[b] - values[a]) / (b - a);
    for (int i = a; i <= b; ++i) out.hull[i] = values[a] + slope * (i - a);
    if (b - a > 1 && b - a > out.segment_hi - out.segment_lo) {
      out.segment_lo = a;
      out.segment_hi = b;
    }
  }
  if (chain.size() == 1) out.hull[0] = values[0];

  for (int i = 0; i < n; ++i) {
    const double gap = out.hull[i] - values[i];
    if (gap > out.gap) {
      out.gap = gap;
      out.gap_index = i;
    }
  }
  return out;
}

std::vector<ServiceCurve> build_curves(const Topology& topology,
                                       const Demand& demand, Policy policy,
                                       int c_max, const SolverConfig* config) {
  require(c_max >= 1 && c_max <= topology.num_caches,
          "build_curves: c_max outside [1, num_caches]");
  const int caches = topology.num_caches;
  const int degree = topology.degree;
  const double peers = demand.num_peers();

  std::vector<ServiceCurve> curves;
  curves.reserve(demand.num_videos);

  std::vector<std::vector<int>> by_video;
  if (policy == Policy::adaptive_whole ||
      policy == Policy::adaptive_fractional)
    by_video = requesters_by_video(demand);

  for (int m = 0; m < demand.num_videos; ++m) {
    ServiceCurve c;
    c.video_id = m;
    c.policy = policy;
    switch (policy) {
      case Policy::fixed_whole: {
        c.step = 1.0;
        c.realized = false;
        const double expect = peers * demand.popularity[m];
        for (int k = 0; k <= c_max; ++k)
          c.values.push_back(fw_curve(caches, degree, expect, k));
        break;
      }
      case Policy::fixed_fractional: {
        // half-copy grid so the |H|/L saturation point is representable for
        // even degrees; the curve stops at saturation (flat beyond).
        c.step = 0.5;
        c.realized = false;
        const double expect = peers * demand.popularity[m];
        const double sat = static_cast<double>(caches) / degree;
        const int steps = std::min(static_cast<int>(std::ceil(sat / c.step)),
                                   2 * c_max);
        for (int k = 0; k <= steps; ++k)
          c.values.push_back(
              ff_curve(caches, degree, expect, k * c.step));
        break;
      }
      case Policy::adaptive_whole: {
        c.step = 1.0;
        c.realized = true;
        auto peel = greedy_peel(topology, by_video[m], c_max);
        double acc = 0.0;
        c.values.push_back(0.0);
        for (int g : peel.gains) {
          acc += g;
          c.values.push_back(acc);
        }
        // flat tail once everyone is covered; one extra point so the greedy
        // sees the zero marginal gain
        if (static_cast<int>(c.values.size()) <= c_max)
          c.values.push_back(acc);
        break;
      }
      case Policy::adaptive_fractional: {
        c.step = 1.0;
        c.realized = true;
        SolverConfig cfg = config ? *config : SolverConfig{};
        c.values.push_back(0.0);
        for (int k = 1; k <= c_max; ++k) {
          auto r = primal_dual_single(topology, by_video[m],
                                      static_cast<double>(k), cfg);
          // budget sweeps of a concave objective: enforce monotonicity
          // against solver noise
          c.values.push_back(std::max(r.objective, c.values.back()));
          if (c.values.back() >=
              static_cast<double>(by_video[m].size()) - 1e-6)
            break;
        }
        break;
      }
      case Policy::hybrid:
        throw std::invalid_argument(
            "build_curves: hybrid is an allocator, not a curve family");
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

namespace {

// Shared unit-step greedy used by greedy_allocate. `tie_previous` enables the
// rule of extending the previously allocated video when it ties for the best
// marginal gain.
struct GreedyState {
  std::vector<int> units;  // grid index per video
  double objective = 0.0;
  double allocated_units = 0;
  int last_video = -1;  // video receiving the final unit
};

GreedyState run_unit_greedy(const std::vector<std::vector<double>>& values,
                            long long budget_units, bool tie_previous) {
  const int n = static_cast<int>(values.size());
  GreedyState st;
  st.units.assign(n, 0);

  auto gain = [&](int m) {
    const int k = st.units[m];
    if (k + 1 >= static_cast<int>(values[m].size())) return -1.0;
    return values[m][k + 1] - values[m][k];
  };

  // lazy max-heap of (gain, video); ties to the lowest video index
  using Entry = std::pair<double, int>;
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (int m = 0; m < n; ++m)
    if (gain(m) >= 0.0) heap.emplace(gain(m), m);

  int prev = -1;
  for (long long step = 0; step < budget_units; ++step) {
    // pop until the top entry is current
    while (!heap.empty() && std::abs(heap.top().first - gain(heap.top().second)) > 1e-12) {
      const int m = heap.top().second;
      heap.pop();
      if (gain(m) >= 0.0) heap.emplace(gain(m), m);
    }
    if (heap.empty()) break;
    int pick = heap.top().second;
    double g = heap.top().first;
    if (tie_previous && prev >= 0 && prev != pick) {
      const double gp = gain(prev);
      if (gp >= g - 1e-9) {
        pick = prev;
        g = gp;
      }
    }
    if (pick == heap.top().second) heap.pop();
    st.objective += values[pick][st.units[pick] + 1] - values[pick][st.units[pick]];
    ++st.units[pick];
    ++st.allocated_units;
    prev = pick;
    st.last_video = pick;
    if (gain(pick) >= 0.0) heap.emplace(gain(pick), pick);
  }
  return st;
}

}  // namespace

AllocationResult greedy_allocate(const std::vector<ServiceCurve>& curves,
                                 double budget) {
  require(!curves.empty(), "greedy_allocate: no curves");
  require(budget >= 0.0, "greedy_allocate: negative budget");
  const double step = curves.front().step;
  std::vector<std::vector<double>> values;
  values.reserve(curves.size());
  for (const auto& c : curves) {
    require(c.step == step, "greedy_allocate: curves must share a grid step");
    c.validate();
    for (std::size_t i = 2; i < c.values.size(); ++i) {
      const double g0 = c.values[i - 1] - c.values[i - 2];
      const double g1 = c.values[i] - c.values[i - 1];
      require(g1 <= g0 + 1e-9,
              "greedy_allocate: non-concave curve for video " +
                  std::to_string(c.video_id));
    }
    values.push_back(c.values);
  }

  const long long budget_units = std::llround(budget / step);
  require(std::abs(budget_units * step - budget) <= 1e-9,
          "greedy_allocate: budget is not a multiple of the grid step");

  GreedyState st = run_unit_greedy(values, budget_units, /*tie_previous=*/false);

  AllocationResult out;
  out.policy = curves.front().policy;
  out.copies.resize(curves.size());
  for (std::size_t m = 0; m < curves.size(); ++m)
    out.copies[m] = st.units[m] * step;
  out.total_copies = st.allocated_units * step;
  out.objective_estimate = st.objective;
  return out;
}

AllocationResult fixed_whole_allocate(const Topology& topology,
                                      const Demand& demand, double budget,
                                      std::uint64_t seed) {
  const int caches = topology.num_caches;
  require(std::abs(budget - std::round(budget)) <= 1e-9,
          "fixed_whole_allocate: budget must be an integer copy count");
  const double capacity = budget / caches;

  auto kkt = optimize_alpha(demand.popularity, topology.degree, capacity);
  auto copies = dependent_rounding(kkt.alpha, caches, seed);

  AllocationResult out;
  out.policy = Policy::fixed_whole;
  out.copies.assign(copies.begin(), copies.end());
  out.total_copies = std::accumulate(copies.begin(), copies.end(), 0);

  // uniform random C_m-subset per video
  Rng rng(seed, Rng::Stream::placement);
  out.placement.mode = Placement::Mode::whole;
  out.placement.num_caches = caches;
  out.placement.num_videos = demand.num_videos;
  out.placement.entries.resize(demand.num_videos);
  std::vector<int> pool(caches);
  double estimate = 0.0;
  for (int m = 0; m < demand.num_videos; ++m) {
    const int c_m = copies[m];
    estimate += fw_curve(caches, topology.degree,
                         demand.num_peers() * demand.popularity[m],
                         static_cast<double>(c_m));
    if (c_m == 0) continue;
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < c_m; ++i) {
      int j = i + static_cast<int>(rng.below(caches - i));
      std::swap(pool[i], pool[j]);
      out.placement.entries[m].emplace_back(pool[i], 1.0);
    }
  }
  out.objective_estimate = estimate;
  return out;
}

AllocationResult fixed_fractional_allocate(const Topology& topology,
                                           const Demand& demand,
                                           double budget) {
  const int caches = topology.num_caches;
  const int degree = topology.degree;
  const double per_video = static_cast<double>(caches) / degree;  // saturation
  require(budget <= per_video * demand.num_videos + 1e-9,
          "fixed_fractional_allocate: budget exceeds catalog saturation");

  const int full = static_cast<int>(std::floor(budget / per_video + 1e-9));
  const double remainder = budget - full * per_video;

  AllocationResult out;
  out.policy = Policy::fixed_fractional;
  out.copies.assign(demand.num_videos, 0.0);
  out.placement.mode = Placement::Mode::fractional;
  out.placement.num_caches = caches;
  out.placement.num_videos = demand.num_videos;
  out.placement.entries.resize(demand.num_videos);

  double estimate = 0.0;
  const double peers = demand.num_peers();
  for (int m = 0; m < full; ++m) {
    out.copies[m] = per_video;
    estimate += peers * demand.popularity[m];
    for (int h = 0; h < caches; ++h)
      out.placement.entries[m].emplace_back(h, 1.0 / degree);
  }
  if (remainder > 1e-9 && full < demand.num_videos) {
    out.copies[full] = remainder;
    estimate += ff_curve(caches, degree, peers * demand.popularity[full],
                         remainder);
    const double w = remainder / caches;
    for (int h = 0; h < caches; ++h)
      out.placement.entries[full].emplace_back(h, w);
  }
  out.total_copies = budget;
  out.objective_estimate = estimate;
  return out;
}

namespace {

// Multi-video greedy peeling on the realized graph under a shared copy
// budget. `per_video_cap`, when non-empty, limits copies per video (used to
// realize hybrid AW assignments). Ties in marginal gain break toward the
// least-loaded cache when `balance` is set, then the lowest cache index.
struct MultiPeel {
  std::vector<int> copies;                              // per video
  std::vector<std::vector<std::pair<int, double>>> entries;  // per video
  double covered = 0.0;
};

MultiPeel multi_greedy_peel(const Topology& topology, const Demand& demand,
                            long long budget, bool balance,
                            const std::vector<int>* per_video_cap,
                            std::vector<double> load) {
  const int caches = topology.num_caches;
  const int videos = demand.num_videos;

  std::vector<int> count(static_cast<std::size_t>(caches) * videos, 0);
  std::vector<std::vector<int>> peers_of(caches);
  for (int u = 0; u < topology.num_peers(); ++u) {
    for (int h : topology.neighbors(u)) {
      ++count[static_cast<std::size_t>(h) * videos + demand.requests[u]];
      peers_of[h].push_back(u);
    }
  }

  // one lazy max-heap of (count, video) per cache
  using Entry = std::pair<int, int>;
  std::vector<std::priority_queue<Entry>> heaps(caches);
  std::vector<int> budget_left;
  if (per_video_cap) budget_left = *per_video_cap;
  for (int h = 0; h < caches; ++h)
    for (int m = 0; m < videos; ++m) {
      const int c = count[static_cast<std::size_t>(h) * videos + m];
      if (c > 0 && (!per_video_cap || budget_left[m] > 0))
        heaps[h].emplace(c, m);
    }

  std::vector<char> covered(topology.num_peers(), 0);
  std::vector<char> stored(static_cast<std::size_t>(caches) * videos, 0);
  if (load.empty()) load.assign(caches, 0.0);

  MultiPeel out;
  out.copies.assign(videos, 0);
  out.entries.resize(videos);

  auto valid_top = [&](int h) -> int {
    auto& heap = heaps[h];
    while (!heap.empty()) {
      const auto [g, m] = heap.top();
      if (per_video_cap && budget_left[m] <= 0) {
        heap.pop();
        continue;
      }
      const int cur = count[static_cast<std::size_t>(h) * videos + m];
      if (g == cur && !stored[static_cast<std::size_t>(h) * videos + m])
        return g;
      heap.pop();
      if (cur > 0 && !stored[static_cast<std::size_t>(h) * videos + m])
        heap.emplace(cur, m);
    }
    return 0;
  };

  for (long long placed = 0; placed < budget; ++placed) {
    int best_h = -1, best_g = 0;
    for (int h = 0; h < caches; ++h) {
      const int g = valid_top(h);
      if (g == 0) continue;
      if (g > best_g ||
          (g == best_g && balance && load[h] < load[best_h]))
        best_g = g, best_h = h;
    }
    if (best_h < 0) break;  // no remaining positive marginal gain

    const auto [g, m] = heaps[best_h].top();
    heaps[best_h].pop();
    const int h = best_h;
    stored[static_cast<std::size_t>(h) * videos + m] = 1;
    ++out.copies[m];
    out.entries[m].emplace_back(h, 1.0);
    out.covered += g;
    load[h] += 1.0;
    if (per_video_cap) --budget_left[m];

    for (int u : peers_of[h]) {
      if (covered[u] || demand.requests[u] != m) continue;
      covered[u] = 1;
      for (int h2 : topology.neighbors(u))
        --count[static_cast<std::size_t>(h2) * videos + m];
    }
  }
  return out;
}

}  // namespace

AllocationResult adaptive_whole_allocate(const Topology& topology,
                                         const Demand& demand, double budget,
                                         bool balance) {
  require(std::abs(budget - std::round(budget)) <= 1e-9,
          "adaptive_whole_allocate: budget must be an integer copy count");
  const long long copies = std::llround(budget);

  auto peel = multi_greedy_peel(topology, demand, copies, balance, nullptr, {});

  AllocationResult out;
  out.policy = Policy::adaptive_whole;
  out.copies.assign(peel.copies.begin(), peel.copies.end());
  out.total_copies =
      std::accumulate(peel.copies.begin(), peel.copies.end(), 0);
  out.objective_estimate = peel.covered;
  out.placement.mode = Placement::Mode::whole;
  out.placement.num_caches = topology.num_caches;
  out.placement.num_videos = demand.num_videos;
  out.placement.entries = std::move(peel.entries);
  return out;
}

AllocationResult adaptive_fractional_allocate(const Topology& topology,
                                              const Demand& demand,
                                              double budget,
                                              const SolverConfig& config,
                                              const Placement* warm) {
  const int caches = topology.num_caches;
  const int videos = demand.num_videos;
  std::vector<double> init;
  if (warm) {
    init.assign(static_cast<std::size_t>(caches) * videos, 0.0);
    for (int m = 0; m < videos; ++m)
      for (const auto& [h, w] : warm->entries[m])
        init[static_cast<std::size_t>(h) * videos + m] = w;
  }

  auto r = primal_dual(topology, demand.requests, videos, budget, config,
                       warm ? &init : nullptr);

  AllocationResult out;
  out.policy = Policy::adaptive_fractional;
  out.converged = r.converged;
  out.objective_estimate = r.objective;
  out.copies.assign(videos, 0.0);
  out.placement.mode = Placement::Mode::fractional;
  out.placement.num_caches = caches;
  out.placement.num_videos = videos;
  out.placement.entries.resize(videos);
  for (int h = 0; h < caches; ++h)
    for (int m = 0; m < videos; ++m) {
      const double w = r.storage[static_cast<std::size_t>(h) * videos + m];
      if (w > 1e-9) {
        out.copies[m] += w;
        out.placement.entries[m].emplace_back(h, w);
      }
    }
  out.total_copies =
      std::accumulate(out.copies.begin(), out.copies.end(), 0.0);
  return out;
}

AllocationResult hybrid_allocate(const Topology& topology,
                                 const Demand& demand, double budget,
                                 bool balance, int threshold) {
  require(std::abs(budget - std::round(budget)) <= 1e-9,
          "hybrid_allocate: budget must be an integer copy count");
  const int caches = topology.num_caches;
  const int degree = topology.degree;
  const int videos = demand.num_videos;
  const int c_max = caches;
  const double peers = demand.num_peers();

  auto by_video = requesters_by_video(demand);

  // f0: analytic fixed-fractional, f1: realized adaptive-whole (greedy peel)
  std::vector<std::vector<double>> f0(videos), f1(videos), hulls(videos);
  for (int m = 0; m < videos; ++m) {
    const double expect = peers * demand.popularity[m];
    f0[m].resize(c_max + 1);
    for (int k = 0; k <= c_max; ++k)
      f0[m][k] = ff_curve(caches, degree, expect, static_cast<double>(k));

    auto peel = greedy_peel(topology, by_video[m], c_max);
    f1[m].assign(c_max + 1, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < peel.gains.size(); ++i) {
      acc += peel.gains[i];
      f1[m][i + 1] = acc;
    }
    for (std::size_t i = peel.gains.size() + 1; i <= static_cast<std::size_t>(c_max); ++i)
      f1[m][i] = acc;

    std::vector<double> fmax(c_max + 1);
    if (threshold >= 0) {
      // fixed-threshold variant: the policy is pre-assigned by popularity
      fmax = m < threshold ? f0[m] : f1[m];
    } else {
      for (int k = 0; k <= c_max; ++k) fmax[k] = std::max(f0[m][k], f1[m][k]);
    }
    hulls[m] = concave_hull(fmax).hull;
  }

  GreedyState st =
      run_unit_greedy(hulls, std::llround(budget), /*tie_previous=*/true);

  AllocationResult out;
  out.policy = Policy::hybrid;
  out.copies.assign(videos, 0.0);
  out.policy_choice.assign(videos, 1);
  out.hull_value = 0.0;
  double realized_estimate = 0.0;
  for (int m = 0; m < videos; ++m) {
    const int k = st.units[m];
    out.copies[m] = k;
    out.hull_value += hulls[m][k];
    int choice;
    if (threshold >= 0)
      choice = m < threshold ? 0 : 1;
    else
      choice = f0[m][k] > f1[m][k] ? 0 : 1;
    out.policy_choice[m] = choice;
    realized_estimate += choice == 0 ? f0[m][k] : f1[m][k];
  }
  out.total_copies = st.allocated_units;
  out.objective_estimate = realized_estimate;

  out.last_video = st.last_video;
  // Certificate term: hull - achieved value at the last video's final
  // allocation. Every other video ends on a hull vertex, so this is the
  // exact shortfall U = V - delta (the per-video max gap only bounds it).
  out.hull_gap_last = 0.0;
  if (st.last_video >= 0) {
    const int m = st.last_video;
    const int k = st.units[m];
    const double achieved =
        out.policy_choice[m] == 0 ? f0[m][k] : f1[m][k];
    out.hull_gap_last = hulls[m][k] - achieved;
  }

  // realization: FF videos as the uniform fraction C/|H| in every cache,
  // AW videos by budget-capped greedy peeling with load-aware tie-breaks
  out.placement.mode = Placement::Mode::fractional;
  out.placement.num_caches = caches;
  out.placement.num_videos = videos;
  out.placement.entries.resize(videos);
  std::vector<double> load(caches, 0.0);
  std::vector<int> aw_cap(videos, 0);
  long long aw_budget = 0;
  for (int m = 0; m < videos; ++m) {
    const int k = st.units[m];
    if (k == 0) continue;
    if (out.policy_choice[m] == 0) {
      const double w = static_cast<double>(k) / caches;
      for (int h = 0; h < caches; ++h) {
        out.placement.entries[m].emplace_back(h, std::min(w, 1.0));
        load[h] += std::min(w, 1.0);
      }
    } else {
      aw_cap[m] = k;
      aw_budget += k;
    }
  }
  if (aw_budget > 0) {
    auto peel = multi_greedy_peel(topology, demand, aw_budget, balance,
                                  &aw_cap, load);
    for (int m = 0; m < videos; ++m)
      if (!peel.entries[m].empty())
        out.placement.entries[m] = std::move(peel.entries[m]);
  }
  return out;
}

Evaluation evaluate_placement(const Topology& topology, const Demand& demand,
                              const Placement& placement) {
  require(placement.num_caches == topology.num_caches &&
              placement.num_videos == demand.num_videos,
          "evaluate_placement: dimension mismatch");

  auto by_video = requesters_by_video(demand);

  Evaluation out;
  out.per_video.assign(demand.num_videos, 0.0);
  std::vector<double> dense(topology.num_caches, 0.0);
  for (int m = 0; m < demand.num_videos; ++m) {
    if (placement.entries[m].empty() || by_video[m].empty()) continue;
    for (const auto& [h, w] : placement.entries[m]) dense[h] += w;
    double served = 0.0;
    for (int u : by_video[m]) {
      double s = 0.0;
      for (int h : topology.neighbors(u)) s += dense[h];
      served += std::min(s, 1.0);
    }
    out.per_video[m] = served;
    out.total += served;
    for (const auto& [h, w] : placement.entries[m]) dense[h] = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV exports

void save_placement_csv(const Placement& p, const std::string& path,
                        const std::string& header_params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (!header_params.empty()) out << "#" << header_params << "\n";
  out << "video_id,cache_id,fraction\n";
  char buf[64];
  for (int m = 0; m < p.num_videos; ++m)
    for (const auto& [h, w] : p.entries[m]) {
      std::snprintf(buf, sizeof buf, "%.12g", w);
      out << m << ',' << h << ',' << buf << '\n';
    }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void save_report_csv(const AllocationResult& r, const Evaluation& e,
                     const std::string& path,
                     const std::string& header_params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (!header_params.empty()) out << "#" << header_params << "\n";
  out << "video_id,copies,policy,served_estimate\n";
  char buf[64];
  for (std::size_t m = 0; m < r.copies.size(); ++m) {
    const char* pol = "";
    if (!r.policy_choice.empty())
      pol = r.policy_choice[m] == 0 ? "ff" : "aw";
    std::snprintf(buf, sizeof buf, "%.12g", r.copies[m]);
    out << m << ',' << buf << ',' << pol << ',';
    std::snprintf(buf, sizeof buf, "%.12g",
                  m < e.per_video.size() ? e.per_video[m] : 0.0);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void save_curves_csv(const std::vector<ServiceCurve>& curves,
                     const std::string& path,
                     const std::string& header_params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (!header_params.empty()) out << "#" << header_params << "\n";
  out << "video_id,policy,copies,value\n";
  char a[64], b[64];
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      std::snprintf(a, sizeof a, "%.12g", i * c.step);
      std::snprintf(b, sizeof b, "%.12g", c.values[i]);
      out << c.video_id << ',' << policy_name(c.policy) << ',' << a << ','
          << b << '\n';
    }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vodplace
