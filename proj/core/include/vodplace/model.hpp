#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vodplace {

// Bipartite cache-peer connection graph. Every peer is connected to exactly
// `degree` distinct caches chosen uniformly at random. Immutable after
// construction.
struct Topology {
  int num_caches = 0;
  int degree = 0;
  std::uint64_t seed = 0;
  std::vector<int> adjacency;  // num_peers x degree, row-major

  int num_peers() const {
    return degree == 0 ? 0 : static_cast<int>(adjacency.size()) / degree;
  }
  std::span<const int> neighbors(int peer) const {
    return {adjacency.data() + static_cast<std::size_t>(peer) * degree,
            static_cast<std::size_t>(degree)};
  }
};

// Video popularity plus a realized assignment of one video per peer.
struct Demand {
  int num_videos = 0;
  double zipf_exponent = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> popularity;  // p(m), non-increasing, sums to 1
  std::vector<int> requests;       // per peer, 0-based video index
  std::vector<int> counts;         // |U_m| per video

  int num_peers() const { return static_cast<int>(requests.size()); }
};

// Per-cache, per-video stored fractions. Sparse per video: only nonzero
// entries are kept. Whole mode requires every fraction to be exactly 1.
struct Placement {
  enum class Mode { whole, fractional };

  Mode mode = Mode::whole;
  int num_caches = 0;
  int num_videos = 0;
  // entries[m] = list of (cache, fraction)
  std::vector<std::vector<std::pair<int, double>>> entries;

  double total_load() const;
  std::vector<double> cache_loads() const;
  void validate() const;  // throws std::invalid_argument on violated invariants
};

Topology sample_topology(int num_caches, int num_peers, int degree,
                         std::uint64_t seed);

std::vector<double> zipf_popularity(int num_videos, double exponent);

std::vector<int> assign_requests(const std::vector<double>& popularity,
                                 int num_peers, std::uint64_t seed);

Demand make_demand(int num_videos, double exponent, int num_peers,
                   std::uint64_t seed);

// Recompute |U_m| counts from a request vector.
std::vector<int> request_counts(const std::vector<int>& requests,
                                int num_videos);

// TSV formats (see README). Loaders validate invariants and throw
// std::runtime_error on malformed input.
void save_topology(const Topology& t, const std::string& path);
Topology load_topology(const std::string& path);
void save_demand(const Demand& d, const std::string& path);
Demand load_demand(const std::string& path);

}  // namespace vodplace
