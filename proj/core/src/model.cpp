#include "vodplace/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vodplace/rng.hpp"

namespace vodplace {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Topology sample_topology(int num_caches, int num_peers, int degree,
                         std::uint64_t seed) {
  require(num_caches >= 1 && num_peers >= 1 && degree >= 1,
          "sample_topology: all counts must be >= 1");
  require(degree <= num_caches,
          "sample_topology: degree must not exceed num_caches");

  Topology t;
  t.num_caches = num_caches;
  t.degree = degree;
  t.seed = seed;
  t.adjacency.resize(static_cast<std::size_t>(num_peers) * degree);

  Rng rng(seed, Rng::Stream::topology);
  std::vector<int> pool(num_caches);
  for (int u = 0; u < num_peers; ++u) {
    // partial Fisher-Yates: first `degree` entries become a uniform subset
    std::iota(pool.begin(), pool.end(), 0);
    int* row = t.adjacency.data() + static_cast<std::size_t>(u) * degree;
    for (int i = 0; i < degree; ++i) {
      int j = i + static_cast<int>(rng.below(num_caches - i));
      std::swap(pool[i], pool[j]);
      row[i] = pool[i];
    }
  }
  return t;
}

std::vector<double> zipf_popularity(int num_videos, double exponent) {
  require(num_videos >= 1, "zipf_popularity: num_videos must be >= 1");
  require(exponent >= 0.0, "zipf_popularity: exponent must be >= 0");
  std::vector<double> p(num_videos);
  double total = 0.0;
  for (int m = 0; m < num_videos; ++m) {
    p[m] = std::pow(static_cast<double>(m + 1), -exponent);
    total += p[m];
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<int> assign_requests(const std::vector<double>& popularity,
                                 int num_peers, std::uint64_t seed) {
  require(!popularity.empty(), "assign_requests: empty popularity");
  require(num_peers >= 0, "assign_requests: negative peer count");

  std::vector<double> cdf(popularity.size());
  std::partial_sum(popularity.begin(), popularity.end(), cdf.begin());
  require(std::abs(cdf.back() - 1.0) <= 1e-12,
          "assign_requests: popularity does not sum to 1");
  cdf.back() = 1.0;

  Rng rng(seed, Rng::Stream::requests);
  std::vector<int> requests(num_peers);
  for (int u = 0; u < num_peers; ++u) {
    double x = rng.uniform01();
    requests[u] = static_cast<int>(
        std::upper_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
    if (requests[u] >= static_cast<int>(popularity.size()))
      requests[u] = static_cast<int>(popularity.size()) - 1;
  }
  return requests;
}

std::vector<int> request_counts(const std::vector<int>& requests,
                                int num_videos) {
  std::vector<int> counts(num_videos, 0);
  for (int m : requests) {
    require(m >= 0 && m < num_videos, "request_counts: video index out of range");
    ++counts[m];
  }
  return counts;
}

Demand make_demand(int num_videos, double exponent, int num_peers,
                   std::uint64_t seed) {
  Demand d;
  d.num_videos = num_videos;
  d.zipf_exponent = exponent;
  d.seed = seed;
  d.popularity = zipf_popularity(num_videos, exponent);
  d.requests = assign_requests(d.popularity, num_peers, seed);
  d.counts = request_counts(d.requests, num_videos);
  return d;
}

double Placement::total_load() const {
  double total = 0.0;
  for (const auto& vid : entries)
    for (const auto& [h, w] : vid) total += w;
  return total;
}

std::vector<double> Placement::cache_loads() const {
  std::vector<double> loads(num_caches, 0.0);
  for (const auto& vid : entries)
    for (const auto& [h, w] : vid) loads[h] += w;
  return loads;
}

void Placement::validate() const {
  require(static_cast<int>(entries.size()) == num_videos,
          "Placement: entries size != num_videos");
  for (const auto& vid : entries) {
    for (const auto& [h, w] : vid) {
      require(h >= 0 && h < num_caches, "Placement: cache index out of range");
      require(w >= 0.0 && w <= 1.0, "Placement: fraction outside [0,1]");
      if (mode == Mode::whole)
        require(w == 1.0, "Placement: whole mode requires unit fractions");
    }
  }
}

// ---------------------------------------------------------------------------
// TSV I/O

void save_topology(const Topology& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "#topology caches=" << t.num_caches << " peers=" << t.num_peers()
      << " degree=" << t.degree << " seed=" << t.seed << "\n";
  for (int u = 0; u < t.num_peers(); ++u) {
    out << u;
    for (int h : t.neighbors(u)) out << '\t' << h;
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// Parses "key=value" tokens from a header line beginning with `tag`.
std::uint64_t header_u64(const std::string& line, const std::string& key) {
  auto pos = line.find(key + "=");
  if (pos == std::string::npos)
    throw std::runtime_error("missing header field: " + key);
  return std::stoull(line.substr(pos + key.size() + 1));
}

double header_f64(const std::string& line, const std::string& key) {
  auto pos = line.find(key + "=");
  if (pos == std::string::npos)
    throw std::runtime_error("missing header field: " + key);
  return std::stod(line.substr(pos + key.size() + 1));
}

}  // namespace

Topology load_topology(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("#topology", 0) != 0)
    throw std::runtime_error("not a topology file: " + path);

  Topology t;
  t.num_caches = static_cast<int>(header_u64(line, "caches"));
  t.degree = static_cast<int>(header_u64(line, "degree"));
  t.seed = header_u64(line, "seed");
  const int peers = static_cast<int>(header_u64(line, "peers"));
  t.adjacency.reserve(static_cast<std::size_t>(peers) * t.degree);

  int expect = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int id;
    if (!(row >> id) || id != expect)
      throw std::runtime_error("bad peer row in " + path);
    for (int i = 0; i < t.degree; ++i) {
      int h;
      if (!(row >> h) || h < 0 || h >= t.num_caches)
        throw std::runtime_error("bad cache index in " + path);
      t.adjacency.push_back(h);
    }
    ++expect;
  }
  if (expect != peers)
    throw std::runtime_error("peer count mismatch in " + path);
  return t;
}

void save_demand(const Demand& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", d.zipf_exponent);
  out << "#demand videos=" << d.num_videos << " exponent=" << buf
      << " seed=" << d.seed << "\n";
  for (int u = 0; u < d.num_peers(); ++u)
    out << u << '\t' << d.requests[u] << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Demand load_demand(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("#demand", 0) != 0)
    throw std::runtime_error("not a demand file: " + path);

  Demand d;
  d.num_videos = static_cast<int>(header_u64(line, "videos"));
  d.zipf_exponent = header_f64(line, "exponent");
  d.seed = header_u64(line, "seed");
  d.popularity = zipf_popularity(d.num_videos, d.zipf_exponent);

  int expect = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int id, m;
    if (!(row >> id >> m) || id != expect || m < 0 || m >= d.num_videos)
      throw std::runtime_error("bad request row in " + path);
    d.requests.push_back(m);
    ++expect;
  }
  d.counts = request_counts(d.requests, d.num_videos);
  return d;
}

}  // namespace vodplace
