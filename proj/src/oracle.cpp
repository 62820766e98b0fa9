#include "diamond/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/rng.hpp"
#include "parallel.hpp"

namespace diamond {

namespace {

constexpr std::size_t kMaxOracleNodes = 6000;

std::string node_key(const Angle& ang, const std::vector<std::int64_t>& prefix) {
  std::string key = std::to_string(ang.num()) + "/" + std::to_string(ang.den()) + "|";
  for (std::int64_t v : prefix) key += std::to_string(v) + ".";
  return key;
}

}  // namespace

DiscreteGraph build_graph(const ParameterSequences& seq, int level,
                          int segments_per_cell) {
  int m = segments_per_cell;
  DiscreteGraph g{seq, level, m, 0.0, {}, {}, {}, {}};
  if (level == 0) {
    if (m < 3) fail(ErrorCode::Domain, "need at least three segments on the circle");
    g.h = 2.0 * M_PI / m;
    g.cells = enumerate_cells(seq, 0);
    g.nodes.reserve(m);
    for (int r = 0; r < m; ++r) {
      Angle ang = Angle::pi_fraction(2 * r, m);
      int jl = ang.junction_level(seq).value_or(-1);
      g.nodes.push_back({Address{ang, {}}, g.h, jl});
    }
    std::vector<std::size_t> ring(m + 1);
    for (int r = 0; r < m; ++r) {
      ring[r] = static_cast<std::size_t>(r);
      g.edges.push_back({static_cast<std::size_t>(r),
                         static_cast<std::size_t>((r + 1) % m), 1.0 / g.h});
    }
    ring[m] = 0;
    g.cell_nodes.push_back(std::move(ring));
    return g;
  }
  if (m < 1) fail(ErrorCode::Domain, "segments per cell must be >= 1");
  double est = 2.0 * seq.Jd(level) * seq.Nd(level) * (m + 1.0);
  if (est > static_cast<double>(kMaxOracleNodes))
    fail(ErrorCode::Capacity, "discrete graph exceeds the node budget");
  g.h = seq.cell_length(level) / m;
  g.cells = enumerate_cells(seq, level);
  auto J = static_cast<std::int64_t>(seq.J(level));
  double Ni = seq.Nd(level);
  double cond = 1.0 / (g.h * Ni);
  std::map<std::string, std::size_t> shared;
  for (const CellWord& cell : g.cells) {
    std::vector<std::size_t> path(m + 1);
    auto arc = static_cast<std::int64_t>(cell.arc);
    for (int r = 0; r <= m; ++r) {
      Angle ang = Angle::pi_fraction(arc * m + r, J * m);
      if (r == 0 || r == m) {
        int jl = ang.junction_level(seq).value();
        std::vector<std::int64_t> prefix(cell.w.begin(),
                                         cell.w.begin() + std::max(jl - 1, 0));
        std::string key = node_key(ang, prefix);
        auto [it, inserted] = shared.emplace(key, g.nodes.size());
        if (inserted)
          g.nodes.push_back({Address{ang, std::move(prefix)},
                             g.h / seq.Nd(std::max(jl - 1, 0)), jl});
        path[r] = it->second;
      } else {
        path[r] = g.nodes.size();
        g.nodes.push_back({Address{ang, cell.w}, g.h / Ni, -1});
      }
    }
    for (int r = 0; r < m; ++r) g.edges.push_back({path[r], path[r + 1], cond});
    g.cell_nodes.push_back(std::move(path));
  }
  return g;
}

HeatOracle::HeatOracle(const DiscreteGraph& graph) : graph_(graph) {
  std::size_t n = graph_.size();
  if (n == 0) fail(ErrorCode::Domain, "empty graph");
  if (n > kMaxOracleNodes) fail(ErrorCode::Capacity, "graph too large for dense spectral solve");
  inv_sqrt_mass_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!(graph_.nodes[x].mass > 0.0)) fail(ErrorCode::Internal, "non-positive node mass");
    inv_sqrt_mass_[x] = 1.0 / std::sqrt(graph_.nodes[x].mass);
  }
  vectors_.assign(n * n, 0.0);
  for (const GraphEdge& e : graph_.edges) {
    double saa = e.conductance * inv_sqrt_mass_[e.a] * inv_sqrt_mass_[e.a];
    double sbb = e.conductance * inv_sqrt_mass_[e.b] * inv_sqrt_mass_[e.b];
    double sab = e.conductance * inv_sqrt_mass_[e.a] * inv_sqrt_mass_[e.b];
    vectors_[e.a * n + e.a] += saa;
    vectors_[e.b * n + e.b] += sbb;
    vectors_[e.a * n + e.b] -= sab;
    vectors_[e.b * n + e.a] -= sab;
  }
  lambda_.resize(n);
  lapack_int info = LAPACKE_dsyevd(
      LAPACK_ROW_MAJOR, 'V', 'U', static_cast<lapack_int>(n), vectors_.data(),
      static_cast<lapack_int>(n), lambda_.data());
  if (info != 0) fail(ErrorCode::Internal, "eigensolver failed");
}

double HeatOracle::density(double t, std::size_t x, std::size_t y) const {
  std::size_t n = size();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    acc += vectors_[x * n + k] * vectors_[y * n + k] * std::exp(-t * lambda_[k]);
  return acc * inv_sqrt_mass_[x] * inv_sqrt_mass_[y];
}

std::complex<double> HeatOracle::density(std::complex<double> tau,
                                         std::size_t x, std::size_t y) const {
  std::size_t n = size();
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    acc += vectors_[x * n + k] * vectors_[y * n + k] * std::exp(-tau * lambda_[k]);
  return acc * (inv_sqrt_mass_[x] * inv_sqrt_mass_[y]);
}

double HeatOracle::total_mass(double t, std::size_t x) const {
  double acc = 0.0;
  for (std::size_t y = 0; y < size(); ++y)
    acc += density(t, x, y) * graph_.nodes[y].mass;
  return acc;
}

std::vector<double> WalkResult::densities(const DiscreteGraph& graph) const {
  std::vector<double> out(graph.size());
  for (std::size_t y = 0; y < graph.size(); ++y)
    out[y] = static_cast<double>(node_counts[y]) /
             (static_cast<double>(walkers) * graph.nodes[y].mass);
  return out;
}

WalkResult random_walk_density(const DiscreteGraph& graph,
                               std::size_t start_node, double t,
                               std::uint64_t walkers, std::uint64_t seed,
                               int workers) {
  if (start_node >= graph.size()) fail(ErrorCode::Domain, "start node out of range");
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::Domain, "time must be positive");
  if (walkers == 0) fail(ErrorCode::Domain, "need at least one walker");
  std::vector<std::vector<std::uint32_t>> nb(graph.size());
  for (const GraphEdge& e : graph.edges) {
    nb[e.a].push_back(static_cast<std::uint32_t>(e.b));
    nb[e.b].push_back(static_cast<std::uint32_t>(e.a));
  }
  double dt = graph.h * graph.h / 4.0;
  auto steps = std::max<std::int64_t>(1, std::llround(t / dt));
  WalkResult res;
  res.walkers = walkers;
  res.steps = steps;
  res.t_effective = static_cast<double>(steps) * dt;
  res.node_counts.assign(graph.size(), 0);
  std::mutex merge;
  parallel_for(static_cast<std::size_t>(walkers), workers,
               [&](std::size_t b, std::size_t e) {
                 std::vector<std::uint64_t> local(graph.size(), 0);
                 for (std::size_t w = b; w < e; ++w) {
                   Rng rng(splitmix64(seed + w));
                   std::uint32_t pos = static_cast<std::uint32_t>(start_node);
                   for (std::int64_t s = 0; s < steps; ++s) {
                     const auto& list = nb[pos];
                     std::uint64_t r = rng.below(2 * list.size());
                     if (r < list.size()) pos = list[r];
                   }
                   ++local[pos];
                 }
                 std::lock_guard<std::mutex> lock(merge);
                 for (std::size_t i = 0; i < local.size(); ++i)
                   res.node_counts[i] += local[i];
               });
  res.cell_occupancy.assign(graph.cells.size(), 0.0);
  std::vector<std::size_t> degree(graph.size(), 0);
  for (std::size_t i = 0; i < graph.size(); ++i) degree[i] = nb[i].size();
  for (std::size_t c = 0; c < graph.cells.size(); ++c) {
    const auto& path = graph.cell_nodes[c];
    double acc = 0.0;
    int m = graph.segments_per_cell;
    for (int r = 0; r <= m; ++r) {
      double cnt = static_cast<double>(res.node_counts[path[r]]);
      if (r == 0 || r == m)
        acc += cnt / static_cast<double>(degree[path[r]]);
      else
        acc += cnt;
    }
    res.cell_occupancy[c] = acc / static_cast<double>(walkers);
  }
  return res;
}

}  // namespace diamond
