#ifndef DIAMOND_ORACLE_HPP
#define DIAMOND_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "diamond/geometry.hpp"
#include "diamond/params.hpp"

namespace diamond {

// Finite-difference model of the lattice: one node per junction (shared by all
// incident strands) plus m-1 interior nodes per cell, with lumped masses and
// per-segment conductances.
struct GraphNode {
  Address addr;
  double mass = 0.0;
  int junction_level = -1;  // -1 for interior nodes
};

struct GraphEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double conductance = 0.0;
};

struct DiscreteGraph {
  ParameterSequences seq;
  int level = 0;
  int segments_per_cell = 0;
  double h = 0.0;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  std::vector<CellWord> cells;
  // per cell, the m+1 node ids in order along the cell
  std::vector<std::vector<std::size_t>> cell_nodes;

  std::size_t size() const { return nodes.size(); }
};

DiscreteGraph build_graph(const ParameterSequences& seq, int level,
                          int segments_per_cell);

// Dense spectral solver for the graph generator; supports real and
// Wick-rotated evolution from one symmetric eigendecomposition.
class HeatOracle {
 public:
  explicit HeatOracle(const DiscreteGraph& graph);

  const DiscreteGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }

  // transition density with respect to the weighted arc-length measure
  double density(double t, std::size_t x, std::size_t y) const;
  std::complex<double> density(std::complex<double> tau, std::size_t x,
                               std::size_t y) const;
  // total measure seen from x (should stay 1 for all t)
  double total_mass(double t, std::size_t x) const;

  const std::vector<double>& eigenvalues() const { return lambda_; }

 private:
  DiscreteGraph graph_;
  std::vector<double> lambda_;
  std::vector<double> vectors_;       // row-major, vectors_[x * n + k]
  std::vector<double> inv_sqrt_mass_;
};

struct WalkResult {
  std::vector<std::uint64_t> node_counts;
  std::vector<double> cell_occupancy;  // fraction of walkers per cell
  std::uint64_t walkers = 0;
  std::int64_t steps = 0;
  double t_effective = 0.0;

  std::vector<double> densities(const DiscreteGraph& graph) const;
};

// Lazy nearest-neighbour walk started at one node; time step h^2/4.
WalkResult random_walk_density(const DiscreteGraph& graph,
                               std::size_t start_node, double t,
                               std::uint64_t walkers, std::uint64_t seed,
                               int workers = 0);

}  // namespace diamond

#endif
