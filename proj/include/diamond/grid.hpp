#ifndef DIAMOND_GRID_HPP
#define DIAMOND_GRID_HPP

#include <cstdint>
#include <vector>

#include "diamond/geometry.hpp"
#include "diamond/params.hpp"

namespace diamond {

// Piecewise sample of a function on the level-i lattice: one value per
// midpoint node (r + 1/2) L_i / m in each of the 2 J_i N_i cells, in
// canonical cell order.  Quadrature weight per node is L_i / (N_i m).
class GridField {
 public:
  GridField(const ParameterSequences& seq, int level, int nodes_per_cell);
  static GridField constant(const ParameterSequences& seq, int level, int m,
                            double value);
  static GridField random(const ParameterSequences& seq, int level, int m,
                          std::uint64_t seed);
  template <class F>
  static GridField from_function(const ParameterSequences& seq, int level,
                                 int m, F&& fn) {
    GridField g(seq, level, m);
    for (std::size_t c = 0; c < g.cells_.size(); ++c)
      for (int r = 0; r < m; ++r)
        g.at(c, r) = fn(g.node_addr(c, r));
    return g;
  }

  const ParameterSequences& seq() const { return seq_; }
  int level() const { return level_; }
  int nodes_per_cell() const { return m_; }
  std::size_t cell_total() const { return cells_.size(); }
  std::size_t size() const { return values_.size(); }
  const std::vector<CellWord>& cells() const { return cells_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& at(std::size_t cell, int r) { return values_[cell * m_ + r]; }
  double at(std::size_t cell, int r) const { return values_[cell * m_ + r]; }
  double node_theta(int r) const;
  double weight() const;
  Address node_addr(std::size_t cell, int r) const;

 private:
  ParameterSequences seq_;
  int level_;
  int m_;
  std::vector<CellWord> cells_;
  std::vector<double> values_;
};

double integrate(const GridField& f);

struct ProjectionSplit {
  GridField sym, anti;
};
// strand-average within each bundle (per node), and its complement
ProjectionSplit project_sym(const GridField& f);

// level i -> i-1, averaging strands and concatenating the constituent fine
// arcs (j_i per coarse cell, 2 j_1 for the circle), m nodes each; node
// angles align exactly
GridField coarsen(const GridField& f);

// level k -> level i with m nodes per fine cell; copies values when the node
// lattices align, otherwise interpolates linearly in theta
GridField pullback(const GridField& coarse, int fine_level, int fine_m);

// kernel smoothing: out(x) = sum_y p_t(x, y) f(y) w_y at the field's level
GridField apply_semigroup(const GridField& f, double t, double tol = 1e-10,
                          int workers = 0);

// p_t(x, node) for every node of the grid shape
std::vector<double> kernel_row(const GridField& shape, const Address& x,
                               double t, double tol = 1e-10, int workers = 0);

// smoothing evaluated pointwise at arbitrary addresses
std::vector<double> heat_solve(const GridField& u0, double t,
                               const std::vector<Address>& points,
                               double tol = 1e-10, int workers = 0);

// discrete (1/N_i) sum_cells int f' g' dtheta; central differences inside,
// one-sided at cell ends (periodic at level 0)
double dirichlet_energy(const GridField& f, const GridField& g);

// largest spread of linearly extrapolated endpoint values over identified
// cell ends
double matching_residual(const GridField& f);

// max-norm residual of splitting the smoothing into the coarsened symmetric
// evolution plus the per-cell killed interval evolution of the complement
double check_decomposition(const GridField& f, double t, double tol = 1e-10,
                           int workers = 0);

// max over sampled pairs of |sum_z p_t(x,z) p_s(z,y) w_z - p_{t+s}(x,y)|
double check_chapman_kolmogorov(const ParameterSequences& seq, int level,
                                double t, double s, int m, int pairs,
                                std::uint64_t seed, double tol = 1e-10,
                                int workers = 0);

// max-norm residual of smoothing-then-pullback vs pullback-then-smoothing
double check_intertwining(const GridField& coarse, int fine_level, int fine_m,
                          double t, double tol = 1e-10, int workers = 0);

}  // namespace diamond

#endif
