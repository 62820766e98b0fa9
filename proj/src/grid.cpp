#include "diamond/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/fractal_kernel.hpp"
#include "diamond/kernel1d.hpp"
#include "diamond/rng.hpp"
#include "parallel.hpp"

namespace diamond {

namespace {

constexpr std::size_t kMaxGridValues = std::size_t{1} << 23;
constexpr std::size_t kMaxSmoothingNodes = std::size_t{1} << 15;

void require_same_shape(const GridField& a, const GridField& b) {
  if (!(a.seq() == b.seq()) || a.level() != b.level() ||
      a.nodes_per_cell() != b.nodes_per_cell())
    fail(ErrorCode::Domain, "grid fields must share parameters, level and node count");
}

std::string junction_key(const ParameterSequences& seq, const CellWord& cell,
                         bool end) {
  if (cell.level == 0) return "0/1|";
  std::int64_t arcs = static_cast<std::int64_t>(2 * seq.J(cell.level));
  std::int64_t a = static_cast<std::int64_t>(cell.arc) + (end ? 1 : 0);
  a %= arcs;
  Angle ang = Angle::pi_fraction(a, static_cast<std::int64_t>(seq.J(cell.level)));
  int jl = ang.junction_level(seq).value_or(cell.level);
  std::string key = std::to_string(ang.num()) + "/" + std::to_string(ang.den()) + "|";
  for (int l = 0; l + 1 < jl; ++l) key += std::to_string(cell.w[l]) + ".";
  return key;
}

}  // namespace

GridField::GridField(const ParameterSequences& seq, int level, int nodes_per_cell)
    : seq_(seq), level_(level), m_(nodes_per_cell) {
  if (m_ < 1) fail(ErrorCode::Domain, "nodes per cell must be >= 1");
  cells_ = enumerate_cells(seq_, level_);
  if (cells_.size() > kMaxGridValues / static_cast<std::size_t>(m_))
    fail(ErrorCode::Capacity, "grid exceeds the node budget");
  values_.assign(cells_.size() * static_cast<std::size_t>(m_), 0.0);
}

GridField GridField::constant(const ParameterSequences& seq, int level, int m,
                              double value) {
  GridField g(seq, level, m);
  std::fill(g.values_.begin(), g.values_.end(), value);
  return g;
}

GridField GridField::random(const ParameterSequences& seq, int level, int m,
                            std::uint64_t seed) {
  GridField g(seq, level, m);
  Rng rng(seed);
  for (auto& v : g.values_) v = rng.uniform(-1.0, 1.0);
  return g;
}

double GridField::node_theta(int r) const {
  return (r + 0.5) * seq_.cell_length(level_) / m_;
}

double GridField::weight() const {
  return seq_.cell_length(level_) / (seq_.Nd(level_) * m_);
}

Address GridField::node_addr(std::size_t cell, int r) const {
  return node_address(seq_, cells_[cell], r, m_);
}

double integrate(const GridField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.weight();
}

ProjectionSplit project_sym(const GridField& f) {
  ProjectionSplit out{f, f};
  if (f.level() == 0) {
    std::fill(out.anti.values().begin(), out.anti.values().end(), 0.0);
    return out;
  }
  int m = f.nodes_per_cell();
  std::int64_t n = f.seq().n(f.level());
  // canonical order keeps the n_i strands of one bundle contiguous
  for (std::size_t c0 = 0; c0 < f.cell_total(); c0 += n) {
    for (int r = 0; r < m; ++r) {
      double mean = 0.0;
      for (std::int64_t v = 0; v < n; ++v) mean += f.at(c0 + v, r);
      mean /= static_cast<double>(n);
      for (std::int64_t v = 0; v < n; ++v) {
        out.sym.at(c0 + v, r) = mean;
        out.anti.at(c0 + v, r) = f.at(c0 + v, r) - mean;
      }
    }
  }
  return out;
}

GridField coarsen(const GridField& f) {
  int i = f.level();
  if (i < 1) fail(ErrorCode::Domain, "coarsen requires level >= 1");
  int m = f.nodes_per_cell();
  std::int64_t ji = f.seq().j(i), ni = f.seq().n(i);
  // the level-0 cell is the whole circle, 2 j_1 fine arcs; deeper coarse
  // cells consist of j_i fine arcs
  std::int64_t arcs_per = i == 1 ? 2 * ji : ji;
  GridField out(f.seq(), i - 1, static_cast<int>(arcs_per) * m);
  for (std::size_t cc = 0; cc < out.cell_total(); ++cc) {
    const CellWord& coarse = out.cells()[cc];
    for (std::int64_t sub = 0; sub < arcs_per; ++sub) {
      CellWord fine;
      fine.level = i;
      fine.arc = coarse.arc * static_cast<uint128>(arcs_per) +
                 static_cast<uint128>(sub);
      fine.w = coarse.w;
      fine.w.push_back(1);
      std::size_t base = cell_index(f.seq(), fine);
      for (int r = 0; r < m; ++r) {
        double mean = 0.0;
        for (std::int64_t v = 0; v < ni; ++v) mean += f.at(base + v, r);
        out.at(cc, static_cast<int>(sub) * m + r) = mean / static_cast<double>(ni);
      }
    }
  }
  return out;
}

GridField pullback(const GridField& coarse, int fine_level, int fine_m) {
  int k = coarse.level();
  if (fine_level < k) fail(ErrorCode::Domain, "pullback target must be at least the source level");
  if (fine_level > coarse.seq().depth())
    fail(ErrorCode::Range, "pullback target level exceeds depth");
  GridField out(coarse.seq(), fine_level, fine_m);
  int mk = coarse.nodes_per_cell();
  double Lk = coarse.seq().cell_length(k);
  for (std::size_t c = 0; c < out.cell_total(); ++c) {
    for (int r = 0; r < fine_m; ++r) {
      Address a = out.node_addr(c, r);
      CellCoord cc = locate(coarse.seq(), a, k);
      std::size_t ci = cell_index(coarse.seq(), cc.cell);
      double pos = cc.theta / Lk * mk - 0.5;
      double nearest = std::round(pos);
      if (std::fabs(pos - nearest) < 1e-9) {
        int s = std::clamp(static_cast<int>(nearest), 0, mk - 1);
        out.at(c, r) = coarse.at(ci, s);
      } else {
        // linear interpolation between bracketing nodes, one-sided at the ends
        int s0 = std::clamp(static_cast<int>(std::floor(pos)), 0, mk - 2);
        double frac = pos - s0;
        out.at(c, r) = coarse.at(ci, s0) * (1.0 - frac) + coarse.at(ci, s0 + 1) * frac;
      }
    }
  }
  return out;
}

GridField apply_semigroup(const GridField& f, double t, double tol, int workers) {
  if (f.size() > kMaxSmoothingNodes)
    fail(ErrorCode::Capacity, "grid too large for dense kernel smoothing");
  GridField out(f.seq(), f.level(), f.nodes_per_cell());
  int m = f.nodes_per_cell();
  double w = f.weight();
  std::size_t ncells = f.cell_total();
  std::vector<Address> addrs(f.size());
  for (std::size_t c = 0; c < ncells; ++c)
    for (int r = 0; r < m; ++r) addrs[c * m + r] = f.node_addr(c, r);
  parallel_for(f.size(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t ix = b; ix < e; ++ix) {
      double acc = 0.0;
      for (std::size_t iy = 0; iy < f.size(); ++iy)
        acc += heat_kernel_level(f.seq(), f.level(), addrs[ix], addrs[iy], t, tol)
                   .real() *
               f.values()[iy];
      out.values()[ix] = acc * w;
    }
  });
  return out;
}

std::vector<double> kernel_row(const GridField& shape, const Address& x,
                               double t, double tol, int workers) {
  validate_address(shape.seq(), x);
  int m = shape.nodes_per_cell();
  std::vector<double> row(shape.size());
  parallel_for(shape.cell_total(), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c)
      for (int r = 0; r < m; ++r)
        row[c * m + r] =
            heat_kernel_level(shape.seq(), shape.level(), x,
                              shape.node_addr(c, r), t, tol)
                .real();
  });
  return row;
}

std::vector<double> heat_solve(const GridField& u0, double t,
                               const std::vector<Address>& points, double tol,
                               int workers) {
  double w = u0.weight();
  std::vector<double> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<double> row = kernel_row(u0, points[p], t, tol, workers);
    double acc = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * u0.values()[i];
    out[p] = acc * w;
  }
  return out;
}

double dirichlet_energy(const GridField& f, const GridField& g) {
  require_same_shape(f, g);
  int m = f.nodes_per_cell();
  if (m < 2) fail(ErrorCode::Domain, "energy needs at least two nodes per cell");
  double h = f.seq().cell_length(f.level()) / m;
  double acc = 0.0;
  for (std::size_t c = 0; c < f.cell_total(); ++c) {
    for (int r = 0; r < m; ++r) {
      double df, dg;
      if (f.level() == 0) {
        int rp = (r + 1) % m, rm = (r + m - 1) % m;
        df = (f.at(c, rp) - f.at(c, rm)) / (2.0 * h);
        dg = (g.at(c, rp) - g.at(c, rm)) / (2.0 * h);
      } else if (r == 0) {
        df = (f.at(c, 1) - f.at(c, 0)) / h;
        dg = (g.at(c, 1) - g.at(c, 0)) / h;
      } else if (r == m - 1) {
        df = (f.at(c, m - 1) - f.at(c, m - 2)) / h;
        dg = (g.at(c, m - 1) - g.at(c, m - 2)) / h;
      } else {
        df = (f.at(c, r + 1) - f.at(c, r - 1)) / (2.0 * h);
        dg = (g.at(c, r + 1) - g.at(c, r - 1)) / (2.0 * h);
      }
      acc += df * dg;
    }
  }
  return acc * f.weight();
}

double matching_residual(const GridField& f) {
  int m = f.nodes_per_cell();
  if (m < 2) fail(ErrorCode::Domain, "matching residual needs at least two nodes per cell");
  std::map<std::string, std::pair<double, double>> spread;  // key -> (min, max)
  auto feed = [&](const std::string& key, double v) {
    auto it = spread.find(key);
    if (it == spread.end())
      spread.emplace(key, std::make_pair(v, v));
    else {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  };
  for (std::size_t c = 0; c < f.cell_total(); ++c) {
    const CellWord& cell = f.cells()[c];
    feed(junction_key(f.seq(), cell, false), 1.5 * f.at(c, 0) - 0.5 * f.at(c, 1));
    feed(junction_key(f.seq(), cell, true),
         1.5 * f.at(c, m - 1) - 0.5 * f.at(c, m - 2));
  }
  double worst = 0.0;
  for (const auto& [key, mm] : spread) worst = std::max(worst, mm.second - mm.first);
  return worst;
}

double check_decomposition(const GridField& f, double t, double tol, int workers) {
  int i = f.level();
  if (i < 1) fail(ErrorCode::Domain, "decomposition check requires level >= 1");
  GridField lhs = apply_semigroup(f, t, tol, workers);
  ProjectionSplit split = project_sym(f);
  GridField sym_ev = pullback(apply_semigroup(coarsen(f), t, tol, workers), i,
                              f.nodes_per_cell());
  int m = f.nodes_per_cell();
  double L = f.seq().cell_length(i);
  // the killed interval kernel matrix is shared by every cell
  std::vector<double> D(static_cast<std::size_t>(m) * m);
  parallel_for(static_cast<std::size_t>(m), workers, [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r)
      for (int s = 0; s < m; ++s)
        D[r * m + s] = dirichlet_kernel(
            t, L, (r + 0.5) * L / m, (s + 0.5) * L / m, {tol, SeriesMethod::Auto});
  });
  double residual = 0.0;
  for (std::size_t c = 0; c < f.cell_total(); ++c) {
    for (int r = 0; r < m; ++r) {
      double anti_ev = 0.0;
      for (int s = 0; s < m; ++s)
        anti_ev += D[static_cast<std::size_t>(r) * m + s] * split.anti.at(c, s);
      anti_ev *= L / m;
      residual = std::max(
          residual, std::fabs(lhs.at(c, r) - sym_ev.at(c, r) - anti_ev));
    }
  }
  return residual;
}

double check_chapman_kolmogorov(const ParameterSequences& seq, int level,
                                double t, double s, int m, int pairs,
                                std::uint64_t seed, double tol, int workers) {
  if (pairs < 1) fail(ErrorCode::Domain, "need at least one sample pair");
  GridField shape(seq, level, m);
  double w = shape.weight();
  double residual = 0.0;
  for (int p = 0; p < pairs; ++p) {
    Address x = sample_point(seq, splitmix64(seed + 2 * p), level);
    Address y = sample_point(seq, splitmix64(seed + 2 * p + 1), level);
    std::vector<double> row_t = kernel_row(shape, x, t, tol, workers);
    std::vector<double> row_s = kernel_row(shape, y, s, tol, workers);
    double lhs = 0.0;
    for (std::size_t i = 0; i < row_t.size(); ++i) lhs += row_t[i] * row_s[i];
    lhs *= w;
    double rhs = heat_kernel_level(seq, level, x, y, t + s, tol).real();
    residual = std::max(residual, std::fabs(lhs - rhs));
  }
  return residual;
}

double check_intertwining(const GridField& coarse, int fine_level, int fine_m,
                          double t, double tol, int workers) {
  GridField up = pullback(coarse, fine_level, fine_m);
  GridField a = apply_semigroup(up, t, tol, workers);
  GridField b = pullback(apply_semigroup(coarse, t, tol, workers), fine_level, fine_m);
  double residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    residual = std::max(residual, std::fabs(a.values()[i] - b.values()[i]));
  return residual;
}

}  // namespace diamond
