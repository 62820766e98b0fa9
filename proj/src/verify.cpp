#include "diamond/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "diamond/errors.hpp"
#include "diamond/fractal_kernel.hpp"
#include "diamond/grid.hpp"
#include "diamond/oracle.hpp"
#include "diamond/rng.hpp"

namespace diamond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckRow at_most(const std::string& label, double value, double hi) {
  return {label, value, -kInf, hi, value <= hi};
}

CheckRow at_least(const std::string& label, double value, double lo) {
  return {label, value, lo, kInf, value >= lo};
}

CheckRow within(const std::string& label, double value, double lo, double hi) {
  return {label, value, lo, hi, lo <= value && value <= hi};
}

int clamp_level(const ParameterSequences& seq, int level) {
  return std::min(std::max(level, 0), seq.depth());
}

}  // namespace

CheckReport verify_symmetry(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"symmetry", {}};
  int level = clamp_level(seq, cfg.level);
  double max_sym = 0.0, min_val = kInf, max_route = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    Address x = sample_point(seq, splitmix64(cfg.seed + 2 * s), level);
    Address y = sample_point(seq, splitmix64(cfg.seed + 2 * s + 1), level);
    KernelResult xy = heat_kernel_level(seq, level, x, y, cfg.t, cfg.tol);
    KernelResult yx = heat_kernel_level(seq, level, y, x, cfg.t, cfg.tol);
    KernelResult rec = heat_kernel_level_recursive(seq, level, x, y, cfg.t, cfg.tol);
    max_sym = std::max(max_sym, std::fabs(xy.real() - yx.real()));
    min_val = std::min(min_val, std::min(xy.real(), yx.real()));
    max_route = std::max(max_route, std::fabs(xy.real() - rec.real()));
  }
  rep.rows.push_back(at_most("max |p(x,y) - p(y,x)|", max_sym, 1e-10));
  rep.rows.push_back(at_least("min p", min_val, -1e-10));
  rep.rows.push_back(
      at_most("max two-route disagreement", max_route, std::max(4.0 * cfg.tol, 4e-10)));
  return rep;
}

CheckReport verify_mass(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"mass", {}};
  int level = clamp_level(seq, cfg.level);
  GridField shape(seq, level, cfg.m);
  double w = shape.weight();
  int nx = std::max(1, std::min(cfg.samples, 4));
  double worst = 0.0;
  for (int k = 0; k < nx; ++k) {
    Address x = sample_point(seq, splitmix64(cfg.seed + k), level);
    std::vector<double> row = kernel_row(shape, x, cfg.t, cfg.tol, cfg.workers);
    double total = 0.0;
    for (double v : row) total += v;
    worst = std::max(worst, std::fabs(total * w - 1.0));
  }
  rep.rows.push_back(at_most("max |integral p_t(x,.) dmu - 1|", worst, 1e-6));
  return rep;
}

CheckReport verify_chapman(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"chapman", {}};
  int level = clamp_level(seq, cfg.level);
  int pairs = std::max(1, std::min(cfg.samples, 8));
  double resid = check_chapman_kolmogorov(seq, level, cfg.t, cfg.s, cfg.m, pairs,
                                          cfg.seed, cfg.tol, cfg.workers);
  rep.rows.push_back(at_most("max |p_t * p_s - p_{t+s}|", resid, 1e-4));
  return rep;
}

CheckReport verify_decomposition(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"decomposition", {}};
  int level = std::max(1, clamp_level(seq, cfg.level));
  GridField f = GridField::random(seq, level, cfg.m, cfg.seed);
  double resid = check_decomposition(f, cfg.t, cfg.tol, cfg.workers);
  rep.rows.push_back(at_most("split evolution residual", resid, 1e-3));
  return rep;
}

CheckReport verify_intertwining(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"intertwining", {}};
  int level = std::max(1, clamp_level(seq, cfg.level));
  int m0 = static_cast<int>(2.0 * seq.Jd(level)) * cfg.m;
  GridField wave = GridField::from_function(
      seq, 0, m0, [](const Address& a) { return std::cos(a.eta.value()); });
  double r1 = check_intertwining(wave, level, cfg.m, cfg.t, cfg.tol, cfg.workers);
  GridField noise = GridField::random(seq, 0, m0, cfg.seed);
  double r2 = check_intertwining(noise, level, cfg.m, cfg.t, cfg.tol, cfg.workers);
  GridField evolved = apply_semigroup(wave, cfg.t, cfg.tol, cfg.workers);
  double r3 = 0.0;
  for (std::size_t i = 0; i < evolved.size(); ++i)
    r3 = std::max(r3, std::fabs(evolved.values()[i] -
                                std::exp(-cfg.t) * wave.values()[i]));
  rep.rows.push_back(at_most("cosine intertwining residual", r1, 1e-3));
  rep.rows.push_back(at_most("random-field intertwining residual", r2, 1e-3));
  rep.rows.push_back(at_most("max |T_t cos - e^{-t} cos|", r3, 1e-6));
  return rep;
}

CheckReport verify_bound(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"bound", {}};
  int level = std::max(1, clamp_level(seq, cfg.level));
  int violations = 0;
  double worst_margin = kInf;
  for (int s = 0; s < cfg.samples; ++s) {
    Address x = sample_point(seq, splitmix64(cfg.seed + 2 * s), level);
    Address y = sample_point(seq, splitmix64(cfg.seed + 2 * s + 1), level);
    std::vector<double> prof = heat_kernel_profile(seq, level, x, y, cfg.t, cfg.tol);
    for (int k = 1; k <= level; ++k) {
      double diff = std::fabs(prof[k] - prof[k - 1]);
      double bound = uniform_bound(seq, k, cfg.t);
      if (diff > bound) ++violations;
      if (diff > 0.0 && bound > 0.0)
        worst_margin = std::min(worst_margin, bound / diff);
    }
  }
  rep.rows.push_back(at_most("level-step bound violations", violations, 0.0));
  rep.rows.push_back(at_least("min bound/|difference| margin", worst_margin, 1.0));
  return rep;
}

CheckReport verify_oracle(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"oracle", {}};
  if (cfg.m < 4) fail(ErrorCode::Domain, "oracle suite needs m >= 4");
  int level = std::max(1, std::min(clamp_level(seq, cfg.level), 2));
  auto rel_err = [&](int m) {
    DiscreteGraph g = build_graph(seq, level, m);
    HeatOracle oracle(g);
    std::size_t probes[2] = {0, g.size() / 2};
    double worst = 0.0;
    for (std::size_t x : probes) {
      double scale = 0.0, err = 0.0;
      std::vector<double> exact(g.size());
      for (std::size_t y = 0; y < g.size(); ++y) {
        exact[y] = heat_kernel_level(seq, level, g.nodes[x].addr,
                                     g.nodes[y].addr, cfg.t, 1e-12)
                       .real();
        scale = std::max(scale, std::fabs(exact[y]));
      }
      for (std::size_t y = 0; y < g.size(); ++y)
        err = std::max(err, std::fabs(oracle.density(cfg.t, x, y) - exact[y]));
      worst = std::max(worst, err / scale);
    }
    return worst;
  };
  double coarse = rel_err(cfg.m / 2);
  double fine = rel_err(cfg.m);
  rep.rows.push_back(at_most("relative sup error at h", fine, 1e-2));
  rep.rows.push_back(within("error ratio h vs h/2", coarse / fine, 3.0, 5.0));
  return rep;
}

CheckReport verify_schrodinger(const ParameterSequences& seq, const VerifyConfig& cfg) {
  CheckReport rep{"schrodinger", {}};
  int level = std::max(1, std::min(clamp_level(seq, cfg.level), 2));
  double conj_resid = 0.0;
  for (int s = 0; s < std::min(cfg.samples, 32); ++s) {
    Address x = sample_point(seq, splitmix64(cfg.seed + 2 * s), level);
    Address y = sample_point(seq, splitmix64(cfg.seed + 2 * s + 1), level);
    KernelResult fwd = schrodinger_kernel_level(seq, level, x, y, cfg.t, cfg.eps, cfg.tol);
    KernelResult bwd = schrodinger_kernel_level(seq, level, x, y, -cfg.t, cfg.eps, cfg.tol);
    conj_resid = std::max(conj_resid, std::abs(bwd.value - std::conj(fwd.value)));
  }
  DiscreteGraph g = build_graph(seq, level, cfg.m);
  HeatOracle oracle(g);
  std::complex<double> tau(cfg.eps, cfg.t);
  std::size_t x = g.size() / 2;
  double num = 0.0, den = 0.0;
  for (std::size_t y = 0; y < g.size(); ++y) {
    std::complex<double> closed =
        schrodinger_kernel_level(seq, level, g.nodes[x].addr, g.nodes[y].addr,
                                 cfg.t, cfg.eps, 1e-12)
            .value;
    std::complex<double> fd = oracle.density(tau, x, y);
    double w = g.nodes[y].mass;
    num += std::norm(closed - fd) * w;
    den += std::norm(closed) * w;
  }
  rep.rows.push_back(at_most("max conjugate-symmetry residual", conj_resid, 1e-12));
  rep.rows.push_back(at_most("relative l2 error vs discretized evolution",
                             std::sqrt(num / den), 2e-2));
  return rep;
}

CheckReport verify_suite(const ParameterSequences& seq, const std::string& name,
                         const VerifyConfig& cfg) {
  if (name == "symmetry") return verify_symmetry(seq, cfg);
  if (name == "mass") return verify_mass(seq, cfg);
  if (name == "chapman") return verify_chapman(seq, cfg);
  if (name == "decomposition") return verify_decomposition(seq, cfg);
  if (name == "intertwining") return verify_intertwining(seq, cfg);
  if (name == "bound") return verify_bound(seq, cfg);
  if (name == "oracle") return verify_oracle(seq, cfg);
  if (name == "schrodinger") return verify_schrodinger(seq, cfg);
  fail(ErrorCode::Parse, "unknown verify suite '" + name + "'");
}

}  // namespace diamond
