#include "diamond/fractal_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/kernel1d.hpp"

namespace diamond {

namespace {

struct PairGeometry {
  int eval_level = 0;  // min(level, deepest common bundle level)
  bool saturated = false;
  std::vector<double> thx, thy;   // local offsets, index k-1 for level k
  std::vector<double> coeff;      // c_k N_{k-1}
};

PairGeometry pair_geometry(const ParameterSequences& seq, const Address& x,
                           const Address& y, int level) {
  PairGeometry g;
  g.saturated = true;
  for (int k = 1; k <= level; ++k) {
    PairConfig cfg = classify_pair(seq, x, y, k);
    if (cfg == PairConfig::DifferentBundle) {
      g.saturated = false;
      break;
    }
    double c = cfg == PairConfig::SameStrand
                   ? static_cast<double>(seq.n(k) - 1)
                   : -1.0;
    g.coeff.push_back(c * seq.Nd(k - 1));
    g.thx.push_back(locate(seq, x, k).theta);
    g.thy.push_back(locate(seq, y, k).theta);
    g.eval_level = k;
  }
  return g;
}

// a point paired with itself shares every bundle, whatever its unwritten
// deeper labels are, so the geometry needs no branch words at all
PairGeometry diagonal_geometry(const ParameterSequences& seq, const Angle& eta,
                               int level) {
  PairGeometry g;
  g.saturated = true;
  for (int k = 1; k <= level; ++k) {
    double c = static_cast<double>(seq.n(k) - 1);
    g.coeff.push_back(c * seq.Nd(k - 1));
    double th = eta.local_offset(seq.J(k));
    g.thx.push_back(th);
    g.thy.push_back(th);
    g.eval_level = k;
  }
  return g;
}

void check_level(const ParameterSequences& seq, int level) {
  if (level < 0 || level > seq.depth())
    fail(ErrorCode::Range, "level outside [0, " + std::to_string(seq.depth()) + "]");
}

void check_addresses(const ParameterSequences& seq, const Address& x,
                     const Address& y, int level) {
  validate_address(seq, x);
  validate_address(seq, y);
  if (address_level_capacity(seq, x) < level ||
      address_level_capacity(seq, y) < level)
    fail(ErrorCode::Range,
         "address does not resolve level " + std::to_string(level));
}

// Remaining-level bound: sum of uniform bounds over levels > from.  Past the
// configured depth the sequences are extended by repeating their deepest
// entry; the summation window closes with a geometric remainder once the
// terms decay, and reports +inf if they never do.
double tail_bound_beyond(const ParameterSequences& seq, int from, double t) {
  int depth = seq.depth();
  if (from >= depth && depth == 0) return 0.0;
  double logJ = std::log(seq.Jd(from));
  double logN = std::log(seq.Nd(from));
  double tail = 0.0, prev = HUGE_VAL;
  for (int g = 1; g <= 64; ++g) {
    int lvl = from + g;
    logJ += std::log(static_cast<double>(seq.j(std::min(lvl, depth))));
    logN += std::log(static_cast<double>(seq.n(std::min(lvl, depth))));
    double x = std::exp(2.0 * logJ) * t;
    double log_term = logN + logJ + std::log1p(1.0 / x) - x;
    double term = std::exp(log_term);
    tail += term;
    // a term that underflows still bounds the rest of the sum from above,
    // so report the smallest positive double rather than claiming zero
    if (term == 0.0)
      return std::max(tail, std::numeric_limits<double>::denorm_min());
    // geometric closure is only sound once consecutive terms share the
    // repeated deepest (j, n), where the term ratio is provably decreasing
    if (g > 1 && lvl > depth && term < prev) {
      double r = term / prev;
      if (r < 0.5) return tail + term * r / (1.0 - r);
    }
    prev = term;
  }
  return HUGE_VAL;
}

KernelResult unrolled(const ParameterSequences& seq, const PairGeometry& g,
                      const Address& x, const Address& y, double t,
                      double tol) {
  KernelResult res;
  double budget = tol / (g.eval_level + 1);
  EvalOptions opts{budget, SeriesMethod::Auto};
  double v = circle_kernel(t, x.eta.value(), y.eta.value(), opts);
  res.correction_trace.emplace_back(v, 0.0);
  for (int k = 1; k <= g.eval_level; ++k) {
    double c = g.coeff[k - 1];
    EvalOptions copts{budget / std::fabs(c), SeriesMethod::Auto};
    double corr = c * dirichlet_kernel(t, seq.cell_length(k), g.thx[k - 1],
                                       g.thy[k - 1], copts);
    v += corr;
    res.correction_trace.emplace_back(corr, 0.0);
  }
  res.value = v;
  res.bundle_level = g.eval_level;
  res.saturated = g.saturated;
  return res;
}

void check_eval_args(double t, double tol) {
  if (!(t > 0) || !std::isfinite(t)) fail(ErrorCode::Domain, "time must be finite and > 0");
  if (!(tol > 0)) fail(ErrorCode::Domain, "tolerance must be > 0");
}

void check_complex_args(double t, double eps, double tol) {
  if (!std::isfinite(t)) fail(ErrorCode::Domain, "time must be finite");
  if (!(eps > 0) || !std::isfinite(eps))
    fail(ErrorCode::Domain, "regularization eps must be finite and > 0");
  if (!(tol > 0)) fail(ErrorCode::Domain, "tolerance must be > 0");
}

KernelResult complex_unrolled(const ParameterSequences& seq,
                              const PairGeometry& g, const Address& x,
                              const Address& y, std::complex<double> tau,
                              double tol) {
  KernelResult res;
  double budget = tol / (g.eval_level + 1);
  std::complex<double> v = circle_kernel(tau, x.eta.value(), y.eta.value(), budget);
  res.correction_trace.push_back(v);
  for (int k = 1; k <= g.eval_level; ++k) {
    double c = g.coeff[k - 1];
    std::complex<double> corr =
        c * dirichlet_kernel(tau, seq.cell_length(k), g.thx[k - 1],
                             g.thy[k - 1], budget / std::fabs(c));
    v += corr;
    res.correction_trace.push_back(corr);
  }
  res.value = v;
  res.bundle_level = g.eval_level;
  res.saturated = g.saturated;
  return res;
}

}  // namespace

KernelResult heat_kernel_level(const ParameterSequences& seq, int level,
                               const Address& x, const Address& y, double t,
                               double tol) {
  check_level(seq, level);
  check_addresses(seq, x, y, level);
  check_eval_args(t, tol);
  PairGeometry g = pair_geometry(seq, x, y, level);
  KernelResult res = unrolled(seq, g, x, y, t, tol);
  res.levels_used = level;
  return res;
}

KernelResult heat_kernel_level_recursive(const ParameterSequences& seq,
                                         int level, const Address& x,
                                         const Address& y, double t,
                                         double tol) {
  check_level(seq, level);
  check_addresses(seq, x, y, level);
  check_eval_args(t, tol);
  PairGeometry g = pair_geometry(seq, x, y, level);
  KernelResult res;
  double budget = tol / (level + 1);
  double v = circle_kernel(t, x.eta.value(), y.eta.value(),
                           {budget, SeriesMethod::Auto});
  res.correction_trace.emplace_back(v, 0.0);
  for (int k = 1; k <= g.eval_level; ++k) {
    double J = seq.Jd(k);
    double c = g.coeff[k - 1];
    EvalOptions copts{budget / (2.0 * std::fabs(c) * J), SeriesMethod::Auto};
    double plus = circle_kernel(J * J * t, J * g.thx[k - 1], J * g.thy[k - 1], copts);
    double minus = circle_kernel(J * J * t, J * g.thx[k - 1], -J * g.thy[k - 1], copts);
    double corr = c * J * (plus - minus);
    v += corr;
    res.correction_trace.emplace_back(corr, 0.0);
  }
  res.value = v;
  res.levels_used = level;
  res.bundle_level = g.eval_level;
  res.saturated = g.saturated;
  return res;
}

std::vector<double> heat_kernel_profile(const ParameterSequences& seq,
                                        int level, const Address& x,
                                        const Address& y, double t,
                                        double tol) {
  KernelResult res = heat_kernel_level(seq, level, x, y, t, tol);
  std::vector<double> out;
  double v = 0.0;
  for (const auto& c : res.correction_trace) {
    v += c.real();
    out.push_back(v);
  }
  out.resize(static_cast<std::size_t>(level) + 1, out.back());
  return out;
}

KernelResult heat_kernel_limit(const ParameterSequences& seq, const Address& x,
                               const Address& y, double t, double tol,
                               int cap) {
  check_eval_args(t, tol);
  validate_address(seq, x);
  validate_address(seq, y);
  int cap_req = cap < 0 ? seq.depth() : std::min(cap, seq.depth());
  BundleDepth bd = deepest_common_bundle(seq, x, y, cap_req);
  bool same_word = x.eta.same_as(y.eta) && x.w == y.w;
  PairGeometry g = same_word ? diagonal_geometry(seq, x.eta, bd.level)
                             : pair_geometry(seq, x, y, bd.level);
  KernelResult res = unrolled(seq, g, x, y, t, tol);
  res.levels_used = bd.level;
  res.saturated = bd.saturated;
  if (bd.saturated) {
    res.tail_bound = tail_bound_beyond(seq, bd.level, t);
    if (!(res.tail_bound <= tol))
      fail(ErrorCode::InsufficientDepth,
           "limit kernel tail bound " + std::to_string(res.tail_bound) +
               " exceeds tol at level " + std::to_string(bd.level));
  }
  return res;
}

double uniform_bound(const ParameterSequences& seq, int level, double t) {
  if (level < 1 || level > seq.depth())
    fail(ErrorCode::Range, "level outside [1, depth]");
  if (!(t > 0) || !std::isfinite(t)) fail(ErrorCode::Domain, "time must be finite and > 0");
  double J = seq.Jd(level);
  double x = J * J * t;
  return seq.Nd(level) * J * (1.0 + 1.0 / x) * std::exp(-x);
}

KernelResult schrodinger_kernel(const ParameterSequences& seq, const Address& x,
                                const Address& y, double t, double eps,
                                double tol, int cap) {
  check_complex_args(t, eps, tol);
  validate_address(seq, x);
  validate_address(seq, y);
  int cap_req = cap < 0 ? seq.depth() : std::min(cap, seq.depth());
  BundleDepth bd = deepest_common_bundle(seq, x, y, cap_req);
  bool same_word = x.eta.same_as(y.eta) && x.w == y.w;
  PairGeometry g = same_word ? diagonal_geometry(seq, x.eta, bd.level)
                             : pair_geometry(seq, x, y, bd.level);
  KernelResult res = complex_unrolled(seq, g, x, y, {eps, t}, tol);
  res.levels_used = bd.level;
  res.bundle_level = bd.level;
  res.saturated = bd.saturated;
  if (bd.saturated) {
    res.tail_bound = tail_bound_beyond(seq, bd.level, eps);
    if (!(res.tail_bound <= tol))
      fail(ErrorCode::InsufficientDepth,
           "complex-time tail bound " + std::to_string(res.tail_bound) +
               " exceeds tol at level " + std::to_string(bd.level));
  }
  return res;
}

KernelResult schrodinger_kernel_level(const ParameterSequences& seq, int level,
                                      const Address& x, const Address& y,
                                      double t, double eps, double tol) {
  check_level(seq, level);
  check_addresses(seq, x, y, level);
  check_complex_args(t, eps, tol);
  PairGeometry g = pair_geometry(seq, x, y, level);
  KernelResult res = complex_unrolled(seq, g, x, y, {eps, t}, tol);
  res.levels_used = level;
  return res;
}

}  // namespace diamond
