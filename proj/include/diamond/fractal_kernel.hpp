#ifndef DIAMOND_FRACTAL_KERNEL_HPP
#define DIAMOND_FRACTAL_KERNEL_HPP

#include <complex>
#include <vector>

#include "diamond/geometry.hpp"
#include "diamond/params.hpp"

namespace diamond {

struct KernelResult {
  std::complex<double> value{0.0, 0.0};
  int levels_used = 0;     // level the evaluation ran at
  int bundle_level = 0;    // deepest level at which the pair shares a bundle
  bool saturated = false;  // classification never separated within the cap
  double tail_bound = 0.0; // certified bound on the contribution of deeper levels
  std::vector<std::complex<double>> correction_trace;  // [0] = base circle term
  double real() const { return value.real(); }
};

// Level-i kernel as the base circle kernel plus one interval-kernel
// correction per level k <= i at which the pair still shares a bundle:
//   p_t(x, y) = p^circle_t(eta_x, eta_y) + sum_k c_k N_{k-1} D_{t,L_k}(theta^k_x, theta^k_y)
// with c_k = n_k - 1 on the same strand, -1 across strands of one bundle.
// The requested tol is split across the 1d evaluations.
KernelResult heat_kernel_level(const ParameterSequences& seq, int level,
                               const Address& x, const Address& y, double t,
                               double tol = 1e-12);

// Same values through the level-by-level recursion, with each interval
// correction rewritten as a scaled difference of two circle kernels
// (reflection form).  Kept as an independent route for cross-checking.
KernelResult heat_kernel_level_recursive(const ParameterSequences& seq,
                                         int level, const Address& x,
                                         const Address& y, double t,
                                         double tol = 1e-12);

// Partial sums p^{F_k}(x, y) for k = 0..level from one unrolled pass.
std::vector<double> heat_kernel_profile(const ParameterSequences& seq,
                                        int level, const Address& x,
                                        const Address& y, double t,
                                        double tol = 1e-12);

// Kernel on the limit space: evaluates at the deepest common bundle level.
// For pairs that separate within the cap the value is exact (tail_bound = 0);
// otherwise the reported tail bound must certify below tol or the call fails
// with an insufficient-depth error.  cap < 0 means the configured depth.
KernelResult heat_kernel_limit(const ParameterSequences& seq, const Address& x,
                               const Address& y, double t, double tol = 1e-12,
                               int cap = -1);

// N_i J_i (1 + (J_i^2 t)^{-1}) e^{-J_i^2 t}, the uniform bound on
// |p^{F_i} - p^{F_{i-1}}|; requires level >= 1
double uniform_bound(const ParameterSequences& seq, int level, double t);

// Wick-rotated kernel at complex time eps + i*t, evaluated like
// heat_kernel_limit; the tail certificate depends on eps only.
KernelResult schrodinger_kernel(const ParameterSequences& seq, const Address& x,
                                const Address& y, double t, double eps,
                                double tol = 1e-12, int cap = -1);

// Wick-rotated kernel of the level-i lattice itself (no deeper levels, so no
// tail certificate is involved).
KernelResult schrodinger_kernel_level(const ParameterSequences& seq, int level,
                                      const Address& x, const Address& y,
                                      double t, double eps, double tol = 1e-12);

}  // namespace diamond

#endif
