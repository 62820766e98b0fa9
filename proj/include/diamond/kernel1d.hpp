#ifndef DIAMOND_KERNEL1D_HPP
#define DIAMOND_KERNEL1D_HPP

#include <complex>

namespace diamond {

enum class SeriesMethod { Auto, Spectral, Images };

struct EvalOptions {
  double tol = 1e-12;
  SeriesMethod method = SeriesMethod::Auto;
};

struct EvalInfo {
  int terms = 0;
  double tail_bound = 0.0;         // certified truncation remainder
  bool precision_limited = false;  // tol below double round-off at this scale
};

// Heat kernel on the unit circle (total mass 2*pi):
//   1/(2pi) + (1/pi) sum_{k>=1} e^{-k^2 t} cos(k (theta2 - theta1))
// Spectral route sums that series; images route sums Gaussians over windings.
double circle_kernel(double t, double theta1, double theta2,
                     const EvalOptions& opts = {}, EvalInfo* info = nullptr);

// Dirichlet heat kernel on [0, length]:
//   (2/L) sum_{k>=1} e^{-(k pi / L)^2 t} sin(k pi theta1/L) sin(k pi theta2/L)
// Exactly zero when either argument sits on the boundary.
double dirichlet_kernel(double t, double length, double theta1, double theta2,
                        const EvalOptions& opts = {}, EvalInfo* info = nullptr);

// Complex-time variants (Re tau > 0), spectral route only; the truncation
// certificate uses |e^{-k^2 tau}| = e^{-k^2 Re tau}.
std::complex<double> circle_kernel(std::complex<double> tau, double theta1,
                                   double theta2, double tol = 1e-12,
                                   EvalInfo* info = nullptr);
std::complex<double> dirichlet_kernel(std::complex<double> tau, double length,
                                      double theta1, double theta2,
                                      double tol = 1e-12,
                                      EvalInfo* info = nullptr);

}  // namespace diamond

#endif
