#include "diamond/kernel1d.hpp"

#include <cfloat>
#include <cmath>

#include "diamond/errors.hpp"

namespace diamond {

namespace {

constexpr int kMaxTerms = 2'000'000;

void check_time(double t) {
  if (!(t > 0) || !std::isfinite(t)) fail(ErrorCode::Domain, "time must be finite and > 0");
}

void note(EvalInfo* info, int terms, double tail, double scale, double tol) {
  if (!info) return;
  info->terms = terms;
  info->tail_bound = tail;
  info->precision_limited = tol < 16.0 * DBL_EPSILON * std::max(1.0, scale);
}

// sum_{m > k} e^{-m^2 b} <= e^{-(k+1)^2 b} / (1 - e^{-(2k+3) b}),
// from (k+1+r)^2 >= (k+1)^2 + r(2k+3)
double spectral_tail(int k, double b) {
  double q = std::exp(-(2.0 * k + 3.0) * b);
  return std::exp(-double(k + 1) * double(k + 1) * b) / (1.0 - q);
}

// sum_{r >= 0} e^{-(d + s r)^2 / (4t)} <= e^{-d^2/(4t)} / (1 - e^{-d s / (2t)})
double gaussian_tail(double d, double s, double t) {
  double q = std::exp(-d * s / (2.0 * t));
  if (q >= 1.0) return HUGE_VAL;
  return std::exp(-d * d / (4.0 * t)) / (1.0 - q);
}

double circle_spectral(double t, double d, double tol, EvalInfo* info) {
  double sum = 1.0 / (2.0 * M_PI);
  int k = 0;
  while (true) {
    double tail = spectral_tail(k, t) / M_PI;
    if (tail <= tol) {
      note(info, k, tail, std::fabs(sum), tol);
      return sum;
    }
    if (k >= kMaxTerms)
      fail(ErrorCode::Capacity, "circle kernel series failed to certify");
    ++k;
    sum += std::exp(-double(k) * double(k) * t) * std::cos(k * d) / M_PI;
  }
}

double circle_images(double t, double d, double tol, EvalInfo* info) {
  d = std::remainder(d, 2.0 * M_PI);
  const double c = 1.0 / std::sqrt(4.0 * M_PI * t);
  double sum = std::exp(-d * d / (4.0 * t));
  int M = 0;
  while (true) {
    // both one-sided tails start at distance >= pi (2M + 1), winding step 2 pi
    double dmin = M_PI * (2.0 * M + 1.0);
    double tail = 2.0 * c * gaussian_tail(dmin, 2.0 * M_PI, t);
    if (tail <= tol) {
      note(info, 2 * M + 1, tail, c * sum, tol);
      return c * sum;
    }
    if (M >= kMaxTerms)
      fail(ErrorCode::Capacity, "circle kernel images failed to certify");
    ++M;
    double a = d + 2.0 * M_PI * M, b = d - 2.0 * M_PI * M;
    sum += std::exp(-a * a / (4.0 * t)) + std::exp(-b * b / (4.0 * t));
  }
}

double dirichlet_spectral(double t, double L, double th1, double th2,
                          double tol, EvalInfo* info) {
  const double b = M_PI * M_PI * t / (L * L);
  const double x1 = M_PI * th1 / L, x2 = M_PI * th2 / L;
  double sum = 0.0;
  int k = 0;
  while (true) {
    double tail = 2.0 / L * spectral_tail(k, b);
    if (tail <= tol) {
      note(info, k, tail, std::fabs(2.0 / L * sum), tol);
      return 2.0 / L * sum;
    }
    if (k >= kMaxTerms)
      fail(ErrorCode::Capacity, "interval kernel series failed to certify");
    ++k;
    sum += std::exp(-double(k) * double(k) * b) * std::sin(k * x1) * std::sin(k * x2);
  }
}

double dirichlet_images(double t, double L, double th1, double th2, double tol,
                        EvalInfo* info) {
  const double c = 1.0 / std::sqrt(4.0 * M_PI * t);
  const double u = th1 - th2, v = th1 + th2;  // |u| <= L, 0 < v < 2L here
  double sum = std::exp(-u * u / (4.0 * t)) - std::exp(-v * v / (4.0 * t));
  int M = 0;
  while (true) {
    if (M >= 1) {
      double du = (2.0 * M + 1.0) * L;       // both u-side tails
      double dvr = 2.0 * (M + 1.0) * L - v;  // v + 2mL, m >= M+1
      double dvl = 2.0 * M * L;              // |v - 2mL| >= 2ML for m >= M+1
      double tail = c * (2.0 * gaussian_tail(du, 2.0 * L, t) +
                         gaussian_tail(dvr, 2.0 * L, t) +
                         gaussian_tail(dvl, 2.0 * L, t));
      if (tail <= tol) {
        note(info, 2 * M + 1, tail, std::fabs(c * sum), tol);
        return c * sum;
      }
    }
    if (M >= kMaxTerms)
      fail(ErrorCode::Capacity, "interval kernel images failed to certify");
    ++M;
    double ur = u + 2.0 * M * L, ul = u - 2.0 * M * L;
    double vr = v + 2.0 * M * L, vl = v - 2.0 * M * L;
    sum += std::exp(-ur * ur / (4.0 * t)) + std::exp(-ul * ul / (4.0 * t)) -
           std::exp(-vr * vr / (4.0 * t)) - std::exp(-vl * vl / (4.0 * t));
  }
}

void check_opts(const EvalOptions& opts) {
  if (!(opts.tol > 0)) fail(ErrorCode::Domain, "tolerance must be > 0");
}

}  // namespace

double circle_kernel(double t, double theta1, double theta2,
                     const EvalOptions& opts, EvalInfo* info) {
  check_time(t);
  check_opts(opts);
  if (!std::isfinite(theta1) || !std::isfinite(theta2))
    fail(ErrorCode::Domain, "angles must be finite");
  double d = theta2 - theta1;
  SeriesMethod m = opts.method;
  if (m == SeriesMethod::Auto)
    m = t < 1.0 ? SeriesMethod::Images : SeriesMethod::Spectral;
  return m == SeriesMethod::Spectral ? circle_spectral(t, d, opts.tol, info)
                                     : circle_images(t, d, opts.tol, info);
}

double dirichlet_kernel(double t, double length, double theta1, double theta2,
                        const EvalOptions& opts, EvalInfo* info) {
  check_time(t);
  check_opts(opts);
  if (!(length > 0) || !std::isfinite(length))
    fail(ErrorCode::Domain, "interval length must be finite and > 0");
  if (!(theta1 >= 0) || !(theta1 <= length) || !(theta2 >= 0) || !(theta2 <= length))
    fail(ErrorCode::Domain, "interval kernel arguments must lie in [0, length]");
  if (theta1 == 0.0 || theta1 == length || theta2 == 0.0 || theta2 == length) {
    note(info, 0, 0.0, 0.0, opts.tol);
    return 0.0;
  }
  SeriesMethod m = opts.method;
  if (m == SeriesMethod::Auto)
    m = t * (M_PI / length) * (M_PI / length) < 1.0 ? SeriesMethod::Images
                                                    : SeriesMethod::Spectral;
  return m == SeriesMethod::Spectral
             ? dirichlet_spectral(t, length, theta1, theta2, opts.tol, info)
             : dirichlet_images(t, length, theta1, theta2, opts.tol, info);
}

std::complex<double> circle_kernel(std::complex<double> tau, double theta1,
                                   double theta2, double tol, EvalInfo* info) {
  check_time(tau.real());
  if (!(tol > 0)) fail(ErrorCode::Domain, "tolerance must be > 0");
  if (!std::isfinite(theta1) || !std::isfinite(theta2) || !std::isfinite(tau.imag()))
    fail(ErrorCode::Domain, "arguments must be finite");
  double d = theta2 - theta1;
  std::complex<double> sum = 1.0 / (2.0 * M_PI);
  int k = 0;
  while (true) {
    double tail = spectral_tail(k, tau.real()) / M_PI;
    if (tail <= tol) {
      note(info, k, tail, std::abs(sum), tol);
      return sum;
    }
    if (k >= kMaxTerms)
      fail(ErrorCode::Capacity, "circle kernel series failed to certify");
    ++k;
    sum += std::exp(-double(k) * double(k) * tau) * std::cos(k * d) / M_PI;
  }
}

std::complex<double> dirichlet_kernel(std::complex<double> tau, double length,
                                      double theta1, double theta2, double tol,
                                      EvalInfo* info) {
  check_time(tau.real());
  if (!(tol > 0)) fail(ErrorCode::Domain, "tolerance must be > 0");
  if (!(length > 0) || !std::isfinite(length))
    fail(ErrorCode::Domain, "interval length must be finite and > 0");
  if (!(theta1 >= 0) || !(theta1 <= length) || !(theta2 >= 0) || !(theta2 <= length))
    fail(ErrorCode::Domain, "interval kernel arguments must lie in [0, length]");
  if (theta1 == 0.0 || theta1 == length || theta2 == 0.0 || theta2 == length) {
    note(info, 0, 0.0, 0.0, tol);
    return 0.0;
  }
  const double b = M_PI * M_PI / (length * length);
  const double x1 = M_PI * theta1 / length, x2 = M_PI * theta2 / length;
  std::complex<double> sum = 0.0;
  int k = 0;
  while (true) {
    double tail = 2.0 / length * spectral_tail(k, b * tau.real());
    if (tail <= tol) {
      note(info, k, tail, std::abs(sum) * 2.0 / length, tol);
      return 2.0 / length * sum;
    }
    if (k >= kMaxTerms)
      fail(ErrorCode::Capacity, "interval kernel series failed to certify");
    ++k;
    sum += std::exp(-double(k) * double(k) * b * tau) * std::sin(k * x1) *
           std::sin(k * x2);
  }
}

}  // namespace diamond
