#include <cmath>
#include <complex>

#include "diamond/fractal_kernel.hpp"
#include "diamond/kernel1d.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace diamond;

// reference values computed with 40-digit arithmetic
TEST_CASE("level kernel reference values") {
  ParameterSequences f1 = ParameterSequences::constant(2, 2, 1);
  Address x1{Angle::radians(0.7), {1}};
  Address y1{Angle::radians(0.75), {2}};
  KernelResult r1 = heat_kernel_level(f1, 1, x1, y1, 0.4);
  CHECK(std::fabs(r1.real() - 0.1925463108844219717) < 1e-12);
  CHECK(r1.levels_used == 1);
  CHECK(r1.bundle_level == 1);

  ParameterSequences f2({3, 2}, {3, 3});
  Address x2{Angle::radians(0.3), {2, 3}};
  Address y2{Angle::radians(0.31), {2, 3}};
  KernelResult r2 = heat_kernel_level(f2, 2, x2, y2, 0.25);
  CHECK(std::fabs(r2.real() - 0.8200150654067511253) < 1e-12);
  REQUIRE(r2.correction_trace.size() == 3);
  CHECK(std::fabs(r2.correction_trace[0].real() -
                  circle_kernel(0.25, 0.3, 0.31)) < 1e-13);
}

TEST_CASE("limit kernel on the diagonal") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 4);
  Address x{Angle::radians(1.0), {1, 1, 1, 1}};
  KernelResult r = heat_kernel_limit(seq, x, x, 1.0);
  CHECK(std::fabs(r.real() - 0.3014060302320222252) < 1e-12);
  CHECK(r.saturated);
  CHECK(r.tail_bound > 0.0);
  CHECK(r.tail_bound < 1e-12);

  // the same point with unwritten deeper labels takes the label-free route
  Address short_x{Angle::radians(1.0), {1}};
  KernelResult s = heat_kernel_limit(seq, short_x, short_x, 1.0);
  CHECK(s.value.real() == r.value.real());
}

TEST_CASE("recursive and unrolled routes agree") {
  ParameterSequences seq({3, 2}, {3, 3});
  Address x{Angle::radians(0.3), {2, 3}};
  Address y{Angle::radians(0.31), {2, 3}};
  for (double t : {0.05, 0.25, 1.0}) {
    KernelResult a = heat_kernel_level(seq, 2, x, y, t);
    KernelResult b = heat_kernel_level_recursive(seq, 2, x, y, t);
    CHECK(std::fabs(a.real() - b.real()) <= 4e-12);
  }
}

TEST_CASE("profile pads after separation") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 3);
  Address x{Angle::radians(0.3), {1, 2, 1}};
  Address y{Angle::radians(0.35), {2, 2, 1}};
  auto prof = heat_kernel_profile(seq, 3, x, y, 0.5);
  REQUIRE(prof.size() == 4);
  CHECK(prof[0] == doctest::Approx(circle_kernel(0.5, 0.3, 0.35)));
  // the pair separates at level 2, so deeper partial sums repeat
  CHECK(prof[2] == prof[1]);
  CHECK(prof[3] == prof[1]);
  KernelResult lim = heat_kernel_limit(seq, x, y, 0.5);
  CHECK(lim.real() == prof[3]);
  CHECK_FALSE(lim.saturated);
  CHECK(lim.tail_bound == 0.0);
}

TEST_CASE("separated pairs with short words evaluate exactly") {
  ParameterSequences deep = ParameterSequences::constant(2, 2, 8);
  Address x{Angle::radians(0.7), {1}};
  Address y{Angle::radians(0.75), {2}};
  KernelResult r = heat_kernel_limit(deep, x, y, 0.4);
  CHECK_FALSE(r.saturated);
  CHECK(r.tail_bound == 0.0);
  CHECK(r.levels_used == 1);
  ParameterSequences f1 = ParameterSequences::constant(2, 2, 1);
  CHECK(r.real() == heat_kernel_level(f1, 1, x, y, 0.4).real());
}

TEST_CASE("saturated pairs fail honestly when the tail is too fat") {
  ParameterSequences shallow = ParameterSequences::constant(2, 2, 2);
  Address x{Angle::radians(0.7), {1, 1}};
  Address y{Angle::radians(0.75), {1, 1}};
  // same labels all the way down: saturated at depth 2, where the remaining
  // levels still carry ~1e-2 of mass at t = 0.05
  CHECK(thrown_code([&] { heat_kernel_limit(shallow, x, y, 0.05); }) ==
        ErrorCode::InsufficientDepth);
  // at t = 6 the depth-2 tail certifies below 1e-12
  KernelResult ok = heat_kernel_limit(shallow, x, y, 6.0);
  CHECK(ok.saturated);
  CHECK(ok.tail_bound < 1e-12);
}

TEST_CASE("uniform bound reference value and profile domination") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 3);
  CHECK(uniform_bound(seq, 1, 1.0) == doctest::Approx(0.09157819444));
  Address x{Angle::radians(0.3), {1, 2, 1}};
  Address y{Angle::radians(0.32), {1, 2, 1}};
  for (double t : {0.2, 1.0}) {
    auto prof = heat_kernel_profile(seq, 3, x, y, t);
    for (int i = 1; i <= 3; ++i)
      CHECK(std::fabs(prof[i] - prof[i - 1]) <=
            uniform_bound(seq, i, t) + 1e-12);
  }
}

TEST_CASE("complex time kernel") {
  ParameterSequences f1 = ParameterSequences::constant(2, 2, 1);
  Address x{Angle::radians(0.7), {1}};
  Address y{Angle::radians(0.75), {2}};
  KernelResult plus = schrodinger_kernel_level(f1, 1, x, y, 0.3, 0.01);
  KernelResult minus = schrodinger_kernel_level(f1, 1, x, y, -0.3, 0.01);
  CHECK(plus.value.real() == doctest::Approx(minus.value.real()));
  CHECK(plus.value.imag() == doctest::Approx(-minus.value.imag()));

  // the level route matches assembling the pieces by hand
  std::complex<double> tau{0.01, 0.3};
  std::complex<double> manual =
      circle_kernel(tau, 0.7, 0.75, 0.5e-12) -
      dirichlet_kernel(tau, M_PI / 2, 0.7, 0.75, 0.5e-12);
  CHECK(std::abs(plus.value - manual) < 1e-11);

  // separated pairs go through the limit form with a zero tail
  ParameterSequences deep = ParameterSequences::constant(2, 2, 6);
  KernelResult lim = schrodinger_kernel(deep, x, y, 0.3, 0.01);
  CHECK_FALSE(lim.saturated);
  CHECK(std::abs(lim.value - plus.value) == 0.0);

  // saturated pairs need the regularization to certify the tail; one level
  // is nowhere near enough at eps = 0.01, six levels are plenty
  Address d{Angle::radians(0.7), {1}};
  CHECK(thrown_code([&] { schrodinger_kernel(f1, d, d, 0.3, 0.01); }) ==
        ErrorCode::InsufficientDepth);
  KernelResult diag = schrodinger_kernel(deep, d, d, 0.3, 0.01);
  CHECK(diag.saturated);
  CHECK(diag.tail_bound > 0.0);
  CHECK(diag.tail_bound < 1e-12);
}

TEST_CASE("evaluation argument validation") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 2);
  Address x{Angle::radians(0.3), {1, 2}};
  CHECK(thrown_code([&] { heat_kernel_level(seq, 3, x, x, 0.5); }) ==
        ErrorCode::Range);
  CHECK(thrown_code([&] { heat_kernel_level(seq, 1, x, x, 0.0); }) ==
        ErrorCode::Domain);
  CHECK(thrown_code([&] { heat_kernel_level(seq, 1, x, x, 0.5, 0.0); }) ==
        ErrorCode::Domain);
  Address bad{Angle::radians(0.3), {5}};
  CHECK(thrown_code([&] { heat_kernel_level(seq, 1, bad, x, 0.5); }) ==
        ErrorCode::Domain);
  CHECK(thrown_code([&] { heat_kernel_limit(seq, bad, x, 0.5); }) ==
        ErrorCode::Domain);
  Address one{Angle::radians(0.3), {1}};
  CHECK(thrown_code([&] { heat_kernel_level(seq, 2, one, x, 0.5); }) ==
        ErrorCode::Range);
  CHECK(thrown_code([&] { schrodinger_kernel(seq, x, x, 0.3, 0.0); }) ==
        ErrorCode::Domain);
}
