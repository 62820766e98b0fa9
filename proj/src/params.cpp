#include "diamond/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "diamond/errors.hpp"

namespace diamond {

namespace {

// Cap on the exact cumulative products.  Leaves headroom in the 128-bit type
// for arc arithmetic (arc indices run up to 2*J_i).
const uint128 kProductCap = uint128(1) << 120;

}  // namespace

ParameterSequences::ParameterSequences(std::vector<std::int64_t> j,
                                       std::vector<std::int64_t> n)
    : j_(std::move(j)), n_(std::move(n)) {
  if (j_.size() != n_.size())
    fail(ErrorCode::Domain, "parameter sequences j and n must have equal length");
  bigJ_.assign(j_.size() + 1, 1);
  bigN_.assign(n_.size() + 1, 1);
  for (std::size_t i = 0; i < j_.size(); ++i) {
    if (j_[i] < 2 || n_[i] < 2)
      fail(ErrorCode::Domain,
           "all j_i and n_i must be >= 2 (level " + std::to_string(i + 1) + ")");
    if (bigJ_[i] > kProductCap / uint128(j_[i]) ||
        bigN_[i] > kProductCap / uint128(n_[i]))
      fail(ErrorCode::Capacity,
           "cumulative products exceed the 2^120 exact-arithmetic cap at level " +
               std::to_string(i + 1));
    bigJ_[i + 1] = bigJ_[i] * uint128(j_[i]);
    bigN_[i + 1] = bigN_[i] * uint128(n_[i]);
  }
}

ParameterSequences ParameterSequences::constant(std::int64_t j, std::int64_t n,
                                                int depth) {
  if (depth < 0) fail(ErrorCode::Domain, "depth must be >= 0");
  return ParameterSequences(std::vector<std::int64_t>(depth, j),
                            std::vector<std::int64_t>(depth, n));
}

std::int64_t ParameterSequences::j(int level) const {
  if (level < 0 || level > depth())
    fail(ErrorCode::Range, "level " + std::to_string(level) + " outside [0, " +
                               std::to_string(depth()) + "]");
  return level == 0 ? 1 : j_[level - 1];
}

std::int64_t ParameterSequences::n(int level) const {
  if (level < 0 || level > depth())
    fail(ErrorCode::Range, "level " + std::to_string(level) + " outside [0, " +
                               std::to_string(depth()) + "]");
  return level == 0 ? 1 : n_[level - 1];
}

uint128 ParameterSequences::J(int level) const {
  if (level < 0 || level > depth())
    fail(ErrorCode::Range, "level " + std::to_string(level) + " outside [0, " +
                               std::to_string(depth()) + "]");
  return bigJ_[level];
}

uint128 ParameterSequences::N(int level) const {
  if (level < 0 || level > depth())
    fail(ErrorCode::Range, "level " + std::to_string(level) + " outside [0, " +
                               std::to_string(depth()) + "]");
  return bigN_[level];
}

double ParameterSequences::Jd(int level) const {
  return static_cast<double>(J(level));
}

double ParameterSequences::Nd(int level) const {
  return static_cast<double>(N(level));
}

double ParameterSequences::cell_length(int level) const {
  if (level == 0) return 2.0 * M_PI;
  return M_PI / Jd(level);
}

AssumptionReport ParameterSequences::check_assumption(double t,
                                                      int horizon) const {
  if (!(t > 0)) fail(ErrorCode::Domain, "t must be > 0");
  if (horizon < 0 || horizon > depth())
    fail(ErrorCode::Range, "horizon outside [0, depth]");
  AssumptionReport rep;
  // log-space evaluation: N_i exp(-J_i^2 t) overflows double long before the
  // sequence becomes informative
  double logN = 0.0, Jdbl = 1.0;
  for (int i = 0; i <= horizon; ++i) {
    if (i > 0) {
      logN += std::log(static_cast<double>(n_[i - 1]));
      Jdbl *= static_cast<double>(j_[i - 1]);
    }
    rep.tail.push_back(std::exp(logN - Jdbl * Jdbl * t));
    rep.strong_tail.push_back(std::exp(logN - Jdbl));
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < rep.tail.size(); ++i)
    if (rep.tail[i] > rep.tail[peak]) peak = i;
  bool decaying = peak + 1 < rep.tail.size() || rep.tail.size() == 1;
  for (std::size_t i = peak + 1; i < rep.tail.size(); ++i)
    if (rep.tail[i] > rep.tail[i - 1]) decaying = false;
  rep.ok = decaying;
  return rep;
}

double hausdorff_dimension(std::int64_t j, std::int64_t n) {
  if (j < 2) fail(ErrorCode::Domain, "hausdorff_dimension requires j >= 2");
  if (n < 1) fail(ErrorCode::Domain, "hausdorff_dimension requires n >= 1");
  // log2 is exact on powers of two, so integer dimensions come out exact
  return 1.0 + std::log2(static_cast<double>(n)) / std::log2(static_cast<double>(j));
}

}  // namespace diamond
