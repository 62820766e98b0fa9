#ifndef DIAMOND_PARAMS_HPP
#define DIAMOND_PARAMS_HPP

#include <cstdint>
#include <vector>

namespace diamond {

using uint128 = unsigned __int128;

// Tail terms N_i * exp(-J_i^2 t) of the level-i kernel corrections, plus the
// stronger t-independent proxy N_i * exp(-J_i).  `ok` reports whether the
// window shows the sequence peaking strictly before the horizon and then
// decaying, which is the finite-window stand-in for a finite limsup.
struct AssumptionReport {
  std::vector<double> tail;
  std::vector<double> strong_tail;
  bool ok = false;
};

// Branching/scale sequences (j_i, n_i), i = 1..depth, with the cumulative
// products J_i = j_1...j_i and N_i = n_1...n_i.  Cumulative products are kept
// in 128-bit integers; configurations that overflow them are rejected rather
// than silently evaluated in floating point.
class ParameterSequences {
 public:
  ParameterSequences(std::vector<std::int64_t> j, std::vector<std::int64_t> n);
  static ParameterSequences constant(std::int64_t j, std::int64_t n, int depth);

  int depth() const { return static_cast<int>(j_.size()); }
  std::int64_t j(int level) const;  // j(0) == 1
  std::int64_t n(int level) const;
  uint128 J(int level) const;
  uint128 N(int level) const;
  double Jd(int level) const;
  double Nd(int level) const;
  // L_0 = 2*pi (the base circle), L_i = pi / J_i
  double cell_length(int level) const;

  AssumptionReport check_assumption(double t, int horizon) const;

  bool operator==(const ParameterSequences& o) const {
    return j_ == o.j_ && n_ == o.n_;
  }

 private:
  std::vector<std::int64_t> j_, n_;
  std::vector<uint128> bigJ_, bigN_;  // index i in [0, depth]
};

// 1 + log(n)/log(j); requires j >= 2, n >= 1
double hausdorff_dimension(std::int64_t j, std::int64_t n);

}  // namespace diamond

#endif
