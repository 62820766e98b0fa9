#ifndef DIAMOND_VERIFY_HPP
#define DIAMOND_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "diamond/params.hpp"

namespace diamond {

// One measured quantity with its admissible interval [lo, hi].
struct CheckRow {
  std::string label;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckRow> rows;
  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

struct VerifyConfig {
  int level = 1;
  double t = 0.25;
  double s = 0.25;
  double eps = 1e-2;
  int m = 64;
  int samples = 200;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  int workers = 0;
};

CheckReport verify_symmetry(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_mass(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_chapman(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_decomposition(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_intertwining(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_bound(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_oracle(const ParameterSequences& seq, const VerifyConfig& cfg);
CheckReport verify_schrodinger(const ParameterSequences& seq, const VerifyConfig& cfg);

// dispatch by suite name; unknown names raise a parse error
CheckReport verify_suite(const ParameterSequences& seq, const std::string& name,
                         const VerifyConfig& cfg);

}  // namespace diamond

#endif
