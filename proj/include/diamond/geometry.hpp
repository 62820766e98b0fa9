#ifndef DIAMOND_GEOMETRY_HPP
#define DIAMOND_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "diamond/angle.hpp"
#include "diamond/params.hpp"

namespace diamond {

// Point of the level-i lattice or its limit: base angle plus branch labels
// w_1, w_2, ... (1-based).  A junction of level l carries exactly max(l-1, 0)
// labels; an interior point carries one label per usable level.
struct Address {
  Angle eta = Angle::radians(0.0);
  std::vector<std::int64_t> w;
};

// Cell identifier at a fixed level: arc index (base angle = arc * L_i) plus
// the full label vector.  Level 0 is the single whole-circle cell.
struct CellWord {
  uint128 arc = 0;
  std::vector<std::int64_t> w;
  int level = 0;
  bool operator==(const CellWord& o) const {
    return level == o.level && arc == o.arc && w == o.w;
  }
};

// (theta_x, alpha_x): local coordinate in [0, L_i) within a cell
struct CellCoord {
  CellWord cell;
  double theta = 0.0;
};

enum class PairConfig { DifferentBundle, SameBundleDifferentStrand, SameStrand };

struct BundleDepth {
  int level = 0;       // deepest level at which the pair still shares a bundle
  bool saturated = false;  // true when the search ran out of levels first
};

// throws on label/junction inconsistencies; every public entry point taking
// an Address calls this
void validate_address(const ParameterSequences& seq, const Address& x);

// deepest level at which locate() is defined for this address
int address_level_capacity(const ParameterSequences& seq, const Address& x);

// new junction angles introduced at `level` (theta_0 = {0, pi})
std::vector<Angle> junction_angles(const ParameterSequences& seq, int level);
// all junction angles present at `level`: multiples of L_level
std::vector<Angle> junction_angles_cumulative(const ParameterSequences& seq,
                                              int level);

// word shortening F_i -> F_k: truncate labels, junctions unchanged
Address project(const ParameterSequences& seq, const Address& x, int k);

CellCoord locate(const ParameterSequences& seq, const Address& x, int level);

// the n_level cells sharing base arc and label prefix with x's cell
std::vector<CellWord> bundle(const ParameterSequences& seq, const Address& x,
                             int level);

PairConfig classify_pair(const ParameterSequences& seq, const Address& x,
                         const Address& y, int level);

BundleDepth deepest_common_bundle(const ParameterSequences& seq,
                                  const Address& x, const Address& y, int cap);

// uniformly distributed point (base angle uniform on the circle, labels
// uniform per level); almost surely not a junction
Address sample_point(const ParameterSequences& seq, std::uint64_t seed,
                     int depth);

// canonical enumeration: arc-major, then labels in mixed-radix order
std::vector<CellWord> enumerate_cells(const ParameterSequences& seq, int level);
std::size_t cell_count(const ParameterSequences& seq, int level);
std::size_t cell_index(const ParameterSequences& seq, const CellWord& cell);

// address of the midpoint-grid node r of m within a cell (exact rational)
Address node_address(const ParameterSequences& seq, const CellWord& cell, int r,
                     int m);

}  // namespace diamond

#endif
