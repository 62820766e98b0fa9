#include "diamond/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/rng.hpp"

namespace diamond {

namespace {

const uint128 kMaxEnumeration = uint128(1) << 22;

int junction_level_or_minus1(const ParameterSequences& seq, const Address& x) {
  auto l = x.eta.junction_level(seq);
  return l ? *l : -1;
}

}  // namespace

void validate_address(const ParameterSequences& seq, const Address& x) {
  if (static_cast<int>(x.w.size()) > seq.depth())
    fail(ErrorCode::Domain, "address carries more branch labels than the configured depth");
  for (std::size_t l = 0; l < x.w.size(); ++l) {
    std::int64_t nl = seq.n(static_cast<int>(l) + 1);
    if (x.w[l] < 1 || x.w[l] > nl)
      fail(ErrorCode::Domain, "branch label w_" + std::to_string(l + 1) +
                                  " outside [1, " + std::to_string(nl) + "]");
  }
  int jl = junction_level_or_minus1(seq, x);
  if (jl >= 0) {
    std::size_t allowed = jl > 0 ? static_cast<std::size_t>(jl - 1) : 0;
    if (x.w.size() > allowed)
      fail(ErrorCode::Domain,
           "junction of level " + std::to_string(jl) + " carries at most " +
               std::to_string(allowed) + " branch labels");
  }
}

int address_level_capacity(const ParameterSequences& seq, const Address& x) {
  int jl = junction_level_or_minus1(seq, x);
  if (jl < 0) return static_cast<int>(x.w.size());
  std::size_t full = jl > 0 ? static_cast<std::size_t>(jl - 1) : 0;
  // a junction word with its full label prefix resolves every level; with a
  // shorter prefix it only resolves levels shallower than the junction
  return x.w.size() == full ? seq.depth() : static_cast<int>(x.w.size());
}

std::vector<Angle> junction_angles(const ParameterSequences& seq, int level) {
  if (level < 0 || level > seq.depth())
    fail(ErrorCode::Range, "level outside [0, depth]");
  if (level == 0) return {Angle::pi_fraction(0, 1), Angle::pi_fraction(1, 1)};
  uint128 J = seq.J(level);
  if (2 * J > kMaxEnumeration)
    fail(ErrorCode::Capacity, "junction set too large to enumerate");
  std::int64_t Ji = static_cast<std::int64_t>(J);
  std::int64_t ji = seq.j(level);
  std::vector<Angle> out;
  for (std::int64_t k = 1; k < 2 * Ji; ++k)
    if (k % ji != 0) out.push_back(Angle::pi_fraction(k, Ji));
  return out;
}

std::vector<Angle> junction_angles_cumulative(const ParameterSequences& seq,
                                              int level) {
  if (level < 0 || level > seq.depth())
    fail(ErrorCode::Range, "level outside [0, depth]");
  if (level == 0) return {Angle::pi_fraction(0, 1), Angle::pi_fraction(1, 1)};
  uint128 J = seq.J(level);
  if (2 * J > kMaxEnumeration)
    fail(ErrorCode::Capacity, "junction set too large to enumerate");
  std::int64_t Ji = static_cast<std::int64_t>(J);
  std::vector<Angle> out;
  for (std::int64_t k = 0; k < 2 * Ji; ++k) out.push_back(Angle::pi_fraction(k, Ji));
  return out;
}

Address project(const ParameterSequences& seq, const Address& x, int k) {
  validate_address(seq, x);
  if (k < 0 || k > seq.depth()) fail(ErrorCode::Range, "level outside [0, depth]");
  if (address_level_capacity(seq, x) < k)
    fail(ErrorCode::Range, "address does not resolve level " + std::to_string(k));
  Address out;
  out.eta = x.eta;
  out.w.assign(x.w.begin(),
               x.w.begin() + std::min<std::size_t>(x.w.size(), static_cast<std::size_t>(k)));
  return out;
}

CellCoord locate(const ParameterSequences& seq, const Address& x, int level) {
  validate_address(seq, x);
  if (level < 0 || level > seq.depth())
    fail(ErrorCode::Range, "level outside [0, depth]");
  if (address_level_capacity(seq, x) < level)
    fail(ErrorCode::Range, "address does not resolve level " + std::to_string(level));
  CellCoord c;
  c.cell.level = level;
  if (level == 0) {
    c.cell.arc = 0;
    c.theta = x.eta.value();
    return c;
  }
  uint128 J = seq.J(level);
  c.cell.arc = x.eta.arc_index(J);
  c.theta = x.eta.local_offset(J);
  // labels beyond the junction prefix are padded with 1, which together with
  // theta = 0 at the arc start realizes the lexicographically minimal
  // representative of a junction point
  c.cell.w.resize(level, 1);
  for (std::size_t l = 0; l < x.w.size() && l < static_cast<std::size_t>(level); ++l)
    c.cell.w[l] = x.w[l];
  return c;
}

std::vector<CellWord> bundle(const ParameterSequences& seq, const Address& x,
                             int level) {
  CellCoord c = locate(seq, x, level);
  if (level == 0) return {c.cell};
  std::vector<CellWord> out;
  for (std::int64_t v = 1; v <= seq.n(level); ++v) {
    CellWord w = c.cell;
    w.w[level - 1] = v;
    out.push_back(std::move(w));
  }
  return out;
}

PairConfig classify_pair(const ParameterSequences& seq, const Address& x,
                         const Address& y, int level) {
  if (level == 0) return PairConfig::SameStrand;
  CellCoord cx = locate(seq, x, level);
  CellCoord cy = locate(seq, y, level);
  if (cx.cell.arc != cy.cell.arc) return PairConfig::DifferentBundle;
  for (int l = 0; l + 1 < level; ++l)
    if (cx.cell.w[l] != cy.cell.w[l]) return PairConfig::DifferentBundle;
  return cx.cell.w[level - 1] == cy.cell.w[level - 1]
             ? PairConfig::SameStrand
             : PairConfig::SameBundleDifferentStrand;
}

namespace {

// canonical label, padded like locate() past a junction word's prefix
std::int64_t label_at(const Address& x, int l) {
  return static_cast<std::size_t>(l) < x.w.size() ? x.w[l] : 1;
}

}  // namespace

BundleDepth deepest_common_bundle(const ParameterSequences& seq,
                                  const Address& x, const Address& y, int cap) {
  validate_address(seq, x);
  validate_address(seq, y);
  if (cap < 0 || cap > seq.depth()) fail(ErrorCode::Range, "cap outside [0, depth]");
  BundleDepth out;
  if (x.eta.same_as(y.eta) && x.w == y.w) {
    out.level = cap;
    out.saturated = true;
    return out;
  }
  int known = std::min(address_level_capacity(seq, x),
                       address_level_capacity(seq, y));
  out.saturated = true;
  for (int i = 1; i <= cap; ++i) {
    // same bundle at level i means same level-i arc and equal labels
    // w_1..w_{i-1}; that much is decided by the prefixes already checked
    bool bundled = x.eta.arc_index(seq.J(i)) == y.eta.arc_index(seq.J(i));
    for (int l = 0; bundled && l + 1 < i; ++l)
      bundled = label_at(x, l) == label_at(y, l);
    if (!bundled) {
      out.saturated = false;
      return out;
    }
    // still bundled at i, but the strand label w_i is beyond what the
    // shorter address specifies, so deeper levels stay undetermined
    if (i > known) return out;
    out.level = i;
  }
  // a known label difference at position cap rules out sharing any bundle
  // past cap no matter how the sequences continue, so the search is decided
  // rather than truncated
  if (cap >= 1 && label_at(x, cap - 1) != label_at(y, cap - 1))
    out.saturated = false;
  return out;
}

Address sample_point(const ParameterSequences& seq, std::uint64_t seed,
                     int depth) {
  if (depth < 0 || depth > seq.depth()) fail(ErrorCode::Range, "depth outside [0, depth]");
  Rng rng(seed);
  Address x;
  x.eta = Angle::radians(rng.uniform() * 2.0 * M_PI);
  for (int l = 1; l <= depth; ++l)
    x.w.push_back(1 + static_cast<std::int64_t>(
                          rng.below(static_cast<std::uint64_t>(seq.n(l)))));
  return x;
}

std::size_t cell_count(const ParameterSequences& seq, int level) {
  if (level < 0 || level > seq.depth())
    fail(ErrorCode::Range, "level outside [0, depth]");
  if (level == 0) return 1;
  uint128 J = seq.J(level), N = seq.N(level);
  if (N > kMaxEnumeration || 2 * J * N > kMaxEnumeration)
    fail(ErrorCode::Capacity, "cell family too large to enumerate");
  return static_cast<std::size_t>(2 * J * N);
}

std::vector<CellWord> enumerate_cells(const ParameterSequences& seq, int level) {
  std::size_t total = cell_count(seq, level);
  std::vector<CellWord> out;
  out.reserve(total);
  if (level == 0) {
    out.push_back(CellWord{});
    return out;
  }
  std::int64_t arcs = static_cast<std::int64_t>(2 * seq.J(level));
  for (std::int64_t a = 0; a < arcs; ++a) {
    CellWord w;
    w.level = level;
    w.arc = static_cast<uint128>(a);
    w.w.assign(level, 1);
    while (true) {
      out.push_back(w);
      int l = level - 1;
      while (l >= 0 && w.w[l] == seq.n(l + 1)) {
        w.w[l] = 1;
        --l;
      }
      if (l < 0) break;
      ++w.w[l];
    }
  }
  return out;
}

std::size_t cell_index(const ParameterSequences& seq, const CellWord& cell) {
  if (cell.level < 0 || cell.level > seq.depth())
    fail(ErrorCode::Range, "cell level outside [0, depth]");
  if (static_cast<int>(cell.w.size()) != cell.level)
    fail(ErrorCode::Range, "cell word carries the wrong number of labels");
  if (cell.level == 0) {
    if (cell.arc != 0) fail(ErrorCode::Range, "level-0 arc index must be 0");
    return 0;
  }
  if (cell.arc >= 2 * seq.J(cell.level))
    fail(ErrorCode::Range, "arc index outside [0, 2J)");
  std::size_t N = static_cast<std::size_t>(seq.N(cell.level));
  std::size_t rank = 0;
  for (int l = 0; l < cell.level; ++l) {
    if (cell.w[l] < 1 || cell.w[l] > seq.n(l + 1))
      fail(ErrorCode::Range, "branch label outside [1, n]");
    rank = rank * static_cast<std::size_t>(seq.n(l + 1)) +
           static_cast<std::size_t>(cell.w[l] - 1);
  }
  return static_cast<std::size_t>(cell.arc) * N + rank;
}

Address node_address(const ParameterSequences& seq, const CellWord& cell, int r,
                     int m) {
  if (m <= 0 || r < 0 || r >= m) fail(ErrorCode::Range, "node index outside [0, m)");
  Address x;
  if (cell.level == 0) {
    // theta = (r + 1/2) * 2 pi / m
    x.eta = Angle::pi_fraction(2 * static_cast<std::int64_t>(r) + 1,
                               static_cast<std::int64_t>(m));
    return x;
  }
  uint128 J = seq.J(cell.level);
  if (J > (uint128(1) << 40) || m > (1 << 24))
    fail(ErrorCode::Capacity, "grid node angles exceed exact-arithmetic width");
  std::int64_t Ji = static_cast<std::int64_t>(J);
  std::int64_t arc = static_cast<std::int64_t>(cell.arc);
  // theta = arc*pi/J + (2r+1) pi / (2 J m)
  x.eta = Angle::pi_fraction(2 * arc * m + 2 * r + 1, 2 * Ji * m);
  x.w = cell.w;
  return x;
}

}  // namespace diamond
