#include <cmath>
#include <sstream>
#include <vector>

#include "diamond/fractal_kernel.hpp"
#include "diamond/grid.hpp"
#include "diamond/serialization.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace diamond;

TEST_CASE("grid shape and quadrature") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 2);
  GridField one = GridField::constant(seq, 1, 8, 1.0);
  CHECK(one.cell_total() == 8);
  CHECK(one.size() == 64);
  CHECK(one.weight() == doctest::Approx(M_PI / 2 / (2 * 8)));
  // each of the N_1 = 2 strand copies carries the full arc measure once
  CHECK(integrate(one) == doctest::Approx(2 * M_PI));

  GridField base = GridField::constant(seq, 0, 16, 3.0);
  CHECK(base.cell_total() == 1);
  CHECK(integrate(base) == doctest::Approx(6 * M_PI));
  CHECK(base.node_theta(0) == doctest::Approx(2 * M_PI / 32));

  CHECK(thrown_code([&] { GridField::constant(seq, 1, 0, 1.0); }) ==
        ErrorCode::Domain);
  CHECK(thrown_code([&] { GridField::constant(seq, 3, 4, 1.0); }) ==
        ErrorCode::Range);
}

TEST_CASE("node addresses line up with node angles") {
  ParameterSequences seq = ParameterSequences::constant(2, 3, 2);
  GridField f = GridField::random(seq, 2, 4, 5);
  for (std::size_t c = 0; c < f.cell_total(); c += 7) {
    Address a = f.node_addr(c, 1);
    validate_address(seq, a);
    CellCoord cc = locate(seq, a, 2);
    CHECK(cc.theta == doctest::Approx(f.node_theta(1)));
    CHECK(cc.cell.arc == f.cells()[c].arc);
  }
}

TEST_CASE("strand projection splits orthogonally") {
  ParameterSequences seq = ParameterSequences::constant(2, 3, 1);
  GridField f = GridField::random(seq, 1, 6, 11);
  ProjectionSplit split = project_sym(f);
  REQUIRE(split.sym.size() == f.size());
  double inner = 0.0, back = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    inner += split.sym.values()[i] * split.anti.values()[i];
    back += std::fabs(split.sym.values()[i] + split.anti.values()[i] -
                      f.values()[i]);
  }
  CHECK(std::fabs(inner) * f.weight() < 1e-12);
  CHECK(back < 1e-12);
  // averaging is idempotent
  ProjectionSplit twice = project_sym(split.sym);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::fabs(twice.anti.values()[i]) < 1e-14);

  GridField base = GridField::random(seq, 0, 8, 3);
  ProjectionSplit b = project_sym(base);
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(b.anti.values()[i] == 0.0);
}

TEST_CASE("coarsen and pullback align exactly") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 2);
  GridField coarse = GridField::random(seq, 1, 4, 21);
  GridField fine = pullback(coarse, 2, 2);
  CHECK(fine.level() == 2);
  CHECK(fine.nodes_per_cell() == 2);
  // j_2 * m_fine = 4 fine nodes per coarse cell sit exactly on the coarse
  // lattice, so pulling back and coarsening loses nothing
  GridField back = coarsen(fine);
  REQUIRE(back.size() == coarse.size());
  for (std::size_t i = 0; i < coarse.size(); ++i)
    CHECK(back.values()[i] == doctest::Approx(coarse.values()[i]));
  CHECK(integrate(fine) == doctest::Approx(integrate(coarse)));

  // the circle cell absorbs all 2 j_1 level-1 arcs
  GridField circle = GridField::random(seq, 0, 8, 22);
  GridField up = pullback(circle, 1, 2);
  GridField down = coarsen(up);
  REQUIRE(down.size() == circle.size());
  for (std::size_t i = 0; i < circle.size(); ++i)
    CHECK(down.values()[i] == doctest::Approx(circle.values()[i]));
  CHECK(integrate(up) == doctest::Approx(integrate(circle)));
}

TEST_CASE("pullback interpolates between coarse nodes") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  GridField lin = GridField::from_function(
      seq, 0, 64, [](const Address& a) { return a.eta.value(); });
  GridField fine = pullback(lin, 1, 8);
  for (int r = 0; r < 8; ++r) {
    double th = fine.node_theta(r);
    CHECK(fine.at(0, r) == doctest::Approx(th).epsilon(1e-6));
  }
}

TEST_CASE("smoothing keeps mass and positivity") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  GridField one = GridField::constant(seq, 1, 16, 1.0);
  GridField sm = apply_semigroup(one, 0.3);
  for (double v : sm.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-7));

  GridField f = GridField::random(seq, 1, 16, 9);
  GridField g = apply_semigroup(f, 0.5);
  double lo = 1e9, hi = -1e9;
  for (double v : f.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : g.values()) {
    CHECK(v >= lo - 1e-8);
    CHECK(v <= hi + 1e-8);
  }
  CHECK(integrate(g) == doctest::Approx(integrate(f)).epsilon(1e-8));
}

TEST_CASE("kernel row integrates to one") {
  ParameterSequences seq({3}, {2});
  GridField shape = GridField::constant(seq, 1, 64, 0.0);
  Address x = sample_point(seq, 4, 1);
  auto row = kernel_row(shape, x, 0.2);
  REQUIRE(row.size() == shape.size());
  double mass = 0.0;
  for (double v : row) mass += v * shape.weight();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("heat solve matches smoothing on the lattice nodes") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  GridField f = GridField::random(seq, 1, 8, 17);
  GridField sm = apply_semigroup(f, 0.4);
  std::vector<Address> pts = {f.node_addr(0, 3), f.node_addr(5, 1)};
  auto vals = heat_solve(f, 0.4, pts);
  REQUIRE(vals.size() == 2);
  CHECK(vals[0] == doctest::Approx(sm.at(0, 3)));
  CHECK(vals[1] == doctest::Approx(sm.at(5, 1)));
}

TEST_CASE("dirichlet energy of pulled back waves") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  // energy of cos on the circle is pi, and lifting to level 1 keeps it
  GridField wave = GridField::from_function(
      seq, 0, 512, [](const Address& a) { return std::cos(a.eta.value()); });
  CHECK(dirichlet_energy(wave, wave) == doctest::Approx(M_PI).epsilon(2e-2));
  GridField lifted = pullback(wave, 1, 256);
  CHECK(dirichlet_energy(lifted, lifted) ==
        doctest::Approx(M_PI).epsilon(2e-2));
  GridField flat = GridField::constant(seq, 1, 64, 2.5);
  CHECK(dirichlet_energy(flat, flat) == doctest::Approx(0.0));
  GridField f = GridField::random(seq, 1, 16, 3);
  CHECK(dirichlet_energy(f, f) >= 0.0);
}

TEST_CASE("matching residual separates glued from torn fields") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  GridField cont = GridField::from_function(
      seq, 1, 64, [](const Address& a) { return std::cos(a.eta.value()); });
  CHECK(matching_residual(cont) < 1e-3);
  GridField torn = GridField::from_function(seq, 1, 64, [](const Address& a) {
    return a.w.size() == 1 && a.w[0] == 1 ? 1.0 : 0.0;
  });
  CHECK(matching_residual(torn) > 0.5);
}

TEST_CASE("decomposition and chapman-kolmogorov residuals stay small") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  GridField f = GridField::random(seq, 1, 32, 13);
  CHECK(check_decomposition(f, 0.25) < 1e-3);
  CHECK(check_chapman_kolmogorov(seq, 1, 0.25, 0.25, 64, 2, 5) < 1e-4);
  CHECK(check_chapman_kolmogorov(seq, 0, 0.3, 0.2, 64, 2, 6) < 1e-6);
}

TEST_CASE("smoothing commutes with pullback") {
  ParameterSequences seq = ParameterSequences::constant(2, 2, 1);
  // 128 circle nodes over 2 pi match 32 nodes per length-pi/2 cell exactly,
  // so no interpolation error enters
  GridField coarse = GridField::from_function(
      seq, 0, 128, [](const Address& a) { return std::cos(a.eta.value()); });
  CHECK(check_intertwining(coarse, 1, 32, 0.25) < 1e-6);
}

TEST_CASE("json and csv round trips") {
  ParameterSequences seq({3, 2}, {3, 3});
  ParameterSequences back = params_from_json(params_to_json(seq));
  CHECK(back == seq);
  CHECK(params_from_json("{\"j_const\":2,\"n_const\":3,\"depth\":2}") ==
        ParameterSequences({2, 2}, {3, 3}));
  CHECK(thrown_code([] { params_from_json("{\"j\":[2]}"); }) ==
        ErrorCode::Parse);

  Address exact{Angle::pi_fraction(1, 6), {2}};
  Address rexact = address_from_json(address_to_json(exact));
  CHECK(rexact.eta.exact());
  CHECK(rexact.eta.num() == 1);
  CHECK(rexact.eta.den() == 6);
  CHECK(rexact.w == exact.w);
  Address plain{Angle::radians(0.375), {1, 2}};
  Address rplain = address_from_json(address_to_json(plain));
  CHECK_FALSE(rplain.eta.exact());
  CHECK(rplain.eta.value() == plain.eta.value());
  CHECK(rplain.w == plain.w);

  GridField f = GridField::random(seq, 1, 3, 77);
  std::stringstream buf;
  write_csv(f, buf);
  GridField g = read_csv(buf);
  CHECK(g.level() == f.level());
  CHECK(g.nodes_per_cell() == f.nodes_per_cell());
  CHECK(g.seq() == f.seq());
  CHECK(g.values() == f.values());
}

TEST_CASE("cell labels round trip") {
  ParameterSequences seq = ParameterSequences::constant(2, 3, 2);
  for (const CellWord& cell : enumerate_cells(seq, 2)) {
    CellWord back = cell_from_label(seq, 2, cell_label(cell));
    CHECK(back == cell);
  }
  CHECK(thrown_code([&] { cell_from_label(seq, 2, "0.1"); }) ==
        ErrorCode::Parse);
  CHECK(thrown_code([&] { cell_from_label(seq, 1, "99.1"); }) ==
        ErrorCode::Parse);
}
