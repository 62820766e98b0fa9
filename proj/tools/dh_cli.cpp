#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "diamond_heat.h"

using nlohmann::json;

namespace {

struct SystemHandle {
  dh_system* sys = nullptr;
  ~SystemHandle() { dh_system_destroy(sys); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { dh_string_free(s); }
};

int report_error(dh_status st) {
  std::cerr << "error: " << dh_last_error() << "\n";
  return static_cast<int>(st);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// --params accepts inline JSON or a path to a JSON file
int resolve_params(const std::string& arg, std::string& out) {
  if (!arg.empty() && arg.front() == '{') {
    out = arg;
    return 0;
  }
  if (!read_file(arg, out)) {
    std::cerr << "error: cannot read params file '" << arg << "'\n";
    return DH_CONFIG;
  }
  return 0;
}

int write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << "\n";
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return DH_CONFIG;
  }
  out << content;
  return 0;
}

int open_system(const std::string& params_arg, SystemHandle& handle,
                std::string& params_json) {
  int rc = resolve_params(params_arg, params_json);
  if (rc != 0) return rc;
  dh_status st = dh_system_create(params_json.c_str(), &handle.sys);
  if (st != DH_OK) return report_error(st);
  return 0;
}

json result_json(const dh_kernel_result& r) {
  json out;
  out["value"] = r.value_re;
  out["value_im"] = r.value_im;
  out["tail_bound"] = r.tail_bound;
  out["i_star"] = r.bundle_level;
  out["levels_used"] = r.levels_used;
  out["saturated"] = r.saturated != 0;
  return out;
}

struct CommonOpts {
  std::string params;
  std::string out;
  double t = 0.25;
  double tol = 1e-10;
  int workers = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heat and Schrodinger kernels on diamond hierarchical lattices"};
  app.require_subcommand(1);

  // eval -------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "evaluate the heat kernel at a pair of points");
  CommonOpts eopt;
  eopt.tol = 1e-12;
  std::string ex, ey;
  int elevel = -1, ecap = -1;
  bool elimit = false;
  eval->add_option("--params", eopt.params, "parameter JSON or file")->required();
  eval->add_option("--x", ex, "first address (JSON)")->required();
  eval->add_option("--y", ey, "second address (JSON)")->required();
  eval->add_option("--t", eopt.t, "time");
  eval->add_option("--tol", eopt.tol, "evaluation tolerance");
  eval->add_option("--level", elevel, "evaluate the level-i kernel (default: limit)");
  eval->add_flag("--limit", elimit, "evaluate the limit kernel (default)");
  eval->add_option("--cap", ecap, "bundle search cap for the limit kernel");
  eval->add_option("--out", eopt.out, "output file (default stdout)");

  // grid -------------------------------------------------------------
  auto* grid = app.add_subcommand("grid", "kernel values over a node grid as CSV");
  CommonOpts gopt;
  std::string gx;
  int glevel = 1, gm = 64;
  grid->add_option("--params", gopt.params, "parameter JSON or file")->required();
  grid->add_option("--x", gx, "source address (JSON)")->required();
  grid->add_option("--level", glevel, "lattice level");
  grid->add_option("--m", gm, "nodes per cell");
  grid->add_option("--t", gopt.t, "time");
  grid->add_option("--tol", gopt.tol, "evaluation tolerance");
  grid->add_option("--workers", gopt.workers, "worker threads (0 = auto)")
      ->envname("DIAMOND_HEAT_WORKERS");
  grid->add_option("--out", gopt.out, "output file (default stdout)");

  // solve ------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "evolve an initial field by the heat semigroup");
  CommonOpts sopt;
  std::string su0, spoints;
  solve->add_option("--params", sopt.params, "parameter JSON or file")->required();
  solve->add_option("--u0", su0, "initial field CSV file")->required();
  solve->add_option("--t", sopt.t, "time");
  solve->add_option("--tol", sopt.tol, "evaluation tolerance");
  solve->add_option("--points", spoints, "JSON array of addresses to sample instead of the full grid");
  solve->add_option("--workers", sopt.workers, "worker threads (0 = auto)")
      ->envname("DIAMOND_HEAT_WORKERS");
  solve->add_option("--out", sopt.out, "output file (default stdout)");

  // schrodinger ------------------------------------------------------
  auto* schro = app.add_subcommand("schrodinger", "Wick-rotated kernel evaluation");
  CommonOpts copt;
  copt.tol = 1e-12;
  std::string cx, cy;
  double ceps = 1e-2;
  int clevel = 1, cm = 0, ccap = -1;
  schro->add_option("--params", copt.params, "parameter JSON or file")->required();
  schro->add_option("--x", cx, "first address (JSON)")->required();
  schro->add_option("--y", cy, "second address (JSON); omit to sweep a grid");
  schro->add_option("--t", copt.t, "time (may be negative)");
  schro->add_option("--eps", ceps, "regularization");
  schro->add_option("--tol", copt.tol, "evaluation tolerance");
  schro->add_option("--level", clevel, "lattice level for the grid sweep");
  schro->add_option("--m", cm, "nodes per cell for the grid sweep");
  schro->add_option("--cap", ccap, "bundle search cap for the pointwise value");
  schro->add_option("--out", copt.out, "output file (default stdout)");

  // verify -----------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run one verification suite");
  CommonOpts vopt;
  std::string vsuite;
  double vs = 0.25, veps = 1e-2;
  int vlevel = 1, vm = 64, vsamples = 200;
  std::uint64_t vseed = 1;
  verify->add_option("suite", vsuite,
                     "symmetry|mass|chapman|decomposition|intertwining|bound|oracle|schrodinger")
      ->required();
  verify->add_option("--params", vopt.params, "parameter JSON or file")->required();
  verify->add_option("--level", vlevel, "lattice level");
  verify->add_option("--t", vopt.t, "time");
  verify->add_option("--s", vs, "second time (chapman)");
  verify->add_option("--eps", veps, "regularization (schrodinger)");
  verify->add_option("--m", vm, "nodes or segments per cell");
  verify->add_option("--samples", vsamples, "sample count");
  verify->add_option("--seed", vseed, "RNG seed");
  verify->add_option("--tol", vopt.tol, "evaluation tolerance");
  verify->add_option("--workers", vopt.workers, "worker threads (0 = auto)")
      ->envname("DIAMOND_HEAT_WORKERS");
  verify->add_option("--out", vopt.out, "output file (default stdout)");

  // dim --------------------------------------------------------------
  auto* dim = app.add_subcommand("dim", "Hausdorff dimension of the limit fractal");
  long long dj = 2, dn = 2;
  std::string dout;
  dim->add_option("--j", dj, "branch count j")->required();
  dim->add_option("--n", dn, "strand count n")->required();
  dim->add_option("--out", dout, "output file (default stdout)");

  // bound ------------------------------------------------------------
  auto* bnd = app.add_subcommand("bound", "uniform level-difference bound");
  CommonOpts bopt;
  int blevel = 1;
  bnd->add_option("--params", bopt.params, "parameter JSON or file")->required();
  bnd->add_option("--level", blevel, "level i of the bound on |p^i - p^{i-1}|");
  bnd->add_option("--t", bopt.t, "time");
  bnd->add_option("--out", bopt.out, "output file (default stdout)");

  // assumption -------------------------------------------------------
  auto* assume = app.add_subcommand("assumption", "tail-decay report for the parameter sequences");
  CommonOpts aopt;
  aopt.t = 1.0;
  int ahorizon = -1;
  assume->add_option("--params", aopt.params, "parameter JSON or file")->required();
  assume->add_option("--t", aopt.t, "time");
  assume->add_option("--horizon", ahorizon, "levels to inspect (default: the configured depth)");
  assume->add_option("--out", aopt.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : DH_CONFIG;
  }

  if (eval->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(eopt.params, h, params_json);
    if (rc != 0) return rc;
    dh_kernel_result res;
    dh_status st;
    json cfg{{"cmd", "eval"}, {"t", eopt.t}, {"tol", eopt.tol},
             {"params", json::parse(params_json)}};
    if (elevel >= 0 && !elimit) {
      st = dh_heat_kernel_level(h.sys, elevel, ex.c_str(), ey.c_str(), eopt.t,
                                eopt.tol, &res);
      cfg["level"] = elevel;
    } else {
      st = dh_heat_kernel_limit(h.sys, ex.c_str(), ey.c_str(), eopt.t, eopt.tol,
                                ecap, &res);
      cfg["limit"] = true;
      cfg["cap"] = ecap;
    }
    if (st != DH_OK) return report_error(st);
    json out = result_json(res);
    out["config"] = cfg;
    return write_output(eopt.out, out.dump(2));
  }

  if (grid->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(gopt.params, h, params_json);
    if (rc != 0) return rc;
    json req{{"cmd", "grid"}, {"level", glevel}, {"m", gm}, {"t", gopt.t},
             {"tol", gopt.tol}, {"workers", gopt.workers}};
    req["x"] = json::parse(gx, nullptr, false);
    if (req["x"].is_discarded()) {
      std::cerr << "error: --x is not valid JSON\n";
      return DH_CONFIG;
    }
    OwnedString res;
    dh_status st = dh_run(h.sys, req.dump().c_str(), &res.s);
    if (st != DH_OK) return report_error(st);
    return write_output(gopt.out, res.s);
  }

  if (solve->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(sopt.params, h, params_json);
    if (rc != 0) return rc;
    std::string u0;
    if (!read_file(su0, u0)) {
      std::cerr << "error: cannot read initial field '" << su0 << "'\n";
      return DH_CONFIG;
    }
    json req{{"cmd", "solve"}, {"u0_csv", u0}, {"t", sopt.t}, {"tol", sopt.tol},
             {"workers", sopt.workers}};
    if (!spoints.empty()) {
      req["points"] = json::parse(spoints, nullptr, false);
      if (req["points"].is_discarded()) {
        std::cerr << "error: --points is not valid JSON\n";
        return DH_CONFIG;
      }
    }
    OwnedString res;
    dh_status st = dh_run(h.sys, req.dump().c_str(), &res.s);
    if (st != DH_OK) return report_error(st);
    return write_output(sopt.out, res.s);
  }

  if (schro->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(copt.params, h, params_json);
    if (rc != 0) return rc;
    if (!cy.empty()) {
      dh_kernel_result res;
      dh_status st = dh_schrodinger_kernel(h.sys, cx.c_str(), cy.c_str(),
                                           copt.t, ceps, copt.tol, ccap, &res);
      if (st != DH_OK) return report_error(st);
      json out = result_json(res);
      out["abs2"] = res.value_re * res.value_re + res.value_im * res.value_im;
      out["config"] = json{{"cmd", "schrodinger"}, {"t", copt.t}, {"eps", ceps},
                           {"tol", copt.tol}, {"cap", ccap},
                           {"params", json::parse(params_json)}};
      return write_output(copt.out, out.dump(2));
    }
    if (cm <= 0) {
      std::cerr << "error: provide --y for a pointwise value or --m for a grid sweep\n";
      return DH_CONFIG;
    }
    json req{{"cmd", "schrodinger_grid"}, {"level", clevel}, {"m", cm},
             {"t", copt.t}, {"eps", ceps}, {"tol", copt.tol}};
    req["x"] = json::parse(cx, nullptr, false);
    if (req["x"].is_discarded()) {
      std::cerr << "error: --x is not valid JSON\n";
      return DH_CONFIG;
    }
    OwnedString res;
    dh_status st = dh_run(h.sys, req.dump().c_str(), &res.s);
    if (st != DH_OK) return report_error(st);
    return write_output(copt.out, res.s);
  }

  if (verify->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(vopt.params, h, params_json);
    if (rc != 0) return rc;
    json req{{"cmd", "verify"}, {"suite", vsuite}, {"level", vlevel},
             {"t", vopt.t}, {"s", vs}, {"eps", veps}, {"m", vm},
             {"samples", vsamples}, {"seed", vseed}, {"tol", vopt.tol},
             {"workers", vopt.workers}};
    OwnedString res;
    dh_status st = dh_run(h.sys, req.dump().c_str(), &res.s);
    if (st != DH_OK) return report_error(st);
    int rc2 = write_output(vopt.out, res.s);
    if (rc2 != 0) return rc2;
    json rep = json::parse(res.s);
    if (!vopt.out.empty())
      std::cout << "suite " << vsuite << ": "
                << (rep["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    return rep["pass"].get<bool>() ? 0 : DH_VALIDATION;
  }

  if (dim->parsed()) {
    double value = 0.0;
    dh_status st = dh_hausdorff_dimension(dj, dn, &value);
    if (st != DH_OK) return report_error(st);
    json out{{"j", dj}, {"n", dn}, {"dimension", value}, {"config", {{"cmd", "dim"}}}};
    return write_output(dout, out.dump(2));
  }

  if (bnd->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(bopt.params, h, params_json);
    if (rc != 0) return rc;
    double value = 0.0;
    dh_status st = dh_uniform_bound(h.sys, blevel, bopt.t, &value);
    if (st != DH_OK) return report_error(st);
    json out{{"level", blevel}, {"t", bopt.t}, {"bound", value},
             {"config", {{"cmd", "bound"}, {"params", json::parse(params_json)}}}};
    return write_output(bopt.out, out.dump(2));
  }

  if (assume->parsed()) {
    SystemHandle h;
    std::string params_json;
    int rc = open_system(aopt.params, h, params_json);
    if (rc != 0) return rc;
    if (ahorizon < 0) ahorizon = dh_system_depth(h.sys);
    OwnedString res;
    dh_status st = dh_check_assumption(h.sys, aopt.t, ahorizon, &res.s);
    if (st != DH_OK) return report_error(st);
    json out = json::parse(res.s);
    out["config"] = json{{"cmd", "assumption"}, {"t", aopt.t},
                         {"horizon", ahorizon}, {"params", json::parse(params_json)}};
    return write_output(aopt.out, out.dump(2));
  }

  return 0;
}
