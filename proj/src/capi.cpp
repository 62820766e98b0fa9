#include "diamond_heat.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "json.hpp"

#include "diamond/errors.hpp"
#include "diamond/fractal_kernel.hpp"
#include "diamond/geometry.hpp"
#include "diamond/grid.hpp"
#include "diamond/kernel1d.hpp"
#include "diamond/params.hpp"
#include "diamond/serialization.hpp"
#include "diamond/verify.hpp"
#include "parallel.hpp"

using nlohmann::json;

struct dh_system {
  diamond::ParameterSequences seq;
};

namespace {

thread_local std::string g_last_error;

dh_status map_code(diamond::ErrorCode code) {
  switch (code) {
    case diamond::ErrorCode::Domain:
    case diamond::ErrorCode::Range:
    case diamond::ErrorCode::InsufficientDepth:
      return DH_VALIDATION;
    case diamond::ErrorCode::Parse:
      return DH_CONFIG;
    case diamond::ErrorCode::Capacity:
      return DH_CAPACITY;
    case diamond::ErrorCode::Internal:
      return DH_INTERNAL;
  }
  return DH_INTERNAL;
}

template <class Fn>
dh_status guarded(Fn&& fn) {
  try {
    fn();
    return DH_OK;
  } catch (const diamond::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DH_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DH_INTERNAL;
  }
}

dh_status need(bool ok, const char* msg) {
  if (ok) return DH_OK;
  g_last_error = msg;
  return DH_VALIDATION;
}

void fill_result(const diamond::KernelResult& r, dh_kernel_result* out) {
  out->value_re = r.value.real();
  out->value_im = r.value.imag();
  out->tail_bound = r.tail_bound;
  out->levels_used = r.levels_used;
  out->bundle_level = r.bundle_level;
  out->saturated = r.saturated ? 1 : 0;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

double finite_or_cap(double v) {
  if (std::isnan(v)) return 0.0;
  if (v > 1e308) return 1e308;
  if (v < -1e308) return -1e308;
  return v;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse_request(const char* text) {
  if (text == nullptr) diamond::fail(diamond::ErrorCode::Parse, "null request");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) diamond::fail(diamond::ErrorCode::Parse, "malformed JSON request");
  if (!j.is_object()) diamond::fail(diamond::ErrorCode::Parse, "request must be a JSON object");
  return j;
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    diamond::fail(diamond::ErrorCode::Parse, std::string("field '") + key + "' must be numeric");
  return j[key].get<double>();
}

std::int64_t get_int(const json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    diamond::fail(diamond::ErrorCode::Parse, std::string("field '") + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

diamond::Address get_address(const json& j, const char* key) {
  if (!j.contains(key))
    diamond::fail(diamond::ErrorCode::Parse, std::string("missing address field '") + key + "'");
  return diamond::address_from_json(j[key].dump());
}

json config_echo(const dh_system* sys, const json& extra) {
  json cfg = extra;
  cfg["params"] = json::parse(diamond::params_to_json(sys->seq));
  return cfg;
}

std::string run_grid(dh_system* sys, const json& req) {
  int level = static_cast<int>(get_int(req, "level", 1));
  int m = static_cast<int>(get_int(req, "m", 64));
  double t = get_num(req, "t", 0.25);
  double tol = get_num(req, "tol", 1e-10);
  int workers = static_cast<int>(get_int(req, "workers", 0));
  diamond::Address x = get_address(req, "x");
  diamond::GridField shape(sys->seq, level, m);
  std::vector<double> row = diamond::kernel_row(shape, x, t, tol, workers);
  json cfg = config_echo(sys, {{"cmd", "grid"},
                               {"level", level},
                               {"m", m},
                               {"t", t},
                               {"tol", tol},
                               {"x", json::parse(diamond::address_to_json(x))}});
  std::ostringstream out;
  out << "# " << cfg.dump() << "\n";
  out << "t,cell,theta,value\n";
  for (std::size_t c = 0; c < shape.cell_total(); ++c) {
    std::string label = diamond::cell_label(shape.cells()[c]);
    for (int r = 0; r < m; ++r)
      out << fmt_double(t) << "," << label << "," << fmt_double(shape.node_theta(r))
          << "," << fmt_double(row[c * m + r]) << "\n";
  }
  return out.str();
}

std::string run_solve(dh_system* sys, const json& req) {
  if (!req.contains("u0_csv") || !req["u0_csv"].is_string())
    diamond::fail(diamond::ErrorCode::Parse, "solve needs string field 'u0_csv'");
  double t = get_num(req, "t", 0.25);
  double tol = get_num(req, "tol", 1e-10);
  int workers = static_cast<int>(get_int(req, "workers", 0));
  std::istringstream in(req["u0_csv"].get<std::string>());
  diamond::GridField u0 = diamond::read_csv(in);
  if (!(u0.seq() == sys->seq))
    diamond::fail(diamond::ErrorCode::Domain, "field parameters do not match the system");
  json cfg = config_echo(sys, {{"cmd", "solve"},
                               {"level", u0.level()},
                               {"m", u0.nodes_per_cell()},
                               {"t", t},
                               {"tol", tol}});
  if (req.contains("points")) {
    if (!req["points"].is_array())
      diamond::fail(diamond::ErrorCode::Parse, "'points' must be an array of addresses");
    std::vector<diamond::Address> pts;
    for (const auto& p : req["points"])
      pts.push_back(diamond::address_from_json(p.dump()));
    std::vector<double> vals = diamond::heat_solve(u0, t, pts, tol, workers);
    json out;
    out["config"] = cfg;
    out["values"] = vals;
    return out.dump();
  }
  diamond::GridField evolved = diamond::apply_semigroup(u0, t, tol, workers);
  std::ostringstream out;
  diamond::write_csv(evolved, out);
  std::string text = out.str();
  std::size_t eol = text.find('\n');
  return text.substr(0, eol + 1) + "# " + cfg.dump() + "\n" + text.substr(eol + 1);
}

std::string run_schrodinger_grid(dh_system* sys, const json& req) {
  int level = static_cast<int>(get_int(req, "level", 1));
  int m = static_cast<int>(get_int(req, "m", 64));
  double t = get_num(req, "t", 0.25);
  double eps = get_num(req, "eps", 1e-2);
  double tol = get_num(req, "tol", 1e-10);
  diamond::Address x = get_address(req, "x");
  diamond::GridField shape(sys->seq, level, m);
  json cfg = config_echo(sys, {{"cmd", "schrodinger_grid"},
                               {"level", level},
                               {"m", m},
                               {"t", t},
                               {"eps", eps},
                               {"tol", tol},
                               {"x", json::parse(diamond::address_to_json(x))}});
  std::ostringstream out;
  out << "# " << cfg.dump() << "\n";
  out << "cell,theta,re,im,abs2\n";
  for (std::size_t c = 0; c < shape.cell_total(); ++c) {
    std::string label = diamond::cell_label(shape.cells()[c]);
    for (int r = 0; r < m; ++r) {
      std::complex<double> v =
          diamond::schrodinger_kernel_level(sys->seq, level, x,
                                            shape.node_addr(c, r), t, eps, tol)
              .value;
      out << label << "," << fmt_double(shape.node_theta(r)) << ","
          << fmt_double(v.real()) << "," << fmt_double(v.imag()) << ","
          << fmt_double(std::norm(v)) << "\n";
    }
  }
  return out.str();
}

std::string run_verify(dh_system* sys, const json& req) {
  if (!req.contains("suite") || !req["suite"].is_string())
    diamond::fail(diamond::ErrorCode::Parse, "verify needs string field 'suite'");
  diamond::VerifyConfig cfg;
  cfg.level = static_cast<int>(get_int(req, "level", cfg.level));
  cfg.t = get_num(req, "t", cfg.t);
  cfg.s = get_num(req, "s", cfg.s);
  cfg.eps = get_num(req, "eps", cfg.eps);
  cfg.m = static_cast<int>(get_int(req, "m", cfg.m));
  cfg.samples = static_cast<int>(get_int(req, "samples", cfg.samples));
  cfg.seed = static_cast<std::uint64_t>(get_int(req, "seed", static_cast<std::int64_t>(cfg.seed)));
  cfg.tol = get_num(req, "tol", cfg.tol);
  cfg.workers = static_cast<int>(get_int(req, "workers", cfg.workers));
  diamond::CheckReport rep =
      diamond::verify_suite(sys->seq, req["suite"].get<std::string>(), cfg);
  json out;
  out["suite"] = rep.suite;
  out["pass"] = rep.pass();
  out["rows"] = json::array();
  for (const auto& r : rep.rows)
    out["rows"].push_back({{"label", r.label},
                           {"value", finite_or_cap(r.value)},
                           {"min", finite_or_cap(r.lo)},
                           {"max", finite_or_cap(r.hi)},
                           {"pass", r.pass}});
  out["config"] = config_echo(sys, {{"cmd", "verify"},
                                    {"suite", rep.suite},
                                    {"level", cfg.level},
                                    {"t", cfg.t},
                                    {"s", cfg.s},
                                    {"eps", cfg.eps},
                                    {"m", cfg.m},
                                    {"samples", cfg.samples},
                                    {"seed", cfg.seed},
                                    {"tol", cfg.tol}});
  return out.dump();
}

}  // namespace

extern "C" {

dh_status dh_system_create(const char* params_json, dh_system** out) {
  dh_status pre = need(out != nullptr, "null output pointer");
  if (pre != DH_OK) return pre;
  pre = need(params_json != nullptr, "null params");
  if (pre != DH_OK) return pre;
  *out = nullptr;
  return guarded([&] {
    diamond::ParameterSequences seq = diamond::params_from_json(params_json);
    *out = new dh_system{std::move(seq)};
  });
}

void dh_system_destroy(dh_system* sys) { delete sys; }

int dh_system_depth(const dh_system* sys) {
  return sys == nullptr ? -1 : sys->seq.depth();
}

const char* dh_last_error(void) { return g_last_error.c_str(); }

dh_status dh_heat_kernel_level(dh_system* sys, int level, const char* x_json,
                               const char* y_json, double t, double tol,
                               dh_kernel_result* out) {
  dh_status pre = need(sys && x_json && y_json && out, "null argument");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    diamond::Address x = diamond::address_from_json(x_json);
    diamond::Address y = diamond::address_from_json(y_json);
    fill_result(diamond::heat_kernel_level(sys->seq, level, x, y, t, tol), out);
  });
}

dh_status dh_heat_kernel_limit(dh_system* sys, const char* x_json,
                               const char* y_json, double t, double tol,
                               int cap, dh_kernel_result* out) {
  dh_status pre = need(sys && x_json && y_json && out, "null argument");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    diamond::Address x = diamond::address_from_json(x_json);
    diamond::Address y = diamond::address_from_json(y_json);
    fill_result(diamond::heat_kernel_limit(sys->seq, x, y, t, tol, cap), out);
  });
}

dh_status dh_schrodinger_kernel(dh_system* sys, const char* x_json,
                                const char* y_json, double t, double eps,
                                double tol, int cap, dh_kernel_result* out) {
  dh_status pre = need(sys && x_json && y_json && out, "null argument");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    diamond::Address x = diamond::address_from_json(x_json);
    diamond::Address y = diamond::address_from_json(y_json);
    fill_result(diamond::schrodinger_kernel(sys->seq, x, y, t, eps, tol, cap),
                out);
  });
}

dh_status dh_circle_kernel(double t, double theta1, double theta2, double tol,
                           double* out) {
  dh_status pre = need(out != nullptr, "null output pointer");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    *out = diamond::circle_kernel(t, theta1, theta2,
                                  {tol, diamond::SeriesMethod::Auto});
  });
}

dh_status dh_dirichlet_kernel(double t, double length, double theta1,
                              double theta2, double tol, double* out) {
  dh_status pre = need(out != nullptr, "null output pointer");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    *out = diamond::dirichlet_kernel(t, length, theta1, theta2,
                                     {tol, diamond::SeriesMethod::Auto});
  });
}

dh_status dh_uniform_bound(dh_system* sys, int level, double t, double* out) {
  dh_status pre = need(sys && out, "null argument");
  if (pre != DH_OK) return pre;
  return guarded([&] { *out = diamond::uniform_bound(sys->seq, level, t); });
}

dh_status dh_hausdorff_dimension(long long j, long long n, double* out) {
  dh_status pre = need(out != nullptr, "null output pointer");
  if (pre != DH_OK) return pre;
  return guarded([&] { *out = diamond::hausdorff_dimension(j, n); });
}

dh_status dh_check_assumption(dh_system* sys, double t, int horizon,
                              char** json_out) {
  dh_status pre = need(sys && json_out, "null argument");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    diamond::AssumptionReport rep = sys->seq.check_assumption(t, horizon);
    json out;
    out["tail"] = json::array();
    out["strong_tail"] = json::array();
    for (double v : rep.tail) out["tail"].push_back(finite_or_cap(v));
    for (double v : rep.strong_tail) out["strong_tail"].push_back(finite_or_cap(v));
    out["ok"] = rep.ok;
    *json_out = dup_string(out.dump());
  });
}

dh_status dh_sample_point(dh_system* sys, unsigned long long seed, int depth,
                          char** json_out) {
  dh_status pre = need(sys && json_out, "null argument");
  if (pre != DH_OK) return pre;
  return guarded([&] {
    int d = depth < 0 ? sys->seq.depth() : depth;
    diamond::Address a = diamond::sample_point(sys->seq, seed, d);
    *json_out = dup_string(diamond::address_to_json(a));
  });
}

dh_status dh_run(dh_system* sys, const char* request_json, char** out) {
  dh_status pre = need(sys && out, "null argument");
  if (pre != DH_OK) return pre;
  *out = nullptr;
  return guarded([&] {
    json req = parse_request(request_json);
    if (!req.contains("cmd") || !req["cmd"].is_string())
      diamond::fail(diamond::ErrorCode::Parse, "request needs string field 'cmd'");
    std::string cmd = req["cmd"].get<std::string>();
    std::string result;
    if (cmd == "grid")
      result = run_grid(sys, req);
    else if (cmd == "solve")
      result = run_solve(sys, req);
    else if (cmd == "schrodinger_grid")
      result = run_schrodinger_grid(sys, req);
    else if (cmd == "verify")
      result = run_verify(sys, req);
    else
      diamond::fail(diamond::ErrorCode::Parse, "unknown cmd '" + cmd + "'");
    *out = dup_string(result);
    if (*out == nullptr)
      diamond::fail(diamond::ErrorCode::Internal, "out of memory");
  });
}

void dh_string_free(char* s) { std::free(s); }

}  // extern "C"
