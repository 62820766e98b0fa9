#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "diamond_heat.h"
#include "doctest.h"

namespace {

struct Sys {
  dh_system* p = nullptr;
  explicit Sys(const char* params) { REQUIRE(dh_system_create(params, &p) == DH_OK); }
  ~Sys() { dh_system_destroy(p); }
};

struct Out {
  char* s = nullptr;
  ~Out() { dh_string_free(s); }
};

}  // namespace

TEST_CASE("system lifecycle and depth") {
  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":3}");
  CHECK(dh_system_depth(sys.p) == 3);
  Sys listed("{\"j\":[3,2],\"n\":[3,3]}");
  CHECK(dh_system_depth(listed.p) == 2);
}

TEST_CASE("creation failures set codes and messages") {
  dh_system* p = nullptr;
  CHECK(dh_system_create("{\"j_const\":1,\"n_const\":2,\"depth\":2}", &p) ==
        DH_VALIDATION);
  CHECK(p == nullptr);
  CHECK(std::strlen(dh_last_error()) > 0);
  CHECK(dh_system_create("not json", &p) == DH_CONFIG);
  CHECK(dh_system_create("{\"j_const\":2,\"n_const\":2,\"depth\":200}", &p) ==
        DH_CAPACITY);
  CHECK(dh_system_create(nullptr, &p) == DH_VALIDATION);
}

TEST_CASE("kernel evaluation through the c surface") {
  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":1}");
  dh_kernel_result r;
  CHECK(dh_heat_kernel_level(sys.p, 1, "{\"eta_real\":0.7,\"w\":[1]}",
                             "{\"eta_real\":0.75,\"w\":[2]}", 0.4, 1e-12,
                             &r) == DH_OK);
  CHECK(std::fabs(r.value_re - 0.1925463108844219717) < 1e-12);
  CHECK(r.value_im == 0.0);
  CHECK(r.levels_used == 1);

  dh_kernel_result lim;
  CHECK(dh_heat_kernel_limit(sys.p, "{\"eta_real\":0.7,\"w\":[1]}",
                             "{\"eta_real\":0.75,\"w\":[2]}", 0.4, 1e-12, -1,
                             &lim) == DH_OK);
  CHECK(lim.value_re == r.value_re);
  CHECK(lim.saturated == 0);
  CHECK(lim.tail_bound == 0.0);

  dh_kernel_result sch;
  CHECK(dh_schrodinger_kernel(sys.p, "{\"eta_real\":0.7,\"w\":[1]}",
                              "{\"eta_real\":0.75,\"w\":[2]}", 0.3, 0.01,
                              1e-12, -1, &sch) == DH_OK);
  CHECK(sch.value_im != 0.0);

  CHECK(dh_heat_kernel_level(sys.p, 1, "{\"eta_real\":0.7,\"w\":[9]}",
                             "{\"eta_real\":0.75,\"w\":[2]}", 0.4, 1e-12,
                             &r) == DH_VALIDATION);
  CHECK(dh_heat_kernel_level(sys.p, 1, "oops",
                             "{\"eta_real\":0.75,\"w\":[2]}", 0.4, 1e-12,
                             &r) == DH_CONFIG);
  CHECK(dh_heat_kernel_level(sys.p, 1, nullptr, nullptr, 0.4, 1e-12, &r) ==
        DH_VALIDATION);
}

TEST_CASE("exact junction addresses cross the json boundary") {
  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":2}");
  dh_kernel_result r;
  CHECK(dh_heat_kernel_limit(sys.p, "{\"eta_num\":1,\"eta_den\":2}",
                             "{\"eta_real\":2.5,\"w\":[1,1]}", 0.5, 1e-9, -1,
                             &r) == DH_OK);
  CHECK(r.value_re > 0.0);
}

TEST_CASE("scalar helpers") {
  double v = 0.0;
  CHECK(dh_circle_kernel(1.0, 0.0, 0.0, 1e-12, &v) == DH_OK);
  CHECK(std::fabs(v - 0.2821239734567622394) < 1e-13);
  CHECK(dh_dirichlet_kernel(0.3, M_PI / 2, 0.4, 1.1, 1e-12, &v) == DH_OK);
  CHECK(std::fabs(v - 0.2124562547545799056) < 1e-13);
  CHECK(dh_circle_kernel(-1.0, 0.0, 0.0, 1e-12, &v) == DH_VALIDATION);

  CHECK(dh_hausdorff_dimension(2, 4, &v) == DH_OK);
  CHECK(v == 3.0);
  CHECK(dh_hausdorff_dimension(1, 4, &v) == DH_VALIDATION);

  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":2}");
  CHECK(dh_uniform_bound(sys.p, 1, 1.0, &v) == DH_OK);
  CHECK(v == doctest::Approx(0.09157819444));
}

TEST_CASE("assumption and sampling return json") {
  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":4}");
  Out rep;
  CHECK(dh_check_assumption(sys.p, 1.0, 4, &rep.s) == DH_OK);
  std::string body(rep.s);
  CHECK(body.find("\"ok\":true") != std::string::npos);
  CHECK(body.find("\"tail\"") != std::string::npos);

  Out pt;
  CHECK(dh_sample_point(sys.p, 11, -1, &pt.s) == DH_OK);
  std::string addr(pt.s);
  CHECK(addr.find("\"eta_real\"") != std::string::npos);
  CHECK(addr.find("\"w\"") != std::string::npos);
}

TEST_CASE("composite runner grid and verify") {
  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":1}");
  Out grid;
  CHECK(dh_run(sys.p,
               "{\"cmd\":\"grid\",\"level\":1,\"m\":4,\"t\":0.4,"
               "\"x\":{\"eta_real\":0.7,\"w\":[1]}}",
               &grid.s) == DH_OK);
  std::string csv(grid.s);
  CHECK(csv.rfind("# ", 0) == 0);
  CHECK(csv.find("t,cell,theta,value") != std::string::npos);
  // 8 cells x 4 nodes of data lines
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 33);

  Out bad;
  CHECK(dh_run(sys.p, "{\"cmd\":\"nope\"}", &bad.s) == DH_CONFIG);
  CHECK(dh_run(sys.p, "{}", &bad.s) == DH_CONFIG);

  Out ver;
  CHECK(dh_run(sys.p,
               "{\"cmd\":\"verify\",\"suite\":\"symmetry\",\"level\":1,"
               "\"m\":16,\"samples\":20,\"t\":0.4}",
               &ver.s) == DH_OK);
  std::string report(ver.s);
  CHECK(report.find("\"suite\":\"symmetry\"") != std::string::npos);
  CHECK(report.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("composite runner solve round trip") {
  Sys sys("{\"j_const\":2,\"n_const\":2,\"depth\":1}");
  std::string u0 =
      "# {\\\"schema\\\":\\\"diamond-grid-v1\\\",\\\"j\\\":[2],\\\"n\\\":[2],"
      "\\\"level\\\":0,\\\"m\\\":2}\\n"
      "cell,node,theta,value\\n"
      "0,0,1.5707963267948966,1.0\\n"
      "0,1,4.71238898038469,3.0\\n";
  std::string req = "{\"cmd\":\"solve\",\"t\":0.2,\"u0_csv\":\"" + u0 + "\"}";
  Out evolved;
  CHECK(dh_run(sys.p, req.c_str(), &evolved.s) == DH_OK);
  std::string out(evolved.s);
  CHECK(out.find("diamond-grid-v1") != std::string::npos);
  CHECK(out.find("cell,node,theta,value") != std::string::npos);

  // pointwise evaluation instead of a full grid
  std::string preq =
      "{\"cmd\":\"solve\",\"t\":0.2,\"u0_csv\":\"" + u0 +
      "\",\"points\":[{\"eta_real\":0.5},{\"eta_real\":3.6}]}";
  Out at;
  CHECK(dh_run(sys.p, preq.c_str(), &at.s) == DH_OK);
  std::string pj(at.s);
  CHECK(pj.find("\"values\"") != std::string::npos);
}

TEST_CASE("null argument handling") {
  CHECK(dh_system_create("{\"j_const\":2,\"n_const\":2,\"depth\":1}", nullptr) ==
        DH_VALIDATION);
  dh_system_destroy(nullptr);
  dh_string_free(nullptr);
  CHECK(dh_run(nullptr, "{}", nullptr) == DH_VALIDATION);
  double v;
  CHECK(dh_uniform_bound(nullptr, 1, 1.0, &v) == DH_VALIDATION);
}
