#ifndef DIAMOND_HEAT_H
#define DIAMOND_HEAT_H

#ifdef __cplusplus
extern "C" {
#endif

/* Shared-library surface: opaque system handle, JSON strings in, plain
   structs or JSON/CSV strings out.  Status values double as process exit
   codes for the bundled CLI. */
typedef enum {
  DH_OK = 0,
  DH_VALIDATION = 2, /* bad arguments or unsatisfiable evaluation request */
  DH_CONFIG = 3,     /* malformed JSON or configuration */
  DH_CAPACITY = 4,   /* request exceeds a built-in size budget */
  DH_INTERNAL = 5
} dh_status;

typedef struct dh_system dh_system;

typedef struct {
  double value_re;
  double value_im;
  double tail_bound;
  int levels_used;
  int bundle_level;
  int saturated;
} dh_kernel_result;

/* params_json: {"j":[...],"n":[...]} or {"j_const":J,"n_const":N,"depth":D} */
dh_status dh_system_create(const char* params_json, dh_system** out);
void dh_system_destroy(dh_system* sys);
int dh_system_depth(const dh_system* sys);

/* message for the most recent failing call on this thread */
const char* dh_last_error(void);

/* addresses: {"eta_num":1,"eta_den":6,"w":[2,1]} or {"eta_real":0.4,"w":[1]} */
dh_status dh_heat_kernel_level(dh_system* sys, int level, const char* x_json,
                               const char* y_json, double t, double tol,
                               dh_kernel_result* out);
dh_status dh_heat_kernel_limit(dh_system* sys, const char* x_json,
                               const char* y_json, double t, double tol,
                               int cap, dh_kernel_result* out);
dh_status dh_schrodinger_kernel(dh_system* sys, const char* x_json,
                                const char* y_json, double t, double eps,
                                double tol, int cap, dh_kernel_result* out);

dh_status dh_circle_kernel(double t, double theta1, double theta2, double tol,
                           double* out);
dh_status dh_dirichlet_kernel(double t, double length, double theta1,
                              double theta2, double tol, double* out);
dh_status dh_uniform_bound(dh_system* sys, int level, double t, double* out);
dh_status dh_hausdorff_dimension(long long j, long long n, double* out);

/* {"tail":[...],"strong_tail":[...],"ok":true} */
dh_status dh_check_assumption(dh_system* sys, double t, int horizon,
                              char** json_out);
/* uniformly sampled address with labels down to `depth` (depth < 0: full) */
dh_status dh_sample_point(dh_system* sys, unsigned long long seed, int depth,
                          char** json_out);

/* Composite runner.  request_json selects by "cmd":
     "grid"             -> CSV of p_t(x, node) over a node grid
     "solve"            -> CSV of the evolved field, or JSON values at points
     "schrodinger_grid" -> CSV with re/im/|psi|^2 columns over a node grid
     "verify"           -> JSON report for one named suite
   Responses echo the resolved configuration.  Free the string with
   dh_string_free. */
dh_status dh_run(dh_system* sys, const char* request_json, char** out);

void dh_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
