/* cornerlab C interface.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns a cl_status; on failure the
 * message is available from cl_last_error() on the same thread. Strings
 * returned through char** out-parameters are released with cl_string_free.
 */
#ifndef CORNERLAB_H
#define CORNERLAB_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CORNERLAB_BUILDING)
#    define CL_API __declspec(dllexport)
#  else
#    define CL_API __declspec(dllimport)
#  endif
#else
#  define CL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cl_status {
  CL_OK = 0,
  CL_CHECK_FAILED = 1,   /* a verified conclusion failed under its hypothesis */
  CL_INPUT_ERROR = 2,    /* violated precondition or bad argument */
  CL_PARSE_ERROR = 3,    /* malformed set file; see cl_last_error_line */
  CL_INTERNAL_ERROR = 4
} cl_status;

typedef struct cl_gridset cl_gridset; /* subset of Z_N x Z_N */
typedef struct cl_lineset cl_lineset; /* subset of Z_N */

CL_API const char* cl_version(void);
CL_API const char* cl_last_error(void);
/* 1-based line of the last parse error on this thread, 0 otherwise. */
CL_API long long cl_last_error_line(void);
CL_API void cl_string_free(char* s);
/* Caps worker threads; values below 1 mean one thread. */
CL_API void cl_set_thread_cap(int threads);

/* xy holds count (x, y) pairs, 0-based. */
CL_API cl_status cl_gridset_create(long long n, const long long* xy, size_t count, cl_gridset** out);
CL_API cl_status cl_gridset_load(const char* path, cl_gridset** out);
CL_API cl_status cl_gridset_save(const cl_gridset* a, const char* path);
CL_API cl_status cl_gridset_info(const cl_gridset* a, long long* modulus, size_t* size);
/* Writes min(capacity, size) pairs in lexicographic order. */
CL_API cl_status cl_gridset_points(const cl_gridset* a, long long* xy, size_t capacity);
CL_API void cl_gridset_free(cl_gridset* a);

CL_API cl_status cl_lineset_create(long long n, const long long* members, size_t count, cl_lineset** out);
CL_API cl_status cl_lineset_load(const char* path, cl_lineset** out);
CL_API cl_status cl_lineset_save(const cl_lineset* a, const char* path);
CL_API cl_status cl_lineset_info(const cl_lineset* a, long long* modulus, size_t* size);
CL_API cl_status cl_lineset_members(const cl_lineset* a, long long* members, size_t capacity);
CL_API void cl_lineset_free(cl_lineset* a);

/* Corners (x, y), (x + d, y), (x, y + d). witness receives {x, y, d}. */
CL_API cl_status cl_count_corners(const cl_gridset* a, int cyclic, long long* count, long long witness[3],
                                  int* has_witness);
CL_API cl_status cl_behrend(long long k, cl_lineset** out, char** report_json);
/* rule: 0 translation, 1 diagonal. */
CL_API cl_status cl_embed(const cl_lineset* a, long long n, int rule, cl_gridset** out);

/* JSON reports. */
CL_API cl_status cl_uniformity_grid_json(const cl_gridset* a, char** json);
CL_API cl_status cl_uniformity_line_json(const cl_lineset* a, char** json);
/* CSV "r1,r2,re,im" of the transform of the balanced function. */
CL_API cl_status cl_balanced_spectrum_csv(const cl_gridset* a, char** csv);
CL_API cl_status cl_spectrum_json(const cl_gridset* a, char** json);
/* profile: "toy" or "paper". alpha1 <= 0 keeps the profile default. */
CL_API cl_status cl_increment_json(const cl_gridset* a, double alpha, const char* profile, double alpha1,
                                   char** json);
CL_API cl_status cl_partition_ap_json(long long n, long long r1, long long r2, long long s, char** json);
/* s <= 0 uses the default scale; max_cells <= 0 disables the cap. */
CL_API cl_status cl_partition_refine_json(const cl_gridset* a, long long r1, long long r2, long long s,
                                          long long max_cells, char** json);
CL_API cl_status cl_energy_run_json(const cl_gridset* w, double eps, double k, double rho, const char* profile,
                                    int max_iters, char** json, char** trace_csv);
CL_API cl_status cl_hunt_json(const cl_gridset* a, const char* profile, int max_steps, char** json,
                              char** trace_csv);

/* One JSON object per line and check. Returns CL_CHECK_FAILED when some
 * conclusion failed while its hypothesis held. only may be NULL. */
CL_API cl_status cl_verify_jsonl(unsigned long long seed, int quick, const char* only, char** jsonl);
/* Newline-separated check names. */
CL_API cl_status cl_verify_manifest(char** names);

#ifdef __cplusplus
}
#endif

#endif /* CORNERLAB_H */
