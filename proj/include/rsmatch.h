/*
 * rsmatch: single-pass streaming matching toolkit, C interface.
 *
 * All functions return a status code (RSM_OK on success) and report results
 * through out-parameters. Objects are opaque handles freed with the matching
 * rsm_*_free function. Strings returned through char** out-parameters are
 * owned by the caller and must be released with rsm_string_free.
 *
 * Structured inputs (parse options, generator specs, run/bench configs) are
 * passed as JSON text; exact-threshold numbers (epsilon, lambda) are JSON
 * strings like "0.05" or "1/20" so that no precision is lost crossing the
 * boundary. Pass NULL for an options argument to get defaults.
 */
#ifndef RSMATCH_H
#define RSMATCH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RSM_API __declspec(dllexport)
#else
#define RSM_API __attribute__((visibility("default")))
#endif

enum rsm_status {
  RSM_OK = 0,
  RSM_ERR_CONFIG = 1,       /* bad flag/config/parameter values */
  RSM_ERR_PARSE = 2,        /* malformed edge list or dump text */
  RSM_ERR_INVALID = 3,      /* graph invariant violations */
  RSM_ERR_PRECONDITION = 4, /* operation precondition violated */
  RSM_ERR_LIMIT = 5,        /* space budget or size cap exceeded */
  RSM_ERR_IO = 6,
  RSM_ERR_INTERNAL = 7,
  RSM_ERR_TRIAL_FAILED = 8  /* a bench trial failed; partial report written */
};

typedef struct rsm_graph rsm_graph;

RSM_API const char* rsm_version(void);
RSM_API const char* rsm_status_name(int status);
/* Thread-local message for the most recent failure; empty if none. */
RSM_API const char* rsm_last_error(void);

/*
 * Edge-list text: optional "n m" header line, then "u v" lines, '#' comments.
 * opts_json: {"strict": bool, "header": "auto"|"yes"|"no"}.
 */
RSM_API int rsm_graph_from_text(const char* text, const char* opts_json, rsm_graph** out);
RSM_API int rsm_graph_from_file(const char* path, const char* opts_json, rsm_graph** out);

/*
 * spec_json: {"kind": "bipartite-planted"|"general-planted"|"erdos-renyi"|
 *             "path"|"cycle"|"clique", "n": int, "seed": int,
 *             and at most one of "avg_degree": num | "edge_prob": num |
 *             "edges": int}.
 */
RSM_API int rsm_graph_generate(const char* spec_json, rsm_graph** out);

RSM_API int rsm_graph_to_text(const rsm_graph* g, char** out_text);
RSM_API int rsm_graph_write_file(const rsm_graph* g, const char* path);
RSM_API int64_t rsm_graph_vertex_count(const rsm_graph* g);
RSM_API int64_t rsm_graph_edge_count(const rsm_graph* g);
/* JSON report {"valid": bool, "violations": [string, ...]}. */
RSM_API int rsm_graph_validate(const rsm_graph* g, char** out_json);
/* Exact maximum matching size; matcher is "auto", "bipartite", "blossom" or "brute". */
RSM_API int rsm_mu_exact(const rsm_graph* g, const char* matcher, int64_t* out_mu);
RSM_API void rsm_graph_free(rsm_graph* g);

/*
 * One full streaming run over the graph.
 * cfg_json: {"epsilon": "0.3", "order": "random"|"as-given", "seed": int,
 *            "matcher": str, "beta": int, "lambda": str, "alpha": int,
 *            "gamma": int, "fallback_cap": int, "x_policy": "fail"|"grow",
 *            "checks": bool, "emit_matching": bool, "emit_h_dump": bool}.
 * Writes a JSON run report; emit_h_dump adds an "h_dump" field holding the
 * frozen subgraph in the dump format rsm_verify_edcs_dump reads.
 */
RSM_API int rsm_run(const rsm_graph* g, const char* cfg_json, char** out_json);

/*
 * Multi-trial experiment with per-trial stream orders and the greedy
 * baseline. cfg_json adds {"trials": int, "jobs": int, "format": "json"|"csv",
 * "verify_edcs": bool, "potential_trace": bool, "concentration": bool,
 * "concentration_trials": int, plus generator/input echo fields}.
 * out_text is JSON or CSV per "format". When one trial fails, the completed
 * prefix is still written with the failing seed recorded and the call
 * returns RSM_ERR_TRIAL_FAILED.
 */
RSM_API int rsm_bench(const rsm_graph* g, const char* cfg_json, char** out_text);

/*
 * Late-stream matching concentration check.
 * cfg_json: {"epsilon": "0.3", "trials": int, "seed": int}.
 * Writes {"pass_fraction": num, "mu": int, "mu_below_threshold": bool, ...}.
 */
RSM_API int rsm_concentration(const rsm_graph* g, const char* cfg_json, char** out_json);

/*
 * Offline verification of a subgraph dump ("u v deg(u) deg(v)" lines plus a
 * "moves=K phi2x=P" trailer) against the graph.
 * cfg_json: {"beta": int, "lambda": "0.05"}.
 * The JSON report lists degree mismatches, non-subgraph edges, potential
 * mismatch and P1/P2 violations. "ok" certifies a consistent subgraph dump
 * with bounded edge-degree beta (P1); "is_edcs" additionally requires that
 * no non-H edge of the graph is underfull (P2).
 */
RSM_API int rsm_verify_edcs_dump(const rsm_graph* g, const char* dump_text, const char* cfg_json,
                                 char** out_json);

/* Verifies an edge-list matching against the graph; report has "ok". */
RSM_API int rsm_verify_matching(const rsm_graph* g, const char* matching_text, char** out_json);

RSM_API void rsm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* RSMATCH_H */
