/* Copyright 2026 The autodich Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to the autodich library.
 *
 * Every fallible call returns an adich_status; on failure the message is
 * available from adich_last_error() on the same thread until the next call.
 * Strings returned through char** are NUL-terminated, owned by the caller
 * and released with adich_string_free(). Structured results are JSON
 * documents carrying "schema": 1. Natural numbers cross the boundary as
 * decimal strings on input; in JSON they are numbers when they fit in 64
 * bits and decimal strings otherwise.
 */

#ifndef AUTODICH_AUTODICH_H_
#define AUTODICH_AUTODICH_H_

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32 || defined __CYGWIN__
#  ifdef ADICH_BUILDING_LIBRARY
#    define ADICH_API __declspec(dllexport)
#  else
#    define ADICH_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define ADICH_API __attribute__((visibility("default")))
#else
#  define ADICH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adich_status {
  ADICH_OK = 0,
  ADICH_ERR_INVALID_ARGUMENT = 1,
  ADICH_ERR_DOMAIN = 2,
  ADICH_ERR_LIMIT = 3,
  ADICH_ERR_PARSE = 4,
  ADICH_ERR_IO = 5,
  ADICH_ERR_INTERNAL = 6
} adich_status;

typedef enum adich_verdict {
  ADICH_PRESBURGER = 0,
  ADICH_KN_INTERDEFINABLE = 1,
  ADICH_DEFINES_VK = 2
} adich_verdict;

/* Pass as `state` to pick the default state (see adich_f). */
#define ADICH_DEFAULT_STATE UINT32_MAX
/* Pass as `digit` to pick the default distinguished digit. */
#define ADICH_DEFAULT_DIGIT (-1)
/* Pass as `R` to adich_f for the stable value F = F_M. */
#define ADICH_STABLE (-1)

typedef struct adich_automaton adich_automaton;

ADICH_API const char* adich_version(void);
ADICH_API const char* adich_status_name(adich_status status);

ADICH_API const char* adich_last_error(void);
/* 1-based position of the last ADICH_ERR_PARSE; 0 otherwise. */
ADICH_API size_t adich_last_error_line(void);
ADICH_API size_t adich_last_error_column(void);

ADICH_API void adich_string_free(char* s);

/* --- automata ------------------------------------------------------------ */

ADICH_API adich_status adich_automaton_parse(const char* text, adich_automaton** out);
ADICH_API adich_status adich_automaton_read_file(const char* path, adich_automaton** out);
ADICH_API adich_status adich_automaton_write(const adich_automaton* a, char** out);
ADICH_API adich_status adich_automaton_clone(const adich_automaton* a, adich_automaton** out);
ADICH_API void adich_automaton_free(adich_automaton* a);

ADICH_API int adich_automaton_radix(const adich_automaton* a);
ADICH_API int adich_automaton_tracks(const adich_automaton* a);
ADICH_API size_t adich_automaton_num_states(const adich_automaton* a);
ADICH_API int adich_automaton_is_deterministic(const adich_automaton* a);

ADICH_API adich_status adich_automaton_minimize(const adich_automaton* a, adich_automaton** out);
/* Same set over radix k^i (one-track automata only). */
ADICH_API adich_status adich_automaton_base_power(const adich_automaton* a, int i, adich_automaton** out);

/* Structural sparseness of the accepted language. */
ADICH_API adich_status adich_is_sparse(const adich_automaton* a, int* out);
/* Components of the automaton as given, in topological order. */
ADICH_API adich_status adich_sccs(const adich_automaton* a, char** json);

/* --- sets X = [L]_k (one-track automata) --------------------------------- */

ADICH_API adich_status adich_member(const adich_automaton* x, const char* n, int* out);
/* JSON array of X ∩ [0, upto]; at most `limit` entries (0: no limit). */
ADICH_API adich_status adich_enumerate(const adich_automaton* x, uint64_t upto, size_t limit, char** json);
ADICH_API adich_status adich_periodicity(const adich_automaton* x, char** json);

ADICH_API adich_status adich_classify(const adich_automaton* x, int bound, int all_states, adich_verdict* verdict,
                                      int* bound_limited, char** json);
ADICH_API adich_status adich_decompose(const adich_automaton* x, int bound, char** json);

/* F_R(n) for the cycle language at `state` with distinguished digit
 * `digit`. The default state is the only initial state; R = ADICH_STABLE
 * gives F. */
ADICH_API adich_status adich_f(const adich_automaton* a, uint32_t state, int digit, const char* n, int64_t R,
                               char** json);
/* V_{k,a}(n) as a decimal string. */
ADICH_API adich_status adich_vka(const char* n, int k, int a, char** out);

/* --- logic ----------------------------------------------------------------- */

/* Truth of a sentence in s-expression syntax; set names[i] denotes sets[i].
 * radix 0 takes the radix of the sets. */
ADICH_API adich_status adich_decide(const char* formula, const char* const* names,
                                    const adich_automaton* const* sets, size_t count, int radix, int* value,
                                    char** json);

/* --- acceptance suite ------------------------------------------------------ */

typedef void (*adich_criterion_callback)(int id, const char* name, int pass, double seconds, double limit,
                                         const char* detail, void* user);

/* Runs the criteria listed in ids (all when count is 0). */
ADICH_API adich_status adich_acceptance(uint64_t seed, const int* ids, size_t count, adich_criterion_callback cb,
                                        void* user, int* all_passed, char** json);

#ifdef __cplusplus
}
#endif

#endif /* AUTODICH_AUTODICH_H_ */
