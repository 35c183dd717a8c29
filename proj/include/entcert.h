/* Copyright 2026 The entcert authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the entcert shared library: opaque handles, status codes,
 * JSON reports. Thread safety: handles are immutable after creation and may
 * be shared; the last-error string is thread local. */

#ifndef ENTCERT_H
#define ENTCERT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum entcert_status {
  ENTCERT_OK = 0,
  ENTCERT_NOT_CORRECTABLE = 1, /* recovery requested for an uncorrectable instance */
  ENTCERT_ERR_PARSE = 2,       /* unreadable or malformed input */
  ENTCERT_ERR_INVARIANT = 3,   /* well-formed input violating an invariant */
  ENTCERT_ERR_DIMENSION = 4,   /* shapes that do not fit together */
  ENTCERT_ERR_INTERNAL = 5
} entcert_status;

typedef struct entcert_channel entcert_channel;
typedef struct entcert_state entcert_state;
typedef struct entcert_report entcert_report;

typedef struct entcert_options {
  uint64_t seed;      /* drives all optimizer randomness */
  int restarts;       /* random restarts per minimization */
  int max_iter;       /* iteration cap per restart */
  double tol;         /* correctability tolerance, in bits */
  int skip_eof;       /* certify through the coherent-information gap only */
  int include_timing; /* add timing_ms to reports (breaks byte stability) */
} entcert_options;

/* Fill with the defaults (seed 0, 16 restarts, tol 1e-7). */
void entcert_options_init(entcert_options* opts);

const char* entcert_version(void);

/* Message of the most recent failure on this thread. */
const char* entcert_last_error(void);

/* --- channels ---------------------------------------------------------- */

entcert_status entcert_channel_load_file(const char* path, entcert_channel** out);
entcert_status entcert_channel_parse_json(const char* text, entcert_channel** out);
/* Built-in families: dephasing, bitflip, depolarizing, amplitude-damping. */
entcert_status entcert_channel_builtin(const char* family, double param,
                                       entcert_channel** out);
entcert_status entcert_channel_to_json(const entcert_channel* channel, char** out);
entcert_status entcert_channel_save_file(const entcert_channel* channel, const char* path);
void entcert_channel_free(entcert_channel* channel);

/* --- states ------------------------------------------------------------ */

entcert_status entcert_state_load_file(const char* path, entcert_state** out);
/* Built-in inputs: bell, repetition3. */
entcert_status entcert_state_builtin(const char* name, entcert_state** out);
void entcert_state_free(entcert_state* state);

/* --- analyses ----------------------------------------------------------
 * Each produces a JSON report (see entcert_report_to_json). Reports are
 * byte-stable for fixed options unless include_timing is set. */

entcert_status entcert_analyze(const entcert_channel* channel, const entcert_state* state,
                               const entcert_options* opts, entcert_report** out);

/* `correctable` (may be NULL) receives the verdict. */
entcert_status entcert_certify(const entcert_channel* channel, const entcert_state* state,
                               const entcert_options* opts, int* correctable,
                               entcert_report** out);

/* Synthesizes and verifies a recovery map; fails with
 * ENTCERT_NOT_CORRECTABLE when none exists. `recovery` (may be NULL)
 * receives the map as a channel handle. */
entcert_status entcert_recover(const entcert_channel* channel, const entcert_state* state,
                               const entcert_options* opts, entcert_channel** recovery,
                               entcert_report** out);

/* One row per parameter of the named built-in family. */
entcert_status entcert_sweep(const char* family, const double* params, size_t num_params,
                             const entcert_state* state, const entcert_options* opts,
                             entcert_report** out);

entcert_status entcert_tomo(const entcert_state* state, const entcert_options* opts,
                            entcert_report** out);

/* --- reports ------------------------------------------------------------ */

entcert_status entcert_report_to_json(const entcert_report* report, char** out);
void entcert_report_free(entcert_report* report);

/* Frees strings returned through char** parameters. */
void entcert_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ENTCERT_H */
