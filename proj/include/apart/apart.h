/*
 * Copyright 2026 The apart authors
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

/*
 * C interface to the apartness library.  Systems live behind an opaque
 * handle; results come back as malloc'd strings released with
 * apart_string_free.  Every function returns a status; on failure,
 * apart_last_error() describes what went wrong (per thread).
 */

#ifndef APART_APART_H_
#define APART_APART_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef enum apart_status {
  APART_OK = 0,
  APART_NOT_APART = 1,     /* the queried pair is behaviourally equivalent */
  APART_INVALID_PROOF = 2, /* the proof is malformed or does not check */
  APART_ERR_USAGE = 64,    /* bad arguments (unknown state, null pointer) */
  APART_ERR_INPUT = 65,    /* unreadable system: parse, shape, or missing behaviour */
  APART_ERR_INTERNAL = 70,
} apart_status;

typedef enum apart_style {
  APART_STYLE_COVERING = 0, /* assumptions scoped to a one-step covering */
  APART_STYLE_BASIC = 1,    /* assumptions range over all states */
} apart_style;

typedef enum apart_format {
  APART_FORMAT_TEXT = 0,
  APART_FORMAT_JSON = 1,
} apart_format;

typedef struct apart_system apart_system;

/* Parse a system description; on APART_OK, *out owns the handle. */
apart_status apart_system_parse(const char* text, apart_system** out);
void apart_system_free(apart_system* sys);
void apart_string_free(char* s);

/* Message for the most recent failing call on the calling thread. */
const char* apart_last_error(void);

/* Canonical text form and its hash (16 hex digits). */
apart_status apart_system_print(const apart_system* sys, char** out);
apart_status apart_system_hash(const apart_system* sys, char** out);

/* 1 when some states have no declared behaviour, else 0. */
int apart_system_is_fragment(const apart_system* sys);

/* Behavioural classes and all apart pairs, as text. */
apart_status apart_relation_text(const apart_system* sys, char** out);

/* APART_OK and "apart", or APART_NOT_APART and the shared class. */
apart_status apart_check_pair(const apart_system* sys, const char* x, const char* y, char** out);

/* Derive a proof that x and y are apart.  APART_NOT_APART reports the
 * class refuting it. */
apart_status apart_prove(const apart_system* sys, const char* x, const char* y, apart_style style,
                         apart_format format, char** out);

/* Re-check a serialized proof against this system.  APART_OK and "valid",
 * or APART_INVALID_PROOF and a diagnosis. */
apart_status apart_verify(const apart_system* sys, const char* proof_json, char** out);

/* Pairs separated per refinement round.  max_levels < 0 runs until stable. */
apart_status apart_tower_text(const apart_system* sys, int max_levels, char** out);

/* Compare the weight-coupling fixpoint with behavioural apartness (the
 * functor must be Ds Id).  APART_OK and "agree", or APART_NOT_APART and the
 * difference. */
apart_status apart_cobisim_text(const apart_system* sys, char** out);

#ifdef __cplusplus
}
#endif

#endif /* APART_APART_H_ */
