/*
 * Copyright 2026 The adiabat Authors
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

#ifndef ADIABAT_ADIABAT_H
#define ADIABAT_ADIABAT_H

/*
 * C interface to the adiabat library. Objects are opaque handles owned by the
 * caller and released with the matching *_free function. Every fallible call
 * returns an adiabat_status; on failure adiabat_last_error() describes the
 * problem (the message is per-thread and valid until the next call on that
 * thread).
 *
 * Status values double as the CLI's process exit codes.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ADIABAT_BUILDING)
#    define ADIABAT_API __declspec(dllexport)
#  else
#    define ADIABAT_API __declspec(dllimport)
#  endif
#else
#  define ADIABAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adiabat_status {
  ADIABAT_OK = 0,
  ADIABAT_ERR_USAGE = 1,        /* config, argument or I/O problem */
  ADIABAT_ERR_NUMERICAL = 2,    /* degeneracy, unitarity or gauge failure */
  ADIABAT_ERR_VERIFICATION = 3  /* an identity residual exceeded its tolerance */
} adiabat_status;

typedef enum adiabat_command {
  ADIABAT_SIMULATE = 0,
  ADIABAT_VERIFY = 1,
  ADIABAT_SWEEP = 2
} adiabat_command;

typedef struct adiabat_config adiabat_config;
typedef struct adiabat_result adiabat_result;

ADIABAT_API const char* adiabat_version(void);
ADIABAT_API const char* adiabat_last_error(void);

/* Relative paths inside the config resolve against the config file's directory. */
ADIABAT_API adiabat_status adiabat_config_load(const char* path, adiabat_config** out);
/* base_dir may be NULL (paths resolve against the working directory). */
ADIABAT_API adiabat_status adiabat_config_parse(const char* text, const char* base_dir,
                                                adiabat_config** out);
/* "section.key=value"; the value uses config syntax, bare words become strings. */
ADIABAT_API adiabat_status adiabat_config_override(adiabat_config* cfg, const char* assignment);
ADIABAT_API void adiabat_config_free(adiabat_config* cfg);

/*
 * Runs a command and writes the files named in the [output] section. On
 * ADIABAT_OK and ADIABAT_ERR_VERIFICATION *out receives a result; on other
 * statuses *out is set to NULL.
 */
ADIABAT_API adiabat_status adiabat_run(const adiabat_config* cfg, adiabat_command command,
                                       adiabat_result** out);

/* `key = value` lines; owned by the result. */
ADIABAT_API const char* adiabat_result_summary(const adiabat_result* result);
/* CSV text, empty for commands that produce none; owned by the result. */
ADIABAT_API const char* adiabat_result_csv(const adiabat_result* result);
ADIABAT_API adiabat_status adiabat_result_number(const adiabat_result* result, const char* key,
                                                 double* value);
ADIABAT_API size_t adiabat_result_failure_count(const adiabat_result* result);
ADIABAT_API void adiabat_result_free(adiabat_result* result);

/* Closed-form squared dual fidelity 1 - sin^2(theta) sin^2(omega t / 2). */
ADIABAT_API adiabat_status adiabat_spinhalf_fidelity_law(double omega0, double omega, double theta,
                                                         double t, double* value);

#ifdef __cplusplus
}
#endif

#endif /* ADIABAT_ADIABAT_H */
