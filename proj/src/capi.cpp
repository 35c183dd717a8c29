// Copyright 2026 The entcert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entcert.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "entcert/driver.hpp"

struct entcert_channel {
  entcert::NamedChannel named;
};

struct entcert_state {
  entcert::StateSpec spec;
};

struct entcert_report {
  nlohmann::json body;
};

namespace {

thread_local std::string g_last_error;

entcert_status fail(entcert_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs `fn` and maps the library's exception hierarchy onto status codes.
template <typename Fn>
entcert_status guarded(Fn&& fn) {
  try {
    fn();
    return ENTCERT_OK;
  } catch (const entcert::ParseError& e) {
    return fail(ENTCERT_ERR_PARSE, e.what());
  } catch (const entcert::NotCorrectableError& e) {
    return fail(ENTCERT_NOT_CORRECTABLE, e.what());
  } catch (const entcert::DimensionError& e) {
    return fail(ENTCERT_ERR_DIMENSION, e.what());
  } catch (const entcert::InvariantError& e) {
    return fail(ENTCERT_ERR_INVARIANT, e.what());
  } catch (const std::exception& e) {
    return fail(ENTCERT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ENTCERT_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

entcert::DriverOptions to_driver_options(const entcert_options* opts) {
  entcert::DriverOptions d;
  if (!opts) return d;
  d.seed = opts->seed;
  d.restarts = opts->restarts;
  d.max_iter = opts->max_iter;
  d.tol = opts->tol;
  d.skip_eof = opts->skip_eof != 0;
  d.include_timing = opts->include_timing != 0;
  return d;
}

entcert_status require(bool ok, const char* what) {
  return ok ? ENTCERT_OK : fail(ENTCERT_ERR_INTERNAL, what);
}

}  // namespace

extern "C" {

void entcert_options_init(entcert_options* opts) {
  if (!opts) return;
  entcert::DriverOptions d;
  opts->seed = d.seed;
  opts->restarts = d.restarts;
  opts->max_iter = d.max_iter;
  opts->tol = d.tol;
  opts->skip_eof = 0;
  opts->include_timing = 0;
}

const char* entcert_version(void) { return entcert::kToolVersion; }

const char* entcert_last_error(void) { return g_last_error.c_str(); }

entcert_status entcert_channel_load_file(const char* path, entcert_channel** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new entcert_channel{entcert::load_channel_file(path)}; });
}

entcert_status entcert_channel_parse_json(const char* text, entcert_channel** out) {
  if (auto s = require(text && out, "null argument")) return s;
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw entcert::ParseError(e.what());
    }
    *out = new entcert_channel{entcert::channel_from_json(j)};
  });
}

entcert_status entcert_channel_builtin(const char* family, double param,
                                       entcert_channel** out) {
  if (auto s = require(family && out, "null argument")) return s;
  return guarded([&] {
    *out = new entcert_channel{
        {entcert::builtin_channel(family, param), std::string(family)}};
  });
}

entcert_status entcert_channel_to_json(const entcert_channel* channel, char** out) {
  if (auto s = require(channel && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(
        entcert::channel_to_json(channel->named.channel, channel->named.name).dump(2));
    if (!*out) throw std::bad_alloc();
  });
}

entcert_status entcert_channel_save_file(const entcert_channel* channel, const char* path) {
  if (auto s = require(channel && path, "null argument")) return s;
  return guarded([&] {
    entcert::save_channel_file(channel->named.channel, channel->named.name, path);
  });
}

void entcert_channel_free(entcert_channel* channel) { delete channel; }

entcert_status entcert_state_load_file(const char* path, entcert_state** out) {
  if (auto s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new entcert_state{entcert::load_state_file(path)}; });
}

entcert_status entcert_state_builtin(const char* name, entcert_state** out) {
  if (auto s = require(name && out, "null argument")) return s;
  return guarded([&] { *out = new entcert_state{entcert::builtin_state(name)}; });
}

void entcert_state_free(entcert_state* state) { delete state; }

entcert_status entcert_analyze(const entcert_channel* channel, const entcert_state* state,
                               const entcert_options* opts, entcert_report** out) {
  if (auto s = require(channel && state && out, "null argument")) return s;
  return guarded([&] {
    *out = new entcert_report{
        entcert::run_analyze(channel->named, state->spec, to_driver_options(opts))};
  });
}

entcert_status entcert_certify(const entcert_channel* channel, const entcert_state* state,
                               const entcert_options* opts, int* correctable,
                               entcert_report** out) {
  if (auto s = require(channel && state && out, "null argument")) return s;
  return guarded([&] {
    bool flag = false;
    *out = new entcert_report{
        entcert::run_certify(channel->named, state->spec, to_driver_options(opts), &flag)};
    if (correctable) *correctable = flag ? 1 : 0;
  });
}

entcert_status entcert_recover(const entcert_channel* channel, const entcert_state* state,
                               const entcert_options* opts, entcert_channel** recovery,
                               entcert_report** out) {
  if (auto s = require(channel && state && out, "null argument")) return s;
  return guarded([&] {
    entcert::KrausChannel rec;
    *out = new entcert_report{
        entcert::run_recover(channel->named, state->spec, to_driver_options(opts), &rec)};
    if (recovery)
      *recovery = new entcert_channel{{std::move(rec), std::string("recovery")}};
  });
}

entcert_status entcert_sweep(const char* family, const double* params, size_t num_params,
                             const entcert_state* state, const entcert_options* opts,
                             entcert_report** out) {
  if (auto s = require(family && state && out && (params || num_params == 0),
                       "null argument"))
    return s;
  return guarded([&] {
    std::vector<double> p(params, params + num_params);
    *out = new entcert_report{
        entcert::run_sweep(family, p, state->spec, to_driver_options(opts))};
  });
}

entcert_status entcert_tomo(const entcert_state* state, const entcert_options* opts,
                            entcert_report** out) {
  if (auto s = require(state && out, "null argument")) return s;
  return guarded(
      [&] { *out = new entcert_report{entcert::run_tomo(state->spec, to_driver_options(opts))}; });
}

entcert_status entcert_report_to_json(const entcert_report* report, char** out) {
  if (auto s = require(report && out, "null argument")) return s;
  return guarded([&] {
    *out = dup_string(report->body.dump(2));
    if (!*out) throw std::bad_alloc();
  });
}

void entcert_report_free(entcert_report* report) { delete report; }

void entcert_string_free(char* s) { std::free(s); }

}  // extern "C"
