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

// entcert command line front end. Talks to the core exclusively through
// the C API in entcert.h; output is the library's JSON report or a TSV
// flattening of it.
//
// Exit codes: 0 success (and "correctable" for certify), 1 not correctable,
// 2 parse/usage error, 3 invariant or dimension error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entcert.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNotCorrectable = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;

int exit_code_of(entcert_status status) {
  switch (status) {
    case ENTCERT_OK:
      return kExitOk;
    case ENTCERT_NOT_CORRECTABLE:
      return kExitNotCorrectable;
    case ENTCERT_ERR_PARSE:
      return kExitParse;
    case ENTCERT_ERR_INVARIANT:
    case ENTCERT_ERR_DIMENSION:
    case ENTCERT_ERR_INTERNAL:
      return kExitInvariant;
  }
  return kExitInvariant;
}

[[noreturn]] void die(entcert_status status) {
  std::cerr << "error: " << entcert_last_error() << "\n";
  std::exit(exit_code_of(status));
}

struct ChannelDeleter {
  void operator()(entcert_channel* c) const { entcert_channel_free(c); }
};
struct StateDeleter {
  void operator()(entcert_state* s) const { entcert_state_free(s); }
};
struct ReportDeleter {
  void operator()(entcert_report* r) const { entcert_report_free(r); }
};
using ChannelPtr = std::unique_ptr<entcert_channel, ChannelDeleter>;
using StatePtr = std::unique_ptr<entcert_state, StateDeleter>;
using ReportPtr = std::unique_ptr<entcert_report, ReportDeleter>;

struct CommonOpts {
  std::string channel_path;
  std::string example;  // family:param
  std::string state_spec;
  std::string format = "json";
  entcert_options opts{};
};

void add_tuning_flags(CLI::App* cmd, CommonOpts* c) {
  cmd->add_option("--seed", c->opts.seed, "seed for all optimizer randomness");
  cmd->add_option("--restarts", c->opts.restarts, "optimizer restarts");
  cmd->add_option("--max-iter", c->opts.max_iter, "optimizer iteration cap");
  cmd->add_option("--tol", c->opts.tol, "correctability tolerance in bits");
  cmd->add_flag("--skip-eof", c->opts.skip_eof, "certify via coherent information only");
  cmd->add_flag("--timing", c->opts.include_timing, "include timing_ms in the report");
  cmd->add_option("--format", c->format, "output format")
      ->check(CLI::IsMember({"json", "tsv"}));
}

void add_channel_flags(CLI::App* cmd, CommonOpts* c) {
  auto* path = cmd->add_option("--channel", c->channel_path, "channel spec file");
  auto* ex = cmd->add_option("--example", c->example,
                             "built-in channel, e.g. depolarizing:1.0");
  path->excludes(ex);
}

ChannelPtr load_channel(const CommonOpts& c) {
  entcert_channel* ch = nullptr;
  entcert_status status;
  if (!c.example.empty()) {
    auto colon = c.example.rfind(':');
    if (colon == std::string::npos || colon + 1 == c.example.size()) {
      std::cerr << "error: --example expects FAMILY:PARAM\n";
      std::exit(kExitParse);
    }
    char* end = nullptr;
    const std::string param_str = c.example.substr(colon + 1);
    double param = std::strtod(param_str.c_str(), &end);
    if (!end || *end != '\0') {
      std::cerr << "error: bad parameter in --example '" << c.example << "'\n";
      std::exit(kExitParse);
    }
    status = entcert_channel_builtin(c.example.substr(0, colon).c_str(), param, &ch);
  } else if (!c.channel_path.empty()) {
    status = entcert_channel_load_file(c.channel_path.c_str(), &ch);
  } else {
    std::cerr << "error: either --channel or --example is required\n";
    std::exit(kExitParse);
  }
  if (status != ENTCERT_OK) die(status);
  return ChannelPtr(ch);
}

StatePtr load_state(const std::string& spec) {
  entcert_state* st = nullptr;
  entcert_status status;
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    status = entcert_state_builtin(spec.substr(prefix.size()).c_str(), &st);
  } else {
    status = entcert_state_load_file(spec.c_str(), &st);
  }
  if (status != ENTCERT_OK) die(status);
  return StatePtr(st);
}

json report_json(const entcert_report* report) {
  char* text = nullptr;
  if (auto status = entcert_report_to_json(report, &text); status != ENTCERT_OK) die(status);
  json j = json::parse(text);
  entcert_string_free(text);
  return j;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::string>* rows) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows->push_back(prefix + "\t" + j.dump());
  }
}

void print_report(const json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  // TSV: sweeps print a table, everything else key/value lines.
  if (report.contains("results") && report["results"].contains("rows")) {
    const auto& rows = report["results"]["rows"];
    const std::vector<std::string> cols = {"p",       "s_q",   "coherent_information",
                                           "eof",     "eps_e", "epsilon",
                                           "bound",   "fidelity", "method"};
    std::string header;
    for (const auto& c : cols) header += (header.empty() ? "" : "\t") + c;
    std::cout << header << "\n";
    for (const auto& row : rows) {
      std::string line;
      for (const auto& c : cols) {
        std::string cell = row.contains(c) ? row[c].dump() : "";
        if (!cell.empty() && cell.front() == '"') cell = row[c].get<std::string>();
        line += (line.empty() ? "" : "\t") + cell;
      }
      std::cout << line << "\n";
    }
    return;
  }
  std::vector<std::string> lines;
  if (report.contains("results")) flatten(report["results"], "", &lines);
  for (const auto& l : lines) std::cout << l << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement measures and perfect-error-correction certification"};
  app.require_subcommand(1);

  CommonOpts analyze_opts, certify_opts, recover_opts, sweep_opts, tomo_opts;
  entcert_options_init(&analyze_opts.opts);
  entcert_options_init(&certify_opts.opts);
  entcert_options_init(&recover_opts.opts);
  entcert_options_init(&sweep_opts.opts);
  entcert_options_init(&tomo_opts.opts);

  auto* analyze = app.add_subcommand(
      "analyze", "entropies, coherent information and entanglement of formation");
  add_channel_flags(analyze, &analyze_opts);
  analyze->add_option("--state", analyze_opts.state_spec, "state file or builtin:NAME")
      ->required();
  add_tuning_flags(analyze, &analyze_opts);

  auto* certify = app.add_subcommand(
      "certify", "decide perfect correctability (exit 0 correctable, 1 not)");
  add_channel_flags(certify, &certify_opts);
  certify->add_option("--state", certify_opts.state_spec, "state file or builtin:NAME")
      ->required();
  add_tuning_flags(certify, &certify_opts);

  auto* recover = app.add_subcommand("recover", "synthesize and verify a recovery map");
  add_channel_flags(recover, &recover_opts);
  recover->add_option("--state", recover_opts.state_spec, "state file or builtin:NAME")
      ->required();
  std::string out_path;
  recover->add_option("--out", out_path, "write the recovery as a channel spec file")
      ->required();
  add_tuning_flags(recover, &recover_opts);

  auto* sweep = app.add_subcommand("sweep", "tabulate a noise family across parameters");
  std::string family;
  double from = 0.0, to = 1.0, step = 0.1;
  std::string values;
  sweep->add_option("--family", family, "dephasing|bitflip|depolarizing|amplitude-damping")
      ->required();
  sweep->add_option("--from", from, "first parameter value");
  sweep->add_option("--to", to, "last parameter value");
  sweep->add_option("--step", step, "parameter increment");
  sweep->add_option("--values", values, "explicit comma-separated parameter list");
  sweep->add_option("--state", sweep_opts.state_spec, "state file or builtin:NAME");
  add_tuning_flags(sweep, &sweep_opts);

  auto* tomo = app.add_subcommand("tomo", "product-measurement tomography round trip");
  tomo->add_option("--state", tomo_opts.state_spec, "state file or builtin:NAME")->required();
  add_tuning_flags(tomo, &tomo_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParse;
  }

  entcert_report* raw_report = nullptr;
  entcert_status status = ENTCERT_OK;
  std::string format = "json";
  int exit_code = kExitOk;

  if (analyze->parsed()) {
    ChannelPtr ch = load_channel(analyze_opts);
    StatePtr st = load_state(analyze_opts.state_spec);
    status = entcert_analyze(ch.get(), st.get(), &analyze_opts.opts, &raw_report);
    format = analyze_opts.format;
  } else if (certify->parsed()) {
    ChannelPtr ch = load_channel(certify_opts);
    StatePtr st = load_state(certify_opts.state_spec);
    int correctable = 0;
    status = entcert_certify(ch.get(), st.get(), &certify_opts.opts, &correctable,
                             &raw_report);
    format = certify_opts.format;
    if (status == ENTCERT_OK && !correctable) exit_code = kExitNotCorrectable;
  } else if (recover->parsed()) {
    ChannelPtr ch = load_channel(recover_opts);
    StatePtr st = load_state(recover_opts.state_spec);
    entcert_channel* rec = nullptr;
    status = entcert_recover(ch.get(), st.get(), &recover_opts.opts, &rec, &raw_report);
    format = recover_opts.format;
    if (status == ENTCERT_OK) {
      ChannelPtr rec_owner(rec);
      if (auto s = entcert_channel_save_file(rec, out_path.c_str()); s != ENTCERT_OK)
        die(s);
    }
  } else if (sweep->parsed()) {
    std::vector<double> params;
    if (!values.empty()) {
      std::size_t pos = 0;
      while (pos <= values.size()) {
        auto comma = values.find(',', pos);
        std::string tok = values.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (!end || *end != '\0' || tok.empty()) {
          std::cerr << "error: bad entry '" << tok << "' in --values\n";
          return kExitParse;
        }
        params.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    } else {
      if (step <= 0) {
        std::cerr << "error: --step must be positive\n";
        return kExitParse;
      }
      for (double p = from; p <= to + 1e-12; p += step) params.push_back(std::min(p, to));
    }
    StatePtr st = load_state(sweep_opts.state_spec.empty() ? "builtin:bell"
                                                           : sweep_opts.state_spec);
    status = entcert_sweep(family.c_str(), params.data(), params.size(), st.get(),
                           &sweep_opts.opts, &raw_report);
    format = sweep_opts.format;
  } else if (tomo->parsed()) {
    StatePtr st = load_state(tomo_opts.state_spec);
    status = entcert_tomo(st.get(), &tomo_opts.opts, &raw_report);
    format = tomo_opts.format;
  }

  ReportPtr report(raw_report);
  if (status != ENTCERT_OK) die(status);
  print_report(report_json(report.get()), format);
  return exit_code;
}
