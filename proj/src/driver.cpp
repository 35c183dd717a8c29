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

#include "entcert/driver.hpp"

#include <chrono>
#include <cmath>

namespace entcert {

using nlohmann::json;

namespace {

OptimizerConfig optimizer_config(const DriverOptions& opts) {
  OptimizerConfig cfg;
  cfg.seed = opts.seed;
  cfg.restarts = opts.restarts;
  cfg.max_iter = opts.max_iter;
  return cfg;
}

json number_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

json measure_to_json(const MeasureResult& m) {
  return json{{"value", m.value},
              {"converged", m.converged},
              {"restarts_used", m.restarts_used},
              {"ensemble_cap", m.ensemble_cap}};
}

json certificate_to_json(const Certificate& c) {
  return json{{"s_q", c.s_q},
              {"coherent_info", c.coherent_info},
              {"eof_value", number_or_null(c.eof_value)},
              {"eof_converged", c.eof_converged},
              {"re_mutual_info", c.re_mutual_info},
              {"kl_residual", c.kl_residual},
              {"correctable", c.correctable},
              {"tolerance", c.tolerance}};
}

class ReportBuilder {
 public:
  ReportBuilder(const char* command, const DriverOptions& opts)
      : opts_(opts), start_(std::chrono::steady_clock::now()) {
    report_["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
    report_["command"] = command;
    report_["seed"] = opts.seed;
  }

  json& inputs() { return report_["inputs"]; }
  json& results() { return report_["results"]; }

  json finish() {
    if (opts_.include_timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start_)
                    .count();
      report_["timing_ms"] = ms;
    }
    return std::move(report_);
  }

 private:
  json report_;
  DriverOptions opts_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

PureState normalize_input(const StateSpec& spec) {
  const auto& shape = state_shape(spec);
  if (shape.size() == 2) {
    if (const auto* p = std::get_if<PureState>(&spec)) return *p;
    throw InvariantError(
        "analysis requires a pure joint input; a mixed two-subsystem state cannot be used"
        " (supply a single-subsystem state to purify instead)");
  }
  if (shape.size() == 1) {
    DensityMatrix rho = state_density(spec);
    std::string ref = fresh_label(shape, "R");
    PureState purified = purify(rho, ref);  // (target, ref)
    return permute_subsystems(purified, {ref, shape.labels[0]});
  }
  throw DimensionError("analysis input must have one or two subsystems, got " +
                       std::to_string(shape.size()));
}

json run_analyze(const NamedChannel& channel, const StateSpec& state,
                 const DriverOptions& opts) {
  ReportBuilder rb("analyze", opts);
  rb.inputs() = json{{"channel", channel_to_json(channel.channel, channel.name)},
                     {"state", state_to_json(state)}};

  PureState input = normalize_input(state);
  const std::string r_label = input.shape().labels[0];
  const std::string q_label = input.shape().labels[1];

  DensityMatrix original = projector(input);
  DensityMatrix out = apply_extended(channel.channel, original, q_label);

  const double s_q_out = vn_entropy(partial_trace(out, {q_label}));
  const double s_rq_out = vn_entropy(out);

  json& res = rb.results();
  res["s_q"] = vn_entropy(partial_trace(original, {q_label}));
  res["s_q_out"] = s_q_out;
  res["s_rq_out"] = s_rq_out;
  res["coherent_information"] = s_q_out - s_rq_out;
  res["re_mutual_information"] =
      mutual_information(re_output(channel.channel, input), {r_label});
  if (opts.skip_eof) {
    res["eof"] = nullptr;
  } else {
    res["eof"] = measure_to_json(eof_mixed(out, {r_label}, optimizer_config(opts)));
  }
  return rb.finish();
}

json run_certify(const NamedChannel& channel, const StateSpec& state, const DriverOptions& opts,
                 bool* correctable) {
  ReportBuilder rb("certify", opts);
  rb.inputs() = json{{"channel", channel_to_json(channel.channel, channel.name)},
                     {"state", state_to_json(state)}};

  PureState input = normalize_input(state);
  CertifyOptions copts;
  copts.compute_eof = !opts.skip_eof;
  copts.optimizer = optimizer_config(opts);
  Certificate cert = certify(channel.channel, input, opts.tol, copts);
  rb.results()["certificate"] = certificate_to_json(cert);
  if (correctable) *correctable = cert.correctable;
  return rb.finish();
}

json run_recover(const NamedChannel& channel, const StateSpec& state, const DriverOptions& opts,
                 KrausChannel* recovery) {
  ReportBuilder rb("recover", opts);
  rb.inputs() = json{{"channel", channel_to_json(channel.channel, channel.name)},
                     {"state", state_to_json(state)}};

  PureState input = normalize_input(state);
  CertifyOptions copts;
  copts.compute_eof = !opts.skip_eof;
  copts.optimizer = optimizer_config(opts);
  Certificate cert = certify(channel.channel, input, opts.tol, copts);
  rb.results()["certificate"] = certificate_to_json(cert);
  if (!cert.correctable)
    throw NotCorrectableError("coherent information gap " +
                              std::to_string(cert.s_q - cert.coherent_info) +
                              " exceeds tolerance " + std::to_string(opts.tol));

  RecoveryMap map = synthesize_recovery(channel.channel, input);
  double fidelity = verify_recovery(channel.channel, map, input);
  rb.results()["recovery"] = json{
      {"method", recovery_method_name(map.method)},
      {"fidelity", fidelity},
      {"channel", channel_to_json(map.channel, std::string("recovery"))},
  };
  if (recovery) *recovery = map.channel;
  return rb.finish();
}

json run_sweep(const std::string& family, const std::vector<double>& params,
               const StateSpec& state, const DriverOptions& opts) {
  ReportBuilder rb("sweep", opts);
  rb.inputs() =
      json{{"family", family}, {"params", params}, {"state", state_to_json(state)}};

  PureState input = normalize_input(state);
  const std::string r_label = input.shape().labels[0];
  const std::string q_label = input.shape().labels[1];
  DensityMatrix original = projector(input);
  OptimizerConfig cfg = optimizer_config(opts);

  json rows = json::array();
  for (double p : params) {
    NamedChannel ch{builtin_channel(family, p), family};
    DensityMatrix out = apply_extended(ch.channel, original, q_label);
    double s_q = vn_entropy(partial_trace(original, {q_label}));
    double info = vn_entropy(partial_trace(out, {q_label})) - vn_entropy(out);
    ApproxReport approx = approx_report(ch.channel, input, cfg);

    json row;
    row["p"] = p;
    row["s_q"] = s_q;
    row["coherent_information"] = info;
    row["epsilon"] = approx.epsilon;
    row["bound"] = approx.paper_bound;
    row["fidelity"] = approx.achieved_fidelity;
    row["method"] = recovery_method_name(approx.method);
    if (opts.skip_eof) {
      row["eof"] = nullptr;
      row["eps_e"] = nullptr;
    } else {
      MeasureResult eof = eof_mixed(out, {r_label}, cfg);
      row["eof"] = eof.value;
      row["eps_e"] = s_q - eof.value;
    }
    rows.push_back(std::move(row));
  }
  rb.results()["rows"] = std::move(rows);
  return rb.finish();
}

json run_tomo(const StateSpec& state, const DriverOptions& opts) {
  ReportBuilder rb("tomo", opts);
  rb.inputs() = json{{"state", state_to_json(state)}};

  DensityMatrix rho = state_density(state);
  if (rho.shape().size() != 2)
    throw DimensionError("tomography needs a bipartite state, got " +
                         std::to_string(rho.shape().size()) + " subsystems");
  ProductMeasurementSet ms = ic_product_set(rho.shape().dims[0], rho.shape().dims[1]);
  Statistics stats = exact_statistics(rho, ms);
  DensityMatrix rec = reconstruct(stats, ms);

  json& res = rb.results();
  res["gram_rank"] = gram_rank(ms);
  res["reconstruction_error"] = (rec.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
  res["correlation"] = correlation_test(stats);
  return rb.finish();
}

}  // namespace entcert
