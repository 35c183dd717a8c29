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

#include "entcert/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace entcert {

using nlohmann::json;

namespace {

void check_fields(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ParseError(std::string(what) + ": unknown field '" + key + "'");
  }
  for (const auto& key : required)
    if (!j.contains(key))
      throw ParseError(std::string(what) + ": missing field '" + key + "'");
}

void check_version(const json& j, const char* what) {
  if (!j.at("format_version").is_number_integer() ||
      j.at("format_version").get<int>() != kFormatVersion)
    throw ParseError(std::string(what) + ": unsupported format_version");
}

Complex parse_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(std::string(what) + ": complex entries must be [re, im] number pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_matrix(const json& j, long rows, long cols, const char* what) {
  if (!j.is_array() || static_cast<long>(j.size()) != rows)
    throw ParseError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols)
      throw ParseError(std::string(what) + ": expected " + std::to_string(cols) + " columns");
    for (long c = 0; c < cols; ++c)
      m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string(what) + ": cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

int parse_positive_int(const json& j, const char* field, const char* what) {
  if (!j.is_number_integer() || j.get<long>() < 1)
    throw ParseError(std::string(what) + ": field '" + field + "' must be a positive integer");
  return j.get<int>();
}

}  // namespace

const SystemShape& state_shape(const StateSpec& spec) {
  if (const auto* p = std::get_if<PureState>(&spec)) return p->shape();
  return std::get<DensityMatrix>(spec).shape();
}

bool state_is_pure(const StateSpec& spec) { return std::holds_alternative<PureState>(spec); }

DensityMatrix state_density(const StateSpec& spec) {
  if (const auto* p = std::get_if<PureState>(&spec)) return projector(*p);
  return std::get<DensityMatrix>(spec);
}

NamedChannel channel_from_json(const json& j) {
  check_fields(j, {"format_version", "name", "in_dim", "out_dim", "kraus"},
               {"format_version", "in_dim", "out_dim", "kraus"}, "channel file");
  check_version(j, "channel file");
  const int in_dim = parse_positive_int(j.at("in_dim"), "in_dim", "channel file");
  const int out_dim = parse_positive_int(j.at("out_dim"), "out_dim", "channel file");
  const json& kraus = j.at("kraus");
  if (!kraus.is_array() || kraus.empty())
    throw ParseError("channel file: 'kraus' must be a nonempty array of matrices");

  std::vector<Matrix> ops;
  for (const auto& jm : kraus) ops.push_back(parse_matrix(jm, out_dim, in_dim, "channel file"));
  NamedChannel out{KrausChannel(std::move(ops)), std::nullopt};
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw ParseError("channel file: 'name' must be a string");
    out.name = j.at("name").get<std::string>();
  }
  validate(out.channel);  // completeness is an invariant, checked on load
  return out;
}

json channel_to_json(const KrausChannel& channel, const std::optional<std::string>& name) {
  json j;
  j["format_version"] = kFormatVersion;
  j["in_dim"] = channel.in_dim;
  j["out_dim"] = channel.out_dim;
  json kraus = json::array();
  for (const auto& a : channel.operators) kraus.push_back(matrix_to_json(a));
  j["kraus"] = std::move(kraus);
  if (name) j["name"] = *name;
  return j;
}

NamedChannel load_channel_file(const std::string& path) {
  return channel_from_json(load_json_file(path, "channel file"));
}

void save_channel_file(const KrausChannel& channel, const std::optional<std::string>& name,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << channel_to_json(channel, name).dump(2) << "\n";
}

StateSpec state_from_json(const json& j) {
  check_fields(j, {"format_version", "kind", "dims", "labels", "amplitudes", "matrix"},
               {"format_version", "kind", "dims", "labels"}, "state file");
  check_version(j, "state file");
  if (!j.at("kind").is_string()) throw ParseError("state file: 'kind' must be a string");
  const std::string kind = j.at("kind").get<std::string>();

  const json& jdims = j.at("dims");
  const json& jlabels = j.at("labels");
  if (!jdims.is_array() || jdims.empty() || !jlabels.is_array() ||
      jlabels.size() != jdims.size())
    throw ParseError("state file: 'dims' and 'labels' must be equal-length nonempty arrays");
  std::vector<int> dims;
  std::vector<std::string> labels;
  for (const auto& d : jdims) dims.push_back(parse_positive_int(d, "dims", "state file"));
  for (const auto& l : jlabels) {
    if (!l.is_string()) throw ParseError("state file: labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  SystemShape shape(std::move(dims), std::move(labels));
  const long d = shape.total_dim();

  if (kind == "pure") {
    if (!j.contains("amplitudes") || j.contains("matrix"))
      throw ParseError("state file: pure states carry 'amplitudes' only");
    const json& ja = j.at("amplitudes");
    if (!ja.is_array() || static_cast<long>(ja.size()) != d)
      throw ParseError("state file: expected " + std::to_string(d) + " amplitudes");
    Vector v(d);
    for (long i = 0; i < d; ++i)
      v[i] = parse_complex(ja[static_cast<std::size_t>(i)], "state file");
    return PureState(std::move(v), std::move(shape));
  }
  if (kind == "mixed") {
    if (!j.contains("matrix") || j.contains("amplitudes"))
      throw ParseError("state file: mixed states carry 'matrix' only");
    Matrix m = parse_matrix(j.at("matrix"), d, d, "state file");
    return DensityMatrix(std::move(m), std::move(shape));
  }
  throw ParseError("state file: 'kind' must be \"pure\" or \"mixed\"");
}

json state_to_json(const StateSpec& spec) {
  json j;
  j["format_version"] = kFormatVersion;
  const auto& shape = state_shape(spec);
  j["dims"] = shape.dims;
  j["labels"] = shape.labels;
  if (const auto* p = std::get_if<PureState>(&spec)) {
    j["kind"] = "pure";
    json amps = json::array();
    for (long i = 0; i < p->amplitudes().size(); ++i)
      amps.push_back(complex_to_json(p->amplitudes()[i]));
    j["amplitudes"] = std::move(amps);
  } else {
    j["kind"] = "mixed";
    j["matrix"] = matrix_to_json(std::get<DensityMatrix>(spec).matrix());
  }
  return j;
}

StateSpec load_state_file(const std::string& path) {
  return state_from_json(load_json_file(path, "state file"));
}

KrausChannel builtin_channel(const std::string& family, double param) {
  if (param < 0.0 || param > 1.0)
    throw ParseError("channel family parameter " + std::to_string(param) +
                     " outside [0, 1]");
  Matrix id = Matrix::Identity(2, 2);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;

  if (family == "dephasing")
    return KrausChannel({std::sqrt(1.0 - param) * id, std::sqrt(param) * z});
  if (family == "bitflip")
    return KrausChannel({std::sqrt(1.0 - param) * id, std::sqrt(param) * x});
  if (family == "depolarizing")
    return KrausChannel({std::sqrt(1.0 - 0.75 * param) * id, std::sqrt(0.25 * param) * x,
                         std::sqrt(0.25 * param) * y, std::sqrt(0.25 * param) * z});
  if (family == "amplitude-damping") {
    Matrix a0(2, 2), a1(2, 2);
    a0 << 1, 0, 0, std::sqrt(1.0 - param);
    a1 << 0, std::sqrt(param), 0, 0;
    return KrausChannel({a0, a1});
  }
  throw ParseError("unknown channel family '" + family + "'");
}

std::vector<std::string> builtin_channel_families() {
  return {"dephasing", "bitflip", "depolarizing", "amplitude-damping"};
}

PureState builtin_state(const std::string& name) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (name == "bell") {
    Vector v = Vector::Zero(4);
    v[0] = inv_sqrt2;
    v[3] = inv_sqrt2;
    return PureState(std::move(v), SystemShape({2, 2}, {"R", "Q"}));
  }
  if (name == "repetition3") {
    Vector v = Vector::Zero(16);
    v[0] = inv_sqrt2;   // |0>|000>
    v[15] = inv_sqrt2;  // |1>|111>
    return PureState(std::move(v), SystemShape({2, 8}, {"R", "Q"}));
  }
  throw ParseError("unknown built-in state '" + name + "'");
}

}  // namespace entcert
