//
// Copyright 2026 The infoflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/errors.h"
#include "infoflow/mechanisms.h"

namespace infoflow::mechanisms {

namespace {

void CheckUnique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw DomainError(std::string("Channel: duplicate ") + what + " label");
  }
}

}  // namespace

Channel Channel::Create(std::vector<std::string> inputs,
                        std::vector<std::string> outputs,
                        std::vector<std::vector<double>> rows) {
  if (inputs.empty() || outputs.empty()) {
    throw DomainError("Channel: empty input or output space");
  }
  CheckUnique(inputs, "input");
  CheckUnique(outputs, "output");
  if (rows.size() != inputs.size()) {
    throw DomainError("Channel: expected one row per input");
  }
  std::vector<double> flat;
  flat.reserve(inputs.size() * outputs.size());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    const auto& row = rows[x];
    if (row.size() != outputs.size()) {
      throw DomainError("Channel: row " + std::to_string(x) +
                        " has the wrong number of columns");
    }
    double total = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0) {
        throw DomainError("Channel: entries must be finite and non-negative");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > infocore::kProbTolerance) {
      throw DomainError("Channel: row '" + inputs[x] + "' sums to " +
                        std::to_string(total));
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Channel(std::move(inputs), std::move(outputs), std::move(flat));
}

Channel Channel::Identity(std::vector<std::string> labels) {
  std::vector<std::vector<double>> rows(labels.size(),
                                        std::vector<double>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) rows[i][i] = 1.0;
  auto outputs = labels;
  return Create(std::move(labels), std::move(outputs), std::move(rows));
}

Channel Channel::Constant(std::vector<std::string> inputs, const Dist& output) {
  std::vector<std::vector<double>> rows(inputs.size(), output.probs());
  return Create(std::move(inputs), output.outcomes(), std::move(rows));
}

std::vector<std::vector<double>> Channel::Rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(num_inputs());
  for (std::size_t x = 0; x < num_inputs(); ++x) {
    auto r = row(x);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

void to_json(nlohmann::json& j, const Channel& c) {
  j = {{"inputs", c.inputs()}, {"outputs", c.outputs()}, {"rows", c.Rows()}};
}

void to_json(nlohmann::json& j, const Witness& w) {
  j = {{"x", w.x}, {"x_prime", w.x_prime}, {"y", w.y}};
}

void to_json(nlohmann::json& j, const EpsReport& r) {
  j = {{"unbounded", r.unbounded},
       {"eps", r.unbounded ? nlohmann::json(nullptr) : nlohmann::json(r.eps)},
       {"witness", r.witness}};
}

void to_json(nlohmann::json& j, const BoundCertificate& c) {
  j = {{"eps", c.unbounded ? nlohmann::json(nullptr) : nlohmann::json(c.eps)},
       {"unbounded", c.unbounded},
       {"mi_sh", c.mi_sh},
       {"bound_sh",
        c.unbounded ? nlohmann::json(nullptr) : nlohmann::json(c.bound_sh)},
       {"holds", c.holds},
       {"witness", c.witness}};
}

Channel ChannelFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("channel JSON must be an object");
  for (const char* key : {"inputs", "outputs", "rows"}) {
    if (!j.contains(key)) {
      throw DomainError(std::string("channel JSON: missing key '") + key +
                        "'");
    }
  }
  try {
    return Channel::Create(
        j.at("inputs").get<std::vector<std::string>>(),
        j.at("outputs").get<std::vector<std::string>>(),
        j.at("rows").get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("channel JSON: ") + e.what());
  }
}

}  // namespace infoflow::mechanisms
