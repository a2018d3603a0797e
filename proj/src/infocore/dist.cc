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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/errors.h"
#include "infoflow/infocore.h"

namespace infoflow::infocore {

namespace {

void CheckUnique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw DomainError(std::string(what) + ": duplicate label '" + label +
                        "'");
    }
  }
}

void CheckMass(std::span<const double> mass, const char* what) {
  double total = 0.0;
  for (double p : mass) {
    if (!std::isfinite(p) || p < 0.0) {
      throw DomainError(std::string(what) +
                        ": probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw DomainError(std::string(what) + ": mass sums to " +
                      std::to_string(total) + ", expected 1");
  }
}

template <typename T>
T Parse(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

double Information::sh() const {
  if (unbounded_) throw DomainError("information is unbounded");
  return sh_;
}

Dist Dist::Create(std::vector<std::string> outcomes,
                  std::vector<double> probs) {
  if (outcomes.empty()) throw DomainError("Dist: empty outcome space");
  if (outcomes.size() != probs.size()) {
    throw DomainError("Dist: outcomes and probs differ in length");
  }
  CheckUnique(outcomes, "Dist");
  CheckMass(probs, "Dist");
  return Dist(std::move(outcomes), std::move(probs));
}

Dist Dist::Uniform(std::vector<std::string> outcomes) {
  const std::size_t n = outcomes.size();
  if (n == 0) throw DomainError("Dist: empty outcome space");
  return Create(std::move(outcomes),
                std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::PointMass(std::vector<std::string> outcomes,
                     const std::string& outcome) {
  std::vector<double> probs(outcomes.size(), 0.0);
  auto it = std::find(outcomes.begin(), outcomes.end(), outcome);
  if (it == outcomes.end()) {
    throw DomainError("Dist: unknown outcome '" + outcome + "'");
  }
  probs[static_cast<std::size_t>(it - outcomes.begin())] = 1.0;
  return Create(std::move(outcomes), std::move(probs));
}

std::size_t Dist::IndexOf(const std::string& outcome) const {
  auto it = std::find(outcomes_.begin(), outcomes_.end(), outcome);
  if (it == outcomes_.end()) {
    throw DomainError("Dist: unknown outcome '" + outcome + "'");
  }
  return static_cast<std::size_t>(it - outcomes_.begin());
}

Joint Joint::Create(std::vector<std::string> x_outcomes,
                    std::vector<std::string> y_outcomes,
                    std::vector<std::vector<double>> mass) {
  if (x_outcomes.empty() || y_outcomes.empty()) {
    throw DomainError("Joint: empty outcome space");
  }
  CheckUnique(x_outcomes, "Joint x");
  CheckUnique(y_outcomes, "Joint y");
  if (mass.size() != x_outcomes.size()) {
    throw DomainError("Joint: row count does not match x outcomes");
  }
  std::vector<double> flat;
  flat.reserve(x_outcomes.size() * y_outcomes.size());
  for (const auto& row : mass) {
    if (row.size() != y_outcomes.size()) {
      throw DomainError("Joint: column count does not match y outcomes");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  CheckMass(flat, "Joint");
  return Joint(std::move(x_outcomes), std::move(y_outcomes), std::move(flat));
}

Joint Joint::Independent(const Dist& x, const Dist& y) {
  std::vector<std::vector<double>> mass(x.size(),
                                        std::vector<double>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      mass[i][j] = x.probs()[i] * y.probs()[j];
    }
  }
  return Create(x.outcomes(), y.outcomes(), std::move(mass));
}

Dist Joint::MarginalX() const {
  std::vector<double> p(rows(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) p[i] += mass(i, j);
  }
  return Dist::Create(x_, std::move(p));
}

Dist Joint::MarginalY() const {
  std::vector<double> p(cols(), 0.0);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) p[j] += mass(i, j);
  }
  return Dist::Create(y_, std::move(p));
}

Joint Joint::Transposed() const {
  std::vector<double> t(mass_.size());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) t[j * rows() + i] = mass(i, j);
  }
  return Joint(y_, x_, std::move(t));
}

Representation Representation::Create(
    std::vector<std::vector<std::string>> groups) {
  if (groups.empty()) throw DomainError("Representation: no groups");
  std::set<std::string> seen;
  for (const auto& group : groups) {
    if (group.empty()) throw DomainError("Representation: empty group");
    for (const auto& element : group) {
      if (!seen.insert(element).second) {
        throw DomainError("Representation: element '" + element +
                          "' appears in more than one group");
      }
    }
  }
  return Representation(std::move(groups));
}

std::size_t Representation::element_count() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

void to_json(nlohmann::json& j, const Dist& d) {
  j = {{"outcomes", d.outcomes()}, {"probs", d.probs()}};
}

void to_json(nlohmann::json& j, const Joint& joint) {
  std::vector<std::vector<double>> mass(joint.rows(),
                                        std::vector<double>(joint.cols()));
  for (std::size_t i = 0; i < joint.rows(); ++i) {
    for (std::size_t k = 0; k < joint.cols(); ++k) mass[i][k] = joint.mass(i, k);
  }
  j = {{"x", joint.x_outcomes()}, {"y", joint.y_outcomes()}, {"mass", mass}};
}

void to_json(nlohmann::json& j, const Information& info) {
  if (info.unbounded()) {
    j = {{"sh", nullptr}, {"unbounded", true}};
  } else {
    j = {{"sh", info.sh()}, {"unbounded", false}};
  }
}

void to_json(nlohmann::json& j, const InfoMeasure& m) {
  j = {{"selective_sh", m.selective_sh},
       {"logons", m.logons},
       {"metrons", m.metrons}};
}

Dist DistFromJson(const nlohmann::json& j) {
  return Dist::Create(Parse<std::vector<std::string>>(j, "outcomes"),
                      Parse<std::vector<double>>(j, "probs"));
}

Joint JointFromJson(const nlohmann::json& j) {
  return Joint::Create(Parse<std::vector<std::string>>(j, "x"),
                       Parse<std::vector<std::string>>(j, "y"),
                       Parse<std::vector<std::vector<double>>>(j, "mass"));
}

}  // namespace infoflow::infocore
