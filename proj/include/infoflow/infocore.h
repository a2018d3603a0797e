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

#ifndef INFOFLOW_INFOCORE_H_
#define INFOFLOW_INFOCORE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace infoflow::infocore {

// Absolute tolerance used for every stochasticity check in the library.
inline constexpr double kProbTolerance = 1e-9;

// A quantity of information in Shannons that may be unbounded, e.g. the
// self-information of an impossible outcome. Unbounded values never carry a
// float infinity, so they cannot leak into sums by accident.
class Information {
 public:
  static Information Finite(double sh) { return Information(sh, false); }
  static Information Unbounded() { return Information(0.0, true); }

  bool unbounded() const { return unbounded_; }
  bool finite() const { return !unbounded_; }
  // Throws DomainError when unbounded.
  double sh() const;

  friend bool operator==(const Information&, const Information&) = default;

 private:
  Information(double sh, bool unbounded) : sh_(sh), unbounded_(unbounded) {}

  double sh_;
  bool unbounded_;
};

// Finite probability distribution over a labeled outcome space.
class Dist {
 public:
  // Validates: equal lengths, unique labels, non-negative, sums to 1.
  static Dist Create(std::vector<std::string> outcomes,
                     std::vector<double> probs);
  static Dist Uniform(std::vector<std::string> outcomes);
  static Dist PointMass(std::vector<std::string> outcomes,
                        const std::string& outcome);

  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

  // Throws DomainError for an unknown label.
  std::size_t IndexOf(const std::string& outcome) const;
  double Prob(const std::string& outcome) const {
    return probs_[IndexOf(outcome)];
  }

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  Dist(std::vector<std::string> outcomes, std::vector<double> probs)
      : outcomes_(std::move(outcomes)), probs_(std::move(probs)) {}

  std::vector<std::string> outcomes_;
  std::vector<double> probs_;
};

// Joint mass function over X x Y, stored row-major (x major).
class Joint {
 public:
  static Joint Create(std::vector<std::string> x_outcomes,
                      std::vector<std::string> y_outcomes,
                      std::vector<std::vector<double>> mass);
  // Product of two marginals, i.e. an independent joint.
  static Joint Independent(const Dist& x, const Dist& y);

  const std::vector<std::string>& x_outcomes() const { return x_; }
  const std::vector<std::string>& y_outcomes() const { return y_; }
  std::size_t rows() const { return x_.size(); }
  std::size_t cols() const { return y_.size(); }
  double mass(std::size_t i, std::size_t j) const {
    return mass_[i * y_.size() + j];
  }

  Dist MarginalX() const;
  Dist MarginalY() const;
  Joint Transposed() const;

 private:
  Joint(std::vector<std::string> x, std::vector<std::string> y,
        std::vector<double> mass)
      : x_(std::move(x)), y_(std::move(y)), mass_(std::move(mass)) {}

  std::vector<std::string> x_;
  std::vector<std::string> y_;
  std::vector<double> mass_;
};

// Selective (Shannon), structural and metrical information content.
struct InfoMeasure {
  double selective_sh = 0.0;
  std::uint64_t logons = 0;
  std::uint64_t metrons = 0;

  friend bool operator==(const InfoMeasure&, const InfoMeasure&) = default;
};

// Caller-supplied partition of element ids into distinguishable groups.
class Representation {
 public:
  // Throws DomainError on empty input, empty groups or repeated elements.
  static Representation Create(std::vector<std::vector<std::string>> groups);

  const std::vector<std::vector<std::string>>& groups() const {
    return groups_;
  }
  std::size_t element_count() const;

 private:
  explicit Representation(std::vector<std::vector<std::string>> groups)
      : groups_(std::move(groups)) {}

  std::vector<std::vector<std::string>> groups_;
};

// -log2 p(outcome); unbounded when p(outcome) = 0.
Information SelfInformation(const Dist& d, const std::string& outcome);

// Shannon entropy in Sh, with 0 log 0 = 0.
double Entropy(const Dist& d);
// Entropy of a raw probability vector.
double Entropy(std::span<const double> probs);

double MutualInformation(const Joint& j);

// Half the L1 distance. Outcome labels must match in order.
double TotalVariation(const Dist& p, const Dist& q);

InfoMeasure StructuralMetricContent(const Representation& r);

void to_json(nlohmann::json& j, const Dist& d);
void to_json(nlohmann::json& j, const Joint& joint);
void to_json(nlohmann::json& j, const Information& info);
void to_json(nlohmann::json& j, const InfoMeasure& m);

Dist DistFromJson(const nlohmann::json& j);
Joint JointFromJson(const nlohmann::json& j);

}  // namespace infoflow::infocore

#endif  // INFOFLOW_INFOCORE_H_
