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
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/errors.h"
#include "infoflow/mechanisms.h"

namespace infoflow::mechanisms {

Channel RandomizedResponse(int k, double eps) {
  if (k < 2) throw DomainError("RandomizedResponse: k must be at least 2");
  if (!std::isfinite(eps) || eps <= 0.0) {
    throw DomainError("RandomizedResponse: eps must be finite and positive");
  }
  const double e = std::exp(eps);
  const double denom = e + static_cast<double>(k - 1);
  const double keep = e / denom;
  const double flip = 1.0 / denom;
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, flip));
  for (int i = 0; i < k; ++i) rows[i][i] = keep;
  auto outputs = labels;
  return Channel::Create(std::move(labels), std::move(outputs),
                         std::move(rows));
}

EpsReport RealizedEpsilon(const Channel& c) {
  EpsReport report;
  report.witness = {c.inputs()[0], c.inputs()[0], c.outputs()[0]};
  bool have_ratio = false;
  for (std::size_t x = 0; x < c.num_inputs(); ++x) {
    for (std::size_t xp = 0; xp < c.num_inputs(); ++xp) {
      if (x == xp) continue;
      for (std::size_t y = 0; y < c.num_outputs(); ++y) {
        const double a = c.prob(x, y);
        const double b = c.prob(xp, y);
        // 0/0 counts as ratio 1 and 0/b as ratio 0; neither raises eps.
        if (a <= 0.0) continue;
        if (b <= 0.0) {
          report.unbounded = true;
          report.eps = 0.0;
          report.witness = {c.inputs()[x], c.inputs()[xp], c.outputs()[y]};
          return report;
        }
        const double ratio = std::log(a / b);
        if (!have_ratio || ratio > report.eps) {
          have_ratio = true;
          report.eps = ratio;
          report.witness = {c.inputs()[x], c.inputs()[xp], c.outputs()[y]};
        }
      }
    }
  }
  // A single-input channel or a channel whose best ratio is below one still
  // satisfies 0-DP.
  if (report.eps < 0.0) report.eps = 0.0;
  return report;
}

Joint JointOf(const Dist& prior, const Channel& c) {
  if (prior.outcomes() != c.inputs()) {
    throw DomainError("JointOf: prior outcomes do not match channel inputs");
  }
  std::vector<std::vector<double>> mass(c.num_inputs(),
                                        std::vector<double>(c.num_outputs()));
  for (std::size_t x = 0; x < c.num_inputs(); ++x) {
    for (std::size_t y = 0; y < c.num_outputs(); ++y) {
      mass[x][y] = prior.probs()[x] * c.prob(x, y);
    }
  }
  return Joint::Create(c.inputs(), c.outputs(), std::move(mass));
}

BoundCertificate CheckMiBound(const Channel& c, const Dist& prior,
                              double tolerance) {
  const EpsReport eps = RealizedEpsilon(c);
  BoundCertificate cert;
  cert.mi_sh = infocore::MutualInformation(JointOf(prior, c));
  cert.witness = eps.witness;
  if (eps.unbounded) {
    cert.unbounded = true;
    cert.holds = true;
    return cert;
  }
  cert.eps = eps.eps;
  cert.bound_sh = DpToMiBound(eps.eps, 1);
  cert.holds = cert.mi_sh <= cert.bound_sh + tolerance;
  return cert;
}

double DpToMiBound(double eps, int n) {
  if (!(eps >= 0.0)) throw DomainError("DpToMiBound: eps must be >= 0");
  if (n < 1) throw DomainError("DpToMiBound: n must be >= 1");
  return static_cast<double>(n) * eps * std::numbers::log2e;
}

Channel Compose(const Channel& first, const Channel& second) {
  if (first.inputs() != second.inputs()) {
    throw DomainError("Compose: channels have different input spaces");
  }
  std::vector<std::string> outputs;
  outputs.reserve(first.num_outputs() * second.num_outputs());
  for (const auto& a : first.outputs()) {
    for (const auto& b : second.outputs()) outputs.push_back(a + "|" + b);
  }
  std::vector<std::vector<double>> rows(first.num_inputs());
  for (std::size_t x = 0; x < first.num_inputs(); ++x) {
    rows[x].reserve(outputs.size());
    for (double a : first.row(x)) {
      for (double b : second.row(x)) rows[x].push_back(a * b);
    }
  }
  return Channel::Create(first.inputs(), std::move(outputs), std::move(rows));
}

Channel PostProcess(const Channel& c, const OutputMap& map) {
  std::vector<std::string> outputs;
  std::map<std::string, std::size_t> column;
  std::vector<std::size_t> target(c.num_outputs());
  for (std::size_t y = 0; y < c.num_outputs(); ++y) {
    const std::string label = map(c.outputs()[y]);
    auto [it, inserted] = column.emplace(label, outputs.size());
    if (inserted) outputs.push_back(label);
    target[y] = it->second;
  }
  std::vector<std::vector<double>> rows(
      c.num_inputs(), std::vector<double>(outputs.size(), 0.0));
  for (std::size_t x = 0; x < c.num_inputs(); ++x) {
    for (std::size_t y = 0; y < c.num_outputs(); ++y) {
      rows[x][target[y]] += c.prob(x, y);
    }
  }
  return Channel::Create(c.inputs(), std::move(outputs), std::move(rows));
}

Counterexample MiWithoutDpExample() {
  Channel channel =
      Channel::Create({"0", "1"}, {"0", "1"}, {{1.0, 0.0}, {0.99, 0.01}});
  Dist prior = Dist::Uniform({"0", "1"});
  BoundCertificate cert = CheckMiBound(channel, prior);
  return {std::move(channel), std::move(prior), cert};
}

Channel RandomChannel(Rng& rng, std::size_t num_inputs,
                      std::size_t num_outputs, double floor) {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < num_inputs; ++i) {
    inputs.push_back("x" + std::to_string(i));
  }
  for (std::size_t j = 0; j < num_outputs; ++j) {
    outputs.push_back("y" + std::to_string(j));
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(num_inputs);
  for (std::size_t i = 0; i < num_inputs; ++i) {
    rows.push_back(RandomSimplex(rng, num_outputs, floor));
  }
  return Channel::Create(std::move(inputs), std::move(outputs),
                         std::move(rows));
}

}  // namespace infoflow::mechanisms
