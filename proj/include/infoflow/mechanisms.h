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

#ifndef INFOFLOW_MECHANISMS_H_
#define INFOFLOW_MECHANISMS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "infoflow/infocore.h"
#include "infoflow/random.h"
#include "json.hpp"

namespace infoflow::mechanisms {

using infocore::Dist;
using infocore::Joint;

// Row-stochastic conditional matrix p(y|x): a local randomized mechanism
// from an input space to an output space.
class Channel {
 public:
  static Channel Create(std::vector<std::string> inputs,
                        std::vector<std::string> outputs,
                        std::vector<std::vector<double>> rows);
  static Channel Identity(std::vector<std::string> labels);
  // Every input maps to the same output distribution.
  static Channel Constant(std::vector<std::string> inputs, const Dist& output);

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }

  double prob(std::size_t x, std::size_t y) const {
    return rows_[x * outputs_.size() + y];
  }
  std::span<const double> row(std::size_t x) const {
    return {rows_.data() + x * outputs_.size(), outputs_.size()};
  }
  std::vector<std::vector<double>> Rows() const;

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  Channel(std::vector<std::string> inputs, std::vector<std::string> outputs,
          std::vector<double> rows)
      : inputs_(std::move(inputs)),
        outputs_(std::move(outputs)),
        rows_(std::move(rows)) {}

  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<double> rows_;
};

// The (x, x', y) triple attaining the largest log-ratio.
struct Witness {
  std::string x;
  std::string x_prime;
  std::string y;
};

// Tightest epsilon the channel satisfies for local DP under the discrete
// metric, i.e. over every ordered pair of inputs.
struct EpsReport {
  bool unbounded = false;
  double eps = 0.0;  // nats; meaningful only when !unbounded
  Witness witness;
};

struct BoundCertificate {
  bool unbounded = false;  // realized epsilon is unbounded
  double eps = 0.0;
  double mi_sh = 0.0;
  double bound_sh = 0.0;  // eps * log2(e); meaningless when unbounded
  bool holds = true;
  Witness witness;
};

// k-ary randomized response: keep the true value with probability
// e^eps / (e^eps + k - 1), otherwise report one of the other k - 1 values.
Channel RandomizedResponse(int k, double eps);

EpsReport RealizedEpsilon(const Channel& c);

// p(x, y) = prior(x) p(y|x). The prior's outcomes must equal c.inputs().
Joint JointOf(const Dist& prior, const Channel& c);

// Computes I(X; Y) for the prior pushed through `c` and compares it with
// the information bound implied by the channel's realized epsilon.
BoundCertificate CheckMiBound(const Channel& c, const Dist& prior,
                              double tolerance = infocore::kProbTolerance);

// n-fold composition bound n * eps * log2(e) in Sh.
double DpToMiBound(double eps, int n = 1);

// Product channel answering both mechanisms with independent randomness.
// Output labels are "<y1>|<y2>".
Channel Compose(const Channel& first, const Channel& second);

using OutputMap = std::function<std::string(const std::string&)>;

// Merges output columns by a deterministic relabelling. New outputs appear
// in order of first occurrence.
Channel PostProcess(const Channel& c, const OutputMap& map);

// A channel whose mutual information is small under a uniform prior but
// whose realized epsilon is unbounded.
struct Counterexample {
  Channel channel;
  Dist prior;
  BoundCertificate certificate;
};
Counterexample MiWithoutDpExample();

// Rows from a flat Dirichlet, clipped at `floor` and renormalised, so the
// realized epsilon stays finite. Labels are "x0".. and "y0"...
Channel RandomChannel(Rng& rng, std::size_t num_inputs,
                      std::size_t num_outputs, double floor = 1e-6);

void to_json(nlohmann::json& j, const Channel& c);
void to_json(nlohmann::json& j, const Witness& w);
void to_json(nlohmann::json& j, const EpsReport& r);
void to_json(nlohmann::json& j, const BoundCertificate& c);
Channel ChannelFromJson(const nlohmann::json& j);

// --- Property sweeps --------------------------------------------------------

struct SweepOptions {
  std::uint64_t seed = 0;
  std::size_t cases = 1000;
  std::size_t max_inputs = 6;
  std::size_t max_outputs = 6;
  double tolerance = infocore::kProbTolerance;
};

struct SweepFailure {
  std::size_t index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SweepReport {
  std::size_t cases = 0;
  std::size_t violations = 0;
  // Smallest rhs - lhs seen; negative only when some case failed.
  double min_slack = 0.0;
  std::vector<SweepFailure> failures;
  bool ok() const { return violations == 0; }
};

// I(A(X); X) <= realized_eps * log2(e) on random channels and priors.
SweepReport RunMiBoundSweep(const SweepOptions& options);
// I(M; X) <= I(Y; X) for random deterministic merges M = f(Y).
SweepReport RunPostProcessingSweep(const SweepOptions& options);
// eps(c1 x c2) <= eps(c1) + eps(c2) on random channel pairs.
SweepReport RunCompositionSweep(const SweepOptions& options);

void to_json(nlohmann::json& j, const SweepReport& r);

}  // namespace infoflow::mechanisms

#endif  // INFOFLOW_MECHANISMS_H_
