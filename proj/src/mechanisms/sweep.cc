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
#include <cstdint>
#include <string>
#include <vector>

#include "infoflow/mechanisms.h"

namespace infoflow::mechanisms {

namespace {

std::size_t Between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

Dist RandomPrior(Rng& rng, const Channel& c) {
  return Dist::Create(c.inputs(), RandomSimplex(rng, c.num_inputs()));
}

// Runs `check(rng)` -> {lhs, rhs} for every case and tallies lhs <= rhs.
template <typename Check>
SweepReport Sweep(const SweepOptions& options, std::uint64_t stream,
                  Check check) {
  SweepReport report;
  report.cases = options.cases;
  bool first = true;
  for (std::size_t i = 0; i < options.cases; ++i) {
    Rng rng = MakeRng({options.seed, stream, i});
    const auto [lhs, rhs] = check(rng);
    const double slack = rhs - lhs;
    if (first || slack < report.min_slack) report.min_slack = slack;
    first = false;
    if (lhs > rhs + options.tolerance) {
      ++report.violations;
      report.failures.push_back({i, lhs, rhs});
    }
  }
  return report;
}

}  // namespace

SweepReport RunMiBoundSweep(const SweepOptions& options) {
  return Sweep(options, 1, [&](Rng& rng) {
    const std::size_t n_in = Between(rng, 2, std::max<std::size_t>(2, options.max_inputs));
    const std::size_t n_out = Between(rng, 2, std::max<std::size_t>(2, options.max_outputs));
    const Channel c = RandomChannel(rng, n_in, n_out);
    const BoundCertificate cert = CheckMiBound(c, RandomPrior(rng, c));
    return std::pair{cert.mi_sh, cert.bound_sh};
  });
}

SweepReport RunPostProcessingSweep(const SweepOptions& options) {
  return Sweep(options, 2, [&](Rng& rng) {
    const std::size_t n_in = Between(rng, 2, std::max<std::size_t>(2, options.max_inputs));
    const std::size_t n_out = Between(rng, 2, std::max<std::size_t>(2, options.max_outputs));
    const Channel c = RandomChannel(rng, n_in, n_out);
    const Dist prior = RandomPrior(rng, c);
    const std::size_t merged = Between(rng, 1, n_out);
    std::vector<std::string> target;
    for (std::size_t y = 0; y < n_out; ++y) {
      target.push_back("m" + std::to_string(rng() % merged));
    }
    const Channel post = PostProcess(c, [&](const std::string& label) {
      return target[static_cast<std::size_t>(
          std::find(c.outputs().begin(), c.outputs().end(), label) -
          c.outputs().begin())];
    });
    return std::pair{infocore::MutualInformation(JointOf(prior, post)),
                     infocore::MutualInformation(JointOf(prior, c))};
  });
}

SweepReport RunCompositionSweep(const SweepOptions& options) {
  return Sweep(options, 3, [&](Rng& rng) {
    const std::size_t n_in = Between(rng, 2, std::max<std::size_t>(2, options.max_inputs));
    const Channel a = RandomChannel(
        rng, n_in, Between(rng, 2, std::max<std::size_t>(2, options.max_outputs)));
    const Channel b = RandomChannel(
        rng, n_in, Between(rng, 2, std::max<std::size_t>(2, options.max_outputs)));
    return std::pair{RealizedEpsilon(Compose(a, b)).eps,
                     RealizedEpsilon(a).eps + RealizedEpsilon(b).eps};
  });
}

void to_json(nlohmann::json& j, const SweepReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"case", f.index}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  }
  j = {{"cases", r.cases},
       {"violations", r.violations},
       {"min_slack", r.min_slack},
       {"failures", failures}};
}

}  // namespace infoflow::mechanisms
