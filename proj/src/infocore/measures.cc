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
#include <string>

#include "infoflow/errors.h"
#include "infoflow/infocore.h"

namespace infoflow::infocore {

Information SelfInformation(const Dist& d, const std::string& outcome) {
  const double p = d.Prob(outcome);
  if (p <= 0.0) return Information::Unbounded();
  // -log2(1) is -0.0; normalise so callers never see a negative zero.
  return Information::Finite(p >= 1.0 ? 0.0 : -std::log2(p));
}

double Entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double Entropy(const Dist& d) { return Entropy(d.probs()); }

double MutualInformation(const Joint& j) {
  const Dist px = j.MarginalX();
  const Dist py = j.MarginalY();
  double mi = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    for (std::size_t y = 0; y < j.cols(); ++y) {
      const double m = j.mass(x, y);
      if (m <= 0.0) continue;
      mi += m * std::log2(m / (px.probs()[x] * py.probs()[y]));
    }
  }
  // Rounding can leave a tiny negative residue for independent joints.
  return mi < 0.0 ? 0.0 : mi;
}

double TotalVariation(const Dist& p, const Dist& q) {
  if (p.outcomes() != q.outcomes()) {
    throw DomainError("TotalVariation: outcome spaces differ");
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    l1 += std::abs(p.probs()[i] - q.probs()[i]);
  }
  return 0.5 * l1;
}

InfoMeasure StructuralMetricContent(const Representation& r) {
  const auto groups = r.groups().size();
  return InfoMeasure{
      .selective_sh = std::log2(static_cast<double>(groups)),
      .logons = groups,
      .metrons = r.element_count(),
  };
}

}  // namespace infoflow::infocore
