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

#ifndef INFOFLOW_RANDOM_H_
#define INFOFLOW_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace infoflow {

// The standard fixes mt19937_64's output sequence and seed_seq's mixing, but
// not the algorithms behind <random> distributions. Everything that feeds a
// frozen fixture draws through the helpers below so results are identical
// across standard libraries.
using Rng = std::mt19937_64;

inline Rng MakeRng(std::initializer_list<std::uint64_t> words) {
  std::vector<std::uint32_t> seeds;
  for (std::uint64_t w : words) {
    seeds.push_back(static_cast<std::uint32_t>(w));
    seeds.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(seeds.begin(), seeds.end());
  return Rng(seq);
}

// Uniform double in [0, 1) with 53 random bits.
inline double UnitUniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool Bernoulli(Rng& rng, double p) { return UnitUniform(rng) < p; }

// Flat Dirichlet sample (normalised unit exponentials), entries clipped below
// at `floor` and renormalised.
inline std::vector<double> RandomSimplex(Rng& rng, std::size_t n,
                                         double floor = 0.0) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    v = -std::log1p(-UnitUniform(rng));
    total += v;
  }
  if (total <= 0.0) {
    w.assign(n, 1.0);
    total = static_cast<double>(n);
  }
  double clipped = 0.0;
  for (auto& v : w) {
    v /= total;
    if (v < floor) v = floor;
    clipped += v;
  }
  for (auto& v : w) v /= clipped;
  return w;
}

// Index drawn from a probability vector by inverse CDF.
inline std::size_t SampleIndex(Rng& rng, const std::vector<double>& probs) {
  const double u = UnitUniform(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // u landed in the rounding gap above the last cumulative sum.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return 0;
}

}  // namespace infoflow

#endif  // INFOFLOW_RANDOM_H_
