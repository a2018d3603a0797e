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

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/causalnet.h"
#include "infoflow/errors.h"
#include "infoflow/random.h"

namespace infoflow::causalnet {

namespace {

const std::vector<std::string> kBinary = {"0", "1"};

Node BinaryNode(std::string name, std::vector<std::string> parents, Rng& rng) {
  Node node{std::move(name), kBinary, std::move(parents), {}};
  const std::size_t rows = std::size_t{1} << node.parents.size();
  for (std::size_t r = 0; r < rows; ++r) {
    node.cpt.push_back(RandomSimplex(rng, 2, 0.01));
  }
  return node;
}

}  // namespace

BayesNet ForkColliderGraph(std::uint64_t seed) {
  Rng rng = MakeRng({seed});
  std::vector<Node> nodes;
  nodes.push_back(BinaryNode("A", {}, rng));
  nodes.push_back(BinaryNode("B", {}, rng));
  nodes.push_back(BinaryNode("C", {}, rng));
  nodes.push_back(BinaryNode("D", {"A", "B", "C"}, rng));
  nodes.push_back(BinaryNode("E", {"A", "D", "F"}, rng));
  nodes.push_back(BinaryNode("F", {}, rng));
  nodes.push_back(BinaryNode("G", {}, rng));
  nodes.push_back(BinaryNode("X", {"E", "G"}, rng));
  nodes.push_back(BinaryNode("M", {"X"}, rng));
  return BayesNet::Create(std::move(nodes));
}

TwinsScenario MakeTwinsScenario(double zygosity_prior) {
  if (!(zygosity_prior > 0.0 && zygosity_prior < 1.0)) {
    throw DomainError("twins: zygosity prior must lie strictly in (0, 1)");
  }
  std::vector<Node> nodes;
  nodes.push_back({"Z",
                   {"identical", "fraternal"},
                   {},
                   {{zygosity_prior, 1.0 - zygosity_prior}}});
  nodes.push_back({"S1", {"female", "male"}, {}, {{0.5, 0.5}}});
  nodes.push_back({"S2",
                   {"female", "male"},
                   {"Z", "S1"},
                   {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}, {0.5, 0.5}}});
  BayesNet net = BayesNet::Create(std::move(nodes));

  const JointTable joint = ComputeJoint(net);
  TwinsReport report;
  report.zygosity_prior = zygosity_prior;
  report.h_s2 = joint.Entropy({"S2"});
  report.h_s2_given_s1_identical =
      joint.Condition({{"S1", "female"}, {"Z", "identical"}}).Entropy({"S2"});
  report.h_s2_given_s1_fraternal =
      joint.Condition({{"S1", "female"}, {"Z", "fraternal"}}).Entropy({"S2"});
  report.mi_z_s2_given_s1 =
      joint.ConditionalMutualInformation({"Z"}, {"S2"}, {"S1"});
  report.mi_s1_s2_given_z =
      joint.ConditionalMutualInformation({"S1"}, {"S2"}, {"Z"});
  report.mi_z_s1_s2 = joint.MutualInformation({"Z", "S1"}, {"S2"});
  return {std::move(net), report};
}

BayesNet BallotNet(int voters) {
  if (voters < 2) throw DomainError("ballot: need at least two voters");
  const auto n = static_cast<std::uint64_t>(voters);
  const std::uint64_t size =
      n >= 63 ? std::numeric_limits<std::uint64_t>::max()
              : (std::uint64_t{1} << n) * (n + 1);
  if (size > kMaxStates) throw CapacityError("ballot net", size, kMaxStates);

  std::vector<Node> nodes;
  std::vector<std::string> parents;
  for (int i = 1; i <= voters; ++i) {
    const std::string name = "V" + std::to_string(i);
    nodes.push_back({name, kBinary, {}, {{0.5, 0.5}}});
    parents.push_back(name);
  }
  Node tally{"T", {}, parents, {}};
  for (int t = 0; t <= voters; ++t) tally.states.push_back(std::to_string(t));
  const std::uint64_t rows = std::uint64_t{1} << n;
  for (std::uint64_t r = 0; r < rows; ++r) {
    std::vector<double> row(n + 1, 0.0);
    row[static_cast<std::size_t>(std::popcount(r))] = 1.0;
    tally.cpt.push_back(std::move(row));
  }
  nodes.push_back(std::move(tally));
  return BayesNet::Create(std::move(nodes));
}

BallotScenario MakeBallotScenario(int voters) {
  if (voters < 2) throw DomainError("ballot: need at least two voters");
  if (voters > kMaxVoters) {
    const std::uint64_t requested =
        voters >= 64 ? std::numeric_limits<std::uint64_t>::max()
                     : std::uint64_t{1} << voters;
    throw CapacityError("ballot enumeration", requested,
                        std::uint64_t{1} << kMaxVoters);
  }
  const std::uint64_t ballots = std::uint64_t{1} << voters;
  // counts[t][v1]; V1 is the lowest bit.
  std::vector<std::vector<double>> counts(voters + 1,
                                          std::vector<double>(2, 0.0));
  for (std::uint64_t b = 0; b < ballots; ++b) {
    counts[static_cast<std::size_t>(std::popcount(b))][b & 1] += 1.0;
  }

  std::vector<std::string> tallies;
  std::vector<std::vector<double>> mass;
  BallotReport report;
  report.voters = voters;
  for (int t = 0; t <= voters; ++t) {
    tallies.push_back(std::to_string(t));
    const double no = counts[t][0] / static_cast<double>(ballots);
    const double yes = counts[t][1] / static_cast<double>(ballots);
    mass.push_back({no, yes});
    TallyPosterior post;
    post.tally = t;
    post.p_tally = no + yes;
    post.p_v1_yes = yes / (no + yes);
    post.h_v1 = infocore::Entropy(std::vector<double>{1.0 - post.p_v1_yes,
                                                      post.p_v1_yes});
    report.expected_posterior_entropy += post.p_tally * post.h_v1;
    report.posteriors.push_back(post);
  }
  report.mi_t_v1 = infocore::MutualInformation(
      infocore::Joint::Create(std::move(tallies), kBinary, std::move(mass)));

  BallotScenario scenario{std::nullopt, std::move(report)};
  const auto n = static_cast<std::uint64_t>(voters);
  if ((std::uint64_t{1} << n) * (n + 1) <= kMaxStates) {
    scenario.net = BallotNet(voters);
  }
  return scenario;
}

void to_json(nlohmann::json& j, const TwinsReport& r) {
  j = {{"zygosity_prior", r.zygosity_prior},
       {"h_s2", r.h_s2},
       {"h_s2_given_s1_identical", r.h_s2_given_s1_identical},
       {"h_s2_given_s1_fraternal", r.h_s2_given_s1_fraternal},
       {"mi_z_s2_given_s1", r.mi_z_s2_given_s1},
       {"mi_s1_s2_given_z", r.mi_s1_s2_given_z},
       {"mi_z_s1_s2", r.mi_z_s1_s2}};
}

void to_json(nlohmann::json& j, const BallotReport& r) {
  nlohmann::json posts = nlohmann::json::array();
  for (const auto& p : r.posteriors) {
    posts.push_back({{"tally", p.tally},
                     {"p_tally", p.p_tally},
                     {"p_v1_yes", p.p_v1_yes},
                     {"h_v1", p.h_v1}});
  }
  j = {{"voters", r.voters},
       {"mi_t_v1", r.mi_t_v1},
       {"expected_posterior_entropy", r.expected_posterior_entropy},
       {"posteriors", posts}};
}

}  // namespace infoflow::causalnet
