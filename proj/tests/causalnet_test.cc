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
#include <map>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "infoflow/causalnet.h"
#include "infoflow/errors.h"
#include "infoflow/flow.h"
#include "infoflow/random.h"

namespace infoflow::causalnet {
namespace {

using society::FlowEvent;
using society::FlowKind;

Node Root(const std::string& name, std::vector<double> probs) {
  std::vector<std::string> states;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    states.push_back(std::to_string(i));
  }
  return Node{name, states, {}, {std::move(probs)}};
}

Node Binary(const std::string& name, std::vector<std::string> parents,
            std::vector<std::vector<double>> cpt) {
  return Node{name, {"0", "1"}, std::move(parents), std::move(cpt)};
}

// Random DAG over n nodes. Parents come from earlier indices but nodes are
// declared in reverse, so the topological sort has work to do.
BayesNet RandomNet(Rng& rng, std::size_t n) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    Node node;
    node.name = "N" + std::to_string(i);
    const std::size_t k = 2 + rng() % 2;
    for (std::size_t s = 0; s < k; ++s) node.states.push_back("s" + std::to_string(s));
    std::size_t rows = 1;
    for (std::size_t p = 0; p < i; ++p) {
      if (Bernoulli(rng, 0.5)) {
        node.parents.push_back("N" + std::to_string(p));
        rows *= nodes[p].states.size();
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      node.cpt.push_back(RandomSimplex(rng, k, 0.0));
    }
    nodes.push_back(std::move(node));
  }
  std::reverse(nodes.begin(), nodes.end());
  return BayesNet::Create(std::move(nodes));
}

FlowEvent Explicit(const std::string& id, std::int64_t t,
                   const std::string& sender, const std::string& receiver,
                   const std::string& datum) {
  FlowEvent e;
  e.id = id;
  e.t = t;
  e.sender = sender;
  e.receiver = receiver;
  e.datum = datum;
  e.kind = FlowKind::kExplicit;
  return e;
}

TEST(BayesNetTest, Validation) {
  EXPECT_THROW(BayesNet::Create({}), DomainError);
  EXPECT_THROW(BayesNet::Create({Root("A", {0.5, 0.6})}), DomainError);
  EXPECT_THROW(BayesNet::Create({Root("A", {0.5, 0.5}), Root("A", {1.0})}),
               DomainError);
  EXPECT_THROW(BayesNet::Create({Binary("B", {"Q"}, {{1, 0}, {0, 1}})}),
               DomainError);
  // Wrong number of CPT rows.
  EXPECT_THROW(BayesNet::Create({Root("A", {0.5, 0.5}),
                                 Binary("B", {"A"}, {{1, 0}})}),
               DomainError);
  // Cycle.
  EXPECT_THROW(BayesNet::Create({Binary("A", {"B"}, {{1, 0}, {0, 1}}),
                                 Binary("B", {"A"}, {{1, 0}, {0, 1}})}),
               DomainError);
}

TEST(ComputeJointTest, Examples) {
  const auto single = ComputeJoint(BayesNet::Create({Root("A", {0.5, 0.5})}));
  EXPECT_EQ(single.mass(), (std::vector<double>{0.5, 0.5}));

  const auto copy = ComputeJoint(BayesNet::Create(
      {Root("X", {0.3, 0.7}), Binary("Y", {"X"}, {{1, 0}, {0, 1}})}));
  EXPECT_NEAR(copy.mass()[0], 0.3, 1e-15);
  EXPECT_EQ(copy.mass()[1], 0.0);
  EXPECT_EQ(copy.mass()[2], 0.0);
  EXPECT_NEAR(copy.mass()[3], 0.7, 1e-15);

  EXPECT_NEAR(ComputeJoint(ForkColliderGraph(42)).Total(), 1.0, 1e-12);
}

TEST(ComputeJointTest, CapacityError) {
  const auto net = ForkColliderGraph(42);
  EXPECT_EQ(net.StateSpaceSize(), 512u);
  try {
    ComputeJoint(net, 256);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.requested(), 512u);
    EXPECT_EQ(e.limit(), 256u);
  }
  std::vector<Node> wide;
  for (int i = 0; i < 23; ++i) wide.push_back(Root("R" + std::to_string(i), {0.5, 0.5}));
  EXPECT_THROW(ComputeJoint(BayesNet::Create(wide)), CapacityError);
}

TEST(ComputeJointTest, MatchesFactorProduct) {
  auto rng = MakeRng({2024});
  for (int trial = 0; trial < 40; ++trial) {
    const auto net = RandomNet(rng, 2 + rng() % 5);
    const auto table = ComputeJoint(net);
    const auto& names = table.names();
    const auto& states = table.states();
    std::vector<std::size_t> digit(names.size(), 0);
    for (std::size_t cell = 0; cell < table.mass().size(); ++cell) {
      std::size_t rest = cell;
      for (std::size_t v = names.size(); v-- > 0;) {
        digit[v] = rest % states[v].size();
        rest /= states[v].size();
      }
      double product = 1.0;
      for (const auto& node : net.nodes()) {
        std::size_t row = 0;
        for (const auto& p : node.parents) {
          const std::size_t pi = table.IndexOf(p);
          row = row * states[pi].size() + digit[pi];
        }
        product *= node.cpt[row][digit[table.IndexOf(node.name)]];
      }
      EXPECT_NEAR(table.mass()[cell], product, 1e-12);
    }
  }
}

TEST(JointTableTest, ConditionAndCmi) {
  const auto twins = MakeTwinsScenario(0.5);
  const auto joint = ComputeJoint(twins.net);
  const auto given = joint.Condition({{"Z", "identical"}, {"S1", "female"}});
  EXPECT_NEAR(given.Entropy({"S2"}), 0.0, 1e-12);
  EXPECT_THROW(
      joint.Condition({{"Z", "nonsense"}}), DomainError);
  EXPECT_NEAR(joint.ConditionalMutualInformation({"S1"}, {"S2"}, {"Z"}), 0.5,
              1e-12);
}

TEST(LeakageProfileTest, DisconnectedNodeIsZero) {
  const auto net = BayesNet::Create(
      {Root("X", {0.4, 0.6}), Binary("M", {"X"}, {{0.9, 0.1}, {0.2, 0.8}}),
       Root("Lonely", {0.3, 0.7})});
  const auto profile = ComputeLeakageProfile(net, "M");
  ASSERT_EQ(profile.nodes.size(), 2u);
  EXPECT_EQ(profile.nodes[1].node, "Lonely");
  EXPECT_NEAR(profile.nodes[1].mi_sh, 0.0, 1e-12);
  EXPECT_GT(profile.nodes[0].mi_sh, 0.0);
}

TEST(LeakageProfileTest, CopyLeaksFullEntropy) {
  const auto net = BayesNet::Create(
      {Root("X", {0.2, 0.8}), Binary("M", {"X"}, {{1, 0}, {0, 1}})});
  const auto profile = ComputeLeakageProfile(net, "M", std::string("1"));
  const double hx = -(0.2 * std::log2(0.2) + 0.8 * std::log2(0.8));
  EXPECT_NEAR(profile.nodes[0].mi_sh, hx, 1e-12);
  ASSERT_TRUE(profile.nodes[0].posterior_entropy_drop.has_value());
  EXPECT_NEAR(*profile.nodes[0].posterior_entropy_drop, hx, 1e-12);
  EXPECT_THROW(ComputeLeakageProfile(net, "Q"), DomainError);
  EXPECT_THROW(ComputeLeakageProfile(net, "M", std::string("7")), DomainError);
}

TEST(LeakageProfileTest, DSeparatedPairsCarryNothing) {
  // Collider A -> C <- B: A and B are marginally independent.
  const auto collider = BayesNet::Create(
      {Root("A", {0.3, 0.7}), Root("B", {0.6, 0.4}),
       Binary("C", {"A", "B"},
              {{0.9, 0.1}, {0.4, 0.6}, {0.3, 0.7}, {0.05, 0.95}})});
  const auto p = ComputeLeakageProfile(collider, "A");
  EXPECT_EQ(p.nodes[0].node, "B");
  EXPECT_NEAR(p.nodes[0].mi_sh, 0.0, 1e-9);
  EXPECT_GT(p.nodes[1].mi_sh, 1e-6);

  // Conditioning on the collider opens the path.
  const auto joint = ComputeJoint(collider);
  EXPECT_GT(joint.ConditionalMutualInformation({"A"}, {"B"}, {"C"}), 1e-6);

  // Chain A -> B -> C: A independent of C given B.
  const auto chain = BayesNet::Create(
      {Root("A", {0.3, 0.7}), Binary("B", {"A"}, {{0.8, 0.2}, {0.1, 0.9}}),
       Binary("C", {"B"}, {{0.7, 0.3}, {0.25, 0.75}})});
  EXPECT_NEAR(ComputeJoint(chain).ConditionalMutualInformation({"A"}, {"C"},
                                                               {"B"}),
              0.0, 1e-9);
}

TEST(LeakageProfileTest, MiBelowMarginalEntropies) {
  auto rng = MakeRng({77});
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = RandomNet(rng, 2 + rng() % 5);
    const auto joint = ComputeJoint(net);
    for (const auto& m : net.nodes()) {
      for (const auto& n : ComputeLeakageProfile(net, m.name).nodes) {
        EXPECT_GE(n.mi_sh, 0.0);
        EXPECT_LE(n.mi_sh, std::min(joint.Entropy({m.name}),
                                    joint.Entropy({n.node})) +
                               1e-9);
      }
    }
  }
}

TEST(ForkColliderGraphTest, FrozenProfile) {
  const auto net = ForkColliderGraph(42);
  EXPECT_EQ(net.size(), 9u);
  const auto profile = ComputeLeakageProfile(net, "M");
  const std::map<std::string, double> frozen = {
      {"A", 0.00061634478044963678}, {"B", 6.051958946309919e-06},
      {"C", 4.8857269600501886e-05}, {"D", 0.0081803604236682717},
      {"E", 0.025493135843564503},   {"F", 6.6200533129623981e-05},
      {"G", 0.034348291483066049},   {"X", 0.39207561813112374}};
  ASSERT_EQ(profile.nodes.size(), frozen.size());
  for (const auto& n : profile.nodes) {
    EXPECT_NEAR(n.mi_sh, frozen.at(n.node), 1e-9) << n.node;
    EXPECT_GT(n.mi_sh, 0.0) << n.node;
  }
  const auto sorted = SortedByLeakage(profile);
  EXPECT_EQ(sorted.front().node, "X");
  EXPECT_EQ(sorted.back().node, "B");
}

TEST(ForkColliderGraphTest, SeedChangesCpts) {
  EXPECT_NE(nlohmann::json(ForkColliderGraph(42)).dump(),
            nlohmann::json(ForkColliderGraph(43)).dump());
  EXPECT_EQ(nlohmann::json(ForkColliderGraph(42)).dump(),
            nlohmann::json(ForkColliderGraph(42)).dump());
}

TEST(TwinsTest, Report) {
  const auto r = MakeTwinsScenario().report;
  EXPECT_NEAR(r.h_s2_given_s1_identical, 0.0, 1e-12);
  EXPECT_NEAR(r.h_s2_given_s1_fraternal, 1.0, 1e-12);
  EXPECT_NEAR(r.h_s2, 1.0, 1e-12);
  // Enumerated over the 8-state joint.
  EXPECT_NEAR(r.mi_z_s2_given_s1, 0.311278124459, 1e-9);
  EXPECT_NEAR(r.mi_s1_s2_given_z, 0.5, 1e-12);
  EXPECT_NEAR(r.mi_z_s1_s2, 0.5, 1e-12);
  EXPECT_THROW(MakeTwinsScenario(0.0), DomainError);
  EXPECT_THROW(MakeTwinsScenario(1.0), DomainError);
}

TEST(BallotTest, ThreeVoters) {
  const auto sc = MakeBallotScenario(3);
  EXPECT_NEAR(sc.report.mi_t_v1, 0.311278124459, 1e-9);
  ASSERT_EQ(sc.report.posteriors.size(), 4u);
  EXPECT_NEAR(sc.report.posteriors[3].h_v1, 0.0, 1e-12);
  EXPECT_NEAR(sc.report.posteriors[1].p_v1_yes, 1.0 / 3.0, 1e-12);

  // Same number through the generic net route.
  ASSERT_TRUE(sc.net.has_value());
  const auto joint = ComputeJoint(*sc.net);
  EXPECT_NEAR(joint.MutualInformation({"T"}, {"V1"}), sc.report.mi_t_v1,
              1e-12);
}

TEST(BallotTest, ChainRule) {
  for (int n = 2; n <= kMaxVoters; ++n) {
    const auto r = MakeBallotScenario(n).report;
    EXPECT_NEAR(r.expected_posterior_entropy + r.mi_t_v1, 1.0, 1e-9) << n;
  }
}

TEST(BallotTest, Limits) {
  EXPECT_THROW(MakeBallotScenario(1), DomainError);
  EXPECT_THROW(MakeBallotScenario(kMaxVoters + 1), CapacityError);
  EXPECT_FALSE(MakeBallotScenario(18).net.has_value());
  EXPECT_THROW(BallotNet(18), CapacityError);
}

TEST(AttributeFlowsTest, TwinsInduceSiblingContext) {
  const auto net = MakeTwinsScenario().net;
  const std::map<std::string, std::string> owners = {
      {"Z", "twin1"}, {"S1", "twin1"}, {"S2", "twin2"}};
  const std::vector<FlowEvent> log = {
      Explicit("e0.0", 0, "twin1", "friend", "S1"),
      Explicit("e0.1", 0, "twin1", "friend", "Z")};
  const auto induced = AttributeFlows(log, net, owners);
  ASSERT_EQ(induced.size(), 1u);
  EXPECT_EQ(induced[0].implied.sender, "twin2");
  EXPECT_EQ(induced[0].implied.receiver, "friend");
  EXPECT_EQ(induced[0].source.flow_ids,
            (std::vector<std::string>{"e0.0", "e0.1"}));
  EXPECT_NEAR(induced[0].mi_sh, 0.5, 1e-12);

  // Zygosity alone says nothing about the sibling's sex.
  const std::vector<FlowEvent> only_z = {
      Explicit("e0.0", 0, "twin1", "friend", "Z")};
  EXPECT_TRUE(AttributeFlows(only_z, net, owners).empty());
}

TEST(AttributeFlowsTest, DisconnectedMessage) {
  const auto net = BayesNet::Create(
      {Root("A", {0.5, 0.5}), Binary("B", {"A"}, {{0.9, 0.1}, {0.1, 0.9}}),
       Root("Lonely", {0.5, 0.5})});
  const std::vector<FlowEvent> log = {
      Explicit("e0.0", 0, "loner", "r", "Lonely")};
  EXPECT_TRUE(AttributeFlows(log, net,
                             {{"A", "x"}, {"B", "y"}, {"Lonely", "loner"}})
                  .empty());
}

TEST(AttributeFlowsTest, BallotTallyImplicatesEveryVoter) {
  const int n = 5;
  const auto net = BallotNet(n);
  std::map<std::string, std::string> owners = {{"T", "teller"}};
  for (int i = 1; i <= n; ++i) {
    owners["V" + std::to_string(i)] = "voter" + std::to_string(i);
  }
  const std::vector<FlowEvent> log = {
      Explicit("e0.0", 0, "teller", "press", "T")};
  const auto induced = AttributeFlows(log, net, owners);
  ASSERT_EQ(induced.size(), static_cast<std::size_t>(n));
  for (const auto& c : induced) {
    EXPECT_NEAR(c.mi_sh, induced[0].mi_sh, 1e-12);
    EXPECT_GT(c.mi_sh, 1e-6);
  }
}

TEST(AttributeFlowsTest, NothingWhenSenderOwnsEverything) {
  const auto net = MakeTwinsScenario().net;
  const std::vector<FlowEvent> log = {
      Explicit("e0.0", 0, "twin1", "friend", "S1"),
      Explicit("e0.1", 0, "twin1", "friend", "Z")};
  EXPECT_TRUE(
      AttributeFlows(log, net, {{"Z", "twin1"}, {"S1", "twin1"}, {"S2", "twin1"}})
          .empty());
}

TEST(AttributeFlowsTest, Errors) {
  const auto net = MakeTwinsScenario().net;
  const std::map<std::string, std::string> owners = {
      {"Z", "twin1"}, {"S1", "twin1"}, {"S2", "twin2"}};
  EXPECT_THROW(AttributeFlows(std::vector<FlowEvent>{Explicit(
                                  "e0.0", 0, "twin1", "r", "Q")},
                              net, owners),
               DomainError);
  EXPECT_THROW(AttributeFlows(std::vector<FlowEvent>{Explicit(
                                  "e0.0", 0, "stranger", "r", "Z")},
                              net, owners),
               DomainError);
  EXPECT_THROW(AttributeFlows(std::vector<FlowEvent>{}, net, {{"Q", "x"}}),
               DomainError);
}

TEST(BayesNetJsonTest, RoundTrip) {
  const auto net = ForkColliderGraph(42);
  const auto j = nlohmann::json(net);
  EXPECT_EQ(nlohmann::json(BayesNetFromJson(j)).dump(), j.dump());

  // CPT rows may be listed in any order.
  const auto shuffled = nlohmann::json::parse(R"({"nodes":[
    {"name":"A","states":["0","1"],"parents":[],"cpt":[{"given":[],"probs":[0.5,0.5]}]},
    {"name":"B","states":["0","1"],"parents":["A"],"cpt":[
      {"given":["1"],"probs":[0.2,0.8]},{"given":["0"],"probs":[0.9,0.1]}]}]})");
  const auto parsed = BayesNetFromJson(shuffled);
  EXPECT_EQ(parsed.node("B").cpt[0], (std::vector<double>{0.9, 0.1}));

  auto missing = shuffled;
  missing["nodes"][1]["cpt"].erase(0);
  EXPECT_THROW(BayesNetFromJson(missing), DomainError);
}

}  // namespace
}  // namespace infoflow::causalnet
