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

#ifndef INFOFLOW_CAUSALNET_H_
#define INFOFLOW_CAUSALNET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infoflow/flow.h"
#include "infoflow/infocore.h"
#include "json.hpp"

namespace infoflow::causalnet {

// Largest joint state space enumerated exactly.
inline constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 22;

// Categorical node. `cpt` holds one distribution over `states` per parent
// assignment, ordered mixed-radix with the first parent most significant.
struct Node {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> cpt;
};

class BayesNet {
 public:
  // Validates names, parent references, CPT shape and stochasticity, and
  // acyclicity.
  static BayesNet Create(std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::size_t>& topological_order() const { return order_; }
  const std::vector<std::size_t>& parent_indices(std::size_t node) const {
    return parent_idx_[node];
  }

  bool Contains(const std::string& name) const;
  std::size_t IndexOf(const std::string& name) const;
  const Node& node(const std::string& name) const {
    return nodes_[IndexOf(name)];
  }

  // Product of state counts, saturating at UINT64_MAX.
  std::uint64_t StateSpaceSize() const;

 private:
  BayesNet() = default;

  std::vector<Node> nodes_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> parent_idx_;
};

// Dense joint mass over a list of categorical variables, mixed-radix with
// the first variable most significant.
class JointTable {
 public:
  JointTable(std::vector<std::string> names,
             std::vector<std::vector<std::string>> states,
             std::vector<double> mass);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<std::string>>& states() const {
    return states_;
  }
  const std::vector<double>& mass() const { return mass_; }
  std::size_t IndexOf(const std::string& name) const;
  double Total() const;

  // Mass over the listed variables, mixed-radix in the given order.
  std::vector<double> Marginal(const std::vector<std::string>& vars) const;
  infocore::Dist MarginalDist(const std::string& var) const;
  // Joint of two variable groups; composite labels join states with ','.
  infocore::Joint GroupJoint(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) const;

  double Entropy(const std::vector<std::string>& vars) const;
  double MutualInformation(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) const;
  // I(A; B | C) = sum_c p(c) I(A; B | C = c).
  double ConditionalMutualInformation(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b,
                                      const std::vector<std::string>& c) const;

  // Restricts to cells matching `evidence` (variable -> state) and
  // renormalises. Throws DomainError if the evidence has zero probability.
  JointTable Condition(const std::map<std::string, std::string>& evidence) const;

 private:
  std::vector<std::size_t> Positions(const std::vector<std::string>& vars) const;

  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> states_;
  std::vector<std::size_t> strides_;
  std::vector<double> mass_;
};

// Exact joint by forward expansion in topological order. Throws
// CapacityError when the state space exceeds `cap`.
JointTable ComputeJoint(const BayesNet& net, std::uint64_t cap = kMaxStates);

struct NodeLeakage {
  std::string node;
  double mi_sh = 0.0;
  // H(V) - H(V | M = observed); present only when a message value is given.
  std::optional<double> posterior_entropy_drop;
};

struct LeakageProfile {
  std::string message_node;
  std::optional<std::string> observed;
  std::vector<NodeLeakage> nodes;  // every node but the message, net order
};

LeakageProfile ComputeLeakageProfile(
    const BayesNet& net, const std::string& message,
    const std::optional<std::string>& observed = std::nullopt);

// Same profile, but entries ordered by decreasing MI (ties by net order).
std::vector<NodeLeakage> SortedByLeakage(const LeakageProfile& profile);

// --- Scenarios ---------------------------------------------------------------

// A-G, X, M causal graph with a fork at D (A -> D -> E with A -> E) and a
// collider at X (E -> X <- G). All nodes binary; CPT rows drawn from a flat
// Dirichlet seeded by `seed`.
BayesNet ForkColliderGraph(std::uint64_t seed = 42);

struct TwinsReport {
  double zygosity_prior = 0.5;  // P(Z = identical)
  double h_s2 = 0.0;
  double h_s2_given_s1_identical = 0.0;
  double h_s2_given_s1_fraternal = 0.0;
  double mi_z_s2_given_s1 = 0.0;
  double mi_s1_s2_given_z = 0.0;
  double mi_z_s1_s2 = 0.0;  // I(Z, S1; S2)
};

struct TwinsScenario {
  BayesNet net;
  TwinsReport report;
};

// Z (zygosity) -> S2 <- S1. S2 copies S1 for identical twins and is an
// independent fair draw for fraternal twins.
TwinsScenario MakeTwinsScenario(double zygosity_prior = 0.5);

struct TallyPosterior {
  int tally = 0;
  double p_tally = 0.0;
  double p_v1_yes = 0.0;
  double h_v1 = 0.0;
};

struct BallotReport {
  int voters = 0;
  double mi_t_v1 = 0.0;
  std::vector<TallyPosterior> posteriors;
  // sum_t P(t) H(V1 | t); with mi_t_v1 this adds up to H(V1) = 1.
  double expected_posterior_entropy = 0.0;
};

struct BallotScenario {
  // Absent when the net's joint would exceed kMaxStates (n > 17).
  std::optional<BayesNet> net;
  BallotReport report;
};

inline constexpr int kMaxVoters = 20;

// n iid fair binary voters V1..Vn and their released tally T. The report is
// exact, from enumerating all 2^n ballots. Throws CapacityError for
// n > kMaxVoters and DomainError for n < 2.
BallotScenario MakeBallotScenario(int voters);

// Tally net alone; throws CapacityError if its joint exceeds kMaxStates.
BayesNet BallotNet(int voters);

// --- Flow attribution --------------------------------------------------------

struct AttributionOptions {
  double threshold_sh = 1e-6;
  std::int64_t window = 1;
};

// An explicit context and the implicit context it induces.
struct InducedContext {
  society::Context source;
  society::Context implied;
  std::vector<std::string> nodes;  // nodes owned by implied.sender
  double mi_sh = 0.0;               // I(message nodes; owned nodes)
  std::vector<double> node_mi_sh;   // I(message nodes; node), per node
};

// Bundles the explicit events into contexts and, for each context, measures
// the mutual information between its message nodes and the nodes owned by
// every entity other than the sender. Each entity whose information exceeds
// the threshold becomes the implicit sender of an induced context.
std::vector<InducedContext> AttributeFlows(
    std::span<const society::FlowEvent> events, const BayesNet& net,
    const std::map<std::string, std::string>& ownership,
    const AttributionOptions& options = {});

void to_json(nlohmann::json& j, const BayesNet& net);
BayesNet BayesNetFromJson(const nlohmann::json& j);
void to_json(nlohmann::json& j, const LeakageProfile& p);
void to_json(nlohmann::json& j, const NodeLeakage& n);
void to_json(nlohmann::json& j, const TwinsReport& r);
void to_json(nlohmann::json& j, const BallotReport& r);
void to_json(nlohmann::json& j, const InducedContext& c);

}  // namespace infoflow::causalnet

#endif  // INFOFLOW_CAUSALNET_H_
