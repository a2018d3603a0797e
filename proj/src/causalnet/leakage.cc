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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/causalnet.h"
#include "infoflow/errors.h"

namespace infoflow::causalnet {

LeakageProfile ComputeLeakageProfile(const BayesNet& net,
                                     const std::string& message,
                                     const std::optional<std::string>& observed) {
  if (!net.Contains(message)) {
    throw DomainError("leakage: unknown message node '" + message + "'");
  }
  const JointTable joint = ComputeJoint(net);
  std::optional<JointTable> posterior;
  if (observed) posterior = joint.Condition({{message, *observed}});

  LeakageProfile profile{message, observed, {}};
  for (const auto& node : net.nodes()) {
    if (node.name == message) continue;
    NodeLeakage entry{node.name, joint.MutualInformation({message}, {node.name}),
                      std::nullopt};
    if (posterior) {
      entry.posterior_entropy_drop =
          joint.Entropy({node.name}) - posterior->Entropy({node.name});
    }
    profile.nodes.push_back(std::move(entry));
  }
  return profile;
}

std::vector<NodeLeakage> SortedByLeakage(const LeakageProfile& profile) {
  auto sorted = profile.nodes;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const NodeLeakage& a, const NodeLeakage& b) {
                     return a.mi_sh > b.mi_sh;
                   });
  return sorted;
}

std::vector<InducedContext> AttributeFlows(
    std::span<const society::FlowEvent> events, const BayesNet& net,
    const std::map<std::string, std::string>& ownership,
    const AttributionOptions& options) {
  std::set<std::string> entities;
  for (const auto& [node, owner] : ownership) {
    if (!net.Contains(node)) {
      throw DomainError("attribute: ownership names unknown node '" + node +
                        "'");
    }
    if (owner.empty()) {
      throw DomainError("attribute: node '" + node + "' has an empty owner");
    }
    entities.insert(owner);
  }

  std::vector<society::FlowEvent> explicit_events;
  for (const auto& e : events) {
    if (e.kind != society::FlowKind::kExplicit) continue;
    if (!net.Contains(e.datum)) {
      throw DomainError("attribute: message '" + e.datum +
                        "' is not a node of the net");
    }
    if (!entities.contains(e.sender)) {
      throw DomainError("attribute: unknown sender entity '" + e.sender + "'");
    }
    explicit_events.push_back(e);
  }
  if (explicit_events.empty()) return {};

  std::map<std::string, const society::FlowEvent*> by_id;
  for (const auto& e : explicit_events) by_id[e.id] = &e;

  // Owners in order of their first node, so output order is stable.
  std::vector<std::string> owners;
  std::map<std::string, std::vector<std::string>> owned;
  for (const auto& node : net.nodes()) {
    auto it = ownership.find(node.name);
    if (it == ownership.end()) continue;
    if (!owned.contains(it->second)) owners.push_back(it->second);
    owned[it->second].push_back(node.name);
  }

  const JointTable joint = ComputeJoint(net);
  std::vector<InducedContext> induced;
  for (const auto& ctx :
       society::BundleContexts(explicit_events, options.window)) {
    std::vector<std::string> message;
    for (const auto& id : ctx.flow_ids) {
      const std::string& datum = by_id.at(id)->datum;
      if (std::find(message.begin(), message.end(), datum) == message.end()) {
        message.push_back(datum);
      }
    }
    // Keep the message in net order so composite labels are canonical.
    std::sort(message.begin(), message.end(),
              [&](const std::string& a, const std::string& b) {
                return net.IndexOf(a) < net.IndexOf(b);
              });
    for (const auto& entity : owners) {
      if (entity == ctx.sender) continue;
      const auto& nodes = owned.at(entity);
      const double mi = joint.MutualInformation(message, nodes);
      if (mi <= options.threshold_sh) continue;
      society::Context implied;
      implied.id = ctx.id + "~" + entity;
      implied.t = ctx.t;
      implied.sender = entity;
      implied.receiver = ctx.receiver;
      std::vector<double> node_mi;
      for (const auto& n : nodes) {
        implied.flow_ids.push_back(implied.id + "/" + n);
        node_mi.push_back(joint.MutualInformation(message, {n}));
      }
      induced.push_back({ctx, std::move(implied), nodes, mi, std::move(node_mi)});
    }
  }
  return induced;
}

void to_json(nlohmann::json& j, const NodeLeakage& n) {
  j = {{"node", n.node}, {"mi_sh", n.mi_sh}};
  if (n.posterior_entropy_drop) {
    j["posterior_entropy_drop"] = *n.posterior_entropy_drop;
  }
}

void to_json(nlohmann::json& j, const LeakageProfile& p) {
  j = {{"message_node", p.message_node},
       {"observed", p.observed ? nlohmann::json(*p.observed)
                               : nlohmann::json(nullptr)},
       {"nodes", p.nodes}};
}

void to_json(nlohmann::json& j, const InducedContext& c) {
  j = {{"source", c.source},
       {"implied", c.implied},
       {"nodes", c.nodes},
       {"mi_sh", c.mi_sh},
       {"node_mi_sh", c.node_mi_sh}};
}

}  // namespace infoflow::causalnet
