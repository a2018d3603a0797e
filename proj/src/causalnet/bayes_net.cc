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
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/causalnet.h"
#include "infoflow/errors.h"

namespace infoflow::causalnet {

namespace {

std::uint64_t SaturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::string JoinStates(const std::vector<std::string>& states) {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i > 0) out += ',';
    out += states[i];
  }
  return out;
}

}  // namespace

BayesNet BayesNet::Create(std::vector<Node> nodes) {
  if (nodes.empty()) throw DomainError("BayesNet: no nodes");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.name.empty()) throw DomainError("BayesNet: node with empty name");
    if (!index.emplace(n.name, i).second) {
      throw DomainError("BayesNet: duplicate node '" + n.name + "'");
    }
    if (n.states.empty()) {
      throw DomainError("BayesNet: node '" + n.name + "' has no states");
    }
    std::set<std::string> unique(n.states.begin(), n.states.end());
    if (unique.size() != n.states.size()) {
      throw DomainError("BayesNet: node '" + n.name + "' repeats a state");
    }
  }

  BayesNet net;
  net.parent_idx_.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    std::uint64_t rows = 1;
    std::set<std::string> seen;
    for (const auto& p : n.parents) {
      auto it = index.find(p);
      if (it == index.end()) {
        throw DomainError("BayesNet: node '" + n.name +
                          "' has unknown parent '" + p + "'");
      }
      if (!seen.insert(p).second || p == n.name) {
        throw DomainError("BayesNet: node '" + n.name +
                          "' lists parent '" + p + "' twice or itself");
      }
      net.parent_idx_[i].push_back(it->second);
      rows = SaturatingMul(rows, nodes[it->second].states.size());
    }
    if (rows != n.cpt.size()) {
      throw DomainError("BayesNet: node '" + n.name + "' needs " +
                        std::to_string(rows) + " CPT rows, got " +
                        std::to_string(n.cpt.size()));
    }
    for (const auto& row : n.cpt) {
      if (row.size() != n.states.size()) {
        throw DomainError("BayesNet: CPT row of '" + n.name +
                          "' has the wrong width");
      }
      double total = 0.0;
      for (double p : row) {
        if (!std::isfinite(p) || p < 0.0) {
          throw DomainError("BayesNet: CPT of '" + n.name +
                            "' has a negative or non-finite entry");
        }
        total += p;
      }
      if (std::abs(total - 1.0) > infocore::kProbTolerance) {
        throw DomainError("BayesNet: CPT row of '" + n.name + "' sums to " +
                          std::to_string(total));
      }
    }
  }

  // Kahn's algorithm; ties broken by declaration order for a stable order.
  std::vector<std::size_t> indegree(nodes.size(), 0);
  std::vector<std::vector<std::size_t>> children(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    indegree[i] = net.parent_idx_[i].size();
    for (std::size_t p : net.parent_idx_[i]) children[p].push_back(i);
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    net.order_.push_back(v);
    for (std::size_t c : children[v]) {
      if (--indegree[c] == 0) ready.insert(c);
    }
  }
  if (net.order_.size() != nodes.size()) {
    throw DomainError("BayesNet: graph has a cycle");
  }
  net.nodes_ = std::move(nodes);
  return net;
}

bool BayesNet::Contains(const std::string& name) const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [&](const Node& n) { return n.name == name; });
}

std::size_t BayesNet::IndexOf(const std::string& name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  throw DomainError("BayesNet: unknown node '" + name + "'");
}

std::uint64_t BayesNet::StateSpaceSize() const {
  std::uint64_t size = 1;
  for (const auto& n : nodes_) size = SaturatingMul(size, n.states.size());
  return size;
}

JointTable::JointTable(std::vector<std::string> names,
                       std::vector<std::vector<std::string>> states,
                       std::vector<double> mass)
    : names_(std::move(names)),
      states_(std::move(states)),
      strides_(names_.size()),
      mass_(std::move(mass)) {
  std::size_t stride = 1;
  for (std::size_t i = names_.size(); i-- > 0;) {
    strides_[i] = stride;
    stride *= states_[i].size();
  }
  if (stride != mass_.size()) {
    throw DomainError("JointTable: mass size does not match state space");
  }
}

std::size_t JointTable::IndexOf(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw DomainError("JointTable: unknown variable '" + name + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::size_t> JointTable::Positions(
    const std::vector<std::string>& vars) const {
  std::vector<std::size_t> pos;
  pos.reserve(vars.size());
  for (const auto& v : vars) pos.push_back(IndexOf(v));
  return pos;
}

double JointTable::Total() const {
  double total = 0.0;
  for (double m : mass_) total += m;
  return total;
}

std::vector<double> JointTable::Marginal(
    const std::vector<std::string>& vars) const {
  const auto pos = Positions(vars);
  std::size_t size = 1;
  for (std::size_t p : pos) size *= states_[p].size();
  std::vector<double> out(size, 0.0);
  for (std::size_t cell = 0; cell < mass_.size(); ++cell) {
    const double m = mass_[cell];
    if (m == 0.0) continue;
    std::size_t sub = 0;
    for (std::size_t p : pos) {
      sub = sub * states_[p].size() + (cell / strides_[p]) % states_[p].size();
    }
    out[sub] += m;
  }
  return out;
}

infocore::Dist JointTable::MarginalDist(const std::string& var) const {
  auto probs = Marginal({var});
  // Renormalise away summation drift so Dist's 1e-9 check holds.
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return infocore::Dist::Create(states_[IndexOf(var)], std::move(probs));
}

infocore::Joint JointTable::GroupJoint(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) const {
  auto labels = [&](const std::vector<std::string>& vars) {
    std::vector<std::string> out{""};
    for (std::size_t p : Positions(vars)) {
      std::vector<std::string> next;
      for (const auto& prefix : out) {
        for (const auto& s : states_[p]) {
          next.push_back(prefix.empty() ? s : prefix + "," + s);
        }
      }
      out = std::move(next);
    }
    return out;
  };
  std::vector<std::string> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const auto flat = Marginal(both);
  auto xs = labels(a);
  auto ys = labels(b);
  const double total = Total();
  std::vector<std::vector<double>> mass(xs.size(),
                                        std::vector<double>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      mass[i][j] = flat[i * ys.size() + j] / total;
    }
  }
  return infocore::Joint::Create(std::move(xs), std::move(ys),
                                 std::move(mass));
}

double JointTable::Entropy(const std::vector<std::string>& vars) const {
  auto probs = Marginal(vars);
  const double total = Total();
  for (double& p : probs) p /= total;
  return infocore::Entropy(probs);
}

double JointTable::MutualInformation(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) const {
  return infocore::MutualInformation(GroupJoint(a, b));
}

double JointTable::ConditionalMutualInformation(
    const std::vector<std::string>& a, const std::vector<std::string>& b,
    const std::vector<std::string>& c) const {
  if (c.empty()) return MutualInformation(a, b);
  const auto pc = Marginal(c);
  const double total = Total();
  const auto pos = Positions(c);
  double mi = 0.0;
  for (std::size_t idx = 0; idx < pc.size(); ++idx) {
    if (pc[idx] <= 0.0) continue;
    std::map<std::string, std::string> evidence;
    std::size_t rest = idx;
    for (std::size_t k = pos.size(); k-- > 0;) {
      const auto& st = states_[pos[k]];
      evidence[names_[pos[k]]] = st[rest % st.size()];
      rest /= st.size();
    }
    mi += pc[idx] / total * Condition(evidence).MutualInformation(a, b);
  }
  return mi;
}

JointTable JointTable::Condition(
    const std::map<std::string, std::string>& evidence) const {
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  for (const auto& [var, state] : evidence) {
    const std::size_t p = IndexOf(var);
    const auto& st = states_[p];
    auto it = std::find(st.begin(), st.end(), state);
    if (it == st.end()) {
      throw DomainError("JointTable: '" + var + "' has no state '" + state +
                        "'");
    }
    fixed.emplace_back(p, static_cast<std::size_t>(it - st.begin()));
  }
  std::vector<double> mass(mass_.size(), 0.0);
  double total = 0.0;
  for (std::size_t cell = 0; cell < mass_.size(); ++cell) {
    bool match = true;
    for (auto [p, s] : fixed) {
      if ((cell / strides_[p]) % states_[p].size() != s) {
        match = false;
        break;
      }
    }
    if (match) {
      mass[cell] = mass_[cell];
      total += mass_[cell];
    }
  }
  if (total <= 0.0) {
    throw DomainError("JointTable: conditioning on zero-probability evidence");
  }
  for (double& m : mass) m /= total;
  return JointTable(names_, states_, std::move(mass));
}

JointTable ComputeJoint(const BayesNet& net, std::uint64_t cap) {
  const std::uint64_t size = net.StateSpaceSize();
  if (size > cap) throw CapacityError("joint enumeration", size, cap);

  const auto& nodes = net.nodes();
  const auto& order = net.topological_order();
  const std::size_t n = nodes.size();

  // position[v]: where node v sits in the expansion order.
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  std::vector<double> table{1.0};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = order[k];
    const Node& node = nodes[v];
    const std::size_t card = node.states.size();
    // Strides of the k variables already expanded (last is least significant).
    std::vector<std::size_t> stride(k);
    std::size_t s = 1;
    for (std::size_t q = k; q-- > 0;) {
      stride[q] = s;
      s *= nodes[order[q]].states.size();
    }
    const auto& parents = net.parent_indices(v);
    std::vector<double> next(table.size() * card, 0.0);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      if (table[idx] == 0.0) continue;
      std::size_t row = 0;
      for (std::size_t p : parents) {
        const std::size_t pc = nodes[p].states.size();
        row = row * pc + (idx / stride[position[p]]) % pc;
      }
      const auto& dist = node.cpt[row];
      for (std::size_t st = 0; st < card; ++st) {
        next[idx * card + st] = table[idx] * dist[st];
      }
    }
    table = std::move(next);
  }

  // Re-index from expansion order to declaration order.
  std::vector<std::size_t> out_stride(n);
  std::size_t s = 1;
  for (std::size_t i = n; i-- > 0;) {
    out_stride[i] = s;
    s *= nodes[i].states.size();
  }
  std::vector<double> mass(table.size(), 0.0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::size_t rest = idx;
    std::size_t out = 0;
    for (std::size_t k = n; k-- > 0;) {
      const std::size_t v = order[k];
      const std::size_t card = nodes[v].states.size();
      out += (rest % card) * out_stride[v];
      rest /= card;
    }
    mass[out] = table[idx];
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::string>> states;
  for (const auto& node : nodes) {
    names.push_back(node.name);
    states.push_back(node.states);
  }
  return JointTable(std::move(names), std::move(states), std::move(mass));
}

void to_json(nlohmann::json& j, const BayesNet& net) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t v = 0; v < net.size(); ++v) {
    const Node& node = net.nodes()[v];
    nlohmann::json cpt = nlohmann::json::array();
    const auto& parents = net.parent_indices(v);
    for (std::size_t row = 0; row < node.cpt.size(); ++row) {
      std::vector<std::string> given(parents.size());
      std::size_t rest = row;
      for (std::size_t k = parents.size(); k-- > 0;) {
        const auto& st = net.nodes()[parents[k]].states;
        given[k] = st[rest % st.size()];
        rest /= st.size();
      }
      cpt.push_back({{"given", given}, {"probs", node.cpt[row]}});
    }
    nodes.push_back({{"name", node.name},
                     {"states", node.states},
                     {"parents", node.parents},
                     {"cpt", cpt}});
  }
  j = {{"nodes", nodes}};
}

BayesNet BayesNetFromJson(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("nodes")) {
      throw DomainError("net JSON: missing 'nodes'");
    }
    std::vector<Node> nodes;
    std::map<std::string, std::vector<std::string>> states_of;
    for (const auto& jn : j.at("nodes")) {
      Node node;
      node.name = jn.at("name").get<std::string>();
      node.states = jn.at("states").get<std::vector<std::string>>();
      node.parents = jn.value("parents", std::vector<std::string>{});
      states_of[node.name] = node.states;
      nodes.push_back(std::move(node));
    }
    // CPT rows are keyed by parent-state tuples; place each at its
    // mixed-radix slot so files may list rows in any order.
    std::size_t i = 0;
    for (const auto& jn : j.at("nodes")) {
      Node& node = nodes[i++];
      std::size_t rows = 1;
      for (const auto& p : node.parents) {
        auto it = states_of.find(p);
        if (it == states_of.end()) {
          throw DomainError("net JSON: node '" + node.name +
                            "' has unknown parent '" + p + "'");
        }
        rows *= it->second.size();
      }
      std::vector<std::vector<double>> cpt(rows);
      std::vector<bool> filled(rows, false);
      for (const auto& jr : jn.at("cpt")) {
        const auto given =
            jr.value("given", std::vector<std::string>{});
        if (given.size() != node.parents.size()) {
          throw DomainError("net JSON: CPT row of '" + node.name +
                            "' has the wrong number of parent states");
        }
        std::size_t row = 0;
        for (std::size_t k = 0; k < given.size(); ++k) {
          const auto& st = states_of[node.parents[k]];
          auto it = std::find(st.begin(), st.end(), given[k]);
          if (it == st.end()) {
            throw DomainError("net JSON: '" + given[k] +
                              "' is not a state of '" + node.parents[k] + "'");
          }
          row = row * st.size() + static_cast<std::size_t>(it - st.begin());
        }
        if (filled[row]) {
          throw DomainError("net JSON: duplicate CPT row (" +
                            JoinStates(given) + ") for '" + node.name + "'");
        }
        filled[row] = true;
        cpt[row] = jr.at("probs").get<std::vector<double>>();
      }
      if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
        throw DomainError("net JSON: CPT of '" + node.name + "' is incomplete");
      }
      node.cpt = std::move(cpt);
    }
    return BayesNet::Create(std::move(nodes));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("net JSON: ") + e.what());
  }
}

}  // namespace infoflow::causalnet
