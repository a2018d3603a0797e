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
#include <initializer_list>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/errors.h"
#include "infoflow/society.h"

namespace infoflow::society {

namespace {

using nlohmann::json;

void CheckKeys(const json& j, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!j.is_object()) throw DomainError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; })) {
      throw DomainError(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T Required(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) {
    throw DomainError(where + ": missing key '" + key + "'");
  }
  return j.at(key).get<T>();
}

Datum ParseDatum(const json& j, const std::string& holder) {
  const std::string where = "datum of '" + holder + "'";
  CheckKeys(j, {"id", "value", "owner", "governance", "domain_size", "rr_eps"},
            where);
  Datum d;
  d.id = Required<std::string>(j, "id", where);
  d.value = j.value("value", std::string{});
  d.owner = j.value("owner", holder);
  d.governance = GovernanceFromString(j.value("governance", std::string("conjunct")));
  d.domain_size = j.value("domain_size", std::uint64_t{2});
  if (j.contains("rr_eps")) d.rr_eps = j.at("rr_eps").get<double>();
  return d;
}

Society ParseSociety(const json& j) {
  Society s;
  for (const auto& je : Required<json>(j, "entities", "scenario")) {
    CheckKeys(je, {"id", "data"}, "entity");
    Entity e;
    e.id = Required<std::string>(je, "id", "entity");
    for (const auto& jd : je.value("data", json::array())) {
      Datum d = ParseDatum(jd, e.id);
      if (e.data.contains(d.id)) {
        throw DomainError("entity '" + e.id + "': duplicate datum '" + d.id +
                          "'");
      }
      e.data.emplace(d.id, std::move(d));
    }
    s.entities.push_back(std::move(e));
  }
  for (const auto& jt : j.value("trust", json::array())) {
    CheckKeys(jt, {"from", "to", "value"}, "trust");
    s.factors.trust[{Required<std::string>(jt, "from", "trust"),
                     Required<std::string>(jt, "to", "trust")}] =
        Required<double>(jt, "value", "trust");
  }
  for (const auto& ji : j.value("incentives", json::array())) {
    CheckKeys(ji, {"entity", "datum", "value"}, "incentive");
    s.factors.incentives[{Required<std::string>(ji, "entity", "incentive"),
                          Required<std::string>(ji, "datum", "incentive")}] =
        Required<double>(ji, "value", "incentive");
  }
  const json factors = j.value("factors", json::object());
  for (const auto& [name, value] : factors.items()) {
    s.factors.extra[name] = value.get<double>();
  }
  if (j.contains("logistic")) {
    const auto& jl = j.at("logistic");
    CheckKeys(jl, {"alpha", "beta", "gamma"}, "logistic");
    s.params.alpha = jl.value("alpha", s.params.alpha);
    s.params.beta = jl.value("beta", s.params.beta);
    s.params.gamma = jl.value("gamma", s.params.gamma);
  }
  for (const auto& jc : j.value("implicit_channels", json::array())) {
    CheckKeys(jc, {"observer", "subject", "datum", "p"}, "implicit channel");
    s.implicit_channels.push_back(
        {Required<std::string>(jc, "observer", "implicit channel"),
         Required<std::string>(jc, "subject", "implicit channel"),
         Required<std::string>(jc, "datum", "implicit channel"),
         Required<double>(jc, "p", "implicit channel")});
  }
  const json budgets = j.value("budgets", json::object());
  for (const auto& [datum, cap] : budgets.items()) {
    s.ledger.SetBudget(datum, cap.get<double>());
  }
  Validate(s);
  return s;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ToString(Governance g) {
  switch (g) {
    case Governance::kConjunct:
      return "conjunct";
    case Governance::kDelegated:
      return "delegated";
    case Governance::kDistributedShard:
      return "distributed-shard";
    case Governance::kDistributedShare:
      return "distributed-share";
    case Governance::kDistributedCopy:
      return "distributed-copy";
  }
  return "conjunct";
}

Governance GovernanceFromString(const std::string& s) {
  for (Governance g :
       {Governance::kConjunct, Governance::kDelegated,
        Governance::kDistributedShard, Governance::kDistributedShare,
        Governance::kDistributedCopy}) {
    if (ToString(g) == s) return g;
  }
  throw DomainError("unknown governance tag '" + s + "'");
}

Scenario ScenarioFromJson(const json& j) {
  try {
    CheckKeys(j,
              {"seed", "ticks", "window", "entities", "trust", "incentives",
               "factors", "logistic", "implicit_channels", "budgets",
               "attribution"},
              "scenario");
    Scenario sc;
    sc.society = ParseSociety(j);
    sc.seed = j.value("seed", std::uint64_t{0});
    sc.ticks = j.value("ticks", std::int64_t{1});
    sc.window = j.value("window", std::int64_t{1});
    if (sc.ticks < 0) throw DomainError("scenario: negative tick count");
    if (sc.window < 1) throw DomainError("scenario: window must be >= 1");
    if (j.contains("attribution")) {
      const auto& ja = j.at("attribution");
      CheckKeys(ja, {"net", "ownership", "threshold", "window"}, "attribution");
      Attribution a{causalnet::BayesNetFromJson(
                        Required<json>(ja, "net", "attribution")),
                    Required<std::map<std::string, std::string>>(
                        ja, "ownership", "attribution"),
                    {}};
      a.options.threshold_sh = ja.value("threshold", a.options.threshold_sh);
      a.options.window = ja.value("window", sc.window);
      sc.attribution = std::move(a);
    }
    return sc;
  } catch (const json::exception& e) {
    throw DomainError(std::string("scenario: ") + e.what());
  }
}

ScenarioResult RunScenario(const Scenario& scenario) {
  RunResult run = Simulate(scenario.society, scenario.seed, scenario.ticks);
  ScenarioResult result;
  result.events = std::move(run.events);
  result.stops = std::move(run.stops);
  Ledger ledger = run.society.ledger;

  if (scenario.attribution) {
    const auto& a = *scenario.attribution;
    result.induced =
        causalnet::AttributeFlows(result.events, a.net, a.ownership, a.options);
    for (const auto& ic : result.induced) {
      for (std::size_t k = 0; k < ic.nodes.size(); ++k) {
        FlowEvent e;
        e.id = ic.implied.flow_ids[k];
        e.t = ic.implied.t;
        e.sender = ic.implied.sender;
        e.receiver = ic.implied.receiver;
        e.datum = ic.nodes[k];
        e.measure = {ic.node_mi_sh[k], 1, 1};
        e.kind = FlowKind::kImplicit;
        e.context_id = ic.implied.id;
        ValidateEvent(e);
        ledger.Record(e);
        result.events.push_back(std::move(e));
      }
    }
    std::stable_sort(result.events.begin(), result.events.end(),
                     [](const FlowEvent& x, const FlowEvent& y) {
                       return x.t < y.t;
                     });
  }
  result.contexts = BundleContexts(result.events, scenario.window);
  result.ledger = MakeLedgerReport(ledger);
  return result;
}

void WriteEventsJsonl(std::ostream& out, const std::vector<FlowEvent>& events) {
  for (const auto& e : events) out << json(e).dump() << '\n';
}

void WriteEventsCsv(std::ostream& out, const std::vector<FlowEvent>& events) {
  out << "id,t,sender,receiver,datum,kind,context_id,selective_sh,logons,"
         "metrons\n";
  for (const auto& e : events) {
    out << CsvField(e.id) << ',' << e.t << ',' << CsvField(e.sender) << ','
        << CsvField(e.receiver) << ',' << CsvField(e.datum) << ','
        << ToString(e.kind) << ',' << CsvField(e.context_id) << ','
        << json(e.measure.selective_sh).dump() << ',' << e.measure.logons
        << ',' << e.measure.metrons << '\n';
  }
}

void to_json(json& j, const BudgetStop& s) {
  j = {{"t", s.t},
       {"sender", s.sender},
       {"receiver", s.receiver},
       {"datum", s.datum},
       {"requested_sh", s.requested_sh},
       {"cumulative_sh", s.cumulative_sh},
       {"budget_sh", s.budget_sh}};
}

void to_json(json& j, const LedgerReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(
        {{"sender", row.sender},
         {"receiver", row.receiver},
         {"datum", row.datum},
         {"cumulative_sh", row.cumulative_sh},
         {"implicit_sh", row.implicit_sh},
         {"budget_sh", row.budget_sh ? json(*row.budget_sh) : json(nullptr)},
         {"headroom_sh",
          row.headroom_sh ? json(*row.headroom_sh) : json(nullptr)}});
  }
  json receivers = json::array();
  for (const auto& t : r.receivers) {
    receivers.push_back({{"receiver", t.receiver},
                         {"explicit_sh", t.explicit_sh},
                         {"implicit_sh", t.implicit_sh}});
  }
  j = {{"rows", rows}, {"receivers", receivers}};
}

void to_json(json& j, const ScenarioResult& r) {
  j = {{"events", r.events},
       {"budget_stops", r.stops},
       {"contexts", r.contexts},
       {"induced_contexts", r.induced},
       {"ledger", r.ledger}};
}

}  // namespace infoflow::society
