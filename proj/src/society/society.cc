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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/errors.h"
#include "infoflow/mechanisms.h"
#include "infoflow/random.h"
#include "infoflow/society.h"

namespace infoflow::society {

namespace {

constexpr double kLedgerTolerance = 1e-9;

const Entity* FindEntity(const Society& s, const std::string& id) {
  for (const auto& e : s.entities) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace

// --- Flows and contexts -------------------------------------------------------

std::string ToString(FlowKind kind) {
  return kind == FlowKind::kExplicit ? "explicit" : "implicit";
}

void ValidateEvent(const FlowEvent& e) {
  if (e.sender.empty() || e.receiver.empty()) {
    throw DomainError("flow '" + e.id + "': missing sender or receiver");
  }
  if (e.sender == e.receiver) {
    throw DomainError("flow '" + e.id + "': sender and receiver coincide");
  }
  if (e.datum.empty()) throw DomainError("flow '" + e.id + "': no datum");
  if (!(e.measure.selective_sh >= 0.0)) {
    throw DomainError("flow '" + e.id + "': negative information measure");
  }
}

std::vector<Context> BundleContexts(std::span<const FlowEvent> events,
                                    std::int64_t window) {
  if (window < 1) throw DomainError("BundleContexts: window must be >= 1");
  std::vector<Context> contexts;
  std::map<EntityPair, std::size_t> open;
  std::int64_t last_t = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const FlowEvent& e = events[i];
    if (i > 0 && e.t < last_t) {
      throw DomainError("BundleContexts: events are not sorted by t");
    }
    last_t = e.t;
    const EntityPair pair{e.sender, e.receiver};
    auto it = open.find(pair);
    if (it != open.end() && e.t < contexts[it->second].t + window) {
      contexts[it->second].flow_ids.push_back(e.id);
      continue;
    }
    Context ctx;
    ctx.id = "c" + std::to_string(e.t) + ":" + e.sender + "->" + e.receiver;
    ctx.t = e.t;
    ctx.sender = e.sender;
    ctx.receiver = e.receiver;
    ctx.flow_ids.push_back(e.id);
    open[pair] = contexts.size();
    contexts.push_back(std::move(ctx));
  }
  return contexts;
}

void to_json(nlohmann::json& j, const FlowEvent& e) {
  j = {{"id", e.id},
       {"t", e.t},
       {"sender", e.sender},
       {"receiver", e.receiver},
       {"datum", e.datum},
       {"kind", ToString(e.kind)},
       {"context_id", e.context_id},
       {"measure", e.measure}};
}

void to_json(nlohmann::json& j, const Context& c) {
  j = {{"id", c.id},
       {"t", c.t},
       {"sender", c.sender},
       {"receiver", c.receiver},
       {"flow_ids", c.flow_ids}};
}

FlowEvent FlowEventFromJson(const nlohmann::json& j) {
  try {
    FlowEvent e;
    e.id = j.at("id").get<std::string>();
    e.t = j.at("t").get<std::int64_t>();
    e.sender = j.at("sender").get<std::string>();
    e.receiver = j.at("receiver").get<std::string>();
    e.datum = j.at("datum").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "explicit" && kind != "implicit") {
      throw DomainError("flow JSON: unknown kind '" + kind + "'");
    }
    e.kind = kind == "explicit" ? FlowKind::kExplicit : FlowKind::kImplicit;
    e.context_id = j.value("context_id", std::string{});
    if (j.contains("measure")) {
      const auto& m = j.at("measure");
      e.measure.selective_sh = m.value("selective_sh", 0.0);
      e.measure.logons = m.value("logons", std::uint64_t{0});
      e.measure.metrons = m.value("metrons", std::uint64_t{0});
    }
    ValidateEvent(e);
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("flow JSON: ") + ex.what());
  }
}

// --- Ledger -------------------------------------------------------------------

void Ledger::SetBudget(const std::string& datum, double cap_sh) {
  if (!std::isfinite(cap_sh) || cap_sh < 0.0) {
    throw DomainError("ledger: budget for '" + datum +
                      "' must be finite and non-negative");
  }
  budgets_[datum] = cap_sh;
}

std::optional<double> Ledger::Budget(const std::string& datum) const {
  auto it = budgets_.find(datum);
  if (it == budgets_.end()) return std::nullopt;
  return it->second;
}

double Ledger::Cumulative(const LedgerKey& key) const {
  auto it = cumulative_.find(key);
  return it == cumulative_.end() ? 0.0 : it->second;
}

double Ledger::Implicit(const LedgerKey& key) const {
  auto it = implicit_.find(key);
  return it == implicit_.end() ? 0.0 : it->second;
}

bool Ledger::Admits(const LedgerKey& key, double sh) const {
  const auto cap = Budget(std::get<2>(key));
  return !cap || Cumulative(key) + sh <= *cap + kLedgerTolerance;
}

void Ledger::Record(const FlowEvent& e) {
  const LedgerKey key{e.sender, e.receiver, e.datum};
  if (e.kind == FlowKind::kExplicit) {
    cumulative_[key] += e.measure.selective_sh;
  } else {
    implicit_[key] += e.measure.selective_sh;
  }
}

LedgerReport MakeLedgerReport(const Ledger& ledger) {
  std::set<LedgerKey> keys;
  for (const auto& [k, v] : ledger.cumulative()) keys.insert(k);
  for (const auto& [k, v] : ledger.implicit()) keys.insert(k);

  LedgerReport report;
  std::map<std::string, ReceiverTotal> totals;
  for (const auto& key : keys) {
    LedgerRow row;
    std::tie(row.sender, row.receiver, row.datum) = key;
    row.cumulative_sh = ledger.Cumulative(key);
    row.implicit_sh = ledger.Implicit(key);
    row.budget_sh = ledger.Budget(row.datum);
    if (row.budget_sh) {
      double headroom = *row.budget_sh - row.cumulative_sh;
      if (headroom < kLedgerTolerance) headroom = 0.0;
      row.headroom_sh = headroom;
    }
    auto& total = totals[row.receiver];
    total.receiver = row.receiver;
    total.explicit_sh += row.cumulative_sh;
    total.implicit_sh += row.implicit_sh;
    report.rows.push_back(std::move(row));
  }
  for (auto& [name, total] : totals) report.receivers.push_back(total);
  return report;
}

// --- Simulation ----------------------------------------------------------------

void Validate(const Society& s) {
  std::set<std::string> ids;
  for (const auto& e : s.entities) {
    if (e.id.empty()) throw DomainError("society: entity with empty id");
    if (!ids.insert(e.id).second) {
      throw DomainError("society: duplicate entity '" + e.id + "'");
    }
    for (const auto& [key, d] : e.data) {
      if (key != d.id) {
        throw DomainError("society: datum key '" + key + "' != id '" + d.id +
                          "'");
      }
      if (d.owner.empty()) {
        throw DomainError("society: datum '" + d.id + "' has no owner");
      }
      const bool own = d.owner == e.id;
      if ((d.governance == Governance::kConjunct) != own) {
        throw DomainError("society: datum '" + d.id + "' held by '" + e.id +
                          "' is tagged " + ToString(d.governance) +
                          " but owned by '" + d.owner + "'");
      }
      if (d.domain_size < 1) {
        throw DomainError("society: datum '" + d.id + "' has an empty domain");
      }
      if (d.rr_eps) {
        if (!std::isfinite(*d.rr_eps) || *d.rr_eps <= 0.0) {
          throw DomainError("society: datum '" + d.id +
                            "' needs a finite positive rr_eps");
        }
        if (d.domain_size < 2) {
          throw DomainError("society: randomized response on datum '" + d.id +
                            "' needs at least two values");
        }
      }
    }
  }
  for (const auto& [pair, v] : s.factors.trust) {
    if (!ids.contains(pair.first) || !ids.contains(pair.second)) {
      throw DomainError("society: trust entry names an unknown entity");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("society: trust values must lie in [0, 1]");
    }
  }
  for (const auto& [pair, v] : s.factors.incentives) {
    const Entity* e = FindEntity(s, pair.first);
    if (e == nullptr || !e->data.contains(pair.second)) {
      throw DomainError("society: incentive for unknown entity/datum '" +
                        pair.first + "/" + pair.second + "'");
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("society: incentives must be finite and >= 0");
    }
  }
  for (const auto& [name, v] : s.factors.extra) {
    if (!std::isfinite(v)) {
      throw DomainError("society: factor '" + name + "' is not finite");
    }
  }
  const auto& p = s.params;
  if (!std::isfinite(p.alpha) || p.alpha < 0.0 || !std::isfinite(p.beta) ||
      p.beta < 0.0 || std::isnan(p.gamma)) {
    throw DomainError("society: logistic alpha and beta must be finite and "
                      ">= 0, gamma not NaN");
  }
  for (const auto& ch : s.implicit_channels) {
    const Entity* subject = FindEntity(s, ch.subject);
    if (subject == nullptr || !ids.contains(ch.observer)) {
      throw DomainError("society: implicit channel names an unknown entity");
    }
    if (ch.subject == ch.observer) {
      throw DomainError("society: implicit channel observes itself");
    }
    if (!subject->data.contains(ch.datum)) {
      throw DomainError("society: '" + ch.subject + "' holds no datum '" +
                        ch.datum + "'");
    }
    if (!(ch.p >= 0.0 && ch.p <= 1.0)) {
      throw DomainError("society: implicit channel probability outside [0, 1]");
    }
  }
}

double DecisionProb(const FactorState& f, const DecisionParams& params,
                    const std::string& sender, const std::string& receiver,
                    const std::string& datum) {
  auto lookup = [](const std::map<EntityPair, double>& m, const EntityPair& k) {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
  };
  const double trust = lookup(f.trust, {sender, receiver});
  const double incentive = lookup(f.incentives, {sender, datum});
  const double z =
      params.alpha * trust + params.beta * incentive - params.gamma;
  return 1.0 / (1.0 + std::exp(-z));
}

infocore::InfoMeasure ReleaseMeasure(const Datum& d) {
  infocore::InfoMeasure m;
  m.selective_sh = d.rr_eps ? mechanisms::DpToMiBound(*d.rr_eps, 1)
                            : std::log2(static_cast<double>(d.domain_size));
  m.logons = d.domain_size;
  m.metrons = 1;
  return m;
}

StepResult Step(Society s, std::uint64_t seed) {
  Validate(s);
  Rng decisions = MakeRng({seed, 1});
  Rng environment = MakeRng({seed, 2});
  std::vector<FlowEvent> events;
  std::vector<BudgetStop> stops;
  const std::int64_t t = s.t;
  const std::string tick = std::to_string(t);

  std::size_t n_explicit = 0;
  for (const auto& sender : s.entities) {
    for (const auto& [datum_id, datum] : sender.data) {
      for (const auto& receiver : s.entities) {
        if (receiver.id == sender.id) continue;
        if (!s.factors.trust.contains({sender.id, receiver.id})) continue;
        const double p =
            DecisionProb(s.factors, s.params, sender.id, receiver.id, datum_id);
        if (!Bernoulli(decisions, p)) continue;
        const auto measure = ReleaseMeasure(datum);
        const LedgerKey key{sender.id, receiver.id, datum_id};
        if (!s.ledger.Admits(key, measure.selective_sh)) {
          stops.push_back({t, sender.id, receiver.id, datum_id,
                           measure.selective_sh, s.ledger.Cumulative(key),
                           *s.ledger.Budget(datum_id)});
          continue;
        }
        FlowEvent e{"e" + tick + "." + std::to_string(n_explicit++),
                    t,
                    sender.id,
                    receiver.id,
                    datum_id,
                    measure,
                    FlowKind::kExplicit,
                    "c" + tick + ":" + sender.id + "->" + receiver.id};
        s.ledger.Record(e);
        events.push_back(std::move(e));
      }
    }
  }

  std::size_t n_implicit = 0;
  for (const auto& ch : s.implicit_channels) {
    if (!Bernoulli(environment, ch.p)) continue;
    // Observations bypass the holder's mechanism: the raw value is seen.
    Datum raw = FindEntity(s, ch.subject)->data.at(ch.datum);
    raw.rr_eps.reset();
    FlowEvent e{"i" + tick + "." + std::to_string(n_implicit++),
                t,
                ch.subject,
                ch.observer,
                ch.datum,
                ReleaseMeasure(raw),
                FlowKind::kImplicit,
                "c" + tick + ":" + ch.subject + "->" + ch.observer};
    s.ledger.Record(e);
    events.push_back(std::move(e));
  }

  s.t = t + 1;
  return {std::move(s), std::move(events), std::move(stops)};
}

std::uint64_t TickSeed(std::uint64_t seed, std::int64_t t) {
  // splitmix64 finaliser over (seed, t).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL *
                               (static_cast<std::uint64_t>(t) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RunResult Simulate(Society s, std::uint64_t seed, std::int64_t ticks) {
  if (ticks < 0) throw DomainError("Simulate: negative tick count");
  RunResult run;
  for (std::int64_t i = 0; i < ticks; ++i) {
    const std::int64_t t = s.t;
    StepResult step = Step(std::move(s), TickSeed(seed, t));
    s = std::move(step.society);
    for (auto& e : step.events) run.events.push_back(std::move(e));
    for (auto& stop : step.stops) run.stops.push_back(std::move(stop));
  }
  run.society = std::move(s);
  return run;
}

}  // namespace infoflow::society
