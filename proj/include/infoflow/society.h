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

#ifndef INFOFLOW_SOCIETY_H_
#define INFOFLOW_SOCIETY_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "infoflow/causalnet.h"
#include "infoflow/flow.h"
#include "infoflow/infocore.h"
#include "json.hpp"

namespace infoflow::society {

enum class Governance {
  kConjunct,           // the holder owns the datum
  kDelegated,          // held on behalf of another owner
  kDistributedShard,
  kDistributedShare,
  kDistributedCopy,
};

struct Datum {
  std::string id;
  std::string value;
  std::string owner;
  Governance governance = Governance::kConjunct;
  // Number of values the datum can take; a raw release carries log2 of it.
  std::uint64_t domain_size = 2;
  // When set, explicit releases go through k-ary randomized response with
  // this epsilon and carry eps * log2(e) Sh.
  std::optional<double> rr_eps;
};

struct Entity {
  std::string id;
  std::map<std::string, Datum> data;
};

using EntityPair = std::pair<std::string, std::string>;

struct FactorState {
  std::map<EntityPair, double> trust;  // (sender, receiver) -> [0, 1]
  std::map<EntityPair, double> incentives;  // (entity, datum) -> >= 0
  std::map<std::string, double> extra;
};

// Logistic link p = 1 / (1 + exp(-(alpha * trust + beta * incentive - gamma))).
struct DecisionParams {
  double alpha = 4.0;
  double beta = 1.0;
  double gamma = 3.0;
};

// Environment-driven observation of `subject`'s datum by `observer`, firing
// with probability p regardless of the subject's factors.
struct ImplicitChannel {
  std::string observer;
  std::string subject;
  std::string datum;
  double p = 0.0;
};

using LedgerKey = std::tuple<std::string, std::string, std::string>;

// Per (sender, receiver, datum) information accounting. Explicit releases
// count against the datum's budget; implicit flows are tracked separately
// since the subject has no say in them.
class Ledger {
 public:
  void SetBudget(const std::string& datum, double cap_sh);
  std::optional<double> Budget(const std::string& datum) const;

  double Cumulative(const LedgerKey& key) const;
  double Implicit(const LedgerKey& key) const;

  // True iff an explicit release of `sh` keeps the key within budget.
  bool Admits(const LedgerKey& key, double sh) const;
  void Record(const FlowEvent& e);

  const std::map<LedgerKey, double>& cumulative() const { return cumulative_; }
  const std::map<LedgerKey, double>& implicit() const { return implicit_; }
  const std::map<std::string, double>& budgets() const { return budgets_; }

 private:
  std::map<LedgerKey, double> cumulative_;
  std::map<LedgerKey, double> implicit_;
  std::map<std::string, double> budgets_;
};

// Emitted instead of an explicit flow the budget would not admit.
struct BudgetStop {
  std::int64_t t = 0;
  std::string sender;
  std::string receiver;
  std::string datum;
  double requested_sh = 0.0;
  double cumulative_sh = 0.0;
  double budget_sh = 0.0;

  friend bool operator==(const BudgetStop&, const BudgetStop&) = default;
};

struct Society {
  std::vector<Entity> entities;
  FactorState factors;
  DecisionParams params;
  std::vector<ImplicitChannel> implicit_channels;
  Ledger ledger;
  std::int64_t t = 0;
};

// Throws DomainError describing the first violated invariant.
void Validate(const Society& s);

double DecisionProb(const FactorState& f, const DecisionParams& params,
                    const std::string& sender, const std::string& receiver,
                    const std::string& datum);

// Information carried by one release of `d`.
infocore::InfoMeasure ReleaseMeasure(const Datum& d);

struct StepResult {
  Society society;
  std::vector<FlowEvent> events;
  std::vector<BudgetStop> stops;
};

// Advances one tick. Explicit decisions and implicit channels draw from
// separate streams derived from `seed`, so the implicit events depend only
// on the seed and the channel table.
StepResult Step(Society s, std::uint64_t seed);

struct RunResult {
  Society society;
  std::vector<FlowEvent> events;
  std::vector<BudgetStop> stops;
};

// Seed for tick t of a run seeded with `seed`.
std::uint64_t TickSeed(std::uint64_t seed, std::int64_t t);

RunResult Simulate(Society s, std::uint64_t seed, std::int64_t ticks);

struct LedgerRow {
  std::string sender;
  std::string receiver;
  std::string datum;
  double cumulative_sh = 0.0;
  double implicit_sh = 0.0;
  std::optional<double> budget_sh;
  std::optional<double> headroom_sh;
};

struct ReceiverTotal {
  std::string receiver;
  double explicit_sh = 0.0;
  double implicit_sh = 0.0;
};

struct LedgerReport {
  std::vector<LedgerRow> rows;
  std::vector<ReceiverTotal> receivers;
};

LedgerReport MakeLedgerReport(const Ledger& ledger);

// --- Scenario files ----------------------------------------------------------

struct Attribution {
  causalnet::BayesNet net;
  std::map<std::string, std::string> ownership;
  causalnet::AttributionOptions options;
};

struct Scenario {
  Society society;
  std::uint64_t seed = 0;
  std::int64_t ticks = 1;
  std::int64_t window = 1;
  std::optional<Attribution> attribution;
};

// Parses a scenario config. Unknown keys and invariant violations raise
// DomainError.
Scenario ScenarioFromJson(const nlohmann::json& j);

struct ScenarioResult {
  std::vector<FlowEvent> events;  // sorted by t, induced flows included
  std::vector<BudgetStop> stops;
  std::vector<Context> contexts;
  std::vector<causalnet::InducedContext> induced;
  LedgerReport ledger;
};

ScenarioResult RunScenario(const Scenario& scenario);

std::string ToString(Governance g);
Governance GovernanceFromString(const std::string& s);

void WriteEventsJsonl(std::ostream& out, const std::vector<FlowEvent>& events);
void WriteEventsCsv(std::ostream& out, const std::vector<FlowEvent>& events);

void to_json(nlohmann::json& j, const BudgetStop& s);
void to_json(nlohmann::json& j, const LedgerReport& r);
void to_json(nlohmann::json& j, const ScenarioResult& r);

}  // namespace infoflow::society

#endif  // INFOFLOW_SOCIETY_H_
