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
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gtest/gtest.h"
#include "infoflow/errors.h"
#include "infoflow/flow.h"
#include "infoflow/random.h"
#include "infoflow/society.h"

namespace infoflow::society {
namespace {

const double kLn3 = std::log(3.0);

// alice holds "age" (raw) and "vote" (randomized); bob and carol receive;
// a camera watches alice's age.
Society SmallSociety() {
  Society s;
  Entity alice{"alice", {}};
  alice.data["age"] = Datum{"age", "34", "alice", Governance::kConjunct, 4, {}};
  alice.data["vote"] =
      Datum{"vote", "1", "alice", Governance::kConjunct, 2, kLn3};
  s.entities = {alice, Entity{"bob", {}}, Entity{"carol", {}},
                Entity{"camera", {}}};
  s.factors.trust[{"alice", "bob"}] = 0.6;
  s.factors.trust[{"alice", "carol"}] = 0.2;
  s.factors.incentives[{"alice", "age"}] = 0.5;
  s.factors.incentives[{"alice", "vote"}] = 1.5;
  s.implicit_channels = {{"camera", "alice", "age", 0.4}};
  return s;
}

std::string Jsonl(const std::vector<FlowEvent>& events) {
  std::ostringstream out;
  WriteEventsJsonl(out, events);
  return out.str();
}

std::vector<FlowEvent> OfKind(const std::vector<FlowEvent>& events,
                              FlowKind kind) {
  std::vector<FlowEvent> out;
  for (const auto& e : events) {
    if (e.kind == kind) out.push_back(e);
  }
  return out;
}

FlowEvent Event(const std::string& id, std::int64_t t, const std::string& s,
                const std::string& r) {
  FlowEvent e;
  e.id = id;
  e.t = t;
  e.sender = s;
  e.receiver = r;
  e.datum = "d";
  return e;
}

TEST(DecisionProbTest, Examples) {
  FactorState f;
  f.trust[{"a", "b"}] = 0.0;
  DecisionParams defaults;
  EXPECT_NEAR(DecisionProb(f, defaults, "a", "b", "x"), 0.047425873178, 1e-12);
  f.trust[{"a", "b"}] = 1.0;
  EXPECT_NEAR(DecisionProb(f, defaults, "a", "b", "x"), 0.731058578630, 1e-12);
  EXPECT_EQ(DecisionProb(f, DecisionParams{0.0, 0.0, 1e6}, "a", "b", "x"), 0.0);
}

TEST(DecisionProbTest, MonotoneInFactors) {
  auto rng = MakeRng({31});
  const DecisionParams params;
  for (int trial = 0; trial < 500; ++trial) {
    FactorState f;
    f.trust[{"a", "b"}] = UnitUniform(rng);
    f.incentives[{"a", "x"}] = 5.0 * UnitUniform(rng);
    const double before = DecisionProb(f, params, "a", "b", "x");
    FactorState g = f;
    if (trial % 2 == 0) {
      g.trust[{"a", "b"}] = std::min(1.0, f.trust[{"a", "b"}] + UnitUniform(rng));
    } else {
      g.incentives[{"a", "x"}] += 3.0 * UnitUniform(rng);
    }
    EXPECT_GE(DecisionProb(g, params, "a", "b", "x"), before);
  }
}

TEST(ValidateTest, RejectsBrokenSocieties) {
  EXPECT_NO_THROW(Validate(SmallSociety()));
  auto s = SmallSociety();
  s.factors.trust[{"alice", "bob"}] = 1.5;
  EXPECT_THROW(Validate(s), DomainError);
  s = SmallSociety();
  s.factors.incentives[{"alice", "age"}] = -1.0;
  EXPECT_THROW(Validate(s), DomainError);
  s = SmallSociety();
  s.factors.trust[{"alice", "nobody"}] = 0.5;
  EXPECT_THROW(Validate(s), DomainError);
  s = SmallSociety();
  s.implicit_channels.push_back({"camera", "alice", "missing", 0.5});
  EXPECT_THROW(Validate(s), DomainError);
  s = SmallSociety();
  s.implicit_channels.push_back({"camera", "alice", "age", 1.5});
  EXPECT_THROW(Validate(s), DomainError);
  s = SmallSociety();
  s.entities.push_back(Entity{"bob", {}});
  EXPECT_THROW(Validate(s), DomainError);
}

TEST(StepTest, ZeroProbabilityMeansNoExplicitEvents) {
  auto s = SmallSociety();
  s.params = DecisionParams{0.0, 0.0, 1e6};
  const auto run = Simulate(s, 3, 20);
  EXPECT_TRUE(OfKind(run.events, FlowKind::kExplicit).empty());
}

TEST(StepTest, CertainImplicitChannelFiresEveryTick) {
  auto s = SmallSociety();
  s.implicit_channels = {{"camera", "alice", "age", 1.0},
                         {"bob", "alice", "vote", 1.0}};
  const auto run = Simulate(s, 5, 6);
  const auto implicit = OfKind(run.events, FlowKind::kImplicit);
  ASSERT_EQ(implicit.size(), 12u);
  for (std::int64_t t = 0; t < 6; ++t) {
    EXPECT_EQ(implicit[2 * t].t, t);
    EXPECT_EQ(implicit[2 * t].id, "i" + std::to_string(t) + ".0");
    EXPECT_EQ(implicit[2 * t + 1].t, t);
  }
  // Observation sees the raw value, not the randomized one.
  EXPECT_DOUBLE_EQ(implicit[1].measure.selective_sh, 1.0);
  EXPECT_DOUBLE_EQ(implicit[0].measure.selective_sh, 2.0);
}

TEST(StepTest, RandomizedReleaseStopsAtBudget) {
  Society s;
  Entity alice{"alice", {}};
  alice.data["vote"] =
      Datum{"vote", "1", "alice", Governance::kConjunct, 2, kLn3};
  s.entities = {alice, Entity{"pollster", {}}};
  s.factors.trust[{"alice", "pollster"}] = 1.0;
  s.factors.incentives[{"alice", "vote"}] = 100.0;
  s.ledger.SetBudget("vote", 2.0 * std::log2(3.0));
  const auto run = Simulate(s, 1, 5);
  ASSERT_EQ(run.events.size(), 2u);
  for (const auto& e : run.events) {
    EXPECT_NEAR(e.measure.selective_sh, std::log2(3.0), 1e-12);
  }
  ASSERT_EQ(run.stops.size(), 3u);
  EXPECT_EQ(run.stops[0].t, 2);
  const LedgerKey key{"alice", "pollster", "vote"};
  EXPECT_NEAR(run.society.ledger.Cumulative(key), 2.0 * std::log2(3.0), 1e-12);

  const auto report = MakeLedgerReport(run.society.ledger);
  ASSERT_EQ(report.rows.size(), 1u);
  ASSERT_TRUE(report.rows[0].headroom_sh.has_value());
  EXPECT_EQ(*report.rows[0].headroom_sh, 0.0);
}

TEST(StepTest, Reproducible) {
  const auto a = Simulate(SmallSociety(), 7, 30);
  const auto b = Simulate(SmallSociety(), 7, 30);
  EXPECT_EQ(Jsonl(a.events), Jsonl(b.events));
  EXPECT_EQ(a.events, b.events);
  const auto c = Simulate(SmallSociety(), 8, 30);
  EXPECT_NE(Jsonl(a.events), Jsonl(c.events));
}

TEST(StepTest, LedgerNeverExceedsBudget) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto s = SmallSociety();
    s.factors.trust[{"alice", "bob"}] = 1.0;
    s.ledger.SetBudget("age", 5.0);
    s.ledger.SetBudget("vote", 4.0);
    for (int tick = 0; tick < 25; ++tick) {
      auto step = Step(std::move(s), TickSeed(seed, tick));
      s = std::move(step.society);
      for (const auto& [key, sh] : s.ledger.cumulative()) {
        const auto cap = s.ledger.Budget(std::get<2>(key));
        ASSERT_TRUE(cap.has_value());
        EXPECT_LE(sh, *cap + 1e-9);
      }
    }
  }
}

TEST(StepTest, ImplicitEventsIgnoreSubjectFactors) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto base = SmallSociety();
    auto perturbed = SmallSociety();
    perturbed.factors.trust[{"alice", "bob"}] = 0.05;
    perturbed.factors.trust[{"alice", "carol"}] = 1.0;
    perturbed.factors.incentives[{"alice", "age"}] = 9.0;
    perturbed.factors.incentives[{"alice", "vote"}] = 0.0;
    const auto a = Simulate(base, seed, 12);
    const auto b = Simulate(perturbed, seed, 12);
    EXPECT_EQ(OfKind(a.events, FlowKind::kImplicit),
              OfKind(b.events, FlowKind::kImplicit))
        << "seed " << seed;
  }
}

TEST(StepTest, EventsAreAtomic) {
  const auto run = Simulate(SmallSociety(), 11, 40);
  ASSERT_FALSE(run.events.empty());
  for (const auto& e : run.events) {
    EXPECT_NO_THROW(ValidateEvent(e));
    EXPECT_NE(e.sender, e.receiver);
    EXPECT_FALSE(e.datum.empty());
  }
}

TEST(ValidateEventTest, RejectsNonPairwise) {
  auto e = Event("x", 0, "a", "a");
  EXPECT_THROW(ValidateEvent(e), DomainError);
  e = Event("x", 0, "a", "");
  EXPECT_THROW(ValidateEvent(e), DomainError);
  e = Event("x", 0, "a", "b");
  e.datum.clear();
  EXPECT_THROW(ValidateEvent(e), DomainError);
}

TEST(BundleContextsTest, Examples) {
  const std::vector<FlowEvent> one = {Event("e0", 0, "a", "b")};
  const auto c1 = BundleContexts(one, 1);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1[0].id, "c0:a->b");
  EXPECT_EQ(c1[0].flow_ids, (std::vector<std::string>{"e0"}));

  const std::vector<FlowEvent> two = {Event("e0", 0, "a", "b"),
                                      Event("e1", 0, "a", "b")};
  const auto c2 = BundleContexts(two, 1);
  ASSERT_EQ(c2.size(), 1u);
  EXPECT_EQ(c2[0].flow_ids.size(), 2u);

  const std::vector<FlowEvent> three = {Event("e0", 0, "a", "b"),
                                        Event("e1", 0, "b", "a"),
                                        Event("e2", 0, "a", "c")};
  EXPECT_EQ(BundleContexts(three, 1).size(), 3u);

  const std::vector<FlowEvent> spread = {Event("e0", 0, "a", "b"),
                                         Event("e1", 1, "a", "b"),
                                         Event("e2", 2, "a", "b")};
  EXPECT_EQ(BundleContexts(spread, 1).size(), 3u);
  EXPECT_EQ(BundleContexts(spread, 3).size(), 1u);

  const std::vector<FlowEvent> unsorted = {Event("e0", 2, "a", "b"),
                                           Event("e1", 1, "a", "b")};
  EXPECT_THROW(BundleContexts(unsorted, 1), DomainError);
  EXPECT_THROW(BundleContexts(one, 0), DomainError);
}

TEST(LedgerTest, Examples) {
  Ledger empty;
  const auto r0 = MakeLedgerReport(empty);
  EXPECT_TRUE(r0.rows.empty());
  EXPECT_TRUE(r0.receivers.empty());

  Ledger ledger;
  FlowEvent e = Event("e0", 0, "alice", "bob");
  e.measure = ReleaseMeasure(
      Datum{"d", "1", "alice", Governance::kConjunct, 2, kLn3});
  ledger.Record(e);
  const auto r1 = MakeLedgerReport(ledger);
  ASSERT_EQ(r1.rows.size(), 1u);
  EXPECT_NEAR(r1.rows[0].cumulative_sh, 1.584962500721, 1e-9);
  EXPECT_FALSE(r1.rows[0].budget_sh.has_value());
  ASSERT_EQ(r1.receivers.size(), 1u);
  EXPECT_NEAR(r1.receivers[0].explicit_sh, 1.584962500721, 1e-9);

  EXPECT_THROW(ledger.SetBudget("d", -1.0), DomainError);
  EXPECT_THROW(ledger.SetBudget("d", INFINITY), DomainError);
}

TEST(ReleaseMeasureTest, RawAndRandomized) {
  const auto raw = ReleaseMeasure(
      Datum{"age", "34", "a", Governance::kConjunct, 128, {}});
  EXPECT_DOUBLE_EQ(raw.selective_sh, 7.0);
  EXPECT_EQ(raw.logons, 128u);
  EXPECT_EQ(raw.metrons, 1u);
  const auto rr =
      ReleaseMeasure(Datum{"v", "1", "a", Governance::kConjunct, 2, 0.5});
  EXPECT_NEAR(rr.selective_sh, 0.5 * 1.442695040889, 1e-12);
}

TEST(ScenarioTest, ParseAndRun) {
  const auto j = nlohmann::json::parse(R"({
    "seed": 4, "ticks": 6,
    "entities": [
      {"id": "a", "data": [{"id": "x", "value": "1"}]},
      {"id": "b"}],
    "trust": [{"from": "a", "to": "b", "value": 1.0}],
    "incentives": [{"entity": "a", "datum": "x", "value": 2.0}],
    "implicit_channels": [{"observer": "b", "subject": "a", "datum": "x", "p": 0.5}],
    "budgets": {"x": 3.0}})");
  const auto sc = ScenarioFromJson(j);
  EXPECT_EQ(sc.seed, 4u);
  EXPECT_EQ(sc.ticks, 6);
  const auto a = RunScenario(sc);
  const auto b = RunScenario(sc);
  EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
  EXPECT_LE(a.ledger.rows.at(0).cumulative_sh, 3.0 + 1e-9);
  for (std::size_t i = 1; i < a.events.size(); ++i) {
    EXPECT_LE(a.events[i - 1].t, a.events[i].t);
  }

  auto unknown = j;
  unknown["colour"] = "blue";
  EXPECT_THROW(ScenarioFromJson(unknown), DomainError);
  auto negative = j;
  negative["budgets"]["x"] = -2.0;
  EXPECT_THROW(ScenarioFromJson(negative), DomainError);
}

TEST(EventLogTest, CsvAndJsonl) {
  const auto run = Simulate(SmallSociety(), 2, 4);
  std::ostringstream csv;
  WriteEventsCsv(csv, run.events);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "id,t,sender,receiver,datum,kind,context_id,selective_sh,logons,"
            "metrons");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, run.events.size());

  std::istringstream jsonl(Jsonl(run.events));
  std::size_t i = 0;
  for (std::string line; std::getline(jsonl, line); ++i) {
    ASSERT_LT(i, run.events.size());
    EXPECT_EQ(FlowEventFromJson(nlohmann::json::parse(line)), run.events[i]);
  }
  EXPECT_EQ(i, run.events.size());
}

}  // namespace
}  // namespace infoflow::society
