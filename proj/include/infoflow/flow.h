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

#ifndef INFOFLOW_FLOW_H_
#define INFOFLOW_FLOW_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infoflow/infocore.h"
#include "json.hpp"

namespace infoflow::society {

enum class FlowKind { kExplicit, kImplicit };

// One atomic, pairwise flow: exactly one datum between exactly two entities.
struct FlowEvent {
  std::string id;
  std::int64_t t = 0;
  std::string sender;
  std::string receiver;
  std::string datum;
  infocore::InfoMeasure measure;
  FlowKind kind = FlowKind::kExplicit;
  std::string context_id;

  friend bool operator==(const FlowEvent&, const FlowEvent&) = default;
};

// Flows between one sender and one receiver inside a time window.
struct Context {
  std::string id;
  std::int64_t t = 0;
  std::string sender;
  std::string receiver;
  std::vector<std::string> flow_ids;

  friend bool operator==(const Context&, const Context&) = default;
};

// Throws DomainError if the event is not atomic and pairwise.
void ValidateEvent(const FlowEvent& e);

// Groups same-(sender, receiver) events whose tick lies within `window`
// ticks of the group's first event. `events` must be sorted by t and
// window must be >= 1. Contexts are ordered by their first event.
std::vector<Context> BundleContexts(std::span<const FlowEvent> events,
                                    std::int64_t window);

std::string ToString(FlowKind kind);

void to_json(nlohmann::json& j, const FlowEvent& e);
void to_json(nlohmann::json& j, const Context& c);
FlowEvent FlowEventFromJson(const nlohmann::json& j);

}  // namespace infoflow::society

#endif  // INFOFLOW_FLOW_H_
