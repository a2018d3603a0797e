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

#ifndef INFOFLOW_ERRORS_H_
#define INFOFLOW_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infoflow {

// Raised when an argument violates an operation's precondition (unknown
// label, non-stochastic row, mismatched outcome spaces, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when an exact computation would exceed the enumeration cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t requested,
                std::uint64_t limit)
      : std::runtime_error(what + ": state space of " +
                           std::to_string(requested) + " exceeds cap of " +
                           std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

}  // namespace infoflow

#endif  // INFOFLOW_ERRORS_H_
