//
// Copyright 2026 The dpcc Authors
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

#ifndef DPCC_STATUS_H_
#define DPCC_STATUS_H_

#include <stdexcept>
#include <string>

namespace dpcc {

// A precondition of an operation was not met (bad vertex count, malformed
// graph, invalid parameter). The CLI maps this to exit code 2.
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what)
      : std::invalid_argument(what) {}
};

// An invalid numeric parameter such as a non-positive noise scale or epsilon.
class ParameterError : public ContractViolation {
 public:
  explicit ParameterError(const std::string& what) : ContractViolation(what) {}
};

// The input is valid but exceeds a size limit of an exhaustive algorithm.
// Never silently replaced by an approximation. The CLI maps this to exit
// code 3.
class Refusal : public std::runtime_error {
 public:
  explicit Refusal(const std::string& what) : std::runtime_error(what) {}
};

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace dpcc

#endif  // DPCC_STATUS_H_
