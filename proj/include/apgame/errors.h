// Copyright 2026 The apgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef APGAME_ERRORS_H_
#define APGAME_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter block, scenario or file violates an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (JSON syntax, CSV shape).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Some user's SINR falls below the capture threshold.
class InfeasibleProfileError : public Error {
 public:
  using Error::Error;
};

// A mover has no admissible strategy given the rest of the profile.
class NoFeasibleStrategyError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::size_t profiles, std::size_t budget)
      : Error("joint strategy space has " + std::to_string(profiles) +
              " profiles, budget is " + std::to_string(budget)),
        profiles_(profiles) {}
  std::size_t profiles() const { return profiles_; }

 private:
  std::size_t profiles_;
};

}  // namespace apgame

#endif  // APGAME_ERRORS_H_
