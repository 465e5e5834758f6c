// Copyright 2026 The efmart Authors.
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

#ifndef EFMART_ERRORS_HPP_
#define EFMART_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace efmart {

// A ProcessSpec, grid, config or pricer combination that cannot be used.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Pricing asked for at zero time to expiry. Use maturity_value() instead.
class MaturityError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace efmart

#endif  // EFMART_ERRORS_HPP_
