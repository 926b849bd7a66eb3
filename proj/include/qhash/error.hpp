// Copyright 2026 The qhash Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qhash {

/// Base class for precondition violations: bad ranges, mismatched domains,
/// malformed inputs. The CLI maps these to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two operands live in different groups.
class SpecMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Two states (or a state and a scheme) have different dimensions.
class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computation was requested on an instance too large to enumerate.
class TooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace qhash
