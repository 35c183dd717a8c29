// Copyright 2026 The entcert authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace entcert {

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or unreadable input files.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A constructed value violates one of its declared invariants
/// (non-Hermitian density matrix, non-normalized state, ...).
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& msg) : Error(msg) {}
};

/// Kraus completeness sum deviates from the identity.
class CompletenessViolation : public InvariantError {
 public:
  CompletenessViolation(const std::string& msg, double deviation)
      : InvariantError(msg), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_ = 0.0;
};

/// Shapes, labels or dimensions that do not fit together.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Recovery synthesis was asked for an instance that is not perfectly
/// correctable.
class NotCorrectableError : public Error {
 public:
  explicit NotCorrectableError(const std::string& msg) : Error(msg) {}
};

/// A target ensemble does not average to the required marginal.
class InfeasibleEnsembleError : public Error {
 public:
  explicit InfeasibleEnsembleError(const std::string& msg) : Error(msg) {}
};

}  // namespace entcert
