/*
   Copyright 2026 The hyperdiv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace hyperdiv {

/// Operands live in different rings.
class ContextMismatch : public std::invalid_argument {
 public:
  ContextMismatch() : std::invalid_argument("ring context mismatch") {}
};

/// A division needed more p-adic digits than the operands carry.
class DivisionPrecisionError : public std::runtime_error {
 public:
  explicit DivisionPrecisionError(const std::string& what) : std::runtime_error(what) {}
};

class NotASquare : public std::runtime_error {
 public:
  explicit NotASquare(const std::string& what) : std::runtime_error(what) {}
};

class SingularRoot : public std::runtime_error {
 public:
  explicit SingularRoot(const std::string& what) : std::runtime_error(what) {}
};

class NonUnitConstantTerm : public std::runtime_error {
 public:
  explicit NonUnitConstantTerm(const std::string& what) : std::runtime_error(what) {}
};

/// Cantor arithmetic or a Euclidean step hit a leading coefficient that is not a unit.
class NonUnitPivot : public std::runtime_error {
 public:
  explicit NonUnitPivot(const std::string& what) : std::runtime_error(what) {}
};

class SingularH : public std::runtime_error {
 public:
  explicit SingularH(const std::string& what) : std::runtime_error(what) {}
};

class PointNotOnCurve : public std::invalid_argument {
 public:
  explicit PointNotOnCurve(const std::string& what) : std::invalid_argument(what) {}
};

class ReconstructionFailure : public std::runtime_error {
 public:
  explicit ReconstructionFailure(const std::string& what) : std::runtime_error(what) {}
};

class NoGenericPoint : public std::runtime_error {
 public:
  explicit NoGenericPoint(const std::string& what) : std::runtime_error(what) {}
};

class RetriesExhausted : public std::runtime_error {
 public:
  explicit RetriesExhausted(const std::string& what) : std::runtime_error(what) {}
};

class BadEvaluationPoint : public std::runtime_error {
 public:
  explicit BadEvaluationPoint(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a documented precondition (ell <= g, even p, malformed data ...).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hyperdiv
