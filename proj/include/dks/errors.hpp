// Copyright 2026 The dks Authors.
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

#ifndef DKS_ERRORS_HPP_
#define DKS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dks {

/// Argument outside an operation's mathematical domain (k out of range,
/// negative threshold, p = 1 where 1 - p is a divisor, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands whose shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Decomposition breakdown or non-finite data reaching a numerical kernel.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adversarial corruption budget exceeds what the degree caps allow.
class BudgetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Certificate construction undefined for the instance, e.g. an outside
/// node adjacent to every planted node.
class CertificateInfeasible : public std::runtime_error {
 public:
  CertificateInfeasible(const std::string& what, int node)
      : std::runtime_error(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

/// Exhaustive enumeration refused because the search space is too large.
class SizeError : public std::length_error {
 public:
  SizeError(const std::string& what, double count)
      : std::length_error(what), count_(count) {}
  double count() const { return count_; }

 private:
  double count_;
};

/// Grid data that does not form a full rectangle.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input (edge lists, sidecars, CSV).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dks

#endif  // DKS_ERRORS_HPP_
