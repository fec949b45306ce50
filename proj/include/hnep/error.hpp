// Copyright 2026 The hnep Authors
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

#ifndef HNEP_ERROR_HPP_
#define HNEP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hnep {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands with incompatible shapes.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// A set description that is empty, e.g. a box with lo > hi.
class InvalidSet : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// The game does not provide the oracle an operation needs.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

}  // namespace hnep

#endif  // HNEP_ERROR_HPP_
