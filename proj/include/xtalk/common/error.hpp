// Copyright 2026 The xtalk Authors
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

namespace xtalk {

// Base of every exception thrown by the library. The CLI maps InputError to
// exit code 2 and NumericalError to exit code 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid user input (files, arguments, circuits).
class InputError : public Error {
public:
  using Error::Error;
};

class ParseError : public InputError {
public:
  using InputError::InputError;
};

// A domain object violates one of its invariants. `field` names the offending
// entry, e.g. "qubits[3].t2_us".
class InvariantError : public InputError {
public:
  InvariantError(std::string field, const std::string &what)
      : InputError(field + ": " + what), field_(std::move(field)) {}
  const std::string &field() const { return field_; }

private:
  std::string field_;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

} // namespace xtalk
