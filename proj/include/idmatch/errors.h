// Copyright 2026 The idmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IDMATCH_ERRORS_H_
#define IDMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace idmatch {

// Malformed input text (timestamps, pair files, word lists).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input whose values are out of range (e.g. month 13).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its mathematical domain (empty counter,
// empty observation list).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid model or run parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation harness failure (true candidate missing, etc).
class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idmatch

#endif  // IDMATCH_ERRORS_H_
