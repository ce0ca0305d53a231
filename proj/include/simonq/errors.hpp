// Copyright 2026 The simonq Authors
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
#include <utility>

namespace simonq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad weight, cutoff, shape).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input too large for an exhaustive method or a memory guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Missing or malformed configuration, profile, or data file content.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An optimizer or estimator that failed to produce a finite answer.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A computation declined by policy (uninformative data, memory guard,
/// time budget). `reason()` is a stable machine-readable code.
class Refusal : public Error {
 public:
  Refusal(std::string reason, const std::string& what) : Error(what), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

}  // namespace simonq
