// Copyright 2026 The kwmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace kwmap {

/// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  config = 2,
  input = 3,
  provider = 4,
};

/// Base of all library errors. Carries the exit code the CLI reports for it.
class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Bad parameters, unreadable or inconsistent configuration files.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::config, what) {}
};

/// Malformed input data (corpus lines, word lists, network files).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ExitCode::input, what) {}
};

/// Malformed provider response. Not retried.
class ProviderError : public Error {
 public:
  explicit ProviderError(const std::string& what) : Error(ExitCode::provider, what) {}
};

/// Transport-level provider failure (connection refused, timeout, 5xx). Retryable.
class TransportError : public ProviderError {
 public:
  explicit TransportError(const std::string& what) : ProviderError(what) {}
};

/// Broken internal invariant between pipeline artifacts (e.g. a lexicon that
/// does not match its units).
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ExitCode::input, what) {}
};

/// A pipeline stage failed; wraps the cause and keeps its exit code.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause);
  StageError(std::string stage, const std::string& cause);
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace kwmap
