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

#include "kwmap/error.hpp"

#include <utility>

namespace kwmap {

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.code(), "stage '" + stage + "' failed: " + cause.what()), stage_(std::move(stage)) {}

StageError::StageError(std::string stage, const std::string& cause)
    : Error(ExitCode::input, "stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}

}  // namespace kwmap
