// Copyright 2026 The adeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace adeval {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what, std::optional<std::string> sample_id = std::nullopt)
      : std::runtime_error(what), sample_id_(std::move(sample_id)) {}

  /// Sample the error refers to, when there is one.
  const std::optional<std::string>& sample_id() const noexcept { return sample_id_; }

private:
  std::optional<std::string> sample_id_;
};

/// Input violates a documented precondition or invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace adeval
