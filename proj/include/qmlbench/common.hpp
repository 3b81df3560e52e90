// Copyright 2026 The qmlbench developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Shared error types and small helpers used across the library.
 */
#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace qmlbench {

/// Raised when an argument violates an operation's contract.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a training run must be aborted (NaN loss/gradient, etc.).
class TrainingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void format_into(std::ostringstream &) {}

template <typename T, typename... Rest>
void format_into(std::ostringstream &os, T &&head, Rest &&...rest) {
    os << std::forward<T>(head);
    format_into(os, std::forward<Rest>(rest)...);
}
} // namespace detail

template <typename... Args> std::string format_msg(Args &&...args) {
    std::ostringstream os;
    detail::format_into(os, std::forward<Args>(args)...);
    return os.str();
}

template <typename... Args> void require(bool cond, Args &&...args) {
    if (!cond) {
        throw InvalidArgument(format_msg(std::forward<Args>(args)...));
    }
}

} // namespace qmlbench
