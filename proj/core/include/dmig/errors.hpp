/*
 * Copyright (c) 2026, The dmig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dmig {

enum class ErrorCode {
  kind_mismatch,
  insufficient_samples,
  degenerate_sample,
  alignment,
  undefined_correlation,
  zero_entropy_attribute,
  invalid_argument,
  invalid_dataset,
  parse,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  /// Same code, message prefixed with context such as "attribute 2".
  [[nodiscard]] Error with_context(std::string_view context) const;

 private:
  ErrorCode code_;
};

}  // namespace dmig
