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

#include "dmig/errors.hpp"

namespace dmig {

std::string_view to_string(ErrorCode code) noexcept
{
  switch (code) {
    case ErrorCode::kind_mismatch: return "kind mismatch";
    case ErrorCode::insufficient_samples: return "insufficient samples";
    case ErrorCode::degenerate_sample: return "degenerate sample";
    case ErrorCode::alignment: return "alignment";
    case ErrorCode::undefined_correlation: return "undefined correlation";
    case ErrorCode::zero_entropy_attribute: return "zero-entropy attribute";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::invalid_dataset: return "invalid dataset";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::io: return "i/o error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

Error Error::with_context(std::string_view context) const
{
  std::string msg(context);
  msg += ": ";
  msg += what();
  return Error(code_, msg);
}

}  // namespace dmig
