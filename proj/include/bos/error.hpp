// Copyright 2026 The bos Authors.
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

#ifndef BOS_ERROR_HPP_
#define BOS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bos {

// Error categories. The numeric values are mirrored by bos_status in the C
// API, so only append.
enum class ErrorCode {
  kInvalidParameter = 1,
  kIo = 2,
  kMalformedRecord = 3,
  kDuplicateId = 4,
  kFormat = 5,
  kDegenerateVector = 6,
  kDimensionMismatch = 7,
  kProvider = 8,
  kAlignment = 9,
  kInsufficientData = 10,
  kOverFiltering = 11,
  kIntegrity = 12,
  kUndefinedCoherence = 13,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bos

#endif  // BOS_ERROR_HPP_
