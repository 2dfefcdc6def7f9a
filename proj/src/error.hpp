/*
 * Copyright 2026 The LHT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LHT_ERROR_HPP_
#define LHT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lht {

// Mirrors lht_status in the C API; the numeric values must stay in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kDimensionMismatch = 4,
  kData = 5,
  kDegenerateBag = 6,
  kFormat = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void check_dimension(std::size_t got, std::size_t expected,
                            const char* what) {
  if (got != expected) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": expected " + std::to_string(expected) +
                    " features, got " + std::to_string(got));
  }
}

}  // namespace lht

#endif  // LHT_ERROR_HPP_
