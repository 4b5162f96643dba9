// Copyright 2026 The EvalAdvisor Authors.
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

#ifndef EVALADVISOR_ERROR_H_
#define EVALADVISOR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace evaladvisor {

enum class ErrorCode {
  kInvalidInput,
  kNotFound,
  kConflict,
  kCycle,
  kInvalidParent,
  kEmptyKnowledge,
  kFormat,
};

// Wire name of an error code. Cycle and invalid-parent are reported as
// invalid-input on the wire; the message keeps the distinction.
std::string_view WireCode(ErrorCode code);

// HTTP status for an error code.
int HttpStatus(ErrorCode code);

// Process exit status for the command-line tool.
int ExitStatus(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace evaladvisor

#endif  // EVALADVISOR_ERROR_H_
