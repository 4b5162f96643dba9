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

#ifndef EVALADVISOR_UTIL_H_
#define EVALADVISOR_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace evaladvisor {

// Lowercase (ASCII), collapse whitespace runs to one space and strip leading
// and trailing punctuation/whitespace.
std::string NormalizeText(std::string_view raw);

// First `hex_chars` hex digits of the SHA-256 of `data`.
std::string Fingerprint(std::string_view data, int hex_chars = 16);

// Seconds since the Unix epoch.
std::int64_t NowSeconds();

// "2026-10-15T08:30:00Z".
std::string FormatTimestamp(std::int64_t seconds);

// Inverse of FormatTimestamp. Throws Error(kFormat) on malformed input.
std::int64_t ParseTimestamp(std::string_view text);

}  // namespace evaladvisor

#endif  // EVALADVISOR_UTIL_H_
