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

#include "evaladvisor/util.h"

#include <openssl/sha.h>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <numeric>

#include "evaladvisor/error.h"
#include "evaladvisor/rational.h"

namespace evaladvisor {

std::string_view WireCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kCycle:
    case ErrorCode::kInvalidParent:
      return "invalid-input";
    case ErrorCode::kNotFound:
      return "not-found";
    case ErrorCode::kConflict:
      return "conflict";
    case ErrorCode::kEmptyKnowledge:
      return "empty-knowledge";
    case ErrorCode::kFormat:
      return "format-error";
  }
  return "invalid-input";
}

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kConflict:
      return 409;
    case ErrorCode::kEmptyKnowledge:
      return 422;
    default:
      return 400;
  }
}

int ExitStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 2;
    case ErrorCode::kConflict:
      return 3;
    case ErrorCode::kEmptyKnowledge:
      return 4;
    default:
      return 1;
  }
}

// --- Rational -------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) Fail(ErrorCode::kInvalidInput, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::Parse(std::string_view text) {
  auto bad = [&]() -> Rational {
    Fail(ErrorCode::kInvalidInput,
         "not a rational number: '" + std::string(text) + "'");
  };
  auto digits = [](std::string_view s) {
    if (s.empty() || s.size() > 15) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (text.empty()) return bad();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view n = text.substr(0, slash), d = text.substr(slash + 1);
    if (!digits(n) || !digits(d)) return bad();
    std::int64_t den = std::stoll(std::string(d));
    if (den == 0) return bad();
    return Rational(std::stoll(std::string(n)), den);
  }
  std::string_view whole = text, frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (frac.empty() || !digits(frac)) return bad();
  }
  if (whole.empty()) whole = "0";
  if (!digits(whole)) return bad();
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t num = std::stoll(std::string(whole)) * den +
                     (frac.empty() ? 0 : std::stoll(std::string(frac)));
  return Rational(num, den);
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator*(const Rational &a, const Rational &b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// --- text, hashing, time --------------------------------------------------

std::string NormalizeText(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  auto strip = [](unsigned char c) { return std::ispunct(c) || c == ' '; };
  std::size_t begin = 0, end = out.size();
  while (begin < end && strip(out[begin])) ++begin;
  while (end > begin && strip(out[end - 1])) --end;
  return out.substr(begin, end - begin);
}

std::string Fingerprint(std::string_view data, int hex_chars) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char *>(data.data()), data.size(),
         digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < SHA256_DIGEST_LENGTH && static_cast<int>(out.size()) < hex_chars; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  out.resize(std::min<std::size_t>(out.size(), hex_chars));
  return out;
}

std::int64_t NowSeconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string FormatTimestamp(std::int64_t seconds) {
  std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::int64_t ParseTimestamp(std::string_view text) {
  std::tm tm{};
  int consumed = 0;
  std::string s(text);
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ%n", &tm.tm_year,
                  &tm.tm_mon, &tm.tm_mday, &tm.tm_hour, &tm.tm_min,
                  &tm.tm_sec, &consumed) != 6 ||
      consumed != static_cast<int>(s.size())) {
    Fail(ErrorCode::kFormat, "bad timestamp '" + s + "'");
  }
  tm.tm_year -= 1900;
  tm.tm_mon -= 1;
  return static_cast<std::int64_t>(timegm(&tm));
}

}  // namespace evaladvisor
