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

// JSON-level request handlers shared by the HTTP service and the CLI, so both
// emit the same bytes for the same request.
//
//   POST /enquiries          Enquiry                 -> SuggestionReport
//   POST /retrievals         Enquiry                 -> {results, mode_trace}
//   GET  /rules              ?origin=&attribute=     -> [Rule]
//   GET  /cases/{id}                                 -> ExperimentRecord
//   GET  /cases              ?item=A:v&limit=&offset= -> {total, offset, records}
//   POST /cases              {items, provenance, supersedes?} -> ExperimentRecord
//   POST /feedback           {report_id, verdict, note} -> Feedback
//   GET  /feedback           ?report_id=             -> {report_id, feedback}
//   POST /admin/mine         MiningConfig            -> {rules, mined, ...}
//   GET  /vocabulary         ?attribute=             -> vocabulary document
//   POST /vocabulary/terms   {attribute, label, ...} -> term
//
// Errors are {"code": ..., "message": ...} with 400/404/409/422.

#ifndef EVALADVISOR_SERVICE_API_H_
#define EVALADVISOR_SERVICE_API_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evaladvisor/advisor.h"
#include "evaladvisor/error.h"
#include "json.hpp"

namespace evaladvisor {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
  ErrorCode code = ErrorCode::kInvalidInput;  // meaningful when !ok()

  bool ok() const { return status < 300; }
  // Compact serialization used on both transports.
  std::string Text() const { return body.dump(); }
};

struct CaseQuery {
  std::vector<std::string> items;  // "Attribute:value"
  std::optional<std::int64_t> limit;
  std::int64_t offset = 0;
};

class Api {
 public:
  explicit Api(Advisor &advisor) : advisor_(advisor) {}

  ApiResponse PostEnquiries(const std::string &body);
  ApiResponse PostRetrievals(const std::string &body);
  ApiResponse GetRules(const std::optional<std::string> &origin,
                       const std::optional<std::string> &attribute);
  ApiResponse GetCase(const std::string &id);
  ApiResponse GetCases(const CaseQuery &query);
  ApiResponse PostCases(const std::string &body);
  ApiResponse PostFeedback(const std::string &body);
  ApiResponse GetFeedback(const std::optional<std::string> &report_id);
  ApiResponse PostMine(const std::string &body);
  ApiResponse GetVocabulary(const std::optional<std::string> &attribute);
  ApiResponse PostTerm(const std::string &body);
  ApiResponse Import(const std::string &body);

  static ApiResponse ErrorResponse(const Error &e);
  std::string KbFingerprint() const { return advisor_.snapshot().kb->fingerprint(); }

 private:
  Advisor &advisor_;
};

// Thin httplib front end over Api.
class HttpService {
 public:
  explicit HttpService(Api &api);
  ~HttpService();

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int Bind(const std::string &host, int port);
  // Serves until Stop(). Call after Bind.
  bool Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Splits "host:port"; a bare port binds 127.0.0.1.
std::pair<std::string, int> ParseAddress(const std::string &addr);

}  // namespace evaladvisor

#endif  // EVALADVISOR_SERVICE_API_H_
