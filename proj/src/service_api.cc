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

#include "evaladvisor/service_api.h"

#include <charconv>

#include "evaladvisor/error.h"
#include "httplib.h"

namespace evaladvisor {

using nlohmann::json;

namespace {

json ParseBody(const std::string &body, bool allow_empty = false) {
  if (allow_empty && body.find_first_not_of(" \t\r\n") == std::string::npos) {
    return json::object();
  }
  try {
    return json::parse(body);
  } catch (const json::exception &e) {
    Fail(ErrorCode::kInvalidInput, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename Fn>
ApiResponse Guard(Fn fn) {
  try {
    return fn();
  } catch (const Error &e) {
    return Api::ErrorResponse(e);
  } catch (const json::exception &e) {
    return Api::ErrorResponse(Error(ErrorCode::kInvalidInput, e.what()));
  }
}

Item ParseItemParam(const Vocabulary &vocab, const std::string &text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    Fail(ErrorCode::kInvalidInput, "item filter must look like Attribute:value, got '" + text + "'");
  }
  return vocab.Resolve(ParseAttribute(text.substr(0, colon)), text.substr(colon + 1));
}

}  // namespace

ApiResponse Api::ErrorResponse(const Error &e) {
  return {HttpStatus(e.code()), {{"code", WireCode(e.code())}, {"message", e.what()}}, e.code()};
}

ApiResponse Api::PostEnquiries(const std::string &body) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    Enquiry enquiry = EnquiryFromJson(*s.vocab, ParseBody(body));
    Snapshot used;
    SuggestionReport report = advisor_.Suggest(enquiry, &used);
    return ApiResponse{200, ReportToJson(*used.vocab, *used.kb, report)};
  });
}

ApiResponse Api::PostRetrievals(const std::string &body) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    Enquiry enquiry = EnquiryFromJson(*s.vocab, ParseBody(body));
    RetrievalOutcome outcome = CaseRetriever(*s.store, *s.kb, advisor_.options().max_depth).Retrieve(enquiry);
    return ApiResponse{200, OutcomeToJson(*s.vocab, outcome)};
  });
}

ApiResponse Api::GetRules(const std::optional<std::string> &origin,
                          const std::optional<std::string> &attribute) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    std::optional<RuleOrigin> o;
    if (origin && !origin->empty()) o = ParseOrigin(*origin);
    std::optional<StepAttribute> a;
    if (attribute && !attribute->empty()) a = ParseAttribute(*attribute);
    json out = json::array();
    for (const Rule &rule : s.kb->rules()) {
      if (o && rule.origin != *o) continue;
      if (a && rule.consequent.attribute != *a) continue;
      out.push_back(RuleToJson(*s.vocab, rule));
    }
    return ApiResponse{200, out};
  });
}

ApiResponse Api::GetCase(const std::string &id) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    return ApiResponse{200, RecordToJson(*s.vocab, s.store->Get(id))};
  });
}

ApiResponse Api::GetCases(const CaseQuery &query) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    if (query.offset < 0) Fail(ErrorCode::kInvalidInput, "offset must be non-negative");
    if (query.limit && *query.limit < 0) Fail(ErrorCode::kInvalidInput, "limit must be non-negative");
    std::vector<const ExperimentRecord *> hits;
    if (query.items.empty()) {
      // Unfiltered: the full export, superseded versions included.
      for (const auto &r : s.store->records()) hits.push_back(&r);
    } else {
      ItemSet items;
      for (const auto &text : query.items) items.push_back(ParseItemParam(*s.vocab, text));
      Canonicalize(items);
      hits = s.store->QueryByItems(items);
    }
    json records = json::array();
    const auto total = static_cast<std::int64_t>(hits.size());
    const std::int64_t end = query.limit ? std::min(total, query.offset + *query.limit) : total;
    for (std::int64_t i = query.offset; i < end; ++i) records.push_back(RecordToJson(*s.vocab, *hits[i]));
    return ApiResponse{200, {{"total", total}, {"offset", query.offset}, {"records", records}}};
  });
}

ApiResponse Api::PostCases(const std::string &body) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    json j = ParseBody(body);
    if (!j.is_object()) Fail(ErrorCode::kInvalidInput, "case must be a JSON object");
    ItemSet items = ItemsFromJson(*s.vocab, j.value("items", json()));
    Provenance provenance = ProvenanceFromJson(j.value("provenance", json()));
    std::optional<std::string> supersedes;
    if (j.contains("supersedes") && !j["supersedes"].is_null()) {
      supersedes = j["supersedes"].get<std::string>();
    }
    ExperimentRecord record = advisor_.Retain(std::move(items), std::move(provenance), supersedes);
    return ApiResponse{201, RecordToJson(*s.vocab, record)};
  });
}

ApiResponse Api::PostFeedback(const std::string &body) {
  return Guard([&] {
    Feedback f = advisor_.RecordFeedback(FeedbackFromJson(ParseBody(body)));
    return ApiResponse{201, FeedbackToJson(f)};
  });
}

ApiResponse Api::GetFeedback(const std::optional<std::string> &report_id) {
  return Guard([&] {
    if (!report_id || report_id->empty()) Fail(ErrorCode::kInvalidInput, "report_id is required");
    if (!advisor_.HasReport(*report_id)) Fail(ErrorCode::kNotFound, "no report '" + *report_id + "'");
    json list = json::array();
    for (const auto &f : advisor_.FeedbackFor(*report_id)) list.push_back(FeedbackToJson(f));
    return ApiResponse{200, {{"report_id", *report_id}, {"feedback", list}}};
  });
}

ApiResponse Api::PostMine(const std::string &body) {
  return Guard([&] {
    MiningConfig config = MiningConfig::FromJson(ParseBody(body, true));
    return ApiResponse{200, advisor_.Mine(config).ToJson()};
  });
}

ApiResponse Api::GetVocabulary(const std::optional<std::string> &attribute) {
  return Guard([&] {
    Snapshot s = advisor_.snapshot();
    std::optional<StepAttribute> a;
    if (attribute && !attribute->empty()) a = ParseAttribute(*attribute);
    return ApiResponse{200, s.vocab->ToJson(a)};
  });
}

ApiResponse Api::PostTerm(const std::string &body) {
  return Guard([&] {
    json j = ParseBody(body);
    if (!j.is_object()) Fail(ErrorCode::kInvalidInput, "term must be a JSON object");
    StepAttribute attribute = ParseAttribute(j.at("attribute").get<std::string>());
    std::string label = j.at("label").get<std::string>();
    std::vector<std::string> synonyms = j.value("synonyms", std::vector<std::string>{});
    std::optional<std::string> parent;
    if (j.contains("parent") && !j["parent"].is_null()) parent = j["parent"].get<std::string>();
    Term term = advisor_.AddTerm(attribute, label, synonyms, parent, j.value("description", std::string()));
    Snapshot s = advisor_.snapshot();
    return ApiResponse{201, {{"attribute", AttributeName(term.attribute)},
                             {"label", term.label},
                             {"synonyms", term.synonyms},
                             {"parent", term.parent ? json(s.vocab->label(*term.parent)) : json()},
                             {"description", term.description}}};
  });
}

ApiResponse Api::Import(const std::string &body) {
  return Guard([&] {
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::exception &e) {
      Fail(ErrorCode::kFormat, std::string("corpus is not JSON: ") + e.what());
    }
    return ApiResponse{200, advisor_.ImportCorpus(doc).ToJson()};
  });
}

// --- HTTP --------------------------------------------------------------------

std::pair<std::string, int> ParseAddress(const std::string &addr) {
  std::string host = "127.0.0.1";
  std::string port = addr;
  auto colon = addr.rfind(':');
  if (colon != std::string::npos) {
    host = addr.substr(0, colon);
    port = addr.substr(colon + 1);
  }
  int value = -1;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value < 0 || value > 65535) {
    Fail(ErrorCode::kInvalidInput, "bad address '" + addr + "'");
  }
  return {host.empty() ? "127.0.0.1" : host, value};
}

struct HttpService::Impl {
  httplib::Server server;
};

namespace {

void Send(httplib::Response &res, const ApiResponse &r) {
  res.status = r.status;
  res.set_content(r.Text(), "application/json");
}

std::optional<std::string> Param(const httplib::Request &req, const char *name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

std::optional<std::int64_t> IntParam(const httplib::Request &req, const char *name) {
  auto text = Param(req, name);
  if (!text) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
  if (ec != std::errc() || ptr != text->data() + text->size()) {
    Fail(ErrorCode::kInvalidInput, std::string(name) + " must be an integer");
  }
  return value;
}

}  // namespace

HttpService::HttpService(Api &api) : impl_(std::make_unique<Impl>()) {
  auto &s = impl_->server;
  s.Post("/enquiries", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.PostEnquiries(req.body));
  });
  s.Post("/retrievals", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.PostRetrievals(req.body));
  });
  s.Get("/rules", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.GetRules(Param(req, "origin"), Param(req, "attribute")));
  });
  s.Get(R"(/cases/([^/]+))", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.GetCase(req.matches[1]));
  });
  s.Get("/cases", [&api](const httplib::Request &req, httplib::Response &res) {
    CaseQuery q;
    try {
      for (std::size_t i = 0; i < req.get_param_value_count("item"); ++i) {
        q.items.push_back(req.get_param_value("item", i));
      }
      q.limit = IntParam(req, "limit");
      q.offset = IntParam(req, "offset").value_or(0);
    } catch (const Error &e) {
      Send(res, Api::ErrorResponse(e));
      return;
    }
    Send(res, api.GetCases(q));
  });
  s.Post("/cases", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.PostCases(req.body));
  });
  s.Post("/feedback", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.PostFeedback(req.body));
  });
  s.Get("/feedback", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.GetFeedback(Param(req, "report_id")));
  });
  s.Post("/admin/mine", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.PostMine(req.body));
  });
  s.Get("/vocabulary", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.GetVocabulary(Param(req, "attribute")));
  });
  s.Post("/vocabulary/terms", [&api](const httplib::Request &req, httplib::Response &res) {
    Send(res, api.PostTerm(req.body));
  });
  // Lets a client notice that its stored reports predate the current KB.
  s.set_post_routing_handler([&api](const httplib::Request &, httplib::Response &res) {
    res.set_header("X-KB-Fingerprint", api.KbFingerprint());
  });
  s.set_exception_handler([](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"code", "internal"}, {"message", message}}.dump(), "application/json");
  });
  s.set_error_handler([](const httplib::Request &, httplib::Response &res) {
    if (!res.body.empty()) return;
    res.set_content(json{{"code", res.status == 404 ? "not-found" : "invalid-input"},
                         {"message", "no such route"}}.dump(),
                    "application/json");
  });
}

HttpService::~HttpService() = default;

int HttpService::Bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::Run() { return impl_->server.listen_after_bind(); }

void HttpService::Stop() { impl_->server.stop(); }

}  // namespace evaladvisor
