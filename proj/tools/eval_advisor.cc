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

// eval-advisor: command-line front end. Every command goes through the same
// Api handlers as the HTTP service and prints the same JSON.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evaladvisor/advisor.h"
#include "evaladvisor/error.h"
#include "evaladvisor/service_api.h"
#include "json.hpp"

namespace fs = std::filesystem;
using evaladvisor::Advisor;
using evaladvisor::AdvisorOptions;
using evaladvisor::Api;
using evaladvisor::ApiResponse;
using evaladvisor::Error;
using evaladvisor::ErrorCode;
using nlohmann::json;

namespace {

struct Globals {
  std::string data_dir;
  bool pretty = false;
  bool exact = false;
  int max_depth = evaladvisor::kDefaultMaxDepth;
};

std::string ReadInput(const std::string &path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) evaladvisor::Fail(ErrorCode::kNotFound, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json ItemArg(const std::string &text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    evaladvisor::Fail(ErrorCode::kInvalidInput, "item must look like Attribute:value, got '" + text + "'");
  }
  return {{"attribute", text.substr(0, colon)}, {"value", text.substr(colon + 1)}};
}

struct EnquiryArgs {
  std::string file;
  std::vector<std::string> features;
  std::vector<std::string> items;
  std::string mode;
  std::vector<std::string> attributes;

  void Attach(CLI::App *cmd) {
    cmd->add_option("--enquiry", file, "enquiry JSON file ('-' for stdin)");
    cmd->add_option("--feature,-f", features, "ServiceFeature value (repeatable)");
    cmd->add_option("--item,-i", items, "enquiry item as Attribute:value (repeatable)");
    cmd->add_option("--mode,-m", mode, "precise | heuristic | fuzzy | auto");
    cmd->add_option("--attr,--attribute,-a", attributes, "restrict suggestions to these attributes");
  }

  std::string Body() const {
    json j = json::object();
    if (!file.empty()) j = json::parse(ReadInput(file));
    if (!features.empty() || !items.empty()) {
      json list = json::array();
      for (const auto &f : features) list.push_back({{"attribute", "ServiceFeature"}, {"value", f}});
      for (const auto &i : items) list.push_back(ItemArg(i));
      j["items"] = list;
    }
    if (!mode.empty()) j["mode"] = mode;
    if (!attributes.empty()) j["attributes"] = attributes;
    return j.dump();
  }
};

int Emit(const ApiResponse &r, const Globals &g) {
  if (!r.ok()) {
    std::cerr << r.body.dump() << '\n';
    return evaladvisor::ExitStatus(r.code);
  }
  std::cout << (g.pretty ? r.body.dump(2) : r.body.dump()) << '\n';
  return 0;
}

int EmitError(const Error &e) {
  std::cerr << Api::ErrorResponse(e).body.dump() << '\n';
  return evaladvisor::ExitStatus(e.code());
}

AdvisorOptions Options(const Globals &g) {
  AdvisorOptions o;
  o.data_dir = g.data_dir;
  o.policy = g.exact ? evaladvisor::MatchPolicy::kExact : evaladvisor::MatchPolicy::kHierarchical;
  o.max_depth = g.max_depth;
  return o;
}

evaladvisor::HttpService *g_service = nullptr;

void OnSignal(int) {
  if (g_service) g_service->Stop();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"eval-advisor: evaluation-methodology advisor for cloud services"};
  app.require_subcommand(1);

  Globals g;
  const char *env_dir = std::getenv("EVAL_ADVISOR_DATA_DIR");
  g.data_dir = env_dir ? env_dir : "data";
  app.add_option("--data-dir", g.data_dir, "data directory (default $EVAL_ADVISOR_DATA_DIR or ./data)");
  app.add_flag("--pretty", g.pretty, "indent JSON output");
  app.add_flag("--exact", g.exact, "match terms exactly instead of through the taxonomy");
  app.add_option("--max-depth", g.max_depth, "maximum inference chain length")->check(CLI::PositiveNumber);

  auto *import_cmd = app.add_subcommand("import", "import a corpus file into the data directory");
  std::string corpus_file, vocab_file;
  import_cmd->add_option("--corpus,corpus", corpus_file, "corpus JSON file ('-' for stdin)")->required();
  import_cmd->add_option("--vocab", vocab_file, "vocabulary to install if the data directory has none");

  auto *mine_cmd = app.add_subcommand("mine", "mine rules and rebuild the knowledge base");
  std::optional<std::int64_t> min_coverage;
  std::string min_accuracy;
  std::optional<int> max_size;
  mine_cmd->add_option("--min-coverage", min_coverage, "minimum rule coverage");
  mine_cmd->add_option("--min-accuracy", min_accuracy, "minimum accuracy, e.g. 0.8 or 4/5");
  mine_cmd->add_option("--max-size", max_size, "largest itemset size");

  auto *ask_cmd = app.add_subcommand("ask", "suggest evaluation steps for an enquiry");
  EnquiryArgs ask_args;
  ask_args.Attach(ask_cmd);

  auto *retrieve_cmd = app.add_subcommand("retrieve", "retrieve experiment records for an enquiry");
  EnquiryArgs retrieve_args;
  retrieve_args.Attach(retrieve_cmd);

  auto *case_cmd = app.add_subcommand("case", "show one experiment record");
  std::string case_id;
  case_cmd->add_option("id", case_id, "record id")->required();

  auto *retain_cmd = app.add_subcommand("retain", "store a completed experiment");
  std::string retain_file;
  retain_cmd->add_option("record", retain_file, "{items, provenance, supersedes?} JSON ('-' for stdin)")->required();

  auto *feedback_cmd = app.add_subcommand("feedback", "record or list feedback on a report");
  std::string fb_report, fb_verdict, fb_note;
  feedback_cmd->add_option("--report", fb_report, "report id")->required();
  feedback_cmd->add_option("--verdict", fb_verdict, "helpful | not-helpful; omit to list");
  feedback_cmd->add_option("--note", fb_note, "free text");

  auto *serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  const char *env_addr = std::getenv("EVAL_ADVISOR_ADDR");
  std::string addr = env_addr ? env_addr : "127.0.0.1:8080";
  serve_cmd->add_option("--addr", addr, "host:port (default $EVAL_ADVISOR_ADDR or 127.0.0.1:8080)");

  auto *export_cmd = app.add_subcommand("export", "print rules, cases or vocabulary");
  std::string what;
  std::string origin, attribute;
  std::vector<std::string> case_items;
  std::optional<std::int64_t> limit;
  std::int64_t offset = 0;
  export_cmd->add_option("--what,what", what, "rules | cases | vocab")
      ->required()
      ->check(CLI::IsMember({"rules", "cases", "vocab"}));
  export_cmd->add_option("--origin", origin, "rules: mined | bridge | curated");
  export_cmd->add_option("--attribute", attribute, "rules: consequent attribute; vocab: attribute");
  export_cmd->add_option("--item", case_items, "cases: Attribute:value filter (repeatable)");
  export_cmd->add_option("--limit", limit, "cases: page size");
  export_cmd->add_option("--offset", offset, "cases: page start");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // Usage errors are invalid input; --help and --version still exit 0.
    const int status = app.exit(e);
    return status == 0 ? 0 : 1;
  }

  try {
    if (*import_cmd) {
      if (!vocab_file.empty() && !fs::exists(fs::path(g.data_dir) / "vocab.json")) {
        fs::create_directories(g.data_dir);
        fs::copy_file(vocab_file, fs::path(g.data_dir) / "vocab.json");
      }
      std::string body = ReadInput(corpus_file);
      Advisor advisor(Options(g));
      Api api(advisor);
      return Emit(api.Import(body), g);
    }

    Advisor advisor(Options(g));
    Api api(advisor);

    if (*mine_cmd) {
      json config = json::object();
      if (min_coverage) config["min_coverage"] = *min_coverage;
      if (!min_accuracy.empty()) config["min_accuracy"] = min_accuracy;
      if (max_size) config["max_itemset_size"] = *max_size;
      return Emit(api.PostMine(config.dump()), g);
    }
    if (*ask_cmd) return Emit(api.PostEnquiries(ask_args.Body()), g);
    if (*retrieve_cmd) return Emit(api.PostRetrievals(retrieve_args.Body()), g);
    if (*case_cmd) return Emit(api.GetCase(case_id), g);
    if (*retain_cmd) return Emit(api.PostCases(ReadInput(retain_file)), g);
    if (*feedback_cmd) {
      if (fb_verdict.empty()) return Emit(api.GetFeedback(fb_report), g);
      json body = {{"report_id", fb_report}, {"verdict", fb_verdict}, {"note", fb_note}};
      return Emit(api.PostFeedback(body.dump()), g);
    }
    if (*export_cmd) {
      if (what == "rules") {
        return Emit(api.GetRules(origin, attribute), g);
      }
      if (what == "cases") {
        evaladvisor::CaseQuery q;
        q.items = case_items;
        q.limit = limit;
        q.offset = offset;
        return Emit(api.GetCases(q), g);
      }
      return Emit(api.GetVocabulary(attribute), g);
    }
    if (*serve_cmd) {
      auto [host, port] = evaladvisor::ParseAddress(addr);
      evaladvisor::HttpService service(api);
      int bound = service.Bind(host, port);
      if (bound < 0) {
        std::cerr << json{{"code", "invalid-input"}, {"message", "cannot bind " + addr}}.dump() << '\n';
        return 1;
      }
      g_service = &service;
      std::signal(SIGINT, OnSignal);
      std::signal(SIGTERM, OnSignal);
      std::cerr << "listening on " << host << ':' << bound << std::endl;
      service.Run();
      g_service = nullptr;
      return 0;
    }
  } catch (const Error &e) {
    return EmitError(e);
  } catch (const json::exception &e) {
    return EmitError(Error(ErrorCode::kInvalidInput, e.what()));
  } catch (const fs::filesystem_error &e) {
    return EmitError(Error(ErrorCode::kInvalidInput, e.what()));
  }
  return 1;
}
