#pragma once

// Command-line front end: series, enumerate, analyze, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include "polyhex/analysis.hpp"
#include "polyhex/closedform.hpp"
#include "polyhex/column_dp.hpp"
#include "polyhex/enumerate.hpp"
#include "polyhex/temperley.hpp"
#include "polyhex/verify.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace polyhex::cli {

enum class Method { closed, system, dp, enumeration };
enum class Format { json, csv, text };

struct RunConfig {
  std::string subcommand;
  Model model = Model::level1;
  std::optional<int> order;
  std::optional<Method> method;
  Format format = Format::json;
  int digits = 15;
  int threads = 1;
  std::string output;
  std::vector<std::string> suites;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::map<std::string, Model>& model_names() {
  static const std::map<std::string, Model> m = {{"cc", Model::column_convex},
                                                 {"l1", Model::level1},
                                                 {"l2", Model::level2},
                                                 {"all", Model::all},
                                                 {"t1", Model::incomplete_level1}};
  return m;
}

inline const std::map<std::string, Method>& method_names() {
  static const std::map<std::string, Method> m = {
      {"closed", Method::closed}, {"system", Method::system}, {"dp", Method::dp}, {"enum", Method::enumeration}};
  return m;
}

inline const std::map<std::string, Format>& format_names() {
  static const std::map<std::string, Format> m = {{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};
  return m;
}

inline std::string method_name(Method m) {
  for (const auto& [k, v] : method_names())
    if (v == m) return k;
  return "?";
}

inline std::string model_name(Model m) {
  for (const auto& [k, v] : model_names())
    if (v == m) return k;
  return "?";
}

inline int dp_level(Model m) {
  switch (m) {
    case Model::column_convex: return 0;
    case Model::level1: return 1;
    case Model::level2: return 2;
    default: return -1;
  }
}

inline bool method_valid(Model model, Method method) {
  switch (method) {
    case Method::closed:
    case Method::system: return model == Model::level1;
    case Method::dp: return dp_level(model) >= 0;
    case Method::enumeration: return true;
  }
  return false;
}

inline Method default_method(Model model) {
  if (model == Model::level1) return Method::closed;
  if (dp_level(model) >= 0) return Method::dp;
  return Method::enumeration;
}

inline int max_order(Method m) {
  switch (m) {
    case Method::closed:
    case Method::system: return 1000;
    case Method::dp: return 200;
    case Method::enumeration: return kMaxEnumerationArea;
  }
  return 0;
}

inline void validate(RunConfig& cfg) {
  if (cfg.order && *cfg.order < 1) throw UsageError("--order must be at least 1");
  if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
  if (cfg.digits < 1 || cfg.digits > 200) throw UsageError("--digits must be in 1..200");
  if (cfg.subcommand == "series" || cfg.subcommand == "analyze") {
    if (!cfg.method) cfg.method = default_method(cfg.model);
    if (!method_valid(cfg.model, *cfg.method))
      throw UsageError("method " + method_name(*cfg.method) + " is not available for model " + model_name(cfg.model));
  }
  if (cfg.subcommand == "verify") {
    for (const auto& s : cfg.suites)
      if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw UsageError("unknown suite: " + s);
    if (cfg.suites.empty()) cfg.suites.assign(kSuites.begin(), kSuites.end());
  }
  const Method m = cfg.method.value_or(Method::enumeration);
  if (cfg.order && *cfg.order > max_order(m) && cfg.subcommand != "verify")
    throw UsageError("--order exceeds the limit of " + std::to_string(max_order(m)) + " for method " + method_name(m));
  if (cfg.subcommand == "verify" && cfg.order && *cfg.order > max_order(Method::closed))
    throw UsageError("--order exceeds 1000");
}

inline int default_order(const RunConfig& cfg) {
  if (cfg.subcommand == "analyze") {
    switch (cfg.method.value_or(Method::enumeration)) {
      case Method::closed:
      case Method::system: return 250;
      case Method::dp: return 40;
      case Method::enumeration: return 12;
    }
  }
  if (cfg.subcommand == "verify") return 40;
  if (cfg.subcommand == "enumerate") return 10;
  return 12;
}

inline CoefficientTable compute_series(Model model, Method method, int N, int threads) {
  switch (method) {
    case Method::closed: return table_from_series(model, a1_closed(N), N);
    case Method::system: return table_from_series(model, solve_system(N).A1, N);
    case Method::dp: return dp_count_subconvex(dp_level(model), N, threads);
    case Method::enumeration: {
      if (model == Model::incomplete_level1) return enumerate_tallies(N, {threads, N}).incomplete_table();
      const auto tally = enumerate_tallies(N, {threads, 0});
      return model == Model::all ? tally.all_table() : tally.level(dp_level(model));
    }
  }
  throw std::logic_error("unknown method");
}

inline void write_table(std::ostream& out, const CoefficientTable& t, Format f, const std::string& method) {
  switch (f) {
    case Format::json: {
      auto j = to_json(t);
      j["method"] = method;
      out << j.dump(2) << "\n";
      break;
    }
    case Format::csv:
      out << "n,count\n";
      for (int n = 1; n <= t.max_area(); ++n) out << n << "," << t(n).get_str() << "\n";
      break;
    case Format::text:
      out << "# " << to_string(t.model) << " (" << method << ")\n";
      for (int n = 1; n <= t.max_area(); ++n) out << n << " " << t(n).get_str() << "\n";
      break;
  }
}

inline int cmd_series(const RunConfig& cfg, std::ostream& out) {
  const int N = cfg.order.value_or(default_order(cfg));
  write_table(out, compute_series(cfg.model, *cfg.method, N, cfg.threads), cfg.format, method_name(*cfg.method));
  return 0;
}

inline nlohmann::json to_json(const EnumerationTally& t) {
  auto strings = [](const std::vector<Integer>& v) {
    auto a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
  };
  nlohmann::json j;
  j["max_area"] = t.max_area;
  j["counts"] = {{"all", strings(t.all)},
                 {"column_convex", strings(t.level(0).counts)},
                 {"level1", strings(t.level(1).counts)},
                 {"level2", strings(t.level(2).counts)}};
  j["level1_height_sum"] = strings(t.level1_height_sum);
  j["classify_max_area"] = t.classify_max_area;
  if (t.classify_max_area > 0) {
    j["counts"]["incomplete_level1"] = strings(t.incomplete_level1);
    nlohmann::json classes;
    for (ClassLabel l : kAllClassLabels) classes[std::string(to_string(l))] = strings(t.by_class.at(l));
    j["classes"] = classes;
  }
  return j;
}

inline constexpr int kEnumerateClassifyLimit = 10;

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const int N = cfg.order.value_or(default_order(cfg));
  if (N > kMaxEnumerationArea) throw UsageError("--max-area exceeds " + std::to_string(kMaxEnumerationArea));
  const int classify_to = cfg.model == Model::incomplete_level1 ? N : std::min(N, kEnumerateClassifyLimit);
  const auto tally = enumerate_tallies(N, {cfg.threads, classify_to});
  if (cfg.format == Format::json) {
    out << to_json(tally).dump(2) << "\n";
    return 0;
  }
  CoefficientTable t;
  switch (cfg.model) {
    case Model::all: t = tally.all_table(); break;
    case Model::incomplete_level1: t = tally.incomplete_table(); break;
    default: t = tally.level(dp_level(cfg.model));
  }
  write_table(out, t, cfg.format, "enum");
  return 0;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const int N = cfg.order.value_or(default_order(cfg));
  const auto table = compute_series(cfg.model, *cfg.method, N, cfg.threads);
  AnalysisOptions opts;
  opts.certified_pole = *cfg.method == Method::closed || *cfg.method == Method::system;
  const auto rep = analyze(table, opts);
  auto j = to_json(rep, cfg.digits);
  j["method"] = method_name(*cfg.method);
  if (cfg.format == Format::json) {
    out << j.dump(2) << "\n";
  } else if (cfg.format == Format::csv) {
    out << "n,ratio\n";
    for (const auto& [n, r] : rep.ratio_table) out << n << "," << decimal(r, cfg.digits) << "\n";
  } else {
    out << "model " << j["model"].get<std::string>() << " terms " << rep.terms_used << "\n";
    if (rep.q_c) out << "q_c " << rep.q_c->to_string(cfg.digits) << "\ntau " << rep.tau->to_string(cfg.digits) << "\n";
    if (rep.tau_estimate) out << "tau_estimate " << rep.tau_estimate->value.to_string(cfg.digits) << "\n";
    if (rep.amplitude) out << "amplitude " << rep.amplitude->value.to_string(cfg.digits) << "\n";
    out << "lower_bound " << rep.lower_bound.value.to_string(cfg.digits, MPFR_RNDD) << " (n = " << rep.lower_bound.n
        << ")\n";
    for (const auto& note : rep.notes) out << "note: " << note << "\n";
  }
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const int N = cfg.order.value_or(default_order(cfg));
  std::vector<CheckResult> results;
  for (const auto& s : cfg.suites) {
    auto r = run_suite(s, N, cfg.threads);
    results.insert(results.end(), r.begin(), r.end());
  }
  const bool ok = std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed; });
  if (cfg.format == Format::json) {
    nlohmann::json j;
    j["order"] = N;
    j["passed"] = ok;
    auto checks = nlohmann::json::array();
    for (const auto& c : results) checks.push_back(polyhex::to_json(c));
    j["checks"] = checks;
    out << j.dump(2) << "\n";
  } else if (cfg.format == Format::csv) {
    out << "suite,check,passed\n";
    for (const auto& c : results) out << c.suite << ",\"" << c.name << "\"," << (c.passed ? "true" : "false") << "\n";
  } else {
    for (const auto& c : results)
      out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
          << "\n";
    out << (ok ? "all checks passed" : "some checks failed") << "\n";
  }
  return ok ? 0 : 1;
}

// Returns the process exit code: 0 success, 1 computation failure, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration and series analysis for column-subconvex polyhexes", "polyhex"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string model = "l1", method, format = "json";
  int order = 0;

  app.add_option("--model", model, "cc, l1, l2, all or t1")
      ->check(CLI::IsMember({"cc", "l1", "l2", "all", "t1"}));
  app.add_option("--order,--max-area", order, "number of terms / largest area");
  app.add_option("--method", method, "closed, system, dp or enum")->check(CLI::IsMember({"closed", "system", "dp", "enum"}));
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--digits", cfg.digits, "significant digits for reals");
  app.add_option("--threads", cfg.threads, "worker threads");
  app.add_option("--output", cfg.output, "write to this file instead of stdout");
  app.add_option("--suite", cfg.suites, "series, partition, functional, analysis (repeatable)");

  app.add_subcommand("series", "coefficients a_1..a_N of one model");
  app.add_subcommand("enumerate", "exhaustive enumeration with per-model and per-class tallies");
  app.add_subcommand("analyze", "singularity, growth constant, bounds and amplitude");
  app.add_subcommand("verify", "cross-check the independent pipelines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.model = model_names().at(model);
  if (!method.empty()) cfg.method = method_names().at(method);
  cfg.format = format_names().at(format);
  if (app.count("--order")) cfg.order = order;

  try {
    validate(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream buffer;
  int code = 0;
  try {
    if (cfg.subcommand == "series") code = cmd_series(cfg, buffer);
    else if (cfg.subcommand == "enumerate") code = cmd_enumerate(cfg, buffer);
    else if (cfg.subcommand == "analyze") code = cmd_analyze(cfg, buffer);
    else code = cmd_verify(cfg, buffer);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output);
    if (!(file << buffer.str())) {
      err << "error: cannot write " << cfg.output << "\n";
      return 1;
    }
  }
  return code;
}

}  // namespace polyhex::cli
