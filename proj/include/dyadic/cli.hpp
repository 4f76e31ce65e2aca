#ifndef DYADIC_CLI_HPP
#define DYADIC_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dyadic/coding.hpp"
#include "dyadic/construction.hpp"
#include "dyadic/io.hpp"

namespace dyadic {

enum class OutputFormat { text, json };

struct RunConfig {
  std::string command;  // kernel | build | check | encode | decode | report
  std::string space_path;
  std::string subbase_path;
  std::size_t depth = 6;
  std::size_t levels = 4;
  Rational epsilon = Rational(1);
  DegreeMode degree_mode = DegreeMode::unconstrained;
  bool emit_trace = false;
  OutputFormat format = OutputFormat::text;
  std::string property = "all";  // proper | independent | dyadic | degree | resolution | all
  bool on_kernel = false;
  std::vector<std::string> points;
  std::optional<std::size_t> length;
  std::string word;
  std::uint64_t seed = 1;
  std::size_t probes = 32;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCounterexample = 2;

namespace detail {

inline std::string report_line(const CheckReport& r) {
  std::string name = property_name(r.property);
  std::string head;
  switch (r.property) {
    case Property::proper:
    case Property::independent:
      head = name + "@" + std::to_string(r.depth) + ": " + (r.passed ? "PASS" : "FAIL") + " (" +
             std::to_string(r.words_checked) + " words)";
      break;
    case Property::dyadic:
      head = name + ": " + (r.passed ? "PASS" : "FAIL") + " (" + std::to_string(r.depth) + " pairs)";
      break;
    case Property::degree:
      head = name + ": " + (r.passed ? "PASS" : "FAIL") + " (sup " + std::to_string(r.degree_sup.value_or(0));
      if (r.expected_degree) head += ", expected " + std::to_string(*r.expected_degree);
      head += std::string(", boundaries ") + (r.boundaries_disjoint.value_or(true) ? "disjoint" : "overlap") + ")";
      break;
    case Property::resolution:
      head = name + "@" + (r.epsilon ? r.epsilon->str() : "?") + ": " + (r.passed ? "PASS" : "FAIL") + " (" +
             std::to_string(r.probes_checked) + " probes)";
      break;
  }
  for (const auto& c : r.counterexamples) {
    head += "\n  ";
    if (c.word) head += "word " + c.word->render(r.depth, false) + " ";
    if (c.index) head += "index " + std::to_string(*c.index) + " ";
    if (c.point) head += "at " + c.point->str() + " ";
    head += c.detail;
  }
  if (r.counterexamples_found > r.counterexamples.size()) {
    head += "\n  (" + std::to_string(r.counterexamples_found - r.counterexamples.size()) + " more)";
  }
  return head;
}

inline std::size_t dimension_of(const SpaceDescription& space) { return space.intervals().empty() ? 0 : 1; }

inline std::optional<std::size_t> expected_degree(const RunConfig& c, const SpaceDescription& space) {
  if (c.degree_mode != DegreeMode::match_dim) return std::nullopt;
  return dimension_of(space);
}

/// Runs the requested checks on a loaded subbase. When the subbase declares
/// its kernel levels (or --on-kernel is given), independence is checked on
/// the restriction to the kernel; "all" skips it for an empty kernel.
inline std::vector<CheckReport> run_checks(const LoadedSubbase& loaded, const RunConfig& c) {
  const DyadicSubbase& sub = loaded.subbase;
  const SpacePtr& space = sub.space();
  std::vector<CheckReport> out;
  bool all = c.property == "all";
  auto want = [&](const char* p) { return all || c.property == p; };
  if (!all && c.property != "proper" && c.property != "independent" && c.property != "dyadic" &&
      c.property != "degree" && c.property != "resolution") {
    throw input_error("unknown property '" + c.property + "'");
  }
  auto probes = sample_points(space, c.probes, c.seed);
  if (want("dyadic")) out.push_back(check_dyadic(sub));
  if (want("proper")) out.push_back(check_proper(sub, c.depth));
  if (want("independent")) {
    if (c.on_kernel || loaded.kernel_levels) {
      auto kernel = cb_kernel(space).kernel;
      std::size_t count = loaded.kernel_levels.value_or(sub.size());
      if (!(all && kernel->is_empty())) {
        out.push_back(check_independent(restrict_subbase(sub, kernel, count), std::min(c.depth, count)));
      }
    } else {
      out.push_back(check_independent(sub, c.depth));
    }
  }
  if (want("degree")) {
    out.push_back(degree_report(sub, sub.size(), probes, expected_degree(c, *space)));
    out.back().seed = c.seed;
  }
  if (want("resolution")) {
    out.push_back(resolution_check(sub, c.epsilon, probes));
    out.back().seed = c.seed;
  }
  return out;
}

inline bool all_passed(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs) {
    if (!r.passed) return false;
  }
  return true;
}

inline void print_reports(const std::vector<CheckReport>& rs, std::ostream& out) {
  for (const auto& r : rs) out << report_line(r) << "\n";
}

inline std::vector<CheckReport> bundle_list(const ReportBundle& b) {
  std::vector<CheckReport> out{b.dyadic, b.proper};
  if (b.independent) out.push_back(*b.independent);
  out.push_back(b.degree);
  out.push_back(b.resolution);
  return out;
}

inline BuildResult build(const RunConfig& c) {
  if (c.space_path.empty()) throw input_error("--space is required");
  if (c.depth > kDepthLimit) throw input_error("--depth above " + std::to_string(kDepthLimit));
  if (c.levels > kLevelLimit) throw input_error("--levels above " + std::to_string(kLevelLimit));
  BuildOptions o;
  o.levels = c.levels;
  o.mode = c.degree_mode;
  o.check_depth = c.depth;
  o.epsilon = c.epsilon;
  o.seed = c.seed;
  o.probe_count = c.probes;
  return build_proper_subbase(load_space(c.space_path), o);
}

inline LoadedSubbase require_subbase(const RunConfig& c) {
  if (c.subbase_path.empty()) throw input_error("--subbase is required");
  return load_subbase(c.subbase_path);
}

inline int run_command(const RunConfig& c, std::ostream& out) {
  bool json = c.format == OutputFormat::json;
  if (c.depth > kDepthLimit) throw input_error("--depth above " + std::to_string(kDepthLimit));

  if (c.command == "kernel") {
    if (c.space_path.empty()) throw input_error("--space is required");
    auto report = cb_kernel(load_space(c.space_path));
    if (json) out << to_json(report).dump(2) << "\n";
    else out << report.str() << "\n";
    return kExitPass;
  }

  if (c.command == "build") {
    auto r = build(c);
    if (json) {
      out << to_json(r, c.emit_trace).dump(2) << "\n";
    } else {
      out << r.kernel.str() << "\n";
      out << "pairs: " << r.subbase.size() << " (kernel levels " << r.kernel_levels << ")\n";
      for (std::size_t n = 0; n < r.subbase.size(); ++n) {
        out << "S_" << n << ",0 = " << r.subbase[n].zero.str() << "\n";
      }
      print_reports(bundle_list(r.reports), out);
      if (c.emit_trace) {
        for (const auto& t : r.traces) out << "trace " << t.level << ": " << to_json(t).dump() << "\n";
      }
    }
    return r.reports.passed() ? kExitPass : kExitCounterexample;
  }

  if (c.command == "check") {
    auto loaded = require_subbase(c);
    auto reports = run_checks(loaded, c);
    if (json) {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << Json{{"reports", arr}}.dump(2) << "\n";
    } else {
      print_reports(reports, out);
    }
    return all_passed(reports) ? kExitPass : kExitCounterexample;
  }

  if (c.command == "encode") {
    auto loaded = require_subbase(c);
    if (c.points.empty()) throw input_error("--point is required");
    std::size_t length = c.length.value_or(loaded.subbase.size());
    Json arr = Json::array();
    for (const auto& text : c.points) {
      Rational x = Rational::parse(text);
      if (!loaded.subbase.space()->contains(x)) throw input_error("point " + x.str() + " is not in the space");
      if (length > loaded.subbase.size()) throw input_error("--length exceeds the subbase size");
      auto coded = encode_point(loaded.subbase, x, length);
      if (json) {
        arr.push_back(Json{{"point", x.str()}, {"word", coded.render(false)}, {"bottoms", coded.bottom_count()}});
      } else {
        out << x.str() << " " << coded.render(false) << "\n";
      }
    }
    if (json) out << arr.dump(2) << "\n";
    return kExitPass;
  }

  if (c.command == "decode") {
    auto loaded = require_subbase(c);
    auto word = TernaryWord::parse(c.word);
    if (word.span() > loaded.subbase.size()) throw input_error("--word is longer than the subbase");
    auto set = decode_word(loaded.subbase, word);
    if (json) out << to_json(set).dump(2) << "\n";
    else out << set.str() << "\n";
    return kExitPass;
  }

  if (c.command == "report") {
    std::vector<CheckReport> reports;
    KernelReport kernel;
    if (!c.subbase_path.empty()) {
      auto loaded = require_subbase(c);
      kernel = cb_kernel(loaded.subbase.space());
      RunConfig all = c;
      all.property = "all";
      reports = run_checks(loaded, all);
    } else {
      auto r = build(c);
      kernel = r.kernel;
      reports = bundle_list(r.reports);
    }
    if (json) {
      Json arr = Json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << Json{{"kernel", to_json(kernel)}, {"reports", arr}}.dump(2) << "\n";
    } else {
      out << kernel.str() << "\n";
      print_reports(reports, out);
    }
    return all_passed(reports) ? kExitPass : kExitCounterexample;
  }

  throw input_error("unknown command '" + c.command + "'");
}

}  // namespace detail

/// Executes one command. Exit codes: 0 passed, 2 counterexample found,
/// 1 input or validation error (message on `err`).
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return detail::run_command(config, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "error: malformed JSON field: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace dyadic

#endif  // DYADIC_CLI_HPP
