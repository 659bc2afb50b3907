#include "matchstick/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "matchstick/lang.hpp"
#include "matchstick/oracle.hpp"
#include "matchstick/render.hpp"
#include "matchstick/trace.hpp"
#include "matchstick/verifier.hpp"

namespace matchstick::cli {

namespace {

struct ConfigFlags {
  std::optional<long> precision;
  std::optional<long> max_precision;
  std::optional<std::string> epsilon;
  std::optional<std::string> epsilon_cmp;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> choice_strategy;
  std::optional<int> output_digits;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--precision", f.precision, "working precision in bits");
  cmd->add_option("--max-precision", f.max_precision, "precision ceiling for escalation");
  cmd->add_option("--epsilon", f.epsilon, "predicate tolerance, e.g. 2^-128");
  cmd->add_option("--epsilon-cmp", f.epsilon_cmp, "end-to-end tolerance, e.g. 2^-64");
  cmd->add_option("--seed", f.seed, "seed for free choices");
  cmd->add_option("--choice-strategy", f.choice_strategy, "half or random");
  cmd->add_option("--output-digits", f.output_digits, "significant digits of trace coordinates");
}

/// Defaults, then the file named by MATCHSTICK_CONFIG, then flags.
Config resolve(const ConfigFlags& f) {
  Config c;
  if (const char* path = std::getenv(kConfigEnv); path != nullptr && *path != '\0') {
    c = load_config_file(path);
  }
  if (f.precision) c.precision_bits = *f.precision;
  if (f.max_precision) c.max_precision_bits = *f.max_precision;
  if (f.epsilon) c.epsilon_eq = *f.epsilon;
  if (f.epsilon_cmp) c.epsilon_cmp = *f.epsilon_cmp;
  if (f.seed) c.seed = *f.seed;
  if (f.choice_strategy) c.choice_strategy = parse_choice_strategy(*f.choice_strategy);
  if (f.output_digits) c.output_digits = *f.output_digits;
  c.validate();
  return c;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) {
    throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  }
}

/// Writes to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

struct Source {
  std::string path;
  std::string text;
};

class Driver {
 public:
  Driver(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int compile(const std::string& source_path, const std::string& output, const ConfigFlags& flags) {
    Config config;
    Source src;
    try {
      config = resolve(flags);
      src = {source_path, read_text(source_path)};
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return 2;
    }
    std::optional<lang::Lowered> lowered = build(src, config, "");
    if (!lowered) {
      return 1;
    }
    try {
      emit(output, trace::serialize(lowered->board.trace()), out_);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return 2;
    }
    return 0;
  }

  int verify(const std::string& trace_path, bool strict, bool json) {
    trace::Trace t;
    try {
      t = trace::read_file(trace_path);
    } catch (const Error& e) {
      err_ << trace_path << ": " << e.what() << '\n';
      return 2;
    }
    const verifier::VerifyReport report = verifier::verify(t, {strict});
    out_ << (json ? report.to_json() + "\n" : report.to_text());
    return report.accepted() ? 0 : 1;
  }

  int render(const std::string& trace_path, const std::string& output) {
    try {
      emit(output, render::svg(trace::read_file(trace_path)), out_);
    } catch (const Error& e) {
      err_ << trace_path << ": " << e.what() << '\n';
      return 2;
    }
    return 0;
  }

  int check(const std::string& source_path, const std::string& trace_out, const ConfigFlags& flags, bool json) {
    Config config;
    Source src;
    try {
      config = resolve(flags);
      src = {source_path, read_text(source_path)};
    } catch (const Error& e) {
      err_ << "compile: " << e.what() << '\n';
      return 1;
    }
    std::optional<lang::Lowered> lowered = build(src, config, "compile: ");
    if (!lowered) {
      return 1;
    }
    const std::string text = trace::serialize(lowered->board.trace());
    if (!trace_out.empty()) {
      try {
        write_text(trace_out, text);
      } catch (const Error& e) {
        err_ << "compile: " << e.what() << '\n';
        return 1;
      }
    }
    const verifier::VerifyReport verdict = verifier::verify_trace(text);
    const auto& s = verdict.stats;
    out_ << "instructions: " << s.primitives << " primitives in " << s.records << " records";
    for (const auto& [kind, count] : s.by_kind) {
      out_ << ", " << kind << ' ' << count;
    }
    out_ << "\nprecision: " << s.working_bits << " bits, peak " << s.peak_bits << ", " << s.escalations
         << " escalations\n";
    if (!verdict.accepted()) {
      out_ << verdict.to_text();
      err_ << "verify: trace rejected\n";
      return 2;
    }
    out_ << "verify: Accept\n";
    return compare(src, lowered->board, config, json);
  }

  int oracle(const std::string& source_path, const std::string& trace_path, bool json) {
    Source src;
    lang::Program program;
    try {
      src = {source_path, read_text(source_path)};
      program = lang::parse(src.text);
    } catch (const lang::CompileError& e) {
      err_ << e.render(src.text, src.path);
      return 1;
    } catch (const Error& e) {
      err_ << "compile: " << e.what() << '\n';
      return 1;
    }
    trace::Trace t;
    try {
      t = trace::read_file(trace_path);
    } catch (const Error& e) {
      err_ << trace_path << ": " << e.what() << '\n';
      return 2;
    }
    try {
      const oracle::OracleReport report =
          oracle::compare(program, oracle::constructed_outputs(t), trace::config_of(t.header));
      out_ << (json ? report.to_json() + "\n" : report.to_text());
      return report.pass() ? 0 : 3;
    } catch (const Error& e) {
      err_ << "oracle: " << e.what() << '\n';
      return e.code() == ErrorCode::MissingOutput ? 3 : 2;
    }
  }

 private:
  std::optional<lang::Lowered> build(const Source& src, const Config& config, std::string_view stage) {
    try {
      return lang::lower(lang::parse(src.text), config);
    } catch (const lang::CompileError& e) {
      err_ << stage << e.render(src.text, src.path);
    } catch (const Error& e) {
      err_ << stage << src.path << ": error: " << e.what() << '\n';
    }
    return std::nullopt;
  }

  int compare(const Source& src, const Board& board, const Config& config, bool json) {
    try {
      const oracle::OracleReport report =
          oracle::compare(lang::parse(src.text), oracle::constructed_outputs(board), config);
      out_ << (json ? report.to_json() + "\n" : report.to_text());
      if (!report.pass()) {
        err_ << "oracle: outputs differ from the analytic construction\n";
        return 3;
      }
      return 0;
    } catch (const Error& e) {
      err_ << "oracle: " << e.what() << '\n';
      return 3;
    }
  }

  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

Config load_config_file(const std::string& path) {
  const std::string text = read_text(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::InvalidConfig, path + ": expected a JSON object");
  }
  Config c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "precision_bits") {
        c.precision_bits = value.get<long>();
      } else if (key == "max_precision_bits") {
        c.max_precision_bits = value.get<long>();
      } else if (key == "epsilon_eq") {
        c.epsilon_eq = value.get<std::string>();
      } else if (key == "epsilon_cmp") {
        c.epsilon_cmp = value.get<std::string>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "choice_strategy") {
        c.choice_strategy = parse_choice_strategy(value.get<std::string>());
      } else if (key == "output_digits") {
        c.output_digits = value.get<int>();
      } else {
        throw Error(ErrorCode::InvalidConfig, path + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + e.what());
  }
  c.validate();
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Match-stick geometry compiler and trace verifier", "matchstick"};
  app.require_subcommand(1);

  std::string source;
  std::string trace_path;
  std::string output;
  bool strict = false;
  bool json = false;
  ConfigFlags flags;

  CLI::App* compile = app.add_subcommand("compile", "compile a .euclid program to a trace");
  compile->add_option("source", source, "program source")->required();
  compile->add_option("-o,--output", output, "trace file (default: stdout)");
  add_config_flags(compile, flags);

  CLI::App* verify = app.add_subcommand("verify", "check every instruction of a trace");
  verify->add_option("trace", trace_path, "trace file")->required();
  verify->add_flag("--strict", strict, "also reject on precision escalation");
  verify->add_flag("--json", json, "structured report");

  CLI::App* render = app.add_subcommand("render", "draw a trace as SVG");
  render->add_option("trace", trace_path, "trace file")->required();
  render->add_option("-o,--output", output, "SVG file (default: stdout)");

  CLI::App* check = app.add_subcommand("check", "compile, verify and compare against the analytic oracle");
  check->add_option("source", source, "program source")->required();
  check->add_option("-o,--output", output, "also write the trace here");
  check->add_flag("--json", json, "structured oracle report");
  add_config_flags(check, flags);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "compare a trace's outputs against the analytic oracle");
  oracle_cmd->add_option("source", source, "program source")->required();
  oracle_cmd->add_option("trace", trace_path, "trace file")->required();
  oracle_cmd->add_flag("--json", json, "structured report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Driver driver(out, err);
  if (compile->parsed()) {
    return driver.compile(source, output, flags);
  }
  if (verify->parsed()) {
    return driver.verify(trace_path, strict, json);
  }
  if (render->parsed()) {
    return driver.render(trace_path, output);
  }
  if (check->parsed()) {
    return driver.check(source, output, flags, json);
  }
  return driver.oracle(source, trace_path, json);
}

}  // namespace matchstick::cli
