// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
// flipkit: check, reverse, run, compress, decompress, selftest.
// Exit codes: 0 success, 1 domain failure, 2 I/O or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flipkit/bbans.hpp"
#include "flipkit/checker.hpp"
#include "flipkit/container.hpp"
#include "flipkit/interp.hpp"
#include "flipkit/parser.hpp"
#include "flipkit/render.hpp"
#include "flipkit/reverser.hpp"
#include "flipkit/selftest.hpp"
#include "flipkit/stdlib.hpp"

namespace {

using namespace flipkit;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Config {
  bool no_stdlib = false;
  uint64_t step_budget = 10'000'000;
  uint64_t seed = 1;
  bool verbose = false;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path);
}

/// Parses and checks one file, printing diagnostics against its name.
std::optional<CheckedProgram> load_checked(const Config& cfg,
                                           const std::string& path) {
  const std::string text = read_text(path);
  Program program;
  try {
    program = parse_program(text);
    if (!cfg.no_stdlib) program = with_stdlib(std::move(program));
  } catch (const ParseError& e) {
    std::cout << path << ":" << e.loc().line << ":" << e.loc().col
              << ": ParseError: " << e.message() << "\n";
    return std::nullopt;
  }
  CheckResult result = check_program(std::move(program));
  for (const CheckError& e : result.errors) {
    std::cout << format_diagnostic(path, e) << "\n";
  }
  if (!result.ok()) return std::nullopt;
  return std::move(*result.checked);
}

int cmd_check(const Config& cfg, const std::vector<std::string>& files) {
  int status = kOk;
  for (const std::string& f : files) {
    if (!load_checked(cfg, f)) status = kFail;
    else if (cfg.verbose) std::cerr << f << ": ok\n";
  }
  return status;
}

int cmd_reverse(const Config& cfg, const std::string& file,
                const std::string& def) {
  auto checked = load_checked(cfg, file);
  if (!checked) return kFail;
  const FlipDef* d = checked->find_flip(def);
  if (d == nullptr) {
    std::cerr << "flipkit: no definition '" << def << "' in " << file << "\n";
    return kFail;
  }
  std::cout << render(reverse_flippable(*d)) << "\n";
  return kOk;
}

int cmd_run(const Config& cfg, const std::string& file, const std::string& def,
            const std::string& dir, const std::string& input,
            const std::vector<std::string>& arg_names) {
  auto checked = load_checked(cfg, file);
  if (!checked) return kFail;
  Value v;
  try {
    v = parse_value(input);
  } catch (const ParseError& e) {
    std::cerr << "flipkit: --input:" << e.loc().col << ": " << e.message() << "\n";
    return kUsage;
  }
  Interpreter interp(std::move(*checked), EvalOptions{cfg.step_budget});
  const FlipDef* d = interp.program().find_flip(def);
  if (d == nullptr) {
    std::cerr << "flipkit: no definition '" << def << "' in " << file << "\n";
    return kFail;
  }
  if (arg_names.size() != d->params.size()) {
    std::cerr << "flipkit: '" << def << "' takes " << d->params.size()
              << " flippable argument(s); pass them with --arg\n";
    return kFail;
  }
  std::vector<FlipArg> args;
  for (const std::string& a : arg_names) args.emplace_back(interp.bijection(a));
  Value out = dir == "fwd" ? interp.eval_forward(def, std::move(v), args)
                           : interp.eval_backward(def, std::move(v), args);
  std::cout << render(out) << "\n";
  return kOk;
}

/// Raw bytes when V = 256, else whitespace-separated integers.
std::vector<uint32_t> read_symbols(const bbans::LatentModel& model,
                                   const std::string& path) {
  std::vector<uint32_t> out;
  if (model.observed_count() == 256) {
    for (uint8_t b : read_bytes(path)) out.push_back(b);
    return out;
  }
  std::istringstream in(read_text(path));
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok[0] == '-' || v >= model.observed_count()) {
      throw RuntimeFault("invalid symbol '" + tok + "' for a model with " +
                         std::to_string(model.observed_count()) + " symbols");
    }
    out.push_back(static_cast<uint32_t>(v));
  }
  return out;
}

void write_symbols(const bbans::LatentModel& model, const std::string& path,
                   const std::vector<uint32_t>& symbols) {
  std::vector<uint8_t> bytes;
  if (model.observed_count() == 256) {
    bytes.assign(symbols.begin(), symbols.end());
  } else {
    std::string text;
    for (size_t i = 0; i < symbols.size(); ++i) {
      text += std::to_string(symbols[i]);
      text += (i + 1) % 32 == 0 || i + 1 == symbols.size() ? '\n' : ' ';
    }
    bytes.assign(text.begin(), text.end());
  }
  write_bytes(path, bytes);
}

int cmd_compress(const Config& cfg, const std::string& model_path,
                 const std::string& input, const std::string& output) {
  const bbans::LatentModel model = bbans::parse_model(read_text(model_path));
  const std::vector<uint32_t> xs = read_symbols(model, input);
  const Container c = compress(model, xs);
  write_bytes(output, write_container(c));
  const uint64_t payload = ans::msg_bits(c.message) - ans::msg_bits(ans::msg_init());
  const double n = static_cast<double>(xs.size());
  std::printf("symbols: %zu\n", xs.size());
  std::printf("payload bits: %llu\n", static_cast<unsigned long long>(payload));
  std::printf("bits/symbol: %.6f\n", xs.empty() ? 0.0 : static_cast<double>(payload) / n);
  std::printf("predicted (negative ELBO): %.6f\n", bbans::negative_elbo(model, xs));
  if (cfg.verbose) {
    std::fprintf(stderr, "model hash %016llx\n",
                 static_cast<unsigned long long>(c.model_hash));
  }
  return kOk;
}

int cmd_decompress(const Config& cfg, const std::string& model_path,
                   const std::string& input, const std::string& output) {
  const bbans::LatentModel model = bbans::parse_model(read_text(model_path));
  const Container c = read_container(read_bytes(input));
  const std::vector<uint32_t> xs = decompress(model, c);
  write_symbols(model, output, xs);
  if (cfg.verbose) std::fprintf(stderr, "decoded %zu symbols\n", xs.size());
  return kOk;
}

int cmd_selftest(const Config& cfg, const std::string& mutant_path,
                 size_t cases) {
  selftest::Options opts;
  opts.seed = cfg.seed;
  opts.cases = cases;
  opts.eval.step_budget = cfg.step_budget;
  if (!mutant_path.empty()) {
    try {
      opts.mutant = parse_program(read_text(mutant_path));
    } catch (const ParseError& e) {
      std::cout << mutant_path << ":" << e.loc().line << ":" << e.loc().col
                << ": ParseError: " << e.message() << "\n";
      return kFail;
    }
  }
  const auto rows = selftest::run_selftest(opts);
  selftest::print_table(std::cout, rows);
  for (const auto& r : rows) {
    if (!r.outcome.passed) return kFail;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flipkit: checker, reverser and interpreter for flippable programs"};
  app.require_subcommand(1);
  Config cfg;
  app.add_flag("--no-stdlib", cfg.no_stdlib, "Do not load the standard library");
  app.add_option("--step-budget", cfg.step_budget, "Interpreter step limit")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for generated tests")->capture_default_str();
  app.add_flag("-v,--verbose", cfg.verbose, "Extra output on stderr");

  std::function<int()> action;

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "Check .flp files");
  check->add_option("files", check_files)->required();
  check->callback([&] { action = [&] { return cmd_check(cfg, check_files); }; });

  std::string file, def, dir = "fwd", input, output, model;
  std::vector<std::string> arg_names;
  auto* reverse = app.add_subcommand("reverse", "Print the reversed definition");
  reverse->add_option("file", file)->required();
  reverse->add_option("def", def)->required();
  reverse->callback([&] { action = [&] { return cmd_reverse(cfg, file, def); }; });

  auto* run = app.add_subcommand("run", "Evaluate a definition");
  run->add_option("file", file)->required();
  run->add_option("def", def)->required();
  run->add_option("--dir", dir)->check(CLI::IsMember({"fwd", "bwd"}))->capture_default_str();
  run->add_option("--input", input)->required();
  run->add_option("--arg", arg_names, "Definition passed as a flippable argument");
  run->callback([&] {
    action = [&] { return cmd_run(cfg, file, def, dir, input, arg_names); };
  });

  auto* comp = app.add_subcommand("compress", "Bits-back compress a symbol file");
  comp->add_option("model", model)->required();
  comp->add_option("input", input)->required();
  comp->add_option("output", output)->required();
  comp->callback([&] { action = [&] { return cmd_compress(cfg, model, input, output); }; });

  auto* decomp = app.add_subcommand("decompress", "Invert compress");
  decomp->add_option("model", model)->required();
  decomp->add_option("input", input)->required();
  decomp->add_option("output", output)->required();
  decomp->callback([&] {
    action = [&] { return cmd_decompress(cfg, model, input, output); };
  });

  std::string mutant;
  size_t cases = 1000;
  auto* self = app.add_subcommand("selftest", "Run the built-in property suites");
  self->add_option("--mutant", mutant, "Definitions whose backward direction replaces the stdlib's");
  self->add_option("--cases", cases, "Generated cases per property")->capture_default_str();
  self->callback([&] { action = [&] { return cmd_selftest(cfg, mutant, cases); }; });

  for (auto* sub : {check, reverse, run, comp, decomp, self}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const IoError& e) {
    std::cerr << "flipkit: " << e.what() << "\n";
    return kUsage;
  } catch (const bbans::ModelError& e) {
    std::cerr << "flipkit: " << e.what() << "\n";
    return kFail;
  } catch (const ans::FormatError& e) {
    std::cerr << "flipkit: format error: " << e.what() << "\n";
    return kFail;
  } catch (const ModelMismatch& e) {
    std::cerr << "flipkit: " << e.what() << "\n";
    return kFail;
  } catch (const RuntimeFault& e) {
    std::cerr << "flipkit: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "flipkit: " << e.what() << "\n";
    return kFail;
  }
}
