// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures (capped).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "flipkit/bbans.hpp"
#include "flipkit/checker.hpp"
#include "flipkit/interp.hpp"
#include "flipkit/parser.hpp"
#include "flipkit/selftest.hpp"
#include "flipkit/stdlib.hpp"

namespace fs = std::filesystem;
using namespace flipkit;

namespace {

struct Verdict {
  bool ok = true;
  std::string note;
};

Verdict fail(std::string note) { return {false, std::move(note)}; }

std::string src(const std::string& rel) {
  return std::string(FLIPKIT_SOURCE_DIR) + "/" + rel;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string describe(const selftest::Outcome& o) {
  return "counterexample: " + o.counterexample + " " + o.detail;
}

int failures = 0;

void criterion(int n, const std::string& title, double limit_s,
               const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = fail(std::string("exception: ") + e.what());
  }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s > limit_s) {
    v.ok = false;
    v.note += (v.note.empty() ? "" : "; ") + std::string("over time limit");
  }
  if (!v.ok) ++failures;
  std::printf("%s %d %s (%.2f s)%s%s\n", v.ok ? "PASS" : "FAIL", n, title.c_str(), s,
              v.note.empty() ? "" : " -- ", v.note.c_str());
  std::fflush(stdout);
}

CheckedProgram checked_or_throw(Program p) {
  CheckResult r = check_program(std::move(p));
  if (!r.ok()) throw std::runtime_error(format_diagnostic("program", r.errors.front()));
  return std::move(*r.checked);
}

Program parse_file(const std::string& rel) { return parse_program(slurp(src(rel))); }

// Fixture subjects for reverse agreement.
std::vector<selftest::Subject> fixture_subjects(const Interpreter& misc) {
  const Program& p = misc.program().program;
  auto gen = [&](std::string_view t) { return selftest::type_gen(p, parse_type(t)); };
  const FlipArg notB = misc.bijection("notB");
  const FlipArg natId = misc.bijection("natId");
  return {
      {"nest", "nest", {}, gen("Either (Either Int Bit) Nat"), gen("Either Int (Either Bit Nat)")},
      {"notB", "notB", {}, gen("Bit"), gen("Bit")},
      {"natId", "natId", {}, gen("Nat"), gen("Nat")},
      {"inverseOf[notB]", "inverseOf", {notB}, gen("Bit"), gen("Bit")},
      {"twice[notB]", "twice", {notB}, gen("Bit"), gen("Bit")},
      {"twice[natId]", "twice", {natId}, gen("Nat"), gen("Nat")},
  };
}

int sh(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  const size_t kCases = 1000;

  criterion(1, "prfa/prfb on every stdlib definition", 30, [&] {
    Interpreter stdlib(load_stdlib());
    uint64_t seed = 100;
    size_t defs = 0;
    for (const auto& s : selftest::stdlib_subjects(stdlib)) {
      const Bijection b = stdlib.bijection(s.def, s.args);
      auto a = selftest::check_prfa(b, s.domain, kCases, seed++);
      if (!a.passed || a.cases < kCases) return fail("prfa " + s.label + " " + describe(a));
      auto c = selftest::check_prfb(b, s.codomain, kCases, seed++);
      if (!c.passed || c.cases < kCases) return fail("prfb " + s.label + " " + describe(c));
      ++defs;
    }
    std::set<std::string> covered;
    for (const auto& s : selftest::stdlib_subjects(stdlib)) covered.insert(s.def);
    for (const auto& d : load_stdlib().program.flips) {
      if (!covered.count(d.name)) return fail("no subject for " + d.name);
    }
    return Verdict{true, std::to_string(defs) + " subjects x " + std::to_string(kCases) + " cases"};
  });

  criterion(2, "reverser involution and forward(reverse d) = backward d", 30, [&] {
    for (const char* rel : {"tests/fixtures/misc.flp", "tests/fixtures/reference_sources.flp"}) {
      auto o = selftest::check_reverse_involution(parse_file(rel));
      if (!o.passed) return fail(std::string(rel) + " " + describe(o));
    }
    auto o = selftest::check_reverse_involution(load_stdlib().program);
    if (!o.passed) return fail("stdlib " + describe(o));
    Interpreter stdlib(load_stdlib());
    Interpreter misc(checked_or_throw(parse_file("tests/fixtures/misc.flp")));
    uint64_t seed = 200;
    size_t n = 0;
    for (const auto& s : selftest::stdlib_subjects(stdlib)) {
      auto r = selftest::check_reverse_agreement(stdlib, s, kCases, seed++);
      if (!r.passed || r.cases < kCases) return fail(s.label + " " + describe(r));
      ++n;
    }
    for (const auto& s : fixture_subjects(misc)) {
      auto r = selftest::check_reverse_agreement(misc, s, kCases, seed++);
      if (!r.passed || r.cases < kCases) return fail(s.label + " " + describe(r));
      ++n;
    }
    return Verdict{true, std::to_string(n) + " defs agree"};
  });

  criterion(3, "checker: one fixture per error kind, reference sources accepted", 0, [&] {
    for (auto kind : kAllCheckErrorKinds) {
      const std::string name(to_string(kind));
      CheckResult r = check_program(parse_file("tests/fixtures/errors/" + name + ".flp"));
      if (r.ok()) return fail(name + " fixture accepted");
      for (const auto& e : r.errors) {
        if (e.kind != kind) return fail(name + " fixture also reports " + std::string(to_string(e.kind)));
      }
    }
    CheckResult ok = check_program(parse_file("tests/fixtures/reference_sources.flp"));
    if (!ok.ok()) return fail(format_diagnostic("reference_sources.flp", ok.errors.front()));
    for (const char* def : {"pairSwp", "sumSwp", "compose", "uncurryF", "bbAns"}) {
      if (!ok.checked->find_flip(def)) return fail(std::string("missing ") + def);
    }
    return Verdict{true, "9 kinds"};
  });

  criterion(4, "rANS exhaustive oracle, r=2 freqs [1,3]", 5, [&] {
    auto o = selftest::check_ans_exhaustive();
    if (!o.passed) return fail(describe(o));
    return Verdict{true, std::to_string(o.cases) + " cases"};
  });

  criterion(5, "dyadic rate, N=1e5, freqs [2048,1024,512,512]", 5, [&] {
    auto r = selftest::dyadic_rate(100000, 5);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%.6f bits/symbol in [%.6f, %.6f] (exact composition)",
                  r.measured, r.lower, r.upper);
    // i.i.d. draws, reported only
    const ans::CategoricalTable t({2048, 1024, 512, 512}, 12);
    std::mt19937_64 rng(5);
    ans::Message m = ans::msg_init();
    for (int i = 0; i < 100000; ++i) ans::push_symbol(m, t.lookup(rng() >> 52), t);
    char iid[120];
    std::snprintf(iid, sizeof iid, "; i.i.d. draw %.6f",
                  (ans::msg_bits(m) - 33.0) / 100000);
    return Verdict{r.passed(), std::string(buf) + iid};
  });

  criterion(6, "bits-back rate on the demo model, N=1e5", 60, [&] {
    const auto model = bbans::demo_model();
    auto r = selftest::bbans_rate(model, 100000, 6);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%.6f bits/symbol in [%.6f, %.6f]", r.measured, r.lower, r.upper);
    if (!r.passed()) return fail(buf);
    // independent oracle: exact per-symbol costs of the demo model
    const double oracle[8] = {2, 2, 3, 3, 4, 4, 4, 4};
    const auto xs = bbans::sample_marginal(model, 100000, 6);
    double expect = 0;
    for (uint32_t x : xs) expect += oracle[x];
    expect /= xs.size();
    const double elbo = bbans::negative_elbo(model, xs);
    const double xent = bbans::marginal_cross_entropy(model, xs);
    if (std::abs(elbo - expect) > 1e-9) return fail("negative_elbo differs from oracle");
    if (std::abs(elbo - xent) > 1e-9) return fail("negative_elbo differs from cross-entropy");
    std::snprintf(buf + std::strlen(buf), sizeof buf - std::strlen(buf),
                  "; |elbo - xent| = %.1e", std::abs(elbo - xent));
    return Verdict{true, buf};
  });

  criterion(7, "host and interpreted bbAns agree bit for bit", 0, [&] {
    auto o = selftest::check_host_dsl_agreement(bbans::demo_model(), 1000, 7);
    if (!o.passed || o.cases < 1000) return fail(describe(o));
    return Verdict{true, std::to_string(o.cases) + " inputs"};
  });

  criterion(8, "CLI compress/decompress end to end", 0, [&] {
    const fs::path dir = fs::temp_directory_path() / "flipkit_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string exe = FLIPKIT_EXE;
    const std::string model = src("models/demo.json");
    const fs::path other = dir / "other.json";
    std::ofstream(other) << bbans::model_to_json(bbans::make_model(
        12, {2048, 2048}, {{3072, 1024}, {1024, 3072}}, {{3072, 1024}, {1024, 3072}}));
    std::vector<std::pair<std::string, std::vector<uint32_t>>> corpora = {
        {"empty", {}}, {"one", {3}}, {"large", bbans::sample_marginal(bbans::demo_model(), 100000, 8)}};
    std::string note;
    for (const auto& [name, xs] : corpora) {
      const fs::path in = dir / (name + ".txt"), a = dir / (name + ".a"), b = dir / (name + ".b"),
                     out = dir / (name + ".out");
      {
        std::ofstream f(in);
        for (uint32_t x : xs) f << x << '\n';
      }
      if (sh(exe + " compress " + model + " " + in.string() + " " + a.string()) != 0)
        return fail(name + ": compress failed");
      if (sh(exe + " compress " + model + " " + in.string() + " " + b.string()) != 0)
        return fail(name + ": second compress failed");
      if (slurp(a) != slurp(b)) return fail(name + ": output not deterministic");
      if (sh(exe + " decompress " + model + " " + a.string() + " " + out.string()) != 0)
        return fail(name + ": decompress failed");
      std::ifstream back(out);
      std::vector<uint32_t> ys;
      for (uint32_t y; back >> y;) ys.push_back(y);
      if (ys != xs) return fail(name + ": round trip differs");
      if (sh(exe + " decompress " + other.string() + " " + a.string() + " " +
             (dir / "wrong.out").string()) != 1)
        return fail(name + ": wrong model not refused");
      note += name + " " + std::to_string(fs::file_size(a)) + " B; ";
    }
    fs::remove_all(dir);
    return Verdict{true, note + "wrong model refused"};
  });

  return failures > 0 ? std::min(failures, 8) : 0;
}
