// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>

#include "flipkit/checker.hpp"
#include "flipkit/encoder.hpp"
#include "flipkit/generate.hpp"
#include "flipkit/parser.hpp"
#include "flipkit/render.hpp"
#include "flipkit/reverser.hpp"
#include "flipkit/stdlib.hpp"

namespace flipkit::selftest {

namespace {

ValueGenerator::Instantiation default_instantiation() {
  return {{"a", parse_type("Either Int (Int , Int)")},
          {"b", parse_type("Int")},
          {"c", parse_type("(Int , Int)")}};
}

Gen type_gen(std::shared_ptr<const Program> program, TypeExpr type) {
  return [program, type](std::mt19937_64& rng) {
    ValueGenerator gen(*program, rng());
    return gen.generate(type, default_instantiation());
  };
}

/// Value v ↦ v + i on Int, indexed by an Int i.
BijectionFamily shift_family() {
  return [](const Value& index) {
    const int64_t i = index.int_value();
    return Bijection(
        [i](Value v) { return Value::integer(v.int_value() + i); },
        [i](Value v) { return Value::integer(v.int_value() - i); });
  };
}

template <typename F>
Outcome run_cases(size_t cases, uint64_t seed, const Gen& gen, F&& prop) {
  std::mt19937_64 rng(seed);
  Outcome out;
  for (size_t i = 0; i < cases; ++i) {
    Value v = gen(rng);
    ++out.cases;
    std::string why;
    try {
      if (prop(v, why)) continue;
    } catch (const std::exception& e) {
      why = e.what();
    }
    out.passed = false;
    out.counterexample = render(v);
    out.detail = why;
    return out;
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

Gen type_gen(const Program& program, const TypeExpr& type) {
  return type_gen(std::make_shared<const Program>(program), type);
}

std::vector<Subject> stdlib_subjects(const Interpreter& stdlib) {
  auto program = std::make_shared<const Program>(stdlib.program().program);
  auto gen = [&](std::string_view t) { return type_gen(program, parse_type(t)); };
  auto bij = [&](std::string_view name) { return FlipArg(stdlib.bijection(name)); };

  std::vector<Subject> out;
  for (const FlipDef& def : program->flips) {
    if (!def.params.empty()) continue;
    out.push_back({def.name, def.name, {}, type_gen(program, def.domain),
                   type_gen(program, def.codomain)});
  }
  const std::string ab = "(Either Int (Int , Int) , Int)";
  const std::string ba = "(Int , Either Int (Int , Int))";
  const std::string nested = "((Either Int (Int , Int) , Int) , (Int , Int))";
  const std::string either = "Either Int (Int , Int)";
  const std::string swapped = "Either (Int , Int) Int";
  out.push_back({"compose[pairSwp,pairSwp]", "compose",
                 {bij("pairSwp"), bij("pairSwp")}, gen(ab), gen(ab)});
  out.push_back({"compose[sumSwp,sumSwp]", "compose",
                 {bij("sumSwp"), bij("sumSwp")}, gen(either), gen(either)});
  out.push_back({"compose[idF,pairSwp]", "compose",
                 {bij("idF"), bij("pairSwp")}, gen(ab), gen(ba)});
  out.push_back({"compose[sumSwp,idF]", "compose",
                 {bij("sumSwp"), bij("idF")}, gen(either), gen(swapped)});
  out.push_back({"compose[assocP,flip assocP]", "compose",
                 {bij("assocP"), FlipArg(stdlib.bijection("assocP").flipped())},
                 gen(nested), gen(nested)});
  out.push_back({"uncurryF[shift]", "uncurryF", {FlipArg(shift_family())},
                 gen("(Int , Int)"), gen("(Int , Int)")});

  const auto model = std::make_shared<const bbans::LatentModel>(bbans::demo_model());
  bbans::ModelCoders coders = bbans::model_coders(*model);
  Gen msg = [](std::mt19937_64& rng) { return Value::msg(ans::random_message(rng)); };
  auto observed = coders.observed;
  Gen msg_obs = [msg, observed](std::mt19937_64& rng) {
    std::uniform_int_distribution<size_t> pick(0, observed.size() - 1);
    Value m = msg(rng);
    return Value::pair(std::move(m), observed.value_of(pick(rng)));
  };
  out.push_back({"bbAns[demo]", "bbAns",
                 {coders.prior, coders.likelihood, coders.posterior}, msg_obs,
                 msg});
  return out;
}

Outcome check_prfa(const Bijection& b, const Gen& gen, size_t cases,
                   uint64_t seed) {
  return run_cases(cases, seed, gen, [&](const Value& v, std::string& why) {
    Value back = b.backward(b.forward(v));
    if (back == v) return true;
    why = "backward(forward(v)) = " + render(back);
    return false;
  });
}

Outcome check_prfb(const Bijection& b, const Gen& gen, size_t cases,
                   uint64_t seed) {
  return run_cases(cases, seed, gen, [&](const Value& v, std::string& why) {
    Value fwd = b.forward(b.backward(v));
    if (fwd == v) return true;
    why = "forward(backward(w)) = " + render(fwd);
    return false;
  });
}

Outcome check_equal(const Bijection& a, const Bijection& b, const Gen& gen,
                    size_t cases, uint64_t seed) {
  return run_cases(cases, seed, gen, [&](const Value& v, std::string& why) {
    Value x = a.forward(v);
    Value y = b.forward(v);
    if (x == y) return true;
    why = render(x) + " vs " + render(y);
    return false;
  });
}

Outcome check_reverse_involution(const Program& program) {
  Outcome out;
  for (const FlipDef& def : program.flips) {
    ++out.cases;
    if (!(reverse_flippable(reverse_flippable(def)) == def)) {
      out.passed = false;
      out.counterexample = def.name;
      out.detail = "reverse twice gives\n" +
                   render(reverse_flippable(reverse_flippable(def)));
      return out;
    }
  }
  return out;
}

Outcome check_reverse_agreement(const Interpreter& interp, const Subject& s,
                                size_t cases, uint64_t seed) {
  auto [program, name] = with_reversed(interp.program().program, s.def);
  CheckResult checked = check_program(std::move(program));
  if (!checked.ok()) {
    Outcome out;
    out.passed = false;
    out.counterexample = s.def;
    out.detail = "reversed definition fails to check: " +
                 format_diagnostic("reversed", checked.errors.front());
    return out;
  }
  Interpreter rev(std::move(*checked.checked), interp.options());
  Bijection reversed = rev.bijection(name, s.args);
  Bijection backward = interp.bijection(s.def, s.args).flipped();
  return check_equal(reversed, backward, s.codomain, cases, seed);
}

Outcome check_ans_exhaustive() {
  const ans::CategoricalTable t({1, 3}, 2);
  Outcome out;
  auto fail = [&](uint64_t head, const std::string& why) {
    out.passed = false;
    if (out.counterexample.empty()) {
      out.counterexample = render(Value::msg(ans::Message{head, {}}));
      out.detail = why;
    }
  };
  for (uint64_t head = uint64_t{1} << 32; head < (uint64_t{1} << 32) + 4096;
       ++head) {
    const ans::Message m{head, {}};
    for (size_t s = 0; s < 2; ++s) {
      ++out.cases;
      auto [m2, s2] = ans::rans_decode(ans::rans_encode(m, s, t), t);
      if (!(m2 == m) || s2 != s) fail(head, "decode(encode(m, " + std::to_string(s) + ")) differs");
    }
    ++out.cases;
    auto [m3, s3] = ans::rans_decode(m, t);
    if (!(ans::rans_encode(m3, s3, t) == m)) fail(head, "encode(decode(m)) differs");
  }
  return out;
}

std::vector<uint32_t> exact_composition(const ans::CategoricalTable& table,
                                        size_t n, uint64_t seed) {
  const uint64_t total = uint64_t{1} << table.precision();
  std::vector<size_t> counts(table.size());
  size_t assigned = 0;
  for (size_t s = 0; s < table.size(); ++s) {
    counts[s] = static_cast<size_t>(n * uint64_t{table.freq(s)} / total);
    assigned += counts[s];
  }
  std::vector<size_t> order(table.size());
  for (size_t s = 0; s < order.size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return table.freq(a) > table.freq(b);
  });
  for (size_t i = 0; assigned < n; ++i, ++assigned) ++counts[order[i % order.size()]];
  std::vector<uint32_t> out;
  out.reserve(n);
  for (size_t s = 0; s < counts.size(); ++s) {
    out.insert(out.end(), counts[s], static_cast<uint32_t>(s));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

RateReport dyadic_rate(size_t n, uint64_t seed) {
  const ans::CategoricalTable t({2048, 1024, 512, 512}, 12);
  const std::vector<uint32_t> xs = exact_composition(t, n, seed);
  ans::Message m = ans::msg_init();
  const uint64_t before = ans::msg_bits(m);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) ans::push_symbol(m, *it, t);
  RateReport r;
  const double h = t.entropy_bits();
  r.measured = static_cast<double>(ans::msg_bits(m) - before) / static_cast<double>(n);
  r.lower = h;
  r.upper = h + 0.001 + 64.0 / static_cast<double>(n);
  return r;
}

RateReport bbans_rate(const bbans::LatentModel& model, size_t n,
                      uint64_t seed) {
  const std::vector<uint32_t> xs = bbans::sample_marginal(model, n, seed);
  const Bijection codec = bbans::host_codec(model);
  const auto observed = bbans::model_coders(model).observed;
  Value m = Value::msg(ans::msg_init());
  const uint64_t before = ans::msg_bits(m.message());
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
    m = codec.forward(Value::pair(std::move(m), observed.value_of(*it)));
  }
  RateReport r;
  const double predicted = bbans::negative_elbo(model, xs);
  r.measured = static_cast<double>(ans::msg_bits(m.message()) - before) /
               static_cast<double>(n);
  r.lower = predicted - 0.05;
  r.upper = predicted + 0.05;
  return r;
}

Outcome check_host_dsl_agreement(const bbans::LatentModel& model,
                                 size_t trials, uint64_t seed) {
  const Bijection host = bbans::host_codec(model);
  const Bijection dsl = bbans::dsl_codec(model);
  const auto observed = bbans::model_coders(model).observed;
  Gen gen = [observed](std::mt19937_64& rng) {
    std::uniform_int_distribution<size_t> pick(0, observed.size() - 1);
    Value m = Value::msg(ans::random_message(rng));
    return Value::pair(std::move(m), observed.value_of(pick(rng)));
  };
  return check_equal(host, dsl, gen, trials, seed);
}

namespace {

/// The stdlib with same-named definitions swapped for the mutant's.
Program mutated_stdlib(const Program& mutant) {
  Program out = stdlib_program();
  for (const FlipDef& def : mutant.flips) {
    auto it = std::find_if(out.flips.begin(), out.flips.end(),
                           [&](const FlipDef& d) { return d.name == def.name; });
    if (it != out.flips.end()) {
      *it = def;
    } else {
      out.flips.push_back(def);
    }
  }
  for (const DataDecl& d : mutant.data) {
    if (out.find_data(d.name) == nullptr) out.data.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<Row> run_selftest(const Options& options) {
  std::vector<Row> rows;
  auto timed = [&](std::string name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = e.what();
    }
    rows.push_back({std::move(name), std::move(o), seconds_since(t0)});
  };

  const Interpreter stdlib(load_stdlib(), options.eval);
  std::optional<Interpreter> mutant;
  if (options.mutant) {
    CheckResult checked = check_program(mutated_stdlib(*options.mutant));
    if (!checked.ok()) {
      Outcome o;
      o.passed = false;
      o.detail = format_diagnostic("mutant", checked.errors.front());
      rows.push_back({"mutant check", o, 0});
      return rows;
    }
    mutant.emplace(std::move(*checked.checked), options.eval);
  }
  auto subject_bijection = [&](const Subject& s) {
    Bijection b = stdlib.bijection(s.def, s.args);
    if (!mutant || options.mutant->find_flip(s.def) == nullptr) return b;
    Bijection m = mutant->bijection(s.def, s.args);
    return Bijection([b](Value v) { return b.forward(std::move(v)); },
                     [m](Value v) { return m.backward(std::move(v)); });
  };

  const std::vector<Subject> subjects = stdlib_subjects(stdlib);
  uint64_t seed = options.seed;
  for (const Subject& s : subjects) {
    timed("prfa " + s.label, [&] {
      return check_prfa(subject_bijection(s), s.domain, options.cases, seed++);
    });
    timed("prfb " + s.label, [&] {
      return check_prfb(subject_bijection(s), s.codomain, options.cases, seed++);
    });
  }
  timed("reverse involution", [&] {
    return check_reverse_involution(stdlib.program().program);
  });
  for (const Subject& s : subjects) {
    timed("reverse agreement " + s.label, [&] {
      return check_reverse_agreement(stdlib, s, options.cases, seed++);
    });
  }
  timed("category laws", [&] {
    Outcome total;
    for (const Subject& s : subjects) {
      if (!s.args.empty()) continue;
      const Bijection f = stdlib.bijection(s.def);
      const FlipArg id = stdlib.bijection("idF");
      for (const auto& composed :
           {stdlib.bijection("compose", {FlipArg(f), id}),
            stdlib.bijection("compose", {id, FlipArg(f)})}) {
        Outcome o = check_equal(composed, f, s.domain, options.cases / 4, seed++);
        total.cases += o.cases;
        if (!o.passed) return o;
      }
    }
    const FlipArg sw = stdlib.bijection("sumSwp");
    Outcome o = check_equal(stdlib.bijection("compose", {sw, sw}),
                            stdlib.bijection("idF"),
                            type_gen(stdlib.program().program,
                                     parse_type("Either Int (Int , Int)")),
                            options.cases / 4, seed++);
    total.cases += o.cases;
    return o.passed ? total : o;
  });
  timed("ans exhaustive", [] { return check_ans_exhaustive(); });
  auto rate_row = [](const RateReport& r, size_t n) {
    Outcome o;
    o.cases = n;
    o.passed = r.passed();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6f bits/symbol, window [%.6f, %.6f]",
                  r.measured, r.lower, r.upper);
    o.detail = buf;
    return o;
  };
  timed("rate dyadic", [&] { return rate_row(dyadic_rate(100000, seed++), 100000); });
  const bbans::LatentModel demo = bbans::demo_model();
  timed("rate bbans", [&] {
    return rate_row(bbans_rate(demo, 100000, seed++), 100000);
  });
  timed("host/dsl agreement", [&] {
    return check_host_dsl_agreement(demo, options.cases, seed++);
  });
  return rows;
}

void print_table(std::ostream& out, const std::vector<Row>& rows) {
  size_t width = 4;
  for (const Row& r : rows) width = std::max(width, r.name.size());
  char buf[64];
  for (const Row& r : rows) {
    std::snprintf(buf, sizeof buf, " %8zu %8.3fs  ", r.outcome.cases, r.seconds);
    out << r.name << std::string(width - r.name.size(), ' ') << buf
        << (r.outcome.passed ? "ok" : "FAIL");
    if (r.outcome.passed && !r.outcome.detail.empty()) {
      out << "  " << r.outcome.detail;
    }
    out << "\n";
  }
  for (const Row& r : rows) {
    if (r.outcome.passed) continue;
    out << "\nfirst failure: " << r.name << "\n";
    if (!r.outcome.counterexample.empty()) {
      out << "counterexample: " << r.outcome.counterexample << "\n";
    }
    if (!r.outcome.detail.empty()) out << r.outcome.detail << "\n";
    break;
  }
}

}  // namespace flipkit::selftest
