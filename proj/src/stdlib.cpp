// Part of the flipkit project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include "flipkit/stdlib.hpp"

#include <set>
#include <stdexcept>

#include "flipkit/parser.hpp"
#include "flipkit/render.hpp"

namespace flipkit {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>&
stdlib_sources();
}  // namespace detail

const std::vector<std::pair<std::string_view, std::string_view>>&
stdlib_sources() {
  return detail::stdlib_sources();
}

namespace {

std::string signature_text(const FlipDef& def) {
  std::string out;
  for (const Param& p : def.params) {
    out += "(" + p.name + " : " + render(p.sig) + ") ";
  }
  return out + ": " + render(def.domain) + " <-> " + render(def.codomain);
}

}  // namespace

Program stdlib_program() {
  Program out;
  for (const auto& [name, text] : stdlib_sources()) {
    try {
      out.merge(parse_program(text));
    } catch (const ParseError& e) {
      throw std::logic_error("stdlib " + std::string(name) + ":" +
                             std::to_string(e.loc().line) + ":" +
                             std::to_string(e.loc().col) + ": " +
                             e.message());
    }
  }
  return out;
}

std::vector<StdlibEntry> stdlib_manifest() {
  std::vector<StdlibEntry> out;
  for (const auto& [name, text] : stdlib_sources()) {
    for (const FlipDef& def : parse_program(text).flips) {
      out.push_back({def.name, std::string(name), signature_text(def)});
    }
  }
  return out;
}

const CheckedProgram& load_stdlib() {
  static const CheckedProgram checked = [] {
    CheckResult result = check_program(stdlib_program());
    if (!result.ok()) {
      std::string msg = "stdlib fails to check:";
      for (const CheckError& e : result.errors) {
        msg += "\n  " + format_diagnostic("stdlib", e);
      }
      throw std::logic_error(msg);
    }
    return std::move(*result.checked);
  }();
  return checked;
}

namespace {

std::set<std::string> declared_names(const Program& p) {
  std::set<std::string> out;
  for (const DataDecl& d : p.data) {
    out.insert(d.name);
    for (const CtorDecl& c : d.ctors) out.insert(c.name);
  }
  for (const ExternDecl& e : p.externs) out.insert(e.name);
  for (const FlipDef& f : p.flips) out.insert(f.name);
  return out;
}

}  // namespace

Program with_stdlib(Program user) {
  const std::set<std::string> user_names = declared_names(user);
  Program out;
  for (const auto& [name, text] : stdlib_sources()) {
    Program part = parse_program(text);
    bool clash = false;
    for (const std::string& n : declared_names(part)) {
      clash = clash || user_names.count(n) != 0;
    }
    if (!clash) out.merge(part);
  }
  out.merge(user);
  return out;
}

}  // namespace flipkit
