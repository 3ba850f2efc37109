// Copyright 2026 The fnfdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fnfdist/errors.hpp"

namespace fnfdist::cli {

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

Index vertex(const std::string& tok, std::size_t line) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size() || v == 0) {
    throw ParseError(line, "expected a 1-based vertex, got '" + tok + "'");
  }
  return static_cast<Index>(v - 1);
}

std::vector<Index> vertices(const std::vector<std::string>& toks, std::size_t from, std::size_t line) {
  std::vector<Index> out;
  for (std::size_t i = from; i < toks.size(); ++i) out.push_back(vertex(toks[i], line));
  return out;
}

std::vector<std::string> split_bar(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t bar = s.find('|', start);
    parts.push_back(s.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
    if (bar == std::string::npos) return parts;
    start = bar + 1;
  }
}

Command parse_fail(const std::string& body, std::size_t line) {
  Command c;
  c.kind = Command::Kind::fail;
  const auto parts = split_bar(body);
  if (parts.size() > 2) throw ParseError(line, "F takes at most one '|'");
  const auto edge_toks = tokens(parts[0]);
  if (edge_toks.size() % 2 != 0) throw ParseError(line, "F needs an even number of edge endpoints");
  for (std::size_t i = 0; i < edge_toks.size(); i += 2) {
    c.edges.insert({vertex(edge_toks[i], line), vertex(edge_toks[i + 1], line)});
  }
  if (parts.size() == 2) {
    for (Index v : vertices(tokens(parts[1]), 0, line)) c.vertices.insert(v);
  }
  return c;
}

Command parse_vertex(const std::string& body, std::size_t line) {
  Command c;
  c.kind = Command::Kind::vertex;
  const auto parts = split_bar(body);
  if (parts.size() != 3) throw ParseError(line, "VX expects 'VX v | out: ... | in: ...'");
  const auto head = tokens(parts[0]);
  if (head.size() != 1) throw ParseError(line, "VX takes exactly one vertex");
  c.a = vertex(head[0], line);
  bool seen_out = false, seen_in = false;
  for (std::size_t p = 1; p < 3; ++p) {
    const auto toks = tokens(parts[p]);
    if (toks.empty()) throw ParseError(line, "empty VX section");
    if (toks[0] == "out:" && !seen_out) {
      c.out = vertices(toks, 1, line);
      seen_out = true;
    } else if (toks[0] == "in:" && !seen_in) {
      c.in = vertices(toks, 1, line);
      seen_in = true;
    } else {
      throw ParseError(line, "VX sections must be 'out:' and 'in:'");
    }
  }
  return c;
}

}  // namespace

std::vector<Command> parse_script(std::istream& in) {
  std::vector<Command> script;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const std::string text = raw.substr(0, raw.find('#'));
    const auto toks = tokens(text);
    if (toks.empty()) continue;
    const std::string& op = toks[0];
    const std::string body = text.substr(text.find(op) + op.size());
    Command c;
    if (op == "E+" || op == "E-" || op == "Q") {
      if (toks.size() != 3) throw ParseError(line, op + " takes exactly two vertices");
      c.kind = op == "E+" ? Command::Kind::insert : op == "E-" ? Command::Kind::remove : Command::Kind::query;
      c.a = vertex(toks[1], line);
      c.b = vertex(toks[2], line);
    } else if (op == "F") {
      c = parse_fail(body, line);
    } else if (op == "VX") {
      c = parse_vertex(body, line);
    } else {
      throw ParseError(line, "unknown command '" + op + "'");
    }
    c.line = line;
    script.push_back(std::move(c));
  }
  return script;
}

CommandError::CommandError(std::size_t index, std::size_t line, const std::string& what)
    : std::runtime_error("command " + std::to_string(index) + " (line " + std::to_string(line) + "): " + what),
      index_(index) {}

}  // namespace fnfdist::cli
