#pragma once

// Line-oriented text formats. '#' starts a comment anywhere on a line.
//
//   language (.rel):   relation <NAME> <arity>
//                      <bitstring>...
//                      end
//   instance (.mo1):   minones <nvars> <k>
//                      constraint <NAME> <v1> ... <vr>      (0 = constant 0)
//   hypergraph (.ehs): ehs <n> <m>
//                      <vertex> ...                         (m lines)

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "minones/formula.hpp"

namespace minones {

struct Instance {
  Formula formula;
  int k = 0;
};

struct Hypergraph {
  int num_vertices = 0;
  std::vector<std::vector<int>> edges;  // 1-based vertex ids
};

// All parsers throw Error(kParseError) with a "line N:" prefix.
ConstraintLanguage parse_language(std::string_view text);
Instance parse_instance(std::string_view text, std::shared_ptr<const ConstraintLanguage> language);
Hypergraph parse_hypergraph(std::string_view text);

std::string write_language(const ConstraintLanguage& language);
std::string write_instance(const Formula& f, int k);
std::string write_hypergraph(const Hypergraph& h);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace minones
