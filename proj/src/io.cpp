#include "minones/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "minones/error.hpp"

namespace minones {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto raw = text.substr(start, end - start);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; is >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(ErrorKind::kParseError, "line " + std::to_string(line) + ": " + message);
}

long parse_int(const Line& line, const std::string& tok, long lo, long hi, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line.number, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  if (value < lo || value > hi) {
    fail(line.number, std::string(what) + " " + tok + " out of range");
  }
  return value;
}

}  // namespace

ConstraintLanguage parse_language(std::string_view text) {
  ConstraintLanguage language;
  const auto lines = tokenize(text);
  std::size_t i = 0;
  while (i < lines.size()) {
    const auto& head = lines[i];
    if (head.tokens[0] != "relation" || head.tokens.size() != 3) {
      fail(head.number, "expected 'relation <NAME> <arity>'");
    }
    const std::string name = head.tokens[1];
    const int arity = static_cast<int>(parse_int(head, head.tokens[2], 1, kArityLimit, "arity"));
    std::vector<BoolTuple> tuples;
    ++i;
    bool closed = false;
    for (; i < lines.size(); ++i) {
      const auto& line = lines[i];
      if (line.tokens[0] == "end" && line.tokens.size() == 1) {
        closed = true;
        ++i;
        break;
      }
      if (line.tokens.size() != 1 || static_cast<int>(line.tokens[0].size()) != arity ||
          line.tokens[0].find_first_not_of("01") != std::string::npos) {
        fail(line.number, "expected a bitstring of length " + std::to_string(arity));
      }
      tuples.push_back(BoolTuple::from_string(line.tokens[0]));
    }
    if (!closed) fail(head.number, "relation '" + name + "' is missing 'end'");
    try {
      language.add(Relation(name, arity, tuples));
    } catch (const Error& e) {
      fail(head.number, e.what());
    }
  }
  if (language.empty()) fail(1, "language has no relations");
  return language;
}

Instance parse_instance(std::string_view text, std::shared_ptr<const ConstraintLanguage> language) {
  const auto lines = tokenize(text);
  if (lines.empty()) fail(1, "missing 'minones <nvars> <k>' header");
  const auto& head = lines[0];
  if (head.tokens[0] != "minones" || head.tokens.size() != 3) {
    fail(head.number, "expected 'minones <nvars> <k>'");
  }
  Instance inst;
  inst.formula.language = language;
  inst.formula.num_vars = static_cast<int>(parse_int(head, head.tokens[1], 0, 1 << 28, "nvars"));
  inst.k = static_cast<int>(parse_int(head, head.tokens[2], 0, 1 << 28, "k"));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens[0] != "constraint" || line.tokens.size() < 2) {
      fail(line.number, "expected 'constraint <NAME> <vars...>'");
    }
    const auto& name = line.tokens[1];
    if (!language->contains(name)) fail(line.number, "unknown relation '" + name + "'");
    const int arity = language->at(name).arity();
    if (static_cast<int>(line.tokens.size()) - 2 != arity) {
      fail(line.number, "relation '" + name + "' expects " + std::to_string(arity) + " arguments");
    }
    Constraint c{name, {}};
    for (std::size_t j = 2; j < line.tokens.size(); ++j) {
      c.args.push_back(
          static_cast<Var>(parse_int(line, line.tokens[j], 0, inst.formula.num_vars, "variable")));
    }
    inst.formula.constraints.push_back(std::move(c));
  }
  return inst;
}

Hypergraph parse_hypergraph(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) fail(1, "missing 'ehs <n> <m>' header");
  const auto& head = lines[0];
  if (head.tokens[0] != "ehs" || head.tokens.size() != 3) fail(head.number, "expected 'ehs <n> <m>'");
  Hypergraph h;
  h.num_vertices = static_cast<int>(parse_int(head, head.tokens[1], 0, 1 << 28, "n"));
  const auto m = parse_int(head, head.tokens[2], 0, 1 << 28, "m");
  if (static_cast<long>(lines.size()) - 1 != m) {
    fail(head.number, "header announces " + std::to_string(m) + " edges, found " +
                          std::to_string(lines.size() - 1));
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<int> edge;
    for (const auto& tok : lines[i].tokens) {
      edge.push_back(static_cast<int>(parse_int(lines[i], tok, 1, h.num_vertices, "vertex")));
    }
    std::sort(edge.begin(), edge.end());
    if (std::adjacent_find(edge.begin(), edge.end()) != edge.end()) {
      fail(lines[i].number, "repeated vertex in edge");
    }
    h.edges.push_back(std::move(edge));
  }
  return h;
}

std::string write_language(const ConstraintLanguage& language) {
  std::ostringstream os;
  for (const auto& r : language.relations()) {
    os << "relation " << r.name() << ' ' << r.arity() << '\n';
    std::vector<std::string> rows;
    for (const auto& t : r.tuples()) rows.push_back(t.to_string());
    std::sort(rows.begin(), rows.end());
    for (const auto& row : rows) os << row << '\n';
    os << "end\n";
  }
  return os.str();
}

std::string write_instance(const Formula& f, int k) {
  std::ostringstream os;
  os << "minones " << f.num_vars << ' ' << k << '\n';
  for (const auto& c : f.constraints) {
    os << "constraint " << c.relation;
    for (Var v : c.args) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

std::string write_hypergraph(const Hypergraph& h) {
  std::ostringstream os;
  os << "ehs " << h.num_vertices << ' ' << h.edges.size() << '\n';
  for (const auto& e : h.edges) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

}  // namespace minones
