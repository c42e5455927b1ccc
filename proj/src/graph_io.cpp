#include "corrclust/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace corrclust {

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

int parse_int(const std::string& tok, int line_no, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected ") + what + ", got '" + tok + "'");
  }
}

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace

SignedGraph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::optional<Bipartition> bip;
  std::optional<Terminals> terminals;
  std::vector<SignedEdge> pos, neg;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(strip_comment(line));
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;

    if (n < 0) {
      if (toks[0] != "n") throw ParseError(line_no, "header must start with 'n'");
      if (toks.size() < 2) throw ParseError(line_no, "header missing vertex count");
      n = parse_int(toks[1], line_no, "vertex count");
      if (n < 0) throw ParseError(line_no, "vertex count must be nonnegative");
      std::size_t i = 2;
      while (i < toks.size()) {
        if (toks[i] == "bipartite") {
          if (i + 1 >= toks.size()) throw ParseError(line_no, "bipartite needs |L|");
          int left = parse_int(toks[i + 1], line_no, "left size");
          if (left <= 0 || left >= n) throw ParseError(line_no, "left size out of range");
          Bipartition b;
          for (int u = 0; u < left; ++u) b.left.push_back(u);
          for (int u = left; u < n; ++u) b.right.push_back(u);
          bip = std::move(b);
          i += 2;
        } else if (toks[i] == "terminals") {
          if (i + 2 >= toks.size()) throw ParseError(line_no, "terminals need two ids");
          Terminals tm;
          tm.s = parse_int(toks[i + 1], line_no, "terminal id");
          tm.t = parse_int(toks[i + 2], line_no, "terminal id");
          terminals = tm;
          i += 3;
        } else {
          throw ParseError(line_no, "unknown header field '" + toks[i] + "'");
        }
      }
      continue;
    }

    if (toks.size() != 4) throw ParseError(line_no, "edge lines are '<u> <v> <+|-> <weight|inf>'");
    SignedEdge e;
    e.u = parse_int(toks[0], line_no, "vertex id");
    e.v = parse_int(toks[1], line_no, "vertex id");
    if (e.u == e.v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ParseError(line_no, "vertex id out of range");
    if (toks[2] != "+" && toks[2] != "-") throw ParseError(line_no, "sign must be '+' or '-'");
    if (toks[3] == "inf") {
      e.infinite = true;
      e.weight = 1.0;
    } else {
      try {
        std::size_t used = 0;
        e.weight = std::stod(toks[3], &used);
        if (used != toks[3].size()) throw std::invalid_argument(toks[3]);
      } catch (const std::exception&) {
        throw ParseError(line_no, "cannot parse weight '" + toks[3] + "'");
      }
      if (!std::isfinite(e.weight) || e.weight < 0)
        throw ParseError(line_no, "weight must be finite and nonnegative");
    }
    int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    if (!seen.insert((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b)).second)
      throw ParseError(line_no, "duplicate edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    (toks[2] == "+" ? pos : neg).push_back(e);
  }
  if (n < 0) throw ParseError(line_no, "missing header line");
  return SignedGraph(n, std::move(pos), std::move(neg), std::move(bip), std::move(terminals));
}

SignedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(const SignedGraph& g, std::ostream& out) {
  out << "n " << g.n();
  if (g.bipartition()) {
    const auto& left = g.bipartition()->left;
    for (std::size_t i = 0; i < left.size(); ++i)
      if (std::count(left.begin(), left.end(), static_cast<int>(i)) != 1)
        throw ContractViolation("file format requires the left side to be vertices 0..|L|-1");
    out << " bipartite " << left.size();
  }
  if (g.terminals()) out << " terminals " << g.terminals()->s << " " << g.terminals()->t;
  out << "\n";
  auto dump = [&out](const std::vector<SignedEdge>& edges, char sign) {
    for (const auto& e : edges) {
      out << e.u << " " << e.v << " " << sign << " ";
      if (e.infinite)
        out << "inf";
      else
        out << format_weight(e.weight);
      out << "\n";
    }
  };
  dump(g.pos_edges(), '+');
  dump(g.neg_edges(), '-');
}

void write_graph_file(const SignedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot open '" + path + "' for writing");
  write_graph(g, out);
}

std::string graph_to_string(const SignedGraph& g) {
  std::ostringstream os;
  write_graph(g, os);
  return os.str();
}

CnfFormula read_cnf(std::istream& in) {
  std::string line;
  int line_no = 0;
  CnfFormula f;
  int declared_clauses = -1;
  std::vector<int> current;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (declared_clauses < 0) {
      std::string p, fmt;
      if (!(ls >> p >> fmt) || p != "p" || fmt != "cnf")
        throw ParseError(line_no, "expected 'p cnf <vars> <clauses>' header");
      if (!(ls >> f.num_vars >> declared_clauses) || f.num_vars <= 0 || declared_clauses <= 0)
        throw ParseError(line_no, "invalid CNF header counts");
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        if (current.size() > 3) throw ParseError(line_no, "clause wider than 3 literals");
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::abs(lit) > f.num_vars) throw ParseError(line_no, "literal out of range");
        current.push_back(lit);
      }
    }
  }
  if (declared_clauses < 0) throw ParseError(line_no, "missing CNF header");
  if (!current.empty()) throw ParseError(line_no, "clause not terminated by 0");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    throw ParseError(line_no, "clause count does not match the header");
  validate(f);
  return f;
}

CnfFormula read_cnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open CNF file '" + path + "'");
  return read_cnf(in);
}

}  // namespace corrclust
