#pragma once

#include <iosfwd>
#include <string>

#include "corrclust/instances.hpp"
#include "corrclust/signed_graph.hpp"

namespace corrclust {

// Line-oriented graph format:
//   n <count> [bipartite <|L|>] [terminals <s> <t>]
//   <u> <v> <+|-> <weight|inf>
// '#' starts a comment; vertices are 0-indexed. Finite weights are printed
// with 17 significant digits so write/read round-trips bit-exactly. The
// bipartite header implies the left side is vertices 0..|L|-1.
SignedGraph read_graph(std::istream& in);
SignedGraph read_graph_file(const std::string& path);
void write_graph(const SignedGraph& g, std::ostream& out);
void write_graph_file(const SignedGraph& g, const std::string& path);
std::string graph_to_string(const SignedGraph& g);

// DIMACS CNF: 'c' comments, 'p cnf <vars> <clauses>' header, clauses as
// whitespace-separated literals terminated by 0.
CnfFormula read_cnf(std::istream& in);
CnfFormula read_cnf_file(const std::string& path);

}  // namespace corrclust
