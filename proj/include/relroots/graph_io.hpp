#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relroots/multigraph.hpp"

namespace relroots {

enum class GraphFormat { Graph6, Sparse6, EdgeListJson, Auto };

// Decodes one graph. graph6 encodes only simple graphs; sparse6 may carry
// loops and parallel edges; the JSON schema is {"n": int, "edges": [[u,v],...]}.
// Auto sniffs: ':' prefix -> sparse6, '{' -> JSON, otherwise graph6.
// Malformed input raises parse_error naming the offending byte offset.
Multigraph parse_graph(std::string_view text, GraphFormat format);

// Simple graphs only; throws std::domain_error on loops or parallel edges.
std::string to_graph6(const Multigraph& g);

std::string to_sparse6(const Multigraph& g);

std::string to_edge_list_json(const Multigraph& g);

// One graph per line; a leading ">>graph6<<" / ">>sparse6<<" header is
// tolerated. Format Auto sniffs per line.
std::vector<Multigraph> read_graph_file(const std::string& path, GraphFormat format);

}  // namespace relroots
