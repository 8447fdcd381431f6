#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relroots/multigraph.hpp"

namespace relroots {

// An ordered universe of graphs with provenance ("generated" or
// "file(<path>,<format>)"). Generated streams contain one representative per
// isomorphism class, in a deterministic order.
struct GraphStream {
    std::vector<Multigraph> graphs;
    std::string provenance;
};

// Every isomorphism class of connected simple graphs of the given order,
// exactly once, by incremental vertex augmentation with canonical-key
// rejection. Supported for 1 <= n <= 9.
GraphStream enum_connected_simple(int n);

GraphStream filter_class(const GraphStream& s, GraphClass c);

GraphStream stream_from_file(const std::string& path, const std::string& format_name);

// Seeded random connected multigraphs: orders 2..max_order, per-pair
// multiplicity at most max_multiplicity, occasional loops. Deterministic for
// a fixed seed regardless of platform.
GraphStream sample_connected_multigraphs(int count, int max_order, int max_multiplicity,
                                         std::uint64_t seed);

}  // namespace relroots
