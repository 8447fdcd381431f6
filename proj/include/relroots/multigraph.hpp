#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relroots/common.hpp"

namespace relroots {

// Exact multigraph: a vertex count plus an explicit edge multiset. Loops
// (u == v) and parallel edges are allowed; multiplicity is representational,
// not a weight, so subset enumeration over edges is direct.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    Multigraph() = default;
    Multigraph(int order, std::vector<std::pair<int, int>> es)
        : n(order), edges(std::move(es)) {
        validate();
    }

    int order() const { return n; }
    int size() const { return static_cast<int>(edges.size()); }
    int corank() const { return size() - n + 1; }  // d = m - n + 1

    bool is_loop(int e) const { return edges[e].first == edges[e].second; }

    // Sum of incident endpoint slots; a loop contributes 2.
    int degree(int v) const;
    int loop_count(int v) const;

    // Multiplicity matrix of non-loop bundles, mult[u][v] = parallel count.
    std::vector<std::vector<int>> multiplicity_matrix() const;

    void validate() const;  // endpoint range check
};

enum class GraphClass { Connected, TwoEdgeConnected, TwoConnected };

enum class MinorMode { Delete, Contract };

enum class Corank2Type { ThetaType, TwoCyclesAtVertexType, NotApplicable };

// Named constructors for the graph families used throughout: trees, cycles,
// edge bundles, theta graphs, two cycles sharing a vertex, and the
// pendant-cycle graphs realizing rational root -1/k at a given order.
struct FamilySpec {
    enum class Kind { Tree, Cycle, Bundle, Theta, TwoCyclesAtVertex, PendantCycle };
    enum class TreeShape { Path, Star };

    Kind kind = Kind::Tree;
    int a = 0, b = 0, c = 0;  // meaning depends on kind
    TreeShape shape = TreeShape::Path;

    static FamilySpec tree(int n, TreeShape s = TreeShape::Path);
    static FamilySpec cycle(int n);
    static FamilySpec bundle(int m);
    static FamilySpec theta(int l1, int l2, int l3);
    static FamilySpec two_cycles_at_vertex(int a, int b);
    static FamilySpec pendant_cycle(int k, int n);

    // CLI syntax "name:params", e.g. "cycle:5", "theta:1,2,2", "tree:6,star".
    static FamilySpec parse(const std::string& text);
    std::string to_string() const;

    void validate() const;  // throws std::domain_error on invalid parameters

    // A theta spec with two or more unit-length paths denotes a multigraph
    // theta (parallel pair between the hubs); accepted, but surfaced to the
    // caller so reports can flag it.
    bool is_multigraph_theta() const {
        return kind == Kind::Theta && ((a == 1) + (b == 1) + (c == 1)) >= 2;
    }
};

Multigraph make_family(const FamilySpec& spec);

bool is_connected(const Multigraph& g);

// Indices of edges whose deletion disconnects G. A member of a parallel pair
// is never a bridge; a loop is never a bridge. Requires G connected.
std::vector<int> bridges(const Multigraph& g);

// Vertices whose removal disconnects G (loops and multiplicities ignored).
std::vector<int> cut_vertices(const Multigraph& g);

std::set<GraphClass> classify(const Multigraph& g);

// Deletion removes one copy of edge e; contraction identifies its endpoints
// (vertex numbering: contracted vertex keeps min(u,v), vertices above
// max(u,v) shift down), keeping all resulting loops and parallel edges.
// Contracting a loop deletes it.
Multigraph edge_minor(const Multigraph& g, int e, MinorMode mode);

Multigraph remove_loops(const Multigraph& g);

// Repeatedly replaces a degree-2 vertex having two non-loop incident edges
// by an edge between its neighbors (a loop when they coincide), until no
// such vertex remains or a single vertex is left. Preserves corank.
Multigraph suppress_degree_two(const Multigraph& g);

// Bridgeless corank-2 graphs suppress to one of two base graphs: two loops
// at a vertex (two cycles sharing a vertex) or a 3-edge bundle (theta).
Corank2Type classify_corank2(const Multigraph& g);

// Canonical byte string: equal keys iff isomorphic (respecting loops and
// multiplicities). Deterministic across runs. Intended for order <= ~10.
std::string canonical_key(const Multigraph& g);

std::string key_to_hex(const std::string& key);

}  // namespace relroots
