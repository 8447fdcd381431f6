#include "relroots/enumerate.hpp"

#include <unordered_set>

#include "relroots/graph_io.hpp"

namespace relroots {

GraphStream enum_connected_simple(int n) {
    if (n < 1 || n > 9)
        throw std::domain_error("enum_connected_simple: order must be in 1..9");
    std::vector<Multigraph> current;
    current.emplace_back(1, std::vector<std::pair<int, int>>{});
    for (int k = 2; k <= n; ++k) {
        std::vector<Multigraph> next;
        std::unordered_set<std::string> seen;
        // Attaching a new vertex to every nonempty neighbor subset of every
        // connected (k-1)-graph reaches every connected k-graph: each has a
        // non-cut vertex whose removal leaves a connected parent.
        for (const auto& g : current) {
            for (std::uint32_t nb = 1; nb < (1u << (k - 1)); ++nb) {
                Multigraph h = g;
                h.n = k;
                for (int i = 0; i < k - 1; ++i)
                    if (nb >> i & 1) h.edges.emplace_back(i, k - 1);
                if (seen.insert(canonical_key(h)).second) next.push_back(std::move(h));
            }
        }
        current = std::move(next);
    }
    return {std::move(current), "generated"};
}

GraphStream filter_class(const GraphStream& s, GraphClass c) {
    GraphStream out;
    out.provenance = s.provenance;
    for (const auto& g : s.graphs)
        if (classify(g).count(c)) out.graphs.push_back(g);
    return out;
}

GraphStream stream_from_file(const std::string& path, const std::string& format_name) {
    GraphFormat fmt;
    if (format_name == "g6" || format_name == "graph6")
        fmt = GraphFormat::Graph6;
    else if (format_name == "s6" || format_name == "sparse6")
        fmt = GraphFormat::Sparse6;
    else if (format_name == "json")
        fmt = GraphFormat::EdgeListJson;
    else if (format_name == "auto")
        fmt = GraphFormat::Auto;
    else
        throw std::domain_error("unknown graph file format: " + format_name);
    GraphStream out;
    out.graphs = read_graph_file(path, fmt);
    out.provenance = "file(" + path + "," + format_name + ")";
    return out;
}

namespace {

// splitmix64: tiny, portable, identical on every platform.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Modulo reduction keeps the stream platform-independent; the bias is
    // negligible for the tiny ranges used here.
    std::uint64_t below(std::uint64_t k) { return next() % k; }
};

}  // namespace

GraphStream sample_connected_multigraphs(int count, int max_order, int max_multiplicity,
                                         std::uint64_t seed) {
    if (count < 0) throw std::domain_error("sample count must be nonnegative");
    if (max_order < 2) throw std::domain_error("max_order must be >= 2");
    if (max_multiplicity < 1) throw std::domain_error("max_multiplicity must be >= 1");
    GraphStream out;
    out.provenance = "multigraph-sample(seed=" + std::to_string(seed) + ")";
    SplitMix64 rng{seed};
    out.graphs.reserve(count);
    for (int i = 0; i < count; ++i) {
        int n = 2 + static_cast<int>(rng.below(max_order - 1));
        Multigraph g;
        g.n = n;
        std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
        // Random spanning skeleton keeps every sample connected.
        for (int v = 1; v < n; ++v) {
            int u = static_cast<int>(rng.below(v));
            g.edges.emplace_back(u, v);
            ++mult[u][v];
        }
        int extra = static_cast<int>(rng.below(n + 2));
        for (int t = 0; t < extra; ++t) {
            int u = static_cast<int>(rng.below(n));
            int v = static_cast<int>(rng.below(n));
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            if (mult[u][v] >= max_multiplicity) continue;
            ++mult[u][v];
            g.edges.emplace_back(u, v);
        }
        // Occasional loop; reliability must ignore it.
        if (rng.below(100) < 15) {
            int v = static_cast<int>(rng.below(n));
            g.edges.emplace_back(v, v);
        }
        out.graphs.push_back(std::move(g));
    }
    return out;
}

}  // namespace relroots
