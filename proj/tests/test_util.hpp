#pragma once

#include <algorithm>
#include <random>

#include "relroots/multigraph.hpp"

namespace relroots::testutil {

// Deterministic pseudo-random source for property tests.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

inline int rand_below(int k) { return static_cast<int>(rng()() % k); }

inline Multigraph random_connected_multigraph(int max_n, int max_extra, bool allow_loops) {
    int n = 2 + rand_below(max_n - 1);
    Multigraph g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.edges.emplace_back(rand_below(v), v);
    int extra = rand_below(max_extra + 1);
    for (int t = 0; t < extra; ++t) {
        int u = rand_below(n), v = rand_below(n);
        if (u == v) {
            if (allow_loops) g.edges.emplace_back(u, u);
            continue;
        }
        g.edges.emplace_back(u, v);
    }
    return g;
}

inline Multigraph relabel(const Multigraph& g, const std::vector<int>& perm) {
    Multigraph h;
    h.n = g.n;
    for (auto [a, b] : g.edges) h.edges.emplace_back(perm[a], perm[b]);
    return h;
}

inline Multigraph random_relabel(const Multigraph& g) {
    std::vector<int> perm(g.n);
    for (int i = 0; i < g.n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng());
    return relabel(g, perm);
}

// Brute-force bridge set: delete each edge, test connectivity.
inline std::vector<int> bridges_bruteforce(const Multigraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.size(); ++e) {
        Multigraph h = g;
        h.edges.erase(h.edges.begin() + e);
        if (!is_connected(h)) out.push_back(e);
    }
    return out;
}

// Exact isomorphism by permutation search; independent of canonical_key.
// Only sensible for small orders.
inline bool isomorphic_bruteforce(const Multigraph& a, const Multigraph& b) {
    if (a.n != b.n || a.size() != b.size()) return false;
    auto norm = [](const Multigraph& g) {
        std::vector<std::pair<int, int>> es;
        for (auto [u, v] : g.edges) es.emplace_back(std::min(u, v), std::max(u, v));
        std::sort(es.begin(), es.end());
        return es;
    };
    auto target = norm(b);
    std::vector<int> perm(a.n);
    for (int i = 0; i < a.n; ++i) perm[i] = i;
    do {
        if (norm(relabel(a, perm)) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace relroots::testutil
