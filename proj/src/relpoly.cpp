#include "relroots/relpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace relroots {

HVector f_to_h(const FVector& f) {
    const int d = static_cast<int>(f.entries.size()) - 1;
    HVector h;
    h.entries.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        Int acc = 0;
        for (int i = 0; i <= j; ++i) {
            Int term = binomial(d - i, j - i) * f.entries[i];
            if ((j - i) & 1)
                acc -= term;
            else
                acc += term;
        }
        if (acc < 0)
            throw integrity_error("f_to_h: negative H entry (input is not a valid F-vector)");
        h.entries[j] = acc;
    }
    return h;
}

FVector h_to_f(const HVector& h) {
    const int d = static_cast<int>(h.entries.size()) - 1;
    FVector f;
    f.entries.resize(d + 1);
    for (int j = 0; j <= d; ++j) {
        Int acc = 0;
        for (int i = 0; i <= j; ++i) acc += binomial(d - i, j - i) * h.entries[i];
        f.entries[j] = acc;
    }
    return f;
}

// ---------------------------------------------------------------------------
// PolyMemo

PolyMemo::PolyMemo(std::size_t capacity)
    : shards_(kShards), per_shard_capacity_(std::max<std::size_t>(1, capacity / kShards)) {}

PolyMemo::Shard& PolyMemo::shard_for(const std::string& key) {
    return shards_[std::hash<std::string>{}(key) % kShards];
}

std::optional<Poly> PolyMemo::get(const std::string& key) {
    Shard& sh = shard_for(key);
    std::lock_guard<std::mutex> lock(sh.mu);
    auto it = sh.index.find(key);
    if (it == sh.index.end()) return std::nullopt;
    sh.lru.splice(sh.lru.begin(), sh.lru, it->second);
    return it->second->second;
}

void PolyMemo::put(const std::string& key, const Poly& value) {
    Shard& sh = shard_for(key);
    std::lock_guard<std::mutex> lock(sh.mu);
    auto it = sh.index.find(key);
    if (it != sh.index.end()) {
        sh.lru.splice(sh.lru.begin(), sh.lru, it->second);
        return;
    }
    sh.lru.emplace_front(key, value);
    sh.index[key] = sh.lru.begin();
    if (sh.lru.size() > per_shard_capacity_) {
        sh.index.erase(sh.lru.back().first);
        sh.lru.pop_back();
    }
}

std::size_t PolyMemo::entry_count() const {
    std::size_t total = 0;
    for (const auto& sh : shards_) {
        std::lock_guard<std::mutex> lock(sh.mu);
        total += sh.lru.size();
    }
    return total;
}

// ---------------------------------------------------------------------------
// Engine

namespace {

// Skeleton bundles of a loopless multigraph: unordered pairs + multiplicity.
struct Bundle {
    int u, v, mult;
};

std::vector<Bundle> bundles_of(const Multigraph& g) {
    std::map<std::pair<int, int>, int> mult;
    for (auto [a, b] : g.edges) {
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        ++mult[{a, b}];
    }
    std::vector<Bundle> out;
    out.reserve(mult.size());
    for (const auto& [uv, m] : mult) out.push_back({uv.first, uv.second, m});
    return out;
}

// Splits a connected loopless multigraph into biconnected blocks (bridges
// and bundles become two-vertex blocks). Each block is relabeled 0..k-1.
std::vector<Multigraph> biconnected_blocks(const Multigraph& g) {
    auto bs = bundles_of(g);
    std::vector<std::vector<int>> adj(g.n);  // bundle ids
    for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
        adj[bs[i].u].push_back(i);
        adj[bs[i].v].push_back(i);
    }
    std::vector<int> disc(g.n, -1), low(g.n, -1), parent_bundle(g.n, -1);
    std::vector<int> estack;               // bundle ids in traversal order
    std::vector<std::vector<int>> blocks;  // bundle id groups
    int timer = 0;

    // Iterative DFS; a bundle is stacked when first traversed. When a child
    // subtree cannot reach above its parent, everything down to and
    // including the tree bundle forms one block.
    std::vector<std::pair<int, std::size_t>> stack;
    for (int root = 0; root < g.n; ++root) {
        if (disc[root] != -1) continue;
        disc[root] = low[root] = timer++;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto [u, slot] = stack.back();
            if (slot < adj[u].size()) {
                ++stack.back().second;
                int bid = adj[u][slot];
                if (bid == parent_bundle[u]) continue;
                const Bundle& bd = bs[bid];
                int w = bd.u == u ? bd.v : bd.u;
                if (disc[w] == -1) {
                    estack.push_back(bid);
                    parent_bundle[w] = bid;
                    disc[w] = low[w] = timer++;
                    stack.emplace_back(w, 0);
                } else if (disc[w] < disc[u]) {  // back edge to an ancestor
                    estack.push_back(bid);
                    low[u] = std::min(low[u], disc[w]);
                }
            } else {
                stack.pop_back();
                if (stack.empty()) continue;
                int p = stack.back().first;
                low[p] = std::min(low[p], low[u]);
                if (low[u] >= disc[p]) {
                    std::vector<int> block;
                    for (;;) {
                        int bid = estack.back();
                        estack.pop_back();
                        block.push_back(bid);
                        if (bid == parent_bundle[u]) break;
                    }
                    blocks.push_back(std::move(block));
                }
            }
        }
    }

    std::vector<Multigraph> out;
    out.reserve(blocks.size());
    for (const auto& block : blocks) {
        std::map<int, int> relabel;
        Multigraph b;
        for (int bid : block) {
            for (int x : {bs[bid].u, bs[bid].v})
                if (!relabel.count(x)) {
                    relabel[x] = b.n++;
                }
        }
        for (int bid : block) {
            int u = relabel[bs[bid].u], v = relabel[bs[bid].v];
            for (int c = 0; c < bs[bid].mult; ++c) b.edges.emplace_back(u, v);
        }
        out.push_back(std::move(b));
    }
    return out;
}

// If the skeleton of a block is a single cycle, returns the bundle
// multiplicities around it.
std::optional<std::vector<int>> cycle_multiplicities(const Multigraph& block,
                                                     const std::vector<Bundle>& bs) {
    if (static_cast<int>(bs.size()) != block.n) return std::nullopt;
    std::vector<int> deg(block.n, 0);
    for (const auto& b : bs) {
        ++deg[b.u];
        ++deg[b.v];
    }
    for (int v = 0; v < block.n; ++v)
        if (deg[v] != 2) return std::nullopt;
    // n bundles, all skeleton degrees 2, connected block => one cycle
    std::vector<int> mults;
    mults.reserve(bs.size());
    for (const auto& b : bs) mults.push_back(b.mult);
    return mults;
}

// Reliability of a cycle of bundles: connected iff at most one bundle fails.
Poly cycle_rel(const std::vector<int>& mults) {
    std::vector<Poly> ok, fail;
    ok.reserve(mults.size());
    fail.reserve(mults.size());
    for (int m : mults) {
        ok.push_back(Poly::one_minus_q_power(m));
        fail.push_back(Poly::q_power(m));
    }
    // prefix/suffix products of the "operates" polynomials
    const std::size_t k = mults.size();
    std::vector<Poly> pre(k + 1, Poly::one()), suf(k + 1, Poly::one());
    for (std::size_t i = 0; i < k; ++i) pre[i + 1] = pre[i] * ok[i];
    for (std::size_t i = k; i-- > 0;) suf[i] = suf[i + 1] * ok[i];
    Poly total = pre[k];
    for (std::size_t i = 0; i < k; ++i) total += pre[i] * fail[i] * suf[i + 1];
    return total;
}

}  // namespace

ReliabilityEngine::ReliabilityEngine(std::size_t cache_capacity) : memo_(cache_capacity) {}

Poly ReliabilityEngine::reliability(const Multigraph& g0) {
    Multigraph g = remove_loops(g0);
    if (g.n == 0) return Poly::zero();
    if (g.n == 1) return Poly::one();
    if (!is_connected(g)) return Poly::zero();
    Poly result = Poly::one();
    for (const auto& block : biconnected_blocks(g)) result *= block_rel(block);
    return result;
}

Poly ReliabilityEngine::block_rel(const Multigraph& block) {
    if (block.n == 2) return Poly::one_minus_q_power(block.size());
    auto bs = bundles_of(block);
    if (auto mults = cycle_multiplicities(block, bs)) return cycle_rel(*mults);

    std::string key = canonical_key(block);
    if (auto hit = memo_.get(key)) return *hit;

    // Pivot: among bundles at a minimum-degree vertex, take maximum
    // multiplicity (ties by index); degree counts parallel copies.
    std::vector<int> deg(block.n, 0);
    for (const auto& b : bs) {
        deg[b.u] += b.mult;
        deg[b.v] += b.mult;
    }
    int pivot_vertex = 0;
    for (int v = 1; v < block.n; ++v)
        if (deg[v] < deg[pivot_vertex]) pivot_vertex = v;
    int pivot = -1;
    for (int i = 0; i < static_cast<int>(bs.size()); ++i) {
        if (bs[i].u != pivot_vertex && bs[i].v != pivot_vertex) continue;
        if (pivot == -1 || bs[i].mult > bs[pivot].mult) pivot = i;
    }
    const Bundle piv = bs[pivot];

    // Delete the whole bundle.
    Multigraph del;
    del.n = block.n;
    for (auto [a, b] : block.edges) {
        auto [x, y] = std::minmax(a, b);
        if (x == piv.u && y == piv.v) continue;
        del.edges.emplace_back(a, b);
    }

    // Contract the bundle: merge v into u, drop the loops this creates.
    Multigraph con;
    con.n = block.n - 1;
    auto remap = [&piv](int x) {
        if (x == piv.v) return piv.u;
        return x > piv.v ? x - 1 : x;
    };
    for (auto [a, b] : block.edges) {
        int ra = remap(a), rb = remap(b);
        if (ra == rb) continue;
        con.edges.emplace_back(ra, rb);
    }

    Poly result = Poly::q_power(piv.mult) * reliability(del) +
                  Poly::one_minus_q_power(piv.mult) * reliability(con);
    memo_.put(key, result);
    return result;
}

Poly reliability_poly(const Multigraph& g) {
    ReliabilityEngine engine(1u << 14);
    return engine.reliability(g);
}

// ---------------------------------------------------------------------------

FVector f_vector_bruteforce(const Multigraph& g) {
    if (!is_connected(g)) throw std::domain_error("f_vector_bruteforce: graph is not connected");
    const int m = g.size();
    if (m > 25)
        throw std::domain_error("f_vector_bruteforce: refusing m = " + std::to_string(m) +
                                " > 25 (2^m subset enumeration)");
    const int d = g.corank();
    FVector f;
    f.entries.assign(d + 1, 0);
    std::vector<int> parent(g.n);
    for (std::uint32_t failed = 0; failed < (1u << m); ++failed) {
        const int fails = __builtin_popcount(failed);
        if (fails > d) continue;
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = g.n;
        for (int e = 0; e < m; ++e) {
            if (failed >> e & 1) continue;
            int a = find(g.edges[e].first), b = find(g.edges[e].second);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        if (comps == 1) ++f.entries[fails];
    }
    return f;
}

FVector f_vector_from_poly(const Poly& rel, int m, int d) {
    Poly r = rel;
    std::vector<Int> full(m + 1, 0);
    for (int i = 0; i <= m; ++i) {
        if (r.is_zero()) break;
        Int fi = r.coeff(i);
        if (fi != 0) {
            full[i] = fi;
            r -= (Poly::q_power(i) * Poly::one_minus_q_to(m - i)) * fi;
        }
    }
    if (!r.is_zero())
        throw integrity_error("f_vector_from_poly: polynomial is not a degree-m F-form combination");
    for (int i = d + 1; i <= m; ++i)
        if (full[i] != 0)
            throw integrity_error("f_vector_from_poly: nonzero F entry beyond the corank");
    FVector f;
    f.entries.assign(full.begin(), full.begin() + d + 1);
    return f;
}

HVector h_vector(const Multigraph& g, ReliabilityEngine& engine) {
    if (!is_connected(g)) throw std::domain_error("h_vector: graph is not connected");
    Poly rel = engine.reliability(g);
    Poly h = rel.divide_exact(Poly::one_minus_q_to(g.n - 1));
    const int d = g.corank();
    if (h.degree() > d) throw integrity_error("h_vector: quotient degree exceeds the corank");
    HVector out;
    out.entries.assign(d + 1, 0);
    for (int i = 0; i <= h.degree(); ++i) out.entries[i] = h.coeff(i);
    return out;
}

HVector h_vector(const Multigraph& g) {
    ReliabilityEngine engine(1u << 14);
    return h_vector(g, engine);
}

Rat eval_exact(const Poly& p, const Rat& q0) { return p.eval(q0); }

Poly closed_form(const FamilySpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case FamilySpec::Kind::Tree:
            return Poly::one_minus_q_to(spec.a - 1);
        case FamilySpec::Kind::Cycle:
            return Poly::one_minus_q_to(spec.a - 1) *
                   Poly(std::vector<Int>{1, spec.a - 1});
        case FamilySpec::Kind::Bundle:
            return Poly::one_minus_q_power(spec.a);
        case FamilySpec::Kind::PendantCycle:
            return Poly::one_minus_q_to(spec.b - 1) *
                   Poly(std::vector<Int>{1, spec.a});
        case FamilySpec::Kind::Theta:
        case FamilySpec::Kind::TwoCyclesAtVertex:
            throw std::domain_error("closed_form: unsupported family " + spec.to_string() +
                                    " (compute via the engine)");
    }
    throw std::domain_error("closed_form: unknown family kind");
}

Int spanning_tree_count(const Multigraph& g) {
    if (g.n == 0) return 0;
    if (g.n == 1) return 1;
    const int sz = g.n - 1;
    // Reduced Laplacian (drop vertex 0), multiplicities as weights.
    std::vector<std::vector<Int>> a(sz, std::vector<Int>(sz, 0));
    for (auto [u, v] : g.edges) {
        if (u == v) continue;
        if (u > 0) a[u - 1][u - 1] += 1;
        if (v > 0) a[v - 1][v - 1] += 1;
        if (u > 0 && v > 0) {
            a[u - 1][v - 1] -= 1;
            a[v - 1][u - 1] -= 1;
        }
    }
    // Bareiss fraction-free elimination.
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < sz - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < sz; ++i)
                if (a[i][k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row == -1) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < sz; ++i) {
            for (int j = k + 1; j < sz; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = num / prev;  // exact by Bareiss
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Int det = a[sz - 1][sz - 1] * sign;
    if (det < 0) throw integrity_error("spanning_tree_count: negative determinant");
    return det;
}

}  // namespace relroots
