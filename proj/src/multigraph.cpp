#include "relroots/multigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace relroots {

int Multigraph::degree(int v) const {
    int d = 0;
    for (const auto& [a, b] : edges) d += (a == v) + (b == v);
    return d;
}

int Multigraph::loop_count(int v) const {
    int c = 0;
    for (const auto& [a, b] : edges) c += (a == v && b == v);
    return c;
}

std::vector<std::vector<int>> Multigraph::multiplicity_matrix() const {
    std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
    for (const auto& [a, b] : edges) {
        if (a == b) continue;
        ++w[a][b];
        ++w[b][a];
    }
    return w;
}

void Multigraph::validate() const {
    if (n < 0) throw std::domain_error("negative vertex count");
    for (const auto& [a, b] : edges)
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::domain_error("edge endpoint out of range");
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Skeleton view: one entry per unordered non-loop vertex pair, with its
// multiplicity and one representative original edge index.
struct Skeleton {
    struct Pair {
        int u, v, mult, rep_edge;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<int>> adj;  // vertex -> pair ids

    explicit Skeleton(const Multigraph& g) : adj(g.n) {
        std::map<std::pair<int, int>, int> index;
        for (int e = 0; e < g.size(); ++e) {
            auto [a, b] = g.edges[e];
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            auto it = index.find({a, b});
            if (it == index.end()) {
                index[{a, b}] = static_cast<int>(pairs.size());
                pairs.push_back({a, b, 1, e});
                adj[a].push_back(static_cast<int>(pairs.size()) - 1);
                adj[b].push_back(static_cast<int>(pairs.size()) - 1);
            } else {
                ++pairs[it->second].mult;
            }
        }
    }
};

// Iterative DFS over the skeleton computing discovery/low values.
struct LowLink {
    std::vector<int> disc, low, parent_pair;
    int timer = 0;

    explicit LowLink(const Skeleton& sk, int n)
        : disc(n, -1), low(n, -1), parent_pair(n, -1) {
        for (int root = 0; root < n; ++root) {
            if (disc[root] != -1) continue;
            dfs(sk, root);
        }
    }

    void dfs(const Skeleton& sk, int root) {
        std::vector<std::pair<int, std::size_t>> stack;  // (vertex, next adj slot)
        disc[root] = low[root] = timer++;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [u, slot] = stack.back();
            if (slot < sk.adj[u].size()) {
                int pid = sk.adj[u][slot++];
                if (pid == parent_pair[u]) continue;
                const auto& pr = sk.pairs[pid];
                int w = pr.u == u ? pr.v : pr.u;
                if (disc[w] == -1) {
                    disc[w] = low[w] = timer++;
                    parent_pair[w] = pid;
                    stack.emplace_back(w, 0);
                } else {
                    low[u] = std::min(low[u], disc[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().first;
                    low[p] = std::min(low[p], low[u]);
                }
            }
        }
    }
};

}  // namespace

bool is_connected(const Multigraph& g) {
    if (g.n == 0) return false;
    UnionFind uf(g.n);
    int comps = g.n;
    for (const auto& [a, b] : g.edges)
        if (uf.unite(a, b)) --comps;
    return comps == 1;
}

std::vector<int> bridges(const Multigraph& g) {
    if (!is_connected(g)) throw std::domain_error("bridges: graph is not connected");
    Skeleton sk(g);
    LowLink ll(sk, g.n);
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v) {
        int pid = ll.parent_pair[v];
        if (pid == -1) continue;
        const auto& pr = sk.pairs[pid];
        int p = pr.u == v ? pr.v : pr.u;
        if (ll.low[v] > ll.disc[p] && pr.mult == 1) out.push_back(pr.rep_edge);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> cut_vertices(const Multigraph& g) {
    Skeleton sk(g);
    std::vector<int> disc(g.n, -1), low(g.n, -1), parent(g.n, -1);
    std::vector<bool> cut(g.n, false);
    int timer = 0;
    for (int root = 0; root < g.n; ++root) {
        if (disc[root] != -1) continue;
        // (vertex, next slot, child count for roots)
        std::vector<std::tuple<int, std::size_t, int>> stack;
        disc[root] = low[root] = timer++;
        stack.emplace_back(root, 0, 0);
        while (!stack.empty()) {
            auto& [u, slot, children] = stack.back();
            if (slot < sk.adj[u].size()) {
                int pid = sk.adj[u][slot++];
                const auto& pr = sk.pairs[pid];
                int w = pr.u == u ? pr.v : pr.u;
                if (disc[w] == -1) {
                    parent[w] = u;
                    if (u == root) ++children;
                    disc[w] = low[w] = timer++;
                    stack.emplace_back(w, 0, 0);
                } else if (w != parent[u]) {
                    low[u] = std::min(low[u], disc[w]);
                }
            } else {
                int u_done = u;
                int root_children = children;
                stack.pop_back();
                if (u_done == root) {
                    if (root_children >= 2) cut[root] = true;
                } else if (!stack.empty()) {
                    int p = std::get<0>(stack.back());
                    low[p] = std::min(low[p], low[u_done]);
                    if (p != root && low[u_done] >= disc[p]) cut[p] = true;
                }
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (cut[v]) out.push_back(v);
    return out;
}

std::set<GraphClass> classify(const Multigraph& g) {
    std::set<GraphClass> out;
    if (!is_connected(g)) return out;
    out.insert(GraphClass::Connected);
    if (g.n >= 2 && bridges(g).empty()) out.insert(GraphClass::TwoEdgeConnected);
    if (g.n >= 3 && cut_vertices(g).empty()) out.insert(GraphClass::TwoConnected);
    return out;
}

Multigraph edge_minor(const Multigraph& g, int e, MinorMode mode) {
    if (e < 0 || e >= g.size()) throw std::domain_error("edge_minor: edge index out of range");
    Multigraph r;
    if (mode == MinorMode::Delete || g.is_loop(e)) {
        r.n = g.n;
        r.edges = g.edges;
        r.edges.erase(r.edges.begin() + e);
        return r;
    }
    auto [u, v] = g.edges[e];
    if (u > v) std::swap(u, v);
    r.n = g.n - 1;
    r.edges.reserve(g.edges.size() - 1);
    auto remap = [u, v](int x) { return x == v ? u : (x > v ? x - 1 : x); };
    for (int i = 0; i < g.size(); ++i) {
        if (i == e) continue;
        r.edges.emplace_back(remap(g.edges[i].first), remap(g.edges[i].second));
    }
    return r;
}

Multigraph remove_loops(const Multigraph& g) {
    Multigraph r;
    r.n = g.n;
    for (const auto& e : g.edges)
        if (e.first != e.second) r.edges.push_back(e);
    return r;
}

Multigraph suppress_degree_two(const Multigraph& g) {
    if (!is_connected(g)) throw std::domain_error("suppress_degree_two: graph is not connected");
    Multigraph cur = g;
    for (;;) {
        if (cur.n <= 1) break;
        int x = -1;
        for (int v = 0; v < cur.n; ++v) {
            if (cur.degree(v) == 2 && cur.loop_count(v) == 0) {
                x = v;
                break;
            }
        }
        if (x == -1) break;
        int y = -1, z = -1;
        std::vector<std::pair<int, int>> next;
        next.reserve(cur.edges.size() - 1);
        for (const auto& [a, b] : cur.edges) {
            if (a == x || b == x) {
                int other = a == x ? b : a;
                (y == -1 ? y : z) = other;
            } else {
                next.emplace_back(a, b);
            }
        }
        next.emplace_back(y, z);  // y == z yields a loop
        auto remap = [x](int w) { return w > x ? w - 1 : w; };
        for (auto& [a, b] : next) {
            a = remap(a);
            b = remap(b);
        }
        cur.n -= 1;
        cur.edges = std::move(next);
    }
    return cur;
}

Corank2Type classify_corank2(const Multigraph& g) {
    if (!is_connected(g)) throw std::domain_error("classify_corank2: graph is not connected");
    if (g.corank() != 2 || !bridges(g).empty()) return Corank2Type::NotApplicable;
    Multigraph s = suppress_degree_two(g);
    if (s.n == 1 && s.size() == 2 && s.is_loop(0) && s.is_loop(1))
        return Corank2Type::TwoCyclesAtVertexType;
    if (s.n == 2 && s.size() == 3 && !s.is_loop(0) && !s.is_loop(1) && !s.is_loop(2))
        return Corank2Type::ThetaType;
    throw integrity_error("classify_corank2: suppression of a bridgeless corank-2 graph did not reach a base graph");
}

// ---------------------------------------------------------------------------
// Families

FamilySpec FamilySpec::tree(int n, TreeShape s) {
    FamilySpec f;
    f.kind = Kind::Tree;
    f.a = n;
    f.shape = s;
    f.validate();
    return f;
}

FamilySpec FamilySpec::cycle(int n) {
    FamilySpec f;
    f.kind = Kind::Cycle;
    f.a = n;
    f.validate();
    return f;
}

FamilySpec FamilySpec::bundle(int m) {
    FamilySpec f;
    f.kind = Kind::Bundle;
    f.a = m;
    f.validate();
    return f;
}

FamilySpec FamilySpec::theta(int l1, int l2, int l3) {
    FamilySpec f;
    f.kind = Kind::Theta;
    f.a = l1;
    f.b = l2;
    f.c = l3;
    f.validate();
    return f;
}

FamilySpec FamilySpec::two_cycles_at_vertex(int a, int b) {
    FamilySpec f;
    f.kind = Kind::TwoCyclesAtVertex;
    f.a = a;
    f.b = b;
    f.validate();
    return f;
}

FamilySpec FamilySpec::pendant_cycle(int k, int n) {
    FamilySpec f;
    f.kind = Kind::PendantCycle;
    f.a = k;
    f.b = n;
    f.validate();
    return f;
}

void FamilySpec::validate() const {
    switch (kind) {
        case Kind::Tree:
            if (a < 1) throw std::domain_error("tree: order must be >= 1");
            break;
        case Kind::Cycle:
            if (a < 2) throw std::domain_error("cycle: order must be >= 2");
            break;
        case Kind::Bundle:
            if (a < 1) throw std::domain_error("bundle: size must be >= 1");
            break;
        case Kind::Theta:
            if (a < 1 || b < 1 || c < 1)
                throw std::domain_error("theta: path lengths must be >= 1");
            break;
        case Kind::TwoCyclesAtVertex:
            if (a < 2 || b < 2)
                throw std::domain_error("twocycles: cycle lengths must be >= 2");
            break;
        case Kind::PendantCycle:
            if (a < 1) throw std::domain_error("pendantcycle: k must be >= 1");
            if (b < a + 1) throw std::domain_error("pendantcycle: order must be >= k+1");
            break;
    }
}

FamilySpec FamilySpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("family spec must be name:params, got \"" + text + "\"");
    std::string name = text.substr(0, colon);
    std::vector<std::string> parts;
    {
        std::stringstream ss(text.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(tok);
    }
    auto num = [&](std::size_t i) {
        try {
            std::size_t used = 0;
            int v = std::stoi(parts.at(i), &used);
            if (used != parts[i].size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw std::domain_error("family spec \"" + text + "\": bad numeric parameter");
        }
    };
    auto arity = [&](std::size_t want) {
        if (parts.size() != want)
            throw std::domain_error("family spec \"" + text + "\": wrong parameter count");
    };
    if (name == "tree") {
        TreeShape shape = TreeShape::Path;
        if (parts.size() == 2) {
            if (parts[1] == "path")
                shape = TreeShape::Path;
            else if (parts[1] == "star")
                shape = TreeShape::Star;
            else
                throw std::domain_error("tree shape must be path or star");
        } else {
            arity(1);
        }
        return tree(num(0), shape);
    }
    if (name == "cycle") {
        arity(1);
        return cycle(num(0));
    }
    if (name == "bundle") {
        arity(1);
        return bundle(num(0));
    }
    if (name == "theta") {
        arity(3);
        return theta(num(0), num(1), num(2));
    }
    if (name == "twocycles") {
        arity(2);
        return two_cycles_at_vertex(num(0), num(1));
    }
    if (name == "pendantcycle") {
        arity(2);
        return pendant_cycle(num(0), num(1));
    }
    throw std::domain_error("unknown family \"" + name + "\"");
}

std::string FamilySpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Tree:
            os << "tree:" << a << "," << (shape == TreeShape::Path ? "path" : "star");
            break;
        case Kind::Cycle:
            os << "cycle:" << a;
            break;
        case Kind::Bundle:
            os << "bundle:" << a;
            break;
        case Kind::Theta:
            os << "theta:" << a << "," << b << "," << c;
            break;
        case Kind::TwoCyclesAtVertex:
            os << "twocycles:" << a << "," << b;
            break;
        case Kind::PendantCycle:
            os << "pendantcycle:" << a << "," << b;
            break;
    }
    return os.str();
}

Multigraph make_family(const FamilySpec& spec) {
    spec.validate();
    Multigraph g;
    switch (spec.kind) {
        case FamilySpec::Kind::Tree: {
            g.n = spec.a;
            for (int i = 1; i < spec.a; ++i) {
                if (spec.shape == FamilySpec::TreeShape::Path)
                    g.edges.emplace_back(i - 1, i);
                else
                    g.edges.emplace_back(0, i);
            }
            break;
        }
        case FamilySpec::Kind::Cycle: {
            g.n = spec.a;
            for (int i = 0; i < spec.a; ++i) g.edges.emplace_back(i, (i + 1) % spec.a);
            break;
        }
        case FamilySpec::Kind::Bundle: {
            g.n = 2;
            for (int i = 0; i < spec.a; ++i) g.edges.emplace_back(0, 1);
            break;
        }
        case FamilySpec::Kind::Theta: {
            // Hubs 0 and 1 joined by three internally disjoint paths.
            g.n = spec.a + spec.b + spec.c - 1;
            int next = 2;
            for (int len : {spec.a, spec.b, spec.c}) {
                int prev = 0;
                for (int i = 1; i < len; ++i) {
                    g.edges.emplace_back(prev, next);
                    prev = next++;
                }
                g.edges.emplace_back(prev, 1);
            }
            break;
        }
        case FamilySpec::Kind::TwoCyclesAtVertex: {
            g.n = spec.a + spec.b - 1;
            for (int i = 0; i < spec.a; ++i) g.edges.emplace_back(i, (i + 1) % spec.a);
            // Second cycle through vertex 0 and vertices a..a+b-2.
            int prev = 0;
            for (int i = 0; i < spec.b - 1; ++i) {
                g.edges.emplace_back(prev, spec.a + i);
                prev = spec.a + i;
            }
            g.edges.emplace_back(prev, 0);
            break;
        }
        case FamilySpec::Kind::PendantCycle: {
            g.n = spec.b;
            int k = spec.a;
            for (int i = 0; i <= k; ++i) g.edges.emplace_back(i, (i + 1) % (k + 1));
            for (int v = k + 1; v < spec.b; ++v) g.edges.emplace_back(0, v);
            break;
        }
    }
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------
// Canonical form: exact iterated color refinement followed by a pruned
// lexicographic-minimum search over cell-respecting vertex orders.

namespace {

std::vector<std::vector<int>> refine_cells(const Multigraph& g,
                                           const std::vector<std::vector<int>>& w) {
    const int n = g.n;
    std::vector<int> loops(n);
    for (int v = 0; v < n; ++v) loops[v] = g.loop_count(v);

    std::vector<int> color(n, 0);
    int ncolors = 1;
    for (;;) {
        // Signature: own color, loop count, sorted incident (mult, color) list.
        std::vector<std::pair<std::vector<int>, int>> sigs(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> s;
            s.push_back(color[v]);
            s.push_back(loops[v]);
            std::vector<std::pair<int, int>> inc;
            for (int u = 0; u < n; ++u)
                if (u != v && w[v][u] > 0) inc.emplace_back(w[v][u], color[u]);
            std::sort(inc.begin(), inc.end());
            for (auto& [m, c] : inc) {
                s.push_back(m);
                s.push_back(c);
            }
            sigs[v] = {std::move(s), v};
        }
        std::vector<std::pair<std::vector<int>, int>> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> next(n);
        int nc = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i > 0 && sorted[i].first != sorted[i - 1].first) ++nc;
            next[sorted[i].second] = nc;
        }
        ++nc;
        if (nc == ncolors) break;
        color = std::move(next);
        ncolors = nc;
    }

    std::vector<std::vector<int>> cells(ncolors);
    for (int v = 0; v < n; ++v) cells[color[v]].push_back(v);
    return cells;
}

struct CanonSearch {
    const std::vector<std::vector<int>>& w;
    const std::vector<int>& loops;
    int n;
    std::vector<int> pos_cell;               // position -> cell id
    std::vector<std::vector<int>> cells;
    std::vector<int> chosen;                 // position -> vertex
    std::vector<bool> used;
    std::vector<unsigned char> cur, best;
    bool have_best = false;

    void run() {
        chosen.assign(n, -1);
        used.assign(n, false);
        cur.clear();
        rec(0);
    }

    // Compares cur (length len) against the prefix of best.
    int prefix_cmp(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i)
            if (cur[i] != best[i]) return cur[i] < best[i] ? -1 : 1;
        return 0;
    }

    void rec(int p) {
        // The comparison state is refreshed at every node: best may have been
        // replaced anywhere below, but any replacement shares cur as a prefix.
        bool prefix_equal = false;
        if (have_best) {
            int cmp = prefix_cmp(cur.size());
            if (cmp > 0) return;
            prefix_equal = cmp == 0;
        }
        if (p == n) {
            if (!have_best || prefix_cmp(cur.size()) < 0) {
                best = cur;
                have_best = true;
            }
            return;
        }
        const auto& cell = cells[pos_cell[p]];
        // Candidate rows sorted ascending so the first dive is greedy-minimal.
        std::vector<std::pair<std::vector<unsigned char>, int>> cands;
        for (int v : cell) {
            if (used[v]) continue;
            std::vector<unsigned char> row;
            row.reserve(p + 1);
            row.push_back(static_cast<unsigned char>(loops[v]));
            for (int i = 0; i < p; ++i)
                row.push_back(static_cast<unsigned char>(w[v][chosen[i]]));
            cands.emplace_back(std::move(row), v);
        }
        std::sort(cands.begin(), cands.end());
        std::size_t base = cur.size();
        for (const auto& [row, v] : cands) {
            if (have_best && prefix_equal) {
                int cmp = 0;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (row[i] != best[base + i]) {
                        cmp = row[i] < best[base + i] ? -1 : 1;
                        break;
                    }
                }
                if (cmp > 0) break;  // candidates are sorted; the rest are worse
            }
            cur.insert(cur.end(), row.begin(), row.end());
            used[v] = true;
            chosen[p] = v;
            rec(p + 1);
            chosen[p] = -1;
            used[v] = false;
            cur.resize(base);
        }
    }
};

}  // namespace

std::string canonical_key(const Multigraph& g) {
    g.validate();
    if (g.n > 20)
        throw std::domain_error("canonical_key: supported up to order 20");
    if (g.n == 0) return std::string(1, '\0');

    auto w = g.multiplicity_matrix();
    std::vector<int> loops(g.n);
    for (int v = 0; v < g.n; ++v) {
        loops[v] = g.loop_count(v);
        if (loops[v] > 255) throw integrity_error("canonical_key: loop count exceeds 255");
        for (int u = 0; u < g.n; ++u)
            if (w[v][u] > 255) throw integrity_error("canonical_key: multiplicity exceeds 255");
    }

    auto cells = refine_cells(g, w);
    CanonSearch search{w, loops, g.n, {}, std::move(cells), {}, {}, {}, {}, false};
    for (std::size_t c = 0; c < search.cells.size(); ++c)
        for (std::size_t i = 0; i < search.cells[c].size(); ++i)
            search.pos_cell.push_back(static_cast<int>(c));
    search.run();

    std::string key;
    key.reserve(search.best.size() + 1);
    key.push_back(static_cast<char>(g.n));
    for (unsigned char b : search.best) key.push_back(static_cast<char>(b));
    return key;
}

std::string key_to_hex(const std::string& key) {
    static const char* hexd = "0123456789abcdef";
    std::string out;
    out.reserve(key.size() * 2);
    for (unsigned char c : key) {
        out.push_back(hexd[c >> 4]);
        out.push_back(hexd[c & 0xf]);
    }
    return out;
}

}  // namespace relroots
