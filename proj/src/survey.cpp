#include "relroots/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "relroots/graph_io.hpp"

namespace relroots {

namespace {

using nlohmann::json;

const XReal kTol("1e-9");

XReal rat_to_xreal(const Rat& r) {
    return XReal(numerator(r)) / XReal(denominator(r));
}

std::string graph_text_of(const Multigraph& g) {
    for (const auto& [a, b] : g.edges)
        if (a == b) return to_sparse6(g);
    auto w = g.multiplicity_matrix();
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (w[u][v] > 1) return to_sparse6(g);
    return to_graph6(g);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = std::min<std::size_t>(threads, count);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

int default_thread_count() {
    if (const char* env = std::getenv("RELROOTS_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
        throw std::domain_error("RELROOTS_THREADS must be a positive integer");
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string class_token(GraphClass c) {
    switch (c) {
        case GraphClass::Connected:
            return "connected";
        case GraphClass::TwoEdgeConnected:
            return "2ec";
        case GraphClass::TwoConnected:
            return "2c";
    }
    return "?";
}

GraphClass class_from_token(const std::string& token) {
    if (token == "connected" || token == "any") return GraphClass::Connected;
    if (token == "2ec" || token == "two-edge-connected") return GraphClass::TwoEdgeConnected;
    if (token == "2c" || token == "two-connected") return GraphClass::TwoConnected;
    throw std::domain_error("unknown graph class \"" + token + "\" (connected|2ec|2c)");
}

GraphAnalysis analyze_graph(const Multigraph& g, ReliabilityEngine& engine) {
    if (!is_connected(g)) throw std::domain_error("analyze_graph: graph is not connected");

    GraphAnalysis a;
    a.key_hex = key_to_hex(canonical_key(g));
    a.graph_text = graph_text_of(g);
    a.n = g.n;
    a.m = g.size();
    a.d = g.corank();
    auto classes = classify(g);
    a.two_edge_connected = classes.count(GraphClass::TwoEdgeConnected) > 0;
    a.two_connected = classes.count(GraphClass::TwoConnected) > 0;

    Poly rel = engine.reliability(g);
    HVector h = h_vector(g, engine);
    for (const auto& e : h.entries) a.h_entries.push_back(e.str());

    // Roots of H, plus the symbolic root 1 of multiplicity n-1.
    a.roots.trivial_root_one_multiplicity = g.n - 1;
    Poly htrim = rel.divide_exact(Poly::one_minus_q_to(g.n - 1));
    if (htrim.degree() >= 1) {
        RootSet solved = solve_h_roots(htrim);
        a.roots.complex_roots = std::move(solved.complex_roots);
    }

    // Exact rational roots among 1 and -1/k, k = 1..n-1.
    if (g.n >= 2) {
        std::vector<Rat> found;
        if (rel.eval(Rat(1)) == 0) found.emplace_back(1);
        for (int k = 1; k <= g.n - 1; ++k) {
            Rat cand(-1, k);
            if (rel.eval(cand) == 0) found.push_back(cand);
        }
        std::sort(found.begin(), found.end());
        a.roots.rational_roots = found;
        for (const auto& r : found) a.rational_roots.push_back(rat_to_string(r));
        // Near-miss cross-check against the numerical roots.
        for (const auto& z : a.roots.complex_roots) {
            if (abs(z.im) > XReal("1e-8")) continue;
            for (int k = 1; k <= g.n - 1; ++k) {
                if (abs(z.re + XReal(1) / k) <= XReal("1e-8") &&
                    !std::binary_search(found.begin(), found.end(), Rat(-1, k)))
                    a.rational_near_miss = true;
            }
        }
    }

    XReal minmod = a.roots.min_modulus();
    if (minmod >= 0) a.min_modulus = xreal_to_string(minmod);
    for (const auto& z : a.roots.complex_roots)
        if (z.modulus() <= minmod + kTol)
            a.attaining_roots.push_back({xreal_to_string(z.re), xreal_to_string(z.im)});
    if (a.roots.trivial_root_one_multiplicity > 0 && XReal(1) <= minmod + kTol)
        a.attaining_roots.push_back({"1", "0"});

    // Structural checks.
    a.h0_ok = !h.entries.empty() && h.entries[0] == 1;
    a.h1_ok = !a.two_edge_connected || (h.entries.size() >= 2 && h.entries[1] == g.n - 1);
    a.log_concave = is_log_concave(h);
    Int trees = 0;
    for (const auto& e : h.entries) trees += e;
    a.tree_count_ok = trees == spanning_tree_count(g);
    a.location = root_location_checks(g, a.roots);

    bool h_positive = true;
    for (int i = 0; i <= htrim.degree(); ++i)
        if (htrim.coeff(i) <= 0) h_positive = false;
    a.annulus_ok = true;
    a.gcd_consistent = true;
    if (htrim.degree() >= 1 && h_positive) {
        Annulus an = ek_annulus(htrim);
        a.annulus_r = rat_to_string(an.r);
        a.annulus_big_r = rat_to_string(an.R);
        XReal rx = rat_to_xreal(an.r), Rx = rat_to_xreal(an.R);
        for (const auto& z : a.roots.complex_roots) {
            XReal mod = z.modulus();
            if (mod < rx - kTol || mod > Rx + kTol) a.annulus_ok = false;
        }
        GcdTest t = inner_circle_gcd_test(htrim);
        switch (t.verdict) {
            case GcdTest::Verdict::Excluded:
                a.gcd_verdict = "excluded";
                break;
            case GcdTest::Verdict::Possible:
                a.gcd_verdict = "possible";
                break;
            case GcdTest::Verdict::Inconclusive:
                a.gcd_verdict = "inconclusive";
                break;
        }
        if (t.inner_root_excluded) {
            for (const auto& z : a.roots.complex_roots)
                if (abs(z.modulus() - rx) <= kTol) a.gcd_consistent = false;
        }
    }

    auto flag = [&](bool ok, const char* name) {
        if (!ok) a.violations.emplace_back(name);
    };
    flag(a.h0_ok, "h0");
    flag(a.h1_ok, "h1");
    flag(a.log_concave, "log_concave");
    flag(a.tree_count_ok, "tree_count");
    flag(h_positive, "h_positive");
    flag(a.annulus_ok, "annulus");
    flag(a.gcd_consistent, "gcd");
    flag(a.location.real_range_ok, "real_range");
    flag(a.location.modulus_bound_ok, "modulus_bound");
    flag(a.location.min_modulus_ok, "min_modulus");
    flag(!a.rational_near_miss, "rational_near_miss");
    return a;
}

Census analyze_universe(const GraphStream& stream, int order, const std::string& graph_class,
                        ReliabilityEngine& engine, int threads) {
    Census census;
    census.order = order;
    census.graph_class = graph_class;
    census.provenance = stream.provenance;
    census.graphs = stream.graphs;
    census.analyses.resize(census.graphs.size());
    parallel_for(census.graphs.size(), threads, [&](std::size_t i) {
        census.analyses[i] = analyze_graph(census.graphs[i], engine);
    });
    return census;
}

SurveyReport summarize(const Census& census) {
    SurveyReport rep;
    rep.order = census.order;
    rep.graph_class = census.graph_class;
    rep.provenance = census.provenance;
    rep.seed = census.seed;
    rep.graph_count = static_cast<long>(census.analyses.size());
    rep.notes.push_back(
        "theta(1,2,2): exact division and the subset-enumeration oracle agree on H2 = 4; "
        "the interval-count shortcut yielding 3 is rejected");
    if (census.analyses.empty()) {
        rep.notes.push_back("empty universe");
        return rep;
    }

    XReal best = -1;
    for (const auto& a : census.analyses) {
        if (a.min_modulus.empty()) continue;
        XReal v(a.min_modulus);
        if (best < 0 || v < best) best = v;
    }
    if (best >= 0) {
        rep.min_modulus = xreal_to_string(best);
        for (const auto& a : census.analyses) {
            if (a.min_modulus.empty()) continue;
            if (XReal(a.min_modulus) <= best + kTol) {
                rep.min_attaining_graphs.push_back(a.graph_text);
                rep.min_attaining_keys.push_back(a.key_hex);
                for (const auto& root : a.attaining_roots)
                    rep.min_attaining_roots.push_back(root);
            }
        }
    }

    for (const auto& a : census.analyses) {
        for (const auto& r : a.rational_roots) {
            auto [it, inserted] = rep.rational_witnesses.try_emplace(r, 1, a.graph_text);
            if (!inserted) ++it->second.first;
        }
        for (const auto& v : a.violations)
            rep.violations.push_back(a.key_hex + ":" + v);
    }
    std::vector<Rat> keys;
    for (const auto& [r, w] : rep.rational_witnesses) keys.push_back(rat_from_string(r));
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) rep.rational_union.push_back(rat_to_string(k));
    return rep;
}

namespace {

Census build_census(int n, GraphClass c, ReliabilityEngine& engine, int threads) {
    if (n < 2 || n > 8)
        throw std::domain_error("survey: generated universes support order 2..8");
    GraphStream stream = enum_connected_simple(n);
    if (c != GraphClass::Connected) stream = filter_class(stream, c);
    return analyze_universe(stream, n, class_token(c), engine, threads);
}

}  // namespace

SurveyReport survey_min_modulus(int n, GraphClass c) {
    ReliabilityEngine engine;
    Census census = build_census(n, c, engine, default_thread_count());
    return summarize(census);
}

SurveyReport survey_rational_roots(int n, GraphClass c) {
    ReliabilityEngine engine;
    Census census = build_census(n, c, engine, default_thread_count());
    return summarize(census);
}

MinusOneReport check_minus_one_conjecture(int n) {
    if (n < 2 || n > 8)
        throw std::domain_error("check_minus_one_conjecture: order must be in 2..8");
    MinusOneReport rep;
    rep.order = n;
    ReliabilityEngine engine;
    GraphStream stream = enum_connected_simple(n);
    for (const auto& g : stream.graphs) {
        ++rep.graphs_tested;
        Poly rel = engine.reliability(g);
        if (rel.eval_int(-1) == 0) rep.violations.push_back(to_graph6(g));
    }
    return rep;
}

namespace {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

}  // namespace

McResult monte_carlo_check(const Multigraph& g, const Rat& q0, long trials,
                           std::uint64_t seed) {
    if (q0 < 0 || q0 > 1) throw std::domain_error("monte_carlo_check: q0 must be in [0,1]");
    if (trials < 1000) throw std::domain_error("monte_carlo_check: trials must be >= 1000");

    // Failure threshold on 64-bit draws: draw < floor(q0 * 2^64).
    const bool always_fail = q0 == 1;
    std::uint64_t cutoff = 0;
    if (!always_fail) {
        Int c = (numerator(q0) << 64) / denominator(q0);
        cutoff = c.convert_to<std::uint64_t>();
    }

    const int m = g.size();
    long successes = 0;
    std::vector<int> parent(g.n);
    for (long t = 0; t < trials; ++t) {
        // Counter-based stream: state depends only on (seed, t).
        SplitMix64 rng{seed + 0x100000001b3ull * static_cast<std::uint64_t>(t + 1)};
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        int comps = g.n;
        for (int e = 0; e < m; ++e) {
            bool fails = always_fail || rng.next() < cutoff;
            if (fails) continue;
            int a = find(g.edges[e].first), b = find(g.edges[e].second);
            if (a != b) {
                parent[a] = b;
                --comps;
            }
        }
        if (comps == 1) ++successes;
    }

    McResult r;
    r.trials = trials;
    r.seed = seed;
    r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    Rat exact = reliability_poly(g).eval(q0);
    r.exact = exact.convert_to<double>();
    double variance = r.exact * (1.0 - r.exact) / static_cast<double>(trials);
    r.stderr_value = std::sqrt(variance);
    if (r.stderr_value == 0) {
        r.z = r.estimate == r.exact ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        r.z = (r.estimate - r.exact) / r.stderr_value;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json record_json(const GraphAnalysis& a) {
    json j;
    j["schema"] = "relroots.census.v1";
    j["key"] = a.key_hex;
    j["graph"] = a.graph_text;
    j["n"] = a.n;
    j["m"] = a.m;
    j["d"] = a.d;
    std::vector<std::string> classes{"connected"};
    if (a.two_edge_connected) classes.push_back("2ec");
    if (a.two_connected) classes.push_back("2c");
    j["classes"] = classes;
    j["h"] = a.h_entries;
    json roots = json::array();
    for (const auto& z : a.roots.complex_roots) {
        roots.push_back({{"re", xreal_to_string(z.re)},
                         {"im", xreal_to_string(z.im)},
                         {"residual", z.residual},
                         {"multiplicity", z.multiplicity}});
    }
    j["h_roots"] = roots;
    j["root_one_multiplicity"] = a.roots.trivial_root_one_multiplicity;
    j["min_modulus"] = a.min_modulus;
    json att = json::array();
    for (const auto& r : a.attaining_roots) att.push_back({r[0], r[1]});
    j["attaining_roots"] = att;
    j["rational_roots"] = a.rational_roots;
    j["checks"] = {{"h0", a.h0_ok},
                   {"h1", a.h1_ok},
                   {"log_concave", a.log_concave},
                   {"tree_count", a.tree_count_ok},
                   {"annulus", a.annulus_ok},
                   {"gcd_verdict", a.gcd_verdict},
                   {"gcd_consistent", a.gcd_consistent},
                   {"real_range", a.location.real_range_ok},
                   {"modulus_bound", a.location.modulus_bound_ok},
                   {"min_modulus", a.location.min_modulus_ok},
                   {"rational_near_miss", a.rational_near_miss}};
    if (!a.annulus_r.empty()) j["annulus"] = {{"r", a.annulus_r}, {"R", a.annulus_big_r}};
    j["violations"] = a.violations;
    return j;
}

}  // namespace

std::string census_jsonl(const Census& census) {
    std::string out;
    for (const auto& a : census.analyses) {
        out += record_json(a).dump();
        out += '\n';
    }
    return out;
}

std::string summary_json(const SurveyReport& rep) {
    json j;
    j["schema"] = "relroots.summary.v1";
    j["universe"] = {{"order", rep.order},
                     {"class", rep.graph_class},
                     {"provenance", rep.provenance}};
    j["graph_count"] = rep.graph_count;
    j["min_modulus"] = rep.min_modulus;
    j["min_attaining"] = {{"graphs", rep.min_attaining_graphs},
                          {"keys", rep.min_attaining_keys}};
    json att = json::array();
    for (const auto& r : rep.min_attaining_roots) att.push_back({r[0], r[1]});
    j["min_attaining"]["roots"] = att;
    j["rational_union"] = rep.rational_union;
    json wit = json::object();
    for (const auto& [root, cw] : rep.rational_witnesses)
        wit[root] = {{"count", cw.first}, {"witness", cw.second}};
    j["rational_witnesses"] = wit;
    j["violations"] = rep.violations;
    j["notes"] = rep.notes;
    j["metadata"] = {{"seed", rep.seed},
                     {"version", rep.version},
                     {"threads", rep.threads},
                     {"wall_time_ms",
                      rep.wall_time_ms ? json(*rep.wall_time_ms) : json(nullptr)}};
    return j.dump(2) + "\n";
}

std::string minus_one_json(const MinusOneReport& rep) {
    json j;
    j["schema"] = "relroots.minusone.v1";
    j["order"] = rep.order;
    j["graphs_tested"] = rep.graphs_tested;
    j["violations"] = rep.violations;
    return j.dump(2) + "\n";
}

std::string mc_json(const McResult& r) {
    json j;
    j["schema"] = "relroots.mc.v1";
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_value;
    j["exact"] = r.exact;
    j["z"] = r.z;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw io_error("write failed: " + path);
}

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_survey_files(const Census& census, const SurveyReport& report,
                        const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string base = dir + "/census-" + std::to_string(census.order) + "-" +
                       census.graph_class;
    write_file(base + ".jsonl", census_jsonl(census));
    write_file(dir + "/summary-" + std::to_string(census.order) + "-" +
                   census.graph_class + ".json",
               summary_json(report));
}

void emit_root_scatter(const std::vector<GraphAnalysis>& analyses, const std::string& dir,
                       int order) {
    if (analyses.empty())
        throw std::domain_error("emit_root_scatter: no records to plot");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    std::string csv = "re,im,n,canonical_key,multiplicity\n";
    double maxmod = 1.0;
    std::vector<std::array<double, 2>> points;
    std::vector<bool> is_one;
    for (const auto& a : analyses) {
        for (const auto& z : a.roots.complex_roots) {
            csv += xreal_to_string(z.re) + "," + xreal_to_string(z.im) + "," +
                   std::to_string(a.n) + "," + a.key_hex + "," +
                   std::to_string(z.multiplicity) + "\n";
            double re = z.re.convert_to<double>(), im = z.im.convert_to<double>();
            points.push_back({re, im});
            is_one.push_back(false);
            maxmod = std::max(maxmod, std::hypot(re, im));
        }
        if (a.roots.trivial_root_one_multiplicity > 0) {
            csv += "1,0," + std::to_string(a.n) + "," + a.key_hex + "," +
                   std::to_string(a.roots.trivial_root_one_multiplicity) + "\n";
            points.push_back({1.0, 0.0});
            is_one.push_back(true);
        }
    }
    write_file(dir + "/roots-" + std::to_string(order) + ".csv", csv);

    const double L = std::max(1.2, std::ceil((maxmod + 0.05) * 10.0) / 10.0);
    const double size = 800.0, half = size / 2.0;
    auto px = [&](double x) { return half + x / L * (half - 20.0); };
    auto py = [&](double y) { return half - y / L * (half - 20.0); };
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    svg += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + fmt_coord(px(-L)) + "\" y1=\"" + fmt_coord(py(0)) + "\" x2=\"" +
           fmt_coord(px(L)) + "\" y2=\"" + fmt_coord(py(0)) +
           "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + fmt_coord(px(0)) + "\" y1=\"" + fmt_coord(py(-L)) + "\" x2=\"" +
           fmt_coord(px(0)) + "\" y2=\"" + fmt_coord(py(L)) +
           "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    svg += "<circle cx=\"" + fmt_coord(px(0)) + "\" cy=\"" + fmt_coord(py(0)) + "\" r=\"" +
           fmt_coord(px(1) - px(0)) +
           "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    if (order >= 2) {
        double r = 1.0 / (order - 1);
        svg += "<circle cx=\"" + fmt_coord(px(0)) + "\" cy=\"" + fmt_coord(py(0)) +
               "\" r=\"" + fmt_coord(px(r) - px(0)) +
               "\" fill=\"none\" stroke=\"#4060c0\" stroke-width=\"1\" "
               "stroke-dasharray=\"4 3\"/>\n";
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        svg += "<circle cx=\"" + fmt_coord(px(points[i][0])) + "\" cy=\"" +
               fmt_coord(py(points[i][1])) + "\" r=\"1.6\" fill=\"" +
               (is_one[i] ? std::string("#c03030") : std::string("#202020")) +
               "\" fill-opacity=\"0.35\"/>\n";
    }
    svg += "</svg>\n";
    write_file(dir + "/roots-" + std::to_string(order) + ".svg", svg);
}

}  // namespace relroots
