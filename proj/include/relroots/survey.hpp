#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relroots/enumerate.hpp"
#include "relroots/rootlab.hpp"

namespace relroots {

inline constexpr const char* kVersion = "0.3.0";

// Everything computed for one connected graph: H-vector, roots, exact
// rational roots, and the per-graph property checks.
struct GraphAnalysis {
    std::string key_hex;
    std::string graph_text;  // graph6 for simple graphs, sparse6 otherwise
    int n = 0, m = 0, d = 0;
    bool two_edge_connected = false, two_connected = false;

    std::vector<std::string> h_entries;
    RootSet roots;
    std::string min_modulus;  // 20 significant digits; "" when no roots exist
    std::vector<std::array<std::string, 2>> attaining_roots;
    std::vector<std::string> rational_roots;
    bool rational_near_miss = false;

    bool h0_ok = false, h1_ok = false, log_concave = false, tree_count_ok = false;
    bool annulus_ok = false, gcd_consistent = false;
    LocationChecks location;
    std::string gcd_verdict = "na";       // excluded | possible | inconclusive | na
    std::string annulus_r, annulus_big_r; // "p/q"; empty when not applicable

    std::vector<std::string> violations;  // names of failed checks
};

GraphAnalysis analyze_graph(const Multigraph& g, ReliabilityEngine& engine);

struct Census {
    int order = 0;
    std::string graph_class;  // "connected" | "2ec" | "2c" | "sample"
    std::string provenance;
    std::uint64_t seed = 0;
    std::vector<Multigraph> graphs;
    std::vector<GraphAnalysis> analyses;
};

// Runs analyze_graph over a universe with a worker pool; output order is the
// input order regardless of scheduling.
Census analyze_universe(const GraphStream& stream, int order, const std::string& graph_class,
                        ReliabilityEngine& engine, int threads);

struct SurveyReport {
    int order = 0;
    std::string graph_class;
    std::string provenance;
    std::uint64_t seed = 0;
    long graph_count = 0;

    std::string min_modulus;  // universe-wide; "" when undefined
    std::vector<std::string> min_attaining_graphs;
    std::vector<std::string> min_attaining_keys;
    std::vector<std::array<std::string, 2>> min_attaining_roots;

    std::vector<std::string> rational_union;
    // root -> (witness count, first witness graph text)
    std::map<std::string, std::pair<long, std::string>> rational_witnesses;

    std::vector<std::string> violations;  // empty on a clean run
    std::vector<std::string> notes;

    std::string version = kVersion;
    int threads = 1;
    std::optional<double> wall_time_ms;  // only set when timing was requested
};

SurveyReport summarize(const Census& census);

// Census-building wrappers over generated universes (2 <= n <= 8).
SurveyReport survey_min_modulus(int n, GraphClass c);
SurveyReport survey_rational_roots(int n, GraphClass c);

struct MinusOneReport {
    int order = 0;
    long graphs_tested = 0;
    std::vector<std::string> violations;  // graph6 of any graph with Rel(-1) == 0
};
MinusOneReport check_minus_one_conjecture(int n);

struct McResult {
    double estimate = 0, stderr_value = 0, exact = 0, z = 0;
    long trials = 0;
    std::uint64_t seed = 0;
};

// Seeded edge-failure simulation against the exact value. Counter-based
// per-trial streams: trial t depends only on (seed, t).
McResult monte_carlo_check(const Multigraph& g, const Rat& q0, long trials, std::uint64_t seed);

// roots-<order>.csv and roots-<order>.svg under dir; byte-deterministic.
// One row per (graph, distinct root), the point 1 carried with multiplicity.
void emit_root_scatter(const std::vector<GraphAnalysis>& analyses, const std::string& dir,
                       int order);

std::string census_jsonl(const Census& census);
std::string summary_json(const SurveyReport& report);
std::string minus_one_json(const MinusOneReport& report);
std::string mc_json(const McResult& r);

// census-<n>-<class>.jsonl and summary-<n>-<class>.json under dir.
void write_survey_files(const Census& census, const SurveyReport& report,
                        const std::string& dir);

std::string class_token(GraphClass c);
GraphClass class_from_token(const std::string& token);

int default_thread_count();

}  // namespace relroots
