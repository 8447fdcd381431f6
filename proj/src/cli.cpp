#include "relroots/cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relroots/graph_io.hpp"
#include "relroots/survey.hpp"

namespace relroots {

namespace {

using nlohmann::json;

struct GraphInput {
    std::string family, graph6_text, sparse6_text, json_text, input_path;
    std::string format = "auto";

    void attach(CLI::App* cmd) {
        auto* f = cmd->add_option("--family", family, "family spec, e.g. cycle:5, theta:1,2,2");
        auto* g6 = cmd->add_option("--graph6", graph6_text, "inline graph6 string");
        auto* s6 = cmd->add_option("--sparse6", sparse6_text, "inline sparse6 string");
        auto* js = cmd->add_option("--json-graph", json_text, "inline edge-list JSON");
        auto* in = cmd->add_option("--input", input_path, "file with one graph (first line used)");
        cmd->add_option("--format", format, "file format: g6|s6|json|auto")
            ->check(CLI::IsMember({"g6", "s6", "json", "auto"}));
        f->excludes(g6, s6, js, in);
        g6->excludes(s6, js, in);
        s6->excludes(js, in);
        js->excludes(in);
    }

    std::optional<FamilySpec> family_spec() const {
        if (family.empty()) return std::nullopt;
        return FamilySpec::parse(family);
    }

    Multigraph resolve() const {
        if (!family.empty()) return make_family(FamilySpec::parse(family));
        if (!graph6_text.empty()) return parse_graph(graph6_text, GraphFormat::Graph6);
        if (!sparse6_text.empty()) return parse_graph(sparse6_text, GraphFormat::Sparse6);
        if (!json_text.empty()) return parse_graph(json_text, GraphFormat::EdgeListJson);
        if (!input_path.empty()) {
            auto graphs = stream_from_file(input_path, format).graphs;
            if (graphs.empty()) throw std::domain_error("input file holds no graph");
            return graphs.front();
        }
        throw std::domain_error(
            "no graph given (use --family, --graph6, --sparse6, --json-graph or --input)");
    }
};

std::vector<std::string> poly_coeff_strings(const Poly& p) {
    std::vector<std::string> out;
    for (int i = 0; i <= p.degree(); ++i) out.push_back(p.coeff(i).str());
    if (out.empty()) out.push_back("0");
    return out;
}

void print_coeff_line(std::ostream& out, const char* label, const std::vector<std::string>& cs) {
    out << label;
    for (const auto& c : cs) out << " " << c;
    out << "\n";
}

json roots_to_json(const RootSet& rs) {
    json arr = json::array();
    for (const auto& z : rs.complex_roots)
        arr.push_back({{"re", xreal_to_string(z.re)},
                       {"im", xreal_to_string(z.im)},
                       {"residual", z.residual},
                       {"multiplicity", z.multiplicity}});
    return arr;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (!tok.empty()) out.push_back(rat_from_string(tok));
    }
    std::sort(out.begin(), out.end());
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw io_error("write failed: " + path);
}

Census make_census(int order, const std::string& class_name, ReliabilityEngine& engine) {
    GraphClass cls = class_from_token(class_name);
    GraphStream stream = enum_connected_simple(order);
    if (cls != GraphClass::Connected) stream = filter_class(stream, cls);
    return analyze_universe(stream, order, class_token(cls), engine, default_thread_count());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"relroots: exact all-terminal reliability polynomials, roots and censuses"};
    app.require_subcommand(1);

    int exit_code = 0;

    // --- poly ---
    auto* poly_cmd = app.add_subcommand("poly", "reliability polynomial Rel(G) in q");
    GraphInput poly_in;
    poly_in.attach(poly_cmd);
    bool poly_json = false;
    poly_cmd->add_flag("--json", poly_json, "JSON output");
    poly_cmd->callback([&] {
        Multigraph g = poly_in.resolve();
        Poly rel = reliability_poly(g);
        auto coeffs = poly_coeff_strings(rel);
        auto fam = poly_in.family_spec();
        bool theta_note = fam && fam->is_multigraph_theta();
        if (poly_json) {
            json j;
            j["schema"] = "relroots.poly.v1";
            j["n"] = g.n;
            j["m"] = g.size();
            j["coeffs"] = coeffs;
            j["display"] = rel.to_string();
            if (theta_note)
                j["note"] = "multigraph theta: two unit-length paths form a parallel pair";
            out << j.dump(2) << "\n";
        } else {
            print_coeff_line(out, "coeffs:", coeffs);
            out << "rel: " << rel.to_string() << "\n";
            if (theta_note) out << "note: multigraph theta (parallel pair between hubs)\n";
        }
    });

    // --- hvector ---
    auto* hv_cmd = app.add_subcommand("hvector", "H-vector (and optionally F-vector) of Rel(G)");
    GraphInput hv_in;
    hv_in.attach(hv_cmd);
    bool hv_json = false, hv_with_f = false;
    hv_cmd->add_flag("--json", hv_json, "JSON output");
    hv_cmd->add_flag("--with-f", hv_with_f, "also print the F-vector");
    hv_cmd->callback([&] {
        Multigraph g = hv_in.resolve();
        HVector h = h_vector(g);
        std::vector<std::string> hs, fs;
        for (const auto& e : h.entries) hs.push_back(e.str());
        if (hv_with_f)
            for (const auto& e : h_to_f(h).entries) fs.push_back(e.str());
        if (hv_json) {
            json j;
            j["schema"] = "relroots.hvector.v1";
            j["n"] = g.n;
            j["m"] = g.size();
            j["d"] = g.corank();
            j["h"] = hs;
            if (hv_with_f) j["f"] = fs;
            out << j.dump(2) << "\n";
        } else {
            print_coeff_line(out, "h:", hs);
            if (hv_with_f) print_coeff_line(out, "f:", fs);
        }
    });

    // --- roots ---
    auto* roots_cmd = app.add_subcommand("roots", "numerical roots with certified residuals");
    GraphInput roots_in;
    roots_in.attach(roots_cmd);
    bool roots_json = false;
    roots_cmd->add_flag("--json", roots_json, "JSON output");
    roots_cmd->callback([&] {
        Multigraph g = roots_in.resolve();
        ReliabilityEngine engine;
        GraphAnalysis a = analyze_graph(g, engine);
        if (roots_json) {
            json j;
            j["schema"] = "relroots.roots.v1";
            j["n"] = g.n;
            j["m"] = g.size();
            j["h"] = a.h_entries;
            j["h_roots"] = roots_to_json(a.roots);
            j["root_one_multiplicity"] = a.roots.trivial_root_one_multiplicity;
            j["min_modulus"] = a.min_modulus;
            if (!a.annulus_r.empty()) j["annulus"] = {{"r", a.annulus_r}, {"R", a.annulus_big_r}};
            j["gcd_verdict"] = a.gcd_verdict;
            j["checks"] = {{"real_range", a.location.real_range_ok},
                           {"modulus_bound", a.location.modulus_bound_ok},
                           {"min_modulus", a.location.min_modulus_ok},
                           {"annulus", a.annulus_ok},
                           {"gcd_consistent", a.gcd_consistent},
                           {"log_concave", a.log_concave}};
            out << j.dump(2) << "\n";
        } else {
            out << "root 1 multiplicity " << a.roots.trivial_root_one_multiplicity << "\n";
            for (const auto& z : a.roots.complex_roots)
                out << "root " << xreal_to_string(z.re) << " " << xreal_to_string(z.im)
                    << " multiplicity " << z.multiplicity << " residual " << z.residual << "\n";
            if (!a.annulus_r.empty())
                out << "annulus [" << a.annulus_r << ", " << a.annulus_big_r << "]\n";
            out << "gcd_test " << a.gcd_verdict << "\n";
            if (!a.min_modulus.empty()) out << "min_modulus " << a.min_modulus << "\n";
        }
    });

    // --- rational ---
    auto* rat_cmd = app.add_subcommand("rational", "exact rational reliability roots");
    GraphInput rat_in;
    rat_in.attach(rat_cmd);
    bool rat_json = false;
    rat_cmd->add_flag("--json", rat_json, "JSON output");
    rat_cmd->callback([&] {
        Multigraph g = rat_in.resolve();
        RationalRootReport rep = rational_roots(g);
        std::vector<std::string> roots;
        for (const auto& r : rep.roots) roots.push_back(rat_to_string(r));
        if (rat_json) {
            json j;
            j["schema"] = "relroots.rational.v1";
            j["roots"] = roots;
            j["near_miss"] = rep.near_miss;
            j["notes"] = rep.notes;
            out << j.dump(2) << "\n";
        } else {
            out << "rational roots:";
            for (const auto& r : roots) out << " " << r;
            out << "\n";
            if (rep.near_miss) out << "warning: unconfirmed near-rational numerical root\n";
        }
    });

    // --- family ---
    auto* fam_cmd = app.add_subcommand("family", "construct a named family graph");
    std::string fam_spec_text, fam_out_format = "auto";
    bool fam_json = false;
    fam_cmd->add_option("--spec", fam_spec_text, "family spec name:params")->required();
    fam_cmd->add_option("--encode", fam_out_format, "graph encoding: g6|s6|json|auto")
        ->check(CLI::IsMember({"g6", "s6", "json", "auto"}));
    fam_cmd->add_flag("--json", fam_json, "JSON output");
    fam_cmd->callback([&] {
        FamilySpec spec = FamilySpec::parse(fam_spec_text);
        Multigraph g = make_family(spec);
        std::string text;
        if (fam_out_format == "g6")
            text = to_graph6(g);
        else if (fam_out_format == "s6")
            text = to_sparse6(g);
        else if (fam_out_format == "json")
            text = to_edge_list_json(g);
        else {
            bool simple = true;
            auto w = g.multiplicity_matrix();
            for (int u = 0; u < g.n && simple; ++u) {
                if (g.loop_count(u) > 0) simple = false;
                for (int v = u + 1; v < g.n; ++v)
                    if (w[u][v] > 1) simple = false;
            }
            text = simple ? to_graph6(g) : to_sparse6(g);
        }
        auto classes = classify(g);
        std::vector<std::string> class_names;
        for (auto c : classes) class_names.push_back(class_token(c));
        if (fam_json) {
            json j;
            j["schema"] = "relroots.family.v1";
            j["spec"] = spec.to_string();
            j["n"] = g.n;
            j["m"] = g.size();
            j["d"] = g.corank();
            j["graph"] = text;
            j["classes"] = class_names;
            if (spec.is_multigraph_theta())
                j["note"] = "multigraph theta: two unit-length paths form a parallel pair";
            out << j.dump(2) << "\n";
        } else {
            out << "spec: " << spec.to_string() << "\n";
            out << "order " << g.n << " size " << g.size() << " corank " << g.corank() << "\n";
            out << "graph: " << text << "\n";
            out << "classes:";
            for (const auto& c : class_names) out << " " << c;
            out << "\n";
            if (spec.is_multigraph_theta())
                out << "note: multigraph theta (parallel pair between hubs)\n";
        }
    });

    // --- enumerate ---
    auto* enum_cmd = app.add_subcommand("enumerate", "non-isomorphic connected simple graphs");
    int enum_order = 0;
    std::string enum_class = "connected", enum_output;
    bool enum_json = false;
    enum_cmd->add_option("--order", enum_order, "order (1..9)")->required();
    enum_cmd->add_option("--class", enum_class, "connected|2ec|2c");
    enum_cmd->add_option("--output", enum_output, "write graph6 lines to this file");
    enum_cmd->add_flag("--json", enum_json, "JSON output");
    enum_cmd->callback([&] {
        GraphStream stream = enum_connected_simple(enum_order);
        GraphClass cls = class_from_token(enum_class);
        if (cls != GraphClass::Connected) stream = filter_class(stream, cls);
        std::vector<std::string> lines;
        for (const auto& g : stream.graphs) lines.push_back(to_graph6(g));
        if (enum_json) {
            json j;
            j["schema"] = "relroots.enumerate.v1";
            j["order"] = enum_order;
            j["class"] = class_token(cls);
            j["count"] = lines.size();
            j["graphs"] = lines;
            std::string text = j.dump(2) + "\n";
            if (enum_output.empty())
                out << text;
            else
                write_text_file(enum_output, text);
        } else {
            std::string text;
            for (const auto& l : lines) text += l + "\n";
            if (enum_output.empty())
                out << text;
            else
                write_text_file(enum_output, text);
            err << lines.size() << " graphs\n";
        }
    });

    // --- survey ---
    auto* survey_cmd = app.add_subcommand("survey", "census of an enumerated universe");
    int survey_order = 0;
    std::string survey_class = "connected", survey_out_dir = ".", survey_mode = "all";
    bool survey_timing = false;
    survey_cmd->add_option("--order", survey_order, "order (2..8)")->required();
    survey_cmd->add_option("--class", survey_class, "connected|2ec|2c");
    survey_cmd->add_option("--out", survey_out_dir, "output directory");
    survey_cmd->add_option("--mode", survey_mode, "all|minmod|rational|minusone")
        ->check(CLI::IsMember({"all", "minmod", "rational", "minusone"}));
    survey_cmd->add_flag("--timing", survey_timing,
                         "record wall time in metadata (breaks byte determinism)");
    bool survey_json = false;
    survey_cmd->add_flag("--json", survey_json, "print the summary JSON to stdout");
    survey_cmd->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        if (survey_mode == "minusone") {
            MinusOneReport rep = check_minus_one_conjecture(survey_order);
            write_text_file(survey_out_dir + "/minusone-" + std::to_string(survey_order) +
                                ".json",
                            minus_one_json(rep));
            if (survey_json)
                out << minus_one_json(rep);
            else
                out << "order " << rep.order << ": " << rep.graphs_tested << " graphs, "
                    << rep.violations.size() << " violations of Rel(-1) != 0\n";
            if (!rep.violations.empty()) exit_code = 1;
            return;
        }
        ReliabilityEngine engine;
        Census census = make_census(survey_order, survey_class, engine);
        SurveyReport report = summarize(census);
        report.threads = default_thread_count();
        if (survey_timing) {
            auto t1 = std::chrono::steady_clock::now();
            report.wall_time_ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        write_survey_files(census, report, survey_out_dir);
        if (survey_json) {
            out << summary_json(report);
            return;
        }
        out << "order " << census.order << " class " << census.graph_class << ": "
            << report.graph_count << " graphs";
        if (!report.min_modulus.empty() && survey_mode != "rational")
            out << ", min modulus " << report.min_modulus;
        if (survey_mode != "minmod") {
            out << ", rationals {";
            for (std::size_t i = 0; i < report.rational_union.size(); ++i)
                out << (i ? "," : "") << report.rational_union[i];
            out << "}";
        }
        out << ", " << report.violations.size() << " violations\n";
    });

    // --- scatter ---
    auto* scatter_cmd = app.add_subcommand("scatter", "root scatter CSV and SVG for a census");
    int scatter_order = 0;
    std::string scatter_class = "connected", scatter_out_dir = ".";
    scatter_cmd->add_option("--order", scatter_order, "order (2..8)")->required();
    scatter_cmd->add_option("--class", scatter_class, "connected|2ec|2c");
    scatter_cmd->add_option("--out", scatter_out_dir, "output directory");
    bool scatter_json = false;
    scatter_cmd->add_flag("--json", scatter_json, "JSON output");
    scatter_cmd->callback([&] {
        ReliabilityEngine engine;
        Census census = make_census(scatter_order, scatter_class, engine);
        emit_root_scatter(census.analyses, scatter_out_dir, scatter_order);
        long rows = 0;
        for (const auto& a : census.analyses)
            rows += static_cast<long>(a.roots.complex_roots.size()) + 1;
        if (scatter_json) {
            json j;
            j["schema"] = "relroots.scatter.v1";
            j["order"] = scatter_order;
            j["class"] = census.graph_class;
            j["graphs"] = census.analyses.size();
            j["rows"] = rows;
            j["files"] = {scatter_out_dir + "/roots-" + std::to_string(scatter_order) + ".csv",
                          scatter_out_dir + "/roots-" + std::to_string(scatter_order) + ".svg"};
            out << j.dump(2) << "\n";
        } else {
            out << "wrote roots-" << scatter_order << ".csv and roots-" << scatter_order
                << ".svg for " << census.analyses.size() << " graphs\n";
        }
    });

    // --- mc ---
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo cross-check of the exact engine");
    GraphInput mc_in;
    mc_in.attach(mc_cmd);
    std::string mc_q = "1/2";
    long mc_trials = 100000;
    std::uint64_t mc_seed = 1;
    bool mc_json_flag = false;
    mc_cmd->add_option("--q", mc_q, "failure probability as exact rational, e.g. 1/2");
    mc_cmd->add_option("--trials", mc_trials, "trial count (>= 1000)");
    mc_cmd->add_option("--seed", mc_seed, "RNG seed");
    mc_cmd->add_flag("--json", mc_json_flag, "JSON output");
    mc_cmd->callback([&] {
        Multigraph g = mc_in.resolve();
        McResult r = monte_carlo_check(g, rat_from_string(mc_q), mc_trials, mc_seed);
        if (mc_json_flag) {
            out << mc_json(r);
        } else {
            out << "estimate " << r.estimate << " stderr " << r.stderr_value << " exact "
                << r.exact << " z " << r.z << "\n";
        }
    });

    // --- verify ---
    auto* verify_cmd =
        app.add_subcommand("verify", "run the property suite over a census; nonzero on violation");
    int verify_order = 0;
    std::string verify_class = "connected";
    std::string expect_rationals, expect_min_modulus;
    bool verify_json = false;
    verify_cmd->add_option("--order", verify_order, "order (2..8)")->required();
    verify_cmd->add_option("--class", verify_class, "connected|2ec|2c");
    verify_cmd->add_option("--expect-rationals", expect_rationals,
                           "comma-separated exact rationals the census union must equal");
    verify_cmd->add_option("--expect-min-modulus", expect_min_modulus,
                           "exact rational the census minimum modulus must match (1e-9)");
    verify_cmd->add_flag("--json", verify_json, "JSON output");
    verify_cmd->callback([&] {
        ReliabilityEngine engine;
        Census census = make_census(verify_order, verify_class, engine);
        SurveyReport report = summarize(census);
        std::vector<std::string> problems = report.violations;

        if (!expect_rationals.empty()) {
            auto want = parse_rat_list(expect_rationals);
            auto got = parse_rat_list([&] {
                std::string s;
                for (const auto& r : report.rational_union) s += (s.empty() ? "" : ",") + r;
                return s;
            }());
            if (want != got) {
                std::string got_s;
                for (const auto& r : got) got_s += rat_to_string(r) + " ";
                problems.push_back("rational union mismatch: got " + got_s);
            }
        }
        if (!expect_min_modulus.empty()) {
            Rat want = rat_from_string(expect_min_modulus);
            XReal wantx = XReal(numerator(want)) / XReal(denominator(want));
            bool ok = !report.min_modulus.empty() &&
                      abs(XReal(report.min_modulus) - wantx) <= XReal("1e-9");
            if (!ok)
                problems.push_back("min modulus mismatch: got " + report.min_modulus +
                                   ", expected " + expect_min_modulus);
        }

        if (verify_json) {
            json j;
            j["schema"] = "relroots.verify.v1";
            j["order"] = verify_order;
            j["class"] = report.graph_class;
            j["graph_count"] = report.graph_count;
            j["problems"] = problems;
            j["ok"] = problems.empty();
            out << j.dump(2) << "\n";
        } else {
            out << "checked " << report.graph_count << " graphs of order " << verify_order
                << " (" << report.graph_class << ")\n";
            for (const auto& p : problems) out << "violation: " << p << "\n";
            out << (problems.empty() ? "ok" : "FAILED") << "\n";
        }
        if (!problems.empty()) exit_code = 1;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const solver_error& e) {
        err << "integrity error: " << e.what() << " (" << e.partial_result.complex_roots.size()
            << " partial roots)\n";
        return 2;
    } catch (const integrity_error& e) {
        err << "integrity error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

}  // namespace relroots
