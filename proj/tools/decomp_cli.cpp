// Command-line front end: generators, validators, the planar partitioner,
// surface cutting, and the tree-decomposition / vortex pipelines.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include <decomp/harness.hpp>

using namespace decomp;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json report_to_json(const RunReport& rr) {
    json j;
    j["schema"] = 1;
    j["tool"] = rr.tool;
    j["seed"] = rr.seed;
    j["instance"] = rr.instance_stats;
    j["bounds"] = json::array();
    for (const auto& b : rr.bounds)
        j["bounds"].push_back(
            {{"name", b.name}, {"claimed", b.claimed}, {"measured", b.measured},
             {"verdict", b.verdict}});
    j["verdicts"] = json::array();
    for (const auto& [k, v] : rr.verdicts) j["verdicts"].push_back({{"check", k}, {"verdict", v}});
    j["pass"] = rr.pass();
    j["wall_ms"] = rr.wall_ms;
    return j;
}

int finish(RunReport& rr, const std::string& report_path,
           std::chrono::steady_clock::time_point t0) {
    rr.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    json j = report_to_json(rr);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << j.dump(2) << "\n";
    }
    std::cout << j.dump(2) << "\n";
    return rr.pass() ? 0 : 1;
}

std::vector<int> parse_vertex_list(const std::vector<int>& one_based) {
    std::vector<int> out;
    for (int v : one_based) out.push_back(v - 1);
    return out;
}

json maps_to_json(const Projection& p, int fstar) {
    auto arr = [](const std::vector<int>& v) {
        json a = json::array();
        for (int x : v) a.push_back(x + 1);  // 1-indexed, 0 marks "none"
        return a;
    };
    json j;
    j["phi"] = arr(p.phi);
    j["psi"] = arr(p.psi);
    j["eta"] = arr(p.eta);
    j["vm"] = arr(p.vm);
    j["cut_cycle_vertices"] = arr(p.c_verts);
    j["cut_cycle_edges"] = arr(p.c_edges);
    j["vertex_map"] = arr(p.vertex_new);
    j["outer_face"] = fstar + 1;
    j["degenerate"] = p.degenerate;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural graph decomposition toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    std::string report_path;
    double dval = 0;

    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_kind = "triangulation", gen_out;
    int gen_n = 20, gen_k = 0;
    gen->add_option("--kind", gen_kind,
                    "triangulation | vortex | td-fixture:path-of-cliques | td-fixture:k-tree | "
                    "td-fixture:planar-layered");
    gen->add_option("--n", gen_n, "size");
    gen->add_option("--k", gen_k, "vortex width");
    gen->add_option("--seed", seed, "seed");
    gen->add_option("--out", gen_out, "output path (stdout when empty)");

    auto* verify = app.add_subcommand("verify", "validate a graph / embedding / instance file");
    std::string verify_in;
    verify->add_option("--in", verify_in, "input path")->required();
    verify->add_option("--report", report_path, "JSON report path");

    auto* pp = app.add_subcommand("partition-planar", "connected treewidth-2 partition");
    std::string pp_in;
    std::vector<int> pp_w;
    pp->add_option("--in", pp_in, "embedded plane graph")->required();
    pp->add_option("--w", pp_w, "vertices of W (1-indexed)")->required();
    pp->add_option("--report", report_path, "JSON report path");

    auto* cut = app.add_subcommand("cut-surface", "cut a 2-cell embedded graph open");
    std::string cut_in, cut_out, cut_maps;
    int cut_root = 1;
    std::vector<int> cut_subtree;
    cut->add_option("--in", cut_in, "embedded graph")->required();
    cut->add_option("--root", cut_root, "BFS root (1-indexed)");
    cut->add_option("--subtree", cut_subtree, "subtree vertices (1-indexed)");
    cut->add_option("--out", cut_out, "plane output path");
    cut->add_option("--maps", cut_maps, "projection maps JSON path");
    cut->add_option("--report", report_path, "JSON report path");

    auto* tdr = app.add_subcommand("td-reduce", "almost-partition from a decomposed fixture");
    std::string tdr_in, tdr_out;
    tdr->add_option("--in", tdr_in, "fixture path")->required();
    tdr->add_option("--d", dval, "width budget (fixture default when 0)");
    tdr->add_option("--out", tdr_out, "partition output path");
    tdr->add_option("--report", report_path, "JSON report path");

    auto* vp = app.add_subcommand("vortex-pipeline", "break/breakpoint/raise pipeline");
    std::string vp_in, vp_out;
    vp->add_option("--in", vp_in, "instance path")->required();
    vp->add_option("--d", dval, "width budget (12(k+1)sqrt(3n) when 0)");
    vp->add_option("--out", vp_out, "partition output path");
    vp->add_option("--report", report_path, "JSON report path");

    CLI11_PARSE(app, argc, argv);
    auto t0 = std::chrono::steady_clock::now();

    try {
        if (gen->parsed()) {
            std::ostringstream os;
            if (gen_kind == "triangulation") {
                write_embedded(os, gen_planar_triangulation(gen_n, seed));
            } else if (gen_kind == "vortex") {
                write_instance(os, gen_vortex_instance(gen_n, gen_k, seed));
            } else if (gen_kind.rfind("td-fixture:", 0) == 0) {
                write_fixture(os, gen_tree_decomposition_fixture(gen_kind.substr(11), gen_n, seed));
            } else {
                throw ValidationError("gen: unknown kind " + gen_kind);
            }
            if (gen_out.empty()) std::cout << os.str();
            else std::ofstream(gen_out) << os.str();
            return 0;
        }

        if (verify->parsed()) {
            RunReport rr;
            rr.tool = "verify";
            rr.seed = seed;
            std::string text = slurp(verify_in);
            std::istringstream head(text);
            std::string first;
            head >> first;
            bool is_fixture = text.find("\ns td ") != std::string::npos ||
                              text.find("params ") != std::string::npos;
            if (first == "p" && !is_fixture) {
                std::istringstream is(text);
                Multigraph g = parse_graph(is);
                rr.instance_stats["n"] = g.n;
                rr.instance_stats["m"] = g.num_edges();
                rr.verdicts.push_back({"plain graph parsed", "pass"});
            } else if (first == "emb") {
                bool is_instance = text.find("\nvx ") != std::string::npos ||
                                   text.find("\nW ") != std::string::npos;
                std::istringstream is(text);
                if (is_instance) {
                    PlaneQuasiVortex lam = parse_instance(is);
                    rr.instance_stats["n"] = lam.total_n;
                    rr.instance_stats["k"] = lam.vx.width();
                    rr.add_report("lambda", validate_lambda(lam));
                } else {
                    EmbeddedGraph eg = parse_embedded(is);
                    rr.instance_stats["n"] = eg.g.n;
                    rr.instance_stats["m"] = eg.g.num_edges();
                    Report rep = validate_embedding(eg);
                    rr.add_report("embedding", rep);
                    if (rep.ok() && is_connected(eg.g) && eg.g.n > 0)
                        rr.instance_stats["genus"] = euler_genus(eg);
                }
            } else if (first == "s" || is_fixture) {
                TdFixture fx = parse_fixture_text(text);
                rr.instance_stats["n"] = fx.g.n;
                rr.add_report("tree-decomposition", validate_rtd(fx.td));
            } else {
                throw ValidationError("verify: unrecognized file format");
            }
            return finish(rr, report_path, t0);
        }

        if (pp->parsed()) {
            RunReport rr;
            rr.tool = "partition-planar";
            rr.seed = seed;
            std::istringstream is(slurp(pp_in));
            EmbeddedGraph eg = parse_embedded(is);
            std::vector<int> w = parse_vertex_list(pp_w);
            if (!is_quasi_triangulation(eg)) {
                // complete first; the disc is the face of g - W holding W
                EmbeddedSubgraph sub = delete_vertices(eg, w);
                FaceSet subfs = trace_faces(sub.eg);
                CleanDisc d{locate_obstruction_face(eg, w, sub, subfs), {}};
                eg = make_quasi_triangulation(eg, w, d).eg;
                rr.verdicts.push_back({"completed to a quasi-triangulation", "pass"});
            }
            ConPlanarResult r = con_planar(eg, w);
            double n = static_cast<double>(eg.g.n - static_cast<int>(w.size()) + 1);
            rr.instance_stats["n"] = eg.g.n;
            rr.instance_stats["parts"] = static_cast<double>(r.parts.size());
            double measured = 0;
            for (int i = 0; i < static_cast<int>(r.parts.size()); ++i)
                if (i != r.w_part) measured = std::max(measured, (double)r.parts[i].size());
            rr.add_bound("non-W part size <= 12*sqrt(3n)", 12.0 * std::sqrt(3.0 * n), measured);
            rr.add_report("partition", validate_con_planar(eg, w, r));
            AlmostPartition ap;
            ap.parts = r.parts;
            std::ostringstream ps;
            write_almost_partition(ps, ap);
            std::cout << ps.str();
            return finish(rr, report_path, t0);
        }

        if (cut->parsed()) {
            RunReport rr;
            rr.tool = "cut-surface";
            rr.seed = seed;
            std::istringstream is(slurp(cut_in));
            EmbeddedGraph eg = parse_embedded(is);
            int root = cut_root - 1;
            std::vector<int> tprime =
                cut_subtree.empty() ? std::vector<int>{root} : parse_vertex_list(cut_subtree);
            RootedSpanningTree t = bfs_spanning_tree(eg.g, root);
            CuttingSubgraph m = find_cutting(eg, t, tprime);
            rr.instance_stats["n"] = eg.g.n;
            rr.instance_stats["genus"] = m.genus;
            rr.add_report("cutting subgraph", validate_cutting(eg, m));
            CutResult r = cut_open(eg, m);
            rr.add_report("projection", verify_projection(eg, m, r.gprime, r.proj, r.fstar));
            rr.instance_stats["cut_n"] = r.gprime.g.n;
            if (!cut_out.empty()) {
                std::ofstream out(cut_out);
                write_embedded(out, r.gprime);
            }
            if (!cut_maps.empty()) {
                std::ofstream out(cut_maps);
                out << maps_to_json(r.proj, r.fstar).dump(2) << "\n";
            }
            return finish(rr, report_path, t0);
        }

        if (tdr->parsed()) {
            RunReport rr;
            rr.tool = "td-reduce";
            rr.seed = seed;
            TdFixture fx = parse_fixture_text(slurp(tdr_in));
            double d = dval > 0 ? dval : fx.suggested_d;
            TdReducedResult res =
                td_reduced(fx.g, fx.td, fx.nds, fx.b, fx.m, fx.c, fx.q, fx.j, d);
            rr.instance_stats["n"] = fx.g.n;
            rr.instance_stats["d"] = d;
            rr.add_bound("loss <= c'n/d + q'", res.loss_bound,
                         static_cast<double>(res.ap.loss.size()));
            rr.add_bound("width <= d", d, static_cast<double>(res.ap.width()));
            rr.add_report("almost-partition", res.report);
            if (!tdr_out.empty()) {
                std::ofstream out(tdr_out);
                write_almost_partition(out, res.ap);
            }
            return finish(rr, report_path, t0);
        }

        if (vp->parsed()) {
            RunReport rr;
            rr.tool = "vortex-pipeline";
            rr.seed = seed;
            std::istringstream is(slurp(vp_in));
            PlaneQuasiVortex lam = parse_instance(is);
            int k = std::max(0, lam.vx.width());
            double n = static_cast<double>(lam.total_n);
            double d = dval > 0 ? dval : 12.0 * (k + 1) * std::sqrt(3.0 * n);
            PipelineResult pr = pipeline_planar_vortex(lam, d);
            rr.instance_stats["n"] = n;
            rr.instance_stats["k"] = k;
            rr.instance_stats["d"] = d;
            rr.instance_stats["b_q"] = pr.b_q;
            rr.instance_stats["break_size"] = static_cast<double>(pr.break_size);
            rr.instance_stats["breakpoints"] = static_cast<double>(pr.breakpoints);
            rr.add_bound("loss <= 4(k+1)(b_q+1)n/d'", pr.loss_bound,
                         static_cast<double>(pr.ap.loss.size()));
            rr.add_bound("width <= d", pr.width_bound, static_cast<double>(pr.ap.width()));
            if (!pr.bq_within_planar_bound) rr.add_bound("quotient width b_q <= 6", 6, pr.b_q, true);
            rr.add_report("pipeline", pr.report);
            if (!vp_out.empty()) {
                std::ofstream out(vp_out);
                write_almost_partition(out, pr.ap);
            }
            return finish(rr, report_path, t0);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
