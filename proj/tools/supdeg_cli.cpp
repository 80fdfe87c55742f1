// Command-line front end: analyze curve files, render cluster trees,
// construct witnesses, generate curve families, and run self-checks.
//
// Exit codes: 0 success, 1 validation or input failure (report emitted),
// 2 usage error, 3 internal soundness failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "supdeg/family.hpp"
#include "supdeg/oracle.hpp"
#include "supdeg/report.hpp"
#include "supdeg/sample_curves.hpp"

using namespace supdeg;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

struct AnalyzeOptions {
    std::string file;
    long bound = 0;
    bool witnesses = false;
    bool tree = false;
    std::string json_path;
    std::string dot_path;
};

int run_analyze(const AnalyzeOptions &opt) {
    CurveSpec curve = parse_curve(read_file(opt.file));
    ValidationReport val = validate_curve(curve);

    std::cout << "curve \"" << curve.name << "\" (q = " << curve.q
              << ", residue_char = " << curve.context->residue_char()
              << ", ram_index = " << curve.context->ram_index()
              << ", cyclotomic_order = " << curve.context->cyclotomic_order() << ")\n";
    std::cout << "degree " << curve.degree() << "\n\n";
    std::cout << render_validation(val) << "\n";

    ClusterTree tree(curve);
    if (opt.tree) std::cout << "cluster tree:\n" << tree.render_ascii() << "\n";
    if (!opt.dot_path.empty()) write_file(opt.dot_path, tree.render_dot());

    if (!val.ok()) {
        std::cout << "analysis stopped: validation failed\n";
        return 1;
    }

    DegreeSetResult res = compute_degree_set(curve, tree,
                                             opt.bound > 0 ? std::optional<long>(opt.bound)
                                                           : std::nullopt);
    std::cout << render_verdict(res.verdict, curve.q) << "\n";
    std::cout << render_regions(res) << "\n";
    std::cout << render_degree_set(res);
    if (opt.witnesses) std::cout << "\n" << render_witnesses(res);
    if (!opt.json_path.empty()) write_file(opt.json_path, report_json(curve, val, res).dump(2) + "\n");
    return 0;
}

int run_render_tree(const std::string &file, const std::string &dot_path) {
    CurveSpec curve = parse_curve(read_file(file));
    ClusterTree tree(curve);
    std::cout << tree.render_ascii();
    if (!dot_path.empty()) write_file(dot_path, tree.render_dot());
    return 0;
}

int run_witness(const std::string &file, long degree) {
    CurveSpec curve = parse_curve(read_file(file));
    ValidationReport val = validate_curve(curve);
    if (!val.ok()) {
        std::cout << render_validation(val);
        return 1;
    }
    ClusterTree tree(curve);
    DegreeSetResult res = compute_degree_set(curve, tree, std::max<long>(degree, 200));
    if (res.lower.member(degree)) {
        const WitnessPoint &w = res.witnesses.at(degree);
        std::cout << "degree " << degree << " is attained [" << w.kind << "]\n";
        std::cout << "x0 = " << w.x0.str() << "\n";
        std::cout << "v(F(x0)) = " << to_string(w.vF) << "\n";
        std::cout << "verified: degree_over_base(x0) = " << degree << ", v(F(x0)) in q*(1/" << degree
                  << ")Z\n";
    } else {
        std::cout << "degree " << degree << " is not attained\n";
        auto it = res.obstructions.find(degree);
        if (it != res.obstructions.end())
            for (const auto &o : it->second)
                std::cout << "  region #" << o.region_index << ": " << o.reason << "\n";
        else
            std::cout << "  (beyond the enumeration bound " << res.bound << ")\n";
    }
    return 0;
}

int run_generate(unsigned q, const std::string &parts_csv, unsigned p, const std::string &out_path) {
    FamilyRequest req;
    req.q = q;
    std::stringstream ss(parts_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        req.parts.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    if (p > 0) req.residue_char = p;
    FamilyResult fam = generate_family(req);
    std::ostringstream doc;
    doc << render_curve(fam.curve);
    doc << "# expected degree set: " << fam.expected_label << "\n";
    if (out_path.empty()) {
        std::cout << doc.str();
    } else {
        write_file(out_path, doc.str());
        std::cout << "wrote " << out_path << "\n";
    }
    std::cout << "expected degree set: " << fam.expected_label << "\n";
    return 0;
}

int run_selftest() {
    int failures = 0;
    auto check = [&](const std::string &name, bool ok) {
        std::cout << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    // cluster trees against brute-force disk enumeration
    {
        std::mt19937_64 rng(20240901);
        bool ok = true;
        for (int iter = 0; iter < 100 && ok; ++iter) {
            unsigned N = 2 + rng() % 8;
            Ctx ctx = make_context(0, N, N);
            std::vector<Pux> values;
            int k = 2 + rng() % 5;
            for (int i = 0; i < k; ++i) {
                long num = static_cast<long>(rng() % 17) - 8;
                long den = 1 + rng() % N;
                while (N % den != 0) den = 1 + rng() % N;
                Pux v = Pux::pi_power(ctx, rat(num, den)).scaled(Rat(1 + (long)(rng() % 3)));
                if (rng() % 2)
                    v = v + Pux::pi_power(ctx, rat(num + 1 + (long)(rng() % 3), den));
                bool dup = false;
                for (const auto &w : values)
                    if (w == v) dup = true;
                if (!dup) values.push_back(v);
            }
            CurveSpec c;
            c.context = ctx;
            c.q = 5;
            c.name = "selftest";
            c.leading = Pux::one(ctx);
            for (const auto &v : values) c.roots.push_back({v, 1});
            c.sort_roots();
            ClusterTree t(c);
            std::vector<Pux> vals;
            for (size_t i = 0; i < t.value_count(); ++i) vals.push_back(t.value(static_cast<int>(i)));
            ok = t.family() == oracle::clusters_bruteforce(vals);
        }
        check("cluster tree matches disk enumeration on 100 random instances", ok);
    }

    // built-in thirty-root sample end to end
    {
        CurveSpec c = samples::thirty_root_curve();
        ValidationReport val = validate_curve(c);
        ClusterTree t(c);
        bool ok = val.ok();
        DegreeSetResult res = compute_degree_set(c, t);
        NatSet expected = NatSet::progression(3)
                              .union_with(NatSet::finite({8, 11, 13, 14})
                                              .union_with(NatSet::tail_above(15))
                                              .scaled(2))
                              .union_with(NatSet::progression(10));
        ok = ok && res.lower == expected && res.exact == Exactness::exact;
        check("thirty-root sample reproduces its degree set", ok);

        auto hit = oracle::small_degree_search(c, t, 16);
        check("search finds a degree-16 point on the sample", hit.has_value());
        auto miss = oracle::small_degree_search(c, t, 25);
        check("search finds no degree-25 point on the sample", !miss.has_value());
        bool sound = !hit || res.lower.member(hit->claimed_degree);
        check("search hits lie in the computed set", sound);

        bool orbits_ok = true;
        for (size_t id = 0; id < t.nodes().size(); ++id) {
            if (!t.invariant(static_cast<int>(id))) continue;
            ClusterConstants cc = t.cluster_constants(static_cast<int>(id));
            Rat via = oracle::c_via_min_poly_orbits(t, static_cast<int>(id));
            if (cc.c != via + c.leading.valuation().finite()) orbits_ok = false;
        }
        check("orbit-grouped complement sums match c_s", orbits_ok);
    }
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"degree sets of superelliptic curves over discretely valued fields"};
    app.require_subcommand(1);

    AnalyzeOptions aopt;
    auto *analyze = app.add_subcommand("analyze", "analyze a curve file");
    analyze->add_option("file", aopt.file, "curve file")->required();
    analyze->add_option("--bound", aopt.bound, "enumeration bound for certificates");
    analyze->add_flag("--witnesses", aopt.witnesses, "print witness points");
    analyze->add_flag("--tree", aopt.tree, "print the cluster tree");
    analyze->add_option("--json", aopt.json_path, "write a JSON report to this path");
    analyze->add_option("--dot", aopt.dot_path, "write a DOT graph of the cluster tree");

    std::string rt_file, rt_dot;
    auto *rtree = app.add_subcommand("render-tree", "print the cluster tree of a curve file");
    rtree->add_option("file", rt_file, "curve file")->required();
    rtree->add_option("--dot", rt_dot, "write a DOT graph to this path");

    std::string w_file;
    long w_degree = 0;
    auto *wit = app.add_subcommand("witness", "construct a witness point for one degree");
    wit->add_option("file", w_file, "curve file")->required();
    wit->add_option("--degree", w_degree, "target degree")->required();

    unsigned g_q = 3, g_p = 0;
    std::string g_parts, g_out;
    auto *gen = app.add_subcommand("generate", "generate a curve with a prescribed degree set");
    gen->add_option("--q", g_q, "covering prime q")->required();
    gen->add_option("--parts", g_parts, "comma-separated parts n1,n2,...")->required();
    gen->add_option("--p", g_p, "residue characteristic (chosen automatically when omitted)");
    gen->add_option("--out", g_out, "output curve file");

    app.add_subcommand("selftest", "run the built-in oracle cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("analyze")) return run_analyze(aopt);
        if (app.got_subcommand("render-tree")) return run_render_tree(rt_file, rt_dot);
        if (app.got_subcommand("witness")) return run_witness(w_file, w_degree);
        if (app.got_subcommand("generate")) return run_generate(g_q, g_parts, g_p, g_out);
        if (app.got_subcommand("selftest")) return run_selftest();
    } catch (const soundness_error &e) {
        std::cerr << "soundness failure: " << e.what() << "\n";
        return 3;
    } catch (const parse_error &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
