// projjet: classification of jets of surface germs in projective 4-space.
//
// Subcommands: classify, normal-form, project, mond-type, asymptotic, apply,
// scan, selftest. Inputs are JSON (exact fraction strings in exact mode,
// decimals in float mode); outputs are JSON or CSV. Exit codes: 0 success,
// 2 input error, 3 reduction-hypothesis violation, 4 internal consistency
// failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "projjet/io.hpp"
#include "projjet/testing.hpp"

using namespace projjet;

namespace {

json read_json(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw InputError("cannot open input file: " + path);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file: " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2)); }

struct CommonOpts {
    std::string input;
    std::string output;
    std::string mode = "exact";
    int order = 4;
    double tol = 1e-9;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_order = true) {
    cmd->add_option("--input,-i", o.input, "input JSON file ('-' for stdin)")->required();
    cmd->add_option("--output,-o", o.output, "output file (default stdout)");
    cmd->add_option("--mode", o.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
    if (with_order) cmd->add_option("--order", o.order, "jet order (default 4)");
    cmd->add_option("--tol", o.tol, "relative zero tolerance in float mode");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

ViewPoint<Rational> parse_viewpoint_arg(const std::string& s) {
    // "a,b,c,d,e" with rational entries
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 5) throw InputError("view point needs 5 comma-separated coordinates");
    json arr = json::array();
    for (const auto& p : parts) arr.push_back(p);
    return viewpoint_from_json<Rational>(arr);
}

// ---------------------------------------------------------------------------

int cmd_classify(const CommonOpts& o) {
    json in = read_json(o.input);
    if (o.mode == "exact") {
        auto f = monge_from_json<Rational>(in, o.order);
        write_json(o.output, to_json(classify_stratum(f)));
    } else {
        auto f = monge_from_json<double>(in, o.order);
        FloatZeroGuard guard(o.tol, f.f1().max_abs() + f.f2().max_abs());
        write_json(o.output, to_json(classify_stratum(f)));
    }
    return 0;
}

int cmd_normal_form(const CommonOpts& o) {
    json in = read_json(o.input);
    if (o.order != 4) throw InputError("normal-form works on order-4 jets");
    if (o.mode == "exact") {
        auto f = monge_from_json<Rational>(in, 4);
        write_json(o.output, to_json(reduce_normal_form(f)));
    } else {
        auto f = monge_from_json<double>(in, 4);
        FloatZeroGuard guard(o.tol, f.f1().max_abs() + f.f2().max_abs());
        write_json(o.output, to_json(reduce_normal_form(f)));
    }
    return 0;
}

int cmd_project(const CommonOpts& o, const std::string& vp_arg, int chart) {
    json in = read_json(o.input);
    if (o.mode == "exact") {
        auto f = monge_from_json<Rational>(in, o.order);
        auto p = parse_viewpoint_arg(vp_arg);
        write_json(o.output, to_json(project(f, p, o.order, chart)));
    } else {
        auto f = monge_from_json<double>(in, o.order);
        FloatZeroGuard guard(o.tol, f.f1().max_abs() + f.f2().max_abs());
        json arr = json::array();
        {
            std::stringstream ss(vp_arg);
            std::string item;
            while (std::getline(ss, item, ',')) arr.push_back(item);
        }
        auto p = viewpoint_from_json<double>(arr);
        write_json(o.output, to_json(project(f, p, o.order, chart)));
    }
    return 0;
}

int cmd_mond_type(const CommonOpts& o) {
    json in = read_json(o.input);
    std::string label;
    if (o.mode == "exact") {
        auto m = jetmap_from_json<Rational>(in, std::max(o.order, 3));
        label = to_string(classify_A3(m));
    } else {
        auto m = jetmap_from_json<double>(in, std::max(o.order, 3));
        double scale = 0;
        for (int i = 0; i < m.size(); ++i) scale += m[i].max_abs();
        FloatZeroGuard guard(o.tol, scale);
        label = to_string(classify_A3(m));
    }
    write_json(o.output, json{{"schema", 1}, {"type", label}});
    return 0;
}

int cmd_asymptotic(const CommonOpts& o) {
    json in = read_json(o.input);
    if (o.mode == "exact") {
        auto f = monge_from_json<Rational>(in, o.order);
        write_json(o.output, to_json(asymptotic_directions(f)));
    } else {
        auto f = monge_from_json<double>(in, o.order);
        FloatZeroGuard guard(o.tol, f.f1().max_abs() + f.f2().max_abs());
        write_json(o.output, to_json(asymptotic_directions(f)));
    }
    return 0;
}

int cmd_apply(const CommonOpts& o, const std::string& transform_path) {
    json in = read_json(o.input);
    json tj = read_json(transform_path);
    if (o.mode == "exact") {
        auto f = monge_from_json<Rational>(in, o.order);
        // transforms written by normal-form may carry surd entries
        auto psi = g5_from_json<Surd>(tj);
        auto fs = f.map<Surd>([](const Rational& r) { return Surd(r); });
        auto g = act_on_monge(psi, fs);
        if (!residual_check(psi, fs, g, o.order))
            throw InternalCheckFailure("apply: residual check failed");
        write_json(o.output, to_json(g));
    } else {
        auto f = monge_from_json<double>(in, o.order);
        FloatZeroGuard guard(o.tol, f.f1().max_abs() + f.f2().max_abs());
        auto psi = g5_from_json<double>(tj);
        write_json(o.output, to_json(act_on_monge(psi, f)));
    }
    return 0;
}

int cmd_scan(const CommonOpts& o, const std::string& surface_path, const std::string& grid_arg,
             bool with_moduli, int threads) {
    json sj = read_json(surface_path);
    GridSpec grid;
    {
        auto x = grid_arg.find('x');
        if (x == std::string::npos) throw InputError("grid must look like 100x100");
        grid.nu = std::stoi(grid_arg.substr(0, x));
        grid.nv = std::stoi(grid_arg.substr(x + 1));
    }
    ScanSummary sum;
    FloatZeroPolicy::current().tol = o.tol;
    if (o.mode == "exact") {
        auto s = surface_from_json<Rational>(sj);
        sum = scan(s, grid, o.order, with_moduli, threads);
    } else {
        auto s = surface_from_json<double>(sj);
        sum = scan(s, grid, o.order, with_moduli, threads);
    }
    if (o.format == "csv") write_text(o.output, scan_to_csv(sum));
    else write_json(o.output, to_json(sum));
    return 0;
}

// ---------------------------------------------------------------------------
// selftest: condensed randomized property suites, deterministic per seed.

int cmd_selftest(std::uint64_t seed, int trials, const std::string& output) {
    using namespace projjet::testing;
    std::ostringstream report;
    int failures = 0;
    auto phase = [&](const std::string& name, auto&& body) {
        int bad = 0;
        try {
            bad = body();
        } catch (const std::exception& e) {
            bad = -1;
            report << "FAIL " << name << " (exception: " << e.what() << ")\n";
        }
        if (bad > 0) report << "FAIL " << name << " (" << bad << " violations)\n";
        else if (bad == 0) report << "PASS " << name << "\n";
        if (bad != 0) ++failures;
    };
    Rng rng(seed);
    auto promote = [](const MongeJet<Rational>& f) {
        return f.map<Surd>([](const Rational& r) { return Surd(r); });
    };

    phase("jet ring axioms", [&] {
        int bad = 0;
        for (int t = 0; t < trials; ++t) {
            auto a = random_monge(rng, 4).f1();
            auto b = random_monge(rng, 4).f2();
            auto c = random_monge(rng, 4).f1();
            if ((a * b) * c != a * (b * c)) ++bad;
            if (a * (b + c) != a * b + a * c) ++bad;
        }
        return bad;
    });
    phase("group action residual identity", [&] {
        int bad = 0;
        for (int t = 0; t < trials; ++t) {
            auto f = random_monge(rng, 4);
            auto psi = random_element(rng, 3);
            if (!residual_check(psi, f, act_on_monge(psi, f), 4)) ++bad;
        }
        return bad;
    });
    phase("Gibson class invariance", [&] {
        int bad = 0;
        const std::pair<TwoJetClass, MongeJet<Rational> (*)()> reps[] = {
            {TwoJetClass::Hyperbolic, [] { return monge_rational(2, {{2, 0, 1}}, {{0, 2, 1}}); }},
            {TwoJetClass::Elliptic,
             [] { return monge_rational(2, {{2, 0, 1}, {0, 2, -1}}, {{1, 1, 1}}); }},
            {TwoJetClass::Parabolic, [] { return monge_rational(2, {{2, 0, 1}}, {{1, 1, 1}}); }},
            {TwoJetClass::InflectionPlus,
             [] { return monge_rational(2, {{2, 0, 1}, {0, 2, 1}}, {}); }},
            {TwoJetClass::InflectionMinus, [] { return monge_rational(2, {{1, 1, 1}}, {}); }},
            {TwoJetClass::DegenerateInflectionRank1,
             [] { return monge_rational(2, {{2, 0, 1}}, {}); }},
            {TwoJetClass::DegenerateInflectionZero, [] { return monge_rational(2, {}, {}); }},
        };
        for (const auto& [cls, mk] : reps)
            for (int t = 0; t < trials; ++t) {
                auto g = g5_conjugate(rng, mk().with_order(3));
                if (classify_2jet(g) != cls) ++bad;
            }
        return bad;
    });
    phase("stratum invariance", [&] {
        int bad = 0;
        for (auto s : kAllStrata) {
            auto rep = random_stratum_rep(rng, s);
            for (int t = 0; t < std::max(1, trials / 4); ++t)
                if (classify_stratum(g5_conjugate(rng, rep)).label != s) ++bad;
        }
        return bad;
    });
    phase("Mond label stability", [&] {
        int bad = 0;
        Jet2<Rational> x(3), y2(3), y3(3), xy(3);
        x.set(1, 0, Rational(1));
        y2.set(0, 2, Rational(1));
        y3.set(0, 3, Rational(1));
        xy.set(1, 1, Rational(1));
        const JetMapN<Rational> forms[] = {JetMapN<Rational>(x, y2, xy),
                                           JetMapN<Rational>(x, y2, y3),
                                           JetMapN<Rational>(x, xy, y3)};
        const MondType want[] = {MondType::S0, MondType::S, MondType::H};
        for (int k = 0; k < 3; ++k)
            for (int t = 0; t < trials; ++t)
                if (classify_A3(a3_conjugate(forms[k], rng.next())) != want[k]) ++bad;
        return bad;
    });
    phase("normal-form shape contracts", [&] {
        int bad = 0;
        for (auto s : kAllStrata)
            for (int t = 0; t < std::max(1, trials / 8); ++t) {
                auto f = random_stratum_rep(rng, s);
                auto rep = reduce_normal_form(f);
                if (!matches_normal_form_support(rep.exact_form, s)) ++bad;
                if (!residual_check(rep.transform, promote(f), rep.exact_form, 4)) ++bad;
            }
        return bad;
    });
    phase("projection columns", [&] {
        int bad = 0;
        for (auto s : kAllStrata) {
            auto f = random_stratum_rep(rng, s);
            auto rep = verify_projection_column(f, 8);
            if (!rep.contained) ++bad;
        }
        return bad;
    });

    report << (failures == 0 ? "selftest OK\n" : "selftest FAILED\n");
    write_text(output, report.str());
    return failures == 0 ? 0 : 4;
}

json error_json(int code, const std::string& kind, const std::string& message) {
    return json{{"error", json{{"code", code}, {"kind", kind}, {"message", message}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification of jets of surface germs in P^4 by their central projections"};
    app.require_subcommand(1);

    CommonOpts copt;
    std::string vp_arg, transform_path, surface_path, grid_arg = "10x10";
    int chart = -1;
    bool with_moduli = false;
    int threads = 2;
    std::uint64_t seed = 17;
    int trials = 25;
    std::string selftest_output;

    auto* c_classify = app.add_subcommand("classify", "stratum of a Monge jet");
    add_common(c_classify, copt);
    auto* c_nf = app.add_subcommand("normal-form", "reduce to the stratum normal form");
    add_common(c_nf, copt);
    auto* c_project = app.add_subcommand("project", "central projection from a view point");
    add_common(c_project, copt);
    c_project->add_option("--viewpoint", vp_arg, "view point a,b,c,d,e (e in {0,1})")->required();
    c_project->add_option("--chart", chart, "fixed affine chart 0..3 (default: automatic)");
    auto* c_mond = app.add_subcommand("mond-type", "A^3-type of a 3-component jet");
    add_common(c_mond, copt);
    auto* c_asym = app.add_subcommand("asymptotic", "asymptotic directions of a Monge jet");
    add_common(c_asym, copt);
    auto* c_apply = app.add_subcommand("apply", "apply a stored transform to a Monge jet");
    add_common(c_apply, copt);
    c_apply->add_option("--transform", transform_path, "group element JSON file")->required();
    auto* c_scan = app.add_subcommand("scan", "classify a surface patch over a parameter grid");
    c_scan->add_option("--surface", surface_path, "surface JSON file")->required();
    c_scan->add_option("--grid", grid_arg, "grid resolution NxM");
    c_scan->add_option("--order", copt.order, "jet order (default 4)");
    c_scan->add_option("--mode", copt.mode, "arithmetic mode")
        ->check(CLI::IsMember({"exact", "float"}));
    c_scan->add_option("--tol", copt.tol, "relative zero tolerance in float mode");
    c_scan->add_option("--output,-o", copt.output, "output file (default stdout)");
    c_scan->add_option("--format", copt.format, "csv (default) or json");
    c_scan->add_flag("--moduli", with_moduli, "also scan moduli (float precision)");
    c_scan->add_option("--threads", threads, "worker threads (default 2)");
    auto* c_self = app.add_subcommand("selftest", "run the randomized property suites");
    c_self->add_option("--seed", seed, "random seed (default 17)");
    c_self->add_option("--trials", trials, "trials per property (default 25)");
    c_self->add_option("--output,-o", selftest_output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (c_classify->parsed()) return cmd_classify(copt);
        if (c_nf->parsed()) return cmd_normal_form(copt);
        if (c_project->parsed()) return cmd_project(copt, vp_arg, chart);
        if (c_mond->parsed()) return cmd_mond_type(copt);
        if (c_asym->parsed()) return cmd_asymptotic(copt);
        if (c_apply->parsed()) return cmd_apply(copt, transform_path);
        if (c_scan->parsed()) {
            if (c_scan->count("--format") == 0) copt.format = "csv";
            return cmd_scan(copt, surface_path, grid_arg, with_moduli, threads);
        }
        if (c_self->parsed()) return cmd_selftest(seed, trials, selftest_output);
    } catch (const HypothesisViolation& e) {
        std::cerr << error_json(3, e.kind, e.what()).dump() << "\n";
        return 3;
    } catch (const InternalCheckFailure& e) {
        std::cerr << error_json(4, "internal", e.what()).dump() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << error_json(2, "input", e.what()).dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json(2, "input", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json(4, "internal", e.what()).dump() << "\n";
        return 4;
    }
    return 0;
}
