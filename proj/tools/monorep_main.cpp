// monorep: batch front end for representative-function verification,
// operator extraction, and resolvent computation.
//
// Exit codes: 0 = all checks pass, 2 = a mathematical check failed,
// 1 = input or configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "monorep/monorep.hpp"

namespace fs = std::filesystem;
using namespace monorep;

namespace {

struct RunConfig {
    std::string input;
    std::string out_dir = ".";
    std::vector<std::string> box_axes;
    double tol = 0.0; // 0 = pick a documented default per command
    long budget = 200000;
    std::string format = "json";
};

constexpr int kExitPass = 0;
constexpr int kExitInputError = 1;
constexpr int kExitCheckFailed = 2;

GridSpec parse_box(const std::vector<std::string>& axes) {
    Vec lo, hi;
    std::vector<std::size_t> counts;
    for (const auto& s : axes) {
        double a = 0, b = 0;
        long c = 0;
        char sep1 = 0, sep2 = 0;
        std::istringstream is(s);
        if (!(is >> a >> sep1 >> b >> sep2 >> c) || sep1 != ',' || sep2 != ',' || c < 1)
            throw io_error("--box expects LO,HI,COUNT per axis, got '" + s + "'");
        lo.push_back(a);
        hi.push_back(b);
        counts.push_back(std::size_t(c));
    }
    return GridSpec(std::move(lo), std::move(hi), std::move(counts));
}

/// Box for sweeps over X x X*: accepts n axes (duplicated across the two
/// blocks) or 2n axes verbatim.
GridSpec product_box(const RunConfig& cfg, std::size_t n) {
    if (cfg.box_axes.empty()) {
        auto block = GridSpec::uniform(n, -2.0, 2.0, 21);
        return GridSpec::product(block, block);
    }
    GridSpec spec = parse_box(cfg.box_axes);
    if (spec.dim == n) return GridSpec::product(spec, spec);
    if (spec.dim == 2 * n) return spec;
    throw io_error("--box needs " + std::to_string(n) + " or " + std::to_string(2 * n) +
                   " axes for this input");
}

GridSpec probe_box(const RunConfig& cfg, std::size_t n) {
    if (cfg.box_axes.empty()) return GridSpec::uniform(n, -2.0, 2.0, 11);
    GridSpec spec = parse_box(cfg.box_axes);
    if (spec.dim != n)
        throw io_error("--box needs exactly " + std::to_string(n) + " axes of v0 probes");
    return spec;
}

/// Default check tolerance: finite sampled graphs make phi_G dip below the
/// coupling off the graph, so tie the tolerance to the box spacing; exact
/// closed forms get a tight one.
double default_tol(const Representative& rep, const GridSpec& box) {
    if (std::holds_alternative<forms::Fitzpatrick>(rep.storage()) ||
        std::holds_alternative<forms::Grid>(rep.storage()) ||
        std::holds_alternative<forms::Mix>(rep.storage())) {
        double h = 0.0;
        for (std::size_t i = 0; i < box.dim; ++i) h = std::max(h, box.spacing(i));
        return std::max(h * h, 1e-12);
    }
    return 1e-9;
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot write " + path.string());
    os << body;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory " + dir.string());
    return dir;
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ",";
        row += cells[i];
    }
    row += "\n";
    return row;
}

std::string certificates_csv(const ProbeReport& report, std::size_t n) {
    std::vector<std::string> header;
    auto vec_cols = [&](const char* stem) {
        for (std::size_t i = 0; i < n; ++i) header.push_back(std::string(stem) + "_" + std::to_string(i));
    };
    vec_cols("v0");
    vec_cols("x");
    vec_cols("v");
    header.insert(header.end(),
                  {"gap", "fixedpoint_residual", "C", "iterations", "accepted"});
    std::string csv = csv_join(header);
    for (const auto& c : report.certificates) {
        std::vector<std::string> row;
        auto push_vec = [&](const Vec& v) {
            for (std::size_t i = 0; i < n; ++i) row.push_back(fmt17(i < v.size() ? v[i] : kInf));
        };
        push_vec(c.v0);
        push_vec(c.x);
        push_vec(c.v);
        row.push_back(fmt17(c.gap));
        row.push_back(fmt17(c.fixedpoint_residual));
        row.push_back(fmt17(c.C_value));
        row.push_back(std::to_string(c.iterations));
        row.push_back(c.accepted ? "1" : "0");
        csv += csv_join(row);
    }
    return csv;
}

struct LoadedRep {
    Representative rep;
    DualityMap dm;
    json spec;
};

LoadedRep load_representative_file(const std::string& path) {
    const json spec = read_json_file(path);
    Representative rep = representative_from_json(spec, fs::path(path).parent_path());
    DualityMap dm = duality_from_json(spec, rep.dim());
    require_dim(dm.dim(), rep.dim(), "duality map in spec");
    return {std::move(rep), std::move(dm), spec};
}

int cmd_verify(const RunConfig& cfg) {
    auto loaded = load_representative_file(cfg.input);
    const GridSpec box = product_box(cfg, loaded.rep.dim());
    const double tol = cfg.tol > 0 ? cfg.tol : default_tol(loaded.rep, box);

    const VerifyVerdict verdict = verify_representative(loaded.rep, box, tol);
    json report = verify_verdict_to_json(verdict);
    report["tol"] = tol;
    report["box"] = box_to_json(box);

    const fs::path dir = ensure_out_dir(cfg);
    if (cfg.format == "csv") {
        std::string csv = csv_join({"pass", "min_gap_h", "min_gap_jh", "tol"});
        csv += csv_join({verdict.pass ? "1" : "0", fmt17(verdict.min_gap_h),
                         fmt17(verdict.min_gap_jh), fmt17(tol)});
        write_text(dir / "verify_report.csv", csv);
    } else {
        write_text(dir / "verify_report.json", report.dump(2) + "\n");
    }
    std::cout << (verdict.pass ? "PASS" : "FAIL") << " min_gap_h=" << fmt17(verdict.min_gap_h)
              << " min_gap_jh=" << fmt17(verdict.min_gap_jh) << " tol=" << fmt17(tol) << "\n";
    if (!verdict.pass) {
        const auto& p = verdict.h_bound_ok ? verdict.argmin_jh : verdict.argmin_h;
        std::cout << "failing point:";
        for (double c : p) std::cout << " " << fmt17(c);
        std::cout << "\n";
    }
    return verdict.pass ? kExitPass : kExitCheckFailed;
}

int cmd_extract(const RunConfig& cfg) {
    auto loaded = load_representative_file(cfg.input);
    const GridSpec box = product_box(cfg, loaded.rep.dim());
    const double tol = cfg.tol > 0 ? cfg.tol : default_tol(loaded.rep, box);

    const VerifyVerdict verdict = verify_representative(loaded.rep, box, tol);
    const Extraction extraction = extract_operator(loaded.rep, box, tol, verdict.pass);
    const auto mono = monotonicity_check(extraction.graph);

    const fs::path dir = ensure_out_dir(cfg);
    if (cfg.format == "csv") {
        const std::size_t n = loaded.rep.dim();
        std::vector<std::string> header;
        for (std::size_t i = 0; i < n; ++i) header.push_back("x_" + std::to_string(i));
        for (std::size_t i = 0; i < n; ++i) header.push_back("v_" + std::to_string(i));
        std::string csv = csv_join(header);
        for (const auto& p : extraction.graph.points) {
            std::vector<std::string> row;
            for (double c : p.x) row.push_back(fmt17(c));
            for (double c : p.v) row.push_back(fmt17(c));
            csv += csv_join(row);
        }
        write_text(dir / "extracted_graph.csv", csv);
    } else {
        json out = graph_to_json(extraction.graph);
        out["input_verified"] = extraction.input_verified;
        out["monotone"] = mono.monotone;
        out["tol"] = tol;
        write_text(dir / "extracted_graph.json", out.dump(2) + "\n");
    }
    std::cout << "extracted " << extraction.graph.points.size() << " points, monotone="
              << (mono.monotone ? "1" : "0") << ", input_verified="
              << (extraction.input_verified ? "1" : "0") << "\n";
    return extraction.input_verified ? kExitPass : kExitCheckFailed;
}

int cmd_resolve(const RunConfig& cfg) {
    auto loaded = load_representative_file(cfg.input);
    const std::size_t n = loaded.rep.dim();
    const GridSpec probes = probe_box(cfg, n);
    const double tol = cfg.tol > 0 ? cfg.tol : 1e-4;

    const GridSpec verify_box = GridSpec::product(GridSpec::uniform(n, -2.0, 2.0, 21),
                                                  GridSpec::uniform(n, -2.0, 2.0, 21));
    const bool verified =
        verify_representative(loaded.rep, verify_box, default_tol(loaded.rep, verify_box)).pass;

    SolveOptions opts;
    opts.tol = tol;
    opts.budget = cfg.budget;
    opts.assume_verified = verified;
    const ProbeReport report = maximality_probe(loaded.rep, loaded.dm, probes, tol, opts);

    const fs::path dir = ensure_out_dir(cfg);
    write_text(dir / "certificates.csv", certificates_csv(report, n));
    json summary = {{"probes", report.probes},
                    {"accepted", report.accepted},
                    {"fraction", report.fraction},
                    {"tol", tol},
                    {"budget", cfg.budget},
                    {"input_verified", verified}};
    if (cfg.format == "csv") {
        std::string csv = csv_join({"probes", "accepted", "fraction", "tol", "budget"});
        csv += csv_join({std::to_string(report.probes), std::to_string(report.accepted),
                         fmt17(report.fraction), fmt17(tol), std::to_string(cfg.budget)});
        write_text(dir / "resolve_summary.csv", csv);
    } else {
        write_text(dir / "resolve_summary.json", summary.dump(2) + "\n");
    }
    std::cout << "accepted " << report.accepted << "/" << report.probes
              << " probes (fraction " << fmt17(report.fraction) << ")\n";
    return report.accepted == report.probes ? kExitPass : kExitCheckFailed;
}

struct CatalogEntry {
    std::string name;
    AnalyticOperator op;
    Representative rep;
};

std::vector<CatalogEntry> builtin_catalog() {
    std::vector<CatalogEntry> cat;
    {
        Mat I1 = Mat::identity(1);
        cat.push_back({"identity", AnalyticOperator::linear(I1), Representative::identity_phi(1)});
    }
    {
        Mat A(1, 1);
        A(0, 0) = 3.0;
        cat.push_back({"subdiff-quadratic-a3", AnalyticOperator::subdiff_quadratic(A, {0.0}),
                       Representative::linear_phi(A, {0.0})});
    }
    {
        Mat R(2, 2);
        R(0, 0) = 0.0;
        R(0, 1) = -1.0;
        R(1, 0) = 1.0;
        R(1, 1) = 0.0;
        cat.push_back({"rotation-90", AnalyticOperator::rotation2d(M_PI / 2),
                       Representative::linear_phi(R)});
    }
    cat.push_back({"normal-cone-box-01", AnalyticOperator::normal_cone_box({0.0}, {1.0}),
                   Representative::box_phi({0.0}, {1.0})});
    return cat;
}

Representative default_representative(const AnalyticOperator& op) {
    if (const auto* lin = std::get_if<LinearOp>(&op.storage()))
        return Representative::linear_phi(lin->A);
    if (const auto* sq = std::get_if<SubdiffQuadraticOp>(&op.storage()))
        return Representative::linear_phi(sq->A, sq->b);
    if (const auto* rot = std::get_if<Rotation2dOp>(&op.storage())) {
        const double c = std::cos(rot->theta), s = std::sin(rot->theta);
        Mat R(2, 2);
        R(0, 0) = c;
        R(0, 1) = -s;
        R(1, 0) = s;
        R(1, 1) = c;
        return Representative::linear_phi(R);
    }
    const auto& bx = std::get<NormalConeBoxOp>(op.storage());
    return Representative::box_phi(bx.lower, bx.upper);
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.is_array()) throw io_error("catalog: expected a JSON array of entries");
    if (j.empty()) throw io_error("catalog: empty");
    std::vector<CatalogEntry> cat;
    std::size_t idx = 0;
    for (const auto& entry : j) {
        CatalogEntry ce{entry.value("name", "entry-" + std::to_string(idx)),
                        operator_from_json(entry.contains("operator") ? entry.at("operator")
                                                                      : entry),
                        Representative::identity_phi(1)};
        ce.rep = entry.contains("representative")
                     ? representative_from_json(entry.at("representative"),
                                                fs::path(path).parent_path())
                     : default_representative(ce.op);
        require_dim(ce.rep.dim(), ce.op.dim(), "catalog representative");
        cat.push_back(std::move(ce));
        ++idx;
    }
    return cat;
}

/// End-to-end sweep over the catalog: verify both inequalities (the J(h)
/// bound is the self-mapping check), extract, and resolve against the
/// analytic oracle. One summary row per operator.
int cmd_demo(const RunConfig& cfg) {
    const auto catalog = cfg.input.empty() ? builtin_catalog() : load_catalog(cfg.input);

    std::string csv = csv_join({"operator", "dim", "verify_pass", "min_gap_h", "min_gap_jh",
                                "extract_points", "extract_monotone", "resolve_fraction",
                                "max_x_error"});
    bool all_ok = true;
    for (const auto& entry : catalog) {
        const std::size_t n = entry.op.dim();
        const std::size_t box_pts = n == 1 ? 21 : 9;
        const GridSpec block = GridSpec::uniform(n, -2.0, 2.0, box_pts);
        const GridSpec box = GridSpec::product(block, block);
        const double tol = cfg.tol > 0 ? cfg.tol : default_tol(entry.rep, box);

        const VerifyVerdict verdict = verify_representative(entry.rep, box, tol);

        const double h = block.spacing(0);
        std::size_t extract_points = 0;
        bool extract_monotone = true;
        try {
            const auto extraction =
                extract_operator(entry.rep, box, h * h / 8.0, verdict.pass);
            extract_points = extraction.graph.points.size();
        } catch (const inconsistency_error&) {
            extract_monotone = false;
        }

        const GridSpec probes = GridSpec::uniform(n, -2.0, 2.0, n == 1 ? 11 : 3);
        SolveOptions opts;
        opts.tol = cfg.tol > 0 ? cfg.tol : 1e-4;
        opts.budget = cfg.budget;
        opts.assume_verified = verdict.pass;
        const DualityMap dm = DualityMap::euclidean(n);
        const ProbeReport report = maximality_probe(entry.rep, dm, probes, opts.tol, opts);

        double max_x_err = 0.0;
        for (std::size_t k = 0; k < probes.size(); ++k) {
            const Vec x_ref = analytic_resolvent(entry.op, dm, probes.node(k));
            const auto& cert = report.certificates[k];
            for (std::size_t i = 0; i < n; ++i)
                max_x_err = std::max(max_x_err, std::abs(cert.x[i] - x_ref[i]));
        }

        const bool row_ok = verdict.pass && extract_monotone && report.accepted == report.probes;
        all_ok = all_ok && row_ok;
        csv += csv_join({entry.name, std::to_string(n), verdict.pass ? "1" : "0",
                         fmt17(verdict.min_gap_h), fmt17(verdict.min_gap_jh),
                         std::to_string(extract_points), extract_monotone ? "1" : "0",
                         fmt17(report.fraction), fmt17(max_x_err)});
        std::cout << entry.name << ": " << (row_ok ? "ok" : "FAILED") << "\n";
    }

    const fs::path dir = ensure_out_dir(cfg);
    write_text(dir / "demo_summary.csv", csv);
    std::cout << "wrote " << (dir / "demo_summary.csv").string() << "\n";
    return all_ok ? kExitPass : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex representations of maximal monotone operators: "
                 "verification, extraction, and resolvents"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&](CLI::App* cmd, bool input_required) {
        auto* opt = cmd->add_option("--input", cfg.input, "input spec file (JSON)");
        if (input_required) opt->required();
        cmd->add_option("--out", cfg.out_dir, "output directory (default: .)");
        cmd->add_option("--box", cfg.box_axes,
                        "grid axis LO,HI,COUNT (repeat per axis)");
        cmd->add_option("--tol", cfg.tol, "check tolerance (default: documented per command)");
        cmd->add_option("--budget", cfg.budget, "solver iteration budget");
        cmd->add_option("--format", cfg.format, "report format: json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* verify = app.add_subcommand("verify", "check the two representative inequalities");
    add_common(verify, true);
    auto* extract = app.add_subcommand("extract", "extract the operator graph from h");
    add_common(extract, true);
    auto* resolve = app.add_subcommand("resolve", "solve v0 in (T+J)(x) over a probe grid");
    add_common(resolve, true);
    auto* demo = app.add_subcommand("demo", "run the full catalog end to end");
    add_common(demo, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (verify->parsed()) return cmd_verify(cfg);
        if (extract->parsed()) return cmd_extract(cfg);
        if (resolve->parsed()) return cmd_resolve(cfg);
        return cmd_demo(cfg);
    } catch (const inconsistency_error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
