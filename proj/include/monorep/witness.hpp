#pragma once

#include "monorep/representations.hpp"

namespace monorep {

struct Residuals {
    Vec r, rho;
    double C = 0.0;
};

/// r = J_*(v - v0) + x,  rho = v - v0 + J(x),  C = <r, rho>.
/// C decomposes into two pairing defects, so C >= 0 always and C = 0
/// exactly when v - v0 = -J(x).
inline Residuals residuals(const DualityMap& dm, const Vec& x, const Vec& v, const Vec& v0) {
    require_dim(x.size(), dm.dim(), "residuals x");
    require_dim(v.size(), dm.dim(), "residuals v");
    require_dim(v0.size(), dm.dim(), "residuals v0");
    Vec u(v);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= v0[i];
    Residuals res;
    res.r = dm.jstar(u);
    res.rho = dm.jmap(x);
    for (std::size_t i = 0; i < u.size(); ++i) {
        res.r[i] += x[i];
        res.rho[i] += u[i];
    }
    res.C = dot(res.r, res.rho);
    return res;
}

/// The strongly convex objective whose minimizer solves v0 in (T+J)(x):
///     (1/2)(||v - v0||_*^2 + ||x||^2) - <v0, x> + h(x,v).
inline double phi_objective(const Representative& h, const DualityMap& dm, const Vec& v0,
                            const Vec& x, const Vec& v) {
    require_dim(v0.size(), h.dim(), "phi_objective v0");
    const double hv = h.eval(x, v);
    if (hv == kInf) return kInf;
    Vec u(v);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= v0[i];
    return 0.5 * (dm.dual_norm_sq(u) + dm.norm_sq(x)) - dot(v0, x) + hv;
}

struct VerifyVerdict {
    bool pass = false;
    bool h_bound_ok = false;   ///< h(x,v) >= <x,v> - tol on the box
    bool jh_bound_ok = false;  ///< grid J(h)(x,v) >= <x,v> - tol on the box
    double min_gap_h = kInf;
    Vec argmin_h;
    double min_gap_jh = kInf;
    Vec argmin_jh;
};

/// Checks both representative inequalities, h >= <.,.> and J(h) >= <.,.>,
/// over the box grid. J(h) uses the grid path, whose conjugate-of-restriction
/// value lower-bounds the true J(h): a PASS is a conservative certificate.
inline VerifyVerdict verify_representative(const Representative& h, const GridSpec& box,
                                           double tol,
                                           ConjMethod method = ConjMethod::brute_force) {
    if (box.dim != 2 * h.dim())
        throw dimension_error("verify_representative: box must live on X x X*");

    VerifyVerdict verdict;
    const auto direct = detail::min_coupling_gap(
        [&](std::size_t, const Vec& x, const Vec& v) { return h.eval(x, v); }, box);
    if (direct.any) {
        verdict.min_gap_h = direct.min_gap;
        verdict.argmin_h = box.node(direct.arg);
    } else {
        throw properness_error("verify_representative: h is +inf on the whole box");
    }

    const GridFn jh = j_transform_grid(h, box, method);
    const auto trans = detail::min_coupling_gap(
        [&](std::size_t k, const Vec&, const Vec&) { return jh.values[k]; }, box);
    verdict.min_gap_jh = trans.min_gap;
    verdict.argmin_jh = box.node(trans.arg);

    verdict.h_bound_ok = verdict.min_gap_h >= -tol;
    verdict.jh_bound_ok = verdict.min_gap_jh >= -tol;
    verdict.pass = verdict.h_bound_ok && verdict.jh_bound_ok;
    return verdict;
}

struct Extraction {
    OperatorGraph graph;
    bool input_verified = false;
};

/// T = {(x,v) : h(x,v) = <x,v>} on the grid, as the sublevel set
/// h - <x,v> <= tol. The result must be monotone; a violation means the
/// tolerance is too loose or h is not a representative.
inline Extraction extract_operator(const Representative& h, const GridSpec& box, double tol,
                                   bool input_verified = false) {
    if (box.dim != 2 * h.dim())
        throw dimension_error("extract_operator: box must live on X x X*");
    std::vector<PrimalDual> pts;
    for (std::size_t k = 0; k < box.size(); ++k) {
        auto [x, v] = split_blocks(box.node(k));
        const double hv = h.eval(x, v);
        if (hv == kInf) continue;
        if (hv - dot(x, v) <= tol) pts.push_back({std::move(x), std::move(v)});
    }
    OperatorGraph graph(h.dim(), std::move(pts));
    const auto mono = monotonicity_check(graph);
    if (!mono.monotone) {
        const auto [i, j] = *mono.violation;
        throw inconsistency_error(
            "extract_operator: extracted set is not monotone at point pair (" +
                std::to_string(i) + ", " + std::to_string(j) +
                "); tolerance too loose or input is not a representative",
            i, j);
    }
    return {std::move(graph), input_verified};
}

struct SolveOptions {
    double tol = 1e-4;
    long budget = 200000;
    long check_interval = 32;
    bool assume_verified = false; ///< caller attests verify_representative passed
};

struct ResolventCertificate {
    Vec x, v, v0;
    double gap = kInf;                 ///< h(x,v) - <x,v>
    double fixedpoint_residual = kInf; ///< ||v + J(x) - v0||_*
    double C_value = kInf;
    long iterations = 0;
    bool accepted = false;
    bool input_verified = false;
};

namespace detail {

inline ResolventCertificate certificate_at(const Representative& h, const DualityMap& dm,
                                           const Vec& x, const Vec& v, const Vec& v0) {
    ResolventCertificate cert;
    cert.x = x;
    cert.v = v;
    cert.v0 = v0;
    const double hv = h.eval(x, v);
    cert.gap = hv == kInf ? kInf : hv - dot(x, v);
    const auto res = residuals(dm, x, v, v0);
    cert.fixedpoint_residual = dm.dual_norm(res.rho);
    cert.C_value = res.C;
    return cert;
}

} // namespace detail

/// Resolvent computation by projected subgradient descent on phi_objective,
/// whose quadratic part is strongly convex (modulus 1 for the Euclidean
/// map): step 2/(mu (k+1)) with weight-(k+1) iterate averaging. Acceptance
/// is the conjunction of the two zero components of C -- the membership gap
/// and the fixed-point residual -- exactly how the existence proof splits.
inline ResolventCertificate solve_resolvent(const Representative& h, const DualityMap& dm,
                                            const Vec& v0, const SolveOptions& opts = {}) {
    const std::size_t n = h.dim();
    require_dim(dm.dim(), n, "solve_resolvent duality map");
    require_dim(v0.size(), n, "solve_resolvent v0");
    if (!(opts.tol > 0.0) || opts.budget <= 0)
        throw error("solve_resolvent: tol and budget must be positive");

    // Deterministic start: exact for the identity operator.
    Vec x = dm.jstar(v0), v = v0;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= 0.5;
        v[i] *= 0.5;
    }
    h.project_domain(x, v);
    if (h.eval(x, v) == kInf) {
        x.assign(n, 0.0);
        v.assign(n, 0.0);
        h.project_domain(x, v);
        if (h.eval(x, v) == kInf)
            throw infeasible_start_error(
                "solve_resolvent: every initialization probe lands outside dom h");
    }

    double mu = 1.0;
    if (!dm.is_euclidean()) {
        double wmin = kInf, wmax = 0.0;
        for (double w : dm.weights()) {
            wmin = std::min(wmin, w);
            wmax = std::max(wmax, w);
        }
        mu = std::min(wmin, 1.0 / wmax);
    }

    Vec avg_x(n, 0.0), avg_v(n, 0.0);
    double avg_weight = 0.0;
    ResolventCertificate best;
    best.v0 = v0;
    auto score = [](const ResolventCertificate& c) {
        return std::max(c.gap, c.fixedpoint_residual);
    };
    auto consider = [&](const Vec& cx, const Vec& cv, long iters) -> bool {
        auto cert = detail::certificate_at(h, dm, cx, cv, v0);
        cert.iterations = iters;
        cert.input_verified = opts.assume_verified;
        cert.accepted = cert.gap <= opts.tol && cert.fixedpoint_residual <= opts.tol;
        if (best.x.empty() || score(cert) < score(best)) best = cert;
        return cert.accepted;
    };

    Vec xb(n), vb(n);
    for (long k = 0; k < opts.budget; ++k) {
        const Vec gh = h.subgradient(x, v);
        const Vec jx = dm.jmap(x);
        Vec u(v);
        for (std::size_t i = 0; i < n; ++i) u[i] -= v0[i];
        const Vec ju = dm.jstar(u);

        const double step = 2.0 / (mu * double(k + 1));
        for (std::size_t i = 0; i < n; ++i) {
            x[i] -= step * (jx[i] - v0[i] + gh[i]);
            v[i] -= step * (ju[i] + gh[n + i]);
        }
        h.project_domain(x, v);

        const double w = double(k + 1);
        avg_weight += w;
        for (std::size_t i = 0; i < n; ++i) {
            avg_x[i] += w * x[i];
            avg_v[i] += w * v[i];
        }

        if ((k + 1) % opts.check_interval == 0 || k + 1 == opts.budget) {
            for (std::size_t i = 0; i < n; ++i) {
                xb[i] = avg_x[i] / avg_weight;
                vb[i] = avg_v[i] / avg_weight;
            }
            if (consider(xb, vb, k + 1)) return best;
            if (consider(x, v, k + 1)) return best;
        }
    }
    return best; // budget exhausted: best-seen residuals, accepted = false
}

struct ProbeReport {
    std::size_t probes = 0;
    std::size_t accepted = 0;
    double fraction = 0.0;
    std::vector<ResolventCertificate> certificates; ///< by probe grid index
};

/// Proposition-2.2 surjectivity probe: solve v0 in (T+J)(x) over a grid of
/// v0 values and report the fraction with residuals within tol. Evidence,
/// not proof -- a PASS certifies surjectivity only at the probed points.
inline ProbeReport maximality_probe(const Representative& h, const DualityMap& dm,
                                    const GridSpec& probes, double tol,
                                    const SolveOptions& base_opts = {}) {
    require_dim(probes.dim, h.dim(), "maximality_probe grid");
    ProbeReport report;
    report.probes = probes.size();
    report.certificates.resize(probes.size());
    SolveOptions opts = base_opts;
    opts.tol = tol;
    parallel_for(probes.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const Vec v0 = probes.node(k);
            try {
                report.certificates[k] = solve_resolvent(h, dm, v0, opts);
            } catch (const infeasible_start_error&) {
                report.certificates[k].v0 = v0; // recorded as a failed probe
                report.certificates[k].accepted = false;
            }
        }
    });
    for (const auto& cert : report.certificates)
        if (cert.accepted) ++report.accepted;
    report.fraction = report.probes ? double(report.accepted) / double(report.probes) : 0.0;
    return report;
}

} // namespace monorep
