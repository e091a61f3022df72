#pragma once

#include <memory>
#include <variant>

#include "monorep/conjugate.hpp"
#include "monorep/max_affine.hpp"
#include "monorep/operators.hpp"

namespace monorep {

inline Vec concat(const Vec& x, const Vec& v) {
    Vec z(x);
    z.insert(z.end(), v.begin(), v.end());
    return z;
}

inline std::pair<Vec, Vec> split_blocks(const Vec& z) {
    const std::size_t n = z.size() / 2;
    return {Vec(z.begin(), z.begin() + long(n)), Vec(z.begin() + long(n), z.end())};
}

/// Fitzpatrick function of a finite graph as an exact max-affine object:
///     phi_G(x,v) = max over (y,u) in G of <x,u> + <y,v> - <y,u>,
/// i.e. pieces with slope (u,y) and offset -<y,u> acting on p = (x,v).
inline MaxAffineFn fitzpatrick_pieces(const OperatorGraph& g) {
    if (g.points.empty()) throw error("fitzpatrick_pieces: empty graph");
    std::vector<MaxAffinePiece> pieces;
    pieces.reserve(g.points.size());
    for (const auto& p : g.points) pieces.push_back({concat(p.v, p.x), -dot(p.x, p.v)});
    return MaxAffineFn(2 * g.dim, std::move(pieces));
}

inline double fitzpatrick_eval(const OperatorGraph& g, const Vec& x, const Vec& v) {
    if (g.points.empty()) throw error("fitzpatrick_eval: empty graph");
    require_dim(x.size(), g.dim, "fitzpatrick_eval x");
    require_dim(v.size(), g.dim, "fitzpatrick_eval v");
    double best = -kInf;
    for (const auto& p : g.points)
        best = std::max(best, dot(x, p.v) + dot(p.x, v) - dot(p.x, p.v));
    return best;
}

/// phi_T for T(x) = Ax + b with A + A' >= 0, evaluated exactly: the concave
/// quadratic y -> <x-y, Ay+b-v> + <x,v> is maximized by solving
/// (A+A')y = A'x + v - b; an inconsistent system means the sup is +inf.
inline double fitzpatrick_linear_closed_form(const Mat& A, const Vec& x, const Vec& v,
                                             const Vec& b_in = {}) {
    const std::size_t n = A.rows;
    if (A.cols != n) throw dimension_error("fitzpatrick_linear_closed_form: A must be square");
    require_dim(x.size(), n, "fitzpatrick_linear_closed_form x");
    require_dim(v.size(), n, "fitzpatrick_linear_closed_form v");
    Vec b = b_in.empty() ? Vec(n, 0.0) : b_in;
    require_dim(b.size(), n, "fitzpatrick_linear_closed_form b");

    const Eigen::MatrixXd Ae = detail::to_eigen(A);
    const Eigen::MatrixXd S = Ae + Ae.transpose();
    if (detail::min_symmetric_eigenvalue(S) < -1e-10)
        throw error("fitzpatrick_linear_closed_form: A + A' must be positive semidefinite");

    const Eigen::VectorXd xe = detail::to_eigen(x), ve = detail::to_eigen(v),
                          be = detail::to_eigen(b);
    const Eigen::VectorXd rhs = Ae.transpose() * xe + ve - be;
    const Eigen::VectorXd y = S.completeOrthogonalDecomposition().solve(rhs);
    if ((S * y - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) return kInf;
    return xe.dot(Ae * y) + y.dot(ve) - y.dot(Ae * y) + xe.dot(be) - y.dot(be);
}

// -- representative functions -------------------------------------------------

class Representative;

namespace forms {

struct Fitzpatrick {
    OperatorGraph graph;
    MaxAffineFn fn;
};

struct Grid {
    GridFn fn;
    std::vector<std::size_t> finite_nodes;
};

struct IdentityPhi {
    std::size_t n = 0;
};

/// The pi-coupling indicator <x,v> + i{v=x}: the identity operator's
/// largest representative.
struct IdentityIndicator {
    std::size_t n = 0;
};

struct LinearPhi {
    Mat A;
    Vec b;
    struct Solved {
        Eigen::MatrixXd Ae, S;
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
        // Domain {(x,v) : K(A'x + v - b) = 0} with K the projector onto
        // ker(S); proj(z) = z - G (M z - c) is the orthogonal projection.
        bool constrained = false;
        Eigen::MatrixXd M, G;
        Eigen::VectorXd c;
    };
    std::shared_ptr<const Solved> solved;
};

struct BoxPhi {
    Vec lower, upper;
};

struct Mix {
    std::vector<std::pair<double, std::shared_ptr<const Representative>>> parts;
};

} // namespace forms

/// A representative-function candidate h on X x X*: evaluable anywhere to
/// an extended real, convex by construction, with enough structure
/// (subgradients + domain projection) for the resolvent solver.
class Representative {
  public:
    using Storage = std::variant<forms::Fitzpatrick, forms::Grid, forms::IdentityPhi,
                                 forms::IdentityIndicator, forms::LinearPhi, forms::BoxPhi,
                                 forms::Mix>;

    static Representative fitzpatrick(OperatorGraph g) {
        auto fn = fitzpatrick_pieces(g);
        return Representative(g.dim, forms::Fitzpatrick{std::move(g), std::move(fn)});
    }

    static Representative grid(GridFn f) {
        if (f.spec.dim % 2 != 0)
            throw dimension_error("grid representative: grid dim must be 2n over X x X*");
        forms::Grid g{std::move(f), {}};
        for (std::size_t k = 0; k < g.fn.values.size(); ++k)
            if (g.fn.values[k] != kInf) g.finite_nodes.push_back(k);
        const std::size_t n = g.fn.spec.dim / 2;
        return Representative(n, std::move(g));
    }

    static Representative identity_phi(std::size_t n) {
        if (n == 0) throw dimension_error("identity_phi: dim must be positive");
        return Representative(n, forms::IdentityPhi{n});
    }

    static Representative identity_indicator(std::size_t n) {
        if (n == 0) throw dimension_error("identity_indicator: dim must be positive");
        return Representative(n, forms::IdentityIndicator{n});
    }

    static Representative linear_phi(Mat A, Vec b = {}) {
        const std::size_t n = A.rows;
        if (A.cols != n) throw dimension_error("linear_phi: A must be square");
        if (b.empty()) b.assign(n, 0.0);
        require_dim(b.size(), n, "linear_phi b");

        auto solved = std::make_shared<forms::LinearPhi::Solved>();
        solved->Ae = detail::to_eigen(A);
        solved->S = solved->Ae + solved->Ae.transpose();
        if (detail::min_symmetric_eigenvalue(solved->S) < -1e-10)
            throw error("linear_phi: A + A' must be positive semidefinite");
        solved->cod.compute(solved->S);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(solved->S);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(long(n), long(n));
        for (long i = 0; i < long(n); ++i)
            if (std::abs(es.eigenvalues()(i)) <= 1e-12 * scale)
                K += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
        if (K.cwiseAbs().maxCoeff() > 1e-12) {
            solved->constrained = true;
            solved->M.resize(long(n), long(2 * n));
            solved->M << K * solved->Ae.transpose(), K;
            solved->c = K * detail::to_eigen(b);
            const Eigen::MatrixXd MMt = solved->M * solved->M.transpose();
            solved->G = solved->M.transpose() *
                        MMt.completeOrthogonalDecomposition().pseudoInverse();
        }
        return Representative(n, forms::LinearPhi{std::move(A), std::move(b), std::move(solved)});
    }

    /// phi_T of the normal cone of a box, which works out to the separable
    /// closed form i_box(x) + sum_i max(lo_i v_i, hi_i v_i).
    static Representative box_phi(Vec lower, Vec upper) {
        if (lower.size() != upper.size() || lower.empty())
            throw dimension_error("box_phi: bad bounds");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i])) throw error("box_phi: lower > upper");
        const std::size_t n = lower.size();
        return Representative(n, forms::BoxPhi{std::move(lower), std::move(upper)});
    }

    static Representative mix(std::vector<std::pair<double, Representative>> parts) {
        if (parts.empty()) throw error("mix: needs at least one part");
        forms::Mix m;
        double total = 0.0;
        const std::size_t n = parts.front().second.dim();
        for (auto& [w, rep] : parts) {
            if (w < 0.0) throw error("mix: weights must be nonnegative");
            require_dim(rep.dim(), n, "mix part");
            total += w;
            if (w > 0.0)
                m.parts.emplace_back(w, std::make_shared<const Representative>(std::move(rep)));
        }
        if (std::abs(total - 1.0) > 1e-12) throw error("mix: weights must sum to 1");
        if (m.parts.empty()) throw error("mix: all weights are zero");
        return Representative(n, std::move(m));
    }

    std::size_t dim() const { return n_; }
    const Storage& storage() const { return storage_; }

    double eval(const Vec& x, const Vec& v) const {
        require_dim(x.size(), n_, "Representative::eval x");
        require_dim(v.size(), n_, "Representative::eval v");
        return eval_impl(x, v);
    }

    double eval_z(const Vec& z) const {
        auto [x, v] = split_blocks(z);
        return eval(x, v);
    }

    bool finite_everywhere() const {
        return std::visit(
            [](const auto& f) -> bool {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, forms::Fitzpatrick>) return true;
                else if constexpr (std::is_same_v<T, forms::IdentityPhi>) return true;
                else if constexpr (std::is_same_v<T, forms::LinearPhi>) return !f.solved->constrained;
                else if constexpr (std::is_same_v<T, forms::Mix>) {
                    for (const auto& [w, p] : f.parts)
                        if (!p->finite_everywhere()) return false;
                    return true;
                } else
                    return false;
            },
            storage_);
    }

    /// A subgradient of h at (x,v), valid on the domain; together with the
    /// domain projection this is all the solver needs.
    Vec subgradient(const Vec& x, const Vec& v) const {
        if (const auto* fz = std::get_if<forms::Fitzpatrick>(&storage_)) {
            const auto j = argmax_piece(fz->fn, concat(x, v));
            return fz->fn.pieces[j].slope;
        }
        if (const auto* gr = std::get_if<forms::Grid>(&storage_)) return grid_subgradient(*gr, x, v);
        if (std::get_if<forms::IdentityPhi>(&storage_)) {
            Vec g(2 * n_);
            for (std::size_t i = 0; i < n_; ++i) g[i] = g[n_ + i] = 0.5 * (x[i] + v[i]);
            return g;
        }
        if (std::get_if<forms::IdentityIndicator>(&storage_)) return concat(v, x);
        if (const auto* lp = std::get_if<forms::LinearPhi>(&storage_)) {
            const Eigen::VectorXd rhs = lp->solved->Ae.transpose() * detail::to_eigen(x) +
                                        detail::to_eigen(v) - detail::to_eigen(lp->b);
            const Eigen::VectorXd y = lp->solved->cod.solve(rhs);
            const Eigen::VectorXd gx = lp->solved->Ae * y + detail::to_eigen(lp->b);
            Vec g = detail::from_eigen(gx);
            const Vec gy = detail::from_eigen(y);
            g.insert(g.end(), gy.begin(), gy.end());
            return g;
        }
        if (const auto* bp = std::get_if<forms::BoxPhi>(&storage_)) {
            Vec g(2 * n_, 0.0);
            for (std::size_t i = 0; i < n_; ++i) {
                const double lo = bp->lower[i] * v[i], hi = bp->upper[i] * v[i];
                if (lo > hi) g[n_ + i] = bp->lower[i];
                else if (hi > lo) g[n_ + i] = bp->upper[i];
                else g[n_ + i] = std::clamp(0.0, bp->lower[i], bp->upper[i]);
            }
            return g;
        }
        const auto& mx = std::get<forms::Mix>(storage_);
        Vec g(2 * n_, 0.0);
        for (const auto& [w, part] : mx.parts) {
            const Vec gp = part->subgradient(x, v);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += w * gp[i];
        }
        return g;
    }

    /// Projects (x,v) onto dom h (exact for every shipped form; a mix
    /// applies its members' projections in order).
    void project_domain(Vec& x, Vec& v) const {
        if (const auto* gr = std::get_if<forms::Grid>(&storage_)) {
            grid_project(*gr, x, v);
            return;
        }
        if (std::get_if<forms::IdentityIndicator>(&storage_)) {
            for (std::size_t i = 0; i < n_; ++i) x[i] = v[i] = 0.5 * (x[i] + v[i]);
            return;
        }
        if (const auto* lp = std::get_if<forms::LinearPhi>(&storage_)) {
            if (!lp->solved->constrained) return;
            Eigen::VectorXd z(2 * long(n_));
            z << detail::to_eigen(x), detail::to_eigen(v);
            z -= lp->solved->G * (lp->solved->M * z - lp->solved->c);
            for (std::size_t i = 0; i < n_; ++i) {
                x[i] = z(long(i));
                v[i] = z(long(n_ + i));
            }
            return;
        }
        if (const auto* bp = std::get_if<forms::BoxPhi>(&storage_)) {
            for (std::size_t i = 0; i < n_; ++i) x[i] = std::clamp(x[i], bp->lower[i], bp->upper[i]);
            return;
        }
        if (const auto* mx = std::get_if<forms::Mix>(&storage_)) {
            for (const auto& [w, part] : mx->parts) part->project_domain(x, v);
            return;
        }
        // Fitzpatrick and IdentityPhi are finite everywhere.
    }

  private:
    Representative(std::size_t n, Storage s) : n_(n), storage_(std::move(s)) {}

    double eval_impl(const Vec& x, const Vec& v) const {
        if (const auto* fz = std::get_if<forms::Fitzpatrick>(&storage_))
            return eval_max_affine(fz->fn, concat(x, v));
        if (const auto* gr = std::get_if<forms::Grid>(&storage_)) return grid_eval(*gr, x, v);
        if (std::get_if<forms::IdentityPhi>(&storage_)) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) s += (x[i] + v[i]) * (x[i] + v[i]);
            return 0.25 * s;
        }
        if (std::get_if<forms::IdentityIndicator>(&storage_)) {
            for (std::size_t i = 0; i < n_; ++i)
                if (x[i] != v[i]) return kInf;
            return dot(x, v);
        }
        if (const auto* lp = std::get_if<forms::LinearPhi>(&storage_)) {
            const Eigen::VectorXd xe = detail::to_eigen(x), ve = detail::to_eigen(v),
                                  be = detail::to_eigen(lp->b);
            const Eigen::VectorXd rhs = lp->solved->Ae.transpose() * xe + ve - be;
            const Eigen::VectorXd y = lp->solved->cod.solve(rhs);
            if ((lp->solved->S * y - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) return kInf;
            return xe.dot(lp->solved->Ae * y) + y.dot(ve) - y.dot(lp->solved->Ae * y) +
                   xe.dot(be) - y.dot(be);
        }
        if (const auto* bp = std::get_if<forms::BoxPhi>(&storage_)) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (x[i] < bp->lower[i] - 1e-12 || x[i] > bp->upper[i] + 1e-12) return kInf;
                s += std::max(bp->lower[i] * v[i], bp->upper[i] * v[i]);
            }
            return s;
        }
        const auto& mx = std::get<forms::Mix>(storage_);
        double s = 0.0;
        for (const auto& [w, part] : mx.parts) {
            const double hv = part->eval(x, v);
            if (hv == kInf) return kInf;
            s += w * hv;
        }
        return s;
    }

    double grid_eval(const forms::Grid& g, const Vec& x, const Vec& v) const {
        const Vec z = concat(x, v);
        const auto& spec = g.fn.spec;
        std::vector<std::size_t> cell(spec.dim);
        Vec frac(spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i) {
            const double lo = spec.lower[i], hi = spec.upper[i];
            if (z[i] < lo - 1e-12 || z[i] > hi + 1e-12) return kInf; // box-restricted
            if (spec.counts[i] == 1) {
                cell[i] = 0;
                frac[i] = 0.0;
                continue;
            }
            const double h = spec.spacing(i);
            double t = (std::clamp(z[i], lo, hi) - lo) / h;
            std::size_t c = std::min<std::size_t>(std::size_t(t), spec.counts[i] - 2);
            cell[i] = c;
            frac[i] = std::clamp(t - double(c), 0.0, 1.0);
        }
        // Multilinear interpolation; any +inf corner with nonzero weight
        // poisons the value. Exact at nodes.
        double acc = 0.0;
        const std::size_t corners = std::size_t(1) << spec.dim;
        auto strides = spec.strides();
        std::size_t base = 0;
        for (std::size_t i = 0; i < spec.dim; ++i) base += cell[i] * strides[i];
        for (std::size_t c = 0; c < corners; ++c) {
            double w = 1.0;
            std::size_t off = base;
            for (std::size_t i = 0; i < spec.dim; ++i) {
                if (c >> i & 1) {
                    w *= frac[i];
                    off += strides[i];
                } else {
                    w *= 1.0 - frac[i];
                }
            }
            if (w == 0.0) continue;
            const double val = g.fn.values[off];
            if (val == kInf) return kInf;
            acc += w * val;
        }
        return acc;
    }

    Vec grid_subgradient(const forms::Grid& g, const Vec& x, const Vec& v) const {
        const auto& spec = g.fn.spec;
        const Vec z = concat(x, v);
        auto idx = spec.nearest_index(z);
        const auto strides = spec.strides();
        std::size_t flat = spec.flatten(idx);
        Vec grad(spec.dim, 0.0);
        if (g.fn.values[flat] == kInf) return grad; // wall; projection handles it
        for (std::size_t i = 0; i < spec.dim; ++i) {
            const double h = spec.spacing(i);
            if (h == 0.0) continue;
            const double here = g.fn.values[flat];
            if (idx[i] + 1 < spec.counts[i] && g.fn.values[flat + strides[i]] != kInf)
                grad[i] = (g.fn.values[flat + strides[i]] - here) / h;
            else if (idx[i] > 0 && g.fn.values[flat - strides[i]] != kInf)
                grad[i] = (here - g.fn.values[flat - strides[i]]) / h;
        }
        return grad;
    }

    void grid_project(const forms::Grid& g, Vec& x, Vec& v) const {
        const auto& spec = g.fn.spec;
        for (std::size_t i = 0; i < n_; ++i) {
            x[i] = std::clamp(x[i], spec.lower[i], spec.upper[i]);
            v[i] = std::clamp(v[i], spec.lower[n_ + i], spec.upper[n_ + i]);
        }
        if (eval_impl(x, v) != kInf) return;
        // +inf is a hard wall: snap to the nearest finite node.
        const Vec z = concat(x, v);
        double best = kInf;
        std::size_t best_node = g.finite_nodes.front();
        for (std::size_t node : g.finite_nodes) {
            const Vec p = spec.node(node);
            double d2 = 0.0;
            for (std::size_t i = 0; i < spec.dim; ++i) d2 += (p[i] - z[i]) * (p[i] - z[i]);
            if (d2 < best) {
                best = d2;
                best_node = node;
            }
        }
        const Vec p = spec.node(best_node);
        for (std::size_t i = 0; i < n_; ++i) {
            x[i] = p[i];
            v[i] = p[n_ + i];
        }
    }

    std::size_t n_ = 0;
    Storage storage_;
};

/// J(h)(x,v) = h*(v,x) computed on a grid: sample h on eval_spec, take the
/// discrete conjugate with the same grid as dual, then swap the two
/// argument blocks (an on-grid move because the blocks are symmetric).
/// Conjugate-of-restriction semantics: the result lower-bounds the true
/// J(h), so "grid J(h) >= <x,v>" certificates are conservative.
inline GridFn j_transform_grid(const Representative& h, const GridSpec& eval_spec,
                               ConjMethod method = ConjMethod::brute_force) {
    eval_spec.validate();
    if (eval_spec.dim != 2 * h.dim())
        throw dimension_error("j_transform: eval grid must live on X x X*");
    if (!eval_spec.blocks_symmetric())
        throw error("j_transform: eval grid blocks must match so the block swap stays on-grid");

    Vec sampled(eval_spec.size());
    parallel_for(eval_spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            auto [x, v] = split_blocks(eval_spec.node(k));
            sampled[k] = h.eval(x, v);
        }
    });
    GridFn hs(eval_spec, std::move(sampled)); // properness enforced here
    GridFn conj = conjugate_nd(hs, eval_spec, method);

    const std::size_t n = h.dim();
    Vec swapped(conj.values.size());
    parallel_for(eval_spec.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            auto idx = eval_spec.unflatten(k);
            for (std::size_t i = 0; i < n; ++i) std::swap(idx[i], idx[n + i]);
            swapped[k] = conj.values[eval_spec.flatten(idx)];
        }
    });
    return GridFn(eval_spec, std::move(swapped));
}

inline Representative j_transform(const Representative& h, const GridSpec& eval_spec,
                                  ConjMethod method = ConjMethod::brute_force) {
    return Representative::grid(j_transform_grid(h, eval_spec, method));
}

/// Exact per-point J-transform for max-affine representatives.
inline double j_transform_exact(const MaxAffineFn& m, const Vec& x, const Vec& v) {
    return conjugate_max_affine(m, concat(v, x));
}

namespace detail {

struct GapMin {
    double min_gap = kInf;
    std::size_t arg = 0;
    bool any = false;
};

/// Minimum of f(x,v) - <x,v> over the box nodes, +inf values skipped;
/// first-index tie-break keeps the result thread-count independent.
template <typename F>
GapMin min_coupling_gap(F&& f, const GridSpec& box) {
    return parallel_reduce(
        box.size(), GapMin{},
        [&](GapMin& s, std::size_t b, std::size_t e) {
            for (std::size_t k = b; k < e; ++k) {
                auto [x, v] = split_blocks(box.node(k));
                const double fv = f(k, x, v);
                if (fv == kInf) continue;
                const double gap = fv - dot(x, v);
                if (!s.any || gap < s.min_gap) {
                    s.min_gap = gap;
                    s.arg = k;
                    s.any = true;
                }
            }
        },
        [](GapMin& acc, const GapMin& s) {
            if (s.any && (!acc.any || s.min_gap < acc.min_gap)) acc = s;
        });
}

} // namespace detail

// -- H(T) membership and minimality -------------------------------------------

struct MembershipVerdict {
    bool pass = false;
    bool coupling_bound_ok = false;  ///< h >= <x,v> - tol on the whole box
    bool graph_equality_ok = false;  ///< |h - <x,v>| <= tol on the graph
    double min_gap = kInf;
    Vec argmin_gap;
    double max_graph_dev = 0.0;
    std::size_t argmax_graph = 0;
};

/// Eq.-style membership test against a sampled graph: h must majorize the
/// coupling on the box and match it on the graph points. With finite
/// sampled graphs the tolerance is sampling-dependent (phi of a finite
/// graph dips below the coupling off the graph).
inline MembershipVerdict membership_check(const Representative& h, const OperatorGraph& g,
                                          const GridSpec& box, double tol) {
    if (box.dim != 2 * h.dim()) throw dimension_error("membership_check: box must be 2n-dimensional");
    require_dim(g.dim, h.dim(), "membership_check graph");

    MembershipVerdict verdict;
    const auto best = detail::min_coupling_gap(
        [&](std::size_t, const Vec& x, const Vec& v) { return h.eval(x, v); }, box);
    if (best.any) {
        verdict.min_gap = best.min_gap;
        verdict.argmin_gap = box.node(best.arg);
    } else {
        verdict.min_gap = 0.0; // h == +inf on the whole box
    }

    for (std::size_t i = 0; i < g.points.size(); ++i) {
        const auto& p = g.points[i];
        const double hv = h.eval(p.x, p.v);
        const double dev = hv == kInf ? kInf : std::abs(hv - dot(p.x, p.v));
        if (dev > verdict.max_graph_dev) {
            verdict.max_graph_dev = dev;
            verdict.argmax_graph = i;
        }
    }
    verdict.coupling_bound_ok = verdict.min_gap >= -tol;
    verdict.graph_equality_ok = verdict.max_graph_dev <= tol;
    verdict.pass = verdict.coupling_bound_ok && verdict.graph_equality_ok;
    return verdict;
}

struct MinimalityVerdict {
    bool pass = false;
    struct PerCandidate {
        MembershipVerdict membership;
        double max_excess = -kInf; ///< max of phi_G - candidate over the box
        bool below = false;
    };
    std::vector<PerCandidate> candidates;
};

/// Theorem-1.1 direction: phi_G is the smallest member of H(T), so every
/// (membership-passing) candidate must dominate it on the box.
inline MinimalityVerdict minimality_check(const OperatorGraph& g,
                                          const std::vector<Representative>& candidates,
                                          const GridSpec& box, double tol) {
    MinimalityVerdict verdict;
    verdict.pass = true;
    for (const auto& cand : candidates) {
        MinimalityVerdict::PerCandidate pc;
        pc.membership = membership_check(cand, g, box, tol);
        pc.max_excess = -kInf;
        for (std::size_t k = 0; k < box.size(); ++k) {
            auto [x, v] = split_blocks(box.node(k));
            const double cv = cand.eval(x, v);
            if (cv == kInf) continue;
            pc.max_excess = std::max(pc.max_excess, fitzpatrick_eval(g, x, v) - cv);
        }
        pc.below = pc.max_excess <= tol;
        verdict.pass = verdict.pass && pc.below && pc.membership.pass;
        verdict.candidates.push_back(std::move(pc));
    }
    return verdict;
}

} // namespace monorep
