#pragma once

#include <optional>
#include <variant>

#include "monorep/duality.hpp"
#include "monorep/grid.hpp"
#include "monorep/linalg.hpp"

namespace monorep {

struct PrimalDual {
    Vec x, v;
    bool operator==(const PrimalDual&) const = default;
};

/// Finite sample of an operator graph G(T) = {(x,v) : v in T(x)}.
struct OperatorGraph {
    std::size_t dim = 0;
    std::vector<PrimalDual> points;

    OperatorGraph() = default;
    OperatorGraph(std::size_t d, std::vector<PrimalDual> pts) : dim(d), points(std::move(pts)) {
        validate();
    }

    void validate() const {
        for (const auto& p : points) {
            require_dim(p.x.size(), dim, "OperatorGraph point x");
            require_dim(p.v.size(), dim, "OperatorGraph point v");
        }
        auto sorted = points;
        std::sort(sorted.begin(), sorted.end(), [](const PrimalDual& a, const PrimalDual& b) {
            return std::tie(a.x, a.v) < std::tie(b.x, b.v);
        });
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw error("OperatorGraph: duplicate (x,v) pair");
    }
};

struct MonotonicityReport {
    bool monotone = true;
    std::optional<std::pair<std::size_t, std::size_t>> violation;
    double min_pairing = kInf; ///< smallest <x_i-x_j, v_i-v_j> seen
};

/// <x_i-x_j, v_i-v_j> >= -tol for all pairs; the default slightly negative
/// tolerance absorbs rounding on exactly-orthogonal pairs (rotations).
inline MonotonicityReport monotonicity_check(const OperatorGraph& g, double tol = 1e-12) {
    MonotonicityReport rep;
    const std::size_t n = g.points.size();
    Vec dx(g.dim), dv(g.dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < g.dim; ++k)
                s += (g.points[i].x[k] - g.points[j].x[k]) * (g.points[i].v[k] - g.points[j].v[k]);
            rep.min_pairing = std::min(rep.min_pairing, s);
            if (s < -tol && !rep.violation) {
                rep.monotone = false;
                rep.violation = {i, j};
            }
        }
    }
    if (n < 2) rep.min_pairing = 0.0;
    return rep;
}

// -- analytic catalog ---------------------------------------------------------
//
// Every kind is maximal monotone with a closed-form resolvent under the
// Euclidean map, providing independent oracles for the solver.

struct LinearOp {
    Mat A;
};
struct SubdiffQuadraticOp {
    Mat A;
    Vec b;
};
struct NormalConeBoxOp {
    Vec lower, upper;
};
struct Rotation2dOp {
    double theta = 0.0;
};

class AnalyticOperator {
  public:
    using Storage = std::variant<LinearOp, SubdiffQuadraticOp, NormalConeBoxOp, Rotation2dOp>;

    static AnalyticOperator linear(Mat A) {
        if (A.rows != A.cols) throw dimension_error("linear operator: matrix must be square");
        if (detail::min_symmetric_eigenvalue(detail::to_eigen(A) +
                                             detail::to_eigen(A).transpose()) < -1e-10)
            throw error("linear operator: A + A' must be positive semidefinite");
        return AnalyticOperator(LinearOp{std::move(A)});
    }

    static AnalyticOperator subdiff_quadratic(Mat A, Vec b) {
        if (A.rows != A.cols || b.size() != A.rows)
            throw dimension_error("subdiff-quadratic operator: sizes disagree");
        const auto e = detail::to_eigen(A);
        if ((e - e.transpose()).cwiseAbs().maxCoeff() > 1e-10)
            throw error("subdiff-quadratic operator: A must be symmetric");
        if (detail::min_symmetric_eigenvalue(e) < -1e-10)
            throw error("subdiff-quadratic operator: A must be positive semidefinite");
        return AnalyticOperator(SubdiffQuadraticOp{std::move(A), std::move(b)});
    }

    static AnalyticOperator normal_cone_box(Vec lower, Vec upper) {
        if (lower.size() != upper.size() || lower.empty())
            throw dimension_error("normal-cone-box operator: bad bounds");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i])) throw error("normal-cone-box operator: lower > upper");
        return AnalyticOperator(NormalConeBoxOp{std::move(lower), std::move(upper)});
    }

    static AnalyticOperator rotation2d(double theta) {
        if (!(std::abs(theta) <= M_PI / 2 + 1e-15))
            throw error("rotation2d operator: |theta| must be <= pi/2 for monotonicity");
        return AnalyticOperator(Rotation2dOp{theta});
    }

    std::size_t dim() const {
        return std::visit(
            [](const auto& op) -> std::size_t {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, LinearOp>) return op.A.rows;
                else if constexpr (std::is_same_v<T, SubdiffQuadraticOp>) return op.A.rows;
                else if constexpr (std::is_same_v<T, NormalConeBoxOp>) return op.lower.size();
                else return 2;
            },
            storage_);
    }

    bool single_valued() const { return !std::holds_alternative<NormalConeBoxOp>(storage_); }

    /// T(x) for the single-valued kinds.
    Vec apply(const Vec& x) const {
        require_dim(x.size(), dim(), "AnalyticOperator::apply");
        if (const auto* lin = std::get_if<LinearOp>(&storage_)) return lin->A.apply(x);
        if (const auto* sq = std::get_if<SubdiffQuadraticOp>(&storage_)) {
            Vec v = sq->A.apply(x);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += sq->b[i];
            return v;
        }
        if (const auto* rot = std::get_if<Rotation2dOp>(&storage_)) {
            const double c = std::cos(rot->theta), s = std::sin(rot->theta);
            return {c * x[0] - s * x[1], s * x[0] + c * x[1]};
        }
        throw error("AnalyticOperator::apply: normal-cone-box is multivalued");
    }

    const Storage& storage() const { return storage_; }

  private:
    explicit AnalyticOperator(Storage s) : storage_(std::move(s)) {}
    Storage storage_;
};

struct FanOptions {
    std::size_t count = 5;  ///< normals emitted per active box face
    double scale = 1.0;     ///< magnitude of the largest fan normal
};

/// Pairs (x, T(x)) at each grid node; the normal-cone kind additionally
/// emits a finite fan of outward normals on active faces so the graph
/// stays finite for the max-affine Fitzpatrick builder.
inline OperatorGraph sample_graph(const AnalyticOperator& op, const GridSpec& box,
                                  FanOptions fan = {}) {
    require_dim(box.dim, op.dim(), "sample_graph box");
    std::vector<PrimalDual> pts;
    if (op.single_valued()) {
        pts.reserve(box.size());
        for (std::size_t k = 0; k < box.size(); ++k) {
            Vec x = box.node(k);
            pts.push_back({x, op.apply(x)});
        }
        return OperatorGraph(op.dim(), std::move(pts));
    }
    const auto& bx = std::get<NormalConeBoxOp>(op.storage());
    const std::size_t d = op.dim();
    auto on = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
    for (std::size_t k = 0; k < box.size(); ++k) {
        Vec x = box.node(k);
        bool inside = true;
        for (std::size_t i = 0; i < d && inside; ++i)
            inside = x[i] >= bx.lower[i] - 1e-12 && x[i] <= bx.upper[i] + 1e-12;
        if (!inside) continue; // normal cone empty outside the box
        pts.push_back({x, Vec(d, 0.0)});
        for (std::size_t i = 0; i < d; ++i) {
            double dir = 0.0;
            if (on(x[i], bx.lower[i]) && bx.lower[i] != bx.upper[i]) dir = -1.0;
            if (on(x[i], bx.upper[i])) dir = 1.0;
            if (dir == 0.0) continue;
            for (std::size_t f = 1; f <= fan.count; ++f) {
                Vec v(d, 0.0);
                v[i] = dir * fan.scale * double(f) / double(fan.count);
                pts.push_back({x, v});
            }
        }
    }
    return OperatorGraph(d, std::move(pts));
}

/// The unique x with v0 in T(x) + x (Euclidean duality map only); the
/// independent oracle behind the solver tests and the maximality probe.
inline Vec analytic_resolvent(const AnalyticOperator& op, const DualityMap& dm, const Vec& v0) {
    if (!dm.is_euclidean())
        throw error("analytic_resolvent: closed forms assume the Euclidean duality map");
    require_dim(v0.size(), op.dim(), "analytic_resolvent");
    const std::size_t n = op.dim();

    auto solve_shift = [&](const Eigen::MatrixXd& M, const Vec& rhs) {
        Eigen::MatrixXd S = M + Eigen::MatrixXd::Identity(long(n), long(n));
        return detail::from_eigen(S.partialPivLu().solve(detail::to_eigen(rhs)).eval());
    };

    if (const auto* lin = std::get_if<LinearOp>(&op.storage()))
        return solve_shift(detail::to_eigen(lin->A), v0);
    if (const auto* sq = std::get_if<SubdiffQuadraticOp>(&op.storage())) {
        Vec rhs(v0);
        for (std::size_t i = 0; i < n; ++i) rhs[i] -= sq->b[i];
        return solve_shift(detail::to_eigen(sq->A), rhs);
    }
    if (const auto* rot = std::get_if<Rotation2dOp>(&op.storage())) {
        const double c = std::cos(rot->theta), s = std::sin(rot->theta);
        Eigen::MatrixXd R(2, 2);
        R << c, -s, s, c;
        return solve_shift(R, v0);
    }
    const auto& bx = std::get<NormalConeBoxOp>(op.storage());
    Vec x(v0);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], bx.lower[i], bx.upper[i]);
    return x;
}

} // namespace monorep
