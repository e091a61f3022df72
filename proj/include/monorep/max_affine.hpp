#pragma once

#include "monorep/simplex_lp.hpp"

namespace monorep {

struct MaxAffinePiece {
    Vec slope;
    double offset = 0.0;
};

/// Finite max of affine maps p -> <slope,p> + offset. Convex and finite
/// everywhere; the exact carrier for Fitzpatrick functions of finite graphs.
struct MaxAffineFn {
    std::size_t dim = 0;
    std::vector<MaxAffinePiece> pieces;

    MaxAffineFn() = default;
    MaxAffineFn(std::size_t d, std::vector<MaxAffinePiece> ps) : dim(d), pieces(std::move(ps)) {
        validate();
    }

    void validate() const {
        if (pieces.empty()) throw error("MaxAffineFn: needs at least one piece");
        for (const auto& p : pieces)
            require_dim(p.slope.size(), dim, "MaxAffineFn piece");
    }
};

inline double eval_max_affine(const MaxAffineFn& m, const Vec& p) {
    require_dim(p.size(), m.dim, "eval_max_affine");
    double best = -kInf;
    for (const auto& piece : m.pieces) best = std::max(best, dot(piece.slope, p) + piece.offset);
    return best;
}

/// Lowest-index maximizing piece (deterministic subgradient selection).
inline std::size_t argmax_piece(const MaxAffineFn& m, const Vec& p) {
    require_dim(p.size(), m.dim, "argmax_piece");
    std::size_t arg = 0;
    double best = -kInf;
    for (std::size_t j = 0; j < m.pieces.size(); ++j) {
        const double val = dot(m.pieces[j].slope, p) + m.pieces[j].offset;
        if (val > best) {
            best = val;
            arg = j;
        }
    }
    return arg;
}

/// Exact conjugate of a max-affine function at q:
///     m*(q) = min { -sum_j lambda_j offset_j :
///                   sum_j lambda_j slope_j = q, lambda in the unit simplex },
/// and +inf when q falls outside the convex hull of the slopes. The
/// simplex LP keeps this exact (up to roundoff), unlike grid conjugation.
inline double conjugate_max_affine(const MaxAffineFn& m, const Vec& q) {
    require_dim(q.size(), m.dim, "conjugate_max_affine");
    const std::size_t d = m.dim, n = m.pieces.size();
    Mat A(d + 1, n);
    Vec c(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < d; ++k) A(k, j) = m.pieces[j].slope[k];
        A(d, j) = 1.0;
        c[j] = -m.pieces[j].offset;
    }
    Vec b(q);
    b.push_back(1.0);
    const auto res = DenseSimplex().solve(A, b, c);
    switch (res.status) {
        case SimplexResult::Status::optimal: return res.objective;
        case SimplexResult::Status::infeasible: return kInf;
        case SimplexResult::Status::unbounded:
            throw error("conjugate_max_affine: LP unbounded (cannot happen on the simplex)");
    }
    return kInf;
}

} // namespace monorep
