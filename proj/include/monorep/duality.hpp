#pragma once

#include <optional>

#include "monorep/common.hpp"

namespace monorep {

struct PairingDefect {
    double value = 0.0;
    /// Present iff value is within tolerance of zero; then it equals -J(z)
    /// and u must coincide with it.
    std::optional<Vec> equality_witness;
};

/// A smooth norm on R^n with its duality map J = grad((1/2)||.||^2) and
/// inverse J_*. Euclidean (J = identity) or weighted Euclidean
/// (||x||^2 = sum w_i x_i^2, dual norm ||v||_*^2 = sum v_i^2 / w_i).
/// Both are Gateaux-smooth off the origin, so no renorming is needed.
class DualityMap {
  public:
    enum class Kind { euclidean, weighted };

    static DualityMap euclidean(std::size_t dim) { return DualityMap(Kind::euclidean, Vec(dim, 1.0)); }

    static DualityMap weighted(Vec weights) {
        for (double w : weights)
            if (!(w > 0.0) || !std::isfinite(w))
                throw error("DualityMap: weights must be positive and finite");
        return DualityMap(Kind::weighted, std::move(weights));
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return weights_.size(); }
    const Vec& weights() const { return weights_; }
    bool is_euclidean() const { return kind_ == Kind::euclidean; }

    double norm_sq(const Vec& x) const {
        require_dim(x.size(), dim(), "DualityMap::norm");
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += weights_[i] * x[i] * x[i];
        return s;
    }
    double norm(const Vec& x) const { return std::sqrt(norm_sq(x)); }

    double dual_norm_sq(const Vec& v) const {
        require_dim(v.size(), dim(), "DualityMap::dual_norm");
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * v[i] / weights_[i];
        return s;
    }
    double dual_norm(const Vec& v) const { return std::sqrt(dual_norm_sq(v)); }

    /// J(x): gradient of (1/2)||x||^2; satisfies <x,J(x)> = ||x||^2 = ||J(x)||_*^2.
    Vec jmap(const Vec& x) const {
        require_dim(x.size(), dim(), "DualityMap::jmap");
        Vec y(x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] *= weights_[i];
        return y;
    }

    /// J_*(v): exact inverse of J, gradient of (1/2)||v||_*^2.
    Vec jstar(const Vec& v) const {
        require_dim(v.size(), dim(), "DualityMap::jstar");
        Vec y(v);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] /= weights_[i];
        return y;
    }

    /// ||z||^2 + ||u||_*^2 + 2<z,u>, always >= 0, with equality iff u = -J(z).
    PairingDefect pairing_defect(const Vec& z, const Vec& u, double tol = 1e-9) const {
        require_dim(u.size(), z.size(), "DualityMap::pairing_defect");
        PairingDefect pd;
        pd.value = norm_sq(z) + dual_norm_sq(u) + 2.0 * dot(z, u);
        if (pd.value <= tol) {
            Vec w = jmap(z);
            for (double& c : w) c = -c;
            pd.equality_witness = std::move(w);
        }
        return pd;
    }

  private:
    DualityMap(Kind k, Vec w) : kind_(k), weights_(std::move(w)) {
        if (weights_.empty()) throw dimension_error("DualityMap: dimension must be positive");
    }

    Kind kind_;
    Vec weights_;
};

} // namespace monorep
