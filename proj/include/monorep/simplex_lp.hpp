#pragma once

#include "monorep/common.hpp"

namespace monorep {

/// Two-phase dense tableau simplex for
///     min c'x  s.t.  A x = b,  x >= 0.
/// Bland's rule on both the entering and leaving choice, so degenerate
/// problems terminate. Sized for the small systems this library builds
/// (a handful of equality rows, up to a few thousand columns).
struct SimplexResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::optimal;
    double objective = 0.0;
    Vec x;
};

class DenseSimplex {
  public:
    explicit DenseSimplex(double pivot_eps = 1e-11, double cost_eps = 1e-10)
        : pivot_eps_(pivot_eps), cost_eps_(cost_eps) {}

    SimplexResult solve(const Mat& A, const Vec& b, const Vec& c,
                        std::size_t iter_cap = 200000) const {
        const std::size_t m = A.rows, n = A.cols;
        if (b.size() != m || c.size() != n)
            throw dimension_error("DenseSimplex: inconsistent system sizes");

        // Tableau rows: m constraints then the objective row; columns:
        // n structural, m artificial, rhs.
        const std::size_t cols = n + m + 1;
        std::vector<Vec> t(m + 1, Vec(cols, 0.0));
        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double sign = b[i] < 0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * A(i, j);
            t[i][n + i] = 1.0;
            t[i][cols - 1] = sign * b[i];
            basis[i] = n + i;
        }

        // Phase 1: minimize the sum of artificials.
        Vec& z = t[m];
        for (std::size_t j = 0; j < cols; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += t[i][j];
            z[j] = (j >= n && j < n + m ? 1.0 : 0.0) - s;
        }
        if (!iterate(t, basis, n + m, iter_cap)) return {SimplexResult::Status::unbounded, 0.0, {}};
        if (-z[cols - 1] > 1e-7)
            return {SimplexResult::Status::infeasible, 0.0, {}};

        // Drive remaining artificials out of the basis; a row where no
        // structural column can pivot is redundant and is dropped.
        for (std::size_t i = 0; i < basis.size();) {
            if (basis[i] < n) {
                ++i;
                continue;
            }
            std::size_t e = n;
            for (std::size_t j = 0; j < n; ++j)
                if (std::abs(t[i][j]) > pivot_eps_) {
                    e = j;
                    break;
                }
            if (e < n) {
                pivot(t, basis, i, e);
                ++i;
            } else {
                t.erase(t.begin() + long(i));
                basis.erase(basis.begin() + long(i));
            }
        }
        const std::size_t mr = basis.size();

        // Phase 2 over the structural columns only.
        Vec& z2 = t[mr];
        for (std::size_t j = 0; j < cols; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < mr; ++i) s += c[basis[i]] * t[i][j];
            z2[j] = (j < n ? c[j] : 0.0) - s;
        }
        if (!iterate(t, basis, n, iter_cap)) return {SimplexResult::Status::unbounded, 0.0, {}};

        SimplexResult res;
        res.status = SimplexResult::Status::optimal;
        res.x.assign(n, 0.0);
        for (std::size_t i = 0; i < mr; ++i)
            if (basis[i] < n) res.x[basis[i]] = std::max(0.0, t[i][cols - 1]);
        res.objective = dot(c, res.x);
        return res;
    }

  private:
    double pivot_eps_, cost_eps_;

    void pivot(std::vector<Vec>& t, std::vector<std::size_t>& basis, std::size_t r,
               std::size_t e) const {
        const std::size_t cols = t[r].size();
        const double piv = t[r][e];
        for (std::size_t j = 0; j < cols; ++j) t[r][j] /= piv;
        t[r][e] = 1.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == r) continue;
            const double f = t[i][e];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[r][j];
            t[i][e] = 0.0;
        }
        if (r < basis.size()) basis[r] = e;
    }

    /// One simplex phase. `n_avail` limits the entering columns (phase 2
    /// excludes the artificials). Returns false on an unbounded ray.
    bool iterate(std::vector<Vec>& t, std::vector<std::size_t>& basis, std::size_t n_avail,
                 std::size_t iter_cap) const {
        const std::size_t m = basis.size();
        const std::size_t cols = t[0].size();
        Vec& z = t[m];
        for (std::size_t iter = 0; iter < iter_cap; ++iter) {
            // Bland: lowest-index column with a negative reduced cost.
            std::size_t e = n_avail;
            for (std::size_t j = 0; j < n_avail; ++j)
                if (z[j] < -cost_eps_) {
                    e = j;
                    break;
                }
            if (e == n_avail) return true; // optimal

            std::size_t r = m;
            double best_ratio = kInf;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][e] <= pivot_eps_) continue;
                const double ratio = t[i][cols - 1] / t[i][e];
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (r == m || basis[i] < basis[r]))) {
                    best_ratio = ratio;
                    r = i;
                }
            }
            if (r == m) return false; // unbounded
            pivot(t, basis, r, e);
        }
        throw error("DenseSimplex: iteration cap exceeded");
    }
};

} // namespace monorep
