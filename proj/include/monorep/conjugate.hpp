#pragma once

#include "monorep/grid.hpp"

namespace monorep {

/// brute_force is the default (O(N*M) per fiber); hull_sweep is the
/// linear-time monotone-slope variant and must agree with it to 1e-12.
enum class ConjMethod { brute_force, hull_sweep };

namespace detail {

/// out[j] = max_i (s[j]*x[i] + in[i]); entries with in[i] == -inf are
/// skipped, and out[j] = -inf when every entry is skipped. Intermediate
/// passes of the factorized n-D transform feed -inf fibers through here;
/// proper inputs never produce one in the final result.
inline void axis_max_brute(const Vec& xs, const double* in, std::size_t in_stride,
                           const Vec& ss, double* out, std::size_t out_stride) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
        double best = -kInf;
        const double s = ss[j];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double w = in[i * in_stride];
            if (w == -kInf) continue;
            const double val = s * xs[i] + w;
            if (val > best) best = val;
        }
        out[j * out_stride] = best;
    }
}

/// Convex-hull-trick variant: slopes xs are strictly increasing and the
/// query points ss are ascending, so the upper envelope of the lines
/// s -> xs[i]*s + in[i] can be built once and swept with one pointer.
inline void axis_max_hull(const Vec& xs, const double* in, std::size_t in_stride,
                          const Vec& ss, double* out, std::size_t out_stride,
                          std::vector<std::size_t>& env) {
    env.clear();
    auto slope = [&](std::size_t i) { return xs[i]; };
    auto icept = [&](std::size_t i) { return in[i * in_stride]; };
    // Line l2 never attains the max between l1 and l3 when its window
    // [isect(l1,l2), isect(l2,l3)] is empty.
    auto useless = [&](std::size_t l1, std::size_t l2, std::size_t l3) {
        return (icept(l1) - icept(l2)) * (slope(l3) - slope(l2)) >=
               (icept(l2) - icept(l3)) * (slope(l2) - slope(l1));
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (icept(i) == -kInf) continue;
        while (env.size() >= 2 && useless(env[env.size() - 2], env.back(), i)) env.pop_back();
        env.push_back(i);
    }
    if (env.empty()) {
        for (std::size_t j = 0; j < ss.size(); ++j) out[j * out_stride] = -kInf;
        return;
    }
    std::size_t p = 0;
    auto value = [&](std::size_t l, double s) { return slope(l) * s + icept(l); };
    for (std::size_t j = 0; j < ss.size(); ++j) {
        const double s = ss[j];
        while (p + 1 < env.size() && value(env[p + 1], s) >= value(env[p], s)) ++p;
        out[j * out_stride] = value(env[p], s);
    }
}

} // namespace detail

/// Discrete conjugate g(s) = max over grid points x of (<s,x> - f(x)).
/// This is the conjugate of the grid restriction of f, hence a pointwise
/// lower bound of the true conjugate of any extension of f.
inline GridFn conjugate_nd(const GridFn& f, const GridSpec& dual,
                           ConjMethod method = ConjMethod::brute_force) {
    dual.validate();
    if (f.spec.dim != dual.dim)
        throw dimension_error("conjugate_nd: primal and dual grids must share dim");

    const std::size_t d = f.spec.dim;
    Vec work(f.values.size());
    for (std::size_t k = 0; k < work.size(); ++k)
        work[k] = f.values[k] == kInf ? -kInf : -f.values[k];

    auto counts = f.spec.counts;
    for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t n_in = counts[axis];
        const std::size_t n_out = dual.counts[axis];
        std::size_t outer = 1, inner = 1;
        for (std::size_t i = 0; i < axis; ++i) outer *= counts[i];
        for (std::size_t i = axis + 1; i < d; ++i) inner *= counts[i];

        Vec xs(n_in), ss(n_out);
        for (std::size_t k = 0; k < n_in; ++k) xs[k] = f.spec.coord(axis, k);
        for (std::size_t k = 0; k < n_out; ++k) ss[k] = dual.coord(axis, k);

        Vec next(outer * n_out * inner);
        const std::size_t n_fibers = outer * inner;
        parallel_for(n_fibers, [&](std::size_t fb, std::size_t fe) {
            std::vector<std::size_t> env;
            for (std::size_t p = fb; p < fe; ++p) {
                const std::size_t o = p / inner, r = p % inner;
                const double* in = work.data() + o * n_in * inner + r;
                double* out = next.data() + o * n_out * inner + r;
                if (method == ConjMethod::hull_sweep)
                    detail::axis_max_hull(xs, in, inner, ss, out, inner, env);
                else
                    detail::axis_max_brute(xs, in, inner, ss, out, inner);
            }
        });
        work = std::move(next);
        counts[axis] = n_out;
    }
    return GridFn(dual, std::move(work));
}

inline GridFn conjugate_1d(const GridFn& f, const GridSpec& dual,
                           ConjMethod method = ConjMethod::brute_force) {
    if (f.spec.dim != 1) throw dimension_error("conjugate_1d: input must be one-dimensional");
    return conjugate_nd(f, dual, method);
}

/// Two conjugations on the function's own grid: the grid-level closed
/// convex hull. Always <= f pointwise, and idempotent at the level of
/// conjugates (f*** = f*).
inline GridFn biconjugate(const GridFn& f, ConjMethod method = ConjMethod::brute_force) {
    return conjugate_nd(conjugate_nd(f, f.spec, method), f.spec, method);
}

} // namespace monorep
