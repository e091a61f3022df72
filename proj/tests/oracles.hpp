#pragma once

// Test-only oracles, kept independent of the library's transform paths:
// the conjugation oracle is a direct double loop over grid nodes, and the
// RNG helpers produce deterministic inputs for the property tests.

#include <random>

#include "monorep/grid.hpp"

namespace oracle {

/// Brute-force discrete conjugate: g(s) = max over grid nodes x of
/// (<s,x> - f(x)), computed without any factorization or fiber tricks.
inline monorep::GridFn brute_conjugate(const monorep::GridFn& f, const monorep::GridSpec& dual) {
    monorep::Vec out(dual.size(), -monorep::kInf);
    for (std::size_t j = 0; j < dual.size(); ++j) {
        const monorep::Vec s = dual.node(j);
        double best = -monorep::kInf;
        for (std::size_t k = 0; k < f.spec.size(); ++k) {
            if (f.values[k] == monorep::kInf) continue;
            const monorep::Vec x = f.spec.node(k);
            double val = -f.values[k];
            for (std::size_t i = 0; i < s.size(); ++i) val += s[i] * x[i];
            if (val > best) best = val;
        }
        out[j] = best;
    }
    return monorep::GridFn(dual, std::move(out));
}

/// Random proper grid function: finite values in [-3, 3] with an optional
/// sprinkle of +inf (always keeping at least one finite value).
inline monorep::GridFn random_gridfn(std::mt19937& rng, const monorep::GridSpec& spec,
                                     double inf_fraction = 0.0) {
    std::uniform_real_distribution<double> val(-3.0, 3.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    monorep::Vec vals(spec.size());
    for (auto& v : vals) v = coin(rng) < inf_fraction ? monorep::kInf : val(rng);
    if (std::all_of(vals.begin(), vals.end(), [](double v) { return v == monorep::kInf; }))
        vals[0] = 0.0;
    return monorep::GridFn(spec, std::move(vals));
}

inline monorep::Vec random_vec(std::mt19937& rng, std::size_t n, double lo = -2.0,
                               double hi = 2.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    monorep::Vec v(n);
    for (auto& c : v) c = d(rng);
    return v;
}

} // namespace oracle
