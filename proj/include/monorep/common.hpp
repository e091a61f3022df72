#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace monorep {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Extended reals are plain doubles: +inf allowed, -inf and NaN rejected
/// at the boundaries where values enter the library.
inline bool is_extended(double x) { return !std::isnan(x) && x != -kInf; }

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dimension_error : error {
    using error::error;
};
struct properness_error : error {
    using error::error;
};
struct io_error : error {
    using error::error;
};
/// Extraction produced a non-monotone set (tolerance too loose, or the
/// input is not a representative).
struct inconsistency_error : error {
    std::size_t i = 0, j = 0;
    inconsistency_error(const std::string& msg, std::size_t i_, std::size_t j_)
        : error(msg), i(i_), j(j_) {}
};
struct infeasible_start_error : error {
    using error::error;
};

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw dimension_error(std::string(what) + ": expected dimension " +
                              std::to_string(want) + ", got " + std::to_string(got));
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense row-major matrix, just enough for the small systems in this library.
struct Mat {
    std::size_t rows = 0, cols = 0;
    Vec a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Vec apply(const Vec& x) const {
        Vec y(rows, 0.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) y[i] += a[i * cols + j] * x[j];
        return y;
    }

    Mat transposed() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

/// 17 significant digits: enough for bit-exact double round-trips.
inline std::string fmt17(double x) {
    if (x == kInf) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline unsigned thread_cap() {
    static unsigned cap = [] {
        unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("MONOREP_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
        }
        return hw;
    }();
    return cap;
}

} // namespace detail

/// Runs fn(begin, end) over a partition of [0, n) into contiguous chunks.
/// Chunks are disjoint, so results are bitwise independent of the thread
/// count as long as fn only writes to its own range.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads_override = 0) {
    if (n == 0) return;
    unsigned t = threads_override ? threads_override : detail::thread_cap();
    t = static_cast<unsigned>(std::min<std::size_t>(t, n));
    if (t <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(t);
    const std::size_t chunk = (n + t - 1) / t;
    for (unsigned k = 0; k < t; ++k) {
        const std::size_t b = std::min<std::size_t>(n, k * chunk);
        const std::size_t e = std::min<std::size_t>(n, b + chunk);
        if (b >= e) break;
        workers.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& w : workers) w.join();
}

/// Chunked reduction: fn(state, begin, end) accumulates into a chunk-local
/// state, comb folds chunk states in index order. Intended for min/max
/// style reductions with first-index tie-breaks, which are independent of
/// the partition and therefore of the thread count.
template <typename State, typename Fn, typename Combine>
State parallel_reduce(std::size_t n, State init, Fn&& fn, Combine&& comb,
                      unsigned threads_override = 0) {
    if (n == 0) return init;
    unsigned t = threads_override ? threads_override : detail::thread_cap();
    t = static_cast<unsigned>(std::min<std::size_t>(t, n));
    if (t <= 1) {
        State s = init;
        fn(s, std::size_t{0}, n);
        return s;
    }
    const std::size_t chunk = (n + t - 1) / t;
    std::vector<State> states(t, init);
    std::vector<std::thread> workers;
    workers.reserve(t);
    for (unsigned k = 0; k < t; ++k) {
        const std::size_t b = std::min<std::size_t>(n, k * chunk);
        const std::size_t e = std::min<std::size_t>(n, b + chunk);
        if (b >= e) break;
        workers.emplace_back([&fn, &states, k, b, e] { fn(states[k], b, e); });
    }
    for (auto& w : workers) w.join();
    State acc = init;
    for (const auto& s : states) comb(acc, s);
    return acc;
}

} // namespace monorep
