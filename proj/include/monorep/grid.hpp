#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

#include "monorep/common.hpp"

namespace monorep {

/// Regular box grid over R^d. Point k on axis i sits at
/// lower[i] + k*(upper[i]-lower[i])/(counts[i]-1); a one-point axis
/// (counts[i]==1) pins the axis at lower[i]==upper[i].
struct GridSpec {
    std::size_t dim = 0;
    Vec lower, upper;
    std::vector<std::size_t> counts;

    GridSpec() = default;
    GridSpec(Vec lo, Vec hi, std::vector<std::size_t> n)
        : dim(lo.size()), lower(std::move(lo)), upper(std::move(hi)), counts(std::move(n)) {
        validate();
    }

    /// Same axis replicated dim times.
    static GridSpec uniform(std::size_t dim, double lo, double hi, std::size_t count) {
        return GridSpec(Vec(dim, lo), Vec(dim, hi), std::vector<std::size_t>(dim, count));
    }

    /// Concatenation of two blocks, e.g. X and X* into X x X*.
    static GridSpec product(const GridSpec& a, const GridSpec& b) {
        Vec lo(a.lower), hi(a.upper);
        lo.insert(lo.end(), b.lower.begin(), b.lower.end());
        hi.insert(hi.end(), b.upper.begin(), b.upper.end());
        auto n = a.counts;
        n.insert(n.end(), b.counts.begin(), b.counts.end());
        return GridSpec(std::move(lo), std::move(hi), std::move(n));
    }

    void validate() const {
        if (dim == 0) throw dimension_error("GridSpec: dim must be positive");
        if (lower.size() != dim || upper.size() != dim || counts.size() != dim)
            throw dimension_error("GridSpec: axis arrays must all have length dim");
        for (std::size_t i = 0; i < dim; ++i) {
            if (counts[i] == 0) throw error("GridSpec: counts must be positive");
            if (counts[i] == 1) {
                if (lower[i] != upper[i])
                    throw error("GridSpec: one-point axis needs lower == upper");
            } else if (!(lower[i] < upper[i])) {
                throw error("GridSpec: lower must be < upper on axis " + std::to_string(i));
            }
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
                throw error("GridSpec: bounds must be finite");
        }
    }

    std::size_t size() const {
        std::size_t n = 1;
        for (auto c : counts) n *= c;
        return n;
    }

    double spacing(std::size_t axis) const {
        return counts[axis] < 2 ? 0.0 : (upper[axis] - lower[axis]) / double(counts[axis] - 1);
    }

    double coord(std::size_t axis, std::size_t k) const {
        if (k == 0) return lower[axis];
        if (k == counts[axis] - 1) return upper[axis]; // endpoints exact
        return lower[axis] + double(k) * (upper[axis] - lower[axis]) / double(counts[axis] - 1);
    }

    /// Row-major strides; last axis is contiguous.
    std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(dim, 1);
        for (std::size_t i = dim; i-- > 1;) s[i - 1] = s[i] * counts[i];
        return s;
    }

    std::vector<std::size_t> unflatten(std::size_t flat) const {
        std::vector<std::size_t> idx(dim);
        for (std::size_t i = dim; i-- > 0;) {
            idx[i] = flat % counts[i];
            flat /= counts[i];
        }
        return idx;
    }

    std::size_t flatten(const std::vector<std::size_t>& idx) const {
        std::size_t f = 0;
        for (std::size_t i = 0; i < dim; ++i) f = f * counts[i] + idx[i];
        return f;
    }

    Vec node(std::size_t flat) const {
        auto idx = unflatten(flat);
        Vec p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = coord(i, idx[i]);
        return p;
    }

    /// Index of the grid node nearest to p (after clamping into the box).
    std::vector<std::size_t> nearest_index(const Vec& p) const {
        require_dim(p.size(), dim, "GridSpec::nearest_index");
        std::vector<std::size_t> idx(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (counts[i] == 1) {
                idx[i] = 0;
                continue;
            }
            const double h = spacing(i);
            double t = (p[i] - lower[i]) / h;
            long k = std::lround(t);
            k = std::clamp<long>(k, 0, long(counts[i] - 1));
            idx[i] = static_cast<std::size_t>(k);
        }
        return idx;
    }

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && lower == o.lower && upper == o.upper && counts == o.counts;
    }

    /// True when the first half of the axes equals the second half, so the
    /// (x,v) -> (v,x) block swap maps grid nodes to grid nodes.
    bool blocks_symmetric() const {
        if (dim % 2 != 0) return false;
        const std::size_t n = dim / 2;
        for (std::size_t i = 0; i < n; ++i)
            if (lower[i] != lower[n + i] || upper[i] != upper[n + i] || counts[i] != counts[n + i])
                return false;
        return true;
    }
};

/// Extended-real function sampled on a grid: finite or +inf, never -inf,
/// and proper (at least one finite value).
struct GridFn {
    GridSpec spec;
    Vec values;

    GridFn() = default;
    GridFn(GridSpec s, Vec v) : spec(std::move(s)), values(std::move(v)) { validate(); }

    void validate() const {
        spec.validate();
        if (values.size() != spec.size())
            throw dimension_error("GridFn: values length must equal the grid size");
        bool any_finite = false;
        for (double x : values) {
            if (!is_extended(x)) throw properness_error("GridFn: -inf and NaN are not representable");
            if (x != kInf) any_finite = true;
        }
        if (!any_finite) throw properness_error("GridFn: all values are +inf (not proper)");
    }

    double operator[](std::size_t flat) const { return values[flat]; }
};

// -- text format -------------------------------------------------------------
//
//   gridfn v1
//   dim d
//   axis i lower upper count        (d lines)
//   one value per line, row-major; `inf` for +inf

inline void write_gridfn(std::ostream& os, const GridFn& f) {
    os << "gridfn v1\n";
    os << "dim " << f.spec.dim << "\n";
    for (std::size_t i = 0; i < f.spec.dim; ++i)
        os << "axis " << i << " " << fmt17(f.spec.lower[i]) << " " << fmt17(f.spec.upper[i])
           << " " << f.spec.counts[i] << "\n";
    for (double v : f.values) os << fmt17(v) << "\n";
}

inline GridFn read_gridfn(std::istream& is) {
    std::string line;
    auto next_line = [&](const char* what) {
        if (!std::getline(is, line)) throw io_error(std::string("gridfn: missing ") + what);
        return line;
    };
    if (next_line("header") != "gridfn v1") throw io_error("gridfn: bad header, expected 'gridfn v1'");

    std::istringstream dim_line(next_line("dim line"));
    std::string tok;
    std::size_t d = 0;
    if (!(dim_line >> tok >> d) || tok != "dim" || d == 0) throw io_error("gridfn: bad dim line");

    Vec lo(d), hi(d);
    std::vector<std::size_t> counts(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::istringstream ax(next_line("axis line"));
        std::size_t idx = 0;
        if (!(ax >> tok >> idx >> lo[i] >> hi[i] >> counts[i]) || tok != "axis" || idx != i)
            throw io_error("gridfn: bad axis line " + std::to_string(i));
    }
    GridSpec spec(std::move(lo), std::move(hi), std::move(counts));

    Vec vals;
    vals.reserve(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        std::string v = next_line("value");
        if (v == "inf" || v == "+inf") {
            vals.push_back(kInf);
        } else {
            char* end = nullptr;
            const double x = std::strtod(v.c_str(), &end);
            if (end == v.c_str()) throw io_error("gridfn: unparsable value '" + v + "'");
            vals.push_back(x);
        }
    }
    return GridFn(std::move(spec), std::move(vals));
}

} // namespace monorep
