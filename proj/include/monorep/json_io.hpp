#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "monorep/witness.hpp"

namespace monorep {

using nlohmann::json;

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open file: " + path.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw io_error("malformed JSON in " + path.string() + ": " + e.what());
    }
}

inline Vec vec_from_json(const json& j, const char* field) {
    if (!j.is_array()) throw io_error(std::string("field '") + field + "' must be an array");
    Vec v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw io_error(std::string("field '") + field + "' must be numeric");
        v.push_back(e.get<double>());
    }
    return v;
}

inline Mat mat_from_json(const json& j, const char* field) {
    if (!j.is_array() || j.empty())
        throw io_error(std::string("field '") + field + "' must be a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Vec row = vec_from_json(j[i], field);
        if (row.size() != cols) throw io_error(std::string("field '") + field + "' is ragged");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
    }
    return m;
}

inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols; ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Box axes as [[lo, hi, count], ...].
inline GridSpec box_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw io_error("box: expected a nonempty array of axes");
    Vec lo, hi;
    std::vector<std::size_t> counts;
    for (const auto& axis : j) {
        if (!axis.is_array() || axis.size() != 3)
            throw io_error("box: each axis must be [lower, upper, count]");
        lo.push_back(axis[0].get<double>());
        hi.push_back(axis[1].get<double>());
        counts.push_back(axis[2].get<std::size_t>());
    }
    return GridSpec(std::move(lo), std::move(hi), std::move(counts));
}

inline json box_to_json(const GridSpec& spec) {
    json axes = json::array();
    for (std::size_t i = 0; i < spec.dim; ++i)
        axes.push_back(json::array({spec.lower[i], spec.upper[i], spec.counts[i]}));
    return axes;
}

/// "norm":"euclidean" or "norm":"weighted" with "weights":[...] inside the
/// enclosing spec object; absent means Euclidean.
inline DualityMap duality_from_json(const json& spec, std::size_t dim) {
    if (!spec.contains("norm")) return DualityMap::euclidean(dim);
    const auto& n = spec.at("norm");
    if (n.is_string() && n.get<std::string>() == "euclidean") return DualityMap::euclidean(dim);
    if (n.is_string() && n.get<std::string>() == "weighted") {
        if (!spec.contains("weights")) throw io_error("norm 'weighted' requires field 'weights'");
        return DualityMap::weighted(vec_from_json(spec.at("weights"), "weights"));
    }
    throw io_error("field 'norm' must be \"euclidean\" or \"weighted\"");
}

inline json duality_to_json(const DualityMap& dm) {
    json j;
    if (dm.is_euclidean()) {
        j["norm"] = "euclidean";
    } else {
        j["norm"] = "weighted";
        j["weights"] = dm.weights();
    }
    return j;
}

inline AnalyticOperator operator_from_json(const json& j) {
    if (!j.contains("kind")) throw io_error("operator spec: missing field 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear") return AnalyticOperator::linear(mat_from_json(j.at("A"), "A"));
    if (kind == "subdiff-quadratic") {
        Mat A = mat_from_json(j.at("A"), "A");
        Vec b = j.contains("b") ? vec_from_json(j.at("b"), "b") : Vec(A.rows, 0.0);
        return AnalyticOperator::subdiff_quadratic(std::move(A), std::move(b));
    }
    if (kind == "rotation2d") return AnalyticOperator::rotation2d(j.at("theta").get<double>());
    if (kind == "normal-cone-box")
        return AnalyticOperator::normal_cone_box(vec_from_json(j.at("lower"), "lower"),
                                                 vec_from_json(j.at("upper"), "upper"));
    throw io_error("operator spec: unknown kind '" + kind + "'");
}

inline json operator_to_json(const AnalyticOperator& op) {
    json j;
    if (const auto* lin = std::get_if<LinearOp>(&op.storage())) {
        j["kind"] = "linear";
        j["A"] = mat_to_json(lin->A);
    } else if (const auto* sq = std::get_if<SubdiffQuadraticOp>(&op.storage())) {
        j["kind"] = "subdiff-quadratic";
        j["A"] = mat_to_json(sq->A);
        j["b"] = sq->b;
    } else if (const auto* rot = std::get_if<Rotation2dOp>(&op.storage())) {
        j["kind"] = "rotation2d";
        j["theta"] = rot->theta;
    } else {
        const auto& bx = std::get<NormalConeBoxOp>(op.storage());
        j["kind"] = "normal-cone-box";
        j["lower"] = bx.lower;
        j["upper"] = bx.upper;
    }
    return j;
}

/// Graph either inline ({"dim":n, "points":[{"x":..,"v":..},...]}) or
/// sampled from an operator ({"operator":{...}, "box":[...], "fan_count":..}).
inline OperatorGraph graph_from_json(const json& j) {
    if (j.contains("points")) {
        if (!j.contains("dim")) throw io_error("graph spec: missing field 'dim'");
        std::vector<PrimalDual> pts;
        for (const auto& p : j.at("points"))
            pts.push_back({vec_from_json(p.at("x"), "x"), vec_from_json(p.at("v"), "v")});
        return OperatorGraph(j.at("dim").get<std::size_t>(), std::move(pts));
    }
    if (j.contains("operator")) {
        if (!j.contains("box")) throw io_error("graph spec: sampled graph needs field 'box'");
        FanOptions fan;
        if (j.contains("fan_count")) fan.count = j.at("fan_count").get<std::size_t>();
        if (j.contains("fan_scale")) fan.scale = j.at("fan_scale").get<double>();
        return sample_graph(operator_from_json(j.at("operator")), box_from_json(j.at("box")), fan);
    }
    throw io_error("graph spec: need either 'points' or 'operator'");
}

inline json graph_to_json(const OperatorGraph& g) {
    json j;
    j["dim"] = g.dim;
    json pts = json::array();
    for (const auto& p : g.points) pts.push_back(json{{"x", p.x}, {"v", p.v}});
    j["points"] = std::move(pts);
    return j;
}

inline Representative representative_from_json(const json& j,
                                               const std::filesystem::path& base_dir = {}) {
    if (!j.contains("form")) throw io_error("representative spec: missing field 'form'");
    const std::string form = j.at("form").get<std::string>();
    if (form == "fitzpatrick") return Representative::fitzpatrick(graph_from_json(j.at("graph")));
    if (form == "grid") {
        std::filesystem::path file = j.at("file").get<std::string>();
        if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
        std::ifstream is(file);
        if (!is) throw io_error("cannot open grid file: " + file.string());
        return Representative::grid(read_gridfn(is));
    }
    if (form == "closed") {
        const std::string id = j.at("id").get<std::string>();
        if (id == "identity-phi")
            return Representative::identity_phi(j.at("dim").get<std::size_t>());
        if (id == "identity-indicator")
            return Representative::identity_indicator(j.at("dim").get<std::size_t>());
        if (id == "linear-phi") {
            Mat A = mat_from_json(j.at("A"), "A");
            Vec b = j.contains("b") ? vec_from_json(j.at("b"), "b") : Vec{};
            return Representative::linear_phi(std::move(A), std::move(b));
        }
        if (id == "box-phi")
            return Representative::box_phi(vec_from_json(j.at("lower"), "lower"),
                                           vec_from_json(j.at("upper"), "upper"));
        throw io_error("representative spec: unknown closed-form id '" + id + "'");
    }
    if (form == "mix") {
        std::vector<std::pair<double, Representative>> parts;
        for (const auto& p : j.at("parts")) {
            if (!p.is_array() || p.size() != 2)
                throw io_error("mix spec: each part must be [weight, spec]");
            parts.emplace_back(p[0].get<double>(), representative_from_json(p[1], base_dir));
        }
        return Representative::mix(std::move(parts));
    }
    throw io_error("representative spec: unknown form '" + form + "'");
}

inline json certificate_to_json(const ResolventCertificate& c) {
    return json{{"x", c.x},
                {"v", c.v},
                {"v0", c.v0},
                {"gap", c.gap},
                {"fixedpoint_residual", c.fixedpoint_residual},
                {"C", c.C_value},
                {"iterations", c.iterations},
                {"accepted", c.accepted},
                {"input_verified", c.input_verified}};
}

inline json verify_verdict_to_json(const VerifyVerdict& v) {
    return json{{"pass", v.pass},
                {"h_bound_ok", v.h_bound_ok},
                {"jh_bound_ok", v.jh_bound_ok},
                {"min_gap_h", v.min_gap_h},
                {"argmin_h", v.argmin_h},
                {"min_gap_jh", v.min_gap_jh},
                {"argmin_jh", v.argmin_jh},
                {"semantics",
                 "grid J(h) is the conjugate of the grid restriction (a lower bound of the true "
                 "J(h)); PASS is a conservative certificate at grid points"}};
}

inline json probe_report_to_json(const ProbeReport& r) {
    json certs = json::array();
    for (const auto& c : r.certificates) certs.push_back(certificate_to_json(c));
    return json{{"probes", r.probes},
                {"accepted", r.accepted},
                {"fraction", r.fraction},
                {"certificates", std::move(certs)},
                {"semantics", "surjectivity evidence at the probed points only, not a proof"}};
}

} // namespace monorep
