#pragma once

#include <Eigen/Dense>

#include "monorep/common.hpp"

namespace monorep::detail {

inline Eigen::MatrixXd to_eigen(const Mat& m) {
    Eigen::MatrixXd e(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) e(long(i), long(j)) = m(i, j);
    return e;
}

inline Eigen::VectorXd to_eigen(const Vec& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), long(v.size()));
}

inline Vec from_eigen(const Eigen::VectorXd& v) {
    return Vec(v.data(), v.data() + v.size());
}

inline double min_symmetric_eigenvalue(const Eigen::MatrixXd& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    return es.eigenvalues().minCoeff();
}

} // namespace monorep::detail
