#pragma once

// Left-half-plane eigenvalue count of a doubly cyclic matrix by a dense eigensolver.
// Double precision first; when an eigenvalue falls inside the rounding radius
// eps * ||X||, the count is redone with 60-digit arithmetic.

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "core.hpp"

namespace dcroots {

struct EigenCount {
    int left = 0;   // Re lambda < 0
    int zero = 0;   // |Re lambda| within the uncertainty radius
    int right = 0;
    int digits = 16;
    double uncertainty = 0.0;
    double min_abs_real = 0.0;
};

namespace detail {

using wide_float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>,
                                                 boost::multiprecision::et_off>;

template <class Scalar>
EigenCount count_eigen_signs(const DCMatrix& m, double unit_roundoff, int digits) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const auto n = static_cast<Eigen::Index>(m.size());
    Mat x = Mat::Zero(n, n);
    double frob = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        x(i, i) = Scalar(m.a()[ui]);
        x(i, static_cast<Eigen::Index>(m.perm()[ui])) = -Scalar(m.b()[ui]);
        frob += m.a()[ui] * m.a()[ui] + m.b()[ui] * m.b()[ui];
    }
    Eigen::EigenSolver<Mat> es(x, false);
    if (es.info() != Eigen::Success) throw SolverError("count_left_eigenvalues: eigensolver failed", {});
    EigenCount r;
    r.digits = digits;
    r.uncertainty = 1e3 * unit_roundoff * std::sqrt(frob) * static_cast<double>(n);
    r.min_abs_real = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = static_cast<double>(es.eigenvalues()[i].real());
        r.min_abs_real = std::min(r.min_abs_real, std::abs(re));
        if (std::abs(re) <= r.uncertainty) ++r.zero;
        else if (re < 0.0) ++r.left;
        else ++r.right;
    }
    return r;
}

}  // namespace detail

inline EigenCount count_left_eigenvalues(const DCMatrix& m) {
    EigenCount r = detail::count_eigen_signs<double>(m, std::numeric_limits<double>::epsilon(), 16);
    if (r.zero == 0) return r;
    return detail::count_eigen_signs<detail::wide_float>(m, 1e-60, 60);
}

}  // namespace dcroots
