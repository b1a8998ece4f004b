#pragma once

// Domain types for the half-plane root problem P(z; c) = prod (z + c_k) = 1
// and for the doubly cyclic matrices it comes from.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace dcroots {

using Complex = std::complex<double>;

/// Geometric mean computed in log space. Throws DomainError on a nonpositive entry.
/// A constant sequence returns its common value bit-exactly.
inline double geometric_mean(std::span<const double> entries) {
    if (entries.empty()) throw DomainError("geometric_mean: empty sequence");
    double log_sum = 0.0;
    bool all_equal = true;
    for (double x : entries) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw DomainError("geometric_mean: entries must be finite and positive");
        log_sum += std::log(x);
        all_equal = all_equal && x == entries.front();
    }
    if (all_equal) return entries.front();
    return std::exp(log_sum / static_cast<double>(entries.size()));
}

/// Reduced parameter vector c: positive entries held in ascending order, with
/// the geometric mean cached.
class CoefficientVector {
public:
    CoefficientVector() = default;

    explicit CoefficientVector(std::vector<double> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw DomainError("CoefficientVector: empty");
        std::sort(entries_.begin(), entries_.end());
        gamma_ = geometric_mean(entries_);
    }

    /// The multi-singleton c* = (gamma, ..., gamma).
    static CoefficientVector ideal(std::size_t n, double gamma) {
        if (n == 0) throw DomainError("CoefficientVector::ideal: n must be positive");
        return CoefficientVector(std::vector<double>(n, gamma));
    }

    [[nodiscard]] std::span<const double> entries() const { return entries_; }
    [[nodiscard]] const std::vector<double>& vec() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] double min() const { return entries_.front(); }
    [[nodiscard]] double max() const { return entries_.back(); }
    [[nodiscard]] double operator[](std::size_t i) const { return entries_[i]; }

    [[nodiscard]] bool is_ideal() const { return entries_.front() == entries_.back(); }

    friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

private:
    std::vector<double> entries_;
    double gamma_ = 0.0;
};

/// d-notation: distinct values d_0 < ... < d_q with multiplicities m_0 ... m_q.
/// q (number of gaps) is the diversity.
class DMultiset {
public:
    DMultiset() = default;

    DMultiset(std::vector<double> values, std::vector<int> mults)
        : values_(std::move(values)), mults_(std::move(mults)) {
        if (values_.empty() || values_.size() != mults_.size())
            throw DomainError("DMultiset: values and mults must be nonempty and equally long");
        for (std::size_t j = 0; j < values_.size(); ++j) {
            if (!(values_[j] > 0.0) || !std::isfinite(values_[j]))
                throw DomainError("DMultiset: values must be finite and positive");
            if (mults_[j] <= 0) throw DomainError("DMultiset: multiplicities must be positive");
            if (j > 0 && !(values_[j - 1] < values_[j]))
                throw DomainError("DMultiset: values must be strictly ascending");
        }
    }

    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] const std::vector<int>& mults() const { return mults_; }
    [[nodiscard]] std::size_t q() const { return values_.size() - 1; }
    [[nodiscard]] int n() const { return std::accumulate(mults_.begin(), mults_.end(), 0); }

    /// n-th root of prod d_j^{m_j}, in log space.
    [[nodiscard]] double gamma() const {
        if (values_.size() == 1) return values_.front();
        double s = 0.0;
        for (std::size_t j = 0; j < values_.size(); ++j) s += mults_[j] * std::log(values_[j]);
        return std::exp(s / n());
    }

    friend bool operator==(const DMultiset&, const DMultiset&) = default;

private:
    std::vector<double> values_;
    std::vector<int> mults_;
};

/// Groups exactly equal entries. No epsilon: near-duplicates stay distinct.
inline DMultiset to_multiset(const CoefficientVector& c) {
    std::vector<double> values;
    std::vector<int> mults;
    for (double x : c.entries()) {
        if (!values.empty() && values.back() == x) {
            ++mults.back();
        } else {
            values.push_back(x);
            mults.push_back(1);
        }
    }
    return {std::move(values), std::move(mults)};
}

inline CoefficientVector from_multiset(const DMultiset& d) {
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(d.n()));
    for (std::size_t j = 0; j < d.values().size(); ++j)
        entries.insert(entries.end(), static_cast<std::size_t>(d.mults()[j]), d.values()[j]);
    return CoefficientVector(std::move(entries));
}

/// Shift cycle perm[i] = i + 1 (mod n).
inline std::vector<std::size_t> shift_cycle(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
    return p;
}

inline bool is_single_cycle(std::span<const std::size_t> perm) {
    const std::size_t n = perm.size();
    if (n == 0) return false;
    std::vector<bool> seen(n, false);
    std::size_t i = 0;
    for (std::size_t step = 0; step < n; ++step) {
        if (perm[i] >= n || seen[i]) return false;
        seen[i] = true;
        i = perm[i];
    }
    return i == 0;
}

/// X = diag(a) - B * Sigma where row i carries -b_i in column perm[i].
/// With the shift cycle this is the cyclic bidiagonal matrix with corner -b_n.
class DCMatrix {
public:
    DCMatrix(std::vector<double> a, std::vector<double> b)
        : DCMatrix(std::move(a), std::move(b), {}) {}

    DCMatrix(std::vector<double> a, std::vector<double> b, std::vector<std::size_t> perm)
        : a_(std::move(a)), b_(std::move(b)), perm_(std::move(perm)) {
        if (a_.size() < 2 || a_.size() != b_.size())
            throw DomainError("DCMatrix: a and b must have equal length >= 2");
        if (perm_.empty()) perm_ = shift_cycle(a_.size());
        if (perm_.size() != a_.size() || !is_single_cycle(perm_))
            throw DomainError("DCMatrix: perm must be a single n-cycle");
        alpha_ = geometric_mean(a_);
        beta_ = geometric_mean(b_);
    }

    [[nodiscard]] std::size_t size() const { return a_.size(); }
    [[nodiscard]] const std::vector<double>& a() const { return a_; }
    [[nodiscard]] const std::vector<double>& b() const { return b_; }
    [[nodiscard]] const std::vector<std::size_t>& perm() const { return perm_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }

    [[nodiscard]] Eigen::MatrixXd dense() const {
        const auto n = static_cast<Eigen::Index>(size());
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, i) = a_[static_cast<std::size_t>(i)];
            x(i, static_cast<Eigen::Index>(perm_[static_cast<std::size_t>(i)])) =
                -b_[static_cast<std::size_t>(i)];
        }
        return x;
    }

    /// Generic determinant by LU.
    [[nodiscard]] double determinant() const { return dense().fullPivLu().determinant(); }

    /// det(X - lambda I) by complex LU.
    [[nodiscard]] Complex char_poly_value(Complex lambda) const {
        Eigen::MatrixXcd m = dense().cast<Complex>();
        m.diagonal().array() -= lambda;
        return m.fullPivLu().determinant();
    }

    /// Eigenvalues from the dense nonsymmetric eigensolver.
    [[nodiscard]] std::vector<Complex> eigenvalues() const {
        Eigen::EigenSolver<Eigen::MatrixXd> es(dense(), false);
        if (es.info() != Eigen::Success) throw SolverError("DCMatrix: eigensolver failed", {});
        std::vector<Complex> out(size());
        for (std::size_t i = 0; i < size(); ++i) out[i] = es.eigenvalues()[static_cast<Eigen::Index>(i)];
        return out;
    }

private:
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<std::size_t> perm_;
    double alpha_ = 0.0;
    double beta_ = 0.0;
};

struct Reduction {
    CoefficientVector c;
    double beta;
};

/// Diagonal conjugation of X to beta * (diag(c) - Sigma) with c_k = a_k / beta.
/// gamma(c) = alpha / beta. Eigenvalues of X in Re < 0 correspond to roots of
/// P(z; c) = 1 in Re > 0 under z = -lambda / beta.
inline Reduction reduce_matrix(const DCMatrix& m) {
    const double beta = m.beta();
    std::vector<double> c(m.a().size());
    std::transform(m.a().begin(), m.a().end(), c.begin(), [beta](double a) { return a / beta; });
    return {CoefficientVector(std::move(c)), beta};
}

enum class CountMethod { eigensolver, contour, closed_form };

inline const char* to_string(CountMethod m) {
    switch (m) {
        case CountMethod::eigensolver: return "eigensolver";
        case CountMethod::contour: return "contour";
        case CountMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

/// Root counts of P(z; c) = 1 by half plane, with multiplicity.
struct CountReport {
    int nu_minus = 0;
    int nu_zero = 0;
    int nu_plus = 0;
    int nu_bar = 0;
    CountMethod method = CountMethod::eigensolver;
    double tol = 0.0;
    double max_residual = 0.0;         // max |P(z) - 1|
    double max_scaled_residual = 0.0;  // max |P(z) - 1| / (1 + prod(|z| + c_k))

    [[nodiscard]] int n() const { return nu_minus + nu_zero + nu_plus; }
    [[nodiscard]] bool consistent() const { return nu_bar == nu_zero + nu_plus; }
};

}  // namespace dcroots
