#include "ridgesplit/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ridgesplit {

CovarianceScheme covariance_scheme_from_string(const std::string& name) {
    if (name == "identity") return CovarianceScheme::Identity;
    if (name == "random") return CovarianceScheme::Random;
    throw std::invalid_argument("unknown covariance scheme '" + name +
                                "' (expected identity|random)");
}

std::string to_string(CovarianceScheme scheme) {
    return scheme == CovarianceScheme::Identity ? "identity" : "random";
}

SpdMatrix::SpdMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("invalid-dimension: SPD matrix must be square and nonempty");
    }
    const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw std::invalid_argument("not-positive-definite: matrix is not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(entries_);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("not-positive-definite: Cholesky factorization failed");
    }
    chol_lower_ = llt.matrixL();
}

SpdMatrix SpdMatrix::identity(int n) {
    if (n < 1) throw std::invalid_argument("invalid-dimension: n must be >= 1");
    return SpdMatrix(Eigen::MatrixXd::Identity(n, n));
}

namespace {

void fill_standard_normal(Eigen::Ref<Eigen::MatrixXd> out, Rng& rng) {
    // Row-major fill order: the draw sequence is part of the determinism
    // contract, independent of Eigen's storage layout.
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = rng.next_normal();
        }
    }
}

}  // namespace

SpdMatrix sample_spd_covariance(int n, CovarianceScheme scheme, const RngSeed& seed) {
    if (n < 1) throw std::invalid_argument("invalid-dimension: n must be >= 1");
    if (scheme == CovarianceScheme::Identity) {
        return SpdMatrix::identity(n);
    }
    Rng rng(seed);
    Eigen::MatrixXd g(n, n);
    fill_standard_normal(g, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: make R's diagonal positive so Q is unique given g.
    for (int j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    const double lo = std::log(0.5);
    const double hi = std::log(2.0);
    Eigen::VectorXd eigenvalues(n);
    for (int j = 0; j < n; ++j) {
        eigenvalues[j] = std::exp(lo + (hi - lo) * rng.next_unit());
    }
    Eigen::MatrixXd sigma = q * eigenvalues.asDiagonal() * q.transpose();
    sigma = ((sigma + sigma.transpose()) * 0.5).eval();  // kill roundoff asymmetry
    return SpdMatrix(std::move(sigma));
}

GaussianSample sample_gaussian_rows(int rows, const SpdMatrix& sigma, const RngSeed& seed) {
    if (rows < 1) throw std::invalid_argument("invalid-dimension: rows must be >= 1");
    Rng rng(seed);
    GaussianSample z(rows, sigma.dim());
    fill_standard_normal(z, rng);
    return z * sigma.cholesky_lower().transpose();
}

Eigen::VectorXd sample_standard_normal(int count, const RngSeed& seed) {
    if (count < 1) throw std::invalid_argument("invalid-dimension: count must be >= 1");
    Rng rng(seed);
    Eigen::VectorXd v(count);
    for (int i = 0; i < count; ++i) v[i] = rng.next_normal();
    return v;
}

}  // namespace ridgesplit
