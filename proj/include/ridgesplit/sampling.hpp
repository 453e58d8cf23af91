#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "ridgesplit/rng.hpp"

namespace ridgesplit {

/// Rows-by-cols matrix whose rows are i.i.d. N(0, Sigma) draws.
using GaussianSample = Eigen::MatrixXd;

enum class CovarianceScheme { Identity, Random };

CovarianceScheme covariance_scheme_from_string(const std::string& name);
std::string to_string(CovarianceScheme scheme);

/// Symmetric positive definite matrix, validated on construction:
/// entrywise symmetry within 1e-12 and a successful Cholesky factorization.
/// The lower Cholesky factor is kept so correlated sampling never refactors.
class SpdMatrix {
  public:
    explicit SpdMatrix(Eigen::MatrixXd entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXd& matrix() const { return entries_; }
    const Eigen::MatrixXd& cholesky_lower() const { return chol_lower_; }

    static SpdMatrix identity(int n);

  private:
    Eigen::MatrixXd entries_;
    Eigen::MatrixXd chol_lower_;
};

/// Draws one SPD covariance. `Identity` returns I_n. `Random` returns
/// Q diag(lambda) Q^t with Q the sign-fixed QR orthogonal factor of a
/// standard Gaussian matrix and lambda log-uniform on [0.5, 2], so the
/// condition number never exceeds 4.
SpdMatrix sample_spd_covariance(int n, CovarianceScheme scheme, const RngSeed& seed);

/// Draws `rows` i.i.d. rows from N(0, sigma) as Z L^t with Z standard normal
/// and L the lower Cholesky factor of sigma.
GaussianSample sample_gaussian_rows(int rows, const SpdMatrix& sigma, const RngSeed& seed);

/// Length-`count` vector of i.i.d. standard normals.
Eigen::VectorXd sample_standard_normal(int count, const RngSeed& seed);

// Stream labels. Every module draws through one of these (or a substream of
// one), so no two purposes ever share a generator.
namespace streams {
inline constexpr std::uint64_t kCovariance = 0x01;
inline constexpr std::uint64_t kWishartTrial = 0x02;
inline constexpr std::uint64_t kTier0X = 0x10;
inline constexpr std::uint64_t kTier0Coef = 0x11;
inline constexpr std::uint64_t kTier0Noise = 0x12;
inline constexpr std::uint64_t kTier1X = 0x20;
inline constexpr std::uint64_t kTier2Train = 0x30;
inline constexpr std::uint64_t kBoundsCheck = 0x40;
}  // namespace streams

}  // namespace ridgesplit
