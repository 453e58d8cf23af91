#pragma once

#include <Eigen/Dense>

namespace ridgesplit {

/// Ridge solution b = (X^t X + alpha I)^{-1} X^t y for one training block.
struct RidgeFit {
    Eigen::VectorXd coefficients;
    double alpha = 0.0;
    int train_rows = 0;
};

/// One draw of the generative model: true coefficients b ~ N(0, c^2 I) and
/// per-row noise eps ~ N(0, I). The response y = X b + sigma * eps is a pure
/// function of these fields and the design.
struct ModelParams {
    Eigen::VectorXd b;
    double c = 0.0;
    double sigma = 0.0;
    Eigen::VectorXd epsilon;

    Eigen::VectorXd response(const Eigen::MatrixXd& x) const {
        return x * b + sigma * epsilon;
    }
};

/// Solves the regularized normal equations by Cholesky of the n x n Gram
/// matrix; never forms an explicit inverse. alpha = 0 is allowed only when
/// X^t X is numerically nonsingular.
RidgeFit ridge_fit(const Eigen::MatrixXd& x_train, const Eigen::VectorXd& y_train,
                   double alpha);

/// Held-out mean squared error ||X_test b - y_test||^2 / rows(X_test).
double test_mean_squared_error(const Eigen::MatrixXd& x_test,
                               const Eigen::VectorXd& y_test, const RidgeFit& fit);

}  // namespace ridgesplit
