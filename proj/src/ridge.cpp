#include "ridgesplit/ridge.hpp"

#include <stdexcept>

namespace ridgesplit {

RidgeFit ridge_fit(const Eigen::MatrixXd& x_train, const Eigen::VectorXd& y_train,
                   double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (x_train.rows() != y_train.size()) {
        throw std::invalid_argument("x_train and y_train row counts differ");
    }
    const Eigen::Index n = x_train.cols();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x_train.transpose());
    gram = gram.selfadjointView<Eigen::Lower>();
    gram.diagonal().array() += alpha;

    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        if (alpha == 0.0) {
            throw std::runtime_error("singular-design: X^t X is singular and alpha = 0");
        }
        throw std::runtime_error("ridge_fit: Cholesky factorization failed");
    }
    RidgeFit fit;
    fit.coefficients = llt.solve(x_train.transpose() * y_train);
    fit.alpha = alpha;
    fit.train_rows = static_cast<int>(x_train.rows());

    // Guard against a borderline-singular alpha = 0 system that LLT accepted.
    if (alpha == 0.0) {
        const double rhs_norm = (x_train.transpose() * y_train).norm();
        const double resid = (gram * fit.coefficients - x_train.transpose() * y_train).norm();
        if (rhs_norm > 0.0 && resid > 1e-8 * rhs_norm) {
            throw std::runtime_error("singular-design: normal equations solved inaccurately at alpha = 0");
        }
    }
    return fit;
}

double test_mean_squared_error(const Eigen::MatrixXd& x_test,
                               const Eigen::VectorXd& y_test, const RidgeFit& fit) {
    if (x_test.rows() == 0) {
        throw std::invalid_argument("invalid-split: test block is empty");
    }
    if (x_test.rows() != y_test.size()) {
        throw std::invalid_argument("x_test and y_test row counts differ");
    }
    return (x_test * fit.coefficients - y_test).squaredNorm() /
           static_cast<double>(x_test.rows());
}

}  // namespace ridgesplit
