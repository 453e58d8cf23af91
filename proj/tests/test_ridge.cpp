#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ridgesplit/ridge.hpp"
#include "ridgesplit/sampling.hpp"

using namespace ridgesplit;

TEST_CASE("identity design with alpha 1 halves the response") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd y(2);
    y << 2.0, 4.0;
    const RidgeFit fit = ridge_fit(x, y, 1.0);
    CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.coefficients[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("alpha 0 interpolates a square invertible system") {
    Eigen::MatrixXd x(3, 3);
    x << 2.0, 1.0, 0.0, 0.5, 3.0, 1.0, 0.0, 1.0, 4.0;
    Eigen::VectorXd y(3);
    y << 1.0, -2.0, 0.5;
    const RidgeFit fit = ridge_fit(x, y, 0.0);
    const Eigen::VectorXd direct = x.partialPivLu().solve(y);
    CHECK((fit.coefficients - direct).norm() <= 1e-10 * direct.norm());
    CHECK((x * fit.coefficients - y).norm() <= 1e-10 * y.norm());
}

TEST_CASE("matches an explicit-inverse oracle on a random instance") {
    const SpdMatrix id3 = SpdMatrix::identity(3);
    const Eigen::MatrixXd x = sample_gaussian_rows(50, id3, RngSeed{11, 0, 0});
    const Eigen::VectorXd y = sample_standard_normal(50, RngSeed{11, 1, 0});
    const double alpha = 2.0;
    const RidgeFit fit = ridge_fit(x, y, alpha);

    // Oracle: explicit 3x3 inversion of the normal equations.
    const Eigen::MatrixXd lhs =
        x.transpose() * x + alpha * Eigen::MatrixXd::Identity(3, 3);
    const Eigen::VectorXd oracle = lhs.inverse() * (x.transpose() * y);
    CHECK((fit.coefficients - oracle).norm() <= 1e-10 * oracle.norm());
}

TEST_CASE("normal equations are satisfied to 1e-10 relative") {
    const SpdMatrix id4 = SpdMatrix::identity(4);
    const Eigen::MatrixXd x = sample_gaussian_rows(30, id4, RngSeed{12, 0, 0});
    const Eigen::VectorXd y = sample_standard_normal(30, RngSeed{12, 1, 0});
    const RidgeFit fit = ridge_fit(x, y, 0.7);
    const Eigen::MatrixXd lhs =
        x.transpose() * x + 0.7 * Eigen::MatrixXd::Identity(4, 4);
    const Eigen::VectorXd rhs = x.transpose() * y;
    CHECK((lhs * fit.coefficients - rhs).norm() <= 1e-10 * rhs.norm());
}

TEST_CASE("alpha 0 reproduces least squares on a full-rank rectangular design") {
    const SpdMatrix id3 = SpdMatrix::identity(3);
    const Eigen::MatrixXd x = sample_gaussian_rows(50, id3, RngSeed{16, 0, 0});
    const Eigen::VectorXd y = sample_standard_normal(50, RngSeed{16, 1, 0});
    const RidgeFit fit = ridge_fit(x, y, 0.0);
    const Eigen::VectorXd lstsq = x.colPivHouseholderQr().solve(y);
    CHECK((fit.coefficients - lstsq).norm() <= 1e-10 * lstsq.norm());
}

TEST_CASE("singular design at alpha 0 is rejected") {
    Eigen::MatrixXd x(3, 2);
    x << 1.0, 1.0, 2.0, 2.0, 3.0, 3.0;  // duplicate columns
    Eigen::VectorXd y(3);
    y << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(ridge_fit(x, y, 0.0), std::runtime_error);
    CHECK_NOTHROW(ridge_fit(x, y, 0.5));
}

TEST_CASE("coefficient norm shrinks monotonically in alpha") {
    const SpdMatrix id3 = SpdMatrix::identity(3);
    const Eigen::MatrixXd x = sample_gaussian_rows(20, id3, RngSeed{13, 0, 0});
    const Eigen::VectorXd y = sample_standard_normal(20, RngSeed{13, 1, 0});
    double previous = ridge_fit(x, y, 0.0).coefficients.norm();
    for (double alpha : {0.1, 1.0, 10.0, 100.0}) {
        const double norm = ridge_fit(x, y, alpha).coefficients.norm();
        CHECK(norm <= previous * (1.0 + 1e-12));
        previous = norm;
    }
}

TEST_CASE("huge alpha drives the fit to zero") {
    const SpdMatrix id3 = SpdMatrix::identity(3);
    const Eigen::MatrixXd x = sample_gaussian_rows(25, id3, RngSeed{14, 0, 0});
    const Eigen::VectorXd y = sample_standard_normal(25, RngSeed{14, 1, 0});
    const RidgeFit fit = ridge_fit(x, y, 1e9);
    CHECK(fit.coefficients.norm() <= 1e-6 * (x.transpose() * y).norm());
}

TEST_CASE("test MSE of a perfect fit is zero") {
    Eigen::MatrixXd x_test(4, 2);
    x_test << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0, -1.0;
    RidgeFit fit;
    fit.coefficients = Eigen::Vector2d(3.0, -2.0);
    const Eigen::VectorXd y_test = x_test * fit.coefficients;
    CHECK(test_mean_squared_error(x_test, y_test, fit) == 0.0);
}

TEST_CASE("test MSE of the zero model is the mean squared response") {
    Eigen::MatrixXd x_test = Eigen::MatrixXd::Random(5, 3);
    RidgeFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(3);
    Eigen::VectorXd v(5);
    v << 1.0, -1.0, 2.0, 0.5, -0.25;
    CHECK(test_mean_squared_error(x_test, v, fit) ==
          doctest::Approx(v.squaredNorm() / 5.0).epsilon(1e-15));
}

TEST_CASE("test MSE matches an elementwise-loop oracle") {
    const SpdMatrix id3 = SpdMatrix::identity(3);
    const Eigen::MatrixXd x = sample_gaussian_rows(40, id3, RngSeed{15, 0, 0});
    const Eigen::VectorXd y = sample_standard_normal(40, RngSeed{15, 1, 0});
    RidgeFit fit = ridge_fit(x.topRows(25), y.head(25), 1.5);
    const Eigen::MatrixXd x_test = x.bottomRows(15);
    const Eigen::VectorXd y_test = y.tail(15);

    double oracle = 0.0;
    for (int i = 0; i < 15; ++i) {
        double pred = 0.0;
        for (int j = 0; j < 3; ++j) pred += x_test(i, j) * fit.coefficients[j];
        oracle += (pred - y_test[i]) * (pred - y_test[i]);
    }
    oracle /= 15.0;
    CHECK(test_mean_squared_error(x_test, y_test, fit) ==
          doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("model params reproduce the response exactly") {
    const SpdMatrix id2 = SpdMatrix::identity(2);
    const Eigen::MatrixXd x = sample_gaussian_rows(10, id2, RngSeed{17, 0, 0});
    ModelParams params;
    params.c = 0.1;
    params.sigma = 0.25;
    params.b = 0.1 * sample_standard_normal(2, RngSeed{17, 1, 0});
    params.epsilon = sample_standard_normal(10, RngSeed{17, 2, 0});

    const Eigen::VectorXd y = params.response(x);
    Eigen::VectorXd manual(10);
    for (int i = 0; i < 10; ++i) {
        manual[i] = x(i, 0) * params.b[0] + x(i, 1) * params.b[1] +
                    params.sigma * params.epsilon[i];
    }
    CHECK((y - manual).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((y - params.response(x)).cwiseAbs().maxCoeff() == 0.0);  // pure function
}

TEST_CASE("empty test block is rejected") {
    RidgeFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_AS(
        test_mean_squared_error(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), fit),
        std::invalid_argument);
}
