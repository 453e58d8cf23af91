#include "ridgesplit/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace ridgesplit {

double LeadingPolynomial::operator()(double p) const {
    const double p2 = p * p;
    const double p3 = p2 * p;
    const double p4 = p2 * p2;
    const double p5 = p4 * p;
    return 4.0 * m * m * n * p2 + 2.0 * m * m * n * n * p2 - 4.0 * m * n * p3 -
           4.0 * m * n * n * p3 - 4.0 * n * p4 + 2.0 * n * n * p4 - 2.0 * p5;
}

namespace {

// P(p) / p^2; same sign as P for p > 0 but a cubic, so the huge p^5-scale
// cancellations near the root happen at far smaller magnitudes.
double reduced_poly(double m, double n, double p) {
    return 4.0 * m * m * n + 2.0 * m * m * n * n - 4.0 * m * n * (1.0 + n) * p +
           2.0 * n * (n - 2.0) * p * p - 2.0 * p * p * p;
}

}  // namespace

double asymptotic_split(double m, double n) {
    if (m < 1.0 || n < 1.0) throw std::invalid_argument("need m >= 1 and n >= 1");
    const double leading = std::cbrt(n * (2.0 + n)) * std::cbrt(m * m);
    const double second =
        2.0 * std::cbrt(n * n) * (1.0 + n) / (3.0 * std::cbrt(2.0 + n)) * std::cbrt(m);
    return leading - second;
}

double leading_poly_root(double m, double n) {
    if (!(m > n) || n < 1.0) throw std::invalid_argument("need m > n >= 1");
    double lo = 1.0;
    double hi = m;
    double f_lo = reduced_poly(m, n, lo);
    double f_hi = reduced_poly(m, n, hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
        throw std::runtime_error("internal-error: no sign change on [1, m]");
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = reduced_poly(m, n, mid);
        if (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

int recommend_integer_split(long long m, int n, SplitSource source) {
    if (m < static_cast<long long>(n) + 3) {
        throw std::invalid_argument("no-valid-split: need m >= n + 3");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double value = source == SplitSource::Formula ? asymptotic_split(md, nd)
                                                        : leading_poly_root(md, nd);
    long long rounded = static_cast<long long>(std::floor(value + 0.5));
    const long long lo = static_cast<long long>(n) + 2;
    const long long hi = m - 1;
    if (rounded < lo) rounded = lo;
    if (rounded > hi) rounded = hi;
    return static_cast<int>(rounded);
}

}  // namespace ridgesplit
