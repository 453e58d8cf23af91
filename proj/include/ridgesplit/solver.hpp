#pragma once

#include <optional>
#include <utility>

namespace ridgesplit {

/// Dominant terms of the scaled derivative identity whose positive root
/// approximates the optimal training size (the common sigma^4 factor is
/// divided out):
///
///   P(p) = 4 m^2 n p^2 + 2 m^2 n^2 p^2 - 4 m n p^3 - 4 m n^2 p^3
///          - 4 n p^4 + 2 n^2 p^4 - 2 p^5
///
/// P(p) > 0 for small p > 0 and P(m) = -4 n m^4 - 2 m^5 < 0, so a sign
/// change exists in (0, m).
struct LeadingPolynomial {
    double m = 0.0;
    double n = 0.0;

    double operator()(double p) const;
};

/// Two-term closed-form optimum
///   n^{1/3} (2+n)^{1/3} m^{2/3}  -  (2 n^{2/3} (1+n) / (3 (2+n)^{1/3})) m^{1/3}.
/// May fall below n + 2 (or zero) for small m; clamping is the caller's job.
double asymptotic_split(double m, double n);

/// Unique root of LeadingPolynomial in (0, m), by bisection on [1, m] to
/// absolute tolerance 1e-6.
double leading_poly_root(double m, double n);

enum class SplitSource { Formula, Root };

/// Nearest-integer (half-up) value of the chosen estimate, clamped into
/// [n + 2, m - 1]. Requires m >= n + 3.
int recommend_integer_split(long long m, int n, SplitSource source);

/// Formula, polynomial-root, and (when available) empirical optima side by
/// side. p_final is the clamped integer recommendation from the formula.
struct SplitRecommendation {
    long long m = 0;
    int n = 0;
    double p_formula = 0.0;
    std::optional<double> p_root;
    std::optional<std::pair<int, int>> p_empirical;  // raw argmin, smoothed argmin
    int p_final = 0;
};

}  // namespace ridgesplit
