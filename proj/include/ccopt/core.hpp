#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

// Core value model: stochastic item weights, confidence levels and their
// Normal fractiles, the weighted-sum scalarization, dominance relations,
// and the order-switch thresholds between incomparable items.

namespace ccopt {

// Thrown when an input violates a documented precondition (bad alpha range,
// odd instance size, disconnected graph, ...). The CLI maps this to exit 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown on file/parse problems. The CLI maps this to exit 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Standard Normal CDF. Series expansion below z = 2/sqrt(2), Legendre
// continued fraction in the tail; both truncated at 1e-16 relative terms.
double normal_cdf(double x);

// Upper tail Q(x) = 1 - Phi(x), computed without cancellation for large x.
double normal_upper_tail(double x);

// Standard Normal density.
double normal_pdf(double x);

// The alpha-fractile of the standard Normal: K with Phi(K) = alpha.
// Requires 0.5 <= alpha < 1; bisection on [0, 40] refined by two Newton
// steps, |Phi(K) - alpha| well below 1e-9.
double k_alpha(double alpha);

// Same fractile parameterized by the tail mass beta = 1 - alpha. Keeps full
// precision for tiny beta (1e-16 and below would be lost in 1 - beta).
double k_alpha_from_beta(double beta);

// One stochastic weight: expectation and variance of a Normal item.
struct StochItem {
    double mu = 0.0;
    double var = 0.0;
};

// Requires mu >= 1, var >= 1 and both finite. Instance types whose analysis
// depends on unit lower bounds call this per item at construction.
void validate_item(const StochItem& item);

// A confidence level alpha in [1/2, 1) together with its cached fractile.
class Confidence {
public:
    explicit Confidence(double alpha)
        : alpha_(alpha), k_(k_alpha(alpha)) {}

    // Build from the tail mass beta = 1 - alpha, beta in (0, 1/2].
    static Confidence from_beta(double beta);

    // Build from a known fractile K >= 0 (alpha = Phi(K)).
    static Confidence from_k(double k);

    double alpha() const { return alpha_; }
    double k() const { return k_; }

private:
    Confidence(double alpha, double k) : alpha_(alpha), k_(k) {}
    double alpha_;
    double k_;
};

// The deterministic equivalent of the chance constraint:
// mu_total + K_alpha * sqrt(var_total).
double g_value(double mu_total, double var_total, const Confidence& conf);

// A point in the bi-objective (expectation, variance) space, possibly
// penalized for infeasibility.
struct ObjectiveVector {
    double mu = 0.0;
    double var = 0.0;

    friend bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) {
        return a.mu == b.mu && a.var == b.var;
    }
};

// Weighted sum lambda * mu + (1 - lambda) * var, lambda in [0, 1].
inline double f_lambda(const ObjectiveVector& p, double lambda) {
    return lambda * p.mu + (1.0 - lambda) * p.var;
}

inline double f_lambda(const StochItem& item, double lambda) {
    return lambda * item.mu + (1.0 - lambda) * item.var;
}

// Componentwise weak dominance (minimization in both coordinates).
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return a.mu <= b.mu && a.var <= b.var;
}

inline bool strongly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    return dominates(a, b) && (a.mu < b.mu || a.var < b.var);
}

// The weighting where the f_lambda order of two incomparable items flips:
// defined when item_i has strictly smaller variance and strictly larger
// expectation than item_j, absent otherwise.
std::optional<double> lambda_threshold(const StochItem& item_i, const StochItem& item_j);

// All pairwise order-switch weightings of an item list, deduplicated and
// sorted, with 0 and 1 added. pair_count is the number of incomparable
// pairs, so values.size() <= pair_count + 2.
struct LambdaSet {
    std::vector<double> values;
    std::size_t pair_count = 0;
};

LambdaSet lambda_set(const std::vector<StochItem>& items);

}  // namespace ccopt
