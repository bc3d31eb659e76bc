#include "ccopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace ccopt {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Maclaurin series of erf, adequate for |z| <= 2 (terms fall below 1e-16
// long before cancellation becomes an issue).
double erf_series(double z) {
    const double z2 = z * z;
    double term = z;
    double sum = z;
    for (int n = 1; n < 200; ++n) {
        term *= -z2 / static_cast<double>(n);
        const double contrib = term / static_cast<double>(2 * n + 1);
        sum += contrib;
        if (std::abs(contrib) <= 1e-16 * std::abs(sum)) break;
    }
    return sum * (2.0 / 1.7724538509055160273);  // 2/sqrt(pi)
}

// Legendre continued fraction
//   erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + 1/(2z + 2/(z + 3/(2z + ...))))
// for z >= 2, evaluated with the modified Lentz algorithm; relative
// truncation below 1e-15.
double erfc_cf(double z) {
    const double tiny = 1e-300;
    double f = tiny;
    double c = tiny;
    double d = 0.0;
    for (int n = 1; n <= 400; ++n) {
        const double a = (n == 1) ? 1.0 : static_cast<double>(n - 1);
        const double b = (n % 2 == 1) ? z : 2.0 * z;
        d = b + a * d;
        if (d == 0.0) d = tiny;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return f * std::exp(-z * z) / 1.7724538509055160273;
}

double erfc_local(double z) {
    if (z >= 2.0) return erfc_cf(z);
    if (z <= -2.0) return 2.0 - erfc_cf(-z);
    return 1.0 - erf_series(z);
}

}  // namespace

double normal_cdf(double x) {
    return 0.5 * erfc_local(-x / kSqrt2);
}

double normal_upper_tail(double x) {
    return 0.5 * erfc_local(x / kSqrt2);
}

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

namespace {

// Solve Q(K) = beta_target on [0, 40]: bisection to 1e-12, then two Newton
// steps on the tail residual.
double solve_fractile_from_tail(double beta_target) {
    double lo = 0.0;
    double hi = 40.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (normal_upper_tail(mid) > beta_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double k = 0.5 * (lo + hi);
    for (int step = 0; step < 2; ++step) {
        const double pdf = normal_pdf(k);
        if (pdf <= 0.0) break;
        k += (normal_upper_tail(k) - beta_target) / pdf;
    }
    return std::max(k, 0.0);
}

}  // namespace

double k_alpha(double alpha) {
    if (!(alpha >= 0.5 && alpha < 1.0)) {
        throw DomainError("k_alpha: alpha must lie in [0.5, 1)");
    }
    return solve_fractile_from_tail(1.0 - alpha);
}

double k_alpha_from_beta(double beta) {
    if (!(beta > 0.0 && beta <= 0.5)) {
        throw DomainError("k_alpha_from_beta: beta must lie in (0, 0.5]");
    }
    return solve_fractile_from_tail(beta);
}

void validate_item(const StochItem& item) {
    if (!std::isfinite(item.mu) || !std::isfinite(item.var)) {
        throw DomainError("stochastic item: mu and var must be finite");
    }
    if (item.mu < 1.0 || item.var < 1.0) {
        throw DomainError("stochastic item: mu and var must both be >= 1");
    }
}

Confidence Confidence::from_beta(double beta) {
    return Confidence(1.0 - beta, k_alpha_from_beta(beta));
}

Confidence Confidence::from_k(double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw DomainError("Confidence::from_k: K must be finite and >= 0");
    }
    return Confidence(normal_cdf(k), k);
}

double g_value(double mu_total, double var_total, const Confidence& conf) {
    return mu_total + conf.k() * std::sqrt(var_total);
}

std::optional<double> lambda_threshold(const StochItem& item_i, const StochItem& item_j) {
    if (!(item_i.var < item_j.var && item_i.mu > item_j.mu)) {
        return std::nullopt;
    }
    const double dvar = item_j.var - item_i.var;
    const double dmu = item_i.mu - item_j.mu;
    return dvar / (dmu + dvar);
}

namespace {

bool is_exact_integer(double x) {
    return std::isfinite(x) && x == std::floor(x) && std::abs(x) <= 4.5e15;
}

struct Rational {
    std::int64_t num;
    std::int64_t den;  // > 0, gcd(num, den) == 1

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
};

Rational reduced(std::int64_t num, std::int64_t den) {
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

}  // namespace

LambdaSet lambda_set(const std::vector<StochItem>& items) {
    if (items.empty()) {
        throw DomainError("lambda_set: item list must be non-empty");
    }

    bool all_integer = true;
    for (const auto& it : items) {
        if (!is_exact_integer(it.mu) || !is_exact_integer(it.var)) {
            all_integer = false;
            break;
        }
    }

    LambdaSet out;
    if (all_integer) {
        // Thresholds of integer instances are exact rationals; dedup and sort
        // before any conversion to double so the set is bit-reproducible.
        std::vector<Rational> thresholds;
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                const StochItem* lo = &items[i];
                const StochItem* hi = &items[j];
                if (lo->var > hi->var) std::swap(lo, hi);
                if (lo->var < hi->var && lo->mu > hi->mu) {
                    ++out.pair_count;
                    const auto dvar = static_cast<std::int64_t>(hi->var - lo->var);
                    const auto dmu = static_cast<std::int64_t>(lo->mu - hi->mu);
                    thresholds.push_back(reduced(dvar, dmu + dvar));
                }
            }
        }
        std::sort(thresholds.begin(), thresholds.end());
        thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
        out.values.push_back(0.0);
        for (const auto& r : thresholds) {
            out.values.push_back(static_cast<double>(r.num) / static_cast<double>(r.den));
        }
        out.values.push_back(1.0);
        return out;
    }

    std::vector<double> thresholds;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            auto t = lambda_threshold(items[i], items[j]);
            if (!t) t = lambda_threshold(items[j], items[i]);
            if (t) {
                ++out.pair_count;
                thresholds.push_back(*t);
            }
        }
    }
    std::sort(thresholds.begin(), thresholds.end());
    out.values.push_back(0.0);
    for (double t : thresholds) {
        if (t <= 0.0 || t >= 1.0) continue;
        if (std::abs(t - out.values.back()) > 1e-12) out.values.push_back(t);
    }
    out.values.push_back(1.0);
    return out;
}

}  // namespace ccopt
