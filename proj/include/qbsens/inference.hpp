#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qbsens/dataset.hpp"
#include "qbsens/error.hpp"
#include "qbsens/perturb.hpp"
#include "qbsens/ratings.hpp"
#include "qbsens/sensitivity.hpp"

namespace qbsens {

inline constexpr double kSignificanceLevel = 0.05;

namespace detail {

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Continued fraction for the incomplete beta function (modified Lentz).
/// Converges for x < (a+1)/(a+b+2); the caller applies the symmetry otherwise.
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-14;
    constexpr int kMaxIter = 500;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b), absolute accuracy ~1e-14.
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("regularized_incomplete_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - detail::log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Student-t CDF F_t(t, df) = P(T <= t) for df > 0 degrees of freedom.
inline double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw InputError("student_t_cdf: df must be positive");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - half_tail : half_tail;
}

/// Which sample's mean was larger.
enum class MeanDirection { First, Second, Equal };

struct TTestResult {
    double t_stat = 0.0;
    int df = 0;
    double p_one_sided = 0.5;  // in the direction of the larger sample mean
    MeanDirection direction = MeanDirection::Equal;
    bool significant = false;  // p_one_sided < 0.05
};

/// One-sided two-sample pooled-variance Student-t test.
///
/// Zero pooled variance with unequal means degenerates to t = +-inf, p = 0,
/// significant; equal means always give t = 0, p = 0.5.
inline TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b) {
    const std::size_t n1 = a.size(), n2 = b.size();
    if (n1 < 2 || n2 < 2)
        throw InsufficientDataError("pooled_t_test: both samples need at least 2 values");

    auto mean = [](std::span<const double> s) {
        double total = 0.0;
        for (double v : s) total += v;
        return total / static_cast<double>(s.size());
    };
    auto sum_sq_dev = [](std::span<const double> s, double m) {
        double sq = 0.0;
        for (double v : s) sq += (v - m) * (v - m);
        return sq;
    };

    const double m1 = mean(a), m2 = mean(b);
    TTestResult result;
    result.df = static_cast<int>(n1 + n2 - 2);
    const double pooled_var = (sum_sq_dev(a, m1) + sum_sq_dev(b, m2)) / result.df;
    const double diff = m1 - m2;

    if (diff == 0.0) {
        result.t_stat = 0.0;
        result.direction = MeanDirection::Equal;
        result.p_one_sided = 0.5;
        result.significant = false;
        return result;
    }
    result.direction = diff > 0.0 ? MeanDirection::First : MeanDirection::Second;
    const double se = std::sqrt(pooled_var) *
                      std::sqrt(1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
    result.t_stat = diff / se;  // se = 0 -> +-inf, p -> 0
    result.p_one_sided = 1.0 - student_t_cdf(std::fabs(result.t_stat), result.df);
    result.significant = result.p_one_sided < kSignificanceLevel;
    return result;
}

/// Outcome of comparing two rating systems' yearly rank-change sums under one
/// scenario. verdict is the more sensitive system's name when the difference
/// is significant, else "none".
struct SystemComparison {
    Scenario scenario;
    RatingSystem system_a;
    RatingSystem system_b;
    TTestResult test;
    std::string verdict;
};

inline SystemComparison compare_systems(const Dataset& ds, const Scenario& scenario,
                                        const RatingSystem& sys_a, const RatingSystem& sys_b,
                                        double sack_fallback) {
    std::vector<double> sums_a, sums_b;
    sums_a.reserve(ds.seasons().size());
    sums_b.reserve(ds.seasons().size());
    for (int season : ds.seasons()) {
        sums_a.push_back(yearly_rank_change_sum(ds, season, scenario, sys_a, sack_fallback).sum);
        sums_b.push_back(yearly_rank_change_sum(ds, season, scenario, sys_b, sack_fallback).sum);
    }
    SystemComparison cmp;
    cmp.scenario = scenario;
    cmp.system_a = sys_a;
    cmp.system_b = sys_b;
    cmp.test = pooled_t_test(sums_a, sums_b);
    if (!cmp.test.significant) {
        cmp.verdict = "none";
    } else {
        cmp.verdict = display_name(cmp.test.direction == MeanDirection::First ? sys_a : sys_b);
    }
    return cmp;
}

}  // namespace qbsens
