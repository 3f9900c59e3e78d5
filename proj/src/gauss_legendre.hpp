#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace momentopt::detail {

template <std::size_t N>
struct GaussLegendreRule {
    std::array<double, N> x{};
    std::array<double, N> w{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_N.
template <std::size_t N>
GaussLegendreRule<N> make_gauss_legendre() {
    GaussLegendreRule<N> rule;
    const double n = static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= N; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussLegendreRule<20>& gauss_legendre_20() {
    static const GaussLegendreRule<20> rule = make_gauss_legendre<20>();
    return rule;
}

// Integral of f over [a, b] with one 20-point panel.
template <class F>
double gauss_legendre_integral(F&& f, double a, double b) {
    const auto& rule = gauss_legendre_20();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
    return half * acc;
}

// Composite version with `panels` equal panels.
template <class F>
double gauss_legendre_composite(F&& f, double a, double b, int panels) {
    double acc = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + h * k;
        const double hi = (k + 1 == panels) ? b : a + h * (k + 1);
        acc += gauss_legendre_integral(f, lo, hi);
    }
    return acc;
}

}  // namespace momentopt::detail
