#include "momentopt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "momentopt/errors.hpp"

namespace momentopt {

namespace {

void require_even_cells(std::size_t cells) {
    if (cells < 2 || cells % 2 != 0) {
        throw Error(ErrorKind::BadConfig,
                    "grid: cell count must be even and >= 2, got " + std::to_string(cells));
    }
}

void require_interval(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
        throw Error(ErrorKind::BadConfig, "grid: interval must satisfy a < b");
    }
}

bool matches(std::span<const double> lhs, std::span<const double> rhs, double scale) {
    if (lhs.size() != rhs.size()) return false;
    const double tol = 1e-13 * scale;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (std::abs(lhs[i] - rhs[i]) > tol) return false;
    }
    return true;
}

}  // namespace

RadialGrid::RadialGrid(std::vector<double> nodes, std::vector<double> jacobian,
                       std::size_t focus_index)
    : nodes_(std::move(nodes)), jacobian_(std::move(jacobian)), focus_index_(focus_index) {}

RadialGrid RadialGrid::uniform(double a, double b, std::size_t cells) {
    require_even_cells(cells);
    require_interval(a, b);
    std::vector<double> nodes(cells + 1);
    std::vector<double> jac(cells + 1, b - a);
    const double n = static_cast<double>(cells);
    for (std::size_t i = 0; i <= cells; ++i) {
        nodes[i] = a + (b - a) * (static_cast<double>(i) / n);
    }
    nodes[cells] = b;
    return RadialGrid(std::move(nodes), std::move(jac), 0);
}

RadialGrid RadialGrid::clustered(double a, double b, double focus, std::size_t cells) {
    require_even_cells(cells);
    require_interval(a, b);
    if (cells < 4) {
        throw Error(ErrorKind::BadConfig, "grid: clustered layout needs at least 4 cells");
    }
    const double margin = 1e-9 * (b - a);
    focus = std::clamp(focus, a + margin, b - margin);

    const std::size_t left = (cells / 2) & ~std::size_t{1};
    const std::size_t right = cells - left;
    const double n = static_cast<double>(cells);
    const double s_split = static_cast<double>(left) / n;
    const double len_left = focus - a;
    const double len_right = b - focus;

    std::vector<double> nodes(cells + 1);
    std::vector<double> jac(cells + 1);
    for (std::size_t i = 0; i <= left; ++i) {
        // w runs from 1 at r = a down to 0 at the focus.
        const double w = static_cast<double>(left - i) / static_cast<double>(left);
        nodes[i] = focus - len_left * w * w;
        jac[i] = 2.0 * len_left * w / s_split;
    }
    for (std::size_t i = left; i <= cells; ++i) {
        const double w = static_cast<double>(i - left) / static_cast<double>(right);
        nodes[i] = focus + len_right * w * w;
        jac[i] = 2.0 * len_right * w / (1.0 - s_split);
    }
    nodes[0] = a;
    nodes[left] = focus;
    nodes[cells] = b;
    jac[left] = 0.0;
    return RadialGrid(std::move(nodes), std::move(jac), left);
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 3) {
        throw Error(ErrorKind::BadConfig, "grid: need at least 3 nodes");
    }
    const std::size_t cells = nodes.size() - 1;
    require_even_cells(cells);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw Error(ErrorKind::BadConfig, "grid: nodes must be strictly increasing");
        }
    }
    const double a = nodes.front();
    const double b = nodes.back();
    const double scale = std::max({std::abs(a), std::abs(b), b - a});

    RadialGrid uni = uniform(a, b, cells);
    if (matches(uni.nodes(), nodes, scale)) {
        uni.nodes_ = std::move(nodes);
        return uni;
    }
    if (cells >= 4) {
        const std::size_t left = (cells / 2) & ~std::size_t{1};
        RadialGrid clu = clustered(a, b, nodes[left], cells);
        if (matches(clu.nodes(), nodes, scale)) {
            clu.nodes_ = std::move(nodes);
            return clu;
        }
    }

    const double inv = static_cast<double>(cells);
    std::vector<double> jac(nodes.size());
    jac[0] = (-3.0 * nodes[0] + 4.0 * nodes[1] - nodes[2]) * 0.5 * inv;
    for (std::size_t i = 1; i < cells; ++i) {
        jac[i] = (nodes[i + 1] - nodes[i - 1]) * 0.5 * inv;
    }
    jac[cells] = (3.0 * nodes[cells] - 4.0 * nodes[cells - 1] + nodes[cells - 2]) * 0.5 * inv;
    return RadialGrid(std::move(nodes), std::move(jac), 0);
}

double radial_integral(std::span<const double> values, const RadialGrid& grid) {
    const std::size_t cells = grid.cells();
    require_even_cells(cells);
    if (values.size() != grid.size()) {
        throw Error(ErrorKind::BadConfig, "radial_integral: value count does not match grid");
    }
    const auto jac = grid.jacobian();
    const double third = grid.ds() / 3.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < cells; i += 2) {
        const double g0 = values[i] * jac[i];
        const double g1 = values[i + 1] * jac[i + 1];
        const double g2 = values[i + 2] * jac[i + 2];
        acc = acc + third * (g0 + 4.0 * g1 + g2);
    }
    return acc;
}

std::vector<double> cumulative_radial_integral(std::span<const double> values,
                                               const RadialGrid& grid) {
    const std::size_t cells = grid.cells();
    require_even_cells(cells);
    if (values.size() != grid.size()) {
        throw Error(ErrorKind::BadConfig,
                    "cumulative_radial_integral: value count does not match grid");
    }
    const auto jac = grid.jacobian();
    const double third = grid.ds() / 3.0;
    const double twelfth = grid.ds() / 12.0;
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = 0; i < cells; i += 2) {
        const double g0 = values[i] * jac[i];
        const double g1 = values[i + 1] * jac[i + 1];
        const double g2 = values[i + 2] * jac[i + 2];
        out[i + 1] = out[i] + twelfth * (5.0 * g0 + 8.0 * g1 - g2);
        out[i + 2] = out[i] + third * (g0 + 4.0 * g1 + g2);
    }
    return out;
}

std::vector<double> trapezoid_weights(const RadialGrid& grid) {
    const auto r = grid.nodes();
    const std::size_t n = r.size();
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    w[0] = 0.5 * (r[1] - r[0]);
    w[n - 1] = 0.5 * (r[n - 1] - r[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = 0.5 * (r[i + 1] - r[i - 1]);
    return w;
}

}  // namespace momentopt
