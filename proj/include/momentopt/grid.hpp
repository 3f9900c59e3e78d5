#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace momentopt {

/// Nodes r_i = r(s_i) of a map from the uniform parameter grid s_i = i/N on
/// [0, 1] onto an interval [a, b], together with the Jacobian dr/ds at every
/// node. Quadrature is composite Simpson in s, so the map must be smooth on
/// each pair of cells; N is always even.
class RadialGrid {
public:
    RadialGrid() = default;

    /// Equally spaced nodes on [a, b].
    static RadialGrid uniform(double a, double b, std::size_t cells);

    /// Nodes split at `focus` into two halves (each an even number of cells),
    /// each graded quadratically so the spacing shrinks to ~L/N^2 at the focus.
    /// Used for integrands with a thin layer at an interior point.
    static RadialGrid clustered(double a, double b, double focus, std::size_t cells);

    /// Rebuilds a grid from its nodes alone. Recognizes the uniform and
    /// clustered layouts exactly; any other strictly increasing node set gets
    /// a finite-difference Jacobian.
    static RadialGrid from_nodes(std::vector<double> nodes);

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> jacobian() const { return jacobian_; }
    std::size_t cells() const { return nodes_.empty() ? 0 : nodes_.size() - 1; }
    std::size_t size() const { return nodes_.size(); }
    double ds() const { return 1.0 / static_cast<double>(cells()); }
    double front() const { return nodes_.front(); }
    double back() const { return nodes_.back(); }
    double operator[](std::size_t i) const { return nodes_[i]; }

    /// Node index where the clustered halves meet; 0 for uniform grids.
    std::size_t focus_index() const { return focus_index_; }

private:
    RadialGrid(std::vector<double> nodes, std::vector<double> jacobian, std::size_t focus_index);

    std::vector<double> nodes_;
    std::vector<double> jacobian_;
    std::size_t focus_index_ = 0;
};

/// Composite Simpson approximation of the integral of f over the grid span,
/// given f sampled at the nodes.
double radial_integral(std::span<const double> values, const RadialGrid& grid);

/// Same rule for a callable evaluated at every node.
template <class F>
double radial_integral_of(F&& f, const RadialGrid& grid) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
    return radial_integral(values, grid);
}

/// Running integral from the first node to every node. Even nodes use the
/// Simpson pair sums (the last entry equals radial_integral bit for bit); odd
/// nodes add the three-point single-cell rule.
std::vector<double> cumulative_radial_integral(std::span<const double> values,
                                               const RadialGrid& grid);

/// Trapezoid weights on the nodes; used by the LP discretization.
std::vector<double> trapezoid_weights(const RadialGrid& grid);

}  // namespace momentopt
