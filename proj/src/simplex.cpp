#include "momentopt/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "momentopt/errors.hpp"

namespace momentopt {

void LinearProgram::add_row(std::vector<double> coeffs, RowSense sense, double b) {
    rows.push_back(std::move(coeffs));
    senses.push_back(sense);
    rhs.push_back(b);
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr std::size_t kMaxPivots = 100000;
constexpr int kDegenerateStreak = 50;

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

    double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, cols_); }
    double& cost(std::size_t j) { return at(rows_, j); }
    double& value() { return at(rows_, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t e) {
        const double inv = 1.0 / at(r, e);
        for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
        at(r, e) = 1.0;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == r) continue;
            const double f = at(i, e);
            if (f == 0.0) continue;
            double* dst = &at(i, 0);
            const double* src = &at(r, 0);
            for (std::size_t j = 0; j <= cols_; ++j) dst[j] -= f * src[j];
            at(i, e) = 0.0;
        }
        basis_[r] = e;
    }

    // Runs pivots on the current objective row. `allowed` masks entering columns.
    LpStatus optimize(const std::vector<bool>& allowed, std::size_t& pivots) {
        int degenerate = 0;
        while (pivots < kMaxPivots) {
            const bool bland = degenerate >= kDegenerateStreak;
            std::size_t enter = cols_;
            double best = -kPivotTol;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!allowed[j]) continue;
                const double d = cost(j);
                if (d < best) {
                    enter = j;
                    best = d;
                    if (bland) break;
                }
            }
            if (enter == cols_) return LpStatus::Optimal;

            std::size_t leave = rows_;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_; ++i) {
                const double a = at(i, enter);
                if (a <= kPivotTol) continue;
                const double q = rhs(i) / a;
                if (q < ratio - 1e-14 ||
                    (q <= ratio + 1e-14 && leave != rows_ && basis_[i] < basis_[leave])) {
                    ratio = std::min(q, ratio);
                    leave = i;
                }
            }
            if (leave == rows_) return LpStatus::Unbounded;
            degenerate = (ratio <= 1e-14) ? degenerate + 1 : 0;
            pivot(leave, enter);
            ++pivots;
        }
        return LpStatus::IterationLimit;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    const std::size_t m = lp.rows.size();
    if (lp.senses.size() != m || lp.rhs.size() != m) {
        throw Error(ErrorKind::BadConfig, "linear program: row arrays disagree in length");
    }
    // Normalize to b >= 0.
    std::vector<RowSense> sense = lp.senses;
    std::vector<double> sign(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.rows[i].size() != n) {
            throw Error(ErrorKind::BadConfig, "linear program: row width differs from objective");
        }
        if (lp.rhs[i] < 0.0) {
            sign[i] = -1.0;
            if (sense[i] == RowSense::LessEqual) {
                sense[i] = RowSense::GreaterEqual;
            } else if (sense[i] == RowSense::GreaterEqual) {
                sense[i] = RowSense::LessEqual;
            }
        }
    }
    std::size_t slack_count = 0;
    std::size_t art_count = 0;
    for (RowSense s : sense) {
        if (s != RowSense::Equal) ++slack_count;
        if (s != RowSense::LessEqual) ++art_count;
    }
    const std::size_t cols = n + slack_count + art_count;
    Tableau t(m, cols);
    std::vector<bool> is_art(cols, false);
    std::size_t slack = n;
    std::size_t art = n + slack_count;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign[i] * lp.rows[i][j];
        t.rhs(i) = sign[i] * lp.rhs[i];
        switch (sense[i]) {
        case RowSense::LessEqual:
            t.at(i, slack) = 1.0;
            t.basis()[i] = slack++;
            break;
        case RowSense::GreaterEqual:
            t.at(i, slack++) = -1.0;
            t.at(i, art) = 1.0;
            is_art[art] = true;
            t.basis()[i] = art++;
            break;
        case RowSense::Equal:
            t.at(i, art) = 1.0;
            is_art[art] = true;
            t.basis()[i] = art++;
            break;
        }
    }

    LpSolution sol;
    std::vector<bool> allowed(cols, true);

    // Phase 1: maximize -sum(artificials).
    if (art_count > 0) {
        for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (is_art[j]) t.cost(j) = 1.0;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_art[t.basis()[i]]) continue;
            for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) -= t.at(i, j);
        }
        const LpStatus st = t.optimize(allowed, sol.pivots);
        double scale = 1.0;
        for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(lp.rhs[i]));
        if (st != LpStatus::Optimal || std::abs(t.value()) > 1e-9 * scale) {
            sol.status = st == LpStatus::IterationLimit ? st : LpStatus::Infeasible;
            return sol;
        }
        // Pivot zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_art[t.basis()[i]]) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!is_art[j] && std::abs(t.at(i, j)) > 1e-9) {
                    t.pivot(i, j);
                    ++sol.pivots;
                    break;
                }
            }
        }
        for (std::size_t j = 0; j < cols; ++j) allowed[j] = !is_art[j];
    }

    // Phase 2 with the original objective.
    for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.cost(j) = -lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
        const double f = t.cost(t.basis()[i]);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j <= cols; ++j) t.at(m, j) -= f * t.at(i, j);
    }
    sol.status = t.optimize(allowed, sol.pivots);
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis()[i] < n) sol.x[t.basis()[i]] = t.rhs(i);
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

}  // namespace momentopt
