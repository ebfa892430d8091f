#pragma once

#include <cstddef>
#include <vector>

namespace guidiff {

/// Dense row-major cost matrix.
class CostMatrix {
public:
    CostMatrix() = default;
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    /// Column assigned to each row, or -1. min(rows, cols) entries are assigned.
    std::vector<int> row_to_col;
    double total_cost = 0.0;
};

/// Minimum-cost one-to-one assignment (Hungarian method with potentials, O(n^3)).
/// Rectangular inputs are padded to square with constant-cost dummies
/// (`pad_cost`), which does not change which real pairs are optimal.
///
/// Among optimal assignments the lexicographically smallest one is returned:
/// row 0 gets the lowest column it can take in some optimal assignment, then
/// row 1, and so on. Costs within 1e-9 (relative) of each other count as ties.
Assignment solve_assignment(const CostMatrix& cost, double pad_cost = 0.0);

}  // namespace guidiff
