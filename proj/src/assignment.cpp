#include "guidiff/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "guidiff/model.hpp"

namespace guidiff {
namespace {

// Square Hungarian with row/column potentials (shortest augmenting paths).
// Returns col_of_row and fills the potentials u (rows) and v (cols).
std::vector<int> hungarian(const std::vector<double>& a, std::size_t n, std::vector<double>& u,
                           std::vector<double>& v) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based internally; index 0 is the virtual source.
    u.assign(n + 1, 0.0);
    v.assign(n + 1, 0.0);
    std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
    std::vector<double> minv(n + 1);
    std::vector<char> used(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        row_of_col[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = row_of_col[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of_col[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> col_of_row(n, -1);
    for (std::size_t j = 1; j <= n; ++j) {
        col_of_row[row_of_col[j] - 1] = static_cast<int>(j - 1);
    }
    // drop the virtual slot so u[i], v[j] line up with 0-based indices
    u.erase(u.begin());
    v.erase(v.begin());
    return col_of_row;
}

// Rewrites an optimal perfect matching into the lexicographically smallest
// perfect matching of the tight (zero reduced cost) subgraph.
void lexicographic_refine(const std::vector<double>& a, std::size_t n, const std::vector<double>& u,
                          const std::vector<double>& v, double eps, std::vector<int>& col_of_row) {
    auto tight = [&](std::size_t i, std::size_t j) {
        return a[i * n + j] - u[i] - v[j] <= eps;
    };
    std::vector<int> row_of_col(n);
    for (std::size_t i = 0; i < n; ++i) row_of_col[col_of_row[i]] = static_cast<int>(i);
    std::vector<char> fixed_row(n, 0), fixed_col(n, 0);
    std::vector<int> prev_row(n);
    std::vector<char> seen(n);
    std::vector<std::size_t> queue;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (fixed_col[j] || !tight(i, j)) continue;
            if (col_of_row[i] == static_cast<int>(j)) break;

            // Re-route: row i2 (currently on j) must reach i's column c0 along an
            // alternating path of tight edges that avoids fixed rows/cols and j.
            const auto i2 = static_cast<std::size_t>(row_of_col[j]);
            const auto c0 = static_cast<std::size_t>(col_of_row[i]);
            std::fill(seen.begin(), seen.end(), 0);
            queue.assign(1, i2);
            bool found = false;
            for (std::size_t q = 0; q < queue.size() && !found; ++q) {
                const std::size_t r = queue[q];
                for (std::size_t c = 0; c < n; ++c) {
                    if (seen[c] || fixed_col[c] || c == j || !tight(r, c)) continue;
                    seen[c] = 1;
                    prev_row[c] = static_cast<int>(r);
                    if (c == c0) {
                        found = true;
                        break;
                    }
                    queue.push_back(static_cast<std::size_t>(row_of_col[c]));
                }
            }
            if (!found) continue;

            std::size_t c = c0;
            while (true) {
                const auto r = static_cast<std::size_t>(prev_row[c]);
                const auto next = static_cast<std::size_t>(col_of_row[r]);
                col_of_row[r] = static_cast<int>(c);
                row_of_col[c] = static_cast<int>(r);
                if (r == i2) break;
                c = next;
            }
            col_of_row[i] = static_cast<int>(j);
            row_of_col[j] = static_cast<int>(i);
            break;
        }
        fixed_row[i] = 1;
        fixed_col[col_of_row[i]] = 1;
    }
}

}  // namespace

Assignment solve_assignment(const CostMatrix& cost, double pad_cost) {
    Assignment out;
    out.row_to_col.assign(cost.rows(), -1);
    const std::size_t n = std::max(cost.rows(), cost.cols());
    if (cost.rows() == 0 || cost.cols() == 0) return out;

    std::vector<double> a(n * n, pad_cost);
    double scale = 1.0;
    for (std::size_t i = 0; i < cost.rows(); ++i) {
        for (std::size_t j = 0; j < cost.cols(); ++j) {
            const double c = cost(i, j);
            if (!std::isfinite(c)) throw Error("assignment costs must be finite");
            a[i * n + j] = c;
            scale = std::max(scale, std::abs(c));
        }
    }

    std::vector<double> u, v;
    std::vector<int> col_of_row = hungarian(a, n, u, v);
    lexicographic_refine(a, n, u, v, 1e-9 * scale, col_of_row);

    for (std::size_t i = 0; i < cost.rows(); ++i) {
        const int j = col_of_row[i];
        if (j >= 0 && static_cast<std::size_t>(j) < cost.cols()) {
            out.row_to_col[i] = j;
            out.total_cost += cost(i, static_cast<std::size_t>(j));
        }
    }
    return out;
}

}  // namespace guidiff
