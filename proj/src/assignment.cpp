#include "gazetrace/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace gazetrace {

std::vector<int> solve_square_assignment(const std::vector<std::vector<double>>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return {};
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Potentials-based Hungarian algorithm (1-indexed internals).
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> match(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] != 0) match[p[j] - 1] = j - 1;
    }
    return match;
}

AssignmentResult solve_capped_assignment(const std::vector<std::vector<double>>& cost,
                                         double cap) {
    const int n = static_cast<int>(cost.size());
    const int m = n > 0 ? static_cast<int>(cost[0].size()) : 0;
    AssignmentResult result;
    result.match_of_row.assign(n, -1);
    if (n == 0 || m == 0) return result;
    for (const auto& row : cost) {
        if (static_cast<int>(row.size()) != m) {
            throw std::invalid_argument("assignment: ragged cost matrix");
        }
    }

    // Padded square formulation on bounded sentinels (kept finite so the
    // potentials arithmetic stays exact):
    //   rows    [0,n)     real rows, [n,n+m)   one dummy per column
    //   columns [0,m)     real cols, [m,m+n)   one dummy per row
    // A real pair costs its distance (or `forbidden`), row i may fall back to
    // its own dummy column at price `penalty`, likewise columns, and
    // dummy-dummy pairs are free. penalty exceeds any achievable real total,
    // so cardinality dominates; forbidden exceeds any assignment that avoids
    // it, so capped pairs never match.
    const int s = n + m;
    const double penalty = static_cast<double>(s) * cap + 1.0;
    const double forbidden = static_cast<double>(s + 1) * penalty;
    std::vector<std::vector<double>> padded(s, std::vector<double>(s, forbidden));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            padded[i][j] = cost[i][j] <= cap ? cost[i][j] : forbidden;
        }
        padded[i][m + i] = penalty;
    }
    for (int j = 0; j < m; ++j) padded[n + j][j] = penalty;
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) padded[n + j][m + i] = 0.0;
    }

    const std::vector<int> match = solve_square_assignment(padded);
    for (int i = 0; i < n; ++i) {
        const int j = match[i];
        if (j < m && cost[i][j] <= cap) {
            result.match_of_row[i] = j;
            result.matched += 1;
            result.total_cost += cost[i][j];
        }
    }
    return result;
}

}  // namespace gazetrace
