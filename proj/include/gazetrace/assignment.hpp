#pragma once

#include <vector>

namespace gazetrace {

struct AssignmentResult {
    /// For each row, the matched column or -1.
    std::vector<int> match_of_row;
    int matched = 0;
    double total_cost = 0.0;
};

/// One-to-one assignment between rows and columns where pairs with
/// cost > cap may not match. The objective is lexicographic: maximize the
/// number of matched pairs, then minimize the summed cost. Solved exactly via
/// a Hungarian algorithm on a padded square matrix, O((n+m)^3).
///
/// All finite costs are expected to be <= cap; entries above it are treated
/// as forbidden.
AssignmentResult solve_capped_assignment(const std::vector<std::vector<double>>& cost,
                                         double cap);

/// Exact minimum-cost perfect assignment on a square matrix (row -> column).
std::vector<int> solve_square_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace gazetrace
