//! Hungarian method for the dense assignment problem, integer arithmetic
//! only.

/// Large-but-safe sentinel for forbidden cells. Callers compare the total
/// against their own forbidden threshold; this value only has to dominate
/// any sum of real weights without overflowing.
pub(crate) const FORBIDDEN: i64 = i64::MAX / 4;

/// Minimum-cost perfect assignment on a square cost matrix.
///
/// Returns the column assigned to each row and the total cost. Potentials
/// and reduced costs stay integral throughout, so results are exact.
pub(crate) fn solve_assignment(cost: &[Vec<i64>]) -> (Vec<usize>, i64) {
    let n = cost.len();
    if n == 0 {
        return (Vec::new(), 0);
    }
    debug_assert!(cost.iter().all(|row| row.len() == n));

    // Shortest-augmenting-path formulation with row/column potentials,
    // 1-based with column 0 as the virtual start.
    let inf = i64::MAX / 2;
    let mut row_pot = vec![0i64; n + 1];
    let mut col_pot = vec![0i64; n + 1];
    let mut col_row = vec![0usize; n + 1]; // row matched to each column, 0 = none
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        col_row[0] = i;
        let mut j0 = 0usize;
        let mut min_slack = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_row[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - row_pot[i0] - col_pot[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    row_pot[col_row[j]] += delta;
                    col_pot[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if col_row[j0] == 0 {
                break;
            }
        }
        // Unwind the augmenting path.
        while j0 != 0 {
            let j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
        }
    }

    let mut row_col = vec![0usize; n];
    for j in 1..=n {
        row_col[col_row[j] - 1] = j - 1;
    }
    let total = row_col
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .sum();
    (row_col, total)
}
