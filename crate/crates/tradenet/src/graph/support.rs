//! Common-support indices and triad statistics.
//!
//! The common-support index of a seller-buyer pair aggregates, over third
//! sellers k, how close k is to the seller and whether k serves the buyer:
//! `S[i][j] = (1/K) * sum_{k != i} r[k][i] * y[k][j]` with `K = n_sellers - 1`.
//! On unipartite graphs the analogous normalized shared-partner count uses
//! `K = N - 2` (third nodes exclude both endpoints). Both normalizers are
//! exposed; the distance-proxied index is the one used by the test and the
//! panel estimator.

use ndarray::{Array1, Array2};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::proximity::ProximityMatrix;

/// Inverse hyperbolic sine, `ln(x + sqrt(1 + x^2))`.
#[inline]
pub fn asinh(x: f64) -> f64 {
    x.asinh()
}

/// Normalized common support for one seller row: `(1/K) * sum_{k != i} r_ki * y_kj`.
pub fn common_support_row(
    y_slice: &Array2<bool>,
    proximity: &ProximityMatrix,
    seller: usize,
) -> Result<Array1<f64>> {
    let n_sellers = y_slice.nrows();
    check_support_shapes(y_slice, proximity)?;
    let k = (n_sellers - 1) as f64;
    let n_buyers = y_slice.ncols();
    let mut row = Array1::zeros(n_buyers);
    for third in 0..n_sellers {
        let r = proximity.proximity[(third, seller)];
        if r == 0.0 {
            continue; // includes third == seller (zero diagonal)
        }
        for j in 0..n_buyers {
            if y_slice[(third, j)] {
                row[j] += r;
            }
        }
    }
    row.mapv_inplace(|v| v / k);
    Ok(row)
}

/// Full seller×buyer common-support matrix.
///
/// Accumulates proximity rows over active links only, so cost scales with the
/// number of links rather than the dense triple product. Rows are independent
/// and computed in parallel with a deterministic per-row accumulation order.
pub fn common_support_matrix(
    y_slice: &Array2<bool>,
    proximity: &ProximityMatrix,
) -> Result<Array2<f64>> {
    check_support_shapes(y_slice, proximity)?;
    let link_lists = crate::graph::seller_link_lists(y_slice);
    Ok(common_support_from_links(&link_lists, proximity, y_slice.ncols()))
}

/// Common support from precomputed per-seller link lists.
pub fn common_support_from_links(
    seller_links: &[Vec<usize>],
    proximity: &ProximityMatrix,
    n_buyers: usize,
) -> Array2<f64> {
    let n_sellers = seller_links.len();
    debug_assert_eq!(proximity.n_sellers(), n_sellers);
    let k_norm = (n_sellers - 1) as f64;
    let rows: Vec<Array1<f64>> = (0..n_sellers)
        .into_par_iter()
        .map(|i| {
            let mut row = Array1::zeros(n_buyers);
            for (third, links) in seller_links.iter().enumerate() {
                let r = proximity.proximity[(third, i)];
                if r == 0.0 {
                    continue;
                }
                for &j in links {
                    row[j] += r;
                }
            }
            row / k_norm
        })
        .collect();
    let mut out = Array2::zeros((n_sellers, n_buyers));
    for (i, row) in rows.into_iter().enumerate() {
        out.row_mut(i).assign(&row);
    }
    out
}

fn check_support_shapes(y_slice: &Array2<bool>, proximity: &ProximityMatrix) -> Result<()> {
    let n_sellers = y_slice.nrows();
    if proximity.n_sellers() != n_sellers {
        return Err(Error::Size(format!(
            "proximity has {} sellers, adjacency has {}",
            proximity.n_sellers(),
            n_sellers
        )));
    }
    if n_sellers < 2 {
        return Err(Error::Size("common support needs at least 2 sellers".into()));
    }
    Ok(())
}

/// Normalized shared-partner count on a square adjacency:
/// `(1/K) * sum_{k not in {i,j}} y_ki * y_kj`, `K = N - 2`.
pub fn shared_partner_count(adjacency: &Array2<bool>, i: usize, j: usize) -> Result<f64> {
    let n = adjacency.nrows();
    if adjacency.ncols() != n {
        return Err(Error::Size("shared_partner_count expects a square adjacency".into()));
    }
    if n < 3 {
        return Err(Error::Size("no third nodes: N - 2 must be positive".into()));
    }
    let mut count = 0usize;
    for k in 0..n {
        if k != i && k != j && adjacency[(k, i)] && adjacency[(k, j)] {
            count += 1;
        }
    }
    Ok(count as f64 / (n - 2) as f64)
}

/// Ordered triad sum `sum_i sum_{j!=i} sum_{k not in {i,j}} y_ij y_ki y_kj`.
///
/// On an undirected adjacency each triangle contributes 6.
pub fn triad_count(adjacency: &Array2<bool>) -> Result<u64> {
    let n = adjacency.nrows();
    if adjacency.ncols() != n {
        return Err(Error::Size("triad_count expects a square adjacency".into()));
    }
    for d in 0..n {
        if adjacency[(d, d)] {
            return Err(Error::Input("triad_count requires a zero diagonal".into()));
        }
    }
    let mut total = 0u64;
    for i in 0..n {
        for j in 0..n {
            if j == i || !adjacency[(i, j)] {
                continue;
            }
            for k in 0..n {
                if k != i && k != j && adjacency[(k, i)] && adjacency[(k, j)] {
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

/// Undirected triangle count: the ordered triad sum divided by 6.
pub fn triangle_count(adjacency: &Array2<bool>) -> Result<u64> {
    Ok(triad_count(adjacency)? / 6)
}

/// Expected triangle count in a uniform graph with N nodes and L links,
/// `4 L^3 (N-2) / (3 N^2 (N-1)^2)`, i.e. C(N,3) p^3 with p = L / C(N,2).
pub fn expected_triads_uniform(n: usize, links: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Input(format!("need at least 3 nodes, got {n}")));
    }
    let max_links = n * (n - 1) / 2;
    if links > max_links {
        return Err(Error::Input(format!("{links} links exceed the {max_links} possible")));
    }
    let nf = n as f64;
    let lf = links as f64;
    Ok(4.0 * lf.powi(3) * (nf - 2.0) / (3.0 * nf.powi(2) * (nf - 1.0).powi(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::proximity::{build_proximity, ProximityMode};
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn prox_from(matrix: Array2<f64>) -> ProximityMatrix {
        ProximityMatrix {
            distance: Array2::zeros(matrix.dim()),
            proximity: matrix,
            mode: ProximityMode::ContinuousRank,
        }
    }

    #[test]
    fn support_two_sellers_identity() {
        // K = 1, r = 1, the other seller serves the buyer -> S = 1
        let y = array![[false], [true]];
        let prox = prox_from(array![[0.0, 1.0], [1.0, 0.0]]);
        let s = common_support_row(&y, &prox, 0).unwrap();
        assert_abs_diff_eq!(s[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn support_hand_sum_three_sellers() {
        // sellers 1 and 2 are thirds for seller 0 with r = {1.0, 0.5};
        // y = {1, 0} -> S = (1*1 + 0.5*0)/2 = 0.5
        let y = array![[false], [true], [false]];
        let prox = prox_from(array![[0.0, 1.0, 0.5], [1.0, 0.0, 0.3], [0.5, 0.3, 0.0]]);
        let s = common_support_row(&y, &prox, 0).unwrap();
        assert_abs_diff_eq!(s[0], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn support_zero_when_no_third_links() {
        let y = array![[true, true], [false, false], [false, false]];
        let prox = prox_from(array![[0.0, 1.0, 0.5], [1.0, 0.0, 0.3], [0.5, 0.3, 0.0]]);
        let s = common_support_row(&y, &prox, 0).unwrap();
        assert_eq!(s, array![0.0, 0.0]);
    }

    #[test]
    fn support_matrix_matches_naive_double_loop() {
        // fixture graph with mixed links; oracle is the defining double loop
        let y = array![
            [true, false, true, false],
            [false, true, true, false],
            [true, true, false, true],
            [false, false, true, true],
            [true, false, false, false]
        ];
        let d = crate::graph::proximity::distance_matrix(&[
            (4.60, -74.08),
            (4.70, -74.05),
            (4.65, -74.20),
            (4.80, -74.10),
            (4.72, -74.15),
        ])
        .unwrap();
        let prox = build_proximity(d, ProximityMode::ContinuousRank).unwrap();
        let s = common_support_matrix(&y, &prox).unwrap();

        let n_sellers = y.nrows();
        let k_norm = (n_sellers - 1) as f64;
        for i in 0..n_sellers {
            for j in 0..y.ncols() {
                let mut acc = 0.0;
                for k in 0..n_sellers {
                    if k != i && y[(k, j)] {
                        acc += prox.proximity[(k, i)];
                    }
                }
                assert_abs_diff_eq!(s[(i, j)], acc / k_norm, epsilon = 1e-12);
            }
        }

        // row accessor agrees with the matrix
        for i in 0..n_sellers {
            let row = common_support_row(&y, &prox, i).unwrap();
            for j in 0..y.ncols() {
                assert_abs_diff_eq!(row[j], s[(i, j)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn support_dimension_mismatch() {
        let y = array![[true], [false]];
        let prox = prox_from(Array2::zeros((3, 3)));
        assert!(matches!(common_support_row(&y, &prox, 0), Err(Error::Size(_))));
    }

    #[test]
    fn shared_partner_triangle() {
        let adj = array![
            [false, true, true],
            [true, false, true],
            [true, true, false]
        ];
        assert_abs_diff_eq!(shared_partner_count(&adj, 0, 1).unwrap(), 1.0);
    }

    #[test]
    fn shared_partner_none() {
        let adj = array![
            [false, true, false],
            [true, false, false],
            [false, false, false]
        ];
        assert_eq!(shared_partner_count(&adj, 0, 1).unwrap(), 0.0);
    }

    #[test]
    fn shared_partner_two_of_three_thirds() {
        // 5 nodes; thirds {2,3,4} for the (0,1) pair; 2 and 3 linked to both
        let mut adj = Array2::from_elem((5, 5), false);
        let mut link = |a: usize, b: usize| {
            adj[(a, b)] = true;
            adj[(b, a)] = true;
        };
        link(2, 0);
        link(2, 1);
        link(3, 0);
        link(3, 1);
        link(4, 0); // linked to 0 only
        // exhaustive oracle over third nodes
        let oracle = (0..5)
            .filter(|&k| k != 0 && k != 1 && adj[(k, 0)] && adj[(k, 1)])
            .count() as f64
            / 3.0;
        assert_abs_diff_eq!(shared_partner_count(&adj, 0, 1).unwrap(), oracle);
        assert_abs_diff_eq!(shared_partner_count(&adj, 0, 1).unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn shared_partner_requires_thirds() {
        let adj = Array2::from_elem((2, 2), false);
        assert!(matches!(shared_partner_count(&adj, 0, 1), Err(Error::Size(_))));
    }

    /// Exhaustive C(N,3) triangle enumeration, the independent oracle.
    fn triangles_by_enumeration(adj: &Array2<bool>) -> u64 {
        let n = adj.nrows();
        let mut t = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    if adj[(a, b)] && adj[(b, c)] && adj[(a, c)] {
                        t += 1;
                    }
                }
            }
        }
        t
    }

    #[test]
    fn triads_empty_graph() {
        let adj = Array2::from_elem((6, 6), false);
        assert_eq!(triad_count(&adj).unwrap(), 0);
    }

    #[test]
    fn triads_single_triangle_counts_six() {
        let mut adj = Array2::from_elem((4, 4), false);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            adj[(a, b)] = true;
            adj[(b, a)] = true;
        }
        assert_eq!(triangles_by_enumeration(&adj), 1);
        assert_eq!(triad_count(&adj).unwrap(), 6);
        assert_eq!(triangle_count(&adj).unwrap(), 1);
    }

    #[test]
    fn triads_four_clique() {
        let mut adj = Array2::from_elem((4, 4), false);
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    adj[(a, b)] = true;
                }
            }
        }
        assert_eq!(triangles_by_enumeration(&adj), 4);
        assert_eq!(triad_count(&adj).unwrap(), 24);
    }

    #[test]
    fn triads_match_enumeration_on_random_graphs() {
        for seed in 0..25u64 {
            let n = 5 + (crate::rng::mix64(seed) % 25) as usize;
            let p = 0.05 + 0.4 * crate::rng::uniform(seed, 999);
            let mut adj = Array2::from_elem((n, n), false);
            for a in 0..n {
                for b in (a + 1)..n {
                    if crate::rng::uniform_dyad(seed, a, b) < p {
                        adj[(a, b)] = true;
                        adj[(b, a)] = true;
                    }
                }
            }
            assert_eq!(triad_count(&adj).unwrap(), 6 * triangles_by_enumeration(&adj));
        }
    }

    #[test]
    fn triads_reject_nonzero_diagonal() {
        let mut adj = Array2::from_elem((3, 3), false);
        adj[(1, 1)] = true;
        assert!(triad_count(&adj).is_err());
    }

    #[test]
    fn expected_triads_zero_links() {
        assert_eq!(expected_triads_uniform(10, 0).unwrap(), 0.0);
    }

    #[test]
    fn expected_triads_complete_graph() {
        // p = 1 forces all C(N,3) triangles
        for n in [3usize, 5, 10, 17] {
            let l = n * (n - 1) / 2;
            let expect = (n * (n - 1) * (n - 2) / 6) as f64;
            assert_abs_diff_eq!(expected_triads_uniform(n, l).unwrap(), expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn expected_triads_reference_value() {
        assert_abs_diff_eq!(expected_triads_uniform(10, 10).unwrap(), 1.3169, epsilon = 5e-5);
    }

    #[test]
    fn expected_triads_domain_errors() {
        assert!(expected_triads_uniform(2, 1).is_err());
        assert!(expected_triads_uniform(4, 7).is_err());
    }

    #[test]
    fn asinh_reference_values() {
        assert_eq!(asinh(0.0), 0.0);
        assert_abs_diff_eq!(asinh(1.0), 0.881373587019543, epsilon = 1e-15);
        // matches the defining formula
        for x in [0.01, 0.5, 2.0, 10.0, 1e4] {
            assert_abs_diff_eq!(
                asinh(x),
                (x + (1.0 + x * x).sqrt()).ln(),
                epsilon = 1e-12 * (1.0 + x.abs())
            );
        }
    }

    #[test]
    fn asinh_is_odd() {
        for x in [0.1, 0.7, 3.0, 42.0] {
            assert_abs_diff_eq!(asinh(-x), -asinh(x), epsilon = 1e-15);
        }
    }
}
