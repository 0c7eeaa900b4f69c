//! Geographic distance and seller-seller proximity.
//!
//! Proximity translates pairwise great-circle distances into a [0,1] measure
//! where closer sellers score higher. Two variants are supported: a
//! rank-normalized continuous measure (largest distance maps to 0, smallest
//! to 1, ties share the average rank) and a quantile threshold indicator
//! (1 when distance is at or below the q-th percentile of off-diagonal
//! distances, else 0).

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mean Earth radius, km (IUGG R1).
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// Great-circle distance in km between two (lat, lon) points in degrees.
pub fn haversine_distance(p1: (f64, f64), p2: (f64, f64)) -> Result<f64> {
    for &(lat, lon) in [&p1, &p2] {
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
            return Err(Error::Input(format!("coordinates out of range: ({lat}, {lon})")));
        }
    }
    let (lat1, lon1) = (p1.0.to_radians(), p1.1.to_radians());
    let (lat2, lon2) = (p2.0.to_radians(), p2.1.to_radians());
    let dlat = lat2 - lat1;
    let dlon = lon2 - lon1;
    let a = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
    Ok(2.0 * EARTH_RADIUS_KM * a.sqrt().min(1.0).asin())
}

/// Symmetric pairwise distance matrix (zero diagonal) from coordinates.
pub fn distance_matrix(coords: &[(f64, f64)]) -> Result<Array2<f64>> {
    let n = coords.len();
    let mut d = Array2::zeros((n, n));
    for i in 0..n {
        for k in (i + 1)..n {
            let km = haversine_distance(coords[i], coords[k])?;
            d[(i, k)] = km;
            d[(k, i)] = km;
        }
    }
    Ok(d)
}

/// How distances are mapped into [0,1] proximity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProximityMode {
    /// Rank-normalized continuous measure; ties take the average rank.
    ContinuousRank,
    /// Binary indicator: 1 iff distance <= the q-th percentile (nearest rank).
    QuantileThreshold { q: f64 },
}

/// Seller-seller distances plus the derived proximity weights.
#[derive(Debug, Clone)]
pub struct ProximityMatrix {
    pub distance: Array2<f64>,
    pub proximity: Array2<f64>,
    pub mode: ProximityMode,
}

impl ProximityMatrix {
    pub fn n_sellers(&self) -> usize {
        self.proximity.nrows()
    }
}

/// q-th percentile by the nearest-rank method on a sorted slice.
pub fn percentile_nearest_rank(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    let rank = ((q / 100.0) * n as f64).ceil() as usize;
    sorted[rank.clamp(1, n) - 1]
}

fn validate_distances(distance: &Array2<f64>) -> Result<()> {
    let n = distance.nrows();
    if distance.ncols() != n {
        return Err(Error::Size("distance matrix must be square".into()));
    }
    if n < 2 {
        return Err(Error::Size("proximity needs at least 2 sellers".into()));
    }
    for i in 0..n {
        if distance[(i, i)] != 0.0 {
            return Err(Error::Input("distance diagonal must be zero".into()));
        }
        for k in 0..n {
            let d = distance[(i, k)];
            if !d.is_finite() || d < 0.0 {
                return Err(Error::Input("distances must be finite and non-negative".into()));
            }
            if (d - distance[(k, i)]).abs() > 1e-9 * (1.0 + d.abs()) {
                return Err(Error::Input("distance matrix must be symmetric".into()));
            }
        }
    }
    Ok(())
}

/// Build a [`ProximityMatrix`] from a seller-seller distance matrix.
///
/// Continuous mode assigns off-diagonal upper-triangle distances average
/// ranks and maps them to `1 - (rank - 1)/(M - 1)` over the M pair distances;
/// with a single pair (2 sellers) the proximity is 1. Quantile mode applies
/// the nearest-rank percentile threshold. The diagonal is excluded from
/// ranking and set to zero.
pub fn build_proximity(distance: Array2<f64>, mode: ProximityMode) -> Result<ProximityMatrix> {
    validate_distances(&distance)?;
    let n = distance.nrows();
    let mut proximity = Array2::zeros((n, n));

    match mode {
        ProximityMode::ContinuousRank => {
            let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for k in (i + 1)..n {
                    pairs.push((distance[(i, k)], i, k));
                }
            }
            let m = pairs.len();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distances"));
            // average ranks over tie runs (1-based)
            let mut ranks = vec![0.0; m];
            let mut start = 0;
            while start < m {
                let mut end = start + 1;
                while end < m && pairs[end].0 == pairs[start].0 {
                    end += 1;
                }
                let avg = (start + 1 + end) as f64 / 2.0; // mean of start+1 ..= end
                for r in ranks.iter_mut().take(end).skip(start) {
                    *r = avg;
                }
                start = end;
            }
            for (idx, &(_, i, k)) in pairs.iter().enumerate() {
                let p = if m == 1 { 1.0 } else { 1.0 - (ranks[idx] - 1.0) / (m as f64 - 1.0) };
                proximity[(i, k)] = p;
                proximity[(k, i)] = p;
            }
        }
        ProximityMode::QuantileThreshold { q } => {
            if !(0.0..100.0).contains(&q) || q <= 0.0 {
                return Err(Error::Input(format!("quantile q must lie in (0, 100), got {q}")));
            }
            let mut offdiag: Vec<f64> = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for k in (i + 1)..n {
                    offdiag.push(distance[(i, k)]);
                }
            }
            offdiag.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
            let threshold = percentile_nearest_rank(&offdiag, q);
            for i in 0..n {
                for k in 0..n {
                    if i != k && distance[(i, k)] <= threshold {
                        proximity[(i, k)] = 1.0;
                    }
                }
            }
        }
    }

    Ok(ProximityMatrix { distance, proximity, mode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    /// Independent oracle: spherical law of cosines.
    fn law_of_cosines_km(p1: (f64, f64), p2: (f64, f64)) -> f64 {
        let (lat1, lon1) = (p1.0.to_radians(), p1.1.to_radians());
        let (lat2, lon2) = (p2.0.to_radians(), p2.1.to_radians());
        let c = lat1.sin() * lat2.sin() + lat1.cos() * lat2.cos() * (lon2 - lon1).cos();
        EARTH_RADIUS_KM * c.clamp(-1.0, 1.0).acos()
    }

    #[test]
    fn haversine_matches_law_of_cosines_oracle() {
        let bogota = (4.711, -74.072);
        let medellin = (6.244, -75.581);
        let d = haversine_distance(bogota, medellin).unwrap();
        let oracle = law_of_cosines_km(bogota, medellin);
        assert_abs_diff_eq!(d, oracle, epsilon = 0.01);
        // frozen from the law-of-cosines oracle at R = 6371.0088
        assert_abs_diff_eq!(d, 238.65, epsilon = 0.5);
    }

    #[test]
    fn haversine_identity_is_zero() {
        assert_eq!(haversine_distance((12.3, -45.6), (12.3, -45.6)).unwrap(), 0.0);
    }

    #[test]
    fn haversine_antipodal_half_circumference() {
        let d = haversine_distance((0.0, 0.0), (0.0, 180.0)).unwrap();
        assert_abs_diff_eq!(d, std::f64::consts::PI * EARTH_RADIUS_KM, epsilon = 1e-6);
        assert_abs_diff_eq!(d, 20015.1, epsilon = 0.1);
    }

    #[test]
    fn haversine_symmetric_nonnegative() {
        let a = (4.0, -74.0);
        let b = (6.0, -75.0);
        let dab = haversine_distance(a, b).unwrap();
        let dba = haversine_distance(b, a).unwrap();
        assert_eq!(dab.to_bits(), dba.to_bits());
        assert!(dab > 0.0);
    }

    #[test]
    fn haversine_rejects_out_of_range() {
        assert!(haversine_distance((91.0, 0.0), (0.0, 0.0)).is_err());
        assert!(haversine_distance((0.0, 181.0), (0.0, 0.0)).is_err());
    }

    fn three_seller_distances() -> Array2<f64> {
        // pair distances: (0,1)=2, (0,2)=5, (1,2)=9
        array![[0.0, 2.0, 5.0], [2.0, 0.0, 9.0], [5.0, 9.0, 0.0]]
    }

    #[test]
    fn continuous_ranks_match_sort_oracle() {
        let p = build_proximity(three_seller_distances(), ProximityMode::ContinuousRank).unwrap();
        // sort-based oracle: distances {2,5,9} -> ranks {1,2,3} -> prox {1.0, 0.5, 0.0}
        assert_abs_diff_eq!(p.proximity[(0, 1)], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.proximity[(0, 2)], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(p.proximity[(1, 2)], 0.0, epsilon = 1e-12);
        assert_eq!(p.proximity[(0, 0)], 0.0);
        assert_eq!(p.proximity[(1, 0)], p.proximity[(0, 1)]);
    }

    #[test]
    fn quantile_median_threshold() {
        // d^50 over {2,5,9} by nearest rank = 5
        let p =
            build_proximity(three_seller_distances(), ProximityMode::QuantileThreshold { q: 50.0 })
                .unwrap();
        assert_eq!(p.proximity[(0, 1)], 1.0);
        assert_eq!(p.proximity[(0, 2)], 1.0);
        assert_eq!(p.proximity[(1, 2)], 0.0);
        assert_eq!(p.proximity[(0, 0)], 0.0);
    }

    #[test]
    fn equal_distances_take_average_rank() {
        let d = array![[0.0, 3.0, 3.0], [3.0, 0.0, 3.0], [3.0, 3.0, 0.0]];
        let p = build_proximity(d, ProximityMode::ContinuousRank).unwrap();
        // three tied pairs share rank 2 -> proximity 0.5 everywhere off-diagonal
        for i in 0..3 {
            for k in 0..3 {
                let expect = if i == k { 0.0 } else { 0.5 };
                assert_abs_diff_eq!(p.proximity[(i, k)], expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn continuous_invariant_to_monotone_rescaling() {
        let d = three_seller_distances();
        let p1 = build_proximity(d.clone(), ProximityMode::ContinuousRank).unwrap();
        let p2 = build_proximity(d.mapv(|x| 3.0 * x + 0.0), ProximityMode::ContinuousRank).unwrap();
        assert_eq!(p1.proximity, p2.proximity);
    }

    #[test]
    fn two_sellers_single_pair() {
        let d = array![[0.0, 7.0], [7.0, 0.0]];
        let p = build_proximity(d, ProximityMode::ContinuousRank).unwrap();
        assert_eq!(p.proximity[(0, 1)], 1.0);
    }

    #[test]
    fn rejects_single_seller() {
        let d = Array2::zeros((1, 1));
        assert!(matches!(
            build_proximity(d, ProximityMode::ContinuousRank),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn nearest_rank_percentile() {
        let v = [2.0, 5.0, 9.0];
        assert_eq!(percentile_nearest_rank(&v, 50.0), 5.0);
        assert_eq!(percentile_nearest_rank(&v, 100.0), 9.0);
        assert_eq!(percentile_nearest_rank(&v, 1.0), 2.0);
    }
}
