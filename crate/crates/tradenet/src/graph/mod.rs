//! Core data model for bipartite buyer-seller networks.
//!
//! A [`BipartiteGraph`] holds a year-indexed seller×buyer adjacency together
//! with transaction values and immutable node registries. Sellers and buyers
//! live in separate registries; all matrices are dense and rectangularized
//! (every seller×buyer pair is a cell, zeros included).

pub mod proximity;
pub mod stats;
pub mod support;

use std::collections::HashMap;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

/// Node role in the bipartite network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Role {
    Seller,
    Buyer,
}

/// Identifier of a trader: role plus index into the role's registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraderId {
    pub role: Role,
    pub index: usize,
}

impl TraderId {
    pub fn seller(index: usize) -> Self {
        TraderId { role: Role::Seller, index }
    }

    pub fn buyer(index: usize) -> Self {
        TraderId { role: Role::Buyer, index }
    }
}

/// Immutable mapping between external string identifiers and dense indices.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Registry {
    /// Build a registry from unique names, preserving order.
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Input(format!("duplicate registry name: {n}")));
            }
        }
        Ok(Registry { names, index })
    }

    /// Registry with synthetic names `prefix0..prefixN`.
    pub fn synthetic(prefix: &str, n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Registry::new(names).expect("synthetic names are unique")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Year-indexed seller×buyer network with transaction values in constant USD.
///
/// Invariant: `adjacency[t][(i, j)]` is true exactly when `values[t][(i, j)] > 0`,
/// and matrix dimensions are constant across years.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    sellers: Registry,
    buyers: Registry,
    years: Vec<i32>,
    adjacency: Vec<Array2<bool>>,
    values: Vec<Array2<f64>>,
}

impl BipartiteGraph {
    /// Build from per-year value matrices; adjacency is derived (value > 0).
    pub fn from_values(
        sellers: Registry,
        buyers: Registry,
        years: Vec<i32>,
        values: Vec<Array2<f64>>,
    ) -> Result<Self> {
        if years.len() != values.len() {
            return Err(Error::Size(format!(
                "{} years but {} value matrices",
                years.len(),
                values.len()
            )));
        }
        if years.is_empty() {
            return Err(Error::Size("graph needs at least one year".into()));
        }
        let shape = (sellers.len(), buyers.len());
        let mut adjacency = Vec::with_capacity(values.len());
        for (t, v) in values.iter().enumerate() {
            if v.dim() != shape {
                return Err(Error::Size(format!(
                    "value matrix for year {} has shape {:?}, registries imply {:?}",
                    years[t],
                    v.dim(),
                    shape
                )));
            }
            if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::Input(format!(
                    "non-finite or negative value in year {}",
                    years[t]
                )));
            }
            adjacency.push(v.mapv(|x| x > 0.0));
        }
        Ok(BipartiteGraph { sellers, buyers, years, adjacency, values })
    }

    /// Build from boolean link matrices; values are set to 1 on active links.
    pub fn from_links(
        sellers: Registry,
        buyers: Registry,
        years: Vec<i32>,
        links: Vec<Array2<bool>>,
    ) -> Result<Self> {
        let values = links.iter().map(|a| a.mapv(|b| if b { 1.0 } else { 0.0 })).collect();
        let mut g = BipartiteGraph::from_values(sellers, buyers, years, values)?;
        g.adjacency = links;
        Ok(g)
    }

    pub fn n_sellers(&self) -> usize {
        self.sellers.len()
    }

    pub fn n_buyers(&self) -> usize {
        self.buyers.len()
    }

    pub fn sellers(&self) -> &Registry {
        &self.sellers
    }

    pub fn buyers(&self) -> &Registry {
        &self.buyers
    }

    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn n_years(&self) -> usize {
        self.years.len()
    }

    pub fn year_index(&self, year: i32) -> Option<usize> {
        self.years.iter().position(|&y| y == year)
    }

    pub fn adjacency(&self, t: usize) -> &Array2<bool> {
        &self.adjacency[t]
    }

    pub fn values(&self, t: usize) -> &Array2<f64> {
        &self.values[t]
    }

    /// Adjacency slice as 0/1 reals, for matrix arithmetic.
    pub fn link_matrix(&self, t: usize) -> Array2<f64> {
        self.adjacency[t].mapv(|b| if b { 1.0 } else { 0.0 })
    }

    /// Per-seller sorted lists of linked buyer indices for year `t`.
    pub fn seller_links(&self, t: usize) -> Vec<Vec<usize>> {
        seller_link_lists(&self.adjacency[t])
    }

    pub fn active_links(&self, t: usize) -> usize {
        self.adjacency[t].iter().filter(|&&b| b).count()
    }
}

/// Per-seller sorted buyer lists from a boolean slice.
pub fn seller_link_lists(adjacency: &Array2<bool>) -> Vec<Vec<usize>> {
    adjacency
        .rows()
        .into_iter()
        .map(|row| {
            row.iter().enumerate().filter_map(|(j, &b)| if b { Some(j) } else { None }).collect()
        })
        .collect()
}

/// Year-indexed node sizes: annual sales for sellers, annual purchases for buyers.
#[derive(Debug, Clone)]
pub struct NodeCovariates {
    years: Vec<i32>,
    seller_size: Array2<f64>,
    buyer_size: Array2<f64>,
}

impl NodeCovariates {
    pub fn new(years: Vec<i32>, seller_size: Array2<f64>, buyer_size: Array2<f64>) -> Result<Self> {
        if seller_size.nrows() != years.len() || buyer_size.nrows() != years.len() {
            return Err(Error::Size("covariate rows must match year count".into()));
        }
        for m in [&seller_size, &buyer_size] {
            if m.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::Input("sizes must be finite and non-negative".into()));
            }
        }
        Ok(NodeCovariates { years, seller_size, buyer_size })
    }

    /// Constant-over-time covariates from a single cross-section.
    pub fn constant(years: Vec<i32>, seller: &Array1<f64>, buyer: &Array1<f64>) -> Result<Self> {
        let t = years.len();
        let s = Array2::from_shape_fn((t, seller.len()), |(_, i)| seller[i]);
        let b = Array2::from_shape_fn((t, buyer.len()), |(_, j)| buyer[j]);
        NodeCovariates::new(years, s, b)
    }

    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn seller_sizes(&self, t: usize) -> Array1<f64> {
        self.seller_size.row(t).to_owned()
    }

    pub fn buyer_sizes(&self, t: usize) -> Array1<f64> {
        self.buyer_size.row(t).to_owned()
    }

    /// Time-averaged seller sizes.
    pub fn seller_time_mean(&self) -> Array1<f64> {
        self.seller_size.mean_axis(ndarray::Axis(0)).expect("at least one year")
    }

    /// Time-averaged buyer sizes (the x̄ entering the instrument).
    pub fn buyer_time_mean(&self) -> Array1<f64> {
        self.buyer_size.mean_axis(ndarray::Axis(0)).expect("at least one year")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn adjacency_follows_values() {
        let g = BipartiteGraph::from_values(
            Registry::synthetic("s", 2),
            Registry::synthetic("b", 2),
            vec![2019],
            vec![array![[0.0, 3.5], [100.0, 0.0]]],
        )
        .unwrap();
        assert_eq!(g.adjacency(0), &array![[false, true], [true, false]]);
        assert_eq!(g.active_links(0), 2);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let err = BipartiteGraph::from_values(
            Registry::synthetic("s", 2),
            Registry::synthetic("b", 3),
            vec![2019],
            vec![Array2::zeros((2, 2))],
        );
        assert!(matches!(err, Err(Error::Size(_))));
    }

    #[test]
    fn registry_rejects_duplicates() {
        let err = Registry::new(vec!["a".into(), "a".into()]);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn seller_link_lists_sorted() {
        let adj = array![[true, false, true], [false, false, false]];
        let lists = seller_link_lists(&adj);
        assert_eq!(lists, vec![vec![0, 2], vec![]]);
    }
}
