//! Descriptive network statistics: density, degree distributions, turnover.
//!
//! Definitions: a relationship is active in year t when its transaction value
//! is positive; new relationships were inactive in t-1 and active in t;
//! discontinued relationships were active in t-1 and inactive in t (both
//! undefined in the first year). Buyer-level averages are computed buyer
//! first: each buyer is averaged over the years in which it is active, then
//! averages are taken across ever-active buyers.

use ndarray::Array2;
use serde::Serialize;

use crate::graph::BipartiteGraph;

/// Per-year network statistics.
#[derive(Debug, Clone, Serialize)]
pub struct YearStats {
    pub year: i32,
    pub active_links: usize,
    pub active_sellers: usize,
    pub active_buyers: usize,
    /// None in the first year.
    pub new_links: Option<usize>,
    /// None in the first year.
    pub discontinued_links: Option<usize>,
    pub density: f64,
    pub total_value: f64,
    pub sales_per_active_seller: f64,
}

/// Period averages of the per-year statistics.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodAverages {
    pub active_links: f64,
    pub active_sellers: f64,
    pub active_buyers: f64,
    pub new_links: f64,
    pub discontinued_links: f64,
    pub density: f64,
    pub total_value: f64,
    pub sales_per_active_seller: f64,
}

/// Buyer-level averages (buyer first, then across buyers).
#[derive(Debug, Clone, Serialize)]
pub struct BuyerAverages {
    pub sellers_per_buyer: f64,
    pub new_per_buyer: f64,
    pub discontinued_per_buyer: f64,
    pub purchases_per_buyer: f64,
    pub value_per_relationship: f64,
}

/// Full descriptive report for a graph.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeStats {
    pub per_year: Vec<YearStats>,
    /// Outdegree (buyers per seller) sequences, one per year.
    pub outdegree: Vec<Vec<u32>>,
    /// Indegree (sellers per buyer) sequences, one per year.
    pub indegree: Vec<Vec<u32>>,
    pub period: PeriodAverages,
    pub buyer_level: BuyerAverages,
}

fn degree_rows(adj: &Array2<bool>) -> Vec<u32> {
    adj.rows().into_iter().map(|r| r.iter().filter(|&&b| b).count() as u32).collect()
}

fn degree_cols(adj: &Array2<bool>) -> Vec<u32> {
    adj.columns().into_iter().map(|c| c.iter().filter(|&&b| b).count() as u32).collect()
}

/// Compute descriptive statistics for every year plus period and buyer-level averages.
pub fn network_stats(graph: &BipartiteGraph) -> DegreeStats {
    let n_years = graph.n_years();
    let (n_i, n_j) = (graph.n_sellers(), graph.n_buyers());
    let cells = (n_i * n_j) as f64;

    let mut per_year = Vec::with_capacity(n_years);
    let mut outdegree = Vec::with_capacity(n_years);
    let mut indegree = Vec::with_capacity(n_years);
    // per-buyer, per-year turnover for the buyer-level panel
    let mut new_by_buyer = vec![vec![0u32; n_years]; n_j];
    let mut disc_by_buyer = vec![vec![0u32; n_years]; n_j];

    for t in 0..n_years {
        let adj = graph.adjacency(t);
        let out = degree_rows(adj);
        let ind = degree_cols(adj);
        let links = out.iter().map(|&d| d as usize).sum::<usize>();
        let total_value = graph.values(t).sum();
        let active_sellers = out.iter().filter(|&&d| d > 0).count();
        let active_buyers = ind.iter().filter(|&&d| d > 0).count();

        let (new_links, discontinued) = if t == 0 {
            (None, None)
        } else {
            let prev = graph.adjacency(t - 1);
            let mut new_count = 0;
            let mut disc_count = 0;
            for i in 0..n_i {
                for j in 0..n_j {
                    let now = adj[(i, j)];
                    let before = prev[(i, j)];
                    if now && !before {
                        new_count += 1;
                        new_by_buyer[j][t] += 1;
                    } else if !now && before {
                        disc_count += 1;
                        disc_by_buyer[j][t] += 1;
                    }
                }
            }
            (Some(new_count), Some(disc_count))
        };

        per_year.push(YearStats {
            year: graph.years()[t],
            active_links: links,
            active_sellers,
            active_buyers,
            new_links,
            discontinued_links: discontinued,
            density: links as f64 / cells,
            total_value,
            sales_per_active_seller: if active_sellers > 0 {
                total_value / active_sellers as f64
            } else {
                0.0
            },
        });
        outdegree.push(out);
        indegree.push(ind);
    }

    let mean = |f: &dyn Fn(&YearStats) -> f64, rows: &[YearStats]| -> f64 {
        if rows.is_empty() {
            0.0
        } else {
            rows.iter().map(|r| f(r)).sum::<f64>() / rows.len() as f64
        }
    };
    let turnover_years = &per_year[1.min(per_year.len())..];
    let period = PeriodAverages {
        active_links: mean(&|r| r.active_links as f64, &per_year),
        active_sellers: mean(&|r| r.active_sellers as f64, &per_year),
        active_buyers: mean(&|r| r.active_buyers as f64, &per_year),
        new_links: mean(&|r| r.new_links.unwrap_or(0) as f64, turnover_years),
        discontinued_links: mean(&|r| r.discontinued_links.unwrap_or(0) as f64, turnover_years),
        density: mean(&|r| r.density, &per_year),
        total_value: mean(&|r| r.total_value, &per_year),
        sales_per_active_seller: mean(&|r| r.sales_per_active_seller, &per_year),
    };

    // Buyer-level: average each buyer over its active years, then across
    // ever-active buyers.
    let mut sellers_acc = Vec::new();
    let mut new_acc = Vec::new();
    let mut disc_acc = Vec::new();
    let mut purchases_acc = Vec::new();
    let mut total_purchases = 0.0;
    let mut total_links_all = 0usize;
    for j in 0..n_j {
        let active_years: Vec<usize> =
            (0..n_years).filter(|&t| indegree[t][j] > 0).collect();
        if active_years.is_empty() {
            continue;
        }
        let ny = active_years.len() as f64;
        let deg_sum: f64 = active_years.iter().map(|&t| indegree[t][j] as f64).sum();
        let buy_sum: f64 =
            active_years.iter().map(|&t| graph.values(t).column(j).sum()).collect::<Vec<_>>().iter().sum();
        sellers_acc.push(deg_sum / ny);
        purchases_acc.push(buy_sum / ny);
        let turnover: Vec<usize> = active_years.iter().copied().filter(|&t| t > 0).collect();
        if !turnover.is_empty() {
            let nt = turnover.len() as f64;
            new_acc.push(turnover.iter().map(|&t| new_by_buyer[j][t] as f64).sum::<f64>() / nt);
            disc_acc.push(turnover.iter().map(|&t| disc_by_buyer[j][t] as f64).sum::<f64>() / nt);
        }
        total_purchases += buy_sum;
        total_links_all += active_years.iter().map(|&t| indegree[t][j] as usize).sum::<usize>();
    }
    let avg = |v: &[f64]| if v.is_empty() { 0.0 } else { v.iter().sum::<f64>() / v.len() as f64 };
    let buyer_level = BuyerAverages {
        sellers_per_buyer: avg(&sellers_acc),
        new_per_buyer: avg(&new_acc),
        discontinued_per_buyer: avg(&disc_acc),
        purchases_per_buyer: avg(&purchases_acc),
        value_per_relationship: if total_links_all > 0 {
            total_purchases / total_links_all as f64
        } else {
            0.0
        },
    };

    DegreeStats { per_year, outdegree, indegree, period, buyer_level }
}
