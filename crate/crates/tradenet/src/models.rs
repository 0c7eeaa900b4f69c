//! Link-formation models and the discrete-choice surplus layer.
//!
//! Three dyadic families are implemented. The logistic model scores a pair
//! through attractiveness, gregariousness, and homophily. The balls-and-bins
//! model throws `beta * x_j (+ gamma * S)` balls at bins sized by seller
//! shares. The generalized Poisson model forms a link with probability
//! `1 - exp(-Lambda)` where `Lambda = alpha * x_i^eta * x_j^beta * (1 + gamma * S)`;
//! it admits a discrete-choice reading in which `Lambda` is gross surplus and
//! a proportional trade-cost change is isomorphic to rescaling `alpha`.
//!
//! Covariate conventions: the Poisson model takes seller and buyer sizes as
//! shares of their side's total; the balls-and-bins model takes raw seller
//! sizes (only the share enters) and mean-normalized buyer sizes.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the logistic dyadic model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogisticParams {
    /// Intercept.
    pub alpha: f64,
    /// Homophily slope.
    pub delta: f64,
    /// Scale of the latent logistic error. Not used by the probability
    /// formula itself; kept with the parameter set for latent-index work.
    pub scale: f64,
    /// Seller attractiveness x^O.
    pub attractiveness: Array1<f64>,
    /// Buyer gregariousness x^D.
    pub gregariousness: Array1<f64>,
}

impl LogisticParams {
    pub fn validate(&self) -> Result<()> {
        if self.scale <= 0.0 {
            return Err(Error::Input("logistic scale must be positive".into()));
        }
        Ok(())
    }
}

/// Linking probability of the logistic model.
pub fn logistic_prob(x_o_i: f64, x_d_j: f64, h_ij: f64, params: &LogisticParams) -> f64 {
    let index = params.alpha + x_o_i + x_d_j + params.delta * h_ij;
    1.0 / (1.0 + (-index).exp())
}

/// Parameters of the (augmented) balls-and-bins model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BallsBinsParams {
    pub beta: f64,
    /// Transitivity weight; 0 recovers the unaugmented model.
    pub gamma: f64,
    /// Optional homophily exponent on the trial count, `n = beta * x_j * h^kappa`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
}

impl BallsBinsParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        let p = BallsBinsParams { beta, gamma, kappa: None };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta <= 0.0 || !self.beta.is_finite() {
            return Err(Error::Input("balls-and-bins beta must be positive".into()));
        }
        if self.gamma < 0.0 || !self.gamma.is_finite() {
            return Err(Error::Input("balls-and-bins gamma must be non-negative".into()));
        }
        Ok(())
    }
}

/// Probability that at least one of `beta * x_j + gamma * S` trials lands in
/// seller i's bin of size `x_i / total`.
pub fn ballsbins_prob(
    x_i: f64,
    x_j: f64,
    total_seller_size: f64,
    s_ij: f64,
    params: &BallsBinsParams,
) -> Result<f64> {
    if total_seller_size <= 0.0 {
        return Err(Error::Input("total seller size must be positive".into()));
    }
    let share = x_i / total_seller_size;
    let base = 1.0 - share;
    if base < -1e-12 || share < 0.0 {
        return Err(Error::Numeric(format!("seller share {share} outside [0, 1]")));
    }
    let trials = params.beta * x_j + params.gamma * s_ij;
    if trials < 0.0 {
        return Err(Error::Numeric("trial count must be non-negative".into()));
    }
    // powf evaluates via exp/log in the real domain; 0^0 = 1 covers the
    // sole-seller zero-trial corner.
    Ok(1.0 - base.clamp(0.0, 1.0).powf(trials))
}

/// Balls-and-bins with the homophily-extended trial count `beta * x_j * h^kappa`.
pub fn ballsbins_prob_homophily(
    x_i: f64,
    x_j: f64,
    total_seller_size: f64,
    s_ij: f64,
    h_ij: f64,
    params: &BallsBinsParams,
) -> Result<f64> {
    let kappa = params.kappa.unwrap_or(0.0);
    if h_ij < 0.0 {
        return Err(Error::Input("homophily covariate must be non-negative".into()));
    }
    let scaled = BallsBinsParams {
        beta: params.beta * h_ij.powf(kappa),
        gamma: params.gamma,
        kappa: None,
    };
    ballsbins_prob(x_i, x_j, total_seller_size, s_ij, &scaled)
}

/// Parameters of the generalized Poisson link model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonParams {
    pub alpha: f64,
    pub eta: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl PoissonParams {
    pub fn new(alpha: f64, eta: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = PoissonParams { alpha, eta, beta, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("eta", self.eta), ("beta", self.beta)] {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::Input(format!("poisson {name} must be positive, got {v}")));
            }
        }
        if self.gamma < 0.0 || !self.gamma.is_finite() {
            return Err(Error::Input("poisson gamma must be non-negative".into()));
        }
        Ok(())
    }
}

/// Arrival rate `Lambda = alpha * x_i^eta * x_j^beta * (1 + gamma * S)`.
pub fn poisson_rate(x_i: f64, x_j: f64, s_ij: f64, params: &PoissonParams) -> Result<f64> {
    if x_i < 0.0 || x_j < 0.0 || s_ij < 0.0 {
        return Err(Error::Input("poisson rate arguments must be non-negative".into()));
    }
    Ok(params.alpha * x_i.powf(params.eta) * x_j.powf(params.beta) * (1.0 + params.gamma * s_ij))
}

/// Probability of at least one arrival, `1 - exp(-Lambda)`.
pub fn poisson_prob(lambda: f64) -> f64 {
    debug_assert!(lambda >= 0.0);
    -(-lambda).exp_m1()
}

/// Expected surplus of a pair under the discrete-choice reading,
/// `Lambda - 1 + exp(-Lambda)`.
pub fn expected_surplus(lambda: f64) -> f64 {
    debug_assert!(lambda >= 0.0);
    lambda + (-lambda).exp_m1()
}

/// Rescale `alpha` for an `x`% change in proportional (iceberg) trade costs:
/// `alpha' = alpha * 100 / (100 + x)`.
pub fn apply_trade_cost(params: &PoissonParams, tau_pct_increase: f64) -> Result<PoissonParams> {
    if tau_pct_increase <= -100.0 {
        return Err(Error::Input(format!(
            "trade cost change must exceed -100%, got {tau_pct_increase}"
        )));
    }
    Ok(PoissonParams { alpha: params.alpha * 100.0 / (100.0 + tau_pct_increase), ..*params })
}

/// Sizes entering a model's probability map, already on the model's scale.
#[derive(Debug, Clone)]
pub struct ModelCovariates {
    /// Seller covariate x_i per seller.
    pub seller: Array1<f64>,
    /// Buyer covariate x_j per buyer.
    pub buyer: Array1<f64>,
    /// Total of the raw seller sizes (balls-and-bins bin denominator).
    pub total_seller_size: f64,
}

impl ModelCovariates {
    /// Poisson convention: both sides as shares of their side's total.
    pub fn poisson_shares(seller_sizes: &Array1<f64>, buyer_sizes: &Array1<f64>) -> Result<Self> {
        let si = seller_sizes.sum();
        let sj = buyer_sizes.sum();
        if si <= 0.0 || sj <= 0.0 {
            return Err(Error::Input("size totals must be positive".into()));
        }
        Ok(ModelCovariates {
            seller: seller_sizes / si,
            buyer: buyer_sizes / sj,
            total_seller_size: 1.0,
        })
    }

    /// Balls-and-bins convention: raw seller sizes, mean-normalized buyers.
    pub fn ballsbins_normalized(
        seller_sizes: &Array1<f64>,
        buyer_sizes: &Array1<f64>,
    ) -> Result<Self> {
        let total = seller_sizes.sum();
        let mean_j = buyer_sizes.mean().unwrap_or(0.0);
        if total <= 0.0 || mean_j <= 0.0 {
            return Err(Error::Input("size totals must be positive".into()));
        }
        Ok(ModelCovariates {
            seller: seller_sizes.clone(),
            buyer: buyer_sizes / mean_j,
            total_seller_size: total,
        })
    }
}

/// A dyadic link-formation model with its parameters.
#[derive(Debug, Clone)]
pub enum LinkModel {
    Logistic(LogisticParams),
    BallsBins(BallsBinsParams),
    Poisson(PoissonParams),
}

impl LinkModel {
    /// Seller×buyer matrix of linking probabilities given common support.
    ///
    /// For the logistic model the common-support entry plays the pair
    /// covariate role (weighted by `delta`).
    pub fn probability_matrix(
        &self,
        cov: &ModelCovariates,
        s_tilde: &Array2<f64>,
    ) -> Result<Array2<f64>> {
        let n_i = cov.seller.len();
        let n_j = cov.buyer.len();
        if s_tilde.dim() != (n_i, n_j) {
            return Err(Error::Size(format!(
                "common support shape {:?} does not match covariates ({n_i}, {n_j})",
                s_tilde.dim()
            )));
        }
        let mut p = Array2::zeros((n_i, n_j));
        match self {
            LinkModel::Logistic(params) => {
                params.validate()?;
                if params.attractiveness.len() != n_i || params.gregariousness.len() != n_j {
                    return Err(Error::Size("logistic node effects mismatch".into()));
                }
                for i in 0..n_i {
                    for j in 0..n_j {
                        p[(i, j)] = logistic_prob(
                            params.attractiveness[i],
                            params.gregariousness[j],
                            s_tilde[(i, j)],
                            params,
                        );
                    }
                }
            }
            LinkModel::BallsBins(params) => {
                params.validate()?;
                for i in 0..n_i {
                    for j in 0..n_j {
                        p[(i, j)] = ballsbins_prob(
                            cov.seller[i],
                            cov.buyer[j],
                            cov.total_seller_size,
                            s_tilde[(i, j)],
                            params,
                        )?;
                    }
                }
            }
            LinkModel::Poisson(params) => {
                params.validate()?;
                // hoist the power terms; only the support factor is per-dyad
                let xi_pow = cov.seller.mapv(|x| x.powf(params.eta));
                let xj_pow = cov.buyer.mapv(|x| x.powf(params.beta));
                for i in 0..n_i {
                    let base = params.alpha * xi_pow[i];
                    for j in 0..n_j {
                        let lambda = base * xj_pow[j] * (1.0 + params.gamma * s_tilde[(i, j)]);
                        p[(i, j)] = poisson_prob(lambda);
                    }
                }
            }
        }
        Ok(p)
    }

    /// Whether the model reads the common-support matrix at all.
    pub fn uses_transitivity(&self) -> bool {
        match self {
            LinkModel::Logistic(p) => p.delta != 0.0,
            LinkModel::BallsBins(p) => p.gamma != 0.0,
            LinkModel::Poisson(p) => p.gamma != 0.0,
        }
    }
}
