//! Chain specifications and the single-particle tridiagonal matrix.
//!
//! A chain of `N+1` spin-1/2 sites is described by nearest-neighbour XY
//! couplings `J_0..J_{N-1}` and on-site Zeeman energies `h_0..h_N`.  Two
//! engineered families are provided:
//!
//! - **Krawtchouk**: `J_l = sqrt((l+1)(N-l))`, `h_l = 0`.  Linear
//!   single-particle spectrum `{N-2k}`.
//! - **Hahn(p, q)**: with `alpha = (2p+1)/(2q)`,
//!   `J_l = sqrt((l+1)(N-l)(alpha+N-l)(alpha+l+1))` and
//!   `h_l = N^2/2 + (alpha+1)N - 2(l - N/2)^2`.  Quadratic spectrum
//!   `k(k + 2 alpha + 1)` and mirror period `q*pi`.
//!
//! Both families are mirror symmetric by construction: `J_l = J_{N-1-l}`
//! and `h_l = h_{N-l}` hold exactly in floating point (the factors are
//! grouped so mirrored indices multiply the same values).

use serde::{Deserialize, Serialize};

use crate::error::ChainError;

/// Coupling family of a chain.
///
/// Serialized as `{"kind": "krawtchouk" | "hahn" | "custom", ...}` with
/// `p`, `q` present only for Hahn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    Krawtchouk,
    Hahn { p: i64, q: i64 },
    Custom,
}

impl Family {
    /// The Hahn parameter `alpha = (2p+1)/(2q)`; `None` for other families.
    pub fn alpha(&self) -> Option<f64> {
        match self {
            Family::Hahn { p, q } => Some((2 * p + 1) as f64 / (2 * q) as f64),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Krawtchouk => "krawtchouk",
            Family::Hahn { .. } => "hahn",
            Family::Custom => "custom",
        }
    }
}

/// A fully specified chain: site count, couplings, fields, and family
/// metadata.  Field order of the JSON form is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    /// Number of sites, `N + 1`.
    pub n_sites: usize,
    /// Nearest-neighbour couplings `J_0..J_{N-1}`.
    pub couplings: Vec<f64>,
    /// On-site Zeeman energies `h_0..h_N`.
    pub fields: Vec<f64>,
    pub family: Family,
    /// Predicted mirror period in units with hbar = 1 (`q*pi` for Hahn);
    /// absent when the period is left to the empirical mirror-time search.
    pub predicted_period: Option<f64>,
}

/// Real symmetric tridiagonal matrix: diagonal `h_l`, off-diagonal `J_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    /// Largest entry magnitude, used to scale residual tolerances.
    pub fn max_abs(&self) -> f64 {
        self.diagonal
            .iter()
            .chain(self.off_diagonal.iter())
            .fold(0.0_f64, |m, &x| m.max(x.abs()))
    }

    pub fn to_dense(&self) -> ndarray::Array2<f64> {
        let n = self.size();
        let mut m = ndarray::Array2::zeros((n, n));
        for i in 0..n {
            m[[i, i]] = self.diagonal[i];
        }
        for i in 0..n - 1 {
            m[[i, i + 1]] = self.off_diagonal[i];
            m[[i + 1, i]] = self.off_diagonal[i];
        }
        m
    }
}

/// Krawtchouk chain on `N+1` sites: `J_l = sqrt((l+1)(N-l))`, zero fields.
///
/// No period is predicted here; the empirical mirror-time search owns that
/// number (it lands at `pi/2` for this normalization, with a global phase).
pub fn krawtchouk_chain(n: usize) -> Result<ChainSpec, ChainError> {
    if n == 0 {
        return Err(ChainError::EmptyChain);
    }
    let couplings = (0..n)
        .map(|l| (((l + 1) * (n - l)) as f64).sqrt())
        .collect();
    Ok(ChainSpec {
        n_sites: n + 1,
        couplings,
        fields: vec![0.0; n + 1],
        family: Family::Krawtchouk,
        predicted_period: None,
    })
}

/// Hahn chain on `N+1` sites with `alpha = (2p+1)/(2q)`.
///
/// Requires `q != 0` and `alpha > -1/2` (all coupling factors positive,
/// weight function positive, normalization constants finite).  The
/// predicted mirror period is `q*pi`.
pub fn hahn_chain(n: usize, p: i64, q: i64) -> Result<ChainSpec, ChainError> {
    if n == 0 {
        return Err(ChainError::EmptyChain);
    }
    if q == 0 {
        return Err(ChainError::InvalidHahnParameters { p, q });
    }
    let alpha = (2 * p + 1) as f64 / (2 * q) as f64;
    if alpha <= -0.5 {
        return Err(ChainError::InvalidHahnParameters { p, q });
    }
    let nf = n as f64;
    let couplings = (0..n)
        .map(|l| {
            let lf = l as f64;
            // Grouped so that l -> N-1-l multiplies identical values and the
            // mirror symmetry J_l = J_{N-1-l} is exact in floating point.
            let hop = (lf + 1.0) * (nf - lf);
            let weight = (alpha + lf + 1.0) * (alpha + nf - lf);
            (hop * weight).sqrt()
        })
        .collect();
    let fields = (0..=n)
        .map(|l| {
            let centered = l as f64 - nf / 2.0;
            nf * nf / 2.0 + (alpha + 1.0) * nf - 2.0 * centered * centered
        })
        .collect();
    Ok(ChainSpec {
        n_sites: n + 1,
        couplings,
        fields,
        family: Family::Hahn { p, q },
        predicted_period: Some(q as f64 * std::f64::consts::PI),
    })
}

/// Wrap user-provided couplings and fields.  Mirror symmetry is reported
/// through [`ChainSpec::is_mirror_symmetric`], never enforced.
pub fn custom_chain(couplings: Vec<f64>, fields: Vec<f64>) -> Result<ChainSpec, ChainError> {
    if couplings.is_empty() {
        return Err(ChainError::EmptyChain);
    }
    if fields.len() != couplings.len() + 1 {
        return Err(ChainError::LengthMismatch {
            couplings: couplings.len(),
            fields: fields.len(),
        });
    }
    Ok(ChainSpec {
        n_sites: couplings.len() + 1,
        couplings,
        fields,
        family: Family::Custom,
        predicted_period: None,
    })
}

impl ChainSpec {
    /// The chain parameter `N` (sites are labelled `0..=N`).
    pub fn n(&self) -> usize {
        self.n_sites - 1
    }

    /// `alpha` for Hahn chains, `None` otherwise.
    pub fn alpha(&self) -> Option<f64> {
        self.family.alpha()
    }

    /// Exact check of `J_l = J_{N-1-l}` and `h_l = h_{N-l}`.
    pub fn is_mirror_symmetric(&self) -> bool {
        let n = self.n();
        (0..self.couplings.len()).all(|l| self.couplings[l] == self.couplings[n - 1 - l])
            && (0..self.fields.len()).all(|l| self.fields[l] == self.fields[n - l])
    }

    /// The single-particle matrix: diagonal = fields, off-diagonal =
    /// couplings.  A plain copy, no floating transformation.
    pub fn single_particle_matrix(&self) -> SymmetricTridiagonal {
        SymmetricTridiagonal {
            diagonal: self.fields.clone(),
            off_diagonal: self.couplings.clone(),
        }
    }

    /// Structural validation for specs read back from JSON.
    pub fn validate(&self) -> Result<(), ChainError> {
        if self.couplings.is_empty() {
            return Err(ChainError::EmptyChain);
        }
        if self.fields.len() != self.couplings.len() + 1 || self.n_sites != self.fields.len() {
            return Err(ChainError::LengthMismatch {
                couplings: self.couplings.len(),
                fields: self.fields.len(),
            });
        }
        match self.family {
            Family::Hahn { p, q } => {
                if q == 0 || self.alpha().is_some_and(|a| a <= -0.5) {
                    return Err(ChainError::InvalidHahnParameters { p, q });
                }
            }
            Family::Krawtchouk | Family::Custom => {}
        }
        if matches!(self.family, Family::Krawtchouk | Family::Hahn { .. }) {
            if let Some((index, &value)) =
                self.couplings.iter().enumerate().find(|(_, &j)| j <= 0.0)
            {
                return Err(ChainError::NonPositiveCoupling { index, value });
            }
        }
        Ok(())
    }
}
