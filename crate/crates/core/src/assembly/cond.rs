//! Spectral condition numbers `κ = λ_max / λ_min`.

use serde::Serialize;

use crate::basis::BasisSet;
use crate::error::{Error, Result};

use super::eigen::eigenvalues;
use super::matrix::{mass_matrix, stiffness_matrix, Path, SymmetricMatrix};

/// Eigenvalues at or below this fraction of `λ_max` count as zero when
/// zeros are excluded.
pub const ZERO_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct CondReport {
    pub element: Option<String>,
    pub order: Option<usize>,
    pub variant: Option<String>,
    pub size: usize,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub kappa: f64,
    /// Eigenvalues treated as zero and left out of `λ_min`.
    pub excluded: usize,
}

impl CondReport {
    pub fn labelled(mut self, set: &BasisSet) -> Self {
        self.element = Some(set.kind.name().to_string());
        self.order = Some(set.order);
        self.variant = set.variant.map(|v| v.name().to_string());
        self
    }
}

pub fn condition_number(a: &SymmetricMatrix, exclude_zeros: bool) -> Result<CondReport> {
    condition_number_with(a, exclude_zeros.then_some(ZERO_THRESHOLD))
}

/// As [`condition_number`] with an explicit relative zero threshold.
pub fn condition_number_with(a: &SymmetricMatrix, threshold: Option<f64>) -> Result<CondReport> {
    let spec = eigenvalues(a)?;
    let lambda_max = spec.max();
    if !(lambda_max > 0.0) {
        return Err(Error::AllEigenvaluesExcluded);
    }
    let cut = threshold.map_or(f64::NEG_INFINITY, |t| t * lambda_max);
    let kept: Vec<f64> = spec.values.iter().copied().filter(|&v| v > cut).collect();
    let lambda_min = *kept.first().ok_or(Error::AllEigenvaluesExcluded)?;
    Ok(CondReport {
        element: None,
        order: None,
        variant: None,
        size: a.order(),
        lambda_max,
        lambda_min,
        kappa: lambda_max / lambda_min,
        excluded: spec.values.len() - kept.len(),
    })
}

/// `(κ(M), κ(S))` for a basis set, zeros excluded for the stiffness only.
pub fn set_condition(set: &BasisSet, path: Path) -> Result<(CondReport, CondReport)> {
    let m = condition_number(&mass_matrix(set, path)?, false)?.labelled(set);
    let s = condition_number(&stiffness_matrix(set, path)?, true)?.labelled(set);
    Ok((m, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_perfectly_conditioned() {
        let r = condition_number(&SymmetricMatrix::identity(4), false).unwrap();
        assert_eq!(r.kappa, 1.0);
        assert_eq!(r.excluded, 0);
    }

    #[test]
    fn zero_exclusion() {
        let m = SymmetricMatrix::from_dense(&[
            vec![4.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        let r = condition_number(&m, true).unwrap();
        assert_eq!((r.kappa, r.excluded), (4.0, 1));
        assert!(condition_number(&SymmetricMatrix::zeros(2), true).is_err());
    }
}
