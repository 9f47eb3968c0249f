//! Eigenvalue histograms of symmetric convolution matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;

use crate::rational::{fmt_rational, Rational};

use super::quotient::{kernel_dim_exact, ConvolutionMatrix};
use super::SpectralError;

/// Dense eigen-decomposition is only attempted up to this size.
pub const MAX_DENSE: usize = 1024;

/// Eigenvalues closer than this are treated as equal when sizing buckets.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub buckets: Vec<(f64, f64, usize)>,
    /// Exact kernel fraction.
    pub atom: Rational,
}

impl Histogram {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_low,bin_high,count\n");
        for (lo, hi, c) in &self.buckets {
            out.push_str(&format!("{lo},{hi},{c}\n"));
        }
        out.push_str(&format!("atom,0,{}\n", fmt_rational(&self.atom)));
        out
    }
}

pub fn eigenvalues(m: &ConvolutionMatrix) -> Result<Vec<f64>, SpectralError> {
    if !m.is_symmetric() {
        return Err(SpectralError::NotSymmetric);
    }
    if m.size > MAX_DENSE {
        return Err(SpectralError::TooLarge { what: "dense eigenproblem", limit: MAX_DENSE });
    }
    let mut dense = DMatrix::<f64>::zeros(m.size, m.size);
    for (x, row) in m.rows.iter().enumerate() {
        for (&y, c) in row {
            dense[(x, y)] = c.to_f64().unwrap_or(f64::NAN);
        }
    }
    let mut values: Vec<f64> = SymmetricEigen::new(dense).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// `bins` equal buckets over `[min, max]` of the spectrum (one bucket when
/// the spectrum is a single point), plus the exact atom at zero.
pub fn spectrum_histogram(m: &ConvolutionMatrix, bins: usize) -> Result<Histogram, SpectralError> {
    if bins == 0 {
        return Err(SpectralError::InvalidParameter("bins must be positive".into()));
    }
    let values = eigenvalues(m)?;
    let atom = kernel_dim_exact(m);
    let (Some(&lo), Some(&hi)) = (values.first(), values.last()) else {
        return Ok(Histogram { buckets: Vec::new(), atom });
    };
    if hi - lo <= TOLERANCE {
        let c = (lo * 1e9).round() / 1e9;
        return Ok(Histogram { buckets: vec![(c, c, values.len())], atom });
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for v in &values {
        let b = (((v - lo) / width).floor() as usize).min(bins - 1);
        counts[b] += 1;
    }
    let buckets = counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| (lo + width * i as f64, if i + 1 == bins { hi } else { lo + width * (i + 1) as f64 }, c))
        .collect();
    Ok(Histogram { buckets, atom })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_single_bucket() {
        let h = spectrum_histogram(&ConvolutionMatrix::identity(6), 10).unwrap();
        assert_eq!(h.buckets, vec![(1.0, 1.0, 6)]);
        assert_eq!(h.atom, int(0));
        assert!(h.to_csv().ends_with("atom,0,0\n"));
    }

    #[test]
    fn rejects_non_symmetric() {
        let mut m = ConvolutionMatrix::zero(2);
        m.rows[0].insert(1, int(1));
        assert!(matches!(spectrum_histogram(&m, 3), Err(SpectralError::NotSymmetric)));
    }
}
