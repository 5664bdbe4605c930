//! Median aggregation used for boosting success probability.

use num_complex::Complex64;

/// Median of real values: the middle order statistic for odd length, the
/// average of the two middle ones for even length.
///
/// # Panics
/// If `values` is empty.
pub fn median_scalar(values: &[f64]) -> f64 {
    let mut buf = values.to_vec();
    median_in_place(&mut buf)
}

/// Same as [`median_scalar`] but reorders `values` instead of copying.
pub fn median_in_place(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty list");
    let m = values.len();
    let (_, upper, _) = values.select_nth_unstable_by(m / 2, f64::total_cmp);
    let upper = *upper;
    if m % 2 == 1 {
        upper
    } else {
        // The lower middle is the maximum of the left partition.
        let lower = values[..m / 2].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lower + upper) / 2.0
    }
}

/// Componentwise median: real and imaginary parts are aggregated separately.
pub fn median_complex(values: &[Complex64]) -> Complex64 {
    assert!(!values.is_empty(), "median of an empty list");
    let mut re: Vec<f64> = values.iter().map(|z| z.re).collect();
    let mut im: Vec<f64> = values.iter().map(|z| z.im).collect();
    Complex64::new(median_in_place(&mut re), median_in_place(&mut im))
}
