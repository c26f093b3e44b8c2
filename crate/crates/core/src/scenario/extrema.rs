//! Discrete local extrema on a sampled grid.
//!
//! A sample is a local maximum (minimum) when it is strictly greater (less)
//! than every neighbor. Edge samples are never reported.

/// Interior indices strictly above both neighbors.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    scan_1d(values, |x, n| x > n)
}

/// Interior indices strictly below both neighbors.
pub fn local_minima(values: &[f64]) -> Vec<usize> {
    scan_1d(values, |x, n| x < n)
}

fn scan_1d(values: &[f64], beats: impl Fn(f64, f64) -> bool) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| beats(values[i], values[i - 1]) && beats(values[i], values[i + 1]))
        .collect()
}

/// Interior `(row, col)` cells of a row-major grid strictly above all eight
/// neighbors.
pub fn local_maxima_2d(values: &[f64], rows: usize, cols: usize) -> Vec<(usize, usize)> {
    scan_2d(values, rows, cols, |x, n| x > n)
}

/// Interior cells strictly below all eight neighbors.
pub fn local_minima_2d(values: &[f64], rows: usize, cols: usize) -> Vec<(usize, usize)> {
    scan_2d(values, rows, cols, |x, n| x < n)
}

fn scan_2d(values: &[f64], rows: usize, cols: usize, beats: impl Fn(f64, f64) -> bool) -> Vec<(usize, usize)> {
    assert_eq!(values.len(), rows * cols, "grid shape does not match value count");
    let at = |i: usize, j: usize| values[i * cols + j];
    let mut found = Vec::new();
    for i in 1..rows.saturating_sub(1) {
        for j in 1..cols.saturating_sub(1) {
            let x = at(i, j);
            let all = (i - 1..=i + 1)
                .flat_map(|r| (j - 1..=j + 1).map(move |c| (r, c)))
                .filter(|&(r, c)| (r, c) != (i, j))
                .all(|(r, c)| beats(x, at(r, c)));
            if all {
                found.push((i, j));
            }
        }
    }
    found
}

/// Whether some interior minimum lies strictly between two maxima.
pub fn has_dip_between_peaks(values: &[f64]) -> bool {
    let maxima = local_maxima(values);
    let (Some(&first), Some(&last)) = (maxima.first(), maxima.last()) else {
        return false;
    };
    local_minima(values).iter().any(|&m| first < m && m < last)
}
