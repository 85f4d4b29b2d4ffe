//! Trend statistics for the probability sweep.

/// One-sided Mann-Kendall test for an increasing monotone trend.
#[derive(Clone, Debug)]
pub struct TrendTest {
    /// Kendall score S = Σ_{i<j} sgn(x_j − x_i).
    pub s: i64,
    /// Normal approximation z-score with tie correction and continuity shift.
    pub z: f64,
    /// z exceeds the one-sided 5% critical value (1.6449).
    pub increasing_at_5pct: bool,
}

const Z_CRITICAL_5PCT: f64 = 1.6448536269514722;

pub fn mann_kendall_increasing(values: &[f64]) -> TrendTest {
    let n = values.len();
    let mut s: i64 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += match values[j].partial_cmp(&values[i]).expect("finite values") {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
        }
    }

    // Tie groups reduce the variance of S.
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_correction = 0.0;
    let mut run = 1usize;
    for k in 1..=n {
        if k < n && sorted[k] == sorted[k - 1] {
            run += 1;
        } else {
            if run > 1 {
                let t = run as f64;
                tie_correction += t * (t - 1.0) * (2.0 * t + 5.0);
            }
            run = 1;
        }
    }
    let nf = n as f64;
    let variance = (nf * (nf - 1.0) * (2.0 * nf + 5.0) - tie_correction) / 18.0;

    let z = if variance <= 0.0 {
        0.0
    } else if s > 0 {
        (s as f64 - 1.0) / variance.sqrt()
    } else if s < 0 {
        (s as f64 + 1.0) / variance.sqrt()
    } else {
        0.0
    };

    TrendTest {
        s,
        z,
        increasing_at_5pct: z > Z_CRITICAL_5PCT,
    }
}

/// Index of the first value at or above `threshold` (saturation onset);
/// `len` when the series never reaches it.
pub fn saturation_onset(values: &[f64], threshold: f64) -> usize {
    values
        .iter()
        .position(|&v| v >= threshold)
        .unwrap_or(values.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_clean_increase() {
        let xs: Vec<f64> = (0..12).map(|i| i as f64 * 0.04).collect();
        let t = mann_kendall_increasing(&xs);
        assert!(t.increasing_at_5pct, "z = {}", t.z);
        assert_eq!(t.s, 66);
    }

    #[test]
    fn rejects_flat_series() {
        let xs = vec![0.2; 12];
        let t = mann_kendall_increasing(&xs);
        assert!(!t.increasing_at_5pct);
        assert_eq!(t.s, 0);
    }

    #[test]
    fn rejects_decrease() {
        let xs: Vec<f64> = (0..12).map(|i| 1.0 - i as f64 * 0.05).collect();
        let t = mann_kendall_increasing(&xs);
        assert!(!t.increasing_at_5pct);
        assert!(t.z < 0.0);
    }

    #[test]
    fn tolerates_noise_on_a_real_trend() {
        let noise = [0.01, -0.02, 0.015, -0.005, 0.02, -0.01];
        let xs: Vec<f64> = (0..12)
            .map(|i| 0.04 * i as f64 + noise[i % noise.len()])
            .collect();
        assert!(mann_kendall_increasing(&xs).increasing_at_5pct);
    }

    #[test]
    fn onset_detection() {
        let xs = [0.0, 0.1, 0.3, 0.46, 0.5, 0.49];
        assert_eq!(saturation_onset(&xs, 0.45), 3);
        assert_eq!(saturation_onset(&xs, 0.9), 6);
    }
}
