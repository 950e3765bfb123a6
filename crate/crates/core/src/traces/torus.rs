//! The torus equations `a₁^{2s+1} + ⋯ + a_r^{2s+1} = 0`, `s = 0, …, r−1`.
//!
//! They hold exactly when the nonzero entries pair off as `(a, −a)`.

/// Both characterizations of the odd-power-sum system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OddPowerSums {
    pub by_power_sums: bool,
    pub by_pairing: bool,
}

impl OddPowerSums {
    pub fn holds(&self) -> bool {
        self.by_power_sums
    }

    pub fn agree(&self) -> bool {
        self.by_power_sums == self.by_pairing
    }
}

/// Every odd power sum up to degree `2r − 1` vanishes relative to
/// `Σ |a_i|^{2s+1}`.
pub fn odd_power_sums_vanish(a: &[f64], tol: f64) -> bool {
    (0..a.len()).all(|s| {
        let k = 2 * s as i32 + 1;
        let (sum, scale) = a.iter().fold((0.0, 0.0), |(sum, scale), &x| {
            (sum + x.powi(k), scale + x.abs().powi(k))
        });
        sum.abs() <= tol * scale
    })
}

/// Nonzero entries match up as `(a, −a)`; entries `≤ tol · max|a|` count as
/// zero and paired magnitudes may differ by that much.
pub fn pairs_off(a: &[f64], tol: f64) -> bool {
    let top = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if top == 0.0 {
        return true;
    }
    let eps = tol * top;
    let mut pos: Vec<f64> = a.iter().copied().filter(|&x| x > eps).collect();
    let mut neg: Vec<f64> = a.iter().filter(|&&x| x < -eps).map(|x| -x).collect();
    if pos.len() != neg.len() {
        return false;
    }
    pos.sort_by(f64::total_cmp);
    neg.sort_by(f64::total_cmp);
    pos.iter().zip(&neg).all(|(p, n)| (p - n).abs() <= eps)
}

pub fn odd_power_sums_check(a: &[f64], tol: f64) -> OddPowerSums {
    OddPowerSums {
        by_power_sums: odd_power_sums_vanish(a, tol),
        by_pairing: pairs_off(a, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = odd_power_sums_check(&[1.0, -1.0, 2.0, -2.0, 0.0], 1e-12);
        assert!(r.holds() && r.agree());
        let r = odd_power_sums_check(&[1.0, 2.0, -3.0], 1e-12);
        assert!(!r.holds() && r.agree());
        let r = odd_power_sums_check(&[0.0, 0.0], 1e-12);
        assert!(r.holds() && r.agree());
        assert!(odd_power_sums_check(&[], 1e-12).holds());
    }
}
