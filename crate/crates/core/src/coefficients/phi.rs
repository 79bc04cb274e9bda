//! Coefficients of the phase function `φ̂` and the logarithmic series.

use super::Pipeline;
use crate::error::{Dp3Error, Result};
use crate::params::{cis, C64, I};
use std::f64::consts::PI;

impl Pipeline {
    /// `(ν, μ*, P*)` through index `n`; `u`, `w`, `r` must be known through `n + 2`.
    pub(crate) fn phi(
        &self,
        u: &[C64],
        w: &[C64],
        r: &[C64],
        n: usize,
    ) -> (Vec<C64>, Vec<C64>, Vec<C64>) {
        let a = self.a;
        let s2 = self.s2;
        let rho = self.dc.cbrt_eb;
        let e1 = cis(PI * self.k / 3.0);
        let omega = self.dc.omega;
        let zero = C64::new(0.0, 0.0);

        let mut p = vec![zero; n + 1];
        p[0] = -2.0 * a * e1 / (3.0 * rho);
        for j in 2..=n {
            let mut conv = zero;
            for m2 in 0..=j {
                conv += u[m2] * r[j - m2];
            }
            p[j] = 1.5 * (u[j] - I * s2 * omega * rho * (r[j + 2] - 2.0 * u[j + 2] + conv));
        }

        let mut mu = vec![zero; n + 1];
        mu[0] = 2.0 * a * e1 / (3.0 * rho);
        for m1 in 0..=n.saturating_sub(2) {
            if m1 + 2 > n {
                break;
            }
            let mut acc = p[m1 + 2] + w[m1 + 2];
            for j in 0..=m1 {
                acc += p[j] * w[m1 - j];
            }
            mu[m1 + 2] = -2.0 * acc;
        }

        let mut nu = vec![zero; n + 1];
        if n >= 2 {
            nu[2] = a * (1.0 + I * s2 * a) * e1 / (6.0 * rho);
        }
        if n >= 4 {
            nu[4] = -(I * s2 * a * omega / (36.0 * rho * rho))
                * ((1.0 - 2.0 * a * a) / 3.0 + I * s2 * a);
        }
        let c_u = 1.5 * I * e1.conj() * s2 * rho;
        let c_mu1 = I * s2 * e1 * (1.0 + 2.0 * I * s2 * a) / (12.0 * rho);
        let c_br = I * s2 * e1 / (12.0 * rho);
        let c_nu1 = I * s2 * 2.0 * a * a * e1 / (3.0 * rho);
        for m in 0..=n.saturating_sub(5) {
            if m + 5 > n {
                break;
            }
            let mf = m as f64;
            let mut bracket = (mf + 3.0) * (mf + 5.0 + 2.0 * I * s2 * a) * nu[m + 3]
                - c_nu1 * (mf + 1.0) * nu[m + 1];
            for j in 0..m {
                bracket += ((j + 1) as f64)
                    * nu[j + 1]
                    * (mu[m - j] - 2.0 * ((m + 2 - j) as f64) * nu[m + 2 - j]);
            }
            let rhs = c_u * u[m + 5] + c_mu1 * mu[m + 1] + mu[m + 3] / 4.0 - c_br * bracket;
            nu[m + 5] = rhs / (mf + 5.0);
        }
        (nu, mu, p)
    }
}

/// `[x^m] ln(1 + Σ_j u_j x^{j+2})` as the multi-index sum over partitions with
/// Stirling weights `S_n^{(1)} = (-1)^{n-1}(n-1)!`.
///
/// Needs `u` through index `m - 2`.
pub fn log_series_contribution_slice(u: &[C64], m: usize) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    let mut mult = Vec::new();
    for n in 1..=m / 2 {
        let l = m - n;
        let stirling = if n % 2 == 1 { 1.0 } else { -1.0 } * factorial(n - 1);
        let mut acc = C64::new(0.0, 0.0);
        mult.clear();
        partitions(l, n, l, &mut mult, &mut |parts: &[(usize, usize)]| {
            let mut term = C64::new(1.0, 0.0);
            for &(j, i) in parts {
                term *= u[j - 1].powi(i as i32) / factorial(i);
            }
            acc += term;
        });
        total += stirling * acc;
    }
    total
}

/// Checked form of [`log_series_contribution_slice`] on a coefficient table.
pub fn log_series_contribution(u: &super::CoefficientTable, m: usize) -> Result<C64> {
    if m < 2 {
        return Err(Dp3Error::Domain(format!(
            "logarithmic contributions start at m = 2, got {m}"
        )));
    }
    if u.values.len() + 1 < m {
        return Err(Dp3Error::Domain(format!(
            "index {m} needs u through {}, table ends at {}",
            m - 2,
            u.values.len() as i64 - 1
        )));
    }
    Ok(log_series_contribution_slice(&u.values, m))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Callback receiving one partition as `(part size, multiplicity)` pairs.
type PartitionVisitor<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

/// Enumerates partitions of `total` into exactly `count` parts no larger than
/// `max_part`, reporting `(part size, multiplicity)` pairs.
fn partitions(
    total: usize,
    count: usize,
    max_part: usize,
    mult: &mut Vec<(usize, usize)>,
    f: &mut PartitionVisitor<'_>,
) {
    if count == 0 {
        if total == 0 {
            f(mult);
        }
        return;
    }
    if total < count {
        return;
    }
    let top = max_part.min(total - (count - 1));
    for part in (1..=top).rev() {
        let max_i = (total / part).min(count);
        for i in (1..=max_i).rev() {
            let rest_total = total - i * part;
            let rest_count = count - i;
            if rest_count == 0 && rest_total != 0 {
                continue;
            }
            if rest_count > 0 && (part == 1 || rest_total < rest_count) {
                continue;
            }
            if rest_count > 0 && rest_total > rest_count * (part - 1) {
                continue;
            }
            mult.push((part, i));
            partitions(rest_total, rest_count, part - 1, mult, f);
            mult.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_count_matches_known_values() {
        let mut count = 0;
        let mut mult = Vec::new();
        partitions(10, 3, 10, &mut mult, &mut |_| count += 1);
        assert_eq!(count, 8);
    }

    #[test]
    fn low_order_contributions() {
        let u = [C64::new(0.5, 0.1), C64::new(0.0, 0.0), C64::new(0.2, 0.0)];
        assert_eq!(log_series_contribution_slice(&u, 2), u[0]);
        let m4 = log_series_contribution_slice(&u, 4);
        assert!((m4 - (u[2] - u[0] * u[0] / 2.0)).norm() < 1e-15);
    }
}
