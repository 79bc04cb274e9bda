//! Coefficient families of the power-series parts of the trans-series.
//!
//! Every family is stored with its native index origin: for instance `𝔲₀`
//! multiplies `τ^{-2/3}` inside the bracket of the leading behaviour
//! `c_{0,k} τ^{1/3}(1 + τ^{-2/3} Σ 𝔲_m τ^{-m/3})`. Conversion to absolute powers of
//! `τ` happens in [`crate::asymptotics`].
//!
//! The imaginary-axis (hatted) families are obtained from the real-axis
//! pipeline evaluated at `a → -a` with the phase sign `(-1)^{ε₂}` replaced by
//! `(-1)^{ε̂₂}`; the one exception is `ĥ*`, which carries an extra factor
//! `(-1)^{ε̂₂}`.

mod phi;

pub use phi::{log_series_contribution, log_series_contribution_slice};

use crate::error::{Dp3Error, Result};
use crate::params::{cis, derived_constants, BranchIndex, DerivedConstants, Parameters, C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which coefficient family a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `𝔲_m(k)`.
    U,
    /// `𝔴_m(k)`, coefficients of the reciprocal series.
    W,
    /// `η_j(k)`.
    Eta,
    /// `𝔯_m(k)`.
    R,
    /// `𝔡_m(k)`.
    D,
    /// `h̃_m(k)`.
    Htilde,
    /// `ν̃_m(k)`.
    NuTilde,
    /// `μ*_m(k)`.
    MuStar,
    /// `P*_j(k)`.
    PStar,
    /// `û_m(k)`.
    UHat,
    /// `ŵ_m(k)`.
    WHat,
    /// `η̂_j(k)`.
    EtaHat,
    /// `r̂_m(k)`.
    RHat,
    /// `d̂_m(k)`.
    DHat,
    /// `ĥ*_m(k)`.
    HstarHat,
    /// `ν̂_m(k)`.
    NuHat,
    /// `μ̂*_m(k)`.
    MuHat,
    /// `P̂*_j(k)`.
    PHat,
}

impl Family {
    /// All families in canonical order.
    pub const ALL: [Family; 18] = [
        Family::U,
        Family::W,
        Family::Eta,
        Family::R,
        Family::D,
        Family::Htilde,
        Family::NuTilde,
        Family::MuStar,
        Family::PStar,
        Family::UHat,
        Family::WHat,
        Family::EtaHat,
        Family::RHat,
        Family::DHat,
        Family::HstarHat,
        Family::NuHat,
        Family::MuHat,
        Family::PHat,
    ];

    /// Short lowercase name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Family::U => "u",
            Family::W => "w",
            Family::Eta => "eta",
            Family::R => "r",
            Family::D => "d",
            Family::Htilde => "htilde",
            Family::NuTilde => "nu",
            Family::MuStar => "mu",
            Family::PStar => "p",
            Family::UHat => "u_hat",
            Family::WHat => "w_hat",
            Family::EtaHat => "eta_hat",
            Family::RHat => "r_hat",
            Family::DHat => "d_hat",
            Family::HstarHat => "hstar_hat",
            Family::NuHat => "nu_hat",
            Family::MuHat => "mu_hat",
            Family::PHat => "p_hat",
        }
    }

    /// Parses a short name produced by [`Family::name`].
    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }

    /// True for the imaginary-axis families.
    pub fn is_hatted(self) -> bool {
        matches!(
            self,
            Family::UHat
                | Family::WHat
                | Family::EtaHat
                | Family::RHat
                | Family::DHat
                | Family::HstarHat
                | Family::NuHat
                | Family::MuHat
                | Family::PHat
        )
    }
}

/// An indexed sequence of coefficients of one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    /// Family held by the table.
    pub family: Family,
    /// Branch index.
    pub k: BranchIndex,
    /// `values[m]` is the coefficient with index `m`.
    pub values: Vec<C64>,
    /// Parameters the table was built from.
    pub params: Parameters,
    /// The `(ε₁, ε₂)` or `(ε̂₁, ε̂₂)` labels baked into the family.
    pub eps_labels: (i8, i8),
    /// Set when `i·a` is an integer.
    pub warn: bool,
}

impl CoefficientTable {
    fn build(
        family: Family,
        k: BranchIndex,
        values: Vec<C64>,
        params: &Parameters,
        eps_labels: (i8, i8),
    ) -> Self {
        Self {
            family,
            k,
            values,
            params: *params,
            eps_labels,
            warn: params.warn_integer_ia(),
        }
    }

    /// Highest available index, or `None` for an empty table.
    pub fn max_index(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    /// Coefficient with index `m`.
    ///
    /// # Panics
    /// Panics when `m` exceeds the table.
    pub fn get(&self, m: usize) -> C64 {
        self.values[m]
    }
}

/// The imaginary-axis families of one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HattedFamily {
    /// `û`.
    pub u: CoefficientTable,
    /// `ŵ`.
    pub w: CoefficientTable,
    /// `η̂`.
    pub eta: CoefficientTable,
    /// `r̂`.
    pub r: CoefficientTable,
    /// `d̂`.
    pub d: CoefficientTable,
    /// `ĥ*`.
    pub hstar: CoefficientTable,
}

/// The phase-function families `(ν, μ*, P*)` or their hatted twins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiTables {
    /// `ν̃` (or `ν̂`); index 0 is unused and stored as zero.
    pub nu: CoefficientTable,
    /// `μ*` (or `μ̂*`).
    pub mu: CoefficientTable,
    /// `P*` (or `P̂*`).
    pub p: CoefficientTable,
}

/// Every family of one ray, as consumed by the evaluators.
#[derive(Debug, Clone, PartialEq)]
pub struct RayCoefficients {
    /// Power-series coefficients of `u`.
    pub u: Vec<C64>,
    /// Reciprocal-series coefficients.
    pub w: Vec<C64>,
    /// `𝔯` family.
    pub r: Vec<C64>,
    /// `𝔡` family.
    pub d: Vec<C64>,
    /// `h̃` family (or `ĥ*` on the imaginary axis).
    pub h: Vec<C64>,
    /// `ν` family, index 0 unused.
    pub nu: Vec<C64>,
    /// Logarithmic contributions `[x^m] ln(1 + Σ u_j x^{j+2})`, index `m`.
    pub log: Vec<C64>,
}

/// Inputs of the shared real-axis pipeline.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pipeline {
    pub a: C64,
    pub s2: f64,
    pub dc: DerivedConstants,
    pub eb: f64,
    pub b: C64,
    pub k: f64,
}

fn sign_of(label: i8) -> f64 {
    if label.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_label(name: &str, v: i8, allowed: &[i8]) -> Result<()> {
    if allowed.contains(&v) {
        Ok(())
    } else {
        Err(Dp3Error::InvalidLabel(format!("{name} = {v} not in {allowed:?}")))
    }
}

fn check_phase(params: &Parameters, eps2: i8, name: &str) -> Result<()> {
    check_label(name, eps2, &[-1, 0, 1])?;
    if (params.eb() > 0.0) != (eps2 == 0) {
        return Err(Dp3Error::InvalidParameters(format!(
            "{name} = {eps2} is inconsistent with epsilon*b = {}",
            params.eb()
        )));
    }
    Ok(())
}

impl Pipeline {
    pub(crate) fn real(params: &Parameters, k: BranchIndex, eps2: i8) -> Result<Self> {
        check_phase(params, eps2, "eps2")?;
        Ok(Self {
            a: params.a,
            s2: sign_of(eps2),
            dc: derived_constants(params, k)?,
            eb: params.eb(),
            b: params.b,
            k: k.f(),
        })
    }

    pub(crate) fn hatted(params: &Parameters, k: BranchIndex, eps2_hat: i8) -> Result<Self> {
        check_phase(params, eps2_hat, "eps2_hat")?;
        Ok(Self {
            a: -params.a,
            s2: sign_of(eps2_hat),
            dc: derived_constants(params, k)?,
            eb: params.eb(),
            b: params.b,
            k: k.f(),
        })
    }

    /// `𝔲₀ … 𝔲_n`: closed forms through index 9, then the recursion.
    pub(crate) fn u(&self, n: usize) -> Vec<C64> {
        let a = self.a;
        let rho = self.dc.cbrt_eb;
        let omega = self.dc.omega;
        let a2p1 = a * a + 1.0;
        let mut u = vec![C64::new(0.0, 0.0); n + 1];
        let seeds = [
            (0, a * omega.conj() / (3.0 * rho)),
            (4, -a * a2p1 / (81.0 * self.eb)),
            (6, a * a * a2p1 * omega.conj() / (243.0 * rho.powi(4))),
            (8, a * a2p1 * omega / (243.0 * rho.powi(5))),
        ];
        for (j, v) in seeds {
            if j <= n {
                u[j] = v;
            }
        }
        let cb2 = (self.dc.c0k / self.b).powi(2);
        let mut m = 0usize;
        while 2 * (m + 5) <= n {
            let known = &u[..2 * m + 10];
            let w = w_values(known);
            let eta = eta_values(known);
            let mut bracket = w[2 * m + 6] - 2.0 * u[0] * w[2 * m + 4] + eta[2 * m + 4]
                - u[0] * eta[2 * m + 2];
            for p in 0..=2 * m {
                bracket += eta[p] * w[2 * m + 2 - p];
            }
            let mut conv = C64::new(0.0, 0.0);
            for p in 0..=2 * m + 8 {
                conv += (u[p] + w[p]) * u[2 * m + 8 - p];
            }
            let f = (2 * m + 7) as f64 / 3.0;
            u[2 * (m + 5)] =
                cb2 * bracket / 27.0 - conv / 3.0 - cb2 * f * f * u[2 * m + 6] / 3.0;
            m += 1;
        }
        u
    }

    /// `𝔯₀ … 𝔯_n` from `u`, `w` known through `n`.
    pub(crate) fn r(&self, u: &[C64], w: &[C64], n: usize) -> Vec<C64> {
        let a = self.a;
        let s2 = self.s2;
        let al2 = self.dc.alpha_sq;
        let mut r = vec![C64::new(0.0, 0.0); n + 1];
        r[0] = (a - I * s2 / 2.0) / (3.0 * al2);
        if n >= 2 {
            r[2] = I * s2 * a * (1.0 + I * s2 * a) / (18.0 * al2 * al2);
        }
        let i4a = 4.0 * I * al2;
        for m in 0..=n.saturating_sub(4) {
            if m + 4 > n {
                break;
            }
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..=m {
                let t = i4a * (u[m + 2 - p] - u[0] * u[m - p])
                    - (s2 / 3.0) * ((m - p + 2) as f64) * u[m - p];
                acc += t * w[p];
            }
            acc += i4a * (u[m + 4] - u[0] * u[m + 2]) - (s2 / 3.0) * ((m + 4) as f64) * u[m + 2];
            r[m + 4] = acc / (2.0 * I * al2);
        }
        r
    }

    /// `h̃₀ … h̃_n` from `𝔡₀ … 𝔡_{n-2}`.
    pub(crate) fn htilde(&self, d: &[C64], n: usize) -> Vec<C64> {
        let a = self.a;
        let mut h = vec![C64::new(0.0, 0.0); n + 1];
        h[0] = -(12.0 * a * a + 1.0) * cis(PI * self.k / 3.0) / (18.0 * self.dc.cbrt_eb);
        for m in 0..=n.saturating_sub(2) {
            if m + 2 > n {
                break;
            }
            h[m + 2] = self.dc.alpha_sq * d[m];
        }
        h
    }

    /// Every family of the ray through index `n`.
    pub(crate) fn all(&self, n: usize, hatted: bool) -> RayCoefficients {
        let u = self.u(n + 2);
        let w = w_values(&u);
        let r = self.r(&u, &w, n + 2);
        let d = d_values(&u, &r, n);
        let mut h = self.htilde(&d, n);
        if hatted {
            for z in h.iter_mut() {
                *z *= self.s2;
            }
        }
        let (nu, _, _) = self.phi(&u, &w, &r, n);
        let log = (0..=n)
            .map(|m| {
                if m < 2 {
                    C64::new(0.0, 0.0)
                } else {
                    log_series_contribution_slice(&u, m)
                }
            })
            .collect();
        RayCoefficients {
            u: u[..=n].to_vec(),
            w: w[..=n].to_vec(),
            r: r[..=n].to_vec(),
            d,
            h,
            nu,
            log,
        }
    }
}

/// `𝔴₀ … 𝔴_{n}` for `u` of length `n + 1`: coefficients of `x^{m+2}` in the
/// reciprocal of `1 + Σ 𝔲_m x^{m+2}`.
pub(crate) fn w_values(u: &[C64]) -> Vec<C64> {
    let n = u.len();
    let mut w = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return w;
    }
    w[0] = -u[0];
    if n > 1 {
        w[1] = -u[1];
    }
    for j in 0..n.saturating_sub(2) {
        let mut acc = u[j + 2];
        for p in 0..=j {
            acc += w[p] * u[j - p];
        }
        w[j + 2] = -acc;
    }
    w
}

/// `η₀ … η_{n-2}` for `u` of length `n + 1`.
pub(crate) fn eta_values(u: &[C64]) -> Vec<C64> {
    let len = u.len().saturating_sub(2);
    (0..len)
        .map(|j| {
            let mut acc = -2.0 * ((j + 3) as f64) * u[j + 2];
            for p in 0..=j {
                acc += ((p + 1) * (j - p + 1)) as f64 * u[p] * u[j - p];
            }
            acc
        })
        .collect()
}

/// `𝔡₀ … 𝔡_n`, needing `u` and `r` through `n + 2`.
pub(crate) fn d_values(u: &[C64], r: &[C64], n: usize) -> Vec<C64> {
    (0..=n)
        .map(|m| {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..=m + 2 {
                acc += 8.0 * u[p] * u[m + 2 - p] + (4.0 * u[p] - r[p]) * r[m + 2 - p];
            }
            for p1 in 0..=m {
                for m1 in 0..=p1 {
                    acc -= r[m1] * r[p1 - m1] * u[m - p1];
                }
            }
            acc
        })
        .collect()
}

fn check_eps1(eps1: i8) -> Result<()> {
    check_label("eps1", eps1, &[-1, 0, 1])
}

/// `𝔲₀(k) … 𝔲_N(k)` on the real axis.
pub fn u_coeffs(
    params: &Parameters,
    k: BranchIndex,
    eps1: i8,
    eps2: i8,
    n: usize,
) -> Result<CoefficientTable> {
    check_eps1(eps1)?;
    let pl = Pipeline::real(params, k, eps2)?;
    Ok(CoefficientTable::build(Family::U, k, pl.u(n), params, (eps1, eps2)))
}

/// `𝔴` from a `𝔲` table (or that of any other table holding `𝔲`-type values).
pub fn w_coeffs(u: &CoefficientTable) -> CoefficientTable {
    let family = if u.family.is_hatted() {
        Family::WHat
    } else {
        Family::W
    };
    CoefficientTable {
        family,
        values: w_values(&u.values),
        ..u.clone()
    }
}

/// `η` from a `𝔲` table; the result has two fewer entries than `u`.
pub fn eta_coeffs(u: &CoefficientTable) -> CoefficientTable {
    let family = if u.family.is_hatted() {
        Family::EtaHat
    } else {
        Family::Eta
    };
    CoefficientTable {
        family,
        values: eta_values(&u.values),
        ..u.clone()
    }
}

/// `𝔯₀(k) … 𝔯_N(k)` on the real axis with phase label `eps2`.
pub fn r_coeffs(params: &Parameters, k: BranchIndex, eps2: i8, n: usize) -> Result<CoefficientTable> {
    let pl = Pipeline::real(params, k, eps2)?;
    let u = pl.u(n);
    let w = w_values(&u);
    Ok(CoefficientTable::build(Family::R, k, pl.r(&u, &w, n), params, (0, eps2)))
}

/// `𝔡` and `h̃` from tables of `𝔲` and `𝔯`.
///
/// With `u` and `r` known through index `N`, `𝔡` is returned through `N - 2` and
/// `h̃` through `N`.
pub fn d_and_htilde_coeffs(
    u: &CoefficientTable,
    r: &CoefficientTable,
    params: &Parameters,
    k: BranchIndex,
    eps2: i8,
) -> Result<(CoefficientTable, CoefficientTable)> {
    let pl = Pipeline::real(params, k, eps2)?;
    let n = u.values.len().min(r.values.len());
    if n < 3 {
        return Err(Dp3Error::Domain("d needs u and r through index 2 at least".into()));
    }
    let d = d_values(&u.values, &r.values, n - 3);
    let h = pl.htilde(&d, n - 1);
    Ok((
        CoefficientTable::build(Family::D, k, d, params, (0, eps2)),
        CoefficientTable::build(Family::Htilde, k, h, params, (0, eps2)),
    ))
}

/// The imaginary-axis families `û, ŵ, η̂, r̂, d̂, ĥ*` through index `N`
/// (`η̂` and `d̂` through `N` as well, computed from deeper `û`, `r̂`).
pub fn hatted_family(
    params: &Parameters,
    k: BranchIndex,
    eps1_hat: i8,
    eps2_hat: i8,
    n: usize,
) -> Result<HattedFamily> {
    check_label("eps1_hat", eps1_hat, &[-1, 1])?;
    let pl = Pipeline::hatted(params, k, eps2_hat)?;
    let labels = (eps1_hat, eps2_hat);
    let u = pl.u(n + 2);
    let w = w_values(&u);
    let eta = eta_values(&u);
    let r = pl.r(&u, &w, n + 2);
    let d = d_values(&u, &r, n);
    let h: Vec<C64> = pl.htilde(&d, n).into_iter().map(|z| z * pl.s2).collect();
    let mk = |f, v: Vec<C64>| CoefficientTable::build(f, k, v, params, labels);
    Ok(HattedFamily {
        u: mk(Family::UHat, u[..=n].to_vec()),
        w: mk(Family::WHat, w[..=n].to_vec()),
        eta: mk(Family::EtaHat, eta[..=n].to_vec()),
        r: mk(Family::RHat, r[..=n].to_vec()),
        d: mk(Family::DHat, d),
        hstar: mk(Family::HstarHat, h),
    })
}

/// `ν̃`, `μ*`, `P*` through index `N` on the real axis.
pub fn phi_coeffs(params: &Parameters, k: BranchIndex, eps2: i8, n: usize) -> Result<PhiTables> {
    let pl = Pipeline::real(params, k, eps2)?;
    Ok(pl.phi_tables(params, k, (0, eps2), n, false))
}

/// `ν̂`, `μ̂*`, `P̂*` through index `N` on the imaginary axis.
pub fn phi_coeffs_hat(
    params: &Parameters,
    k: BranchIndex,
    eps2_hat: i8,
    n: usize,
) -> Result<PhiTables> {
    let pl = Pipeline::hatted(params, k, eps2_hat)?;
    Ok(pl.phi_tables(params, k, (0, eps2_hat), n, true))
}

impl Pipeline {
    fn phi_tables(
        &self,
        params: &Parameters,
        k: BranchIndex,
        labels: (i8, i8),
        n: usize,
        hatted: bool,
    ) -> PhiTables {
        let u = self.u(n + 2);
        let w = w_values(&u);
        let r = self.r(&u, &w, n + 2);
        let (nu, mu, p) = self.phi(&u, &w, &r, n);
        let (fnu, fmu, fp) = if hatted {
            (Family::NuHat, Family::MuHat, Family::PHat)
        } else {
            (Family::NuTilde, Family::MuStar, Family::PStar)
        };
        PhiTables {
            nu: CoefficientTable::build(fnu, k, nu, params, labels),
            mu: CoefficientTable::build(fmu, k, mu, params, labels),
            p: CoefficientTable::build(fp, k, p, params, labels),
        }
    }
}
