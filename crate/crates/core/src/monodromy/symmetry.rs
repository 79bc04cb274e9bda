//! The 46 explicit symmetry transformations of the monodromy manifold.
//!
//! A label `(ε₁, ε₂, m | ℓ)` acts on real-axis data, a hatted label
//! `^(ε̂₁, ε̂₂, m | ℓ)` on imaginary-axis data. Each transformation maps the
//! manifold at `a` to the manifold at `a' = ±a`.

use super::MonodromyPoint;
use crate::error::{Dp3Error, Result};
use crate::params::{C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Admissible unhatted triples `(ε₁, ε₂, m)`.
const UNHATTED: [(i8, i8, i8); 15] = [
    (0, 0, 0),
    (-1, 0, 0),
    (1, 0, 0),
    (0, -1, -1),
    (0, -1, 1),
    (0, 1, -1),
    (0, 1, 1),
    (-1, -1, -1),
    (1, -1, -1),
    (-1, -1, 1),
    (1, -1, 1),
    (-1, 1, -1),
    (1, 1, -1),
    (-1, 1, 1),
    (1, 1, 1),
];

/// Admissible hatted triples `(ε̂₁, ε̂₂, m)`.
const HATTED: [(i8, i8, i8); 8] = [
    (1, 1, 0),
    (1, -1, 0),
    (-1, 1, 0),
    (-1, -1, 0),
    (1, 0, -1),
    (-1, 0, -1),
    (1, 0, 1),
    (-1, 0, 1),
];

/// A symmetry label `(ε₁, ε₂, m | ℓ)`, hatted for the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetryLabel {
    /// Imaginary-axis (hatted) family.
    pub hatted: bool,
    /// `ε₁` or `ε̂₁`.
    pub eps1: i8,
    /// `ε₂` or `ε̂₂`.
    pub eps2: i8,
    /// `m`.
    pub m: i8,
    /// `ℓ ∈ {0, 1}`.
    pub ell: u8,
}

impl SymmetryLabel {
    /// Validated label.
    pub fn new(hatted: bool, eps1: i8, eps2: i8, m: i8, ell: u8) -> Result<Self> {
        let l = Self {
            hatted,
            eps1,
            eps2,
            m,
            ell,
        };
        let table: &[(i8, i8, i8)] = if hatted { &HATTED } else { &UNHATTED };
        if ell > 1 || !table.contains(&(eps1, eps2, m)) {
            return Err(Dp3Error::InvalidLabel(l.to_string()));
        }
        Ok(l)
    }

    /// Unhatted label; panics on an inadmissible triple.
    pub fn real(eps1: i8, eps2: i8, m: i8, ell: u8) -> Self {
        Self::new(false, eps1, eps2, m, ell).expect("admissible label")
    }

    /// Hatted label; panics on an inadmissible triple.
    pub fn imag(eps1: i8, eps2: i8, m: i8, ell: u8) -> Self {
        Self::new(true, eps1, eps2, m, ell).expect("admissible label")
    }

    /// The parameter `a'` of the image: `(-1)^{ε₂} a` or `(-1)^{1+ε̂₂} a`.
    pub fn image_a(&self, a: C64) -> C64 {
        let odd = if self.hatted {
            self.eps2 == 0
        } else {
            self.eps2 != 0
        };
        if odd {
            -a
        } else {
            a
        }
    }
}

impl fmt::Display for SymmetryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({},{},{}|{})",
            if self.hatted { "^" } else { "" },
            self.eps1,
            self.eps2,
            self.m,
            self.ell
        )
    }
}

impl FromStr for SymmetryLabel {
    type Err = Dp3Error;

    /// Parses `(e1,e2,m|l)` or `^(e1,e2,m|l)`; parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Dp3Error::InvalidLabel(s.to_string());
        let t = s.trim();
        let (hatted, rest) = match t.strip_prefix('^') {
            Some(r) => (true, r),
            None => (false, t),
        };
        let rest = rest.trim().trim_start_matches('(').trim_end_matches(')');
        let (triple, ell) = rest.split_once('|').ok_or_else(bad)?;
        let parts: Vec<i8> = triple
            .split(',')
            .map(|x| x.trim().parse::<i8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if parts.len() != 3 {
            return Err(bad());
        }
        let ell: u8 = ell.trim().parse().map_err(|_| bad())?;
        Self::new(hatted, parts[0], parts[1], parts[2], ell)
    }
}

/// All 46 labels: 30 unhatted followed by 16 hatted.
pub fn enumerate_labels() -> Vec<SymmetryLabel> {
    let mut out = Vec::with_capacity(46);
    for ell in 0..2 {
        for &(e1, e2, m) in &UNHATTED {
            out.push(SymmetryLabel::real(e1, e2, m, ell));
        }
    }
    for ell in 0..2 {
        for &(e1, e2, m) in &HATTED {
            out.push(SymmetryLabel::imag(e1, e2, m, ell));
        }
    }
    out
}

/// Applies the transformation `label` to `p`.
pub fn apply_symmetry(label: SymmetryLabel, p: &MonodromyPoint) -> Result<MonodromyPoint> {
    let label = SymmetryLabel::new(label.hatted, label.eps1, label.eps2, label.m, label.ell)?;
    let a = p.a;
    let s = p.s00;
    let (s0, s1) = (p.s0inf, p.s1inf);
    let (g11, g12, g21, g22) = (p.g11, p.g12, p.g21, p.g22);
    let e = (PI * a).exp();
    let e2 = e * e;
    let eh = (PI * a / 2.0).exp();
    let e32 = (1.5 * PI * a).exp();
    let f = (PI * a / 4.0).exp();
    let f3 = f * f * f;
    let x = g12 - g11 * s1 * e2;
    let y = g22 - g21 * s1 * e2;
    let ss = 1.0 + s * s;
    let mi = -I;

    // (s0', s1', g11', g12', g21', g22')
    let out: (C64, C64, C64, C64, C64, C64) =
        match (label.hatted, label.eps1, label.eps2, label.m, label.ell) {
            (false, 0, 0, 0, 0) => (s0, s1, g11, g12, g21, g22),
            (false, -1, 0, 0, 0) => (
                s0 * e,
                s1 / e,
                mi * (g21 + s * g11) * eh,
                mi * (g22 + s * g12) / eh,
                mi * g11 * eh,
                mi * g12 / eh,
            ),
            (false, 1, 0, 0, 0) => (
                s0 / e,
                s1 * e,
                I * g21 / eh,
                I * g22 * eh,
                I * (g11 - s * g21) / eh,
                I * (g12 - s * g22) * eh,
            ),
            (false, 0, -1, -1, 0) => (
                -s1 * e,
                -s0 * e,
                I * (y + s * x) / eh,
                mi * (g21 + s * g11) * eh,
                I * x / eh,
                mi * g11 * eh,
            ),
            (false, 0, -1, 1, 0) => (
                -s1 * e,
                -s0 * e,
                g12 * eh,
                -(g11 + s0 * g12) / eh,
                g22 * eh,
                -(g21 + s0 * g22) / eh,
            ),
            (false, 0, 1, -1, 0) => (-s1 * e, -s0 * e, x / eh, -g11 * eh, y / eh, -g21 * eh),
            (false, 0, 1, 1, 0) => (
                -s1 * e,
                -s0 * e,
                I * g22 * eh,
                mi * (g21 + s0 * g22) / eh,
                I * (g12 - s * g22) * eh,
                I * (-g11 - g12 * s0 + s * (g21 + s0 * g22)) / eh,
            ),
            (false, -1, -1, -1, 0) => (
                -s1,
                -s0 * e2,
                (x * ss + s * y) / e,
                -(g11 * ss + s * g21) * e,
                (y + s * x) / e,
                -(g21 + s * g11) * e,
            ),
            (false, 1, -1, -1, 0) => (-s1 * e2, -s0, -x, g11, -y, g21),
            (false, -1, -1, 1, 0) => (
                -s1,
                -s0 * e2,
                mi * (g22 + s * g12),
                I * (g21 + s0 * g22 + s * (g11 + s0 * g12)),
                mi * g12,
                I * (g11 + s0 * g12),
            ),
            (false, 1, -1, 1, 0) => (
                -s1 * e2,
                -s0,
                I * g22 * e,
                mi * (g21 + s0 * g22) / e,
                I * (g12 - s * g22) * e,
                mi * (g11 + s0 * g12 - s * (g21 + s0 * g22)) / e,
            ),
            (false, -1, 1, -1, 0) => (
                -s1,
                -s0 * e2,
                mi * (y + s * x) / e,
                I * (g21 + s * g11) * e,
                mi * x / e,
                I * g11 * e,
            ),
            (false, 1, 1, -1, 0) => (
                -s1 * e2,
                -s0,
                I * y,
                mi * g21,
                I * (x - s * y),
                mi * (g11 - s * g21),
            ),
            (false, -1, 1, 1, 0) => (
                -s1,
                -s0 * e2,
                g12,
                -(g11 + s0 * g12),
                g22,
                -(g21 + s0 * g22),
            ),
            (false, 1, 1, 1, 0) => (
                -s1 * e2,
                -s0,
                -(g12 - s * g22) * e,
                -(-g11 - g12 * s0 + s * (g21 + g22 * s0)) / e,
                -(g22 - s * (g12 - s * g22)) * e,
                ((g21 + g22 * s0) * ss - s * (g11 + s0 * g12)) / e,
            ),
            (false, 0, 0, 0, 1) => (-s0, -s1, I * g11, mi * g12, I * g21, mi * g22),
            (false, -1, 0, 0, 1) => (
                -s0 * e,
                -s1 / e,
                (g21 + s * g11) * eh,
                -(g22 + s * g12) / eh,
                g11 * eh,
                -g12 / eh,
            ),
            (false, 1, 0, 0, 1) => (
                -s0 / e,
                -s1 * e,
                -g21 / eh,
                g22 * eh,
                -(g11 - s * g21) / eh,
                (g12 - s * g22) * eh,
            ),
            (false, 0, -1, -1, 1) => (
                s1 * e,
                s0 * e,
                -(y + s * x) / eh,
                -(g21 + s * g11) * eh,
                -x / eh,
                -g11 * eh,
            ),
            (false, 0, -1, 1, 1) => (
                s1 * e,
                s0 * e,
                I * g12 * eh,
                I * (g11 + s0 * g12) / eh,
                I * g22 * eh,
                I * (g21 + s0 * g22) / eh,
            ),
            (false, 0, 1, -1, 1) => (
                s1 * e,
                s0 * e,
                I * x / eh,
                I * g11 * eh,
                I * y / eh,
                I * g21 * eh,
            ),
            (false, 0, 1, 1, 1) => (
                s1 * e,
                s0 * e,
                -g22 * eh,
                -(g21 + s0 * g22) / eh,
                -(g12 - s * g22) * eh,
                (-g11 - s0 * g12 + s * (g21 + s0 * g22)) / eh,
            ),
            (false, -1, -1, -1, 1) => (
                s1,
                s0 * e2,
                I * (x * ss + s * y) / e,
                I * (g11 * ss + s * g21) * e,
                I * (y + s * x) / e,
                I * (g21 + s * g11) * e,
            ),
            (false, 1, -1, -1, 1) => (s1 * e2, s0, mi * x, mi * g11, mi * y, mi * g21),
            (false, -1, -1, 1, 1) => (
                s1,
                s0 * e2,
                g22 + s * g12,
                g21 + s0 * g22 + s * (g11 + s0 * g12),
                g12,
                g11 + s0 * g12,
            ),
            (false, 1, -1, 1, 1) => (
                s1 * e2,
                s0,
                -g22 * e,
                -(g21 + s0 * g22) / e,
                -(g12 - s * g22) * e,
                -(g11 + s0 * g12 - s * (g21 + s0 * g22)) / e,
            ),
            (false, -1, 1, -1, 1) => (
                s1,
                s0 * e2,
                (y + s * x) / e,
                (g21 + s * g11) * e,
                x / e,
                g11 * e,
            ),
            (false, 1, 1, -1, 1) => (s1 * e2, s0, -y, -g21, -(x - s * y), -(g11 - s * g21)),
            (false, -1, 1, 1, 1) => (
                s1,
                s0 * e2,
                I * g12,
                I * (g11 + s0 * g12),
                I * g22,
                I * (g21 + s0 * g22),
            ),
            (false, 1, 1, 1, 1) => (
                s1 * e2,
                s0,
                mi * (g12 - s * g22) * e,
                I * (-g11 - s0 * g12 + s * (g21 + s0 * g22)) / e,
                mi * (g22 - s * (g12 - s * g22)) * e,
                mi * ((g21 + s0 * g22) * ss - s * (g11 + s0 * g12)) / e,
            ),
            (true, 1, 1, 0, 0) => (
                s0 / eh,
                s1 * eh,
                mi * g21 / f,
                mi * g22 * f,
                mi * (g11 - s * g21) / f,
                mi * (g12 - s * g22) * f,
            ),
            (true, 1, -1, 0, 0) => (s0 / eh, s1 * eh, g11 / f, g12 * f, g21 / f, g22 * f),
            (true, -1, 1, 0, 0) => (s0 * eh, s1 / eh, g11 * f, g12 / f, g21 * f, g22 / f),
            (true, -1, -1, 0, 0) => (
                s0 * eh,
                s1 / eh,
                I * (g21 + s * g11) * f,
                I * (g22 + s * g12) / f,
                I * g11 * f,
                I * g12 / f,
            ),
            (true, 1, 0, -1, 0) => (-s1 * e32, -s0 * eh, x / f, -g11 * f, y / f, -g21 * f),
            (true, -1, 0, -1, 0) => (
                -s1 * eh,
                -s0 * e32,
                I * (y + s * x) / f3,
                mi * (g21 + s * g11) * f3,
                I * x / f3,
                mi * g11 * f3,
            ),
            (true, 1, 0, 1, 0) => (
                -s1 * e32,
                -s0 * eh,
                I * g22 * f3,
                mi * (g21 + s0 * g22) / f3,
                I * (g12 - s * g22) * f3,
                I * (-g11 - s0 * g12 + s * (g21 + s0 * g22)) / f3,
            ),
            (true, -1, 0, 1, 0) => (
                -s1 * eh,
                -s0 * e32,
                -g12 * f,
                (g11 + s0 * g12) / f,
                -g22 * f,
                (g21 + s0 * g22) / f,
            ),
            (true, 1, 1, 0, 1) => (
                -s0 / eh,
                -s1 * eh,
                g21 / f,
                -g22 * f,
                (g11 - s * g21) / f,
                -(g12 - s * g22) * f,
            ),
            (true, 1, -1, 0, 1) => (
                -s0 / eh,
                -s1 * eh,
                I * g11 / f,
                mi * g12 * f,
                I * g21 / f,
                mi * g22 * f,
            ),
            (true, -1, 1, 0, 1) => (
                -s0 * eh,
                -s1 / eh,
                I * g11 * f,
                mi * g12 / f,
                I * g21 * f,
                mi * g22 / f,
            ),
            (true, -1, -1, 0, 1) => (
                -s0 * eh,
                -s1 / eh,
                -(g21 + s * g11) * f,
                (g22 + s * g12) / f,
                -g11 * f,
                g12 / f,
            ),
            (true, 1, 0, -1, 1) => (
                s1 * e32,
                s0 * eh,
                I * x / f,
                I * g11 * f,
                I * y / f,
                I * g21 * f,
            ),
            (true, 1, 0, 1, 1) => (
                s1 * e32,
                s0 * eh,
                -g22 * f3,
                -(g21 + g22 * s0) / f3,
                -(g12 - s * g22) * f3,
                (-g11 - s0 * g12 + s * (g21 + s0 * g22)) / f3,
            ),
            (true, -1, 0, -1, 1) => (
                s1 * eh,
                s0 * e32,
                -(y + s * x) / f3,
                -(g21 + s * g11) * f3,
                -x / f3,
                -g11 * f3,
            ),
            (true, -1, 0, 1, 1) => (
                s1 * eh,
                s0 * e32,
                mi * g12 * f,
                mi * (g11 + s0 * g12) / f,
                mi * g22 * f,
                mi * (g21 + s0 * g22) / f,
            ),
            _ => return Err(Dp3Error::InvalidLabel(label.to_string())),
        };
    Ok(MonodromyPoint {
        a: label.image_a(a),
        s00: s,
        s0inf: out.0,
        s1inf: out.1,
        g11: out.2,
        g12: out.3,
        g21: out.4,
        g22: out.5,
    })
}

/// The group relations `lhs = chain[0] ∘ chain[1] ∘ …` (rightmost applied first).
pub fn composition_table() -> Vec<(SymmetryLabel, Vec<SymmetryLabel>)> {
    let r = SymmetryLabel::real;
    let h = SymmetryLabel::imag;
    let mut out = Vec::new();
    for (e1, e2, m) in [(-1, 0, 0), (1, 0, 0), (0, -1, -1), (0, -1, 1), (0, 1, -1), (0, 1, 1)] {
        out.push((r(e1, e2, m, 1), vec![r(e1, e2, m, 0), r(0, 0, 0, 1)]));
    }
    for ell in 0..2 {
        for e1 in [-1, 1] {
            for (e2, m) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
                out.push((r(e1, e2, m, ell), vec![r(0, e2, m, ell), r(e1, 0, 0, 0)]));
            }
        }
    }
    out.push((h(1, 0, -1, 0), vec![r(0, -1, -1, 0), h(1, 1, 0, 0)]));
    out.push((h(-1, 0, -1, 0), vec![r(0, -1, -1, 0), h(-1, 1, 0, 0)]));
    out.push((h(1, 0, 1, 0), vec![r(0, 1, 1, 0), h(1, -1, 0, 0)]));
    out.push((h(-1, 0, 1, 0), vec![r(0, 1, 1, 0), h(-1, -1, 0, 0)]));
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        out.push((h(e1, e2, 0, 1), vec![h(e1, e2, 0, 0), r(0, 0, 0, 1)]));
    }
    out.push((h(1, 0, -1, 1), vec![r(0, 1, -1, 0), h(1, -1, 0, 1)]));
    out.push((h(1, 0, 1, 1), vec![r(0, 1, 1, 0), h(1, -1, 0, 1)]));
    out.push((h(-1, 0, -1, 1), vec![r(0, 1, -1, 0), h(-1, -1, 0, 1)]));
    out.push((h(-1, 0, 1, 1), vec![r(0, 1, 1, 0), h(-1, -1, 0, 1)]));
    out
}

/// Outcome of comparing a composite transformation with its direct form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositionReport {
    /// Relative discrepancy of `(a, s⁰₀, s∞₀, s∞₁)`.
    pub scalar_error: f64,
    /// Relative discrepancy of the connection matrix up to the sign `±`.
    pub matrix_error: f64,
    /// `+1` or `-1`: the global sign relating the two connection matrices.
    pub sign: i8,
    /// True when both discrepancies are at most `tol`.
    pub pass: bool,
}

fn rel(a: &[C64], b: &[C64]) -> f64 {
    let scale = a
        .iter()
        .chain(b.iter())
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Checks `F_lhs(p) = F_chain[0](F_chain[1](… p))` with the connection matrices
/// compared up to a global sign.
pub fn verify_composition(
    lhs: SymmetryLabel,
    chain: &[SymmetryLabel],
    p: &MonodromyPoint,
    tol: f64,
) -> Result<CompositionReport> {
    let direct = apply_symmetry(lhs, p)?;
    let mut q = *p;
    for label in chain.iter().rev() {
        q = apply_symmetry(*label, &q)?;
    }
    let scalars = |z: &MonodromyPoint| [z.a, z.s00, z.s0inf, z.s1inf];
    let scalar_error = rel(&scalars(&direct), &scalars(&q));
    let gd = direct.g();
    let gq = q.g();
    let neg: Vec<C64> = gq.iter().map(|z| -z).collect();
    let plus = rel(&gd, &gq);
    let minus = rel(&gd, &neg);
    let (matrix_error, sign) = if plus <= minus { (plus, 1) } else { (minus, -1) };
    Ok(CompositionReport {
        scalar_error,
        matrix_error,
        sign,
        pass: scalar_error <= tol && matrix_error <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_counts() {
        let labels = enumerate_labels();
        assert_eq!(labels.len(), 46);
        assert_eq!(labels.iter().filter(|l| !l.hatted).count(), 30);
    }

    #[test]
    fn label_round_trips_through_text() {
        for l in enumerate_labels() {
            assert_eq!(l.to_string().parse::<SymmetryLabel>().unwrap(), l);
        }
        assert!("(1,0,1|0)".parse::<SymmetryLabel>().is_err());
        assert!("^(0,0,0|0)".parse::<SymmetryLabel>().is_err());
    }

    #[test]
    fn table_has_all_relations() {
        assert_eq!(composition_table().len(), 34);
    }
}
