//! Rank-2 left modules over the ring of linearized polynomials.
//!
//! Vectors `[f1, f2]` are ordered by the `(0, k−1)`-weighted term-over-position
//! order: a monomial `x^[i] e_j` has weight `i + k_j`, and on equal weight
//! position 2 is the larger one. A basis is minimal exactly when its two rows
//! have distinct leading positions.
//!
//! The interpolation module of a received word `r` for points `g` is the row
//! span of `[Π_g, 0; −Λ_{g,r}, x]`; it consists of all `[f1, f2]` with
//! `f1(g_i) + f2(r_i) = 0` for every `i`. Two constructions of a minimal basis
//! are provided: a right Euclidean algorithm and a point-by-point iteration.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::field::{Elem, Field};
use crate::linpoly::{self, Degree, LinPoly, LinPolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error(transparent)]
    LinPoly(#[from] LinPolyError),
    #[error("need 1 <= k <= n, got k = {k}, n = {n}")]
    InvalidDimension { k: usize, n: usize },
    #[error("basis rows must be nonzero")]
    ZeroRow,
    #[error("rows do not have leading positions 1 and 2")]
    NotMinimal,
}

/// Weights `(0, k−1)` of the term-over-position order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderWeights {
    k2: usize,
}

impl OrderWeights {
    /// Weights for a code of dimension `k ≥ 1`.
    pub fn for_dimension(k: usize) -> OrderWeights {
        assert!(k >= 1, "code dimension must be positive");
        OrderWeights { k2: k - 1 }
    }

    pub fn k1(&self) -> usize {
        0
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn weight(&self, pos: Position) -> usize {
        match pos {
            Position::First => 0,
            Position::Second => self.k2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    First,
    Second,
}

impl Position {
    pub fn index(self) -> usize {
        match self {
            Position::First => 1,
            Position::Second => 2,
        }
    }
}

/// A module monomial `x^[qdeg] e_pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub qdeg: usize,
    pub pos: Position,
}

impl Monomial {
    pub fn weighted(&self, w: OrderWeights) -> usize {
        self.qdeg + w.weight(self.pos)
    }

    /// Comparison under the weighted term-over-position order.
    pub fn cmp_in(&self, other: &Monomial, w: OrderWeights) -> Ordering {
        (self.weighted(w), self.pos).cmp(&(other.weighted(w), other.pos))
    }

    /// `x^[d] ∘ self`.
    pub fn shifted(self, d: usize) -> Monomial {
        Monomial {
            qdeg: self.qdeg + d,
            pos: self.pos,
        }
    }
}

/// An element `[f1, f2]` of L_q², identified with `Q(x, y) = f1(x) + f2(y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModVec {
    pub f1: LinPoly,
    pub f2: LinPoly,
}

impl ModVec {
    pub fn new(f1: LinPoly, f2: LinPoly) -> ModVec {
        ModVec { f1, f2 }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn weighted_qdeg(&self, w: OrderWeights) -> Degree {
        self.f1.qdeg().max(self.f2.qdeg().shift(w.k2()))
    }

    pub fn leading_monomial(&self, w: OrderWeights) -> Option<Monomial> {
        let first = self.f1.qdeg().finite().map(|d| Monomial {
            qdeg: d,
            pos: Position::First,
        });
        let second = self.f2.qdeg().finite().map(|d| Monomial {
            qdeg: d,
            pos: Position::Second,
        });
        match (first, second) {
            (Some(a), Some(b)) => Some(if a.cmp_in(&b, w) == Ordering::Greater {
                a
            } else {
                b
            }),
            (a, b) => a.or(b),
        }
    }

    /// `None` for the zero vector. Ties in weighted degree go to position 2.
    pub fn leading_position(&self, w: OrderWeights) -> Option<Position> {
        self.leading_monomial(w).map(|lm| lm.pos)
    }

    /// `a ∘ self`.
    pub fn left_compose(&self, field: &Field, a: &LinPoly) -> ModVec {
        ModVec {
            f1: a.compose(field, &self.f1),
            f2: a.compose(field, &self.f2),
        }
    }

    pub fn scale(&self, field: &Field, c: Elem) -> ModVec {
        ModVec {
            f1: self.f1.scale(field, c),
            f2: self.f2.scale(field, c),
        }
    }

    pub fn add(&self, field: &Field, other: &ModVec) -> ModVec {
        ModVec {
            f1: self.f1.add(field, &other.f1),
            f2: self.f2.add(field, &other.f2),
        }
    }

    pub fn sub(&self, field: &Field, other: &ModVec) -> ModVec {
        ModVec {
            f1: self.f1.sub(field, &other.f1),
            f2: self.f2.sub(field, &other.f2),
        }
    }

    /// `f1(g) + f2(r)`.
    pub fn evaluate(&self, field: &Field, g: Elem, r: Elem) -> Elem {
        field.add(self.f1.eval(field, g), self.f2.eval(field, r))
    }

    /// Membership test for the interpolation module of `(g, r)`.
    pub fn interpolates(&self, field: &Field, g: &[Elem], r: &[Elem]) -> bool {
        g.iter()
            .zip(r)
            .all(|(&gi, &ri)| self.evaluate(field, gi, ri).is_zero())
    }

    fn frobenius_minus(&self, field: &Field, c: Elem) -> ModVec {
        ModVec {
            f1: linpoly::frobenius_minus_scalar(field, &self.f1, c),
            f2: linpoly::frobenius_minus_scalar(field, &self.f2, c),
        }
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.f1, self.f2)
    }
}

/// True iff both rows are nonzero with distinct leading positions.
pub fn is_minimal(rows: &[ModVec; 2], w: OrderWeights) -> bool {
    match (rows[0].leading_position(w), rows[1].leading_position(w)) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

/// A minimal basis with `lpos(b1) = 1`, `lpos(b2) = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis2 {
    b1: ModVec,
    b2: ModVec,
    ell1: usize,
    ell2: usize,
    weights: OrderWeights,
}

impl Basis2 {
    pub fn new(b1: ModVec, b2: ModVec, weights: OrderWeights) -> Result<Basis2, BasisError> {
        let (Some(l1), Some(l2)) = (b1.leading_monomial(weights), b2.leading_monomial(weights))
        else {
            return Err(BasisError::ZeroRow);
        };
        if l1.pos != Position::First || l2.pos != Position::Second {
            return Err(BasisError::NotMinimal);
        }
        Ok(Basis2 {
            ell1: l1.weighted(weights),
            ell2: l2.weighted(weights),
            b1,
            b2,
            weights,
        })
    }

    pub fn b1(&self) -> &ModVec {
        &self.b1
    }

    pub fn b2(&self) -> &ModVec {
        &self.b2
    }

    pub fn ell1(&self) -> usize {
        self.ell1
    }

    pub fn ell2(&self) -> usize {
        self.ell2
    }

    pub fn weights(&self) -> OrderWeights {
        self.weights
    }

    pub fn rows(&self) -> [&ModVec; 2] {
        [&self.b1, &self.b2]
    }

    /// `a1 ∘ b1 + a2 ∘ b2`.
    pub fn combine(&self, field: &Field, a1: &LinPoly, a2: &LinPoly) -> ModVec {
        self.b1
            .left_compose(field, a1)
            .add(field, &self.b2.left_compose(field, a2))
    }
}

/// Leading monomial of `a1 ∘ b1 + a2 ∘ b2` as predicted from the leading
/// monomials of the parts; `None` when both coefficients are zero.
pub fn plm_leading(basis: &Basis2, a1: &LinPoly, a2: &LinPoly) -> Option<Monomial> {
    let w = basis.weights();
    let part = |a: &LinPoly, b: &ModVec| {
        let d = a.qdeg().finite()?;
        Some(b.leading_monomial(w)?.shifted(d))
    };
    match (part(a1, &basis.b1), part(a2, &basis.b2)) {
        (Some(x), Some(y)) => Some(if x.cmp_in(&y, w) == Ordering::Greater {
            x
        } else {
            y
        }),
        (x, y) => x.or(y),
    }
}

fn check_dims(g: &[Elem], r: &[Elem], k: usize) -> Result<(), BasisError> {
    if g.len() != r.len() {
        return Err(LinPolyError::LengthMismatch {
            points: g.len(),
            values: r.len(),
        }
        .into());
    }
    if k == 0 || k > g.len() {
        return Err(BasisError::InvalidDimension { k, n: g.len() });
    }
    Ok(())
}

/// Generating rows `[Π_g, 0]` and `[−Λ_{g,r}, x]`.
pub fn interpolation_module(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
) -> Result<[ModVec; 2], BasisError> {
    check_dims(g, r, k)?;
    let (pi, lambda) = linpoly::annihilator_and_lagrange(field, g, r)?;
    Ok([
        ModVec::new(pi, LinPoly::zero()),
        ModVec::new(lambda.neg(field), LinPoly::x()),
    ])
}

/// One division step of the Euclidean construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EeaStep {
    pub quotient: LinPoly,
    pub remainder: LinPoly,
}

/// Minimal basis by the right Euclidean algorithm on `(Π_g, −Λ_{g,r})`.
pub fn minimal_basis_eea(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
) -> Result<Basis2, BasisError> {
    eea(field, g, r, k, None)
}

/// As [`minimal_basis_eea`], also returning every quotient and remainder.
pub fn minimal_basis_eea_traced(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
) -> Result<(Basis2, Vec<EeaStep>), BasisError> {
    let mut steps = Vec::new();
    let basis = eea(field, g, r, k, Some(&mut steps))?;
    Ok((basis, steps))
}

fn eea(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
    mut trace: Option<&mut Vec<EeaStep>>,
) -> Result<Basis2, BasisError> {
    let w = OrderWeights::for_dimension(k);
    let [first, second] = interpolation_module(field, g, r, k)?;
    // Rows are [P K] and [N D].
    let (mut p, mut kk) = (first.f1, first.f2);
    let (mut nn, mut d) = (second.f1, second.f2);
    while d.qdeg().shift(k - 1) < nn.qdeg() {
        let (quo, rem) = p.right_divide(field, &nn)?;
        let new_d = kk.sub(field, &quo.compose(field, &d));
        if let Some(t) = trace.as_deref_mut() {
            t.push(EeaStep {
                quotient: quo,
                remainder: rem.clone(),
            });
        }
        p = std::mem::replace(&mut nn, rem);
        kk = std::mem::replace(&mut d, new_d);
    }
    Basis2::new(ModVec::new(p, kk), ModVec::new(nn, d), w)
}

/// Which update matrix an iteration applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterBranch {
    /// `[x^q − Γ^(q−1) x, 0; Δ x, −Γ x]`
    RaiseFirst,
    /// `[Δ x, −Γ x; 0, x^q − Δ^(q−1) x]`
    RaiseSecond,
    /// `Γ = Δ = 0`: the point is already interpolated, rows unchanged.
    Skip,
}

/// State after processing one point: the discrepancies `Γ_i`, `Δ_i`, the
/// chosen update, and the rows `[P, −K]`, `[N, −D]` of `B_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterStep {
    pub gamma: Elem,
    pub delta: Elem,
    pub branch: IterBranch,
    pub rows: [ModVec; 2],
}

/// Minimal basis by processing the points one at a time.
pub fn minimal_basis_iterative(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
) -> Result<Basis2, BasisError> {
    iterative(field, g, r, k, None)
}

/// As [`minimal_basis_iterative`], also returning every intermediate basis.
pub fn minimal_basis_iterative_traced(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
) -> Result<(Basis2, Vec<IterStep>), BasisError> {
    let mut steps = Vec::new();
    let basis = iterative(field, g, r, k, Some(&mut steps))?;
    Ok((basis, steps))
}

fn iterative(
    field: &Field,
    g: &[Elem],
    r: &[Elem],
    k: usize,
    mut trace: Option<&mut Vec<IterStep>>,
) -> Result<Basis2, BasisError> {
    check_dims(g, r, k)?;
    let w = OrderWeights::for_dimension(k);
    let mut row1 = ModVec::new(LinPoly::x(), LinPoly::zero());
    let mut row2 = ModVec::new(LinPoly::zero(), LinPoly::x());
    for (&gi, &ri) in g.iter().zip(r) {
        let gamma = row1.evaluate(field, gi, ri);
        let delta = row2.evaluate(field, gi, ri);
        let first_leads_low = row1.f1.qdeg() <= row2.f2.qdeg().shift(k - 1);
        let branch = if gamma.is_zero() && delta.is_zero() {
            IterBranch::Skip
        } else if (first_leads_low && !gamma.is_zero()) || delta.is_zero() {
            IterBranch::RaiseFirst
        } else {
            IterBranch::RaiseSecond
        };
        match branch {
            IterBranch::RaiseFirst => {
                let c = field
                    .div(field.frobenius(gamma, 1), gamma)
                    .expect("gamma is nonzero");
                let new2 = row1
                    .scale(field, delta)
                    .sub(field, &row2.scale(field, gamma));
                row1 = row1.frobenius_minus(field, c);
                row2 = new2;
            }
            IterBranch::RaiseSecond => {
                let c = field
                    .div(field.frobenius(delta, 1), delta)
                    .expect("delta is nonzero");
                let new1 = row1
                    .scale(field, delta)
                    .sub(field, &row2.scale(field, gamma));
                row2 = row2.frobenius_minus(field, c);
                row1 = new1;
            }
            IterBranch::Skip => {}
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(IterStep {
                gamma,
                delta,
                branch,
                rows: [row1.clone(), row2.clone()],
            });
        }
    }
    Basis2::new(row1, row2, w)
}
