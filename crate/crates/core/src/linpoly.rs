//! The ring of q-linearized polynomials over GF(q^m).
//!
//! A [`LinPoly`] stores `f(x) = Σ a_i x^[i]` with `x^[i] = x^(q^i)` densely by
//! q-degree. The ring operations are addition and composition; composition is
//! not commutative, so division comes in a right-sided flavour
//! (`f = quo ∘ g + rem`) and a left-sided one (`f = g ∘ quo + rem`).

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::linalg::PrimeMatrix;
use crate::ops;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinPolyError {
    #[error("symbolic division by the zero polynomial")]
    DivisionByZero,
    #[error("point {index} lies in the GF(q)-span of the preceding points")]
    DependentPoints { index: usize },
    #[error("length mismatch: {points} points but {values} values")]
    LengthMismatch { points: usize, values: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// q-degree of a linearized polynomial. The zero polynomial has degree
/// [`Degree::NegInf`], which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    /// Adds a non-negative weight; `-∞` absorbs it.
    pub fn shift(self, by: usize) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(d) => Degree::Finite(d + by),
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A q-linearized polynomial; `coeffs[i]` multiplies `x^[i]`. Trailing zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinPoly {
    coeffs: Vec<Elem>,
}

impl LinPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> LinPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinPoly { coeffs }
    }

    pub fn zero() -> LinPoly {
        LinPoly { coeffs: Vec::new() }
    }

    /// The polynomial `x`, identity for composition.
    pub fn x() -> LinPoly {
        LinPoly {
            coeffs: vec![Elem::ONE],
        }
    }

    /// `c · x^[i]`.
    pub fn monomial(c: Elem, i: usize) -> LinPoly {
        let mut coeffs = vec![Elem::ZERO; i + 1];
        coeffs[i] = c;
        LinPoly::new(coeffs)
    }

    /// Uniformly random coefficients for `x^[0] … x^[len-1]`.
    pub fn random<R: Rng + ?Sized>(field: &Field, len: usize, rng: &mut R) -> LinPoly {
        let order = field.order();
        LinPoly::new(
            (0..len)
                .map(|_| Elem(rng.gen_range(0..order) as u32))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn qdeg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(Elem::ONE)
    }

    /// `Σ a_i · a^(q^i)`.
    pub fn eval(&self, field: &Field, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = field.add(acc, field.mul(c, field.frobenius(a, i)));
            }
        }
        acc
    }

    pub fn add(&self, field: &Field, other: &LinPoly) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &LinPoly) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &Field) -> LinPoly {
        LinPoly {
            coeffs: self.coeffs.iter().map(|&c| field.neg(c)).collect(),
        }
    }

    /// `c · f`, i.e. `(c x) ∘ f`.
    pub fn scale(&self, field: &Field, c: Elem) -> LinPoly {
        if c.is_zero() {
            return LinPoly::zero();
        }
        if c == Elem::ONE {
            return self.clone();
        }
        LinPoly::new(self.coeffs.iter().map(|&a| field.mul(c, a)).collect())
    }

    /// `self ∘ other`, with `(f ∘ g)_k = Σ_{i+j=k} f_i · g_j^(q^i)`.
    pub fn compose(&self, field: &Field, other: &LinPoly) -> LinPoly {
        if self.is_zero() || other.is_zero() {
            return LinPoly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, &gj) in other.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = field.mul(fi, field.frobenius(gj, i));
                out[i + j] = field.add(out[i + j], term);
            }
        }
        LinPoly::new(out)
    }

    /// Returns `(quo, rem)` with `self = quo ∘ divisor + rem` and
    /// `qdeg(rem) < qdeg(divisor)`.
    pub fn right_divide(
        &self,
        field: &Field,
        divisor: &LinPoly,
    ) -> Result<(LinPoly, LinPoly), LinPolyError> {
        let t = divisor
            .qdeg()
            .finite()
            .ok_or(LinPolyError::DivisionByZero)?;
        ops::count_division();
        let mut rem = self.coeffs.clone();
        if rem.len() <= t {
            return Ok((LinPoly::zero(), self.clone()));
        }
        let lead_inv = field
            .inv(divisor.coeffs[t])
            .expect("leading coefficient is nonzero");
        let top = rem.len() - 1 - t;
        let mut quo = vec![Elem::ZERO; top + 1];
        for s in (0..=top).rev() {
            let c = rem[s + t];
            if c.is_zero() {
                continue;
            }
            // (g_t)^(q^s) inverted is (g_t^-1)^(q^s).
            let qs = field.mul(c, field.frobenius(lead_inv, s));
            quo[s] = qs;
            for (j, &gj) in divisor.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = field.mul(qs, field.frobenius(gj, s));
                rem[s + j] = field.sub(rem[s + j], term);
            }
            debug_assert!(rem[s + t].is_zero());
        }
        Ok((LinPoly::new(quo), LinPoly::new(rem)))
    }

    /// Returns `(quo, rem)` with `self = divisor ∘ quo + rem` and
    /// `qdeg(rem) < qdeg(divisor)`.
    ///
    /// Each quotient coefficient is a q^t-th root, where t is the q-degree
    /// of the divisor. Frobenius is an automorphism of GF(q^m), so the root
    /// always exists and is unique.
    pub fn left_divide(
        &self,
        field: &Field,
        divisor: &LinPoly,
    ) -> Result<(LinPoly, LinPoly), LinPolyError> {
        let t = divisor
            .qdeg()
            .finite()
            .ok_or(LinPolyError::DivisionByZero)?;
        ops::count_division();
        let mut rem = self.coeffs.clone();
        if rem.len() <= t {
            return Ok((LinPoly::zero(), self.clone()));
        }
        let lead_inv = field
            .inv(divisor.coeffs[t])
            .expect("leading coefficient is nonzero");
        let top = rem.len() - 1 - t;
        let mut quo = vec![Elem::ZERO; top + 1];
        for s in (0..=top).rev() {
            let c = rem[s + t];
            if c.is_zero() {
                continue;
            }
            let hs = field.frobenius_inv(field.mul(c, lead_inv), t);
            quo[s] = hs;
            for (i, &gi) in divisor.coeffs.iter().enumerate() {
                if gi.is_zero() {
                    continue;
                }
                let term = field.mul(gi, field.frobenius(hs, i));
                rem[s + i] = field.sub(rem[s + i], term);
            }
            debug_assert!(rem[s + t].is_zero());
        }
        Ok((LinPoly::new(quo), LinPoly::new(rem)))
    }

    /// Basis of the GF(q)-space of roots of `self` inside GF(q^m).
    ///
    /// Roots living only in proper extensions of GF(q^m) are not searched.
    pub fn root_space(&self, field: &Field) -> Result<Vec<Elem>, LinPolyError> {
        if self.is_zero() {
            return Err(LinPolyError::ZeroPolynomial);
        }
        let m = field.m();
        let q = field.q();
        let mut a = PrimeMatrix::zeros(q, m, m);
        let mut basis_elem = 1u64;
        for j in 0..m {
            let image = field.coords(self.eval(field, Elem(basis_elem as u32)));
            for (i, &v) in image.iter().enumerate() {
                a.set(i, j, v);
            }
            basis_elem *= u64::from(q);
        }
        Ok(a.kernel().iter().map(|v| field.from_coords(v)).collect())
    }
}

impl fmt::Display for LinPoly {
    /// Space-separated `index:element` pairs, ascending q-degree; `0` for the
    /// zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{i}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Subspace annihilator of the span of `points`, built one point at a time:
/// `Π_{i+1} = (x^q − Π_i(g_{i+1})^(q−1) x) ∘ Π_i` starting from `Π_0 = x`.
pub fn annihilator(field: &Field, points: &[Elem]) -> Result<LinPoly, LinPolyError> {
    let mut pi = LinPoly::x();
    for (index, &g) in points.iter().enumerate() {
        let v = pi.eval(field, g);
        if v.is_zero() {
            return Err(LinPolyError::DependentPoints { index });
        }
        pi = annihilator_step(field, &pi, v);
    }
    Ok(pi)
}

/// `(x^q − v^(q−1) x) ∘ p`; `v^(q−1)` is taken as `v^q / v`.
pub(crate) fn annihilator_step(field: &Field, p: &LinPoly, v: Elem) -> LinPoly {
    let c = field
        .div(field.frobenius(v, 1), v)
        .expect("nonzero evaluation");
    frobenius_minus_scalar(field, p, c)
}

/// `(x^q − c x) ∘ p`.
pub(crate) fn frobenius_minus_scalar(field: &Field, p: &LinPoly, c: Elem) -> LinPoly {
    let n = p.coeffs.len();
    let mut out = vec![Elem::ZERO; n + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        let shifted = if k >= 1 {
            field.frobenius(p.coeff(k - 1), 1)
        } else {
            Elem::ZERO
        };
        let pk = p.coeff(k);
        let scaled = if pk.is_zero() || c.is_zero() {
            Elem::ZERO
        } else {
            field.mul(c, pk)
        };
        *slot = field.sub(shifted, scaled);
    }
    LinPoly::new(out)
}

/// Annihilator and interpolating polynomial computed by the joint recursion
/// `Λ_{i+1} = Λ_i − ((Λ_i(g_{i+1}) − r_{i+1}) / Π_i(g_{i+1})) · Π_i`.
pub fn annihilator_and_lagrange(
    field: &Field,
    points: &[Elem],
    values: &[Elem],
) -> Result<(LinPoly, LinPoly), LinPolyError> {
    if points.len() != values.len() {
        return Err(LinPolyError::LengthMismatch {
            points: points.len(),
            values: values.len(),
        });
    }
    let mut pi = LinPoly::x();
    let mut lambda = LinPoly::zero();
    for (index, (&g, &r)) in points.iter().zip(values).enumerate() {
        let pv = pi.eval(field, g);
        if pv.is_zero() {
            return Err(LinPolyError::DependentPoints { index });
        }
        let diff = field.sub(lambda.eval(field, g), r);
        if !diff.is_zero() {
            let factor = field.div(diff, pv).expect("nonzero evaluation");
            lambda = lambda.sub(field, &pi.scale(field, factor));
        }
        pi = annihilator_step(field, &pi, pv);
    }
    Ok((pi, lambda))
}

/// The linearized polynomial of q-degree below `points.len()` that maps each
/// point to its value.
pub fn lagrange(field: &Field, points: &[Elem], values: &[Elem]) -> Result<LinPoly, LinPolyError> {
    annihilator_and_lagrange(field, points, values).map(|(_, l)| l)
}

/// Moore matrix with entry `(i, j) = v_j^(q^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMatrix {
    entries: Vec<Vec<Elem>>,
}

impl MooreMatrix {
    pub fn new(field: &Field, rows: usize, v: &[Elem]) -> MooreMatrix {
        let entries = (0..rows)
            .map(|i| v.iter().map(|&x| field.frobenius(x, i)).collect())
            .collect();
        MooreMatrix { entries }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i]
    }
}
