//! Arithmetic in GF(q^m) over a prime base field GF(q).
//!
//! Elements are stored in the polynomial basis `{1, α, …, α^(m-1)}` where α is
//! a root of the field modulus, and are encoded as the integer `Σ a_i q^i`.
//! Fields with at most 2^16 elements use log/antilog tables; larger fields
//! multiply directly modulo the modulus (carry-less for q = 2).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ops;

/// Largest field handled with log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Largest supported field order.
const ORDER_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("base characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {q}^{m} exceeds 2^32 elements")]
    TooLarge { q: u32, m: usize },
    #[error("modulus must have {expected} coefficients, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus coefficient {0} is not in GF(q)")]
    CoefficientOutOfRange(u32),
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible (divisible by {factor:?})")]
    Reducible { factor: Vec<u32> },
    #[error("element {value} is out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// An element of GF(q^m) in its canonical integer encoding `Σ a_i q^i`.
///
/// The encoding is only meaningful relative to a [`Field`]; use
/// [`Field::element`] to validate untrusted values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field GF(q^m). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    q: u32,
    m: usize,
    order: u64,
    modulus: Vec<u32>,
    arith: Arith,
}

enum Arith {
    Tables {
        /// `exp[i] = γ^i` for a primitive γ, doubled so products of logs never wrap.
        exp: Vec<u32>,
        log: Vec<u32>,
        /// `q^i mod (order - 1)` for `i < m`.
        frob_shift: Vec<u64>,
    },
    Direct {
        /// `images[i][j] = (α^j)^(q^i)`.
        images: Vec<Vec<u32>>,
    },
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.0.q)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q && self.0.m == other.0.m && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(q^m). `modulus` lists the coefficients of a monic irreducible
    /// polynomial of degree `m` in ascending order; when omitted the smallest
    /// one (ordered by its integer encoding) is chosen.
    pub fn new(q: u32, m: usize, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = checked_order(q, m).ok_or(FieldError::TooLarge { q, m })?;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m + 1 {
                    return Err(FieldError::ModulusLength {
                        expected: m + 1,
                        got: coeffs.len(),
                    });
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= q) {
                    return Err(FieldError::CoefficientOutOfRange(c));
                }
                if coeffs[m] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if let Some(factor) = find_factor(q, coeffs) {
                    return Err(FieldError::Reducible { factor });
                }
                coeffs.to_vec()
            }
            None => default_modulus(q, m),
        };
        let mut inner = Inner {
            q,
            m,
            order,
            modulus,
            arith: Arith::Direct { images: Vec::new() },
        };
        inner.arith = if order <= TABLE_LIMIT {
            build_tables(&inner)
        } else {
            build_images(&inner)
        };
        Ok(Field(Arc::new(inner)))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    /// Number of field elements, q^m.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Modulus coefficients in ascending order (length m + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of x modulo the field modulus.
    pub fn alpha(&self) -> Elem {
        if self.0.m >= 2 {
            Elem(self.0.q)
        } else {
            self.neg(Elem(self.0.modulus[0]))
        }
    }

    /// Validates a raw integer encoding.
    pub fn element(&self, value: u64) -> Result<Elem, FieldError> {
        if value >= self.0.order {
            return Err(FieldError::ElementOutOfRange {
                value,
                order: self.0.order,
            });
        }
        Ok(Elem(value as u32))
    }

    pub fn contains(&self, a: Elem) -> bool {
        u64::from(a.0) < self.0.order
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.order).map(|v| Elem(v as u32))
    }

    /// Coordinates of `a` in the polynomial basis, lowest power first.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let q = self.0.q;
        let mut v = a.0;
        let mut out = Vec::with_capacity(self.0.m);
        for _ in 0..self.0.m {
            out.push(v % q);
            v /= q;
        }
        out
    }

    /// Inverse of [`coords`](Self::coords). Coordinates are reduced mod q.
    pub fn from_coords(&self, coords: &[u32]) -> Elem {
        let q = u64::from(self.0.q);
        let mut v = 0u64;
        for &c in coords.iter().take(self.0.m).rev() {
            v = v * q + u64::from(c) % q;
        }
        Elem(v as u32)
    }

    /// Embeds a base-field scalar.
    pub fn from_base(&self, c: u32) -> Elem {
        Elem(c % self.0.q)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let q = self.0.q;
        if q == 2 {
            return Elem(a.0 ^ b.0);
        }
        let q = u64::from(q);
        self.zip_digits(a, b, |x, y| (x + y) % q)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let q = self.0.q;
        if q == 2 {
            return Elem(a.0 ^ b.0);
        }
        let q = u64::from(q);
        self.zip_digits(a, b, |x, y| (x + q - y) % q)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let q = self.0.q;
        if q == 2 {
            return a;
        }
        let q = u64::from(q);
        self.zip_digits(a, Elem::ZERO, |x, _| (q - x) % q)
    }

    /// Multiplies by a base-field scalar `c` (taken mod q). Not counted as a
    /// field multiplication.
    pub fn scale_base(&self, c: u32, a: Elem) -> Elem {
        let q = self.0.q;
        let c = c % q;
        match c {
            0 => Elem::ZERO,
            1 => a,
            _ => {
                let (q, c) = (u64::from(q), u64::from(c));
                self.zip_digits(a, Elem::ZERO, |x, _| (x * c) % q)
            }
        }
    }

    fn zip_digits(&self, a: Elem, b: Elem, op: impl Fn(u64, u64) -> u64) -> Elem {
        let q = self.0.q;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.m {
            out += op(u64::from(x % q), u64::from(y % q)) * place;
            place *= u64::from(q);
            x /= q;
            y /= q;
        }
        Elem(out as u32)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        ops::count_mul();
        self.mul_uncounted(a, b)
    }

    fn mul_uncounted(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.0.arith {
            Arith::Tables { exp, log, .. } => {
                Elem(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
            }
            Arith::Direct { .. } => Elem(slow_mul(&self.0, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        ops::count_inv();
        Ok(match &self.0.arith {
            Arith::Tables { exp, log, .. } => {
                let n = (self.0.order - 1) as u32;
                Elem(exp[((n - log[a.0 as usize]) % n) as usize])
            }
            Arith::Direct { .. } => self.pow_uncounted(a, self.0.order - 2),
        })
    }

    /// `a / b`; one inversion plus one multiplication.
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        let inv = self.inv(b)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        self.pow_uncounted(a, e)
    }

    fn pow_uncounted(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_uncounted(acc, base);
            }
            base = self.mul_uncounted(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(q^i)`. Frobenius powers are table lookups or GF(q)-linear maps and
    /// are not counted as multiplications.
    pub fn frobenius(&self, a: Elem, i: usize) -> Elem {
        let i = i % self.0.m;
        if i == 0 || a.is_zero() {
            return a;
        }
        match &self.0.arith {
            Arith::Tables {
                exp,
                log,
                frob_shift,
            } => {
                let n = self.0.order - 1;
                let l = (u64::from(log[a.0 as usize]) * frob_shift[i]) % n;
                Elem(exp[l as usize])
            }
            Arith::Direct { images } => {
                let row = &images[i];
                let q = self.0.q;
                let mut v = a.0;
                let mut acc = Elem::ZERO;
                for &img in row.iter() {
                    let d = v % q;
                    v /= q;
                    if d != 0 {
                        acc = self.add(acc, self.scale_base(d, Elem(img)));
                    }
                }
                acc
            }
        }
    }

    /// The unique `b` with `b^(q^i) = a`.
    pub fn frobenius_inv(&self, a: Elem, i: usize) -> Elem {
        let m = self.0.m;
        self.frobenius(a, (m - i % m) % m)
    }

    /// True when `a` lies in the prime subfield GF(q).
    pub fn is_base(&self, a: Elem) -> bool {
        a.0 < self.0.q
    }
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(q: u32, m: usize) -> Option<u64> {
    let mut order = 1u64;
    for _ in 0..m {
        order = order.checked_mul(u64::from(q))?;
        if order > ORDER_LIMIT {
            return None;
        }
    }
    Some(order)
}

/// Remainder of `f` modulo the monic `d` over GF(q); ascending coefficients.
fn poly_rem(q: u32, f: &[u32], d: &[u32]) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| u64::from(c)).collect();
    let dd = d.len() - 1;
    let q64 = u64::from(q);
    while r.len() > dd {
        let top = r.len() - 1;
        let c = r[top] % q64;
        if c != 0 {
            let shift = top - dd;
            for (j, &dj) in d.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (q64 - c) * u64::from(dj)) % q64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| (c % q64) as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=m/2`.
fn find_factor(q: u32, f: &[u32]) -> Option<Vec<u32>> {
    let m = f.len() - 1;
    if q == 2 {
        let fb = f
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c) << i));
        for deg in 1..=m / 2 {
            for low in 0..(1u64 << deg) {
                let d = (1u64 << deg) | low;
                if bit_rem(fb, d) == 0 {
                    return Some((0..=deg).map(|i| ((d >> i) & 1) as u32).collect());
                }
            }
        }
        return None;
    }
    for deg in 1..=m / 2 {
        let count = u64::from(q).pow(deg as u32);
        for low in 0..count {
            let mut d = Vec::with_capacity(deg + 1);
            let mut v = low;
            for _ in 0..deg {
                d.push((v % u64::from(q)) as u32);
                v /= u64::from(q);
            }
            d.push(1);
            if poly_rem(q, f, &d).iter().all(|&c| c == 0) {
                return Some(d);
            }
        }
    }
    None
}

fn bit_degree(x: u64) -> u32 {
    63 - x.leading_zeros()
}

fn bit_rem(mut f: u64, d: u64) -> u64 {
    let dd = bit_degree(d);
    while f != 0 && bit_degree(f) >= dd {
        f ^= d << (bit_degree(f) - dd);
    }
    f
}

fn default_modulus(q: u32, m: usize) -> Vec<u32> {
    let count = checked_order(q, m).expect("order already validated");
    for low in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut v = low;
        for _ in 0..m {
            f.push((v % u64::from(q)) as u32);
            v /= u64::from(q);
        }
        f.push(1);
        if find_factor(q, &f).is_none() {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Multiplication by reduction modulo the field modulus.
fn slow_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let m = inner.m;
    let q = inner.q;
    if q == 2 {
        let mut prod = 0u64;
        let (a, mut b) = (u64::from(a), b);
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        let modulus = inner
            .modulus
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c) << i));
        return bit_rem(prod, modulus) as u32;
    }
    let q64 = u64::from(q);
    let digits = |mut v: u32| {
        let mut d = vec![0u64; m];
        for x in d.iter_mut() {
            *x = u64::from(v % q);
            v /= q;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let rem = poly_rem(q, &prod, &inner.modulus);
    let mut v = 0u64;
    for &c in rem.iter().rev() {
        v = v * q64 + u64::from(c);
    }
    v as u32
}

fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn slow_pow(inner: &Inner, a: u32, mut e: u64) -> u32 {
    let (mut base, mut acc) = (a, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

fn build_tables(inner: &Inner) -> Arith {
    let n = inner.order - 1;
    let factors = factorize(n);
    let generator = (1..inner.order as u32)
        .find(|&g| factors.iter().all(|&p| slow_pow(inner, g, n / p) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; inner.order as usize];
    let mut x = 1u32;
    for i in 0..n as usize {
        exp[i] = x;
        exp[i + n as usize] = x;
        log[x as usize] = i as u32;
        x = slow_mul(inner, x, generator);
    }
    let mut frob_shift = Vec::with_capacity(inner.m);
    let mut s = 1u64 % n.max(1);
    for _ in 0..inner.m {
        frob_shift.push(s);
        s = (s * u64::from(inner.q)) % n.max(1);
    }
    Arith::Tables {
        exp,
        log,
        frob_shift,
    }
}

fn build_images(inner: &Inner) -> Arith {
    let m = inner.m;
    let q = inner.q;
    let mut basis = Vec::with_capacity(m);
    let mut x = 1u64;
    for _ in 0..m {
        basis.push(x as u32);
        x *= u64::from(q);
    }
    let mut images = Vec::with_capacity(m);
    let mut row = basis.clone();
    for _ in 0..m {
        images.push(row.clone());
        row = row
            .iter()
            .map(|&b| slow_pow(inner, b, u64::from(q)))
            .collect();
    }
    Arith::Direct { images }
}
