//! Gabidulin codes: encoding, rank-metric weights and the rank-error channel.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::linalg::PrimeMatrix;
use crate::linpoly::{self, Degree, LinPoly, MooreMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("need 1 <= k <= n <= m, got n = {n}, k = {k}, m = {m}")]
    InvalidDimensions { n: usize, k: usize, m: usize },
    #[error("generators are not linearly independent over GF(q)")]
    DependentGenerators,
    #[error("{0} is not an element of the field")]
    ForeignElement(u32),
    #[error("message q-degree {qdeg} is not below k = {k}")]
    MessageTooLong { qdeg: usize, k: usize },
    #[error("expected a word of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("error rank {t} is outside 0..={max}")]
    RankOutOfRange { t: usize, max: usize },
    #[error("the error span polynomial of the zero word is undefined")]
    ZeroError,
}

/// A vector of `n` field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Elem>);

impl Word {
    pub fn zero(n: usize) -> Word {
        Word(vec![Elem::ZERO; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.0
    }

    pub fn add(&self, field: &Field, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| field.sub(a, b))
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A message polynomial of q-degree below the code dimension.
///
/// Ordering is lexicographic in the coefficient encodings, lowest q-degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Message(LinPoly);

impl Message {
    pub fn new(poly: LinPoly, k: usize) -> Result<Message, CodeError> {
        match poly.qdeg() {
            Degree::Finite(d) if d >= k => Err(CodeError::MessageTooLong { qdeg: d, k }),
            _ => Ok(Message(poly)),
        }
    }

    pub fn from_coeffs(coeffs: Vec<Elem>, k: usize) -> Result<Message, CodeError> {
        Message::new(LinPoly::new(coeffs), k)
    }

    pub fn poly(&self) -> &LinPoly {
        &self.0
    }

    pub fn into_poly(self) -> LinPoly {
        self.0
    }

    /// Exactly `k` coefficients, zero padded.
    pub fn coeffs(&self, k: usize) -> Vec<Elem> {
        (0..k).map(|i| self.0.coeff(i)).collect()
    }
}

/// A Gabidulin code of length `n` and dimension `k` over GF(q^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    field: Field,
    n: usize,
    k: usize,
    generators: Vec<Elem>,
}

impl CodeSpec {
    pub fn new(field: Field, k: usize, generators: Vec<Elem>) -> Result<CodeSpec, CodeError> {
        let n = generators.len();
        let m = field.m();
        if k == 0 || k > n || n > m {
            return Err(CodeError::InvalidDimensions { n, k, m });
        }
        if let Some(g) = generators.iter().find(|&&g| !field.contains(g)) {
            return Err(CodeError::ForeignElement(g.value()));
        }
        if rank_of(&field, &generators) != n {
            return Err(CodeError::DependentGenerators);
        }
        Ok(CodeSpec {
            field,
            n,
            k,
            generators,
        })
    }

    /// Generators `1, α, …, α^(n−1)`.
    pub fn with_power_basis(field: Field, n: usize, k: usize) -> Result<CodeSpec, CodeError> {
        let m = field.m();
        if n > m {
            return Err(CodeError::InvalidDimensions { n, k, m });
        }
        let mut g = Vec::with_capacity(n);
        let mut x = Elem::ONE;
        for _ in 0..n {
            g.push(x);
            x = field.mul(x, field.alpha());
        }
        CodeSpec::new(field, k, g)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Minimum rank distance `n − k + 1`.
    pub fn min_distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// `⌊(n − k) / 2⌋`.
    pub fn unique_radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn generator_matrix(&self) -> MooreMatrix {
        MooreMatrix::new(&self.field, self.k, &self.generators)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), CodeError> {
        if w.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                got: w.len(),
            });
        }
        if let Some(e) = w.0.iter().find(|&&e| !self.field.contains(e)) {
            return Err(CodeError::ForeignElement(e.0));
        }
        Ok(())
    }

    /// `(m(g_1), …, m(g_n))`.
    pub fn encode(&self, msg: &Message) -> Result<Word, CodeError> {
        if let Degree::Finite(d) = msg.poly().qdeg() {
            if d >= self.k {
                return Err(CodeError::MessageTooLong { qdeg: d, k: self.k });
            }
        }
        Ok(Word(
            self.generators
                .iter()
                .map(|&g| msg.poly().eval(&self.field, g))
                .collect(),
        ))
    }

    /// Dimension of the GF(q)-span of the entries of `w`.
    pub fn rank_weight(&self, w: &Word) -> usize {
        rank_of(&self.field, w.entries())
    }

    pub fn rank_distance(&self, a: &Word, b: &Word) -> usize {
        self.rank_weight(&a.sub(&self.field, b))
    }

    /// Echelonized GF(q)-basis of the span of the entries, pivots in
    /// ascending coordinate order.
    pub fn span_basis(&self, w: &Word) -> Vec<Elem> {
        span_basis(&self.field, w.entries())
    }

    /// A word of rank exactly `t`, drawn as the product of random full-rank
    /// `m × t` and `t × n` matrices over GF(q).
    pub fn random_error(&self, t: usize, seed: u64) -> Result<Word, CodeError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_error_with(t, &mut rng)
    }

    pub fn random_error_with<R: Rng + ?Sized>(
        &self,
        t: usize,
        rng: &mut R,
    ) -> Result<Word, CodeError> {
        let m = self.field.m();
        let max = m.min(self.n);
        if t > max {
            return Err(CodeError::RankOutOfRange { t, max });
        }
        if t == 0 {
            return Ok(Word::zero(self.n));
        }
        let q = self.field.q();
        let a = random_full_rank(q, m, t, rng);
        let b = random_full_rank(q, t, self.n, rng);
        let e = a.mul(&b);
        Ok(Word(
            (0..self.n)
                .map(|j| {
                    let col: Vec<u32> = (0..m).map(|i| e.get(i, j)).collect();
                    self.field.from_coords(&col)
                })
                .collect(),
        ))
    }

    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> Message {
        Message(LinPoly::random(&self.field, self.k, rng))
    }

    /// Annihilator of the span of the error entries; its q-degree is the
    /// rank of `e`.
    pub fn error_span_poly(&self, e: &Word) -> Result<LinPoly, CodeError> {
        let basis = self.span_basis(e);
        if basis.is_empty() {
            return Err(CodeError::ZeroError);
        }
        Ok(linpoly::annihilator(&self.field, &basis).expect("echelon basis is independent"))
    }
}

fn coordinate_matrix(field: &Field, elems: &[Elem]) -> PrimeMatrix {
    let rows: Vec<Vec<u32>> = elems.iter().map(|&e| field.coords(e)).collect();
    PrimeMatrix::from_rows(field.q(), field.m(), &rows)
}

fn rank_of(field: &Field, elems: &[Elem]) -> usize {
    coordinate_matrix(field, elems).rank()
}

/// Echelonized GF(q)-basis of the span of `elems`.
pub fn span_basis(field: &Field, elems: &[Elem]) -> Vec<Elem> {
    let mut mat = coordinate_matrix(field, elems);
    let rank = mat.rref().len();
    (0..rank).map(|i| field.from_coords(&mat.row(i))).collect()
}

fn random_full_rank<R: Rng + ?Sized>(q: u32, rows: usize, cols: usize, rng: &mut R) -> PrimeMatrix {
    let want = rows.min(cols);
    loop {
        let mut mat = PrimeMatrix::zeros(q, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                mat.set(i, j, rng.gen_range(0..q));
            }
        }
        if mat.rank() == want {
            return mat;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> Field {
        Field::new(2, 3, Some(&[1, 1, 0, 1])).unwrap()
    }

    fn example_code() -> CodeSpec {
        CodeSpec::with_power_basis(gf8(), 3, 2).unwrap()
    }

    fn word(v: &[u32]) -> Word {
        Word(v.iter().map(|&x| Elem(x)).collect())
    }

    #[test]
    fn encode_examples() {
        let code = example_code();
        // x² + αx: coefficients (α, 1).
        let m1 = Message::from_coeffs(vec![Elem(2), Elem(1)], 2).unwrap();
        assert_eq!(code.encode(&m1).unwrap(), word(&[3, 0, 5]));
        let zero = Message::from_coeffs(vec![], 2).unwrap();
        assert_eq!(code.encode(&zero).unwrap(), Word::zero(3));
        // α⁴x² = 6 · x^[1].
        let m4 = Message::from_coeffs(vec![Elem(0), Elem(6)], 2).unwrap();
        assert_eq!(code.encode(&m4).unwrap(), word(&[6, 5, 2]));
    }

    #[test]
    fn message_degree_is_bounded() {
        assert_eq!(
            Message::from_coeffs(vec![Elem(0), Elem(0), Elem(1)], 2),
            Err(CodeError::MessageTooLong { qdeg: 2, k: 2 })
        );
    }

    #[test]
    fn rank_weight_examples() {
        let code = example_code();
        assert_eq!(code.rank_weight(&word(&[0, 0, 7])), 1);
        assert_eq!(code.rank_weight(&Word::zero(3)), 0);
        assert_eq!(code.rank_weight(&word(&[1, 2, 4])), 3);
        assert_eq!(code.rank_distance(&word(&[3, 0, 5]), &word(&[3, 0, 2])), 1);
    }

    #[test]
    fn span_basis_examples() {
        let code = example_code();
        assert_eq!(code.span_basis(&word(&[0, 0, 7])), vec![Elem(7)]);
        assert_eq!(code.span_basis(&word(&[1, 2, 3])).len(), 2);
        assert!(code.span_basis(&Word::zero(3)).is_empty());
    }

    #[test]
    fn construction_errors() {
        let f = gf8();
        assert!(matches!(
            CodeSpec::new(f.clone(), 0, vec![Elem(1)]),
            Err(CodeError::InvalidDimensions { .. })
        ));
        assert!(matches!(
            CodeSpec::new(f.clone(), 3, vec![Elem(1), Elem(2)]),
            Err(CodeError::InvalidDimensions { .. })
        ));
        assert_eq!(
            CodeSpec::new(f.clone(), 1, vec![Elem(1), Elem(2), Elem(3)]),
            Err(CodeError::DependentGenerators)
        );
        assert_eq!(
            CodeSpec::new(f, 1, vec![Elem(9)]),
            Err(CodeError::ForeignElement(9))
        );
    }

    #[test]
    fn random_error_ranks() {
        let code = example_code();
        assert_eq!(code.random_error(0, 1).unwrap(), Word::zero(3));
        for t in 0..=3 {
            for seed in 0..20 {
                let e = code.random_error(t, seed).unwrap();
                assert_eq!(code.rank_weight(&e), t);
            }
        }
        assert_eq!(
            code.random_error(4, 0),
            Err(CodeError::RankOutOfRange { t: 4, max: 3 })
        );
        assert_eq!(code.random_error(2, 9), code.random_error(2, 9));
    }

    #[test]
    fn error_span_poly_single_entry() {
        let code = example_code();
        let e = word(&[0, 0, 7]);
        let d = code.error_span_poly(&e).unwrap();
        // x² − 7^(q−1) x with q = 2.
        assert_eq!(d, LinPoly::new(vec![Elem(7), Elem(1)]));
        assert_eq!(
            code.error_span_poly(&Word::zero(3)),
            Err(CodeError::ZeroError)
        );
    }

    #[test]
    fn word_display() {
        assert_eq!(word(&[3, 0, 2]).to_string(), "3 0 2");
    }
}
