//! Minimal list decoding by parametrizing the interpolation module.
//!
//! Given a minimal basis `{b1, b2}` of the interpolation module with weighted
//! degrees `ℓ1, ℓ2`, every codeword at rank distance `t` from the received
//! word corresponds to a module element `β ∘ b1 + γ ∘ b2` with monic `γ` of
//! q-degree `j = t − ℓ2 + k − 1` and `qdeg(β) ≤ ℓ2 − ℓ1 + j`, whose first
//! entry is divisible on the left by its second. The decoder sweeps the whole
//! `(β, γ)` grid for `j = 0, 1, …` and stops after the first sweep that yields
//! a message, so every closest codeword is returned.
//!
//! Two oracles live alongside: brute force over all messages, and a chase
//! decoder that unique-decodes `r − e'` for every low-rank partial error `e'`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::basis::{self, Basis2, BasisError, ModVec};
use crate::code::{CodeError, CodeSpec, Message, Word};
use crate::field::{Elem, Field};
use crate::linalg::PrimeMatrix;
use crate::linpoly::LinPoly;
use crate::ops::{self, OpCounts};

/// Largest search space the brute-force oracles will enumerate.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("no codeword found with sweep index j <= {cap}")]
    SweepCapExceeded { cap: usize },
    #[error("enumeration of {what} exceeds the limit of 2^24 items")]
    EnumerationTooLarge { what: &'static str },
    #[error("chase radius {radius} is below the unique decoding radius {unique}")]
    RadiusBelowUnique { radius: usize, unique: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum BasisAlgorithm {
    /// Right Euclidean algorithm on the annihilator and interpolating polynomial.
    #[default]
    Eea,
    /// Point-by-point construction.
    Iterative,
}

impl BasisAlgorithm {
    pub fn minimal_basis(
        self,
        field: &Field,
        g: &[Elem],
        r: &[Elem],
        k: usize,
    ) -> Result<Basis2, BasisError> {
        match self {
            BasisAlgorithm::Eea => basis::minimal_basis_eea(field, g, r, k),
            BasisAlgorithm::Iterative => basis::minimal_basis_iterative(field, g, r, k),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    pub basis: BasisAlgorithm,
    /// Split each sweep across the rayon pool. Output does not depend on it.
    pub parallel: bool,
}

impl DecodeOptions {
    pub fn with_basis(basis: BasisAlgorithm) -> Self {
        DecodeOptions {
            basis,
            parallel: false,
        }
    }
}

/// Operation tallies split by decoding phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseCounts {
    /// Interpolation module and minimal basis.
    pub basis: OpCounts,
    /// Parametrization sweep (or the whole run for the oracles).
    pub search: OpCounts,
}

impl PhaseCounts {
    pub fn total(&self) -> OpCounts {
        self.basis + self.search
    }
}

/// Facts about the parametrization run that produced an output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepInfo {
    pub ell1: usize,
    pub ell2: usize,
    /// The sweep index at which the list became nonempty.
    pub j_final: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutput {
    /// Closest messages, deduplicated and sorted.
    pub messages: Vec<Message>,
    /// Rank distance from the received word to every listed codeword.
    pub t: usize,
    /// `None` for the brute-force oracle.
    pub sweep: Option<SweepInfo>,
    pub counters: PhaseCounts,
}

impl DecodeOutput {
    pub fn counters(&self) -> &PhaseCounts {
        &self.counters
    }
}

/// A module element `β ∘ b1 + γ ∘ b2` and the message it yields, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub f: ModVec,
    pub message: Option<Message>,
}

impl Candidate {
    pub fn new(field: &Field, basis: &Basis2, beta: &LinPoly, gamma: &LinPoly, k: usize) -> Self {
        let f = basis.combine(field, beta, gamma);
        let message = if f.f2.is_zero() {
            None
        } else {
            divisibility_check(field, &f.f2, &f.f1, k)
        };
        Candidate { f, message }
    }
}

/// The message `m` with `f1 + f2 ∘ m = 0`, if it exists and has q-degree
/// below `k`.
///
/// Module elements satisfy `f1(g_i) + f2(r_i) = 0`, so `f1 = −f2 ∘ m` makes
/// `f2` vanish on `r − m(g)`. In characteristic 2 this is the plain test
/// `f1 = f2 ∘ m`.
pub fn divisibility_check(field: &Field, f2: &LinPoly, f1: &LinPoly, k: usize) -> Option<Message> {
    let (quo, rem) = f1.neg(field).left_divide(field, f2).ok()?;
    if !rem.is_zero() {
        return None;
    }
    Message::new(quo, k).ok()
}

/// All messages whose codewords are closest to `r`.
pub fn decode_closest(
    spec: &CodeSpec,
    r: &Word,
    basis: BasisAlgorithm,
) -> Result<DecodeOutput, DecodeError> {
    decode_closest_with(spec, r, DecodeOptions::with_basis(basis))
}

pub fn decode_closest_with(
    spec: &CodeSpec,
    r: &Word,
    options: DecodeOptions,
) -> Result<DecodeOutput, DecodeError> {
    let cap = spec.field().m().min(spec.n()) + spec.k() - 1;
    match run(spec, r, options, None)? {
        Run::Found(out) => Ok(out),
        Run::Exhausted { ell2, .. } => Err(DecodeError::SweepCapExceeded {
            cap: cap.saturating_sub(ell2),
        }),
    }
}

/// Like [`decode_closest_with`] but gives up (returning `None`) once the
/// sweep would reach distances beyond `max_t`.
pub fn decode_within(
    spec: &CodeSpec,
    r: &Word,
    max_t: usize,
    options: DecodeOptions,
) -> Result<(Option<DecodeOutput>, PhaseCounts), DecodeError> {
    Ok(match run(spec, r, options, Some(max_t))? {
        Run::Found(out) => {
            let counters = out.counters;
            (Some(out), counters)
        }
        Run::Exhausted { counters, .. } => (None, counters),
    })
}

enum Run {
    Found(DecodeOutput),
    Exhausted { ell2: usize, counters: PhaseCounts },
}

fn run(
    spec: &CodeSpec,
    r: &Word,
    options: DecodeOptions,
    max_t: Option<usize>,
) -> Result<Run, DecodeError> {
    spec.check_word(r)?;
    let field = spec.field();
    let k = spec.k();
    let (basis, basis_counts) = ops::measure(|| {
        options
            .basis
            .minimal_basis(field, spec.generators(), r.entries(), k)
    });
    let basis = basis?;
    let (ell1, ell2) = (basis.ell1(), basis.ell2());
    // A codeword always exists within rank min(m, n), so j never needs to
    // exceed min(m, n) − ℓ2 + k − 1.
    let cap = (field.m().min(spec.n()) + k - 1).saturating_sub(ell2);
    let mut search = OpCounts::ZERO;
    for j in 0.. {
        if j > cap {
            return Ok(Run::Exhausted {
                ell2,
                counters: PhaseCounts {
                    basis: basis_counts,
                    search,
                },
            });
        }
        let t = ell2 + j + 1 - k;
        if max_t.is_some_and(|limit| t > limit) {
            return Ok(Run::Exhausted {
                ell2,
                counters: PhaseCounts {
                    basis: basis_counts,
                    search,
                },
            });
        }
        let (messages, counts) = sweep(field, &basis, k, j, options.parallel);
        search += counts;
        if !messages.is_empty() {
            return Ok(Run::Found(DecodeOutput {
                messages,
                t,
                sweep: Some(SweepInfo {
                    ell1,
                    ell2,
                    j_final: j,
                }),
                counters: PhaseCounts {
                    basis: basis_counts,
                    search,
                },
            }));
        }
    }
    unreachable!()
}

/// Number of β coefficients for sweep `j`: `qdeg(β) ≤ ℓ2 − ℓ1 + j`, or
/// zero when that bound is negative (only β = 0).
fn beta_len(basis: &Basis2, j: usize) -> usize {
    (basis.ell2() + j + 1).saturating_sub(basis.ell1())
}

/// Runs one full `(β, γ)` sweep. Digits are the free coefficients, γ's
/// `j` lower coefficients followed by β's; the outermost digit is split
/// across workers when `parallel` is set.
fn sweep(
    field: &Field,
    basis: &Basis2,
    k: usize,
    j: usize,
    parallel: bool,
) -> (Vec<Message>, OpCounts) {
    let b_len = beta_len(basis, j);
    let digits = j + b_len;
    let order = field.order();
    let chunk = |first: Option<u64>| -> (BTreeSet<Message>, OpCounts) {
        let (found, counts) = ops::measure(|| {
            let mut found = BTreeSet::new();
            let mut odo = Odometer::new(digits, order, first);
            loop {
                let d = odo.digits();
                let mut gamma = d[..j].to_vec();
                gamma.push(Elem::ONE);
                let gamma = LinPoly::new(gamma);
                let beta = LinPoly::new(d[j..].to_vec());
                if let Some(m) = Candidate::new(field, basis, &beta, &gamma, k).message {
                    found.insert(m);
                }
                if !odo.advance() {
                    break;
                }
            }
            found
        });
        (found, counts)
    };
    let parts: Vec<(BTreeSet<Message>, OpCounts)> = if digits == 0 {
        vec![chunk(None)]
    } else if parallel {
        (0..order).into_par_iter().map(|v| chunk(Some(v))).collect()
    } else {
        vec![chunk(None)]
    };
    let mut all = BTreeSet::new();
    let mut counts = OpCounts::ZERO;
    for (set, c) in parts {
        all.extend(set);
        counts += c;
    }
    (all.into_iter().collect(), counts)
}

/// Mixed-radix counter over `len` digits in `[0, base)`, optionally with the
/// most significant digit pinned.
struct Odometer {
    digits: Vec<Elem>,
    base: u64,
    pinned: bool,
}

impl Odometer {
    fn new(len: usize, base: u64, first: Option<u64>) -> Odometer {
        let mut digits = vec![Elem::ZERO; len];
        if let Some(v) = first {
            digits[len - 1] = Elem(v as u32);
        }
        Odometer {
            digits,
            base,
            pinned: first.is_some(),
        }
    }

    fn digits(&self) -> &[Elem] {
        &self.digits
    }

    fn advance(&mut self) -> bool {
        let free = self.digits.len() - usize::from(self.pinned);
        for d in self.digits[..free].iter_mut() {
            if u64::from(d.0) + 1 < self.base {
                d.0 += 1;
                return true;
            }
            d.0 = 0;
        }
        false
    }
}

fn checked_power(base: u64, exp: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > ENUMERATION_LIMIT {
            return None;
        }
    }
    Some(acc)
}

/// Ground truth by brute force over all `q^(mk)` messages.
pub fn decode_exhaustive(spec: &CodeSpec, r: &Word) -> Result<DecodeOutput, DecodeError> {
    spec.check_word(r)?;
    checked_power(spec.field().order(), spec.k())
        .ok_or(DecodeError::EnumerationTooLarge { what: "messages" })?;
    let (best, counts) = ops::measure(|| {
        let mut best: Option<(usize, Vec<Message>)> = None;
        let mut odo = Odometer::new(spec.k(), spec.field().order(), None);
        loop {
            let msg = Message::new(LinPoly::new(odo.digits().to_vec()), spec.k())
                .expect("k coefficients");
            let c = spec.encode(&msg).expect("degree below k");
            let d = spec.rank_distance(&c, r);
            match &mut best {
                Some((bd, list)) if d == *bd => list.push(msg),
                Some((bd, _)) if d > *bd => {}
                _ => best = Some((d, vec![msg])),
            }
            if !odo.advance() {
                break;
            }
        }
        best.expect("at least one message")
    });
    let (t, mut messages) = best;
    messages.sort();
    Ok(DecodeOutput {
        messages,
        t,
        sweep: None,
        counters: PhaseCounts {
            basis: OpCounts::ZERO,
            search: counts,
        },
    })
}

/// Every message whose codeword lies within rank `radius` of `r`, with its
/// distance, by brute force.
pub fn list_within_radius(
    spec: &CodeSpec,
    r: &Word,
    radius: usize,
) -> Result<Vec<(Message, usize)>, DecodeError> {
    spec.check_word(r)?;
    checked_power(spec.field().order(), spec.k())
        .ok_or(DecodeError::EnumerationTooLarge { what: "messages" })?;
    let mut out = Vec::new();
    let mut odo = Odometer::new(spec.k(), spec.field().order(), None);
    loop {
        let msg =
            Message::new(LinPoly::new(odo.digits().to_vec()), spec.k()).expect("k coefficients");
        let d = spec.rank_distance(&spec.encode(&msg).expect("degree below k"), r);
        if d <= radius {
            out.push((msg, d));
        }
        if !odo.advance() {
            break;
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaseOutput {
    /// Messages within the radius with their rank distances, sorted by message.
    pub messages: Vec<(Message, usize)>,
    pub radius: usize,
    /// Distinct partial errors tried.
    pub partial_errors: usize,
    pub counters: OpCounts,
}

/// All codewords within rank `radius` of `r`, found by unique-decoding
/// `r − e'` for every `e'` of rank at most `radius − ⌊(n−k)/2⌋`.
pub fn decode_chase(
    spec: &CodeSpec,
    r: &Word,
    radius: usize,
    basis: BasisAlgorithm,
) -> Result<ChaseOutput, DecodeError> {
    spec.check_word(r)?;
    let unique = spec.unique_radius();
    if radius < unique {
        return Err(DecodeError::RadiusBelowUnique { radius, unique });
    }
    let field = spec.field();
    let s = (radius - unique).min(field.m().min(spec.n()));
    let partials = partial_errors(spec, s)?;
    let options = DecodeOptions::with_basis(basis);
    let mut found: BTreeMap<Message, usize> = BTreeMap::new();
    let mut counters = OpCounts::ZERO;
    for e in &partials {
        let shifted = r.sub(field, e);
        let (out, c) = decode_within(spec, &shifted, unique, options)?;
        counters += c.total();
        let Some(out) = out else { continue };
        for msg in out.messages {
            let d = spec.rank_distance(&spec.encode(&msg)?, r);
            if d <= radius {
                found.insert(msg, d);
            }
        }
    }
    Ok(ChaseOutput {
        messages: found.into_iter().collect(),
        radius,
        partial_errors: partials.len(),
        counters,
    })
}

/// All words of rank at most `s`, as products `A · B` of `m × s` and `s × n`
/// matrices over GF(q), deduplicated and sorted.
fn partial_errors(spec: &CodeSpec, s: usize) -> Result<Vec<Word>, DecodeError> {
    let field = spec.field();
    let (m, n, q) = (field.m(), spec.n(), field.q());
    if s == 0 {
        return Ok(vec![Word::zero(n)]);
    }
    let entries = (m + n) * s;
    checked_power(u64::from(q), entries).ok_or(DecodeError::EnumerationTooLarge {
        what: "partial errors",
    })?;
    let mut out = BTreeSet::new();
    let mut odo = Odometer::new(entries, u64::from(q), None);
    loop {
        let d = odo.digits();
        let mut a = PrimeMatrix::zeros(q, m, s);
        let mut b = PrimeMatrix::zeros(q, s, n);
        for i in 0..m {
            for l in 0..s {
                a.set(i, l, d[i * s + l].0);
            }
        }
        for l in 0..s {
            for j in 0..n {
                b.set(l, j, d[m * s + l * n + j].0);
            }
        }
        let e = a.mul(&b);
        out.insert(Word(
            (0..n)
                .map(|j| field.from_coords(&(0..m).map(|i| e.get(i, j)).collect::<Vec<_>>()))
                .collect(),
        ));
        if !odo.advance() {
            break;
        }
    }
    Ok(out.into_iter().collect())
}

/// The per-phase tallies of an instrumented run.
pub fn op_counters(output: &DecodeOutput) -> PhaseCounts {
    output.counters
}
