use gabidulin::basis::{
    is_minimal, minimal_basis_eea, minimal_basis_iterative, minimal_basis_iterative_traced,
    plm_leading, OrderWeights,
};
use gabidulin::code::{span_basis, CodeSpec, Message, Word};
use gabidulin::decoder::{
    decode_chase, decode_closest, decode_closest_with, decode_exhaustive, list_within_radius,
    BasisAlgorithm, DecodeOptions,
};
use gabidulin::field::{Elem, Field};
use gabidulin::linpoly::{annihilator, lagrange, Degree, LinPoly};
use gabidulin::ops;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    vec![
        Field::new(2, 4, None).unwrap(),
        Field::new(3, 2, None).unwrap(),
        Field::new(5, 3, None).unwrap(),
        Field::new(2, 20, None).unwrap(),
    ]
}

fn field_strategy() -> impl Strategy<Value = Field> {
    (0..fields().len()).prop_map(|i| fields()[i].clone())
}

fn poly(field: &Field, rng: &mut ChaCha8Rng, max_len: usize) -> LinPoly {
    let len = rng.gen_range(0..=max_len);
    LinPoly::random(field, len, rng)
}

fn elem(field: &Field, rng: &mut ChaCha8Rng) -> Elem {
    Elem(rng.gen_range(0..field.order()) as u32)
}

fn random_code(field: Field, n: usize, k: usize, rng: &mut ChaCha8Rng) -> CodeSpec {
    loop {
        let g: Vec<Elem> = (0..n).map(|_| elem(&field, rng)).collect();
        if let Ok(c) = CodeSpec::new(field.clone(), k, g) {
            return c;
        }
    }
}

fn random_word(code: &CodeSpec, rng: &mut ChaCha8Rng) -> Word {
    Word((0..code.n()).map(|_| elem(code.field(), rng)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (elem(&f, &mut rng), elem(&f, &mut rng), elem(&f, &mut rng));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
        // Frobenius is additive and multiplicative, and its m-th power is the identity.
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, f.m()), a);
        prop_assert_eq!(f.frobenius_inv(f.frobenius(a, 2), 2), a);
    }

    #[test]
    fn composition_is_a_ring_product(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (poly(&f, &mut rng, 4), poly(&f, &mut rng, 4), poly(&f, &mut rng, 4));
        prop_assert_eq!(a.compose(&f, &b).compose(&f, &c), a.compose(&f, &b.compose(&f, &c)));
        prop_assert_eq!(a.compose(&f, &b.add(&f, &c)), a.compose(&f, &b).add(&f, &a.compose(&f, &c)));
        prop_assert_eq!(b.add(&f, &c).compose(&f, &a), b.compose(&f, &a).add(&f, &c.compose(&f, &a)));
        prop_assert_eq!(a.compose(&f, &LinPoly::x()), a.clone());
        prop_assert_eq!(LinPoly::x().compose(&f, &a), a.clone());
        let x = elem(&f, &mut rng);
        prop_assert_eq!(a.compose(&f, &b).eval(&f, x), a.eval(&f, b.eval(&f, x)));
    }

    #[test]
    fn evaluation_is_linear_over_base(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = poly(&f, &mut rng, 5);
        let (x, y) = (elem(&f, &mut rng), elem(&f, &mut rng));
        let c = rng.gen_range(0..f.q());
        prop_assert_eq!(p.eval(&f, f.add(x, y)), f.add(p.eval(&f, x), p.eval(&f, y)));
        prop_assert_eq!(p.eval(&f, f.scale_base(c, x)), f.scale_base(c, p.eval(&f, x)));
    }

    #[test]
    fn divisions_round_trip(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = poly(&f, &mut rng, 7);
        let mut b = poly(&f, &mut rng, 4);
        if b.is_zero() {
            b = LinPoly::x();
        }
        let (q, r) = a.right_divide(&f, &b).unwrap();
        prop_assert_eq!(q.compose(&f, &b).add(&f, &r), a.clone());
        prop_assert!(r.qdeg() < b.qdeg());
        let (q, r) = a.left_divide(&f, &b).unwrap();
        prop_assert_eq!(b.compose(&f, &q).add(&f, &r), a.clone());
        prop_assert!(r.qdeg() < b.qdeg());
        // Exact products divide with zero remainder on both sides.
        let c = poly(&f, &mut rng, 3);
        let (q, r) = c.compose(&f, &b).right_divide(&f, &b).unwrap();
        prop_assert_eq!((q, r), (c.clone(), LinPoly::zero()));
        let (q, r) = b.compose(&f, &c).left_divide(&f, &b).unwrap();
        prop_assert_eq!((q, r), (c, LinPoly::zero()));
        prop_assert!(a.right_divide(&f, &LinPoly::zero()).is_err());
    }

    #[test]
    fn annihilator_vanishes_exactly_on_span(f in field_strategy(), seed: u64, n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = n.min(f.m());
        let points = random_code(f.clone(), n, 1, &mut rng).generators().to_vec();
        let pi = annihilator(&f, &points).unwrap();
        prop_assert!(pi.is_monic());
        prop_assert_eq!(pi.qdeg(), Degree::Finite(n));
        if f.order() <= 1 << 16 {
            let roots = pi.root_space(&f).unwrap();
            prop_assert_eq!(span_basis(&f, &roots), span_basis(&f, &points));
        } else {
            for &g in &points {
                prop_assert!(pi.eval(&f, g).is_zero());
            }
        }
        let values: Vec<Elem> = (0..n).map(|_| elem(&f, &mut rng)).collect();
        let lam = lagrange(&f, &points, &values).unwrap();
        prop_assert!(lam.qdeg() < Degree::Finite(n));
        for (g, v) in points.iter().zip(&values) {
            prop_assert_eq!(lam.eval(&f, *g), *v);
        }
    }

    #[test]
    fn encoding_is_linear_and_matches_generator_matrix(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.m().min(5);
        let k = rng.gen_range(1..=n);
        let code = random_code(f.clone(), n, k, &mut rng);
        let a = code.random_message(&mut rng);
        let b = code.random_message(&mut rng);
        let sum = Message::new(a.poly().add(&f, b.poly()), k).unwrap();
        let (ca, cb) = (code.encode(&a).unwrap(), code.encode(&b).unwrap());
        prop_assert_eq!(code.encode(&sum).unwrap(), ca.add(&f, &cb));
        let gm = code.generator_matrix();
        let coeffs = a.coeffs(k);
        for j in 0..n {
            let mut acc = Elem::ZERO;
            for (i, &c) in coeffs.iter().enumerate() {
                acc = f.add(acc, f.mul(c, gm.get(i, j)));
            }
            prop_assert_eq!(acc, ca.entries()[j]);
        }
    }

    #[test]
    fn codes_are_mrd(seed: u64, k in 1usize..4) {
        let f = Field::new(2, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(f, 4, k, &mut rng);
        let msg = code.random_message(&mut rng);
        let w = code.rank_weight(&code.encode(&msg).unwrap());
        if msg.poly().is_zero() {
            prop_assert_eq!(w, 0);
        } else {
            prop_assert!(w >= code.min_distance());
        }
    }

    #[test]
    fn rank_distance_is_a_metric(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(f.clone(), f.m().min(4), 1, &mut rng);
        let (a, b, c) = (random_word(&code, &mut rng), random_word(&code, &mut rng), random_word(&code, &mut rng));
        prop_assert_eq!(code.rank_distance(&a, &b), code.rank_distance(&b, &a));
        prop_assert_eq!(code.rank_distance(&a, &a), 0);
        prop_assert!(code.rank_distance(&a, &c) <= code.rank_distance(&a, &b) + code.rank_distance(&b, &c));
    }

    #[test]
    fn error_span_polynomial(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.m().min(5);
        let code = random_code(f.clone(), n, 1, &mut rng);
        let t = rng.gen_range(1..=n);
        let e = code.random_error_with(t, &mut rng).unwrap();
        prop_assert_eq!(code.rank_weight(&e), t);
        let d = code.error_span_poly(&e).unwrap();
        prop_assert_eq!(d.qdeg(), Degree::Finite(t));
        let c = code.encode(&code.random_message(&mut rng)).unwrap();
        let r = c.add(&f, &e);
        for (ci, ri) in c.entries().iter().zip(r.entries()) {
            prop_assert_eq!(d.eval(&f, *ci), d.eval(&f, *ri));
        }
    }

    #[test]
    fn basis_algorithms_agree(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.m().min(6);
        let k = rng.gen_range(1..=n);
        let code = random_code(f.clone(), n, k, &mut rng);
        let r = random_word(&code, &mut rng);
        let eea = minimal_basis_eea(&f, code.generators(), r.entries(), k).unwrap();
        let (iter, steps) = minimal_basis_iterative_traced(&f, code.generators(), r.entries(), k).unwrap();
        prop_assert_eq!((eea.ell1(), eea.ell2()), (iter.ell1(), iter.ell2()));
        prop_assert_eq!(eea.ell1() + eea.ell2(), n + k - 1);
        for b in [&eea, &iter] {
            prop_assert!(is_minimal(&[b.b1().clone(), b.b2().clone()], b.weights()));
            prop_assert!(b.b1().interpolates(&f, code.generators(), r.entries()));
            prop_assert!(b.b2().interpolates(&f, code.generators(), r.entries()));
        }
        // After i points the weighted degrees sum to i + k − 1.
        let w = OrderWeights::for_dimension(k);
        for (i, s) in steps.iter().enumerate() {
            prop_assert!(is_minimal(&s.rows, w));
            let sum: usize = s.rows.iter().map(|row| row.weighted_qdeg(w).finite().unwrap()).sum();
            prop_assert_eq!(sum, i + k);
            prop_assert!(s.rows[0].interpolates(&f, &code.generators()[..=i], &r.entries()[..=i]));
            prop_assert!(s.rows[1].interpolates(&f, &code.generators()[..=i], &r.entries()[..=i]));
        }
    }

    #[test]
    fn leading_monomials_are_predictable(f in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.m().min(5);
        let k = rng.gen_range(1..=n);
        let code = random_code(f.clone(), n, k, &mut rng);
        let r = random_word(&code, &mut rng);
        let basis = minimal_basis_iterative(&f, code.generators(), r.entries(), k).unwrap();
        let (a1, a2) = (poly(&f, &mut rng, 4), poly(&f, &mut rng, 4));
        let combo = basis.combine(&f, &a1, &a2);
        prop_assert_eq!(combo.leading_monomial(basis.weights()), plm_leading(&basis, &a1, &a2));
    }

    #[test]
    fn decoder_matches_brute_force_odd_q(seed: u64, k in 1usize..3) {
        // GF(27): signs matter in the divisibility check.
        let f = Field::new(3, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_code(f, 3, k, &mut rng);
        let r = random_word(&code, &mut rng);
        let brute = decode_exhaustive(&code, &r).unwrap();
        for alg in [BasisAlgorithm::Eea, BasisAlgorithm::Iterative] {
            let out = decode_closest(&code, &r, alg).unwrap();
            prop_assert_eq!(&out.messages, &brute.messages);
            prop_assert_eq!(out.t, brute.t);
        }
    }

    #[test]
    fn decoder_soundness_and_degree_bounds(f in field_strategy(), seed: u64) {
        // Sweeps beyond the unique radius cost q^m per free coefficient.
        prop_assume!(f.order() <= 1 << 7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.m().min(4);
        let k = rng.gen_range(1..=n);
        let code = random_code(f.clone(), n, k, &mut rng);
        let c = code.encode(&code.random_message(&mut rng)).unwrap();
        let t = rng.gen_range(0..=n - k);
        let r = c.add(&f, &code.random_error_with(t, &mut rng).unwrap());
        let out = decode_closest(&code, &r, BasisAlgorithm::Iterative).unwrap();
        let sweep = out.sweep.unwrap();
        prop_assert!(out.t <= t);
        prop_assert_eq!(out.t, sweep.ell2 + sweep.j_final + 1 - k);
        prop_assert!(sweep.ell2 < out.t + k);
        prop_assert!(sweep.ell1 + out.t >= n);
        prop_assert!(!out.messages.is_empty());
        for m in &out.messages {
            prop_assert_eq!(code.rank_distance(&code.encode(m).unwrap(), &r), out.t);
        }
        let par = decode_closest_with(&code, &r, DecodeOptions { basis: BasisAlgorithm::Eea, parallel: true }).unwrap();
        prop_assert_eq!(&par.messages, &out.messages);
        prop_assert_eq!(par.counters.search, decode_closest(&code, &r, BasisAlgorithm::Eea).unwrap().counters.search);
    }
}

#[test]
fn chase_agrees_with_brute_force_on_small_code() {
    let f = Field::new(2, 3, None).unwrap();
    let code = CodeSpec::with_power_basis(f.clone(), 3, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let r = random_word(&code, &mut rng);
        for radius in code.unique_radius()..=2 {
            let chase = decode_chase(&code, &r, radius, BasisAlgorithm::Eea).unwrap();
            let brute = list_within_radius(&code, &r, radius).unwrap();
            assert_eq!(chase.messages, brute);
        }
    }
}

#[test]
fn chase_at_unique_radius_tries_only_zero() {
    let f = Field::new(2, 4, None).unwrap();
    let code = CodeSpec::with_power_basis(f, 4, 2).unwrap();
    let r = Word(vec![Elem(3), Elem(9), Elem(0), Elem(1)]);
    let out = decode_chase(&code, &r, code.unique_radius(), BasisAlgorithm::Eea).unwrap();
    assert_eq!(out.partial_errors, 1);
}

#[test]
fn counters_start_at_zero() {
    std::thread::spawn(|| assert!(ops::snapshot().is_zero()))
        .join()
        .unwrap();
}

#[test]
fn unique_radius_uses_one_division() {
    let f = Field::new(2, 8, None).unwrap();
    let code = CodeSpec::with_power_basis(f.clone(), 8, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..=2 {
        let msg = code.random_message(&mut rng);
        let r = code
            .encode(&msg)
            .unwrap()
            .add(&f, &code.random_error_with(t, &mut rng).unwrap());
        let out = decode_closest(&code, &r, BasisAlgorithm::Eea).unwrap();
        assert_eq!(out.messages, vec![msg]);
        assert_eq!(out.counters.search.symbolic_divisions, 1);
        assert_eq!(out.sweep.unwrap().ell2, t + 3);
    }
}

fn det(f: &Field, mut a: Vec<Vec<Elem>>) -> Elem {
    let n = a.len();
    let mut acc = Elem::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Elem::ZERO;
        };
        if p != c {
            a.swap(p, c);
            acc = f.neg(acc);
        }
        acc = f.mul(acc, a[c][c]);
        let inv = f.inv(a[c][c]).unwrap();
        for i in c + 1..n {
            let factor = f.mul(a[i][c], inv);
            for j in c..n {
                let s = f.mul(factor, a[c][j]);
                a[i][j] = f.sub(a[i][j], s);
            }
        }
    }
    acc
}

/// `det M(g_1..g_n, x) / det M(g_1..g_n)` with `M` the square Moore matrix.
fn moore_ratio(f: &Field, g: &[Elem], x: Elem) -> Elem {
    let moore = |pts: &[Elem]| -> Vec<Vec<Elem>> {
        (0..pts.len())
            .map(|i| pts.iter().map(|&p| f.frobenius(p, i)).collect())
            .collect()
    };
    let mut ext = g.to_vec();
    ext.push(x);
    f.div(det(f, moore(&ext)), det(f, moore(g))).unwrap()
}

#[test]
fn annihilator_matches_moore_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for f in [
        Field::new(2, 5, None).unwrap(),
        Field::new(3, 3, None).unwrap(),
        Field::new(7, 2, None).unwrap(),
    ] {
        for n in 1..=f.m().min(3) {
            let g = random_code(f.clone(), n, 1, &mut rng).generators().to_vec();
            let pi = annihilator(&f, &g).unwrap();
            for _ in 0..20 {
                let x = elem(&f, &mut rng);
                assert_eq!(pi.eval(&f, x), moore_ratio(&f, &g, x));
            }
        }
    }
}
