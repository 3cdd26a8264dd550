//! Bit-exact replay of the two worked GF(8) examples.
//!
//! Elements are integers under a_0 + a_1·2 + a_2·4, so with α³ = α + 1:
//! α ↔ 2, α+1 ↔ 3, α² ↔ 4, α²+1 ↔ 5, α²+α ↔ 6, α²+α+1 ↔ 7.

use std::fmt::Write as _;

use gabidulin::basis::{
    interpolation_module, minimal_basis_eea_traced, minimal_basis_iterative_traced, ModVec,
};
use gabidulin::code::{CodeSpec, Word};
use gabidulin::decoder::{decode_closest, BasisAlgorithm};
use gabidulin::field::{Elem, Field};
use gabidulin::linpoly::LinPoly;

pub const DEFAULT_MODULUS: [u32; 4] = [1, 1, 0, 1];

pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub got: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

fn p(v: &[u32]) -> LinPoly {
    LinPoly::new(v.iter().map(|&x| Elem(x)).collect())
}

fn row(f1: &[u32], f2: &[u32]) -> ModVec {
    ModVec::new(p(f1), p(f2))
}

fn rows_text(rows: &[ModVec]) -> String {
    rows.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

const MESSAGES: [[u32; 2]; 7] = [[0, 6], [1, 2], [2, 1], [3, 4], [4, 7], [5, 5], [6, 3]];

fn list_text(t: usize, msgs: impl Iterator<Item = Vec<Elem>>) -> String {
    let mut s = format!("t={t}");
    for m in msgs {
        let _ = write!(s, " ({} {})", m[0], m[1]);
    }
    s
}

/// Runs every check against GF(8) built from `modulus`. An unusable
/// modulus is reported as a single failed check.
pub fn run(modulus: &[u32]) -> Vec<Check> {
    let field = match Field::new(2, 3, Some(modulus)) {
        Ok(f) => f,
        Err(e) => {
            return vec![Check {
                name: "field",
                expected: "GF(8)".into(),
                got: e.to_string(),
            }]
        }
    };
    let g = [Elem(1), field.alpha(), field.pow(field.alpha(), 2)];
    let r = [
        field.add(field.alpha(), Elem::ONE),
        Elem::ZERO,
        field.alpha(),
    ];
    let code = CodeSpec::new(field.clone(), 2, g.to_vec()).expect("independent points");
    let mut checks = Vec::new();

    let got = match interpolation_module(&field, &g, &r, 2) {
        Ok(rows) => rows_text(&rows),
        Err(e) => e.to_string(),
    };
    checks.push(Check {
        name: "interpolation rows",
        expected: rows_text(&[row(&[1, 0, 0, 1], &[]), row(&[7, 0, 4], &[1])]),
        got,
    });

    let got = match minimal_basis_eea_traced(&field, &g, &r, 2) {
        Ok((b, steps)) => {
            let mut s = String::new();
            for st in &steps {
                let _ = write!(s, "quo {} rem {}; ", st.quotient, st.remainder);
            }
            let _ = write!(
                s,
                "basis {} {} ell {} {}",
                b.b1(),
                b.b2(),
                b.ell1(),
                b.ell2()
            );
            s
        }
        Err(e) => e.to_string(),
    };
    checks.push(Check {
        name: "euclidean basis",
        expected: format!(
            "quo {} rem {}; basis {} {} ell 2 2",
            p(&[0, 3]),
            p(&[1, 5]),
            row(&[7, 0, 4], &[1]),
            row(&[1, 5], &[0, 3])
        ),
        got,
    });

    let got = match minimal_basis_iterative_traced(&field, &g, &r, 2) {
        Ok((_, steps)) => steps
            .iter()
            .map(|s| rows_text(&s.rows))
            .collect::<Vec<_>>()
            .join("; "),
        Err(e) => e.to_string(),
    };
    checks.push(Check {
        name: "iterative basis",
        expected: [
            rows_text(&[row(&[1, 1], &[]), row(&[3], &[1])]),
            rows_text(&[row(&[6, 7, 1], &[]), row(&[7, 6], &[6])]),
            rows_text(&[row(&[7, 0, 4], &[1]), row(&[1, 6, 2], &[5, 2])]),
        ]
        .join("; "),
        got,
    });

    let expected = list_text(
        1,
        MESSAGES
            .iter()
            .map(|m| m.iter().map(|&x| Elem(x)).collect()),
    );
    for (name, alg) in [
        ("decode via euclidean basis", BasisAlgorithm::Eea),
        ("decode via iterative basis", BasisAlgorithm::Iterative),
    ] {
        let got = match decode_closest(&code, &Word(r.to_vec()), alg) {
            Ok(out) => list_text(out.t, out.messages.iter().map(|m| m.coeffs(2))),
            Err(e) => e.to_string(),
        };
        checks.push(Check {
            name,
            expected: expected.clone(),
            got,
        });
    }
    checks
}
