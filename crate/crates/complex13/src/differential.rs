//! The differential on generator families.
//!
//! Coefficients the graph combinatorics does not pin down are parameters.
//! Where `d² = 0` forces a relation among them, the dependent coefficient
//! is written as the polynomial it must equal, so that `d² = 0` holds
//! identically. Two stated coefficients are adjusted by this identity: the
//! constant in `dΓ_j4̄` is 0, and `Γ_b̄b̄` enters `dΓ_B̄'` with coefficient 2,
//! since `d²Γ_ε4̄ = 0` admits no coefficient of absolute value 1 there.
//!
//! A map from a slotless family to a one-slot family sums over the marking
//! that enters the slot, with sign `(-1)^j`; this is the only sign making it
//! commute with the symmetric group action (see [`crate::colored`]).

use exactla::{ParamPoly, ParamSet};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::family::{family_index, tripod_count, FAMILIES};

/// How a term of the differential treats the slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// Target has the same slots as the source.
    Same,
    /// Slotless source, one-slot target, summed over the marking `j` with
    /// sign `(-1)^j`.
    SumOverMarkings,
}

/// One term `coeff · target` of the image of a family.
#[derive(Clone, Debug)]
pub struct FamilyTerm {
    pub target: usize,
    pub kind: TermKind,
    pub coeff: ParamPoly,
}

/// Named parameters and the image of every family.
#[derive(Clone, Debug)]
pub struct DifferentialTable {
    pub params: ParamSet,
    pub images: Vec<Vec<FamilyTerm>>,
}

fn rat(p: i64, q: i64) -> ParamPoly {
    ParamPoly::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

impl DifferentialTable {
    /// The table at `(g, n)`. The constant in `Γ_B̄' ↦ 2 Γ_b̄b̄ + c Γ_birr`
    /// is forced by `d² Γ_ε4̄ = 0` to equal `c_εb̄ c_b4̄ / 3` when `Γ_b4̄`
    /// exists, and `0` otherwise.
    pub fn new(g: usize, n: usize) -> Self {
        let mut params = ParamSet::new();
        let cs = ParamPoly::param(params.add("c_s", false));
        let c_eb = ParamPoly::param(params.add("c_εb̄", false));
        let c_b4 = ParamPoly::param(params.add("c_b4̄", false));
        let c_eirr = ParamPoly::param(params.add("c_ε,irr", false));
        let c_4i = ParamPoly::param(params.add("c_4̄i", false));
        let b4_exists = family_index("b4̄")
            .and_then(|i| tripod_count(&FAMILIES[i], g, n))
            .is_some();
        let c_bp = if b4_exists {
            c_eb.mul(&c_b4).mul(&rat(1, 3))
        } else {
            ParamPoly::zero()
        };

        let mut t = DifferentialTable {
            params,
            images: vec![Vec::new(); FAMILIES.len()],
        };
        use TermKind::{Same, SumOverMarkings as Sum};
        t.set("s", &[("δ", Same, ParamPoly::int(-1)), ("irr", Same, cs)]);
        t.set("4irr", &[("birr", Same, ParamPoly::int(3))]);
        t.set("4b̄", &[("bb̄", Same, ParamPoly::int(3))]);
        t.set("j4̄", &[("jb̄", Same, ParamPoly::int(-1))]);
        t.set(
            "ε,irr",
            &[("j,irr", Sum, ParamPoly::int(1)), ("birr", Same, c_eirr)],
        );
        t.set("B̄", &[("b̄b̄", Same, ParamPoly::int(2))]);
        t.set(
            "4̄i",
            &[("b̄i", Same, ParamPoly::int(-1)), ("j,irr", Same, c_4i)],
        );
        t.set(
            "B̄'",
            &[("b̄b̄", Same, ParamPoly::int(2)), ("birr", Same, c_bp.clone())],
        );
        t.set(
            "b4̄",
            &[("bb̄", Same, ParamPoly::int(-1)), ("birr", Same, c_b4.clone())],
        );
        t.set(
            "εb̄",
            &[
                ("jb̄", Sum, ParamPoly::int(1)),
                ("bb̄", Same, c_eb.clone()),
                ("b̄b̄", Same, ParamPoly::int(4)),
            ],
        );
        t.set(
            "44̄",
            &[
                ("b4̄", Same, ParamPoly::int(3)),
                ("4b̄", Same, ParamPoly::int(1)),
                ("4irr", Same, c_b4.neg()),
            ],
        );
        t.set(
            "ε4̄",
            &[
                ("εb̄", Same, ParamPoly::int(-1)),
                ("j4̄", Sum, ParamPoly::int(-1)),
                ("b4̄", Same, c_eb.neg()),
                ("B̄", Same, ParamPoly::int(-1)),
                ("B̄'", Same, ParamPoly::int(3)),
            ],
        );
        t.set(
            "5̄",
            &[
                ("B̄'", Same, ParamPoly::int(6)),
                ("4irr", Same, c_bp.mul(&ParamPoly::int(-2))),
                ("B̄", Same, ParamPoly::int(-6)),
            ],
        );
        t
    }

    fn set(&mut self, source: &str, terms: &[(&str, TermKind, ParamPoly)]) {
        let s = family_index(source).expect("known family");
        self.images[s] = terms
            .iter()
            .map(|(name, kind, coeff)| FamilyTerm {
                target: family_index(name).expect("known family"),
                kind: *kind,
                coeff: coeff.clone(),
            })
            .collect();
    }
}

