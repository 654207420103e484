//! The generator families of the weight-13 quotient complex at excess 1 and 2.
//!
//! A generator is a blown-up graph: one crossed structure sits in a special
//! component, every other marking hangs on its own `ω–j` edge, and the
//! remaining `ω` legs come in tripods `(ω, ω, ω)`. A family fixes the special
//! components and which markings they carry ("slots"); the free markings and
//! the tripod count are then determined by `(g, n)`.
//!
//! Bookkeeping per component: genus contribution `h¹ + #ω + #ε - 1`, so a
//! tripod adds 2 and an `ω–j` edge adds 0, and the special vertex itself has
//! genus 1. Every generator carries exactly 11 `ω` legs.

/// Markings that a family places on its special components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slots {
    /// All markings are free.
    None,
    /// One marking `i` sits on a special component.
    One,
    /// An unordered pair `{i, j}` sits on one vertex next to a crossed `ω`.
    Pair,
}

impl Slots {
    pub fn count(self) -> usize {
        match self {
            Slots::None => 0,
            Slots::One => 1,
            Slots::Pair => 2,
        }
    }
}

/// One generator family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    /// Short name, used as the subscript of `Γ`.
    pub name: &'static str,
    /// Sum of the component excesses.
    pub excess: u32,
    /// The degree is `degree_offset - n`.
    pub degree_offset: i64,
    pub slots: Slots,
    /// Genus contribution of the special components.
    pub genus: usize,
    /// `ω` legs on the special components.
    pub omega: usize,
    /// The special components, in words.
    pub components: &'static [&'static str],
}

const L: &str = "crossed self-loop vertex with one ω";
const BBAR: &str = "two (ω, ω) vertices joined by a crossed edge";
const FOURBAR: &str = "vertex with four ω, one leg crossed";
const B: &str = "two (ω, ω) vertices joined by an edge";
const FOUR: &str = "vertex with four ω";
const JTRI: &str = "tripod (j, ω, ω)";
const EPS: &str = "ω–ε edge";

macro_rules! fam {
    ($name:expr, $e:expr, $off:expr, $slots:ident, $g:expr, $w:expr, [$($c:expr),*]) => {
        FamilySpec {
            name: $name,
            excess: $e,
            degree_offset: $off,
            slots: Slots::$slots,
            genus: $g,
            omega: $w,
            components: &[$($c),*],
        }
    };
}

/// All families, excess 1 first. The crossed tripod of excess 0 is zero and
/// has no family.
pub const FAMILIES: &[FamilySpec] = &[
    fam!("irr", 1, 24, None, 1, 1, [L]),
    fam!("δ", 1, 24, None, 3, 4, [BBAR]),
    fam!("s", 1, 23, None, 3, 4, [FOURBAR]),
    // excess 2, degree 25 - n
    fam!("i", 2, 25, One, 2, 3, ["vertex (crossed ω, i) joined to a (ω, ω) vertex"]),
    fam!("ij", 2, 25, Pair, 0, 1, ["vertex (crossed ω, i, j)"]),
    fam!("j,irr", 2, 25, One, 2, 3, [JTRI, L]),
    fam!("birr", 2, 25, None, 4, 5, [B, L]),
    fam!("bb̄", 2, 25, None, 6, 8, [B, BBAR]),
    fam!("jb̄", 2, 25, One, 4, 6, [JTRI, BBAR]),
    fam!("b̄i", 2, 25, One, 2, 3, ["(ω, ω) vertex joined by a crossed edge to a (ω, i) vertex"]),
    fam!("b̄b̄", 2, 25, None, 4, 5, ["chain (ω, ω) – (ω) – (ω, ω), the second edge crossed"]),
    // excess 2, degree 24 - n
    fam!("4irr", 2, 24, None, 4, 5, [FOUR, L]),
    fam!("4b̄", 2, 24, None, 6, 8, [FOUR, BBAR]),
    fam!("j4̄", 2, 24, One, 4, 6, [JTRI, FOURBAR]),
    fam!("ε,irr", 2, 24, None, 2, 2, [EPS, L]),
    fam!("B̄", 2, 24, None, 4, 5, ["(ω, ω, ω) vertex joined by a crossed edge to a (ω, ω) vertex"]),
    fam!("4̄i", 2, 24, One, 2, 3, ["vertex (crossed ω, ω, ω, i)"]),
    fam!("B̄'", 2, 24, None, 4, 5, ["vertex (crossed ω, ω, ω) joined to a (ω, ω) vertex"]),
    fam!("b4̄", 2, 24, None, 6, 8, [B, FOURBAR]),
    fam!("εb̄", 2, 24, None, 4, 5, [EPS, BBAR]),
    // excess 2, degree 23 - n
    fam!("44̄", 2, 23, None, 6, 8, [FOUR, FOURBAR]),
    fam!("ε4̄", 2, 23, None, 4, 5, [EPS, FOURBAR]),
    fam!("5̄", 2, 23, None, 4, 5, ["vertex with five ω, one leg crossed"]),
];

/// Index of the family with the given name.
pub fn family_index(name: &str) -> Option<usize> {
    FAMILIES.iter().position(|f| f.name == name)
}

/// Number of tripods of a generator of `family` at `(g, n)`, or `None` if
/// the family has no generator there.
pub fn tripod_count(family: &FamilySpec, g: usize, n: usize) -> Option<usize> {
    let free = n.checked_sub(family.slots.count())?;
    let rest = (g as i64) - 1 - family.genus as i64;
    if rest < 0 || rest % 2 != 0 {
        return None;
    }
    let t = (rest / 2) as usize;
    (free + family.omega + 3 * t == 11).then_some(t)
}

/// Excess `3g + 2n - 25`.
pub fn excess13(g: usize, n: usize) -> i64 {
    3 * g as i64 + 2 * n as i64 - 25
}

/// The degree `3g + n - 2 - δ_{0,n}` carrying the cohomology when
/// `3g + 2n` is 26 or 27.
pub fn expected_degree(g: usize, n: usize) -> i64 {
    3 * g as i64 + n as i64 - 2 - i64::from(n == 0)
}
