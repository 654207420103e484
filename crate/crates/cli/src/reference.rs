//! Published values the consistency checks compare against.

use std::collections::BTreeMap;

use symkit::{Partition, SchurExpansion};

/// Rows `g = 7..=18`, `n = 0..=6` of the Euler characteristic table, in the
/// LaTeX layout produced by `ChiTable::latex_rows`.
pub const CHI_ROWS: &str = include_str!("../data/chi_rows_g7_g18.tex");

/// Genus range covered by [`CHI_ROWS`].
pub const CHI_ROWS_GENUS: (usize, usize) = (7, 18);

/// Largest `n` covered by [`CHI_ROWS`].
pub const CHI_ROWS_N_MAX: usize = 6;

/// Parses [`CHI_ROWS`] into cells keyed by `(g, n)`.
pub fn chi_cells() -> BTreeMap<(usize, usize), SchurExpansion> {
    let mut cells = BTreeMap::new();
    for line in CHI_ROWS.lines() {
        let line = line.trim().trim_end_matches("\\\\").trim();
        let mut fields = line.split('&').map(str::trim);
        let g: usize = fields
            .next()
            .and_then(|f| f.parse().ok())
            .expect("row starts with the genus");
        for (n, f) in fields.enumerate() {
            let body = f.trim_start_matches('$').trim_end_matches('$').trim();
            let cell = SchurExpansion::parse(body).expect("reference cell parses");
            cells.insert((g, n), cell);
        }
    }
    cells
}

/// Parses exponent notation such as `2,1^12` or `1^4`; the empty string is
/// the empty partition.
pub fn partition(text: &str) -> Partition {
    let mut parts = Vec::new();
    for piece in text.split(',').filter(|p| !p.is_empty()) {
        match piece.split_once('^') {
            Some((p, e)) => {
                let p: usize = p.parse().expect("part");
                let e: usize = e.parse().expect("exponent");
                parts.extend(std::iter::repeat_n(p, e));
            }
            None => parts.push(piece.parse().expect("part")),
        }
    }
    Partition::new(parts)
}

/// `degree -> (partition -> multiplicity)`.
pub type Isotypic = BTreeMap<i64, BTreeMap<Partition, usize>>;

type Row = (usize, usize, &'static [(i64, &'static [(&'static str, usize)])]);

/// Weight-15 quotient complex at excess `E' <= 3`.
const WT15_ROWS: &[Row] = &[
    (1, 15, &[(15, &[("1^15", 1)])]),
    (3, 12, &[(18, &[("1^12", 1)])]),
    (5, 9, &[(21, &[("1^9", 1)])]),
    (7, 6, &[(24, &[("1^6", 1)])]),
    (9, 3, &[(27, &[("1^3", 1)])]),
    (11, 0, &[(30, &[("", 1)])]),
    (2, 14, &[(17, &[("2,1^12", 1)])]),
    (4, 11, &[(20, &[("2,1^9", 1)])]),
    (6, 8, &[(23, &[("2,1^6", 1)])]),
    (8, 5, &[(26, &[("2,1^3", 1)])]),
    (10, 2, &[(29, &[("2", 1)])]),
    (1, 16, &[(16, &[("3,1^13", 1)])]),
    (3, 13, &[(18, &[("1^13", 1)]), (19, &[("3,1^10", 2)])]),
    (5, 10, &[(21, &[("1^10", 1)]), (22, &[("3,1^7", 2)])]),
    (7, 7, &[(24, &[("1^7", 1)]), (25, &[("3,1^4", 2)])]),
    (9, 4, &[(27, &[("1^4", 1)]), (28, &[("3,1", 2)])]),
    (11, 1, &[(30, &[("1", 1)])]),
    (2, 15, &[(18, &[("4,1^11", 1), ("3,2,1^10", 1), ("3,1^12", 1)])]),
    (
        4,
        12,
        &[
            (20, &[("2,1^10", 1)]),
            (21, &[("4,1^8", 2), ("3,2,1^7", 1), ("3,1^9", 1)]),
        ],
    ),
    (
        6,
        9,
        &[
            (23, &[("2,1^7", 1)]),
            (24, &[("4,1^5", 2), ("3,2,1^4", 1), ("3,1^6", 1)]),
        ],
    ),
    (
        8,
        6,
        &[
            (26, &[("2,1^4", 1)]),
            (27, &[("4,1^2", 2), ("3,2,1", 1), ("3,1^3", 1)]),
        ],
    ),
    (10, 3, &[(29, &[("2,1", 1)])]),
    (12, 0, &[]),
];

/// Weight-13 complex at `3g + 2n` equal to 26 or 27. At `(3, 9)` the
/// tabulated value `V_{1^9} + 2 V_{21^7}` is used.
const WT13_ROWS: &[Row] = &[
    (2, 10, &[(14, &[("1^10", 1)])]),
    (4, 7, &[(17, &[("1^7", 1)])]),
    (6, 4, &[(20, &[("1^4", 1)])]),
    (8, 1, &[(23, &[("1", 1)])]),
    (9, 0, &[(24, &[("", 1)])]),
    (1, 12, &[(13, &[("2,1^10", 1)])]),
    (3, 9, &[(16, &[("1^9", 1), ("2,1^7", 2)])]),
    (5, 6, &[(19, &[("1^6", 1), ("2,1^4", 2)])]),
    (7, 3, &[(22, &[("1^3", 1), ("2,1", 2)])]),
];

fn expand(rows: &[Row]) -> Vec<((usize, usize), Isotypic)> {
    rows.iter()
        .map(|&(g, n, degrees)| {
            let table = degrees
                .iter()
                .map(|&(k, reps)| {
                    let m = reps.iter().map(|&(l, c)| (partition(l), c)).collect();
                    (k, m)
                })
                .collect();
            ((g, n), table)
        })
        .collect()
}

/// The 23 weight-15 tables, in increasing `3g + 2n`.
pub fn wt15_tables() -> Vec<((usize, usize), Isotypic)> {
    let mut out = expand(WT15_ROWS);
    out.sort_by_key(|&((g, n), _)| 3 * g + 2 * n);
    out
}

/// The nine weight-13 tables.
pub fn wt13_tables() -> Vec<((usize, usize), Isotypic)> {
    expand(WT13_ROWS)
}

/// Weight-13 cases with `3g + 2n <= 25`, where the complex has no
/// generators.
pub const WT13_VANISHING: &[(usize, usize)] = &[(1, 11), (3, 8), (5, 5), (7, 2), (2, 9), (8, 0)];

/// Pairs `(g, n)` in both the Euler characteristic table and the range of
/// the weight-15 computation.
pub const EULER_OVERLAP: &[(usize, usize)] = &[
    (7, 6),
    (8, 5),
    (8, 6),
    (9, 3),
    (9, 4),
    (10, 2),
    (10, 3),
    (11, 0),
    (11, 1),
    (12, 0),
];

/// Asymptotic constants `(D_ev, D_odd)` with their tolerances.
pub const ASYMPTOTIC_EVEN: (f64, f64) = (0.498203, 5e-7);
pub const ASYMPTOTIC_ODD: (f64, f64) = (1.24975, 5e-6);

/// Degrees `k <= 73` left open by the growth statement.
pub const GROWTH_EXCEPTIONS: &[usize] = &[1, 4, 7, 71];

/// Degrees newly shown to grow exponentially.
pub fn growth_new_values() -> Vec<usize> {
    let mut v = vec![20, 51];
    v.extend(54..=70);
    v.extend([72, 73]);
    v
}

/// Per summand `(p, delta, delta')`, the degrees `delta - 2 delta' + 3j`
/// for `0 <= j <= p` together with those shifted by 7 for `j < p`. For
/// `p = 4` the shifted list is `{19, 22, 25, 28}`.
pub fn growth_summand_sets() -> Vec<Vec<usize>> {
    let step = |a: usize, b: usize| (a..=b).step_by(3).collect::<Vec<_>>();
    let join = |mut a: Vec<usize>, b: Vec<usize>| {
        a.extend(b);
        a.sort_unstable();
        a.dedup();
        a
    };
    vec![
        join(step(27, 69), step(34, 73)),
        join(step(26, 68), step(33, 72)),
        join(step(24, 63), step(31, 67)),
        join(step(20, 50), step(27, 54)),
        join(step(16, 37), step(23, 41)),
        join(step(12, 24), step(19, 28)),
        vec![8, 11],
    ]
}
