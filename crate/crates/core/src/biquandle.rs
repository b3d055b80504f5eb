//! Finite biquandles given by operation tables.
//!
//! Elements are `0..n` internally and `1..=n` in files, tables and
//! messages. `under(x, y)` is `x ▷̱ y` and `over(x, y)` is `x ▷̄ y`, with `x`
//! the row and `y` the column.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    Under,
    Over,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Under => "under",
            Op::Over => "over",
        })
    }
}

/// A failed axiom with a witness. Elements are 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `x ▷̱ x != x ▷̄ x`.
    B1 { x: usize, under: usize, over: usize },
    /// Column `y` of a table is not a permutation; `x1` and `x2` collide.
    B2Column { op: Op, y: usize, x1: usize, x2: usize, value: usize },
    /// The map `(x, y) -> (y ▷̄ x, x ▷̱ y)` sends two pairs to one.
    B2Pair { first: (usize, usize), second: (usize, usize) },
    /// Exchange law `law` (1, 2 or 3) fails at `(x, y, z)`.
    B3 { law: u8, x: usize, y: usize, z: usize, lhs: usize, rhs: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::B1 { x, under, over } => {
                write!(f, "B1 fails at x={x}: {x} under {x} = {under} but {x} over {x} = {over}")
            }
            Violation::B2Column { op, y, x1, x2, value } => write!(
                f,
                "B2 fails: column {y} of the {op} table is not a bijection ({x1} and {x2} both map to {value})"
            ),
            Violation::B2Pair { first, second } => write!(
                f,
                "B2 fails: the pair map sends ({},{}) and ({},{}) to the same pair",
                first.0, first.1, second.0, second.1
            ),
            Violation::B3 { law, x, y, z, lhs, rhs } => {
                write!(f, "B3 law {law} fails at (x,y,z)=({x},{y},{z}): {lhs} != {rhs}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiquandleError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("{op} table entry at row {row}, column {col} is {value}, outside 1..={n}")]
    OutOfRange { op: Op, row: usize, col: usize, value: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a biquandle:\n{}", render_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("map {images:?} has {found} entries but the biquandle has {n} elements")]
    EndomorphismLength { images: Vec<usize>, found: usize, n: usize },
    #[error("map {images:?} has an entry outside 1..={n}")]
    EndomorphismRange { images: Vec<usize>, n: usize },
    #[error("map {images:?} is not an endomorphism: phi({x} {op} {y}) != phi({x}) {op} phi({y})")]
    NotEndomorphism { images: Vec<usize>, op: Op, x: usize, y: usize },
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n")
}

/// A validated finite biquandle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquandle {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
    under_inv: Vec<usize>,
    over_inv: Vec<usize>,
    pair_inv: Vec<(usize, usize)>,
}

/// Raw tables, 0-indexed, checked only for shape and range.
struct Tables {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
}

impl Tables {
    fn from_rows(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Tables, BiquandleError> {
        let n = under.len();
        if n == 0 {
            return Err(BiquandleError::Shape("biquandle must have at least one element".into()));
        }
        if over.len() != n {
            return Err(BiquandleError::Shape(format!("under table has {n} rows, over table {}", over.len())));
        }
        let flat = |op: Op, rows: &[Vec<usize>]| -> Result<Vec<usize>, BiquandleError> {
            let mut out = Vec::with_capacity(n * n);
            for (r, row) in rows.iter().enumerate() {
                if row.len() != n {
                    return Err(BiquandleError::Shape(format!(
                        "{op} table row {} has {} entries, expected {n}",
                        r + 1,
                        row.len()
                    )));
                }
                for (c, &v) in row.iter().enumerate() {
                    if v == 0 || v > n {
                        return Err(BiquandleError::OutOfRange { op, row: r + 1, col: c + 1, value: v, n });
                    }
                    out.push(v - 1);
                }
            }
            Ok(out)
        };
        Ok(Tables { n, under: flat(Op::Under, under)?, over: flat(Op::Over, over)? })
    }

    fn u(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y]
    }

    fn o(&self, x: usize, y: usize) -> usize {
        self.over[x * self.n + y]
    }

    fn violations(&self) -> Vec<Violation> {
        let n = self.n;
        let mut out = Vec::new();
        for x in 0..n {
            if self.u(x, x) != self.o(x, x) {
                out.push(Violation::B1 { x: x + 1, under: self.u(x, x) + 1, over: self.o(x, x) + 1 });
            }
        }
        for (op, f) in [(Op::Under, &self.under), (Op::Over, &self.over)] {
            for y in 0..n {
                let mut seen = vec![None; n];
                for x in 0..n {
                    let v = f[x * n + y];
                    if let Some(x1) = seen[v] {
                        out.push(Violation::B2Column { op, y: y + 1, x1: x1 + 1, x2: x + 1, value: v + 1 });
                        break;
                    }
                    seen[v] = Some(x);
                }
            }
        }
        let mut seen = vec![None; n * n];
        'pairs: for x in 0..n {
            for y in 0..n {
                let image = self.o(y, x) * n + self.u(x, y);
                if let Some((a, b)) = seen[image] {
                    out.push(Violation::B2Pair { first: (a + 1, b + 1), second: (x + 1, y + 1) });
                    break 'pairs;
                }
                seen[image] = Some((x, y));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let laws = [
                        (self.u(self.u(x, y), self.u(z, y)), self.u(self.u(x, z), self.o(y, z))),
                        (self.o(self.u(x, y), self.u(z, y)), self.u(self.o(x, z), self.o(y, z))),
                        (self.o(self.o(x, y), self.o(z, y)), self.o(self.o(x, z), self.u(y, z))),
                    ];
                    for (i, (lhs, rhs)) in laws.into_iter().enumerate() {
                        if lhs != rhs {
                            out.push(Violation::B3 {
                                law: i as u8 + 1,
                                x: x + 1,
                                y: y + 1,
                                z: z + 1,
                                lhs: lhs + 1,
                                rhs: rhs + 1,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Checks candidate 1-indexed tables against the biquandle axioms and
/// returns every violation found. Shape and range problems are errors.
pub fn validate_biquandle(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Vec<Violation>, BiquandleError> {
    Ok(Tables::from_rows(under, over)?.violations())
}

impl Biquandle {
    /// Builds a biquandle from 1-indexed row-major tables.
    pub fn new(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Self, BiquandleError> {
        let t = Tables::from_rows(under, over)?;
        let violations = t.violations();
        if !violations.is_empty() {
            return Err(BiquandleError::Invalid(violations));
        }
        let n = t.n;
        let invert = |f: &[usize]| {
            let mut inv = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    inv[y * n + f[x * n + y]] = x;
                }
            }
            inv
        };
        let mut pair_inv = vec![(0, 0); n * n];
        for a in 0..n {
            for b in 0..n {
                pair_inv[t.u(a, b) * n + t.o(b, a)] = (a, b);
            }
        }
        Ok(Biquandle {
            n,
            under_inv: invert(&t.under),
            over_inv: invert(&t.over),
            pair_inv,
            under: t.under,
            over: t.over,
        })
    }

    /// Parses the text format: `n`, then `n` rows of the under table, then
    /// `n` rows of the over table. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, BiquandleError> {
        let (n, rows) = parse_header_and_rows(text)?;
        if rows.len() != 2 * n {
            return Err(BiquandleError::Parse {
                line: rows.last().map_or(1, |r| r.0),
                message: format!("expected {} table rows, found {}", 2 * n, rows.len()),
            });
        }
        let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.1).collect();
        Self::new(&rows[..n], &rows[n..])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x ▷̱ y`, 0-indexed.
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y]
    }

    /// `x ▷̄ y`, 0-indexed.
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over[x * self.n + y]
    }

    /// The unique `x` with `x ▷̱ y = z`.
    pub fn under_inv(&self, y: usize, z: usize) -> usize {
        self.under_inv[y * self.n + z]
    }

    /// The unique `x` with `x ▷̄ y = z`.
    pub fn over_inv(&self, y: usize, z: usize) -> usize {
        self.over_inv[y * self.n + z]
    }

    /// The unique `(a, b)` with `a ▷̱ b = p` and `b ▷̄ a = q`.
    pub fn pair_inv(&self, p: usize, q: usize) -> (usize, usize) {
        self.pair_inv[p * self.n + q]
    }

    pub fn apply(&self, op: Op, x: usize, y: usize) -> usize {
        match op {
            Op::Under => self.under(x, y),
            Op::Over => self.over(x, y),
        }
    }

    /// 1-indexed rows of one table.
    pub fn table_rows(&self, op: Op) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.apply(op, x, y) + 1).collect()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, op) in [Op::Under, Op::Over].into_iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            for row in self.table_rows(op) {
                s.push_str(&join(&row));
                s.push('\n');
            }
        }
        s
    }

    /// Whether a 0-indexed map is an endomorphism; on failure, the first
    /// offending pair.
    fn endo_witness(&self, phi: &[usize]) -> Option<(Op, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                for op in [Op::Under, Op::Over] {
                    if phi[self.apply(op, x, y)] != self.apply(op, phi[x], phi[y]) {
                        return Some((op, x, y));
                    }
                }
            }
        }
        None
    }

    /// Tests a 1-indexed image vector.
    pub fn is_endomorphism(&self, images: &[usize]) -> Result<bool, BiquandleError> {
        let phi = Endomorphism::from_images(self, images)?;
        Ok(self.endo_witness(&phi.0).is_none())
    }

    /// All endomorphisms in lexicographic order of image vectors.
    pub fn enumerate_endomorphisms(&self) -> Vec<Endomorphism> {
        let mut out = Vec::new();
        let mut phi = vec![0; self.n];
        self.extend_endo(&mut phi, 0, &mut out);
        out
    }

    fn extend_endo(&self, phi: &mut Vec<usize>, k: usize, out: &mut Vec<Endomorphism>) {
        if k == self.n {
            out.push(Endomorphism(phi.clone()));
            return;
        }
        for v in 0..self.n {
            phi[k] = v;
            if self.consistent_prefix(phi, k) {
                self.extend_endo(phi, k + 1, out);
            }
        }
    }

    /// Checks the homomorphism equations among elements `0..=k` whose
    /// products also lie in `0..=k`, for pairs involving `k`.
    fn consistent_prefix(&self, phi: &[usize], k: usize) -> bool {
        for x in 0..=k {
            for (a, b) in [(x, k), (k, x)] {
                for op in [Op::Under, Op::Over] {
                    let r = self.apply(op, a, b);
                    if r <= k && phi[r] != self.apply(op, phi[a], phi[b]) {
                        return false;
                    }
                }
            }
        }
        // products landing in 0..=k from earlier pairs that involve a later
        // element are checked when that element is assigned
        for x in 0..k {
            for y in 0..k {
                for op in [Op::Under, Op::Over] {
                    if self.apply(op, x, y) == k && phi[k] != self.apply(op, phi[x], phi[y]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Parses an endomorphism list: one 1-indexed image vector per line.
    pub fn parse_endomorphisms(&self, text: &str) -> Result<Vec<Endomorphism>, BiquandleError> {
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = strip_comment(line);
            if line.is_empty() {
                continue;
            }
            let images = parse_ints(line, i + 1)?;
            let phi = Endomorphism::from_images(self, &images)?;
            if let Some((op, x, y)) = self.endo_witness(&phi.0) {
                return Err(BiquandleError::NotEndomorphism { images, op, x: x + 1, y: y + 1 });
            }
            out.push(phi);
        }
        Ok(out)
    }

    /// Checks a list of maps, reporting the first non-endomorphism.
    pub fn check_endomorphisms(&self, maps: &[Endomorphism]) -> Result<(), BiquandleError> {
        for phi in maps {
            if phi.0.len() != self.n {
                return Err(BiquandleError::EndomorphismLength { images: phi.images(), found: phi.0.len(), n: self.n });
            }
            if let Some((op, x, y)) = self.endo_witness(&phi.0) {
                return Err(BiquandleError::NotEndomorphism { images: phi.images(), op, x: x + 1, y: y + 1 });
            }
        }
        Ok(())
    }
}

/// A map `X -> X`, stored 0-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endomorphism(pub Vec<usize>);

impl Endomorphism {
    pub fn identity(n: usize) -> Self {
        Endomorphism((0..n).collect())
    }

    /// Builds from a 1-indexed image vector, checking only shape.
    pub fn from_images(b: &Biquandle, images: &[usize]) -> Result<Self, BiquandleError> {
        let n = b.size();
        if images.len() != n {
            return Err(BiquandleError::EndomorphismLength { images: images.to_vec(), found: images.len(), n });
        }
        if images.iter().any(|&v| v == 0 || v > n) {
            return Err(BiquandleError::EndomorphismRange { images: images.to_vec(), n });
        }
        Ok(Endomorphism(images.iter().map(|v| v - 1).collect()))
    }

    /// 1-indexed image vector.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism(other.0.iter().map(|&x| self.0[x]).collect())
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.images()))
    }
}

pub fn endomorphisms_to_text(maps: &[Endomorphism]) -> String {
    maps.iter().map(|m| join(&m.images()) + "\n").collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<usize>, BiquandleError> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| BiquandleError::Parse { line: lineno, message: format!("bad integer {t:?}") }))
        .collect()
}

/// Table rows tagged with their line numbers.
type NumberedRows = Vec<(usize, Vec<usize>)>;

/// Reads `n` from the first content line and returns the remaining content
/// lines with their line numbers.
fn parse_header_and_rows(text: &str) -> Result<(usize, NumberedRows), BiquandleError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
    let (lineno, first) = lines.next().ok_or(BiquandleError::Parse { line: 1, message: "empty input".into() })?;
    let header = parse_ints(first, lineno)?;
    if header.len() != 1 {
        return Err(BiquandleError::Parse { line: lineno, message: "first line must hold the size".into() });
    }
    let rows = lines.map(|(i, l)| parse_ints(l, i).map(|r| (i, r))).collect::<Result<_, _>>()?;
    Ok((header[0], rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rows(v: &[&[usize]]) -> Vec<Vec<usize>> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn paper_tables_are_biquandles() {
        for b in [fixtures::ex1(), fixtures::sigma3(), fixtures::ex3(), fixtures::z4()] {
            assert!(b.size() >= 2);
        }
    }

    #[test]
    fn b1_violation_reported() {
        let flip = rows(&[&[2, 2], &[1, 1]]);
        let id = rows(&[&[1, 1], &[2, 2]]);
        let v = validate_biquandle(&flip, &id).unwrap();
        assert!(v.contains(&Violation::B1 { x: 1, under: 2, over: 1 }), "{v:?}");
    }

    #[test]
    fn printed_three_element_table_fails_b2() {
        let err = Biquandle::parse(fixtures::Z3_PRINTED_BQ).unwrap_err();
        let BiquandleError::Invalid(v) = err else { panic!("expected violations") };
        assert!(v.contains(&Violation::B2Column { op: Op::Under, y: 3, x1: 1, x2: 3, value: 3 }), "{v:?}");
        assert!(v.contains(&Violation::B2Column { op: Op::Over, y: 3, x1: 1, x2: 3, value: 3 }));
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            validate_biquandle(&rows(&[&[1, 3], &[2, 1]]), &rows(&[&[1, 1], &[2, 2]])),
            Err(BiquandleError::OutOfRange { value: 3, .. })
        ));
        assert!(matches!(
            validate_biquandle(&rows(&[&[1], &[2, 1]]), &rows(&[&[1, 1], &[2, 2]])),
            Err(BiquandleError::Shape(_))
        ));
        assert!(matches!(Biquandle::parse("2\n1 1\n2 2\n"), Err(BiquandleError::Parse { .. })));
    }

    #[test]
    fn inverse_column_maps_round_trip() {
        for b in [fixtures::ex1(), fixtures::sigma3(), fixtures::ex3(), fixtures::z4()] {
            for x in 0..b.size() {
                for y in 0..b.size() {
                    assert_eq!(b.under_inv(y, b.under(x, y)), x);
                    assert_eq!(b.over_inv(y, b.over(x, y)), x);
                    assert_eq!(b.pair_inv(b.under(x, y), b.over(y, x)), (x, y));
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let b = fixtures::ex3();
        assert_eq!(Biquandle::parse(&b.to_text()).unwrap(), b);
    }

    fn images(v: Vec<Endomorphism>) -> Vec<Vec<usize>> {
        v.into_iter().map(|e| e.images()).collect()
    }

    #[test]
    fn endomorphisms_of_two_element_example() {
        let b = fixtures::ex1();
        assert_eq!(images(b.enumerate_endomorphisms()), vec![vec![1, 2], vec![2, 1]]);
        assert!(b.is_endomorphism(&[2, 1]).unwrap());
        assert!(!b.is_endomorphism(&[1, 1]).unwrap());
        assert!(b.is_endomorphism(&[1, 2, 3]).is_err());
    }

    #[test]
    fn endomorphisms_of_other_fixtures() {
        assert_eq!(
            images(fixtures::sigma3().enumerate_endomorphisms()),
            vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]
        );
        assert_eq!(
            images(fixtures::ex3().enumerate_endomorphisms()),
            vec![vec![1, 1, 1, 1], vec![1, 2, 3, 4], vec![1, 3, 4, 2], vec![1, 4, 2, 3]]
        );
        assert_eq!(
            images(fixtures::z4().enumerate_endomorphisms()),
            vec![vec![1, 2, 3, 4], vec![2, 3, 4, 1], vec![3, 4, 1, 2], vec![4, 1, 2, 3]]
        );
    }

    #[test]
    fn printed_three_element_endos_need_correction() {
        let b = fixtures::sigma3();
        assert!(!b.is_endomorphism(&[3, 2, 1]).unwrap());
        assert!(matches!(
            b.parse_endomorphisms(fixtures::Z3_PRINTED_ENDOS),
            Err(BiquandleError::NotEndomorphism { .. })
        ));
    }

    #[test]
    fn endomorphisms_form_a_monoid() {
        for b in [fixtures::ex1(), fixtures::sigma3(), fixtures::ex3(), fixtures::z4()] {
            let all = b.enumerate_endomorphisms();
            assert!(all.contains(&Endomorphism::identity(b.size())));
            for f in &all {
                for g in &all {
                    assert!(all.contains(&f.compose(g)));
                }
            }
        }
    }
}
