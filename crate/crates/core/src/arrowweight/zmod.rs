//! Linear algebra over Z_m for composite m.
//!
//! [`HowellBasis`] keeps a row echelon basis in which every pivot divides
//! m and every annihilator multiple `(m / pivot) * row` has been reduced
//! back into the basis. That closure gives the Howell property: the
//! vectors of the span vanishing on the first `k` columns are spanned by
//! the rows with pivot column at least `k`. Membership is then a greedy
//! reduction and every span element has a unique coefficient vector.

use std::ops::ControlFlow;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(g, s, t)` with `g = gcd(a, b) = s*a + t*b`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// A unit `u` with `u * x ≡ gcd(x, m) (mod m)`.
fn normalizing_unit(x: u64, m: u64) -> u64 {
    let g = gcd(x, m);
    let (x1, m1) = (x / g, m / g);
    if m1 == 1 {
        return 1;
    }
    let (_, s, _) = ext_gcd(x1 as i128, m1 as i128);
    let mut u = s.rem_euclid(m1 as i128) as u64;
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellBasis {
    m: u64,
    cols: usize,
    rows: Vec<Option<Vec<u64>>>,
}

impl HowellBasis {
    pub fn new(m: u64, cols: usize) -> Self {
        HowellBasis { m, cols, rows: vec![None; cols] }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn columns(&self) -> usize {
        self.cols
    }

    fn axpy(&self, y: &mut [u64], a: u64, x: &[u64]) {
        if a == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = (*yi + mulmod(a, xi, self.m)) % self.m;
        }
    }

    fn scaled(&self, v: &[u64], a: u64) -> Vec<u64> {
        v.iter().map(|&x| mulmod(a, x, self.m)).collect()
    }

    /// Adds a vector (entries need not be reduced) to the spanned subgroup.
    pub fn insert(&mut self, v: &[u64]) {
        assert_eq!(v.len(), self.cols);
        let m = self.m;
        if m == 1 {
            return;
        }
        let mut stack = vec![v.iter().map(|x| x % m).collect::<Vec<u64>>()];
        while let Some(mut v) = stack.pop() {
            for j in 0..self.cols {
                let b = v[j];
                if b == 0 {
                    continue;
                }
                match self.rows[j].take() {
                    None => {
                        let u = normalizing_unit(b, m);
                        let r = self.scaled(&v, u);
                        let g = r[j];
                        stack.push(self.scaled(&r, m / g));
                        self.rows[j] = Some(r);
                        break;
                    }
                    Some(r) => {
                        let a = r[j];
                        if b % a == 0 {
                            self.axpy(&mut v, m - b / a, &r);
                            self.rows[j] = Some(r);
                            continue;
                        }
                        let (g, s, t) = ext_gcd(a as i128, b as i128);
                        let s = s.rem_euclid(m as i128) as u64;
                        let t = t.rem_euclid(m as i128) as u64;
                        let g = g as u64;
                        let mut new_row = self.scaled(&r, s);
                        self.axpy(&mut new_row, t, &v);
                        // v' = (a/g) v - (b/g) r vanishes at column j
                        let mut rest = self.scaled(&v, a / g);
                        self.axpy(&mut rest, m - (b / g) % m, &r);
                        debug_assert_eq!(new_row[j], g);
                        debug_assert_eq!(rest[j], 0);
                        stack.push(self.scaled(&new_row, m / g));
                        self.rows[j] = Some(new_row);
                        v = rest;
                    }
                }
            }
        }
    }

    /// Greedy reduction; returns the remainder after clearing every
    /// pivot column as far as possible.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.m;
        let mut x: Vec<u64> = v.iter().map(|e| e % m).collect();
        for j in 0..self.cols {
            if let Some(r) = &self.rows[j] {
                let q = x[j] / r[j];
                if q != 0 {
                    self.axpy(&mut x, m - q % m, r);
                }
            }
        }
        x
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.m == 1 || self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Reduces the entries above each pivot into `0..pivot`, making the
    /// basis canonical for its span.
    pub fn normalize(&mut self) {
        for j in 0..self.cols {
            let Some(r) = self.rows[j].clone() else { continue };
            for i in 0..j {
                if let Some(mut above) = self.rows[i].take() {
                    let q = above[j] / r[j];
                    self.axpy(&mut above, (self.m - q % self.m) % self.m, &r);
                    self.rows[i] = Some(above);
                }
            }
        }
    }

    /// Basis rows with their pivot columns, in pivot order.
    pub fn rows(&self) -> Vec<(usize, &[u64])> {
        self.rows.iter().enumerate().filter_map(|(j, r)| r.as_deref().map(|r| (j, r))).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of elements of the span, if it fits.
    pub fn span_size(&self) -> Option<u128> {
        self.rows().iter().try_fold(1u128, |acc, (j, r)| acc.checked_mul((self.m / r[*j]) as u128))
    }

    /// Visits every span element in lexicographic order of entry vectors.
    pub fn for_each_lex<F: FnMut(&[u64]) -> ControlFlow<()>>(&self, mut f: F) {
        let rows = self.rows();
        let mut x = vec![0u64; self.cols];
        if self.m == 1 {
            let _ = f(&x);
            return;
        }
        let _ = self.lex_level(&rows, 0, &mut x, &mut f);
    }

    fn lex_level<F: FnMut(&[u64]) -> ControlFlow<()>>(
        &self,
        rows: &[(usize, &[u64])],
        level: usize,
        x: &mut Vec<u64>,
        f: &mut F,
    ) -> ControlFlow<()> {
        let Some(&(j, r)) = rows.get(level) else {
            return f(x);
        };
        let p = r[j];
        let mut cands: Vec<(u64, u64)> = (0..self.m / p).map(|c| ((x[j] + c * p) % self.m, c)).collect();
        cands.sort_unstable();
        for (_, c) in cands {
            let saved = x.clone();
            self.axpy(x, c, r);
            self.lex_level(rows, level + 1, x, f)?;
            *x = saved;
        }
        ControlFlow::Continue(())
    }
}

/// Solutions `x` of a homogeneous system `A x ≡ 0 (mod m)`.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    unknowns: usize,
    basis: HowellBasis,
}

impl SolutionSpace {
    /// `rows` are the equations' coefficient vectors.
    pub fn solve<'a, I: IntoIterator<Item = &'a [u64]>>(m: u64, unknowns: usize, rows: I) -> Self {
        let mut eqs = HowellBasis::new(m, unknowns);
        for r in rows {
            eqs.insert(r);
        }
        Self::kernel_of(&eqs)
    }

    /// The kernel of a reduced equation basis, read off the Howell form of
    /// `[H^T | I]`.
    pub fn kernel_of(eqs: &HowellBasis) -> Self {
        let m = eqs.modulus();
        let n = eqs.columns();
        let h: Vec<&[u64]> = eqs.rows().into_iter().map(|(_, r)| r).collect();
        let mut aug = HowellBasis::new(m, h.len() + n);
        for k in 0..n {
            let mut row: Vec<u64> = h.iter().map(|r| r[k]).collect();
            row.extend((0..n).map(|i| u64::from(i == k) % m));
            aug.insert(&row);
        }
        let mut basis = HowellBasis::new(m, n);
        for (j, r) in aug.rows() {
            if j >= h.len() {
                basis.rows[j - h.len()] = Some(r[h.len()..].to_vec());
            }
        }
        basis.normalize();
        SolutionSpace { unknowns: n, basis }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn modulus(&self) -> u64 {
        self.basis.m
    }

    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.basis.contains(x)
    }

    pub fn size(&self) -> Option<u128> {
        self.basis.span_size()
    }

    /// Up to `limit` solutions in lexicographic order.
    pub fn enumerate(&self, limit: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        if limit == 0 {
            return out;
        }
        self.basis.for_each_lex(|x| {
            out.push(x.to_vec());
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        out
    }

    pub fn for_each_lex<F: FnMut(&[u64]) -> ControlFlow<()>>(&self, f: F) {
        self.basis.for_each_lex(f)
    }
}
