//! Finite groups as multiplication tables, with subgroup machinery,
//! conjugacy/real/rational classes and a small text DSL.

mod classes;
mod dsl;
mod subgroup;

pub use classes::{conjugacy_classes, ClassKind};
pub use dsl::GroupSpec;
pub use subgroup::{all_subgroups, Subgroup, DEFAULT_SUBGROUP_BOUND};

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type Group = Arc<FiniteGroup>;

/// Presentation ⟨a, b | a^m = 1, b^n = a^t, a^b = a^r⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetacyclicPresentation {
    pub m: u64,
    pub n: u64,
    pub t: u64,
    pub r: u64,
}

impl MetacyclicPresentation {
    pub fn new(m: u64, n: u64, t: u64, r: u64) -> Result<Self> {
        let p = MetacyclicPresentation { m, n, t, r };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let MetacyclicPresentation { m, n, t, r } = *self;
        if m == 0 || n == 0 {
            return Err(Error::validation("metacyclic orders m and n must be positive"));
        }
        if crate::exactnum::numtheory::mod_pow(r, n, m) != 1 % m {
            return Err(Error::validation(format!("r^n = {r}^{n} is not 1 modulo {m}")));
        }
        if !(t as u128 * (r as u128 + m as u128 - 1)).is_multiple_of(m as u128) {
            return Err(Error::validation(format!("m = {m} does not divide t(r-1) = {t}*({r}-1)")));
        }
        Ok(())
    }
}

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteGroup {
    size: usize,
    mult: Vec<Vec<usize>>,
    #[serde(skip)]
    inv: Vec<usize>,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    generators: Vec<usize>,
    #[serde(skip)]
    presentation: Option<MetacyclicPresentation>,
}

impl FiniteGroup {
    /// Validates and wraps a multiplication table.
    pub fn from_table(mult: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Group> {
        let size = mult.len();
        if size == 0 {
            return Err(Error::validation("empty multiplication table"));
        }
        if mult.iter().any(|r| r.len() != size || r.iter().any(|&x| x >= size)) {
            return Err(Error::validation("multiplication table must be square with entries in range"));
        }
        if (0..size).any(|x| mult[0][x] != x || mult[x][0] != x) {
            return Err(Error::validation("element 0 must be the identity"));
        }
        let mut inv = vec![usize::MAX; size];
        for x in 0..size {
            match (0..size).find(|&y| mult[x][y] == 0) {
                Some(y) if mult[y][x] == 0 => inv[x] = y,
                _ => return Err(Error::validation(format!("element {x} has no two-sided inverse"))),
            }
        }
        let g = FiniteGroup { size, mult, inv, labels, generators: Vec::new(), presentation: None };
        g.check_associative()?;
        let mut g = g;
        g.generators = g.greedy_generators();
        if g.labels.len() != size {
            g.labels = (0..size).map(|i| format!("g{i}")).collect();
        }
        Ok(Arc::new(g))
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.size;
        let bad = |x: usize, y: usize, z: usize| self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z));
        if n <= 64 {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if bad(x, y, z) {
                            return Err(Error::validation(format!("table not associative at ({x},{y},{z})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..100_000 {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(x, y, z) {
                    return Err(Error::validation(format!("table not associative at ({x},{y},{z})")));
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        // Prefer elements of large order so the list stays short.
        let mut cand: Vec<usize> = (1..self.size).collect();
        cand.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in cand {
            if span.len() == self.size {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// The metacyclic group with elements a^i b^j stored at index i + m·j.
    pub fn metacyclic(p: MetacyclicPresentation) -> Result<Group> {
        p.validate()?;
        let (m, n, t, r) = (p.m as usize, p.n as usize, p.t as usize, p.r as usize);
        let size = m * n;
        // b^{-1} a b = a^r, so b a = a^{r^{n-1}} b; a^k b^j = b^j a^{k·r^j}.
        let rinv = crate::exactnum::numtheory::mod_pow(r as u64, p.n - 1, p.m) as usize;
        let mut rinv_pow = vec![1 % m; n];
        for j in 1..n {
            rinv_pow[j] = rinv_pow[j - 1] * rinv % m;
        }
        let mut mult = vec![vec![0; size]; size];
        for j in 0..n {
            for i in 0..m {
                for l in 0..n {
                    for k in 0..m {
                        // (a^i b^j)(a^k b^l) = a^{i + k r'^j} b^{j+l}
                        let mut ai = (i + k * rinv_pow[j]) % m;
                        let mut bj = j + l;
                        if bj >= n {
                            bj -= n;
                            ai = (ai + t) % m;
                        }
                        mult[i + m * j][k + m * l] = ai + m * bj;
                    }
                }
            }
        }
        let labels = (0..size).map(|x| word(x % m, x / m)).collect();
        let mut inv = vec![0; size];
        for x in 0..size {
            inv[x] = (0..size).find(|&y| mult[x][y] == 0).expect("group element has an inverse");
        }
        let generators = if m > 1 && n > 1 {
            vec![1, m]
        } else if m > 1 {
            vec![1]
        } else if n > 1 {
            vec![m]
        } else {
            vec![]
        };
        let g = FiniteGroup { size, mult, inv, labels, generators, presentation: Some(p) };
        g.check_associative()?;
        Ok(Arc::new(g))
    }

    pub fn cyclic(n: u64) -> Result<Group> {
        Self::metacyclic(MetacyclicPresentation::new(n, 1, 0, 1)?)
    }

    /// Direct product of cyclic groups with mixed-radix element indices.
    pub fn abelian(dims: &[u64]) -> Result<Group> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::validation("abelian orders must be positive"));
        }
        let size: usize = dims.iter().map(|&d| d as usize).product();
        let digits = |mut x: usize| -> Vec<usize> {
            dims.iter()
                .map(|&d| {
                    let v = x % d as usize;
                    x /= d as usize;
                    v
                })
                .collect()
        };
        let undigits = |v: &[usize]| v.iter().zip(dims).rev().fold(0, |acc, (x, &d)| acc * d as usize + x);
        let mut mult = vec![vec![0; size]; size];
        for x in 0..size {
            let dx = digits(x);
            for y in 0..size {
                let s: Vec<usize> = digits(y).iter().zip(&dx).zip(dims).map(|((a, b), &d)| (a + b) % d as usize).collect();
                mult[x][y] = undigits(&s);
            }
        }
        let labels = (0..size)
            .map(|x| {
                let d = digits(x);
                if d.iter().all(|&v| v == 0) {
                    "1".to_string()
                } else {
                    d.iter()
                        .enumerate()
                        .filter(|(_, v)| **v > 0)
                        .map(|(i, v)| if *v == 1 { format!("x{i}") } else { format!("x{i}^{v}") })
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        Self::from_table(mult, labels)
    }

    /// Symmetric (or, with `even_only`, alternating) group on `n` points.
    pub fn permutations(n: usize, even_only: bool) -> Result<Group> {
        if n == 0 || n > 6 {
            return Err(Error::validation("permutation groups are supported for 1 ≤ n ≤ 6"));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            if !even_only || parity(&p) == 0 {
                perms.push(p.clone());
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index = |q: &[usize]| perms.iter().position(|x| x == q).expect("closed");
        let size = perms.len();
        let mut mult = vec![vec![0; size]; size];
        for (i, x) in perms.iter().enumerate() {
            for (j, y) in perms.iter().enumerate() {
                // Left to right: apply x then y.
                let c: Vec<usize> = (0..n).map(|k| y[x[k]]).collect();
                mult[i][j] = index(&c);
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(mult, labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// x^g = g⁻¹ x g.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..e.unsigned_abs() % self.element_order(x) as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn presentation(&self) -> Option<MetacyclicPresentation> {
        self.presentation
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&x| self.generators.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Sorted closure of a generating set.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Index of a^i b^j in a metacyclic group.
    pub fn ab(&self, i: i64, j: i64) -> Result<usize> {
        let p = self.presentation.ok_or_else(|| Error::validation("group has no metacyclic presentation"))?;
        let a = if p.m > 1 { 1 } else { 0 };
        let b = p.m as usize % self.size;
        Ok(self.mul(self.pow(a, i), self.pow(b, j)))
    }
}

fn word(i: usize, j: usize) -> String {
    let part = |s: &str, e: usize| match e {
        0 => None,
        1 => Some(s.to_string()),
        _ => Some(format!("{s}^{e}")),
    };
    let w: Vec<String> = [part("a", i), part("b", j)].into_iter().flatten().collect();
    if w.is_empty() {
        "1".into()
    } else {
        w.join(" ")
    }
}

fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
