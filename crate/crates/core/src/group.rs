//! The elementary abelian group `Z_p^k`.
//!
//! Elements are residue vectors of length `k`. The canonical order on
//! elements is lexicographic on coordinates, and the mixed-radix index
//! (`index_of` / `element_at`) is chosen so that index order agrees with it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group element of `Z_p^k`, stored as its coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Deserialize)]
struct RawParams {
    p: u32,
    k: u32,
}

/// Parameters of the group `Z_p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct GroupParams {
    p: u32,
    k: u32,
}

impl TryFrom<RawParams> for GroupParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        GroupParams::new(raw.p, raw.k)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = u64::from(n);
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GroupParams {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDimension);
        }
        if u64::from(p).checked_pow(k).is_none() {
            return Err(Error::OrderOverflow { p, k });
        }
        Ok(GroupParams { p, k })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn order(&self) -> u64 {
        u64::from(self.p).pow(self.k)
    }

    /// The order as an in-memory size. Panics if the group is too large to
    /// enumerate, which no caller that materializes the group can handle anyway.
    pub fn size(&self) -> usize {
        usize::try_from(self.order()).expect("group too large to enumerate")
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.k as usize])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> Element {
        assert!(i < self.k as usize, "basis index out of range");
        let mut c = vec![0; self.k as usize];
        c[i] = 1;
        Element(c)
    }

    /// Builds an element from coordinates that must already be reduced.
    pub fn element(&self, coords: Vec<u32>) -> Result<Element> {
        let e = Element(coords);
        self.check(&e)?;
        Ok(e)
    }

    /// Builds an element by reducing arbitrary integer coordinates mod `p`.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.k as usize {
            return Err(self.dimension_error(coords.len()));
        }
        let p = i64::from(self.p);
        Ok(Element(coords.iter().map(|&c| c.rem_euclid(p) as u32).collect()))
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        if e.0.len() != self.k as usize {
            return Err(self.dimension_error(e.0.len()));
        }
        if let Some(c) = e.0.iter().find(|&&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "coordinate {c} of {e} is not reduced mod {}",
                self.p
            )));
        }
        Ok(())
    }

    fn dimension_error(&self, len: usize) -> Error {
        Error::InvalidElement(format!("expected {} coordinates, got {len}", self.k))
    }

    pub fn add(&self, e1: &Element, e2: &Element) -> Result<Element> {
        self.check(e1)?;
        self.check(e2)?;
        Ok(self.add_unchecked(e1, e2))
    }

    pub(crate) fn add_unchecked(&self, e1: &Element, e2: &Element) -> Element {
        Element(
            e1.0.iter()
                .zip(&e2.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, e: &Element) -> Result<Element> {
        self.check(e)?;
        Ok(self.neg_unchecked(e))
    }

    pub(crate) fn neg_unchecked(&self, e: &Element) -> Element {
        Element(e.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, e1: &Element, e2: &Element) -> Result<Element> {
        self.check(e1)?;
        self.check(e2)?;
        Ok(self.sub_unchecked(e1, e2))
    }

    pub(crate) fn sub_unchecked(&self, e1: &Element, e2: &Element) -> Element {
        self.add_unchecked(e1, &self.neg_unchecked(e2))
    }

    /// `c·e`, with `c` reduced mod `p` first.
    pub fn scale(&self, c: i64, e: &Element) -> Result<Element> {
        self.check(e)?;
        Ok(self.scale_unchecked(c, e))
    }

    pub(crate) fn scale_unchecked(&self, c: i64, e: &Element) -> Element {
        let c = c.rem_euclid(i64::from(self.p)) as u64;
        let p = u64::from(self.p);
        Element(e.0.iter().map(|&x| ((c * u64::from(x)) % p) as u32).collect())
    }

    /// Mixed-radix index; the first coordinate is the most significant digit,
    /// so index order is lexicographic order.
    pub fn index_of(&self, e: &Element) -> usize {
        e.0.iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Element {
        let p = self.p as usize;
        let mut c = vec![0u32; self.k as usize];
        for slot in c.iter_mut().rev() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        Element(c)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(move |i| self.element_at(i))
    }

    /// The subgroup generated by `gens`, in canonical order.
    pub fn span(&self, gens: &[Element]) -> Result<Vec<Element>> {
        for g in gens {
            self.check(g)?;
        }
        let mut members = vec![false; self.size()];
        let mut current = vec![self.zero()];
        members[0] = true;
        // Closing under each generator in turn: every element of the span is
        // a sum of multiples of the generators.
        for g in gens {
            let mut next = Vec::new();
            for base in &current {
                let mut e = base.clone();
                for _ in 0..self.p {
                    members[self.index_of(&e)] = true;
                    next.push(e.clone());
                    e = self.add_unchecked(&e, g);
                }
            }
            next.sort();
            next.dedup();
            current = next;
        }
        Ok(members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.element_at(i))
            .collect())
    }

    /// Whether `b` is a multiple of `a`.
    pub fn in_span(&self, b: &Element, a: &Element) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        if a.is_zero() {
            return Err(Error::InvalidGenerator);
        }
        Ok((0..self.p).any(|m| self.scale_unchecked(i64::from(m), a) == *b))
    }

    /// A generating set for `subgroup`: greedily the lexicographically
    /// smallest element not yet in the span of the chosen ones.
    pub fn generators_of(&self, subgroup: &[Element]) -> Result<Vec<Element>> {
        self.check_subgroup(subgroup)?;
        let target = subgroup.len();
        let mut sorted = subgroup.to_vec();
        sorted.sort();
        let mut gens: Vec<Element> = Vec::new();
        let mut spanned = vec![self.zero()];
        for e in &sorted {
            if spanned.len() == target {
                break;
            }
            if spanned.binary_search(e).is_err() {
                gens.push(e.clone());
                spanned = self.span(&gens)?;
            }
        }
        Ok(gens)
    }

    fn check_subgroup(&self, subgroup: &[Element]) -> Result<()> {
        for e in subgroup {
            self.check(e)?;
        }
        let mut set = vec![false; self.size()];
        for e in subgroup {
            set[self.index_of(e)] = true;
        }
        if !set[0] {
            return Err(Error::NotASubgroup("does not contain 0".into()));
        }
        for x in subgroup {
            for y in subgroup {
                let s = self.add_unchecked(x, y);
                if !set[self.index_of(&s)] {
                    return Err(Error::NotASubgroup(format!("{x} + {y} = {s} is missing")));
                }
            }
        }
        Ok(())
    }

    /// Partitions the group into cosets of `subgroup`, oriented by the
    /// default generators from [`GroupParams::generators_of`].
    pub fn cosets(&self, subgroup: &[Element]) -> Result<Vec<Component>> {
        let gens = self.generators_of(subgroup)?;
        self.cosets_with_generators(&gens)
    }

    /// Partitions the group into cosets of `<gens>`. The generators must be
    /// independent; each component lists `u + Σ c_j·g_j` with the first
    /// generator varying fastest, where `u` is the coset's smallest element.
    /// The coset of 0 comes first and the rest follow in order of `u`.
    pub fn cosets_with_generators(&self, gens: &[Element]) -> Result<Vec<Component>> {
        let subgroup = self.span(gens)?;
        let expected = u64::from(self.p).pow(gens.len() as u32);
        if subgroup.len() as u64 != expected {
            return Err(Error::NotASubgroup(
                "orientation generators are not independent".into(),
            ));
        }
        let n = self.size();
        let mut seen = vec![false; n];
        let mut components = Vec::with_capacity(n / subgroup.len());
        for idx in 0..n {
            if seen[idx] {
                continue;
            }
            let start = self.element_at(idx);
            let elements: Vec<Element> = (0..subgroup.len())
                .map(|pos| self.offset(&start, gens, pos))
                .collect();
            for e in &elements {
                seen[self.index_of(e)] = true;
            }
            components.push(Component {
                generators: gens.to_vec(),
                elements,
            });
        }
        Ok(components)
    }

    /// `start + Σ d_j·g_j` where `d_j` are the base-`p` digits of `pos`,
    /// least significant first.
    pub(crate) fn offset(&self, start: &Element, gens: &[Element], mut pos: usize) -> Element {
        let mut e = start.clone();
        for g in gens {
            let d = pos % self.p as usize;
            pos /= self.p as usize;
            e = self.add_unchecked(&e, &self.scale_unchecked(d as i64, g));
        }
        e
    }
}

/// A coset of a subgroup, listed along its orientation generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub generators: Vec<Element>,
    pub elements: Vec<Element>,
}

impl Component {
    pub fn start(&self) -> &Element {
        &self.elements[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// An invertible `k×k` matrix over `Z_p`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn new(params: &GroupParams, rows: Vec<Vec<u32>>) -> Result<Self> {
        let k = params.k() as usize;
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidElement(format!("matrix must be {k}x{k}")));
        }
        let p = params.p();
        let rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % p).collect())
            .collect();
        let m = Matrix { p, rows };
        if m.rank() < k {
            return Err(Error::SingularMatrix(p));
        }
        Ok(m)
    }

    pub fn identity(params: &GroupParams) -> Self {
        let k = params.k() as usize;
        let rows = (0..k)
            .map(|i| (0..k).map(|j| u32::from(i == j)).collect())
            .collect();
        Matrix { p: params.p(), rows }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn rank(&self) -> usize {
        let p = u64::from(self.p);
        let mut m: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| u64::from(x)).collect())
            .collect();
        let k = m.len();
        let mut rank = 0;
        for col in 0..k {
            let Some(pivot) = (rank..k).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = mod_pow(m[rank][col], p - 2, p);
            for c in 0..k {
                m[rank][c] = m[rank][c] * inv % p;
            }
            for r in 0..k {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..k {
                        m[r][c] = (m[r][c] + p * p - f * m[rank][c]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        let k = self.rows.len();
        let p = u64::from(self.p);
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let s: u64 = (0..k)
                            .map(|t| u64::from(self.rows[i][t]) * u64::from(other.rows[t][j]))
                            .sum();
                        (s % p) as u32
                    })
                    .collect()
            })
            .collect();
        Matrix { p: self.p, rows }
    }

    pub fn apply(&self, e: &Element) -> Element {
        let p = u64::from(self.p);
        Element(
            self.rows
                .iter()
                .map(|row| {
                    let s: u64 = row
                        .iter()
                        .zip(&e.0)
                        .map(|(&m, &x)| u64::from(m) * u64::from(x))
                        .sum();
                    (s % p) as u32
                })
                .collect(),
        )
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}
