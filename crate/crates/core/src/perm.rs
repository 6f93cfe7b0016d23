//! Permutations of `{1..m}` under the right-action convention `j^(a·b) = (j^a)^b`.
//!
//! Points are 1-based at every public entry point; storage is 0-based.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use crate::error::{DnError, Result};

/// Largest supported degree. Images are stored as `u8`.
pub const MAX_DEGREE: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        self.combine(Parity::Odd)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[j-1]` is the image of `j`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let m = images.len();
        if m > MAX_DEGREE {
            return Err(DnError::DegreeTooLarge(m));
        }
        let mut seen = vec![false; m];
        let mut out = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(DnError::NotABijection(format!("{images:?}")));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Perm { images: out })
    }

    pub(crate) fn from_images0(images: Vec<u8>) -> Perm {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x as usize)
        });
        Perm { images }
    }

    /// Product of the given cycles (applied left to right) on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut p = Perm::identity(degree);
        for c in cycles {
            p = p.compose(&Perm::cycle(degree, c)?)?;
        }
        Ok(p)
    }

    /// The single cycle `(c0, c1, ..., ck)`.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Perm> {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut seen = HashSet::new();
        for &p in points {
            if p == 0 || p > degree {
                return Err(DnError::PointOutOfRange { point: p, degree });
            }
            if !seen.insert(p) {
                return Err(DnError::Parse(format!("repeated point {p} in cycle")));
            }
        }
        for (k, &p) in points.iter().enumerate() {
            let next = points[(k + 1) % points.len()];
            images[p - 1] = (next - 1) as u8;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(1,2)(3,4,5)` or `()`.
    pub fn parse(s: &str, degree: usize) -> Result<Perm> {
        let s = s.trim();
        if s.is_empty() {
            return Err(DnError::Parse("empty permutation".into()));
        }
        let mut p = Perm::identity(degree);
        let mut rest = s;
        while !rest.is_empty() {
            let body_end = rest
                .find(')')
                .ok_or_else(|| DnError::Parse(format!("unclosed cycle in {s:?}")))?;
            if !rest.starts_with('(') {
                return Err(DnError::Parse(format!("expected '(' in {s:?}")));
            }
            let body = &rest[1..body_end];
            if !body.is_empty() {
                let pts = body
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| DnError::Parse(format!("bad point {t:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                p = p.compose(&Perm::cycle(degree, &pts)?)?;
            }
            rest = &rest[body_end + 1..];
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn img0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(DnError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    #[inline]
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    /// `other^-1 · self · other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().then(self).then(other)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut x = self.img0(start);
            while x != start {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.img0(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut ty: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        ty.extend(std::iter::repeat_n(1, self.degree() - moved));
        ty.sort_unstable_by(|a, b| b.cmp(a));
        ty
    }

    pub fn parity(&self) -> Parity {
        let mut seen = vec![false; self.degree()];
        let mut cycles = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.img0(x);
            }
        }
        if (self.degree() - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn first_moved(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.img0(i) != i)
    }

    /// All of `Sym(degree)` in lexicographic image order.
    pub fn all(degree: usize) -> SymIter {
        SymIter {
            next: Some(Perm::identity(degree)),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub struct SymIter {
    next: Option<Perm>,
}

impl Iterator for SymIter {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut v = cur.images.clone();
        let n = v.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
                v.swap(i, j);
                v[i + 1..].reverse();
                self.next = Some(Perm { images: v });
            }
        }
        Some(cur)
    }
}

impl Mul for &Perm {
    type Output = Perm;

    /// Right-action product: apply `self`, then `rhs`.
    fn mul(self, rhs: &Perm) -> Perm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

/// `Sym(n) = <(1,2), (1,2,...,n)>`.
pub fn symmetric_generators(n: usize) -> Vec<Perm> {
    if n < 2 {
        return vec![Perm::identity(n)];
    }
    let full: Vec<usize> = (1..=n).collect();
    let mut gens = vec![Perm::cycle(n, &[1, 2]).unwrap()];
    let long = Perm::cycle(n, &full).unwrap();
    if !gens.contains(&long) {
        gens.push(long);
    }
    gens
}

/// `Alt(n) = <(1,2,3), (1,...,n) or (2,...,n)>`, the long cycle chosen to be even.
pub fn alternating_generators(n: usize) -> Vec<Perm> {
    if n < 3 {
        return vec![Perm::identity(n)];
    }
    let long: Vec<usize> = if n % 2 == 1 {
        (1..=n).collect()
    } else {
        (2..=n).collect()
    };
    let mut gens = vec![Perm::cycle(n, &[1, 2, 3]).unwrap()];
    let long = Perm::cycle(n, &long).unwrap();
    if !gens.contains(&long) {
        gens.push(long);
    }
    gens
}

/// The normal Klein four-subgroup of `Sym(4)`, identity first.
pub fn klein_four() -> [Perm; 4] {
    [
        Perm::identity(4),
        Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
        Perm::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap(),
        Perm::from_cycles(4, &[&[1, 4], &[2, 3]]).unwrap(),
    ]
}

#[derive(Clone, Debug)]
pub struct GenSet {
    degree: usize,
    generators: Vec<Perm>,
}

/// Result of a capped closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(Vec<Perm>),
    Overflow,
}

impl GenSet {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<GenSet> {
        if generators.is_empty() {
            return Err(DnError::EmptyGenerators);
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(DnError::DegreeMismatch(degree, bad.degree()));
        }
        Ok(GenSet { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>> {
        if point == 0 || point > self.degree {
            return Err(DnError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut seen = BTreeSet::from([point]);
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.image(x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }

    /// Breadth-first closure from the identity; gives up once more than `cap` elements exist.
    pub fn enumerate(&self, cap: usize) -> Enumeration {
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut order = vec![id];
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            head += 1;
            for g in &self.generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if order.len() >= cap {
                        return Enumeration::Overflow;
                    }
                    seen.insert(y.clone());
                    order.push(y);
                }
            }
        }
        Enumeration::Complete(order)
    }

    pub fn chain(&self) -> StabChain {
        StabChain::new(self.degree, &self.generators)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, x: &Perm) -> Result<bool> {
        if x.degree() != self.degree {
            return Err(DnError::DegreeMismatch(self.degree, x.degree()));
        }
        Ok(self.chain().contains(x))
    }
}

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps the base point to `p`, when `p` is in the basic orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Perm::identity(degree));
        Level {
            base_point,
            gens: Vec::new(),
            transversal,
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Perm::identity(degree));
        let mut queue = VecDeque::from([self.base_point]);
        while let Some(x) = queue.pop_front() {
            let ux = self.transversal[x].clone().unwrap();
            for g in &self.gens {
                let y = g.img0(x);
                if self.transversal[y].is_none() {
                    self.transversal[y] = Some(ux.then(g));
                    queue.push_back(y);
                }
            }
        }
    }

    fn orbit(&self) -> impl Iterator<Item = usize> + '_ {
        self.transversal
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.as_ref().map(|_| i))
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Base and strong generating set built by deterministic Schreier-Sims.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if gens.is_empty() {
            return chain;
        }
        // Every generator must move some base point.
        for g in &gens {
            if chain
                .levels
                .iter()
                .all(|l| g.img0(l.base_point) == l.base_point)
            {
                let b = g.first_moved().unwrap();
                chain.levels.push(Level::new(degree, b));
            }
        }
        for i in 0..chain.levels.len() {
            let fixes_prefix = |g: &&Perm| {
                chain.levels[..i]
                    .iter()
                    .all(|l| g.img0(l.base_point) == l.base_point)
            };
            let level_gens: Vec<Perm> = gens.iter().filter(fixes_prefix).cloned().collect();
            chain.levels[i].gens = level_gens;
            chain.levels[i].rebuild_orbit();
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit: Vec<usize> = chain.levels[lvl].orbit().collect();
            let level_gens = chain.levels[lvl].gens.clone();
            for &b in &orbit {
                let ub = chain.levels[lvl].transversal[b].clone().unwrap();
                for g in &level_gens {
                    let bg = g.img0(b);
                    let ubg = chain.levels[lvl].transversal[bg].as_ref().unwrap();
                    let schreier = ub.then(g).then(&ubg.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = chain.strip(&schreier, lvl + 1);
                    if j < chain.levels.len() || !h.is_identity() {
                        if j == chain.levels.len() {
                            let b = h.first_moved().unwrap();
                            chain.levels.push(Level::new(degree, b));
                        }
                        for l in lvl + 1..=j {
                            chain.levels[l].gens.push(h.clone());
                            chain.levels[l].rebuild_orbit();
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        chain
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level where sifting stopped.
    fn strip(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.img0(level.base_point);
            match &level.transversal[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point + 1).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit_len() as u128)
                .expect("group order overflows u128")
        })
    }

    pub fn contains(&self, x: &Perm) -> bool {
        if x.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(x, 0);
        j == self.levels.len() && h.is_identity()
    }
}
