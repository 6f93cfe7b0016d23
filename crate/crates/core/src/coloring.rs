//! Vertex partitions in restricted-growth form and the search for a non-identity
//! group element preserving every colour class.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::bi_group::{
    enumerate_group, outer_phi_s6, BiElement, CosetRule, GroupCase, PairParity, Vertex,
};
use crate::error::{DnError, Result};
use crate::perm::{klein_four, Parity, Perm};

/// Groups larger than this are never enumerated by [`Engine::Enumerate`].
pub const ENUMERATION_CAP: usize = 1_000_000;

/// A colouring of `v_1..v_n, u_1..u_n` in restricted-growth form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    colors: Vec<u8>,
}

impl Partition {
    /// Relabels arbitrary class labels into restricted-growth form.
    pub fn canonicalize<T: Eq + Hash>(n: usize, raw: &[T]) -> Result<Partition> {
        if raw.len() != 2 * n {
            return Err(DnError::PartitionLength {
                expected: 2 * n,
                got: raw.len(),
            });
        }
        let mut labels: HashMap<&T, u8> = HashMap::new();
        let colors = raw
            .iter()
            .map(|x| {
                let next = labels.len() as u8;
                *labels.entry(x).or_insert(next)
            })
            .collect();
        Ok(Partition { n, colors })
    }

    /// Trusts that `colors` is already a restricted-growth string.
    pub(crate) fn from_rgs_unchecked(n: usize, colors: Vec<u8>) -> Partition {
        debug_assert!(is_rgs(&colors));
        Partition { n, colors }
    }

    pub fn from_classes(n: usize, classes: &[Vec<Vertex>]) -> Result<Partition> {
        let mut labels = vec![usize::MAX; 2 * n];
        for (c, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(DnError::Parse(format!("class {} is empty", c + 1)));
            }
            for v in class {
                v.check(n)?;
                let k = v.position(n);
                if labels[k] != usize::MAX {
                    return Err(DnError::Parse(format!("{v} appears in two classes")));
                }
                labels[k] = c;
            }
        }
        if let Some(k) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(DnError::Parse(format!(
                "{} is not covered",
                Vertex::from_position(n, k)
            )));
        }
        Partition::canonicalize(n, &labels)
    }

    /// Parses `0,0,1,0,...` (length `2n`, must already be restricted-growth).
    pub fn from_rgs_str(s: &str) -> Result<Partition> {
        let colors = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| DnError::Parse(format!("bad colour {t:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        if colors.len() % 2 != 0 || colors.is_empty() {
            return Err(DnError::Parse(format!(
                "restricted-growth string has odd length {}",
                colors.len()
            )));
        }
        if !is_rgs(&colors) {
            return Err(DnError::Parse(format!("{s:?} is not restricted-growth")));
        }
        Ok(Partition {
            n: colors.len() / 2,
            colors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color_of(&self, v: Vertex) -> u8 {
        self.colors[v.position(self.n)]
    }

    pub fn num_colors(&self) -> usize {
        self.colors
            .iter()
            .map(|&c| c as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Classes ordered by smallest member in vertex order.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.num_colors()];
        for (k, &c) in self.colors.iter().enumerate() {
            out[c as usize].push(Vertex::from_position(self.n, k));
        }
        out
    }

    pub fn rgs_string(&self) -> String {
        self.colors
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Whether `e` maps every colour class onto itself.
    pub fn preserved_by(&self, e: &BiElement) -> bool {
        (0..2 * self.n).all(|k| self.colors[e.act_position(k)] == self.colors[k])
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            n: self.n,
            classes: self
                .classes()
                .iter()
                .map(|c| c.iter().map(Vertex::to_string).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &PartitionJson) -> Result<Partition> {
        let classes = j
            .classes
            .iter()
            .map(|c| c.iter().map(|s| s.parse()).collect::<Result<Vec<Vertex>>>())
            .collect::<Result<Vec<_>>>()?;
        Partition::from_classes(j.n, &classes)
    }
}

fn is_rgs(colors: &[u8]) -> bool {
    let mut next = 0u8;
    for &c in colors {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rgs_string())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition(n={}, {})", self.n, self.rgs_string())
    }
}

/// Wire form: `{"n": 5, "classes": [["v1","v2","u1"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub classes: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Test every element of the enumerated group.
    Enumerate,
    /// Structural backtracking over the images of `1..n`.
    #[default]
    Backtrack,
}

/// A non-identity element of the case's group preserving every class, if one exists.
pub fn preserving_witness(c: &GroupCase, part: &Partition) -> Option<BiElement> {
    assert_eq!(c.n(), part.n(), "partition size does not match the case");
    backtrack_witness(c, part)
}

pub fn preserving_witness_with(
    c: &GroupCase,
    part: &Partition,
    engine: Engine,
) -> Result<Option<BiElement>> {
    match engine {
        Engine::Backtrack => Ok(preserving_witness(c, part)),
        Engine::Enumerate => {
            let elements = enumerate_group(c.n(), &c.build().generators(), ENUMERATION_CAP)
                .ok_or_else(|| {
                    DnError::InvalidCase(format!("{c}: group too large to enumerate"))
                })?;
            Ok(witness_in_elements(&elements, part))
        }
    }
}

/// First non-identity element of `elements` preserving every class.
pub fn witness_in_elements(elements: &[BiElement], part: &Partition) -> Option<BiElement> {
    elements
        .iter()
        .find(|e| !e.is_identity() && part.preserved_by(e))
        .cloned()
}

pub fn is_distinguishing(c: &GroupCase, part: &Partition) -> bool {
    preserving_witness(c, part).is_none()
}

/// Restricted to the coset `G⁺` (`flip = false`) or its complement.
pub fn coset_witness(c: &GroupCase, part: &Partition, flip: bool) -> Option<BiElement> {
    let n = c.n();
    let cv = &part.colors()[..n];
    let cu = &part.colors()[n..];
    // g carries Δ's colours to (flip ? Δ' : Δ); g' carries Δ' to (flip ? Δ : Δ').
    let (tgt_a, tgt_b) = if flip { (cu, cv) } else { (cv, cu) };
    let nonid = !flip;
    let make = |g: Perm, gp: Perm| BiElement::new(g, gp, flip).expect("same degree");

    match c.coset_rule(flip) {
        CosetRule::Product(pp) => {
            let combos: &[(Option<Parity>, Option<Parity>)] = match pp {
                PairParity::Any => &[(None, None)],
                PairParity::BothEven => &[(Some(Parity::Even), Some(Parity::Even))],
                PairParity::Same => &[
                    (Some(Parity::Even), Some(Parity::Even)),
                    (Some(Parity::Odd), Some(Parity::Odd)),
                ],
                PairParity::Different => &[
                    (Some(Parity::Even), Some(Parity::Odd)),
                    (Some(Parity::Odd), Some(Parity::Even)),
                ],
            };
            for &(pa, pb) in combos {
                let attempts: &[(bool, bool)] = if nonid {
                    &[(true, false), (false, true)]
                } else {
                    &[(false, false)]
                };
                for &(na, nb) in attempts {
                    let Some(g) = find_bijection(cv, tgt_a, pa, na) else {
                        continue;
                    };
                    let Some(gp) = find_bijection(cu, tgt_b, pb, nb) else {
                        continue;
                    };
                    return Some(make(g, gp));
                }
            }
            None
        }
        CosetRule::Diagonal {
            twisted: false,
            parity,
        } => {
            let src: Vec<(u8, u8)> = cv.iter().copied().zip(cu.iter().copied()).collect();
            let tgt: Vec<(u8, u8)> = tgt_a.iter().copied().zip(tgt_b.iter().copied()).collect();
            let g = find_bijection(&src, &tgt, parity, nonid)?;
            Some(make(g.clone(), g))
        }
        CosetRule::Diagonal {
            twisted: true,
            parity,
        } => {
            let phi = outer_phi_s6();
            let mut found = None;
            for_each_bijection(cv, tgt_a, |images| {
                let g = Perm::from_images0(images.to_vec());
                if parity.is_some_and(|p| g.parity() != p) {
                    return false;
                }
                let gp = phi.apply(&g);
                if nonid && g.is_identity() {
                    return false;
                }
                if respects(&gp, cu, tgt_b) {
                    found = Some(make(g, gp));
                    return true;
                }
                false
            });
            found
        }
        CosetRule::Klein { parity } => {
            let v4 = klein_four();
            let mut found = None;
            for_each_bijection(cv, tgt_a, |images| {
                let g = Perm::from_images0(images.to_vec());
                if parity.is_some_and(|p| g.parity() != p) {
                    return false;
                }
                for w in &v4 {
                    let gp = w.then(&g);
                    if nonid && g.is_identity() && gp.is_identity() {
                        continue;
                    }
                    if respects(&gp, cu, tgt_b) {
                        found = Some(make(g.clone(), gp));
                        return true;
                    }
                }
                false
            });
            found
        }
    }
}

fn backtrack_witness(c: &GroupCase, part: &Partition) -> Option<BiElement> {
    coset_witness(c, part, false).or_else(|| coset_witness(c, part, true))
}

fn respects<K: PartialEq>(p: &Perm, src: &[K], tgt: &[K]) -> bool {
    (0..src.len()).all(|i| src[i] == tgt[p.img0(i)])
}

/// First bijection `i ↦ j` with `src[i] == tgt[j]` (lexicographic in the images)
/// having the requested parity and, if asked, different from the identity.
fn find_bijection<K: Eq + Hash + Clone>(
    src: &[K],
    tgt: &[K],
    parity: Option<Parity>,
    avoid_identity: bool,
) -> Option<Perm> {
    let mut found = None;
    for_each_bijection(src, tgt, |images| {
        let p = Perm::from_images0(images.to_vec());
        if avoid_identity && p.is_identity() {
            return false;
        }
        if parity.is_some_and(|want| p.parity() != want) {
            return false;
        }
        found = Some(p);
        true
    });
    found
}

/// Visits colour-respecting bijections in lexicographic order until `visit` returns true.
fn for_each_bijection<K, F>(src: &[K], tgt: &[K], mut visit: F)
where
    K: Eq + Hash + Clone,
    F: FnMut(&[u8]) -> bool,
{
    let n = src.len();
    // Class-size feasibility: the colour multisets must agree.
    let mut counts: HashMap<&K, isize> = HashMap::new();
    for k in src {
        *counts.entry(k).or_default() += 1;
    }
    for k in tgt {
        *counts.entry(k).or_default() -= 1;
    }
    if counts.values().any(|&c| c != 0) {
        return;
    }
    let candidates: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| src[i] == tgt[j])
                .map(|j| j as u8)
                .collect()
        })
        .collect();
    let mut used = vec![false; n];
    let mut images = vec![0u8; n];
    fn rec<F: FnMut(&[u8]) -> bool>(
        i: usize,
        candidates: &[Vec<u8>],
        used: &mut [bool],
        images: &mut [u8],
        visit: &mut F,
    ) -> bool {
        if i == candidates.len() {
            return visit(images);
        }
        for &j in &candidates[i] {
            if used[j as usize] {
                continue;
            }
            used[j as usize] = true;
            images[i] = j;
            let stop = rec(i + 1, candidates, used, images, visit);
            used[j as usize] = false;
            if stop {
                return true;
            }
        }
        false
    }
    rec(0, &candidates, &mut used, &mut images, &mut visit);
}
