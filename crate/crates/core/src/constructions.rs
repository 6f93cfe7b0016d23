//! Explicit distinguishing partitions for every catalog case, and the closed-form
//! distinguishing numbers they certify.

use std::collections::BTreeSet;

use crate::bi_group::{CaseId, GroupCase, Vertex};
use crate::coloring::Partition;
use crate::error::Result;

/// `{v_j : (i-1)q < j <= min(iq, n)}`.
pub fn v_block(n: usize, i: usize, q: usize) -> BTreeSet<Vertex> {
    let lo = (i - 1) * q;
    let hi = (i * q).min(n);
    (lo + 1..=hi).map(Vertex::v).collect()
}

/// `{u_j : j ≡ i (mod q), j <= n}`.
pub fn u_block(n: usize, i: usize, q: usize) -> BTreeSet<Vertex> {
    (1..=n).filter(|j| j % q == i % q).map(Vertex::u).collect()
}

/// The block families `U(·, q)` and `V(·, q)` are partitions of `Δ'` and `Δ` into nonempty blocks.
pub fn partition_lemma_check(n: usize, q: usize) -> bool {
    partition_lemma_check_with(n, q, u_block)
}

pub fn partition_lemma_check_with(
    n: usize,
    q: usize,
    u_block: impl Fn(usize, usize, usize) -> BTreeSet<Vertex>,
) -> bool {
    if q == 0 || q > n {
        return false;
    }
    let covers = |blocks: Vec<BTreeSet<Vertex>>, expected: BTreeSet<Vertex>| {
        let total: usize = blocks.iter().map(BTreeSet::len).sum();
        let union: BTreeSet<Vertex> = blocks.iter().flatten().copied().collect();
        blocks.iter().all(|b| !b.is_empty()) && total == expected.len() && union == expected
    };
    let delta_prime: BTreeSet<Vertex> = (1..=n).map(Vertex::u).collect();
    let delta: BTreeSet<Vertex> = (1..=n).map(Vertex::v).collect();
    let d = n.div_ceil(q);
    covers((1..=q).map(|i| u_block(n, i, q)).collect(), delta_prime)
        && covers((1..=d).map(|i| v_block(n, i, q)).collect(), delta)
}

fn isqrt(x: usize) -> usize {
    x.isqrt()
}

fn ceil_sqrt(x: usize) -> usize {
    let r = isqrt(x);
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// Closed-form distinguishing number of the case.
pub fn claimed_dn(c: &GroupCase) -> usize {
    let n = c.n();
    match c.case() {
        CaseId::A => n + 1,
        CaseId::B => n - 1,
        CaseId::C => n,
        CaseId::D => isqrt(n) + 1,
        CaseId::E => ceil_sqrt(n - 1),
        CaseId::F | CaseId::G | CaseId::H | CaseId::I => 3,
    }
}

/// Which explicit partition [`construct`] uses for the crown cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrownBranch {
    /// `1 <= p < ℓ` (full diagonal) or `p <= ℓ - 2` (alternating diagonal); blocks of width `ℓ - 1`.
    Narrow,
    /// Remaining non-square values; blocks of width `ℓ`.
    Wide,
    /// `n = ℓ²` for the full diagonal; `u_{ℓ²}` gets its own class.
    Square,
}

/// `(ℓ, p, branch)` for the full diagonal case: `ℓ = ⌈√n⌉`, `n = (ℓ-1)² + p`.
pub fn full_diagonal_branch(n: usize) -> (usize, usize, CrownBranch) {
    let l = ceil_sqrt(n);
    let p = n - (l - 1) * (l - 1);
    let branch = if l * l == n {
        CrownBranch::Square
    } else if p < l {
        CrownBranch::Narrow
    } else {
        CrownBranch::Wide
    };
    (l, p, branch)
}

/// `(ℓ, p, branch)` for the alternating diagonal case: `ℓ = ⌈√(n-1)⌉`, `n - 1 = (ℓ-1)² + p`.
pub fn alternating_diagonal_branch(n: usize) -> (usize, usize, CrownBranch) {
    let l = ceil_sqrt(n - 1);
    let p = n - 1 - (l - 1) * (l - 1);
    let branch = if p + 2 <= l {
        CrownBranch::Narrow
    } else {
        CrownBranch::Wide
    };
    (l, p, branch)
}

/// Fixed three-class certificates for the twisted diagonal cases at `n = 6`,
/// one per `(case, line)`, found once by the exhaustive solver.
pub const TWISTED_CERTIFICATES: [(CaseId, u8, &str); 3] = [
    (CaseId::F, 1, "0,0,0,0,1,1,0,1,0,2,1,2"),
    (CaseId::G, 1, "0,0,0,0,0,1,0,0,1,2,1,2"),
    (CaseId::G, 2, "0,0,0,0,0,1,0,0,1,2,1,2"),
];

type Class = BTreeSet<Vertex>;

fn union(parts: &[&Class]) -> Class {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Classes of the explicit partition for `c`, in their construction order `P_1, ..., P_k`.
pub fn construct_classes(c: &GroupCase) -> Vec<Vec<Vertex>> {
    let n = c.n();
    let v = Vertex::v;
    let u = Vertex::u;
    let classes: Vec<Class> = match c.case() {
        CaseId::A => {
            let mut out: Vec<Class> = (1..n).map(|i| Class::from([v(i), u(i)])).collect();
            out.push(Class::from([v(n)]));
            out.push(Class::from([u(n)]));
            out
        }
        CaseId::B => {
            let mut out = vec![
                Class::from([v(1), v(2), u(1)]),
                Class::from([v(3), u(2), u(3)]),
            ];
            out.extend((3..n).map(|i| Class::from([u(i + 1), v(i + 1)])));
            out
        }
        CaseId::C => {
            let mut out = vec![Class::from([v(1), v(2), u(1)]), Class::from([u(2)])];
            out.extend((3..=n).map(|i| Class::from([u(i), v(i)])));
            out
        }
        CaseId::H | CaseId::I => vec![
            Class::from([v(1), v(2), u(1)]),
            Class::from([v(3), u(2), u(3)]),
            Class::from([v(4), u(4)]),
        ],
        CaseId::D => full_diagonal_classes(n),
        CaseId::E => alternating_diagonal_classes(n),
        CaseId::F | CaseId::G => {
            let rgs = TWISTED_CERTIFICATES
                .iter()
                .find(|(id, line, _)| *id == c.case() && *line == c.line())
                .map(|t| t.2)
                .expect("certificate for every twisted case");
            return Partition::from_rgs_str(rgs)
                .expect("fixture is a valid restricted-growth string")
                .classes();
        }
    };
    classes
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.into_iter().collect())
        .collect()
}

fn full_diagonal_classes(n: usize) -> Vec<Class> {
    let (l, _, branch) = full_diagonal_branch(n);
    match branch {
        CrownBranch::Narrow => (1..=l)
            .map(|i| {
                if i < l {
                    union(&[&v_block(n, i, l - 1), &u_block(n, i, l - 1)])
                } else {
                    v_block(n, i, l - 1)
                }
            })
            .collect(),
        CrownBranch::Wide => (1..=l)
            .map(|i| {
                let ui = if i + 2 <= l {
                    i
                } else if i == l - 1 {
                    l
                } else {
                    l - 1
                };
                union(&[&v_block(n, i, l), &u_block(n, ui, l)])
            })
            .collect(),
        CrownBranch::Square => {
            let corner = Vertex::u(l * l);
            let mut out: Vec<Class> = (1..=l)
                .map(|i| {
                    let mut p = union(&[&v_block(n, i, l), &u_block(n, i, l)]);
                    p.remove(&corner);
                    p
                })
                .collect();
            out.push(Class::from([corner]));
            out
        }
    }
}

fn alternating_diagonal_classes(n: usize) -> Vec<Class> {
    let (l, _, branch) = alternating_diagonal_branch(n);
    match branch {
        CrownBranch::Narrow => {
            let q = l - 1;
            let extra = Vertex::v(q * q + 1);
            let mut out: Vec<Class> = (1..l - 1)
                .map(|i| union(&[&v_block(n, i, q), &u_block(n, i, q)]))
                .collect();
            let mut penultimate = union(&[&v_block(n, l - 1, q), &u_block(n, l - 1, q)]);
            penultimate.insert(extra);
            out.push(penultimate);
            let mut last = v_block(n, l, q);
            last.remove(&extra);
            out.push(last);
            out
        }
        CrownBranch::Wide | CrownBranch::Square => {
            let last_v = Vertex::v(n);
            let mut out: Vec<Class> = (1..l - 1)
                .map(|i| union(&[&v_block(n, i, l), &u_block(n, i, l)]))
                .collect();
            let mut penultimate = union(&[&v_block(n, l - 1, l), &u_block(n, l, l)]);
            penultimate.insert(last_v);
            out.push(penultimate);
            let mut last = v_block(n, l, l);
            last.remove(&last_v);
            out.push(union(&[&last, &u_block(n, l - 1, l)]));
            out
        }
    }
}

/// The explicit partition for `c` in restricted-growth form.
pub fn construct(c: &GroupCase) -> Result<Partition> {
    Partition::from_classes(c.n(), &construct_classes(c))
}
