//! The bipartite vertex set `Δ ∪ Δ'`, elements `(g, g')·τ^ε` of `Sym(n) ≀ Sym(2)`,
//! both graph families, and the catalog of large vertex- and edge-transitive groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{DnError, Result};
use crate::perm::{alternating_generators, klein_four, symmetric_generators, GenSet, Parity, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `Δ`, vertices `v_1..v_n`.
    Delta,
    /// `Δ'`, vertices `u_1..u_n`.
    DeltaPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    /// 1-based.
    pub index: usize,
}

impl Vertex {
    pub fn v(index: usize) -> Vertex {
        Vertex {
            side: Side::Delta,
            index,
        }
    }

    pub fn u(index: usize) -> Vertex {
        Vertex {
            side: Side::DeltaPrime,
            index,
        }
    }

    /// Position in the fixed vertex order `v_1..v_n, u_1..u_n` (0-based).
    pub fn position(&self, n: usize) -> usize {
        match self.side {
            Side::Delta => self.index - 1,
            Side::DeltaPrime => n + self.index - 1,
        }
    }

    pub fn from_position(n: usize, k: usize) -> Vertex {
        if k < n {
            Vertex::v(k + 1)
        } else {
            Vertex::u(k - n + 1)
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.index == 0 || self.index > n {
            Err(DnError::PointOutOfRange {
                point: self.index,
                degree: n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Delta => write!(f, "v{}", self.index),
            Side::DeltaPrime => write!(f, "u{}", self.index),
        }
    }
}

impl FromStr for Vertex {
    type Err = DnError;

    fn from_str(s: &str) -> Result<Vertex> {
        let s = s.trim();
        let bad = || DnError::Parse(format!("bad vertex {s:?}"));
        let (side, rest) = match s.chars().next() {
            Some('v') => (Side::Delta, &s[1..]),
            Some('u') => (Side::DeltaPrime, &s[1..]),
            _ => return Err(bad()),
        };
        let index: usize = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Vertex { side, index })
    }
}

/// `(g, g')·τ^ε` in normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiElement {
    pub g: Perm,
    pub gprime: Perm,
    /// `ε = 1`: the element swaps `Δ` and `Δ'`.
    pub flip: bool,
}

impl BiElement {
    pub fn new(g: Perm, gprime: Perm, flip: bool) -> Result<BiElement> {
        if g.degree() != gprime.degree() {
            return Err(DnError::DegreeMismatch(g.degree(), gprime.degree()));
        }
        Ok(BiElement { g, gprime, flip })
    }

    pub fn pair(g: Perm, gprime: Perm) -> BiElement {
        BiElement::new(g, gprime, false).expect("pair degrees differ")
    }

    pub fn identity(n: usize) -> BiElement {
        BiElement::pair(Perm::identity(n), Perm::identity(n))
    }

    /// `v_i ↔ u_i`.
    pub fn tau(n: usize) -> BiElement {
        BiElement {
            g: Perm::identity(n),
            gprime: Perm::identity(n),
            flip: true,
        }
    }

    pub fn n(&self) -> usize {
        self.g.degree()
    }

    pub fn is_identity(&self) -> bool {
        !self.flip && self.g.is_identity() && self.gprime.is_identity()
    }

    pub fn act(&self, v: Vertex) -> Vertex {
        match (v.side, self.flip) {
            (Side::Delta, false) => Vertex::v(self.g.image(v.index)),
            (Side::Delta, true) => Vertex::u(self.g.image(v.index)),
            (Side::DeltaPrime, false) => Vertex::u(self.gprime.image(v.index)),
            (Side::DeltaPrime, true) => Vertex::v(self.gprime.image(v.index)),
        }
    }

    /// Action on vertex positions (see [`Vertex::position`]).
    #[inline]
    pub fn act_position(&self, k: usize) -> usize {
        let n = self.n();
        let (img, was_delta) = if k < n {
            (self.g.img0(k), true)
        } else {
            (self.gprime.img0(k - n), false)
        };
        if was_delta != self.flip {
            img
        } else {
            img + n
        }
    }

    /// Right-action product: `self` first, then `rhs`.
    pub fn multiply(&self, rhs: &BiElement) -> BiElement {
        assert_eq!(self.n(), rhs.n(), "degree mismatch");
        let (s, sp) = if self.flip {
            (&rhs.gprime, &rhs.g)
        } else {
            (&rhs.g, &rhs.gprime)
        };
        BiElement {
            g: self.g.then(s),
            gprime: self.gprime.then(sp),
            flip: self.flip ^ rhs.flip,
        }
    }

    pub fn inverse(&self) -> BiElement {
        if self.flip {
            BiElement {
                g: self.gprime.inverse(),
                gprime: self.g.inverse(),
                flip: true,
            }
        } else {
            BiElement {
                g: self.g.inverse(),
                gprime: self.gprime.inverse(),
                flip: false,
            }
        }
    }

    /// `other^-1 · self · other`.
    pub fn conjugate_by(&self, other: &BiElement) -> BiElement {
        other.inverse().multiply(self).multiply(other)
    }

    /// The element as a permutation of the `2n` vertex positions.
    pub fn to_perm(&self) -> Perm {
        let n = self.n();
        Perm::from_images0((0..2 * n).map(|k| self.act_position(k) as u8).collect())
    }

    /// Inverse of [`BiElement::to_perm`]; `None` unless the permutation respects the bipartition.
    pub fn from_perm(n: usize, p: &Perm) -> Option<BiElement> {
        if p.degree() != 2 * n || n == 0 {
            return None;
        }
        let flip = p.img0(0) >= n;
        let mut g = Vec::with_capacity(n);
        let mut gp = Vec::with_capacity(n);
        for i in 0..n {
            let a = p.img0(i);
            let b = p.img0(n + i);
            if (a >= n) != flip || (b >= n) == flip {
                return None;
            }
            g.push((a % n) as u8);
            gp.push((b % n) as u8);
        }
        Some(BiElement {
            g: Perm::from_images0(g),
            gprime: Perm::from_images0(gp),
            flip,
        })
    }

    /// Parses `((1,2),(3,4);t)`; the `;t` suffix marks `ε = 1`.
    pub fn parse(s: &str, n: usize) -> Result<BiElement> {
        let s = s.trim();
        let bad = || DnError::Parse(format!("bad element {s:?}"));
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (body, flip) = match inner.strip_suffix(";t") {
            Some(b) => (b, true),
            None => (inner, false),
        };
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(bad)?;
        let g = Perm::parse(&body[..i], n)?;
        let gp = Perm::parse(&body[i + 1..], n)?;
        BiElement::new(g, gp, flip)
    }
}

impl fmt::Display for BiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}", self.g, self.gprime)?;
        if self.flip {
            write!(f, ";t")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Permutation group on the `2n` vertex positions generated by `gens`.
pub fn vertex_genset(n: usize, gens: &[BiElement]) -> GenSet {
    let mut perms: Vec<Perm> = gens.iter().map(BiElement::to_perm).collect();
    if perms.is_empty() {
        perms.push(Perm::identity(2 * n));
    }
    GenSet::new(2 * n, perms).expect("generators share degree 2n")
}

/// Closure of `gens` as bi-elements, or `None` if the group has more than `cap` elements.
pub fn enumerate_group(n: usize, gens: &[BiElement], cap: usize) -> Option<Vec<BiElement>> {
    let id = BiElement::identity(n);
    let mut seen: HashSet<BiElement> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let x = out[head].clone();
        head += 1;
        for g in gens {
            let y = x.multiply(g);
            if seen.insert(y.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(y);
            }
        }
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphFamily {
    CompleteBipartite,
    Crown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    family: GraphFamily,
    n: usize,
}

impl GraphSpec {
    pub fn new(family: GraphFamily, n: usize) -> Result<GraphSpec> {
        if n < 2 {
            return Err(DnError::InvalidGraph(format!(
                "part size {n} must be at least 2"
            )));
        }
        if family == GraphFamily::Crown && n < 3 {
            return Err(DnError::InvalidGraph(format!(
                "crown graph with n={n} is disconnected; n must be at least 3"
            )));
        }
        Ok(GraphSpec { family, n })
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        if a.side == b.side {
            return false;
        }
        match self.family {
            GraphFamily::CompleteBipartite => true,
            GraphFamily::Crown => a.index != b.index,
        }
    }

    fn adjacent_positions(&self, a: usize, b: usize) -> bool {
        self.adjacent(
            Vertex::from_position(self.n, a),
            Vertex::from_position(self.n, b),
        )
    }

    /// Edges as sorted position pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in n..2 * n {
                if self.adjacent_positions(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let m = 2 * self.n;
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for (b, s) in seen.iter_mut().enumerate() {
                if !*s && self.adjacent_positions(a, b) {
                    *s = true;
                    queue.push_back(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            GraphFamily::CompleteBipartite => write!(f, "K_{{{n},{n}}}", n = self.n),
            GraphFamily::Crown => write!(f, "K_{{{n},{n}}}-{n}K_2", n = self.n),
        }
    }
}

/// An automorphism of `Sym(6)` stored as a full table.
#[derive(Clone, Debug)]
pub struct Sym6Automorphism {
    table: HashMap<Perm, Perm>,
}

impl Sym6Automorphism {
    pub fn apply(&self, x: &Perm) -> Perm {
        self.table
            .get(x)
            .cloned()
            .unwrap_or_else(|| panic!("{x:?} is not in Sym(6)"))
    }

    /// Images of the standard generators `(1,2)` and `(1,2,3,4,5,6)`.
    pub fn generator_images(&self) -> Vec<(Perm, Perm)> {
        symmetric_generators(6)
            .into_iter()
            .map(|g| {
                let img = self.apply(&g);
                (g, img)
            })
            .collect()
    }

    /// `x ↦ h^-1 · self(x) · h`.
    pub fn then_conjugate(&self, h: &Perm) -> Sym6Automorphism {
        Sym6Automorphism {
            table: self
                .table
                .iter()
                .map(|(k, v)| (k.clone(), v.conjugate_by(h)))
                .collect(),
        }
    }

    pub fn inner(h: &Perm) -> Sym6Automorphism {
        Sym6Automorphism {
            table: Perm::all(6)
                .map(|x| {
                    let img = x.conjugate_by(h);
                    (x, img)
                })
                .collect(),
        }
    }
}

/// The order-2 outer automorphism `φ` of `Sym(6)` used by the twisted diagonal cases.
///
/// `Sym(6)` acts on the six right cosets of a transitive subgroup of order 120;
/// the resulting automorphism is composed with the first inner automorphism (in
/// lexicographic order of the conjugating element) that makes it an involution.
pub fn outer_phi_s6() -> &'static Sym6Automorphism {
    static PHI: OnceLock<Sym6Automorphism> = OnceLock::new();
    PHI.get_or_init(|| build_outer_phi().expect("outer automorphism construction"))
}

fn build_outer_phi() -> Result<Sym6Automorphism> {
    let five = Perm::cycle(6, &[1, 2, 3, 4, 5])?;
    let mut transitive_120 = None;
    for y in Perm::all(6) {
        let gs = GenSet::new(6, vec![five.clone(), y])?;
        if gs.orbit(1)?.len() == 6 && gs.order() == 120 {
            transitive_120 = Some(gs);
            break;
        }
    }
    let k = transitive_120.ok_or_else(|| DnError::Internal("no transitive Sym(5)".into()))?;
    let k_elems = match k.enumerate(200) {
        crate::perm::Enumeration::Complete(v) => v,
        crate::perm::Enumeration::Overflow => {
            return Err(DnError::Internal("subgroup too large".into()))
        }
    };

    let mut coset_of: HashMap<Perm, usize> = HashMap::new();
    let mut reps = Vec::new();
    for p in Perm::all(6) {
        if coset_of.contains_key(&p) {
            continue;
        }
        let label = reps.len();
        for kk in &k_elems {
            coset_of.insert(kk.then(&p), label);
        }
        reps.push(p);
    }
    if reps.len() != 6 {
        return Err(DnError::Internal(format!("{} cosets", reps.len())));
    }
    let psi: HashMap<Perm, Perm> = Perm::all(6)
        .map(|g| {
            let images = reps.iter().map(|r| coset_of[&r.then(&g)] as u8).collect();
            (g, Perm::from_images0(images))
        })
        .collect();
    let psi = Sym6Automorphism { table: psi };

    let gens = symmetric_generators(6);
    for h in Perm::all(6) {
        let twice = |x: &Perm| {
            let once = psi.apply(x).conjugate_by(&h);
            psi.apply(&once).conjugate_by(&h)
        };
        if gens.iter().all(|x| twice(x) == *x) {
            let phi = psi.then_conjugate(&h);
            let t = Perm::cycle(6, &[1, 2])?;
            if phi.apply(&t).cycle_type() != vec![2, 2, 2] {
                return Err(DnError::Internal("automorphism is not outer".into()));
            }
            return Ok(phi);
        }
    }
    Err(DnError::Internal("no involutory outer automorphism".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::A,
        CaseId::B,
        CaseId::C,
        CaseId::D,
        CaseId::E,
        CaseId::F,
        CaseId::G,
        CaseId::H,
        CaseId::I,
    ];

    pub fn lines(self) -> &'static [u8] {
        match self {
            CaseId::C | CaseId::E | CaseId::G | CaseId::I => &[1, 2],
            _ => &[1],
        }
    }

    pub fn family(self) -> GraphFamily {
        match self {
            CaseId::D | CaseId::E => GraphFamily::Crown,
            _ => GraphFamily::CompleteBipartite,
        }
    }

    /// Whether the induced group on `Δ` is `Alt(n)` rather than `Sym(n)`.
    pub fn induced_is_alternating(self) -> bool {
        matches!(self, CaseId::B | CaseId::E | CaseId::G | CaseId::I)
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for CaseId {
    type Err = DnError;

    fn from_str(s: &str) -> Result<CaseId> {
        let s = s.trim().to_ascii_lowercase();
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c @ 'a'..='i'), None) => Ok(CaseId::ALL[(c as u8 - b'a') as usize]),
            _ => Err(DnError::InvalidCase(format!(
                "unknown case {s:?}; expected one of a..i"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupCase {
    case: CaseId,
    line: u8,
    n: usize,
}

impl GroupCase {
    pub fn new(case: CaseId, line: u8, n: usize) -> Result<GroupCase> {
        if !case.lines().contains(&line) {
            return Err(DnError::InvalidCase(if line == 2 {
                format!("case {case} has a single line; --line 2 is not allowed")
            } else {
                format!("line must be 1 or 2, got {line}")
            }));
        }
        let ok = match case {
            CaseId::A | CaseId::C => n >= 2,
            CaseId::B | CaseId::D | CaseId::E => n >= 3,
            CaseId::F | CaseId::G => n == 6,
            CaseId::H | CaseId::I => n == 4,
        };
        if !ok {
            let need = match case {
                CaseId::A | CaseId::C => "n>=2",
                CaseId::B | CaseId::D | CaseId::E => "n>=3",
                CaseId::F | CaseId::G => "n=6",
                CaseId::H | CaseId::I => "n=4",
            };
            return Err(DnError::InvalidCase(format!("case {case} requires {need}")));
        }
        if n > 64 {
            return Err(DnError::InvalidCase(format!(
                "n={n} exceeds the supported 64"
            )));
        }
        Ok(GroupCase { case, line, n })
    }

    /// Every accepted `(case, line)` at part size `n`, in catalog order.
    pub fn all_at(n: usize) -> Vec<GroupCase> {
        CaseId::ALL
            .iter()
            .flat_map(|&c| c.lines().iter().map(move |&l| (c, l)))
            .filter_map(|(c, l)| GroupCase::new(c, l, n).ok())
            .collect()
    }

    pub fn case(&self) -> CaseId {
        self.case
    }

    pub fn line(&self) -> u8 {
        self.line
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> GraphSpec {
        GraphSpec::new(self.case.family(), self.n).expect("validated in GroupCase::new")
    }

    /// False for the two accepted groups whose graph is not edge-transitive:
    /// the first line of (c) at `n = 2` and the second line of (e) at `n = 3`.
    pub fn is_edge_transitive_pair(&self) -> bool {
        !matches!(
            (self.case, self.line, self.n),
            (CaseId::C, 1, 2) | (CaseId::E, 2, 3)
        )
    }

    /// Order of the induced group on `Δ`.
    pub fn induced_order(&self) -> u128 {
        let f: u128 = (1..=self.n as u128).product();
        if self.case.induced_is_alternating() && self.n >= 2 {
            f / 2
        } else {
            f
        }
    }

    /// Structural description of the coset `G⁺` (`flip = false`) or `G \ G⁺`.
    pub fn coset_rule(&self, flip: bool) -> CosetRule {
        let second = self.line == 2 && flip;
        let diag_parity = if second {
            Some(Parity::Odd)
        } else {
            Some(Parity::Even)
        };
        match self.case {
            CaseId::A => CosetRule::Product(PairParity::Any),
            CaseId::B => CosetRule::Product(PairParity::BothEven),
            CaseId::C => CosetRule::Product(if second {
                PairParity::Different
            } else {
                PairParity::Same
            }),
            CaseId::D => CosetRule::Diagonal {
                twisted: false,
                parity: None,
            },
            CaseId::E => CosetRule::Diagonal {
                twisted: false,
                parity: diag_parity,
            },
            CaseId::F => CosetRule::Diagonal {
                twisted: true,
                parity: None,
            },
            CaseId::G => CosetRule::Diagonal {
                twisted: true,
                parity: diag_parity,
            },
            CaseId::H => CosetRule::Klein { parity: None },
            CaseId::I => CosetRule::Klein {
                parity: diag_parity,
            },
        }
    }

    pub fn build(&self) -> CaseGroup {
        build_case(self)
    }
}

impl fmt::Display for GroupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {} line {} n={}", self.case, self.line, self.n)
    }
}

/// Parity constraint on the pair `(g, g')` in a product coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairParity {
    Any,
    BothEven,
    Same,
    Different,
}

impl PairParity {
    pub fn admits(self, a: Parity, b: Parity) -> bool {
        match self {
            PairParity::Any => true,
            PairParity::BothEven => a == Parity::Even && b == Parity::Even,
            PairParity::Same => a == b,
            PairParity::Different => a != b,
        }
    }
}

/// Which pairs `(g, g')` occur in one coset of `G⁺` in `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetRule {
    /// `g`, `g'` independent up to a parity relation.
    Product(PairParity),
    /// `g' = g` or `g' = φ(g)`, with an optional parity on `g`.
    Diagonal {
        twisted: bool,
        parity: Option<Parity>,
    },
    /// `g'·g⁻¹ ∈ V₄`, with an optional parity on `g`.
    Klein { parity: Option<Parity> },
}

impl CosetRule {
    pub fn admits(&self, g: &Perm, gprime: &Perm) -> bool {
        match *self {
            CosetRule::Product(pp) => pp.admits(g.parity(), gprime.parity()),
            CosetRule::Diagonal { twisted, parity } => {
                let expect = if twisted {
                    outer_phi_s6().apply(g)
                } else {
                    g.clone()
                };
                *gprime == expect && parity.is_none_or(|p| g.parity() == p)
            }
            CosetRule::Klein { parity } => {
                klein_four().contains(&gprime.then(&g.inverse()))
                    && parity.is_none_or(|p| g.parity() == p)
            }
        }
    }
}

/// Structural membership test; no enumeration.
pub fn member(c: &GroupCase, e: &BiElement) -> bool {
    e.n() == c.n() && c.coset_rule(e.flip).admits(&e.g, &e.gprime)
}

/// Generators of `G⁺` and one side-swapping generator of `G` for a catalog case.
#[derive(Clone, Debug)]
pub struct CaseGroup {
    pub case: GroupCase,
    pub graph: GraphSpec,
    pub plus_generators: Vec<BiElement>,
    pub swap_generator: BiElement,
}

impl CaseGroup {
    pub fn generators(&self) -> Vec<BiElement> {
        let mut g = self.plus_generators.clone();
        g.push(self.swap_generator.clone());
        g
    }

    pub fn order(&self) -> u128 {
        vertex_genset(self.case.n(), &self.generators()).order()
    }

    pub fn plus_order(&self) -> u128 {
        vertex_genset(self.case.n(), &self.plus_generators).order()
    }

    /// Order of `⟨g : (g, g') ∈ G⁺⟩`, the group induced on `Δ`.
    pub fn induced_on_delta_order(&self) -> u128 {
        let n = self.case.n();
        let gens: Vec<Perm> = self.plus_generators.iter().map(|e| e.g.clone()).collect();
        if gens.is_empty() {
            return 1;
        }
        GenSet::new(n, gens).expect("same degree").order()
    }

    /// All elements, or `None` above `cap`.
    pub fn elements(&self, cap: usize) -> Option<Vec<BiElement>> {
        enumerate_group(self.case.n(), &self.generators(), cap)
    }
}

fn push_unique(v: &mut Vec<BiElement>, e: BiElement) {
    if !e.is_identity() && !v.contains(&e) {
        v.push(e);
    }
}

pub fn build_case(c: &GroupCase) -> CaseGroup {
    let n = c.n();
    let id = Perm::identity(n);
    let t12 = Perm::cycle(n, &[1, 2]).expect("n >= 2");
    let sym = symmetric_generators(n);
    let alt = alternating_generators(n);
    let mut plus = Vec::new();
    let both_sides = |plus: &mut Vec<BiElement>, gens: &[Perm]| {
        for s in gens {
            push_unique(plus, BiElement::pair(s.clone(), id.clone()));
            push_unique(plus, BiElement::pair(id.clone(), s.clone()));
        }
    };
    let diagonal = |plus: &mut Vec<BiElement>, gens: &[Perm], twisted: bool| {
        for s in gens {
            let sp = if twisted {
                outer_phi_s6().apply(s)
            } else {
                s.clone()
            };
            push_unique(plus, BiElement::pair(s.clone(), sp));
        }
    };
    match c.case() {
        CaseId::A => both_sides(&mut plus, &sym),
        CaseId::B => both_sides(&mut plus, &alt),
        CaseId::C => {
            both_sides(&mut plus, &alt);
            push_unique(&mut plus, BiElement::pair(t12.clone(), t12.clone()));
        }
        CaseId::D => diagonal(&mut plus, &sym, false),
        CaseId::E => diagonal(&mut plus, &alt, false),
        CaseId::F => diagonal(&mut plus, &sym, true),
        CaseId::G => diagonal(&mut plus, &alt, true),
        CaseId::H | CaseId::I => {
            let v4 = klein_four();
            both_sides(&mut plus, &v4[1..3]);
            let h = if c.case() == CaseId::H { &sym } else { &alt };
            diagonal(&mut plus, h, false);
        }
    }
    let swap_generator = if c.line() == 1 {
        BiElement::tau(n)
    } else {
        let gp = match c.case() {
            CaseId::C => id.clone(),
            CaseId::G => outer_phi_s6().apply(&t12),
            _ => t12.clone(),
        };
        BiElement::new(t12, gp, true).expect("same degree")
    };
    CaseGroup {
        case: *c,
        graph: c.graph(),
        plus_generators: plus,
        swap_generator,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityReport {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub connected: bool,
    /// Every generator maps edges to edges.
    pub preserves_adjacency: bool,
}

impl TransitivityReport {
    pub fn all_true(&self) -> bool {
        self.vertex_transitive && self.edge_transitive && self.connected && self.preserves_adjacency
    }
}

pub fn transitivity_report(spec: &GraphSpec, gens: &[BiElement]) -> TransitivityReport {
    let n = spec.n();
    let vertex_transitive = vertex_genset(n, gens)
        .orbit(1)
        .map(|o| o.len() == 2 * n)
        .unwrap_or(false);

    let edges: HashSet<(usize, usize)> = spec.edges().into_iter().collect();
    let norm = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let preserves_adjacency = gens.iter().all(|g| {
        edges
            .iter()
            .all(|&(a, b)| edges.contains(&norm(g.act_position(a), g.act_position(b))))
    });
    let edge_transitive = match edges.iter().min() {
        Some(&first) if preserves_adjacency => {
            let mut seen = HashSet::from([first]);
            let mut queue = VecDeque::from([first]);
            while let Some((a, b)) = queue.pop_front() {
                for g in gens {
                    let e = norm(g.act_position(a), g.act_position(b));
                    if seen.insert(e) {
                        queue.push_back(e);
                    }
                }
            }
            seen.len() == edges.len()
        }
        _ => false,
    };
    TransitivityReport {
        vertex_transitive,
        edge_transitive,
        connected: spec.is_connected(),
        preserves_adjacency,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn act_examples() {
        let n = 5;
        assert_eq!(BiElement::tau(n).act(Vertex::v(3)), Vertex::u(3));
        let id = BiElement::identity(n);
        for k in 0..2 * n {
            let v = Vertex::from_position(n, k);
            assert_eq!(id.act(v), v);
        }
        let e = BiElement::new(p(3, "(1,2)"), p(3, "(2,3)"), true).unwrap();
        assert_eq!(e.act(Vertex::u(2)), Vertex::v(3));
    }

    #[test]
    fn multiply_examples() {
        let n = 3;
        let tau = BiElement::tau(n);
        assert!(tau.multiply(&tau).is_identity());
        let x = BiElement::pair(p(n, "(1,2)"), Perm::identity(n));
        assert_eq!(
            x.multiply(&tau),
            BiElement::new(p(n, "(1,2)"), Perm::identity(n), true).unwrap()
        );
        let y = tau.multiply(&x);
        assert_eq!(
            y,
            BiElement::new(Perm::identity(n), p(n, "(1,2)"), true).unwrap()
        );
        for k in 0..2 * n {
            let v = Vertex::from_position(n, k);
            assert_eq!(y.act(v), x.act(tau.act(v)));
        }
    }

    #[test]
    fn to_perm_round_trip() {
        let e = BiElement::new(p(4, "(1,2,3)"), p(4, "(2,4)"), true).unwrap();
        assert_eq!(BiElement::from_perm(4, &e.to_perm()), Some(e.clone()));
        let mixed = Perm::parse("(1,5)", 8).unwrap();
        assert_eq!(BiElement::from_perm(4, &mixed), None);
    }

    #[test]
    fn text_forms() {
        let e = BiElement::new(p(4, "(1,2)"), p(4, "(3,4)"), true).unwrap();
        assert_eq!(e.to_string(), "((1,2),(3,4);t)");
        assert_eq!(BiElement::parse("((1,2),(3,4);t)", 4).unwrap(), e);
        let f = BiElement::pair(p(5, "(1,2)(3,4,5)"), Perm::identity(5));
        assert_eq!(f.to_string(), "((1,2)(3,4,5),())");
        assert_eq!(BiElement::parse(&f.to_string(), 5).unwrap(), f);
        assert!(BiElement::parse("((1,2);t)", 4).is_err());
        assert_eq!("u17".parse::<Vertex>().unwrap(), Vertex::u(17));
        assert_eq!(Vertex::v(3).to_string(), "v3");
        assert!("w3".parse::<Vertex>().is_err());
        assert!("v0".parse::<Vertex>().is_err());
    }

    #[test]
    fn adjacency_examples() {
        let k = GraphSpec::new(GraphFamily::CompleteBipartite, 5).unwrap();
        let crown = GraphSpec::new(GraphFamily::Crown, 5).unwrap();
        assert!(k.adjacent(Vertex::v(2), Vertex::u(2)));
        assert!(!crown.adjacent(Vertex::v(2), Vertex::u(2)));
        assert!(!crown.adjacent(Vertex::v(1), Vertex::v(2)));
        assert!(crown.adjacent(Vertex::u(1), Vertex::v(2)));
        assert_eq!(crown.edges().len(), 20);
        assert!(GraphSpec::new(GraphFamily::Crown, 2).is_err());
    }

    #[test]
    fn outer_phi_properties() {
        let phi = outer_phi_s6();
        let all: Vec<Perm> = Perm::all(6).collect();
        let mut images = HashSet::new();
        for x in &all {
            assert_eq!(phi.apply(&phi.apply(x)), *x);
            images.insert(phi.apply(x));
        }
        assert_eq!(images.len(), 720);
        assert!(phi.apply(&Perm::identity(6)).is_identity());
        let t = p(6, "(1,2)");
        assert_eq!(phi.apply(&t).cycle_type(), vec![2, 2, 2]);
        for x in all.iter().step_by(7) {
            for y in all.iter().step_by(11) {
                assert_eq!(phi.apply(&x.then(y)), phi.apply(x).then(&phi.apply(y)));
            }
        }
        // No inner automorphism agrees with φ on the generators.
        let gens = symmetric_generators(6);
        for h in &all {
            assert!(gens.iter().any(|g| g.conjugate_by(h) != phi.apply(g)));
        }
    }

    #[test]
    fn case_validation() {
        assert!(GroupCase::new(CaseId::F, 1, 5).is_err());
        let err = GroupCase::new(CaseId::F, 1, 5).unwrap_err().to_string();
        assert_eq!(err, "case f requires n=6");
        assert!(GroupCase::new(CaseId::H, 1, 4).is_ok());
        assert!(GroupCase::new(CaseId::H, 2, 4).is_err());
        assert!(GroupCase::new(CaseId::B, 1, 2).is_err());
        assert!(GroupCase::new(CaseId::D, 1, 2).is_err());
        assert!(GroupCase::new(CaseId::C, 3, 4).is_err());
        assert_eq!("g".parse::<CaseId>().unwrap(), CaseId::G);
        assert!("j".parse::<CaseId>().is_err());
    }

    #[test]
    fn case_orders() {
        let a3 = GroupCase::new(CaseId::A, 1, 3).unwrap().build();
        assert_eq!(a3.order(), 72);
        assert_eq!(a3.graph.family(), GraphFamily::CompleteBipartite);
        let e5 = GroupCase::new(CaseId::E, 1, 5).unwrap().build();
        assert_eq!(e5.order(), 120);
        assert_eq!(e5.graph.family(), GraphFamily::Crown);
        let f6 = GroupCase::new(CaseId::F, 1, 6).unwrap().build();
        assert_eq!(f6.order(), 1440);
    }

    #[test]
    fn member_examples() {
        let d4 = GroupCase::new(CaseId::D, 1, 4).unwrap();
        assert!(member(&d4, &BiElement::pair(p(4, "(1,2)"), p(4, "(1,2)"))));
        assert!(!member(&d4, &BiElement::pair(p(4, "(1,2)"), p(4, "(1,3)"))));
        let e4 = GroupCase::new(CaseId::E, 1, 4).unwrap();
        assert!(!member(&e4, &BiElement::pair(p(4, "(1,2)"), p(4, "(1,2)"))));
        assert_eq!(e4.build().order(), 24);
    }

    #[test]
    fn transitivity_examples() {
        let e4 = GroupCase::new(CaseId::E, 1, 4).unwrap().build();
        assert!(transitivity_report(&e4.graph, &e4.generators()).all_true());
        let k33 = GraphSpec::new(GraphFamily::CompleteBipartite, 3).unwrap();
        let r = transitivity_report(&k33, &[BiElement::identity(3)]);
        assert!(!r.vertex_transitive);
        assert!(r.connected);
    }

    #[test]
    fn every_generator_sits_in_its_coset() {
        for n in 2..=6 {
            for c in GroupCase::all_at(n) {
                let cg = c.build();
                assert!(cg.plus_generators.iter().all(|g| !g.flip), "{c}");
                assert!(cg.swap_generator.flip);
                for g in cg.generators() {
                    assert!(member(&c, &g), "{c}: {g}");
                }
            }
        }
    }
}
