//! Root systems of semisimple types and the Weyl-group data derived from them.
//!
//! Conventions: Bourbaki node numbering, Cartan entries `C[i][j] = <α_j, α̌_i>`,
//! roots in simple-root coordinates. Nodes are numbered globally from 1 by
//! concatenating the components in the order they were given.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::qfun::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid simple type {0}{1}")]
    InvalidType(char, usize),
    #[error("node {0} is in the parabolic subset and cannot be a color")]
    InvalidColor(usize),
    #[error("node {0} does not exist in this root system")]
    UnknownNode(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    /// Rank bounds: A ≥ 1, B ≥ 2, C ≥ 3, D ≥ 4, E ∈ {6,7,8}, F = 4, G = 2.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(RootError::InvalidType(family.letter(), rank))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every valid simple type of rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        use Family::*;
        let mut out = Vec::new();
        for fam in [A, B, C, D, E, F, G] {
            for rank in 1..=max_rank {
                if let Ok(t) = SimpleType::new(fam, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            Family::E => {
                // 1-3-4-5-6(-7-8), 2 attached to 4
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            Family::F => (0..3).for_each(|i| link(i, i + 1)),
            Family::G => link(0, 1),
        }
        match self.family {
            // α_n short
            Family::B => c[n - 1][n - 2] = -2,
            // α_n long
            Family::C => c[n - 2][n - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            Family::F => c[2][1] = -2,
            // α_1 short, α_2 long
            Family::G => c[0][1] = -3,
            _ => {}
        }
        c
    }

    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        positive_roots_of(&self.cartan_matrix())
    }

    /// Exponents from the height distribution of the positive roots.
    pub fn exponents(&self) -> Vec<u32> {
        exponents_of_connected(&self.positive_roots())
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Positive roots of the root system with Cartan matrix `c`, by root-string
/// closure ordered by height.
pub fn positive_roots_of(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let pairing = |g: &[i64], i: usize| -> i64 { (0..n).map(|j| g[j] * c[i][j]).sum() };
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for v in &layer {
        seen.insert(v.clone());
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for g in &layer {
            for i in 0..n {
                // p: how far the α_i-string extends downward from g
                let mut p = 0;
                let mut down = g.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing(g, i);
                if q > 0 {
                    let mut up = g.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.append(&mut layer);
        next.sort();
        layer = next;
    }
    roots
}

fn height(root: &[i64]) -> usize {
    root.iter().sum::<i64>() as usize
}

/// Conjugate partition of the height distribution of an irreducible system.
fn exponents_of_connected(roots: &[Vec<i64>]) -> Vec<u32> {
    let max_h = roots.iter().map(|r| height(r)).max().unwrap_or(0);
    let mut count = vec![0usize; max_h + 2];
    for r in roots {
        count[height(r)] += 1;
    }
    let mut out = Vec::new();
    for k in 1..=max_h {
        for _ in 0..count[k] - count[k + 1] {
            out.push(k as u32);
        }
    }
    out
}

/// A set of global node indices (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSubset(BTreeSet<usize>);

impl NodeSubset {
    pub fn new() -> Self {
        NodeSubset(BTreeSet::new())
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.contains(&node)
    }

    pub fn insert(&mut self, node: usize) -> bool {
        self.0.insert(node)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &NodeSubset) -> NodeSubset {
        NodeSubset(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &NodeSubset) -> NodeSubset {
        NodeSubset(self.0.difference(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &NodeSubset) -> NodeSubset {
        NodeSubset(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &NodeSubset) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<usize> for NodeSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        NodeSubset(iter.into_iter().collect())
    }
}

impl fmt::Display for NodeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Shape of a connected Dynkin sub-diagram, as needed by the smoothness criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainShape {
    /// Simply-laced path, nodes in path order.
    TypeA(Vec<usize>),
    /// Path whose only multiple edge is a double edge at one end, with the
    /// long root at that end. Nodes ordered from the simple end to the long
    /// end. Includes the rank-2 case B2 = C2.
    TypeC(Vec<usize>),
    Other,
}

/// Semisimple root system given by its simple components (possibly none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<SimpleType>,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(components: Vec<SimpleType>) -> Self {
        let n: usize = components.iter().map(|t| t.rank).sum();
        let mut cartan = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for t in &components {
            let c = t.cartan_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    cartan[offset + i][offset + j] = c[i][j];
                }
            }
            offset += t.rank;
        }
        let positive_roots = positive_roots_of(&cartan);
        RootSystem {
            components,
            cartan,
            positive_roots,
        }
    }

    /// The empty root system (G a torus).
    pub fn torus() -> Self {
        Self::new(Vec::new())
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self, RootError> {
        Ok(Self::new(vec![SimpleType::new(family, rank)?]))
    }

    pub fn components(&self) -> &[SimpleType] {
        &self.components
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn nodes(&self) -> NodeSubset {
        (1..=self.rank()).collect()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `C[i][j]` for global 1-based nodes.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn check_nodes(&self, sub: &NodeSubset) -> Result<(), RootError> {
        match sub.iter().find(|&n| n == 0 || n > self.rank()) {
            Some(n) => Err(RootError::UnknownNode(n)),
            None => Ok(()),
        }
    }

    /// `<γ, α̌_node>` for a root γ in simple-root coordinates.
    pub fn pairing(&self, root: &[i64], node: usize) -> i64 {
        let row = &self.cartan[node - 1];
        root.iter().zip(row).map(|(c, a)| c * a).sum()
    }

    /// Positive roots supported on `sub`.
    pub fn positive_roots_in<'a>(&'a self, sub: &'a NodeSubset) -> impl Iterator<Item = &'a Vec<i64>> + 'a {
        self.positive_roots.iter().filter(move |r| {
            r.iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || sub.contains(i + 1))
        })
    }

    pub fn count_positive_roots_in(&self, sub: &NodeSubset) -> usize {
        self.positive_roots_in(sub).count()
    }

    /// Connected components of the Dynkin sub-diagram on `sub`.
    pub fn components_of(&self, sub: &NodeSubset) -> Vec<NodeSubset> {
        let mut left: BTreeSet<usize> = sub.0.clone();
        let mut out = Vec::new();
        while let Some(&start) = left.iter().next() {
            left.remove(&start);
            let mut comp = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let nbrs: Vec<usize> = left
                    .iter()
                    .copied()
                    .filter(|&w| self.cartan_entry(v, w) < 0)
                    .collect();
                for w in nbrs {
                    left.remove(&w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
            out.push(NodeSubset(comp));
        }
        out
    }

    fn sub_cartan(&self, comp: &NodeSubset) -> Vec<Vec<i64>> {
        let idx: Vec<usize> = comp.iter().collect();
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.cartan_entry(i, j)).collect())
            .collect()
    }

    /// Exponents of the sub-system on `sub`, sorted ascending (union over components).
    pub fn exponents_of(&self, sub: &NodeSubset) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .components_of(sub)
            .iter()
            .flat_map(|c| exponents_of_connected(&positive_roots_of(&self.sub_cartan(c))))
            .collect();
        out.sort_unstable();
        out
    }

    /// Order of the parabolic Weyl group `W_sub`, as the product of `m_i + 1`.
    pub fn weyl_order(&self, sub: &NodeSubset) -> BigInt {
        self.exponents_of(sub)
            .iter()
            .map(|&m| BigInt::from(m + 1))
            .product()
    }

    /// Poincaré polynomial `∏ (1 + t + ... + t^{m_i})` of `W_sub`, in the variable `q`.
    pub fn weyl_poincare(&self, sub: &NodeSubset) -> QPoly {
        self.exponents_of(sub).iter().fold(QPoly::one(), |acc, &m| {
            &acc * &QPoly::from_coeffs(std::iter::repeat(1).take(m as usize + 1))
        })
    }

    /// `W(t) / W_I(t)`: the Poincaré polynomial of `G/P_I`.
    pub fn coset_poincare(&self, parabolic: &NodeSubset) -> Result<QPoly, RootError> {
        self.check_nodes(parabolic)?;
        let full = self.weyl_poincare(&self.nodes());
        full.div_exact(&self.weyl_poincare(parabolic))
            .ok_or_else(|| RootError::Internal("Weyl Poincaré polynomials do not divide".into()))
    }

    /// `a_α = 2 - Σ_{γ ∈ R_I^+} <γ, α̌>`.
    pub fn a_alpha(&self, parabolic: &NodeSubset, alpha: usize) -> Result<i64, RootError> {
        if alpha == 0 || alpha > self.rank() {
            return Err(RootError::UnknownNode(alpha));
        }
        if parabolic.contains(alpha) {
            return Err(RootError::InvalidColor(alpha));
        }
        let s: i64 = self
            .positive_roots_in(parabolic)
            .map(|g| self.pairing(g, alpha))
            .sum();
        Ok(2 - s)
    }

    /// The component containing `node`.
    pub fn component_of(&self, node: usize) -> NodeSubset {
        self.components_of(&self.nodes())
            .into_iter()
            .find(|c| c.contains(node))
            .unwrap_or_default()
    }

    /// `<ϖ_α, θ̌> = 1`, with `θ̌` the highest root of the dual system of the
    /// component containing `alpha`.
    pub fn is_minuscule(&self, alpha: usize) -> bool {
        let comp = self.component_of(alpha);
        let idx: Vec<usize> = comp.iter().collect();
        let c = self.sub_cartan(&comp);
        let dual: Vec<Vec<i64>> = (0..c.len())
            .map(|i| (0..c.len()).map(|j| c[j][i]).collect())
            .collect();
        let roots = positive_roots_of(&dual);
        let Some(highest) = roots.iter().max_by_key(|r| height(r)) else {
            return false;
        };
        let pos = idx.iter().position(|&n| n == alpha).unwrap();
        highest[pos] == 1
    }

    /// Largest exponent `m_ℓ` of the component containing `node`.
    pub fn top_exponent(&self, node: usize) -> u32 {
        self.exponents_of(&self.component_of(node))
            .last()
            .copied()
            .unwrap_or(0)
    }

    fn laced(&self, a: usize, b: usize) -> i64 {
        self.cartan_entry(a, b) * self.cartan_entry(b, a)
    }

    /// Recognizes path-shaped components of type A, and of type C (B2 = C2 included).
    pub fn chain_shape(&self, comp: &NodeSubset) -> ChainShape {
        let nodes: Vec<usize> = comp.iter().collect();
        let nbrs = |v: usize| -> Vec<usize> {
            nodes
                .iter()
                .copied()
                .filter(|&w| w != v && self.cartan_entry(v, w) != 0)
                .collect()
        };
        if nodes.iter().any(|&v| nbrs(v).len() > 2) {
            return ChainShape::Other;
        }
        let Some(&start) = nodes.iter().find(|&&v| nbrs(v).len() <= 1) else {
            return ChainShape::Other;
        };
        let mut path = vec![start];
        while path.len() < nodes.len() {
            let last = *path.last().unwrap();
            match nbrs(last).into_iter().find(|w| !path.contains(w)) {
                Some(w) => path.push(w),
                None => return ChainShape::Other,
            }
        }
        let edges: Vec<i64> = path.windows(2).map(|w| self.laced(w[0], w[1])).collect();
        if edges.iter().all(|&e| e == 1) {
            return ChainShape::TypeA(path);
        }
        let multiple: Vec<usize> = (0..edges.len()).filter(|&i| edges[i] != 1).collect();
        if multiple.len() != 1 || edges[multiple[0]] != 2 {
            return ChainShape::Other;
        }
        let k = path.len();
        if multiple[0] == 0 {
            path.reverse();
        } else if multiple[0] != k - 2 {
            return ChainShape::Other;
        }
        // long root at the end: C[short][long] = -2
        let (short, long) = (path[k - 2], path[k - 1]);
        if self.cartan_entry(short, long) == -2 {
            return ChainShape::TypeC(path);
        }
        if k == 2 && self.cartan_entry(long, short) == -2 {
            path.reverse();
            return ChainShape::TypeC(path);
        }
        ChainShape::Other
    }
}
