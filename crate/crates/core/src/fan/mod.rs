//! Colored fans and the horospherical datum built on them.
//!
//! A [`HorosphericalDatum`] bundles the root system, the parabolic subset `I`,
//! the lattice `M` (hence `N` and the color images `ϱ_α`) and a colored fan
//! whose cones live in `N = Z^r`. Construction only rejects structurally
//! malformed input; the fan axioms are checked by [`validate_fan`], which
//! reports every violation instead of stopping at the first.

mod cone;
mod dd;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use cone::{Cone, Facet};
pub use dd::{double_description, Generators};

use crate::roots::{NodeSubset, RootSystem};
use crate::zlinalg::{gcd_all, primitive_big, rank_i64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("node {0} does not exist in the root system")]
    UnknownNode(usize),
    #[error("color {0} lies in the parabolic subset I")]
    InvalidColor(usize),
    #[error("cone {cone} refers to ray {ray}, which does not exist")]
    RayIndex { cone: usize, ray: usize },
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("{what} has length {found}, expected {expected}")]
    Length {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("no ϱ vector given for node {0}")]
    MissingRho(usize),
}

/// How the lattice `M` (and with it every `ϱ_α`) is specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    /// Rows `m_1..m_r` of a basis of `M`, in fundamental-weight coordinates.
    WeightBasis(Vec<Vec<i64>>),
    /// Rank `r` and the vectors `ϱ_α ∈ Z^r` for every `α ∈ S∖I`.
    ExplicitRho {
        rank: usize,
        rho: BTreeMap<usize, Vec<i64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConeSpec {
    /// Indices into the fan's ray list.
    pub rays: Vec<usize>,
    pub colors: Vec<usize>,
}

/// Raw fan description: rays plus the listed (maximal) colored cones.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FanInput {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<ConeSpec>,
}

/// One colored cone of the fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    rays: Vec<usize>,
    colors: NodeSubset,
    geometry: Cone,
    parent: usize,
}

impl FanCone {
    /// Global ray indices, ascending.
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn colors(&self) -> &NodeSubset {
        &self.colors
    }

    pub fn geometry(&self) -> &Cone {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    /// Index (into [`ColoredFan::cones`]) of a maximal cone having this cone as a face.
    pub fn parent(&self) -> usize {
        self.parent
    }
}

/// A face-closed collection of colored cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredFan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<FanCone>,
    maximal: Vec<usize>,
    // problems noticed while closing under faces; reported by validate_fan
    assembly_issues: Vec<Violation>,
    // listed cones, for pairwise intersection checks
    listed: Vec<usize>,
}

impl ColoredFan {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// All colored cones, ordered by dimension then by ray indices.
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn maximal(&self) -> impl Iterator<Item = (usize, &FanCone)> + '_ {
        self.maximal.iter().map(|&i| (i, &self.cones[i]))
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal
    }

    pub fn find(&self, rays: &[usize]) -> Option<usize> {
        self.cones.iter().position(|c| c.rays == rays)
    }

    /// Rays used by at least one cone.
    pub fn used_rays(&self) -> BTreeSet<usize> {
        self.cones.iter().flat_map(|c| c.rays.iter().copied()).collect()
    }

    pub fn is_toroidal(&self) -> bool {
        self.cones.iter().all(|c| c.colors.is_empty())
    }
}

/// A fan-axiom or lattice violation, with a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    LatticeNotOrthogonal { row: usize, node: usize },
    LatticeRankDeficient { rank: usize, expected: usize },
    RayNotPrimitive { ray: usize },
    DuplicateRay { first: usize, second: usize },
    StrictConvexity { cone: usize },
    NonExtremeRay { cone: usize, ray: usize },
    ZeroRho { color: usize },
    ColorNotInCone { cone: usize, color: usize },
    InducedColors { rays: Vec<usize> },
    FaceIntersection { first: usize, second: usize },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::LatticeNotOrthogonal { .. } => "LatticeNotOrthogonal",
            Violation::LatticeRankDeficient { .. } => "LatticeRankDeficient",
            Violation::RayNotPrimitive { .. } => "RayNotPrimitive",
            Violation::DuplicateRay { .. } => "DuplicateRay",
            Violation::StrictConvexity { .. } => "StrictConvexity",
            Violation::NonExtremeRay { .. } => "NonExtremeRay",
            Violation::ZeroRho { .. } => "ZeroRho",
            Violation::ColorNotInCone { .. } => "ColorNotInCone",
            Violation::InducedColors { .. } => "InducedColors",
            Violation::FaceIntersection { .. } => "FaceIntersection",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LatticeNotOrthogonal { row, node } => {
                write!(f, "lattice row {row} pairs nontrivially with the coroot of node {node} in I")
            }
            Violation::LatticeRankDeficient { rank, expected } => {
                write!(f, "lattice basis has rank {rank}, expected {expected}")
            }
            Violation::RayNotPrimitive { ray } => write!(f, "ray {ray} is not primitive"),
            Violation::DuplicateRay { first, second } => write!(f, "rays {first} and {second} coincide"),
            Violation::StrictConvexity { cone } => write!(f, "cone {cone} contains a line"),
            Violation::NonExtremeRay { cone, ray } => {
                write!(f, "ray {ray} of cone {cone} is not an extreme ray")
            }
            Violation::ZeroRho { color } => write!(f, "color {color} has ϱ = 0"),
            Violation::ColorNotInCone { cone, color } => {
                write!(f, "ϱ of color {color} does not lie in cone {cone}")
            }
            Violation::InducedColors { rays } => {
                write!(f, "face with rays {rays:?} receives inconsistent induced colors")
            }
            Violation::FaceIntersection { first, second } => {
                write!(f, "cones {first} and {second} do not meet in a common face")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorosphericalDatum {
    root_system: RootSystem,
    parabolic: NodeSubset,
    lattice: LatticeSpec,
    rho: BTreeMap<usize, Vec<i64>>,
    input: FanInput,
    fan: ColoredFan,
}

impl HorosphericalDatum {
    pub fn new(
        root_system: RootSystem,
        parabolic: NodeSubset,
        lattice: LatticeSpec,
        fan: FanInput,
    ) -> Result<Self, DatumError> {
        if let Some(n) = parabolic.iter().find(|&n| n == 0 || n > root_system.rank()) {
            return Err(DatumError::UnknownNode(n));
        }
        let colorable = root_system.nodes().difference(&parabolic);
        let (rank, rho) = match &lattice {
            LatticeSpec::WeightBasis(rows) => {
                for row in rows {
                    if row.len() != root_system.rank() {
                        return Err(DatumError::Length {
                            what: "lattice basis row".into(),
                            expected: root_system.rank(),
                            found: row.len(),
                        });
                    }
                }
                let rho = colorable
                    .iter()
                    .map(|a| (a, rows.iter().map(|m| m[a - 1]).collect()))
                    .collect();
                (rows.len(), rho)
            }
            LatticeSpec::ExplicitRho { rank, rho } => {
                for a in colorable.iter() {
                    match rho.get(&a) {
                        None => return Err(DatumError::MissingRho(a)),
                        Some(v) if v.len() != *rank => {
                            return Err(DatumError::Length {
                                what: format!("ϱ vector of node {a}"),
                                expected: *rank,
                                found: v.len(),
                            })
                        }
                        Some(_) => {}
                    }
                }
                if let Some(&bad) = rho.keys().find(|&&a| !colorable.contains(a)) {
                    return Err(if parabolic.contains(bad) {
                        DatumError::InvalidColor(bad)
                    } else {
                        DatumError::UnknownNode(bad)
                    });
                }
                (*rank, rho.clone())
            }
        };

        for (i, r) in fan.rays.iter().enumerate() {
            if r.len() != rank {
                return Err(DatumError::Length {
                    what: format!("ray {i}"),
                    expected: rank,
                    found: r.len(),
                });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(DatumError::ZeroRay(i));
            }
        }
        for (ci, c) in fan.cones.iter().enumerate() {
            if let Some(&ray) = c.rays.iter().find(|&&r| r >= fan.rays.len()) {
                return Err(DatumError::RayIndex { cone: ci, ray });
            }
            for &a in &c.colors {
                if a == 0 || a > root_system.rank() {
                    return Err(DatumError::UnknownNode(a));
                }
                if parabolic.contains(a) {
                    return Err(DatumError::InvalidColor(a));
                }
            }
        }

        let assembled = assemble(rank, &fan, &rho);
        Ok(HorosphericalDatum {
            root_system,
            parabolic,
            lattice,
            rho,
            input: fan,
            fan: assembled,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn parabolic(&self) -> &NodeSubset {
        &self.parabolic
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn fan(&self) -> &ColoredFan {
        &self.fan
    }

    pub fn fan_input(&self) -> &FanInput {
        &self.input
    }

    /// Rank `r` of `M` and `N`.
    pub fn rank(&self) -> usize {
        self.fan.rank
    }

    /// `dim G/H = r + dim G/P_I`.
    pub fn dimension(&self) -> usize {
        self.rank() + self.flag_dimension(&self.parabolic)
    }

    /// `dim G/P_J = |R^+| - |R_J^+|`.
    pub fn flag_dimension(&self, j: &NodeSubset) -> usize {
        self.root_system.positive_roots().len() - self.root_system.count_positive_roots_in(j)
    }

    /// Nodes that may carry a color: `S ∖ I`.
    pub fn colorable(&self) -> NodeSubset {
        self.root_system.nodes().difference(&self.parabolic)
    }

    /// `ϱ_α`, the restriction of the coroot `α̌` to `M`.
    pub fn rho_of_color(&self, alpha: usize) -> Result<&[i64], DatumError> {
        if self.parabolic.contains(alpha) {
            return Err(DatumError::InvalidColor(alpha));
        }
        self.rho
            .get(&alpha)
            .map(Vec::as_slice)
            .ok_or(DatumError::UnknownNode(alpha))
    }

    /// Same datum with a different list of cones over the same rays and lattice.
    pub fn with_fan(&self, fan: FanInput) -> Result<Self, DatumError> {
        HorosphericalDatum::new(
            self.root_system.clone(),
            self.parabolic.clone(),
            self.lattice.clone(),
            fan,
        )
    }
}

fn assemble(rank: usize, input: &FanInput, rho: &BTreeMap<usize, Vec<i64>>) -> ColoredFan {
    let mut issues = Vec::new();
    // (sorted global rays) -> (colors, parent listed index)
    let mut table: BTreeMap<Vec<usize>, (NodeSubset, usize)> = BTreeMap::new();
    let mut specs: Vec<(Vec<usize>, NodeSubset)> = input
        .cones
        .iter()
        .map(|c| {
            let mut r = c.rays.clone();
            r.sort_unstable();
            r.dedup();
            (r, c.colors.iter().copied().collect())
        })
        .collect();
    if specs.is_empty() {
        specs.push((Vec::new(), NodeSubset::new()));
    }

    let mut record = |rays: Vec<usize>, colors: NodeSubset, parent: usize, issues: &mut Vec<Violation>| {
        match table.get(&rays) {
            Some((existing, _)) if *existing != colors => {
                let v = Violation::InducedColors { rays: rays.clone() };
                if !issues.contains(&v) {
                    issues.push(v);
                }
            }
            Some(_) => {}
            None => {
                table.insert(rays, (colors, parent));
            }
        }
    };

    for (si, (rays, colors)) in specs.iter().enumerate() {
        let geometry = Cone::new(rank, rays.iter().map(|&i| input.rays[i].clone()).collect());
        record(rays.clone(), colors.clone(), si, &mut issues);
        for face in geometry.faces() {
            let global: Vec<usize> = face.iter().map(|&k| rays[k]).collect();
            if global == *rays {
                continue;
            }
            let sub = Cone::new(rank, global.iter().map(|&i| input.rays[i].clone()).collect());
            let induced: NodeSubset = colors
                .iter()
                .filter(|a| rho.get(a).is_some_and(|v| sub.contains(v)))
                .collect();
            record(global, induced, si, &mut issues);
        }
    }
    if !table.contains_key(&Vec::new()) {
        table.insert(Vec::new(), (NodeSubset::new(), 0));
    }

    let mut cones: Vec<FanCone> = table
        .into_iter()
        .map(|(rays, (colors, parent))| {
            let geometry = Cone::new(rank, rays.iter().map(|&i| input.rays[i].clone()).collect());
            FanCone {
                rays,
                colors,
                geometry,
                parent,
            }
        })
        .collect();
    cones.sort_by(|a, b| (a.dim(), &a.rays).cmp(&(b.dim(), &b.rays)));

    let is_proper_subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|x| b.contains(x));
    let maximal: Vec<usize> = (0..cones.len())
        .filter(|&i| !cones.iter().any(|c| is_proper_subset(&cones[i].rays, &c.rays)))
        .collect();
    let listed: Vec<usize> = specs
        .iter()
        .map(|(r, _)| cones.iter().position(|c| c.rays == *r).unwrap())
        .collect();
    // re-point parents at maximal cones in the final ordering
    for i in 0..cones.len() {
        let rays = cones[i].rays.clone();
        let parent = maximal
            .iter()
            .copied()
            .find(|&m| rays.iter().all(|x| cones[m].rays.contains(x)))
            .unwrap_or(i);
        cones[i].parent = parent;
    }

    ColoredFan {
        rank,
        rays: input.rays.clone(),
        cones,
        maximal,
        assembly_issues: issues,
        listed,
    }
}

/// Checks every fan axiom and the lattice conditions; empty means valid.
pub fn validate_fan(d: &HorosphericalDatum) -> Vec<Violation> {
    let mut out = Vec::new();
    let fan = &d.fan;
    let r = fan.rank;

    match &d.lattice {
        LatticeSpec::WeightBasis(rows) => {
            for (j, row) in rows.iter().enumerate() {
                for a in d.parabolic.iter() {
                    if row[a - 1] != 0 {
                        out.push(Violation::LatticeNotOrthogonal { row: j, node: a });
                    }
                }
            }
            let k = rank_i64(rows, d.root_system.rank());
            if k != rows.len() {
                out.push(Violation::LatticeRankDeficient {
                    rank: k,
                    expected: rows.len(),
                });
            }
        }
        LatticeSpec::ExplicitRho { .. } => {}
    }

    for (i, ray) in fan.rays.iter().enumerate() {
        let big: Vec<num_bigint::BigInt> = ray.iter().map(|&x| x.into()).collect();
        if gcd_all(&big) != num_bigint::BigInt::from(1) {
            out.push(Violation::RayNotPrimitive { ray: i });
        }
        for j in 0..i {
            let a = primitive_big(&big).unwrap();
            let b: Vec<num_bigint::BigInt> = fan.rays[j].iter().map(|&x| x.into()).collect();
            if primitive_big(&b).unwrap() == a {
                out.push(Violation::DuplicateRay { first: j, second: i });
            }
        }
    }

    for (ci, c) in fan.cones.iter().enumerate() {
        if !c.geometry.is_strictly_convex() {
            out.push(Violation::StrictConvexity { cone: ci });
            continue;
        }
        for k in c.geometry.non_extreme_rays() {
            out.push(Violation::NonExtremeRay { cone: ci, ray: c.rays[k] });
        }
        for a in c.colors.iter() {
            let rho = &d.rho[&a];
            if rho.iter().all(|&x| x == 0) {
                let v = Violation::ZeroRho { color: a };
                if !out.contains(&v) {
                    out.push(v);
                }
            } else if !c.geometry.contains(rho) {
                out.push(Violation::ColorNotInCone { cone: ci, color: a });
            }
        }
    }

    out.extend(fan.assembly_issues.iter().cloned());

    // pairwise intersections of listed cones must be common faces
    let listed: BTreeSet<usize> = fan.listed.iter().copied().collect();
    let listed: Vec<usize> = listed.into_iter().collect();
    for (x, &i) in listed.iter().enumerate() {
        for &j in &listed[x + 1..] {
            let (a, b) = (&fan.cones[i], &fan.cones[j]);
            if !a.geometry.is_strictly_convex() || !b.geometry.is_strictly_convex() {
                continue;
            }
            if !meets_in_common_face(a, b, r) {
                out.push(Violation::FaceIntersection { first: i, second: j });
            }
        }
    }
    out
}

fn meets_in_common_face(a: &FanCone, b: &FanCone, rank: usize) -> bool {
    let inter = double_description(rank, &a.geometry.intersection_constraints(&b.geometry));
    if !inter.lineality.is_empty() {
        return false;
    }
    let is_face_of = |c: &FanCone| -> bool {
        let inside: BTreeSet<usize> = (0..c.rays.len())
            .filter(|&k| {
                let v = &c.geometry.rays()[k];
                a.geometry.contains(v) && b.geometry.contains(v)
            })
            .collect();
        if !c.geometry.faces().contains(&inside) {
            return false;
        }
        // every extreme ray of the intersection must be one of those rays
        inter.rays.iter().all(|w| {
            inside.iter().any(|&k| {
                let v: Vec<num_bigint::BigInt> = c.geometry.rays()[k].iter().map(|&x| x.into()).collect();
                primitive_big(&v).unwrap() == *w
            })
        })
    };
    is_face_of(a) && is_face_of(b)
}

/// Faces of the colored cone with the given index, with induced colors.
pub fn faces(d: &HorosphericalDatum, cone: usize) -> Vec<(Vec<usize>, NodeSubset)> {
    let c = &d.fan.cones[cone];
    c.geometry
        .faces()
        .into_iter()
        .map(|face| {
            let rays: Vec<usize> = face.iter().map(|&k| c.rays[k]).collect();
            let geometry = Cone::new(d.rank(), face.iter().map(|&k| c.geometry.rays()[k].clone()).collect());
            let colors: NodeSubset = c
                .colors
                .iter()
                .filter(|a| geometry.contains(&d.rho[a]))
                .collect();
            (rays, colors)
        })
        .collect()
}

/// A `G`-orbit of the embedding, indexed by its colored cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    pub cone: usize,
    pub dim: usize,
    /// `r - dim σ`
    pub rank_part: usize,
    /// `dim G/P_{I ∪ F}`
    pub flag_part: usize,
    /// Orbits in the closure of this one: cones having this cone as a face.
    pub closure: Vec<usize>,
}

pub fn orbits(d: &HorosphericalDatum) -> Vec<OrbitInfo> {
    let cones = &d.fan.cones;
    cones
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let rank_part = d.rank() - c.dim();
            let flag_part = d.flag_dimension(&d.parabolic.union(&c.colors));
            let closure = (0..cones.len())
                .filter(|&j| j != i && c.rays.iter().all(|x| cones[j].rays.contains(x)))
                .collect();
            OrbitInfo {
                cone: i,
                dim: rank_part + flag_part,
                rank_part,
                flag_part,
                closure,
            }
        })
        .collect()
}

/// Removes every color from every cone.
pub fn decolorize(d: &HorosphericalDatum) -> HorosphericalDatum {
    let fan = FanInput {
        rays: d.input.rays.clone(),
        cones: d
            .input
            .cones
            .iter()
            .map(|c| ConeSpec {
                rays: c.rays.clone(),
                colors: Vec::new(),
            })
            .collect(),
    };
    d.with_fan(fan).expect("removing colors keeps a datum well formed")
}

/// Pulling triangulation on the cone's own rays, as local ray-index sets.
pub fn triangulate(c: &Cone) -> Vec<BTreeSet<usize>> {
    let lattice = c.faces();
    let whole: BTreeSet<usize> = (0..c.rays().len()).collect();
    let mut out = pull(c, &whole, &lattice);
    out.sort();
    out
}

fn pull(c: &Cone, face: &BTreeSet<usize>, lattice: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    if face.len() == c.face_dim(face) {
        return vec![face.clone()];
    }
    let apex = *face.iter().next().unwrap();
    let mut out = Vec::new();
    for g in c.facets_of_face(face, lattice) {
        if g.contains(&apex) {
            continue;
        }
        for mut s in pull(c, &g, lattice) {
            s.insert(apex);
            out.push(s);
        }
    }
    out
}

/// Faces of the triangulation whose relative interiors partition the
/// relative interior of `c`.
pub fn interior_simplices(c: &Cone) -> Vec<BTreeSet<usize>> {
    let mut all: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for s in triangulate(c) {
        let items: Vec<usize> = s.iter().copied().collect();
        for mask in 0u64..(1u64 << items.len()) {
            let sub: BTreeSet<usize> = (0..items.len())
                .filter(|&k| mask & (1 << k) != 0)
                .map(|k| items[k])
                .collect();
            all.insert(sub);
        }
    }
    all.into_iter().filter(|s| !c.in_boundary(s)).collect()
}

/// Pure full-dimensional, every facet shared by exactly two maximal cones,
/// facet-connected.
pub fn is_complete(f: &ColoredFan) -> bool {
    if f.rank == 0 {
        return true;
    }
    let maximal: Vec<&FanCone> = f.maximal().map(|(_, c)| c).collect();
    if maximal.iter().any(|c| c.dim() != f.rank) {
        return false;
    }
    // facet (global rays) -> maximal cones containing it
    let mut shared: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (mi, c) in maximal.iter().enumerate() {
        for facet in c.geometry.facets() {
            let rays: Vec<usize> = facet.rays.iter().map(|&k| c.rays[k]).collect();
            shared.entry(rays).or_default().push(mi);
        }
    }
    if shared.values().any(|v| v.len() != 2) {
        return false;
    }
    let mut comp: Vec<usize> = (0..maximal.len()).collect();
    fn root(comp: &mut [usize], mut x: usize) -> usize {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    }
    for pair in shared.values() {
        let (a, b) = (root(&mut comp, pair[0]), root(&mut comp, pair[1]));
        comp[a] = b;
    }
    let r0 = root(&mut comp, 0);
    (0..maximal.len()).all(|i| root(&mut comp, i) == r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    fn a2_datum(rays: Vec<Vec<i64>>, cones: Vec<(Vec<usize>, Vec<usize>)>) -> HorosphericalDatum {
        HorosphericalDatum::new(
            RootSystem::simple(Family::A, 2).unwrap(),
            NodeSubset::new(),
            LatticeSpec::WeightBasis(vec![vec![1, 0], vec![0, 1]]),
            FanInput {
                rays,
                cones: cones
                    .into_iter()
                    .map(|(rays, colors)| ConeSpec { rays, colors })
                    .collect(),
            },
        )
        .unwrap()
    }

    fn toric(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> HorosphericalDatum {
        let rank = rays.first().map_or(0, |r| r.len());
        HorosphericalDatum::new(
            RootSystem::torus(),
            NodeSubset::new(),
            LatticeSpec::ExplicitRho {
                rank,
                rho: BTreeMap::new(),
            },
            FanInput {
                rays,
                cones: cones
                    .into_iter()
                    .map(|rays| ConeSpec { rays, colors: vec![] })
                    .collect(),
            },
        )
        .unwrap()
    }

    fn quadric() -> HorosphericalDatum {
        a2_datum(vec![vec![1, 0], vec![0, 1]], vec![(vec![0, 1], vec![1, 2])])
    }

    #[test]
    fn rho_examples() {
        let d = quadric();
        assert_eq!(d.rho_of_color(1).unwrap(), &[1, 0]);
        let a3 = HorosphericalDatum::new(
            RootSystem::simple(Family::A, 3).unwrap(),
            [3].into_iter().collect(),
            LatticeSpec::WeightBasis(vec![vec![1, 0, 0], vec![0, 1, 0]]),
            FanInput::default(),
        )
        .unwrap();
        assert_eq!(a3.rho_of_color(2).unwrap(), &[0, 1]);
        assert_eq!(a3.rho_of_color(3), Err(DatumError::InvalidColor(3)));
    }

    #[test]
    fn zero_rho_is_flagged() {
        let d = HorosphericalDatum::new(
            RootSystem::simple(Family::A, 2).unwrap(),
            NodeSubset::new(),
            LatticeSpec::WeightBasis(vec![vec![1, 0]]),
            FanInput {
                rays: vec![vec![1]],
                cones: vec![ConeSpec { rays: vec![0], colors: vec![2] }],
            },
        )
        .unwrap();
        assert_eq!(d.rho_of_color(2).unwrap(), &[0]);
        assert!(validate_fan(&d).contains(&Violation::ZeroRho { color: 2 }));
    }

    #[test]
    fn quadric_is_valid() {
        let d = quadric();
        assert!(validate_fan(&d).is_empty());
        assert_eq!(d.fan().cones().len(), 4);
        assert_eq!(faces(&d, 3).len(), 4);
    }

    #[test]
    fn line_violates_convexity() {
        let d = toric(vec![vec![1, 0], vec![-1, 0]], vec![vec![0, 1]]);
        let v = validate_fan(&d);
        assert!(v.iter().any(|x| x.code() == "StrictConvexity"), "{v:?}");
    }

    #[test]
    fn improper_overlap_is_flagged() {
        let d = toric(
            vec![vec![1, 0], vec![1, 2], vec![1, 1], vec![0, 1]],
            vec![vec![0, 1], vec![2, 3]],
        );
        let v = validate_fan(&d);
        assert!(v.iter().any(|x| x.code() == "FaceIntersection"), "{v:?}");
    }

    #[test]
    fn proper_neighbours_pass() {
        let d = toric(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]);
        assert!(validate_fan(&d).is_empty());
        assert!(is_complete(d.fan()));
    }

    #[test]
    fn color_outside_cone() {
        let d = a2_datum(vec![vec![1, 0], vec![1, 1]], vec![(vec![0, 1], vec![2])]);
        assert!(validate_fan(&d).contains(&Violation::ColorNotInCone { cone: 3, color: 2 }));
    }

    #[test]
    fn inconsistent_induced_colors() {
        // the shared ray (0,1) is colored in one cone and not in the other
        let d = a2_datum(
            vec![vec![1, 0], vec![0, 1], vec![-1, 0]],
            vec![(vec![0, 1], vec![2]), (vec![1, 2], vec![])],
        );
        assert!(validate_fan(&d).iter().any(|v| v.code() == "InducedColors"));
    }

    #[test]
    fn non_primitive_and_duplicate_rays() {
        let d = toric(vec![vec![2, 4], vec![1, 2]], vec![vec![0], vec![1]]);
        let v = validate_fan(&d);
        assert!(v.contains(&Violation::RayNotPrimitive { ray: 0 }));
        assert!(v.contains(&Violation::DuplicateRay { first: 0, second: 1 }));
    }

    #[test]
    fn lattice_must_be_orthogonal_to_parabolic() {
        let d = HorosphericalDatum::new(
            RootSystem::simple(Family::A, 3).unwrap(),
            [3].into_iter().collect(),
            LatticeSpec::WeightBasis(vec![vec![1, 0, 1], vec![0, 1, 0]]),
            FanInput::default(),
        )
        .unwrap();
        assert!(validate_fan(&d).contains(&Violation::LatticeNotOrthogonal { row: 0, node: 3 }));
    }

    #[test]
    fn structural_errors() {
        let e = HorosphericalDatum::new(
            RootSystem::simple(Family::A, 2).unwrap(),
            [1].into_iter().collect(),
            LatticeSpec::WeightBasis(vec![vec![0, 1]]),
            FanInput {
                rays: vec![vec![1]],
                cones: vec![ConeSpec { rays: vec![0], colors: vec![1] }],
            },
        );
        assert_eq!(e, Err(DatumError::InvalidColor(1)));
        let e = HorosphericalDatum::new(
            RootSystem::torus(),
            NodeSubset::new(),
            LatticeSpec::ExplicitRho { rank: 1, rho: BTreeMap::new() },
            FanInput {
                rays: vec![vec![1]],
                cones: vec![ConeSpec { rays: vec![3], colors: vec![] }],
            },
        );
        assert_eq!(e, Err(DatumError::RayIndex { cone: 0, ray: 3 }));
    }

    #[test]
    fn orbit_dimensions_of_quadric() {
        let d = quadric();
        let mut dims: Vec<usize> = orbits(&d).iter().map(|o| o.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![0, 3, 3, 5]);
        let o = orbits(&d);
        // the open orbit's closure contains every other orbit
        assert_eq!(o[0].closure.len(), 3);
        assert!(o[3].closure.is_empty());
    }

    #[test]
    fn zero_cone_only_fan() {
        let d = a2_datum(vec![], vec![]);
        let o = orbits(&d);
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].dim, d.dimension());
        assert!(!is_complete(d.fan()));
    }

    #[test]
    fn decolorize_keeps_cones() {
        let d = quadric();
        let u = decolorize(&d);
        assert!(u.fan().is_toroidal());
        assert_eq!(u.fan().cones().len(), d.fan().cones().len());
        assert_eq!(decolorize(&u), u);
    }

    #[test]
    fn triangulations() {
        let simplex = Cone::new(2, vec![vec![1, 0], vec![1, 3]]);
        assert_eq!(triangulate(&simplex).len(), 1);
        let square = Cone::new(3, vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]]);
        let t = triangulate(&square);
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|s| s.len() == 3));
        // two triangles, plus the diagonal that separates them
        let interior = interior_simplices(&square);
        assert_eq!(interior.len(), 3);
    }

    #[test]
    fn one_dimensional_complete_fan() {
        let d = toric(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]);
        assert!(validate_fan(&d).is_empty());
        assert!(is_complete(d.fan()));
    }

    #[test]
    fn single_quadrant_is_not_complete() {
        assert!(!is_complete(quadric().fan()));
    }
}
