//! Worked data used by tests, benchmarks and documentation.

use std::collections::BTreeMap;

use crate::fan::{ConeSpec, FanInput, HorosphericalDatum, LatticeSpec};
use crate::roots::{Family, NodeSubset, RootSystem};

fn cones(list: &[(&[usize], &[usize])]) -> Vec<ConeSpec> {
    list.iter()
        .map(|(r, c)| ConeSpec {
            rays: r.to_vec(),
            colors: c.to_vec(),
        })
        .collect()
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

/// Affine quadric cone of dimension 5: `SL3 / U` with both colors on a quadrant.
pub fn quadric_cone() -> HorosphericalDatum {
    HorosphericalDatum::new(
        RootSystem::simple(Family::A, 2).unwrap(),
        NodeSubset::new(),
        LatticeSpec::WeightBasis(identity(2)),
        FanInput {
            rays: identity(2),
            cones: cones(&[(&[0, 1], &[1, 2])]),
        },
    )
    .unwrap()
}

/// `SL4` with `I = {3}`, lattice spanned by the first two fundamental weights.
pub fn grassmannian_cone() -> HorosphericalDatum {
    HorosphericalDatum::new(
        RootSystem::simple(Family::A, 3).unwrap(),
        [3].into_iter().collect(),
        LatticeSpec::WeightBasis(vec![vec![1, 0, 0], vec![0, 1, 0]]),
        FanInput {
            rays: identity(2),
            cones: cones(&[(&[0, 1], &[1, 2])]),
        },
    )
    .unwrap()
}

fn triangle_fan() -> FanInput {
    FanInput {
        rays: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        cones: cones(&[(&[0, 1], &[1, 2]), (&[1, 2], &[2]), (&[0, 2], &[1])]),
    }
}

/// Complete locally factorial compactification of [`quadric_cone`].
pub fn quadric_completion() -> HorosphericalDatum {
    quadric_cone().with_fan(triangle_fan()).unwrap()
}

/// Complete locally factorial compactification of [`grassmannian_cone`].
pub fn grassmannian_completion() -> HorosphericalDatum {
    grassmannian_cone().with_fan(triangle_fan()).unwrap()
}

/// A toric datum (`S = ∅`) on the given rays and cones.
pub fn toric(rank: usize, rays: Vec<Vec<i64>>, cone_rays: Vec<Vec<usize>>) -> HorosphericalDatum {
    HorosphericalDatum::new(
        RootSystem::torus(),
        NodeSubset::new(),
        LatticeSpec::ExplicitRho {
            rank,
            rho: BTreeMap::new(),
        },
        FanInput {
            rays,
            cones: cone_rays
                .into_iter()
                .map(|rays| ConeSpec { rays, colors: vec![] })
                .collect(),
        },
    )
    .unwrap()
}

/// The `A_1` surface singularity `cone((1,0),(1,2))`.
pub fn a1_singularity() -> HorosphericalDatum {
    toric(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]])
}

/// Affine `r`-space as the toric variety of the positive orthant.
pub fn affine_space(r: usize) -> HorosphericalDatum {
    toric(r, identity(r), vec![(0..r).collect()])
}

/// Simple datum on a simple group: `M` spanned by `ϖ_α` for `α ∉ I`, the
/// cone spanned by the (standard-basis) ϱ's, colored by `colors`.
pub fn standard_cone(family: Family, rank: usize, parabolic: &NodeSubset, colors: &NodeSubset) -> HorosphericalDatum {
    let rs = RootSystem::simple(family, rank).unwrap();
    let free: Vec<usize> = rs.nodes().difference(parabolic).iter().collect();
    let basis: Vec<Vec<i64>> = free
        .iter()
        .map(|&a| (1..=rank).map(|j| i64::from(j == a)).collect())
        .collect();
    let r = free.len();
    let cone_colors: Vec<usize> = colors.iter().collect();
    HorosphericalDatum::new(
        rs,
        parabolic.clone(),
        LatticeSpec::WeightBasis(basis),
        FanInput {
            rays: identity(r),
            cones: vec![ConeSpec {
                rays: (0..r).collect(),
                colors: cone_colors,
            }],
        },
    )
    .unwrap()
}

/// Natural representation of `SL_{ℓ+1}` (`family = A`) or `Sp_{2ℓ}` (`family = C`):
/// `I = S ∖ {β1}` with the single color `β1`.
pub fn standard_representation(family: Family, rank: usize) -> HorosphericalDatum {
    let parabolic: NodeSubset = (2..=rank).collect();
    standard_cone(family, rank, &parabolic, &[1].into_iter().collect())
}
