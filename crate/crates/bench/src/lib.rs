//! Inputs shared by the benchmarks.

use horocalc_core::catalog::{standard_cone, toric};
use horocalc_core::roots::Family;
use horocalc_core::{HorosphericalDatum, NodeSubset};

/// A simplicial cone with a large fundamental parallelepiped.
pub fn wide_simplicial_cone() -> HorosphericalDatum {
    toric(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![3, 5, 17]], vec![vec![0, 1, 2]])
}

/// Cone over a hexagon at height one, triangulated before summation.
pub fn hexagon_cone() -> HorosphericalDatum {
    let rays = vec![
        vec![1, 0, 1],
        vec![1, 1, 1],
        vec![0, 1, 1],
        vec![-1, 0, 1],
        vec![-1, -1, 1],
        vec![0, -1, 1],
    ];
    toric(3, rays, vec![(0..6).collect()])
}

/// Rank-5 simple datum with two colors.
pub fn rank_five() -> HorosphericalDatum {
    let parabolic: NodeSubset = [2, 4].into_iter().collect();
    let colors: NodeSubset = [1, 5].into_iter().collect();
    standard_cone(Family::D, 5, &parabolic, &colors)
}
