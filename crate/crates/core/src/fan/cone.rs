//! Rational polyhedral cones given by ray generators, with their facet
//! description and face lattice.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd::double_description;
use crate::zlinalg::{dot, rank, rank_i64};

/// A facet: inward normal (nonnegative on the cone) and the rays lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub rays: BTreeSet<usize>,
}

/// Cone generated by lattice vectors in `Z^ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Vec<i64>>,
    dim: usize,
    facets: Vec<Facet>,
    /// Basis of the annihilator of the linear span.
    equations: Vec<Vec<BigInt>>,
    lineality_dim: usize,
}

impl Cone {
    pub fn new(ambient: usize, rays: Vec<Vec<i64>>) -> Self {
        assert!(rays.iter().all(|r| r.len() == ambient), "ray length must match the ambient rank");
        let cons: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let dual = double_description(ambient, &cons);
        let facets: Vec<Facet> = dual
            .rays
            .into_iter()
            .map(|u| {
                let on: BTreeSet<usize> = (0..rays.len()).filter(|&i| dot(&u, &rays[i]).is_zero()).collect();
                Facet { normal: u, rays: on }
            })
            .collect();
        let dim = rank_i64(&rays, ambient);
        let mut all: Vec<Vec<BigInt>> = dual.lineality.clone();
        all.extend(facets.iter().map(|f| f.normal.clone()));
        let lineality_dim = ambient - rank(&all, ambient);
        Cone {
            ambient,
            rays,
            dim,
            facets,
            equations: dual.lineality,
            lineality_dim,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Cone::new(ambient, Vec::new())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// Contains no line.
    pub fn is_strictly_convex(&self) -> bool {
        self.lineality_dim == 0
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim == self.rays.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(&f.normal, v).is_negative())
    }

    pub fn contains_in_relative_interior(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| dot(&f.normal, v).is_positive())
    }

    fn rank_of(&self, set: &BTreeSet<usize>) -> usize {
        let rows: Vec<Vec<i64>> = set.iter().map(|&i| self.rays[i].clone()).collect();
        rank_i64(&rows, self.ambient)
    }

    /// All faces as ray-index sets, including the cone itself and (for a
    /// pointed cone) the zero face. Sorted by dimension, then lexicographically.
    pub fn faces(&self) -> Vec<BTreeSet<usize>> {
        let whole: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::from([whole.clone()]);
        let mut queue = vec![whole];
        while let Some(face) = queue.pop() {
            for f in &self.facets {
                let sub: BTreeSet<usize> = face.intersection(&f.rays).copied().collect();
                if seen.insert(sub.clone()) {
                    queue.push(sub);
                }
            }
        }
        let mut out: Vec<(usize, BTreeSet<usize>)> =
            seen.into_iter().map(|s| (self.rank_of(&s), s)).collect();
        out.sort();
        out.into_iter().map(|(_, s)| s).collect()
    }

    /// Dimension of the face spanned by the given rays.
    pub fn face_dim(&self, face: &BTreeSet<usize>) -> usize {
        self.rank_of(face)
    }

    /// Rays that are not 1-dimensional faces.
    pub fn non_extreme_rays(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| {
                let mut minimal: BTreeSet<usize> = (0..self.rays.len()).collect();
                for f in self.facets.iter().filter(|f| f.rays.contains(&i)) {
                    minimal = minimal.intersection(&f.rays).copied().collect();
                }
                self.rank_of(&minimal) != 1
            })
            .collect()
    }

    /// True iff every ray of `face` lies on a common facet (so the face is in the boundary).
    pub fn in_boundary(&self, face: &BTreeSet<usize>) -> bool {
        self.facets.iter().any(|f| face.is_subset(&f.rays))
    }

    /// Faces of dimension `dim - 1` contained in the given face.
    pub fn facets_of_face(&self, face: &BTreeSet<usize>, lattice: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
        let d = self.rank_of(face);
        lattice
            .iter()
            .filter(|g| g.is_subset(face) && *g != face && self.rank_of(g) + 1 == d)
            .cloned()
            .collect()
    }

    /// H-representation of the intersection with another cone: the
    /// inequalities of both, with each equation written as two inequalities.
    pub fn intersection_constraints(&self, other: &Cone) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for c in [self, other] {
            out.extend(c.facets.iter().map(|f| f.normal.clone()));
            for e in &c.equations {
                out.push(e.clone());
                out.push(e.iter().map(|x| -x).collect());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant() {
        let c = Cone::new(2, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(c.dim(), 2);
        assert!(c.is_strictly_convex());
        assert!(c.is_simplicial());
        assert_eq!(c.facets().len(), 2);
        assert_eq!(c.faces().len(), 4);
        assert!(c.contains(&[3, 0]));
        assert!(!c.contains(&[-1, 1]));
        assert!(c.contains_in_relative_interior(&[1, 1]));
        assert!(!c.contains_in_relative_interior(&[1, 0]));
    }

    #[test]
    fn zero_cone() {
        let c = Cone::zero(3);
        assert_eq!(c.dim(), 0);
        assert_eq!(c.faces(), vec![BTreeSet::new()]);
        assert!(c.contains(&[0, 0, 0]));
        assert!(!c.contains(&[0, 1, 0]));
        assert!(c.contains_in_relative_interior(&[0, 0, 0]));
    }

    #[test]
    fn line_is_not_strictly_convex() {
        let c = Cone::new(2, vec![vec![1, 0], vec![-1, 0]]);
        assert!(!c.is_strictly_convex());
        let h = Cone::new(2, vec![vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert!(!h.is_strictly_convex());
    }

    #[test]
    fn square_cone_faces() {
        let c = Cone::new(3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]]);
        assert_eq!(c.dim(), 3);
        assert!(!c.is_simplicial());
        assert_eq!(c.facets().len(), 4);
        // 0, 4 rays, 4 edges, itself
        assert_eq!(c.faces().len(), 10);
        assert!(c.non_extreme_rays().is_empty());
    }

    #[test]
    fn simplicial_3d_has_boolean_lattice() {
        let c = Cone::new(3, vec![vec![1, 0, 0], vec![1, 2, 0], vec![0, 1, 3]]);
        assert_eq!(c.faces().len(), 8);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = Cone::new(3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.equations().len(), 1);
        assert_eq!(c.faces().len(), 4);
        assert!(c.contains(&[2, 5, 0]));
        assert!(!c.contains(&[2, 5, 1]));
    }

    #[test]
    fn detects_interior_generator() {
        let c = Cone::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(c.non_extreme_rays(), vec![1]);
    }
}
