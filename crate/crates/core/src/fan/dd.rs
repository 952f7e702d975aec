//! Double description: generators of `{x : a·x >= 0 for every constraint a}`.
//!
//! Incremental Motzkin scheme with the combinatorial adjacency test. Lineality
//! is carried separately so non-pointed intermediate cones are handled
//! exactly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::zlinalg::primitive_big;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    /// Basis of the lineality space.
    pub lineality: Vec<Vec<BigInt>>,
    /// Extreme rays modulo the lineality space, each primitive.
    pub rays: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `s * u - t * v`, made primitive.
fn combine(s: &BigInt, u: &[BigInt], t: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    let w: Vec<BigInt> = u.iter().zip(v).map(|(x, y)| s * x - t * y).collect();
    primitive_big(&w).unwrap_or(w)
}

struct Ray {
    v: Vec<BigInt>,
    tight: BTreeSet<usize>,
}

pub fn double_description(dim: usize, constraints: &[Vec<BigInt>]) -> Generators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(p) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(p);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = dot(a, l);
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &l0);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v);
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &l0);
                }
                r.tight.insert(k);
            }
            rays.push(Ray {
                v: l0,
                tight: (0..k).collect(),
            });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    r.tight.insert(k);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &pi in &pos {
            for &ni in &neg {
                let common: BTreeSet<usize> =
                    rays[pi].tight.intersection(&rays[ni].tight).copied().collect();
                let blocked = (0..rays.len())
                    .any(|j| j != pi && j != ni && common.is_subset(&rays[j].tight));
                if blocked {
                    continue;
                }
                let v = combine(&vals[pi], &rays[ni].v, &vals[ni], &rays[pi].v);
                let mut tight = common;
                tight.insert(k);
                fresh.push(Ray { v, tight });
            }
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight.insert(k);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }

    Generators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}
