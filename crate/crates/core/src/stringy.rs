//! The invariant pipeline: the piecewise-linear canonical function ω, lattice
//! sums over cones, stringy and ordinary E-functions, Euler numbers, the
//! weighted Stanley–Reisner series, and the smoothness ladder.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::fan::{interior_simplices, is_complete, Cone, HorosphericalDatum};
use crate::qfun::{Exponent, QError, QPoly, QRat};
use crate::roots::{ChainShape, NodeSubset};
use crate::zlinalg::{dot_rat, is_partial_basis, saturation_basis, smith_decomposition, solve_rational, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringyError {
    #[error("not Q-Gorenstein (cone {cone}): {witness}")]
    NotQGorenstein { cone: usize, witness: String },
    #[error("ω is not negative on ray {ray}; the lattice sum diverges")]
    NonNegativeWeight { ray: usize },
    #[error("the fan is not complete")]
    NotComplete,
    #[error("cone {0} is not locally factorial")]
    NotLocallyFactorial(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Q(#[from] QError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// ω as one rational covector per maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaFunction {
    covectors: BTreeMap<usize, Vec<BigRational>>,
    gorenstein_index: BigInt,
}

impl OmegaFunction {
    /// Covector of a maximal cone (by index into the fan's cone list).
    pub fn covector(&self, maximal: usize) -> Option<&[BigRational]> {
        self.covectors.get(&maximal).map(Vec::as_slice)
    }

    pub fn covectors(&self) -> &BTreeMap<usize, Vec<BigRational>> {
        &self.covectors
    }

    /// Smallest `m` with `m ω` integral on `N`.
    pub fn gorenstein_index(&self) -> &BigInt {
        &self.gorenstein_index
    }

    /// Covector valid on any cone of the fan (that of a maximal cone containing it).
    pub fn on_cone<'a>(&'a self, d: &HorosphericalDatum, cone: usize) -> &'a [BigRational] {
        &self.covectors[&d.fan().cones()[cone].parent()]
    }

    /// `ω(e_i)` for a used ray.
    pub fn ray_value(&self, d: &HorosphericalDatum, ray: usize) -> Option<BigRational> {
        let fan = d.fan();
        let c = fan.find(&[ray])?;
        Some(dot_rat(self.on_cone(d, c), &fan.rays()[ray]))
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Constraints `⟨m, v⟩ = c` of one cone: uncolored rays go to -1, colors to -a_α.
fn cone_constraints(d: &HorosphericalDatum, cone: usize) -> Result<Vec<(Vec<i64>, i64, String)>, StringyError> {
    let fan = d.fan();
    let c = &fan.cones()[cone];
    let rs = d.root_system();
    let mut out = Vec::new();
    for &ray in c.rays() {
        let v = &fan.rays()[ray];
        let colored = fan
            .find(&[ray])
            .map(|i| !fan.cones()[i].colors().is_empty())
            .unwrap_or(false);
        if !colored {
            out.push((v.clone(), -1, format!("ray {ray}")));
        }
    }
    for a in c.colors().iter() {
        let rho = d
            .rho_of_color(a)
            .map_err(|e| StringyError::Internal(e.to_string()))?
            .to_vec();
        let aa = rs
            .a_alpha(d.parabolic(), a)
            .map_err(|e| StringyError::Internal(e.to_string()))?;
        out.push((rho, -aa, format!("color {a}")));
    }
    Ok(out)
}

/// Builds ω from the per-cone conditions and checks continuity across cones.
pub fn compute_omega(d: &HorosphericalDatum) -> Result<OmegaFunction, StringyError> {
    let fan = d.fan();
    let r = d.rank();
    let mut covectors = BTreeMap::new();
    for &mi in fan.maximal_indices() {
        let cons = cone_constraints(d, mi)?;
        let rows: Vec<Vec<i64>> = cons.iter().map(|c| c.0.clone()).collect();
        let rhs: Vec<BigRational> = cons.iter().map(|c| rat(c.1)).collect();
        let sol = if r == 0 {
            Some(Vec::new())
        } else {
            let a = IntMatrix::from_rows(&rows, r).map_err(|e| StringyError::Internal(e.to_string()))?;
            solve_rational(&a, &rhs)
        };
        let Some(sol) = sol else {
            return Err(StringyError::NotQGorenstein {
                cone: mi,
                witness: witness(&cons),
            });
        };
        covectors.insert(mi, sol);
    }

    // continuity: covectors agree on every ray two maximal cones share
    let maximal = fan.maximal_indices();
    for (x, &i) in maximal.iter().enumerate() {
        for &j in &maximal[x + 1..] {
            for &ray in fan.cones()[i].rays() {
                if !fan.cones()[j].rays().contains(&ray) {
                    continue;
                }
                let v = &fan.rays()[ray];
                if dot_rat(&covectors[&i], v) != dot_rat(&covectors[&j], v) {
                    return Err(StringyError::NotQGorenstein {
                        cone: j,
                        witness: format!("cones {i} and {j} assign different values to shared ray {ray}"),
                    });
                }
            }
        }
    }

    let mut index = BigInt::one();
    for (&mi, cv) in &covectors {
        let rays: Vec<Vec<i64>> = fan.cones()[mi].rays().iter().map(|&k| fan.rays()[k].clone()).collect();
        for b in saturation_basis(&rays, r) {
            let v: BigRational = cv
                .iter()
                .zip(&b)
                .map(|(x, y)| x * BigRational::from_integer(y.clone()))
                .fold(BigRational::zero(), |a, t| a + t);
            index = index.lcm(v.denom());
        }
    }
    Ok(OmegaFunction {
        covectors,
        gorenstein_index: index,
    })
}

fn witness(cons: &[(Vec<i64>, i64, String)]) -> String {
    for (x, a) in cons.iter().enumerate() {
        for b in &cons[x + 1..] {
            if a.0 == b.0 && a.1 != b.1 {
                return format!(
                    "{} and {} share the vector {:?} but require values {} and {}",
                    a.2, b.2, a.0, a.1, b.1
                );
            }
        }
    }
    let labels: Vec<&str> = cons.iter().map(|c| c.2.as_str()).collect();
    format!("no linear function takes the prescribed values on {}", labels.join(", "))
}

/// `q^e` for a rational exponent.
fn q_power(e: &BigRational) -> QPoly {
    let n = e.numer().to_i64().expect("exponent fits in i64");
    let m = e.denom().to_u64().expect("exponent denominator fits in u64");
    QPoly::monomial(BigInt::one(), n, m)
}

/// `Σ_{n ∈ relint(c) ∩ N} q^{ω(n)}`.
pub fn cone_interior_sum(c: &Cone, omega: &[BigRational]) -> Result<QRat, StringyError> {
    if c.rays().is_empty() {
        return Ok(QRat::one());
    }
    let weights: Vec<BigRational> = c.rays().iter().map(|e| dot_rat(omega, e)).collect();
    if let Some(k) = weights.iter().position(|w| !w.is_negative()) {
        return Err(StringyError::NonNegativeWeight { ray: k });
    }
    if c.is_simplicial() {
        return Ok(simplicial_interior(c.rays(), &weights));
    }
    let mut total = QRat::zero();
    for s in interior_simplices(c) {
        let rays: Vec<Vec<i64>> = s.iter().map(|&k| c.rays()[k].clone()).collect();
        let w: Vec<BigRational> = s.iter().map(|&k| weights[k].clone()).collect();
        total = &total + &simplicial_interior(&rays, &w);
    }
    Ok(total)
}

/// Box-point decomposition for linearly independent rays with weights `ω(e_i)`.
fn simplicial_interior(rays: &[Vec<i64>], weights: &[BigRational]) -> QRat {
    let k = rays.len();
    if k == 0 {
        return QRat::one();
    }
    let mut num = QPoly::zero();
    for lambda in box_coordinates(rays) {
        let w: BigRational = lambda
            .iter()
            .zip(weights)
            .map(|(l, w)| l * w)
            .fold(BigRational::zero(), |a, t| a + t);
        num = &num + &q_power(&w);
    }
    let den = weights.iter().fold(QPoly::one(), |acc, w| &acc * &(&QPoly::one() - &q_power(w)));
    QRat::new(num, den).expect("box denominator is nonzero")
}

/// Coefficients `λ ∈ (0,1]^k` of the lattice points `Σ λ_i e_i` in the half-open box.
pub fn box_coordinates(rays: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let k = rays.len();
    let cols = rays[0].len();
    let v = IntMatrix::from_rows(rays, cols).expect("rays share a length");
    let snf = smith_decomposition(&v);
    let diag: Vec<BigInt> = snf.diagonal[..k].to_vec();
    assert!(diag.iter().all(|x| !x.is_zero()), "box points need independent rays");
    // n = λ V with n W = μ D, λ = μ U; n integral iff μ_i d_i integral
    let mut out = Vec::new();
    let mut digits = vec![BigInt::zero(); k];
    loop {
        let mu: Vec<BigRational> = (0..k)
            .map(|i| BigRational::new(digits[i].clone(), diag[i].clone()))
            .collect();
        let lambda: Vec<BigRational> = (0..k)
            .map(|j| {
                let s = (0..k)
                    .map(|i| &mu[i] * BigRational::from_integer(snf.left.get(i, j).clone()))
                    .fold(BigRational::zero(), |a, t| a + t);
                let f = &s - s.floor();
                if f.is_zero() {
                    BigRational::one()
                } else {
                    f
                }
            })
            .collect();
        out.push(lambda);
        // mixed-radix increment
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            digits[i] += 1;
            if digits[i] < diag[i] {
                break;
            }
            digits[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// `Σ_{n ∈ |Σ| ∩ N} q^{ω(n)}`, summed over relative interiors of all cones.
pub fn lattice_sum(d: &HorosphericalDatum, omega: &OmegaFunction) -> Result<QRat, StringyError> {
    let mut total = QRat::zero();
    for (i, c) in d.fan().cones().iter().enumerate() {
        let part = cone_interior_sum(c.geometry(), omega.on_cone(d, i)).map_err(|e| match e {
            StringyError::NonNegativeWeight { ray } => StringyError::NonNegativeWeight { ray: c.rays()[ray] },
            other => other,
        })?;
        total = &total + &part;
    }
    Ok(total)
}

/// `E(G/H) = P_{G/P_I}(q) · (q-1)^r`.
pub fn e_homogeneous(d: &HorosphericalDatum) -> QPoly {
    let p = d
        .root_system()
        .coset_poincare(d.parabolic())
        .expect("parabolic subset was validated");
    &p * &QPoly::from_coeffs([-1, 1]).pow(d.rank() as u32)
}

pub fn stringy_e(d: &HorosphericalDatum) -> Result<QRat, StringyError> {
    let omega = compute_omega(d)?;
    stringy_e_with(d, &omega)
}

pub fn stringy_e_with(d: &HorosphericalDatum, omega: &OmegaFunction) -> Result<QRat, StringyError> {
    Ok(&QRat::from_poly(e_homogeneous(d)) * &lattice_sum(d, omega)?)
}

/// Sum over orbits of `P_{G/P_{I∪F}}(q) · (q-1)^{r - dim σ}`.
pub fn e_polynomial(d: &HorosphericalDatum) -> QPoly {
    let rs = d.root_system();
    d.fan().cones().iter().fold(QPoly::zero(), |acc, c| {
        let p = rs
            .coset_poincare(&d.parabolic().union(c.colors()))
            .expect("colors lie outside I");
        let t = QPoly::from_coeffs([-1, 1]).pow((d.rank() - c.dim()) as u32);
        &acc + &(&p * &t)
    })
}

/// Closed forms `(|W|/(|W_I| ∏ a_α), |W|/|W_{I∪F}|)`, which apply to simple
/// locally factorial data whose cone is full-dimensional.
pub fn closed_form_euler(d: &HorosphericalDatum) -> Option<(BigRational, BigInt)> {
    let fan = d.fan();
    if fan.maximal_indices().len() != 1 || !check_locally_factorial(d).holds {
        return None;
    }
    let c = &fan.cones()[fan.maximal_indices()[0]];
    if c.dim() != d.rank() {
        return None;
    }
    let rs = d.root_system();
    let w = rs.weyl_order(&rs.nodes());
    let wi = rs.weyl_order(d.parabolic());
    let prod: BigInt = c
        .colors()
        .iter()
        .map(|a| BigInt::from(rs.a_alpha(d.parabolic(), a).unwrap()))
        .product();
    let e_st = BigRational::new(w.clone(), wi * prod);
    let e = &w / rs.weyl_order(&d.parabolic().union(c.colors()));
    Some((e_st, e))
}

pub fn stringy_euler(d: &HorosphericalDatum) -> Result<BigRational, StringyError> {
    let v = stringy_e(d)?.eval_at_one()?;
    if let Some((closed, _)) = closed_form_euler(d) {
        if closed != v {
            return Err(StringyError::Internal(format!(
                "stringy Euler number {v} disagrees with the closed form {closed}"
            )));
        }
    }
    Ok(v)
}

pub fn euler(d: &HorosphericalDatum) -> Result<BigInt, StringyError> {
    let v = e_polynomial(d).eval_at_one();
    if let Some((_, closed)) = closed_form_euler(d) {
        if closed != v {
            return Err(StringyError::Internal(format!(
                "Euler number {v} disagrees with the closed form {closed}"
            )));
        }
    }
    Ok(v)
}

/// `Σ_{σ ∈ Σ} ∏_{e_i ∈ σ} t^{a_i}/(1 - t^{a_i})` with `a_i = -ω(e_i)`, as a
/// function of `t` (written in the same variable as every other QRat).
pub fn weighted_sr_poincare(d: &HorosphericalDatum) -> Result<QRat, StringyError> {
    if d.rank() > 0 && !is_complete(d.fan()) {
        return Err(StringyError::NotComplete);
    }
    let lf = check_locally_factorial(d);
    if let Some(bad) = lf.cones.iter().find(|c| !c.holds()) {
        return Err(StringyError::NotLocallyFactorial(bad.cone));
    }
    let omega = compute_omega(d)?;
    let weight: BTreeMap<usize, BigRational> = d
        .fan()
        .used_rays()
        .into_iter()
        .map(|k| (k, -omega.ray_value(d, k).expect("used ray is a cone")))
        .collect();
    let mut total = QRat::zero();
    for c in d.fan().cones() {
        let mut term = QRat::one();
        for k in c.rays() {
            let t = q_power(&weight[k]);
            let f = QRat::new(t.clone(), &QPoly::one() - &t)?;
            term = &term * &f;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Locally-factorial diagnostics for one maximal cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialityCheck {
    pub cone: usize,
    /// (L1): distinct colors have distinct ϱ.
    pub injective: bool,
    /// (L2): rays together with the ϱ_α form part of a basis of N.
    pub partial_basis: bool,
    /// every ϱ_α is a ray generator of the cone.
    pub rho_are_rays: bool,
}

impl FactorialityCheck {
    pub fn holds(&self) -> bool {
        self.injective && self.partial_basis && self.rho_are_rays
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialityVerdict {
    pub holds: bool,
    pub cones: Vec<FactorialityCheck>,
}

pub fn check_locally_factorial(d: &HorosphericalDatum) -> FactorialityVerdict {
    let fan = d.fan();
    let cones: Vec<FactorialityCheck> = fan
        .maximal_indices()
        .iter()
        .map(|&mi| {
            let c = &fan.cones()[mi];
            let rays: Vec<Vec<i64>> = c.rays().iter().map(|&k| fan.rays()[k].clone()).collect();
            let rhos: Vec<Vec<i64>> = c
                .colors()
                .iter()
                .map(|a| d.rho_of_color(a).expect("colors lie outside I").to_vec())
                .collect();
            let distinct: BTreeSet<&Vec<i64>> = rhos.iter().collect();
            let injective = distinct.len() == rhos.len();
            let rho_are_rays = rhos.iter().all(|r| rays.contains(r));
            let mut gens: Vec<Vec<i64>> = rays.clone();
            for r in &rhos {
                if !gens.contains(r) {
                    gens.push(r.clone());
                }
            }
            let partial_basis = is_partial_basis(&gens).unwrap_or(false);
            FactorialityCheck {
                cone: mi,
                injective,
                partial_basis,
                rho_are_rays,
            }
        })
        .collect();
    FactorialityVerdict {
        holds: cones.iter().all(FactorialityCheck::holds),
        cones,
    }
}

/// Why one connected component of `Γ_{I∪F}` breaks the smoothness pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFailure {
    pub component: NodeSubset,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCheck {
    pub cone: usize,
    pub colors: NodeSubset,
    pub failures: Vec<PatternFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothVerdict {
    pub holds: bool,
    pub locally_factorial: bool,
    pub cones: Vec<PatternCheck>,
}

/// Components of `Γ_{I∪F}` that break the smoothness pattern for these colors.
pub fn dynkin_pattern(d: &HorosphericalDatum, colors: &NodeSubset) -> Vec<PatternFailure> {
    let rs = d.root_system();
    let mut out = Vec::new();
    for comp in rs.components_of(&d.parabolic().union(colors)) {
        let here = comp.intersection(colors);
        if here.is_empty() {
            continue;
        }
        let fail = |reason: &str| PatternFailure {
            component: comp.clone(),
            reason: reason.to_string(),
        };
        if here.len() > 1 {
            out.push(fail("more than one color in the component"));
            continue;
        }
        let f = here.iter().next().unwrap();
        match rs.chain_shape(&comp) {
            ChainShape::TypeA(path) => {
                if path[0] != f && *path.last().unwrap() != f {
                    out.push(fail("type A component with the color not at an end"));
                }
            }
            ChainShape::TypeC(path) => {
                if path[0] != f {
                    out.push(fail("type C component with the color not at the simple end"));
                }
            }
            ChainShape::Other => out.push(fail("colored component is neither of type A nor of type C")),
        }
    }
    out
}

pub fn check_smooth(d: &HorosphericalDatum) -> SmoothVerdict {
    let lf = check_locally_factorial(d).holds;
    let fan = d.fan();
    let cones: Vec<PatternCheck> = fan
        .maximal_indices()
        .iter()
        .map(|&mi| {
            let colors = fan.cones()[mi].colors().clone();
            PatternCheck {
                cone: mi,
                failures: dynkin_pattern(d, &colors),
                colors,
            }
        })
        .collect();
    SmoothVerdict {
        holds: lf && cones.iter().all(|c| c.failures.is_empty()),
        locally_factorial: lf,
        cones,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringySmoothness {
    pub e_st: BigRational,
    pub e: BigInt,
    pub equal: bool,
    /// Verdict of the Dynkin-pattern test on the same datum.
    pub pattern: bool,
}

impl StringySmoothness {
    pub fn agrees(&self) -> bool {
        self.equal == self.pattern
    }
}

/// `e_st = e` versus smoothness, for simple locally factorial data with a
/// full-dimensional cone.
pub fn check_stringy_smooth(d: &HorosphericalDatum) -> Result<StringySmoothness, StringyError> {
    let fan = d.fan();
    if fan.maximal_indices().len() != 1 {
        return Err(StringyError::PreconditionFailed(
            "the embedding is not simple (more than one maximal cone)".into(),
        ));
    }
    let c = &fan.cones()[fan.maximal_indices()[0]];
    if c.dim() != d.rank() {
        return Err(StringyError::PreconditionFailed(
            "the maximal cone is not full-dimensional".into(),
        ));
    }
    if !check_locally_factorial(d).holds {
        return Err(StringyError::PreconditionFailed("the datum is not locally factorial".into()));
    }
    let e_st = stringy_euler(d)?;
    let e = euler(d)?;
    let equal = e_st == BigRational::from_integer(e.clone());
    Ok(StringySmoothness {
        e_st,
        e,
        equal,
        pattern: check_smooth(d).holds,
    })
}

/// Direct count of lattice points of `|Σ|` by ω-value, down to `-bound`.
pub fn series_oracle(d: &HorosphericalDatum, bound: i64) -> Result<BTreeMap<Exponent, u64>, StringyError> {
    let omega = compute_omega(d)?;
    let fan = d.fan();
    let r = d.rank();
    let b = BigRational::from_integer(BigInt::from(bound));
    let maximal: Vec<usize> = fan.maximal_indices().to_vec();
    let mut counts: BTreeMap<Exponent, u64> = BTreeMap::new();

    for (x, &mi) in maximal.iter().enumerate() {
        let c = &fan.cones()[mi];
        let cv = &omega.covectors[&mi];
        let rays: Vec<&Vec<i64>> = c.rays().iter().map(|&k| &fan.rays()[k]).collect();
        // ω(n) >= -B with n = Σ λ_i e_i forces λ_i <= B / w_i
        let mut lo = vec![BigRational::zero(); r];
        let mut hi = vec![BigRational::zero(); r];
        for (&e, &k) in rays.iter().zip(c.rays()) {
            let w = -dot_rat(cv, e);
            if !w.is_positive() {
                return Err(StringyError::NonNegativeWeight { ray: k });
            }
            let reach = &b / &w;
            for j in 0..r {
                let t = &reach * rat(e[j]);
                if t.is_negative() {
                    lo[j] += t;
                } else {
                    hi[j] += t;
                }
            }
        }
        let lo: Vec<i64> = lo.iter().map(|v| v.floor().to_integer().to_i64().unwrap()).collect();
        let hi: Vec<i64> = hi.iter().map(|v| v.ceil().to_integer().to_i64().unwrap()).collect();
        let earlier: Vec<&Cone> = maximal[..x].iter().map(|&p| fan.cones()[p].geometry()).collect();

        for_each_point(&lo, &hi, |n| {
            if c.geometry().contains(n) && !earlier.iter().any(|g| g.contains(n)) {
                let w = dot_rat(cv, n);
                if w >= -&b {
                    let e = Ratio::new(w.numer().to_i64().unwrap(), w.denom().to_i64().unwrap());
                    *counts.entry(e).or_insert(0) += 1;
                }
            }
        });
    }
    Ok(counts)
}

/// Visits every integer point of the box `lo <= n <= hi`.
fn for_each_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut n = lo.to_vec();
    loop {
        f(&n);
        let mut j = 0;
        loop {
            if j == n.len() {
                return;
            }
            n[j] += 1;
            if n[j] <= hi[j] {
                break;
            }
            n[j] = lo[j];
            j += 1;
        }
    }
}

/// Everything the pipeline knows about one datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub dimension: usize,
    pub omega: Result<OmegaFunction, StringyError>,
    pub stringy_e: Result<QRat, StringyError>,
    pub e_homogeneous: QPoly,
    pub e_polynomial: QPoly,
    pub stringy_euler: Result<BigRational, StringyError>,
    pub euler: BigInt,
    /// Closed-form Euler numbers, when they apply.
    pub closed_form: Option<(BigRational, BigInt)>,
    /// Only for complete locally factorial data.
    pub sr_series: Result<QRat, StringyError>,
    pub locally_factorial: FactorialityVerdict,
    pub smooth: SmoothVerdict,
}

impl InvariantReport {
    pub fn q_gorenstein(&self) -> bool {
        self.omega.is_ok()
    }
}

pub fn invariants(d: &HorosphericalDatum) -> Result<InvariantReport, StringyError> {
    let omega = compute_omega(d);
    let stringy_e = match &omega {
        Ok(w) => stringy_e_with(d, w),
        Err(e) => Err(e.clone()),
    };
    let closed_form = closed_form_euler(d);
    let stringy_euler = match &stringy_e {
        Ok(s) => s.eval_at_one().map_err(StringyError::from),
        Err(e) => Err(e.clone()),
    };
    if let (Ok(v), Some((c, _))) = (&stringy_euler, &closed_form) {
        if v != c {
            return Err(StringyError::Internal(format!(
                "stringy Euler number {v} disagrees with the closed form {c}"
            )));
        }
    }
    let euler = euler(d)?;
    let sr_series = if d.rank() > 0 && !is_complete(d.fan()) {
        Err(StringyError::NotComplete)
    } else {
        weighted_sr_poincare(d)
    };
    Ok(InvariantReport {
        dimension: d.dimension(),
        omega,
        stringy_e,
        e_homogeneous: e_homogeneous(d),
        e_polynomial: e_polynomial(d),
        stringy_euler,
        euler,
        closed_form,
        sr_series,
        locally_factorial: check_locally_factorial(d),
        smooth: check_smooth(d),
    })
}

/// Series coefficients of a QRat, turned into counts comparable with [`series_oracle`].
pub fn series_counts(f: &QRat, bound: i64) -> Result<BTreeMap<Exponent, u64>, StringyError> {
    f.series_expand(bound)
        .into_iter()
        .map(|(e, c)| {
            if !c.is_integer() || c.is_negative() {
                return Err(StringyError::Internal(format!("coefficient {c} at exponent {e} is not a count")));
            }
            Ok((e, c.to_integer().to_u64().expect("count fits in u64")))
        })
        .collect()
}
