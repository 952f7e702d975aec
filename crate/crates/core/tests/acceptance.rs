//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::Instant;

use horocalc_core::catalog::{
    a1_singularity, affine_space, grassmannian_completion, grassmannian_cone, quadric_completion, quadric_cone,
    standard_cone, toric,
};
use horocalc_core::fan::{is_complete, orbits, validate_fan, ConeSpec, FanInput};
use horocalc_core::roots::{Family, SimpleType};
use horocalc_core::stringy::{
    check_locally_factorial, check_smooth, check_stringy_smooth, compute_omega, e_homogeneous, e_polynomial,
    euler, lattice_sum, series_counts, series_oracle, stringy_e, stringy_euler, weighted_sr_poincare,
};
use horocalc_core::{HorosphericalDatum, NodeSubset, QPoly, QRat, RootSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn poly(asc: &[i64]) -> QPoly {
    QPoly::from_coeffs(asc.iter().copied())
}

/// `1 + q + ... + q^{n-1}`
fn qint(n: usize) -> QPoly {
    poly(&vec![1; n])
}

fn qpow(e: i64) -> QPoly {
    QPoly::q_pow(e)
}

fn ratio(num: QPoly, den: QPoly) -> QRat {
    QRat::new(num, den).unwrap()
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn golden_common(
    d: &HorosphericalDatum,
    e_st: QRat,
    e_poly: QPoly,
    euler_st: BigRational,
    euler_e: i64,
) -> Outcome {
    check("stringy E", stringy_e(d).map_err(|e| e.to_string())?, e_st)?;
    check("E-polynomial", e_polynomial(d), e_poly)?;
    check("stringy Euler", stringy_euler(d).map_err(|e| e.to_string())?, euler_st)?;
    check("Euler", euler(d).map_err(|e| e.to_string())?, BigInt::from(euler_e))
}

fn criterion_1() -> Outcome {
    let d = quadric_cone();
    if !validate_fan(&d).is_empty() {
        return Err("datum does not validate".into());
    }
    // q^4 (q^2+q+1)/(q+1)
    let e_st = ratio(&qpow(4) * &qint(3), poly(&[1, 1]));
    golden_common(&d, e_st, poly(&[0, 0, -1, 1, 0, 1]), frac(3, 2), 1)?;
    check("E(G/H)", e_homogeneous(&d), &poly(&[-1, 0, 1]) * &poly(&[-1, 0, 0, 1]))?;
    check("locally factorial", check_locally_factorial(&d).holds, true)?;
    check("smooth", check_smooth(&d).holds, false)
}

fn criterion_2() -> Outcome {
    let d = grassmannian_cone();
    let rs = d.root_system();
    check("a_1", rs.a_alpha(d.parabolic(), 1).map_err(|e| e.to_string())?, 2)?;
    check("a_2", rs.a_alpha(d.parabolic(), 2).map_err(|e| e.to_string())?, 3)?;
    let e_st = QRat::from_poly(&qpow(5) * &poly(&[1, 0, 1]));
    golden_common(&d, e_st, poly(&[0, 0, -1, 0, 0, 1, 0, 1]), frac(2, 1), 1)?;
    check(
        "E(G/H)",
        e_homogeneous(&d),
        &(&poly(&[-1, 1]).pow(2) * &qint(3)) * &qint(4),
    )
}

/// `Σ_{n∈N} q^{ω(n)}` recovered from a Poincaré series in `t` by `t = 1/q`.
fn from_sr(p: &QRat) -> QRat {
    p.invert_variable()
}

fn criterion_3() -> Outcome {
    let qbar = quadric_completion();
    let xbar = grassmannian_completion();
    for d in [&qbar, &xbar] {
        if !validate_fan(d).is_empty() || !is_complete(d.fan()) {
            return Err("completion is not a valid complete fan".into());
        }
    }
    let one_minus = |a: usize| {
        let mut v = vec![0; a + 1];
        v[0] = 1;
        v[a] = -1;
        poly(&v)
    };
    let p_q = ratio(one_minus(5), &one_minus(1) * &one_minus(2).pow(2));
    let p_x = ratio(one_minus(6), &(&one_minus(1) * &one_minus(2)) * &one_minus(3));
    check("P(Q̄)", weighted_sr_poincare(&qbar).map_err(|e| e.to_string())?, p_q.clone())?;
    check("P(X̄)", weighted_sr_poincare(&xbar).map_err(|e| e.to_string())?, p_x)?;

    let e_x = QRat::from_poly(&poly(&[1, 0, 1]) * &qint(6));
    check("E_st(X̄)", stringy_e(&xbar).map_err(|e| e.to_string())?, e_x)?;

    // derived value: E(G/H) · P(1/q) from the printed series, written out in closed form
    let e_q = ratio(&qint(3) * &qint(5), poly(&[1, 1]));
    let derived = &QRat::from_poly(e_homogeneous(&qbar)) * &from_sr(&p_q);
    check("E_st(Q̄) derivation", derived, e_q.clone())?;
    check("E_st(Q̄)", stringy_e(&qbar).map_err(|e| e.to_string())?, e_q)
}

/// Paper-independent statement of the minuscule table, 1-based nodes.
fn minuscule_table(t: &SimpleType) -> Vec<usize> {
    let l = t.rank();
    match (t.family(), l) {
        (Family::A, _) => (1..=l).collect(),
        (Family::B, _) => vec![l],
        (Family::C, _) => vec![1],
        (Family::D, _) => vec![1, l - 1, l],
        (Family::E, 6) => vec![1, 6],
        (Family::E, 7) => vec![7],
        _ => vec![],
    }
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for t in SimpleType::all_up_to(8) {
        let rs = RootSystem::new(vec![t]);
        let top = i64::from(*t.exponents().last().unwrap());
        let table = minuscule_table(&t);
        for alpha in 1..=t.rank() {
            let parabolic: NodeSubset = (1..=t.rank()).filter(|&b| b != alpha).collect();
            let a = rs.a_alpha(&parabolic, alpha).map_err(|e| e.to_string())?;
            if a < 2 || a > top + 1 {
                return Err(format!("{t}: a_{alpha} = {a} outside [2, {}]", top + 1));
            }
            if (a == top + 1) != table.contains(&alpha) {
                return Err(format!("{t}: a_{alpha} = {a}, m_l + 1 = {}, table disagrees", top + 1));
            }
            if rs.is_minuscule(alpha) != table.contains(&alpha) {
                return Err(format!("{t}: minuscule detection disagrees at node {alpha}"));
            }
            count += 1;
        }
    }
    println!("      checked {count} (type, node) pairs");
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut instances = 0;
    let mut smooth = 0;
    let mut mismatches = Vec::new();
    for t in SimpleType::all_up_to(5) {
        let n = t.rank();
        // each node goes to I, to F, or to neither
        for code in 0..3usize.pow(n as u32) {
            let mut parabolic = NodeSubset::new();
            let mut colors = NodeSubset::new();
            let mut c = code;
            for node in 1..=n {
                match c % 3 {
                    1 => {
                        parabolic.insert(node);
                    }
                    2 => {
                        colors.insert(node);
                    }
                    _ => {}
                }
                c /= 3;
            }
            let d = standard_cone(t.family(), n, &parabolic, &colors);
            let s = check_stringy_smooth(&d).map_err(|e| format!("{t} I={parabolic} F={colors}: {e}"))?;
            let pattern = check_smooth(&d).holds;
            instances += 1;
            if pattern {
                smooth += 1;
            }
            if s.equal != pattern {
                mismatches.push(format!("{t} I={parabolic} F={colors}: e_st={} e={}", s.e_st, s.e));
            }
        }
    }
    println!("      {instances} instances, {smooth} smooth, {} mismatches", mismatches.len());
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(mismatches.join("; "))
    }
}

/// Random complete unimodular rank-2 fan from repeated star subdivisions.
fn random_smooth_complete(rng: &mut ChaCha8Rng) -> HorosphericalDatum {
    let mut rays: Vec<Vec<i64>> = if rng.gen_bool(0.5) {
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]]
    } else {
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]
    };
    for _ in 0..rng.gen_range(0..5) {
        let i = rng.gen_range(0..rays.len());
        let j = (i + 1) % rays.len();
        let mid = vec![rays[i][0] + rays[j][0], rays[i][1] + rays[j][1]];
        rays.insert(i + 1, mid);
    }
    let k = rays.len();
    let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    toric(2, rays, cones)
}

fn dual(f: &QRat, dim: usize) -> QRat {
    &QRat::from_poly(qpow(dim as i64)) * &f.invert_variable()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut data = vec![quadric_completion(), grassmannian_completion()];
    data.extend((0..10).map(|_| random_smooth_complete(&mut rng)));
    for (i, d) in data.iter().enumerate() {
        if !validate_fan(d).is_empty() || !is_complete(d.fan()) || !check_locally_factorial(d).holds {
            return Err(format!("datum {i} is not complete and locally factorial"));
        }
        let e = stringy_e(d).map_err(|e| e.to_string())?;
        check(&format!("duality for datum {i}"), dual(&e, d.dimension()), e)?;
    }
    Ok(())
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |a, &x| num_integer::gcd(a, x));
    v.into_iter().map(|x| x / g).collect()
}

fn det2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize, span: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-span..=span)).collect();
        if v.iter().any(|&x| x != 0) {
            return primitive(v);
        }
    }
}

fn random_oracle_data(rng: &mut ChaCha8Rng) -> Vec<HorosphericalDatum> {
    let mut out = Vec::new();
    while out.len() < 6 {
        let (a, b) = (random_vec(rng, 2, 3), random_vec(rng, 2, 3));
        if det2(&a, &b) != 0 {
            out.push(toric(2, vec![a, b], vec![vec![0, 1]]));
        }
    }
    while out.len() < 12 {
        let (a, b, c) = (random_vec(rng, 3, 2), random_vec(rng, 3, 2), random_vec(rng, 3, 2));
        if det3(&a, &b, &c) != 0 {
            out.push(toric(3, vec![a, b, c], vec![vec![0, 1, 2]]));
        }
    }
    // colored: the color's ϱ = (1,0) spans one ray, the other ray is random
    let base = quadric_cone();
    while out.len() < 18 {
        let b = primitive(vec![rng.gen_range(-3..=3), rng.gen_range(1..=3)]);
        let fan = FanInput {
            rays: vec![vec![1, 0], b],
            cones: vec![ConeSpec {
                rays: vec![0, 1],
                colors: vec![1],
            }],
        };
        out.push(base.with_fan(fan).unwrap());
    }
    // non-simplicial cones over a square and a pentagon at height one
    out.push(toric(
        3,
        vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]],
        vec![vec![0, 1, 2, 3]],
    ));
    out.push(toric(
        3,
        vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]],
        vec![vec![0, 1, 2, 3, 4]],
    ));
    out
}

fn oracle_bound(d: &HorosphericalDatum) -> Result<i64, String> {
    let omega = compute_omega(d).map_err(|e| e.to_string())?;
    let max = d
        .fan()
        .used_rays()
        .into_iter()
        .map(|k| -omega.ray_value(d, k).unwrap())
        .max()
        .unwrap_or_else(|| frac(1, 1));
    Ok((max * BigRational::from_integer(10.into())).ceil().to_integer().to_i64().unwrap())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut data = vec![
        quadric_cone(),
        grassmannian_cone(),
        quadric_completion(),
        grassmannian_completion(),
        a1_singularity(),
        affine_space(3),
    ];
    let random = random_oracle_data(&mut rng);
    if random.iter().filter(|d| d.fan().cones().iter().any(|c| !c.geometry().is_simplicial())).count() == 0 {
        return Err("no non-simplicial cone among the random data".into());
    }
    data.extend(random);
    for (i, d) in data.iter().enumerate() {
        if !validate_fan(d).is_empty() {
            return Err(format!("datum {i} does not validate: {:?}", validate_fan(d)));
        }
        let bound = oracle_bound(d)?;
        let omega = compute_omega(d).map_err(|e| e.to_string())?;
        let closed = lattice_sum(d, &omega).map_err(|e| e.to_string())?;
        let series = series_counts(&closed, bound).map_err(|e| e.to_string())?;
        let direct = series_oracle(d, bound).map_err(|e| e.to_string())?;
        if series != direct {
            return Err(format!("datum {i}, bound {bound}: series {series:?} vs oracle {direct:?}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!("      {} data, {secs:.2}s", data.len());
    if secs >= 10.0 {
        return Err(format!("took {secs:.2}s"));
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    check(
        "A1 singularity",
        stringy_e(&a1_singularity()).map_err(|e| e.to_string())?,
        QRat::from_poly(poly(&[0, 1, 1])),
    )?;
    for r in 1..=4 {
        check(
            &format!("affine {r}-space"),
            stringy_e(&affine_space(r)).map_err(|e| e.to_string())?,
            QRat::from_poly(qpow(r as i64)),
        )?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for (name, d) in [("Q̄", quadric_completion()), ("X̄", grassmannian_completion())] {
        let omega = compute_omega(&d).map_err(|e| e.to_string())?;
        let sum = lattice_sum(&d, &omega).map_err(|e| e.to_string())?;
        let p = weighted_sr_poincare(&d).map_err(|e| e.to_string())?;
        check(&format!("two paths for {name}"), sum, from_sr(&p))?;
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let dims = |d: &HorosphericalDatum| {
        let mut v: Vec<usize> = orbits(d).iter().map(|o| o.dim).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    check("quadric cone orbits", dims(&quadric_cone()), vec![5, 3, 3, 0])?;
    check("Grassmannian cone orbits", dims(&grassmannian_cone()), vec![7, 5, 4, 0])?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut data = vec![
        quadric_cone(),
        grassmannian_cone(),
        quadric_completion(),
        grassmannian_completion(),
        a1_singularity(),
        affine_space(3),
    ];
    data.extend(random_oracle_data(&mut rng));
    data.extend((0..5).map(|_| random_smooth_complete(&mut rng)));
    for (i, d) in data.iter().enumerate() {
        let o = orbits(d);
        check(&format!("orbit count of datum {i}"), o.len(), d.fan().cones().len())?;
        for orbit in &o {
            if orbit.dim != orbit.rank_part + orbit.flag_part {
                return Err(format!("datum {i}: orbit dimension is not rank part + flag part"));
            }
        }
        let open = o.iter().find(|x| d.fan().cones()[x.cone].rays().is_empty()).unwrap();
        check(&format!("open orbit of datum {i}"), open.dim, d.dimension())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden quadric cone", criterion_1),
        ("golden Grassmannian cone", criterion_2),
        ("golden complete examples", criterion_3),
        ("color weights and minuscule table", criterion_4),
        ("smoothness ladder sweep", criterion_5),
        ("Poincaré duality", criterion_6),
        ("oracle equivalence", criterion_7),
        ("toric reduction", criterion_8),
        ("Stanley-Reisner two-path equality", criterion_9),
        ("orbits", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("PASS  {:>2}  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
