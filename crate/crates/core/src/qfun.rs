//! Laurent polynomials and rational functions in one variable `q`.
//!
//! Exponents live in `(1/m)Z`; a value with scale `m` is stored with integer
//! exponents in `x = q^{1/m}`. [`QRat`] keeps a unique canonical form:
//! numerator and denominator coprime over Q, integer coefficients with joint
//! content 1, positive leading coefficient in the denominator, the monomial
//! factor moved entirely to one side, and the smallest possible scale.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 1 is not removable")]
    PoleAtOne,
}

/// Exponent of `q` as an exact fraction.
pub type Exponent = Ratio<i64>;

/// Laurent polynomial in `x = q^{1/scale}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    scale: u64,
    terms: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly {
            scale: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0, 1)
    }

    /// `c * q^{exp/scale}`.
    pub fn monomial(c: BigInt, exp: i64, scale: u64) -> Self {
        assert!(scale > 0, "scale must be positive");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        QPoly { scale, terms }.normalized()
    }

    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigInt::one(), exp, 1)
    }

    /// From ascending integer coefficients of an ordinary polynomial in `q`.
    pub fn from_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (i as i64, BigInt::from(c)))
            .collect();
        QPoly { scale: 1, terms }
    }

    pub fn from_terms(scale: u64, terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        QPoly { scale, terms: map }.normalized()
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Terms as `(exponent in x, coefficient)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (highest) exponent in `x`.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent in `x`.
    pub fn bottom(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<Exponent> {
        self.top().map(|e| Ratio::new(e, self.scale as i64))
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn coefficient(&self, exp: Exponent) -> BigInt {
        let m = self.scale as i64;
        let x = exp * Ratio::from_integer(m);
        if !x.is_integer() {
            return BigInt::zero();
        }
        self.terms.get(&x.to_integer()).cloned().unwrap_or_default()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Same value written with scale `scale`, which must be a multiple of the current one.
    pub fn rescaled(&self, scale: u64) -> Self {
        assert!(scale % self.scale == 0, "target scale must be a multiple");
        let k = (scale / self.scale) as i64;
        QPoly {
            scale,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    fn normalized(mut self) -> Self {
        let g = self
            .terms
            .keys()
            .fold(self.scale as i64, |acc, &e| acc.gcd(&e));
        if g > 1 {
            self.scale /= g as u64;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(e, c)| (e / g, c))
                .collect();
        }
        if self.terms.is_empty() {
            self.scale = 1;
        }
        self
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `q -> 1/q`.
    pub fn invert_variable(&self) -> Self {
        QPoly {
            scale: self.scale,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact quotient, if `other` divides `self` in the Laurent ring over Z.
    pub fn div_exact(&self, other: &QPoly) -> Option<QPoly> {
        if other.is_zero() {
            return None;
        }
        let m = lcm(self.scale, other.scale);
        let (a, b) = (self.rescaled(m), other.rescaled(m));
        let (sa, da) = a.to_dense();
        let (sb, db) = b.to_dense();
        let (quot, rem) = dense::div_rem(&dense::to_rat(&da), &dense::to_rat(&db));
        if !rem.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        for (i, c) in quot.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return None;
            }
            terms.push((sa - sb + i as i64, c.to_integer()));
        }
        Some(QPoly::from_terms(m, terms))
    }

    /// Splits into `(shift, dense ascending coefficients)` with `self = x^shift * dense(x)`.
    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let Some(lo) = self.bottom() else {
            return (0, Vec::new());
        };
        let hi = self.top().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(scale: u64, shift: i64, coeffs: &[BigInt]) -> Self {
        QPoly::from_terms(
            scale,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    /// Renders with the given variable name, descending exponents.
    pub fn render(&self, var: &str) -> String {
        render_terms(self.terms.iter().rev().map(|(e, c)| (Ratio::new(*e, self.scale as i64), c)), var)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

fn var_power(var: &str, e: Exponent) -> String {
    if *e.denom() == 1 {
        if e.is_one() {
            var.to_string()
        } else {
            format!("{var}^{}", e.numer())
        }
    } else {
        format!("{var}^({}/{})", e.numer(), e.denom())
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (Exponent, &'a BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if e.is_zero() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&var_power(var, e));
        } else {
            out.push_str(&format!("{abs}*{}", var_power(var, e)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({})", self.render("q"))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let m = lcm(self.scale, rhs.scale);
        let (a, b) = (self.rescaled(m), rhs.rescaled(m));
        QPoly::from_terms(m, a.terms.into_iter().chain(b.terms))
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            scale: self.scale,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let m = lcm(self.scale, rhs.scale);
        let (a, b) = (self.rescaled(m), rhs.rescaled(m));
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                *terms.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        QPoly::from_terms(m, terms)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $f:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(QPoly, Add, add);
forward_owned!(QPoly, Sub, sub);
forward_owned!(QPoly, Mul, mul);

/// Dense polynomial helpers over Q, ascending coefficients, no trailing zeros.
mod dense {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
        trim(v.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut rem = trim(a.to_vec());
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lb = b.last().unwrap().clone();
        let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let f = rem.last().unwrap() / &lb;
            for (i, c) in b.iter().enumerate() {
                let d = &f * c;
                rem[shift + i] -= d;
            }
            quot[shift] = f;
            rem.pop();
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    fn monic(v: Vec<BigRational>) -> Vec<BigRational> {
        let l = v.last().cloned().unwrap_or_else(BigRational::one);
        v.into_iter().map(|c| c / &l).collect()
    }

    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = div_rem(&x, &y);
            x = y;
            y = monic(r);
        }
        monic(x)
    }
}

/// Rational function in `q` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self::canonical(p, QPoly::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_poly(QPoly::constant(BigInt::from(n)))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn scale(&self) -> u64 {
        lcm(self.num.scale, self.den.scale)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn canonical(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let m = lcm(num.scale, den.scale);
        let (sn, dn) = num.rescaled(m).to_dense();
        let (sd, dd) = den.rescaled(m).to_dense();
        let rn = dense::to_rat(&dn);
        let rd = dense::to_rat(&dd);
        let g = dense::gcd(&rn, &rd);
        let (qn, _) = dense::div_rem(&rn, &g);
        let (qd, _) = dense::div_rem(&rd, &g);

        // clear denominators jointly, then remove the joint content
        let l = qn
            .iter()
            .chain(&qd)
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut inum: Vec<BigInt> = qn.iter().map(|c| (c * &l).to_integer()).collect();
        let mut iden: Vec<BigInt> = qd.iter().map(|c| (c * &l).to_integer()).collect();
        let content = inum
            .iter()
            .chain(&iden)
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut sign = BigInt::one();
        if iden.last().is_some_and(|c| c.is_negative()) {
            sign = -sign;
        }
        let f = content * sign;
        for c in inum.iter_mut().chain(iden.iter_mut()) {
            *c = &*c / &f;
        }

        let shift = sn - sd;
        let (ns, ds) = if shift >= 0 { (shift, 0) } else { (0, -shift) };
        let num = QPoly::from_dense(m, ns, &inum);
        let den = QPoly::from_dense(m, ds, &iden);
        // joint minimal scale
        let g = num
            .rescaled(m)
            .terms
            .keys()
            .chain(den.rescaled(m).terms.keys())
            .fold(m as i64, |acc, &e| acc.gcd(&e)) as u64;
        let target = m / g;
        let shrink = |p: QPoly| {
            let p = p.rescaled(m);
            QPoly {
                scale: target,
                terms: p.terms.into_iter().map(|(e, c)| (e / g as i64, c)).collect(),
            }
            .normalized()
        };
        QRat {
            num: shrink(num),
            den: shrink(den),
        }
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<QRat, QError> {
        if rhs.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<QRat, QError> {
        QRat::one().checked_div(self)
    }

    pub fn pow(&self, n: u32) -> QRat {
        Self::canonical(self.num.pow(n), self.den.pow(n))
    }

    /// `q -> 1/q`.
    pub fn invert_variable(&self) -> QRat {
        Self::canonical(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Value at `q = 1` after cancelling every common factor `(x - 1)`.
    pub fn eval_at_one(&self) -> Result<BigRational, QError> {
        let m = self.scale();
        let (_, mut n) = self.num.rescaled(m).to_dense();
        let (_, mut d) = self.den.rescaled(m).to_dense();
        let root: Vec<BigRational> = vec![-BigRational::one(), BigRational::one()];
        loop {
            let dn = dense::to_rat(&n);
            let dd = dense::to_rat(&d);
            let vn: BigInt = n.iter().sum();
            let vd: BigInt = d.iter().sum();
            if !vd.is_zero() {
                return Ok(BigRational::new(vn, vd));
            }
            if !vn.is_zero() {
                return Err(QError::PoleAtOne);
            }
            let (qn, _) = dense::div_rem(&dn, &root);
            let (qd, _) = dense::div_rem(&dd, &root);
            n = qn.iter().map(|c| c.to_integer()).collect();
            d = qd.iter().map(|c| c.to_integer()).collect();
        }
    }

    /// Expansion at `q = ∞` as a series in `q^{-1}`, keeping every term with
    /// exponent `>= -bound`. Descending exponents, zero coefficients omitted.
    pub fn series_expand(&self, bound: i64) -> Vec<(Exponent, BigRational)> {
        if self.is_zero() {
            return Vec::new();
        }
        let m = self.scale();
        let n = self.num.rescaled(m);
        let d = self.den.rescaled(m);
        let (hn, hd) = (n.top().unwrap(), d.top().unwrap());
        let lead = hn - hd;
        let floor = -bound * m as i64;
        if lead < floor {
            return Vec::new();
        }
        let order = (lead - floor) as usize;
        // reversed coefficients: coefficient of y^k where y = 1/x
        let rev = |p: &QPoly, h: i64| -> Vec<BigRational> {
            let mut v = vec![BigRational::zero(); order + 1];
            for (e, c) in &p.terms {
                let k = (h - e) as usize;
                if k <= order {
                    v[k] = BigRational::from_integer(c.clone());
                }
            }
            v
        };
        let rn = rev(&n, hn);
        let rd = rev(&d, hd);
        let d0 = rd[0].clone();
        let mut s: Vec<BigRational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = rn[k].clone();
            for j in 1..=k {
                if !rd[j].is_zero() {
                    acc -= &rd[j] * &s[k - j];
                }
            }
            s.push(acc / &d0);
        }
        s.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Ratio::new(lead - k as i64, m as i64), c))
            .collect()
    }

    /// Canonical text form: monomial factor pulled out of the numerator,
    /// remaining factors expanded with descending exponents.
    pub fn render(&self, var: &str) -> String {
        let num = render_factored(&self.num, var);
        if self.den.is_one() {
            return num.text;
        }
        let den = render_factored(&self.den, var);
        let n = if num.compound { format!("({})", num.text) } else { num.text };
        let d = if den.compound || den.product { format!("({})", den.text) } else { den.text };
        format!("{n}/{d}")
    }
}

struct Rendered {
    text: String,
    /// a bare sum that needs brackets inside a quotient
    compound: bool,
    /// a product that needs brackets as a divisor
    product: bool,
}

fn render_factored(p: &QPoly, var: &str) -> Rendered {
    let lo = p.bottom().unwrap_or(0);
    let m = p.scale as i64;
    let rest = QPoly {
        scale: p.scale,
        terms: p.terms.iter().map(|(e, c)| (e - lo, c.clone())).collect(),
    };
    let shift = Ratio::new(lo, m);
    if lo == 0 || rest.num_terms() <= 1 {
        return Rendered {
            text: p.render(var),
            compound: p.num_terms() > 1,
            product: p.num_terms() == 1 && !shift.is_zero() && !p.leading_coefficient().unwrap().abs().is_one(),
        };
    }
    Rendered {
        text: format!("{}*({})", var_power(var, shift), rest.render(var)),
        compound: false,
        product: true,
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({})", self.render("q"))
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.den == rhs.den {
            return QRat::canonical(&self.num + &rhs.num, self.den.clone());
        }
        QRat::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        QRat::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_owned!(QRat, Add, add);
forward_owned!(QRat, Sub, sub);
forward_owned!(QRat, Mul, mul);

impl From<QPoly> for QRat {
    fn from(p: QPoly) -> Self {
        QRat::from_poly(p)
    }
}
