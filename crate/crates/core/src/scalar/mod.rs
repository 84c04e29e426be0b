//! Exact coefficient fields: ℚ(q) with q generic, ℚ(ζ_L), and ℚ with q a
//! fixed nonzero rational.
//!
//! Every [`Scalar`] is kept in a unique canonical form, so equality is
//! structural. Constants are always stored as [`Scalar::Rat`] regardless of
//! the field mode; only values that genuinely depend on q carry a
//! mode-specific representation.

mod cyclotomic;
mod matrix;
pub(crate) mod upoly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use matrix::ScalarMatrix;

use crate::error::{Error, Result};
use upoly::Q;

/// Which field the parameter q lives in.
#[derive(Clone, Debug)]
pub enum FieldMode {
    /// q is transcendental: scalars are rational functions in q over ℚ.
    GenericQ,
    /// q is the primitive L-th root of unity ζ_L.
    RootOfUnity(Arc<Cyclotomic>),
    /// q is a fixed nonzero rational number.
    RationalQ(BigRational),
}

impl FieldMode {
    pub fn generic() -> Self {
        FieldMode::GenericQ
    }

    pub fn root_of_unity(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidConfig("root of unity order must be at least 1".into()));
        }
        Ok(FieldMode::RootOfUnity(Arc::new(Cyclotomic::new(order))))
    }

    pub fn rational(q: BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidConfig("q must be nonzero".into()));
        }
        Ok(FieldMode::RationalQ(q))
    }

    /// q^e in canonical form.
    pub fn qpow(&self, e: i64) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        match self {
            FieldMode::GenericQ => Scalar::Generic(RatFunc {
                low: e,
                num: vec![Q::one()],
                den: vec![Q::one()],
            }),
            FieldMode::RootOfUnity(ctx) => Scalar::from_cyclo(ctx, ctx.power(e).to_vec()),
            FieldMode::RationalQ(r) => {
                let e = i32::try_from(e).expect("q exponent out of range");
                Scalar::Rat(r.pow(e))
            }
        }
    }

    pub fn q(&self) -> Scalar {
        self.qpow(1)
    }

    /// True when `s` can live in this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (_, Scalar::Rat(_)) => true,
            (FieldMode::GenericQ, Scalar::Generic(_)) => true,
            (FieldMode::RootOfUnity(a), Scalar::Cyclo(c)) => a.order() == c.ctx.order(),
            _ => false,
        }
    }
}

impl PartialEq for FieldMode {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldMode::GenericQ, FieldMode::GenericQ) => true,
            (FieldMode::RootOfUnity(a), FieldMode::RootOfUnity(b)) => a.order() == b.order(),
            (FieldMode::RationalQ(a), FieldMode::RationalQ(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FieldMode {}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::GenericQ => write!(f, "generic"),
            FieldMode::RootOfUnity(ctx) => write!(f, "root:{}", ctx.order()),
            FieldMode::RationalQ(r) => write!(f, "rational:{}", r),
        }
    }
}

impl FromStr for FieldMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "generic" {
            return Ok(FieldMode::GenericQ);
        }
        if let Some(rest) = s.strip_prefix("root:") {
            let order: u32 = rest
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad root of unity order `{rest}`")))?;
            return FieldMode::root_of_unity(order);
        }
        if let Some(rest) = s.strip_prefix("rational:") {
            return FieldMode::rational(parse_rational(rest)?);
        }
        Err(Error::InvalidConfig(format!(
            "unknown field mode `{s}` (expected generic, root:L or rational:P/Q)"
        )))
    }
}

/// Parses `P` or `P/Q` with integer P, Q.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidConfig(format!("bad rational `{s}`"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(p, q))
}

/// A rational function `q^low · num(q) / den(q)` in lowest terms: `num` and
/// `den` have nonzero constant terms, share no factor, and `den` is monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    low: i64,
    num: Vec<Q>,
    den: Vec<Q>,
}

impl RatFunc {
    fn parts(&self) -> (i64, &[Q], &[Q]) {
        (self.low, &self.num, &self.den)
    }
}

/// A non-constant element of ℚ(ζ_L), as a polynomial of degree < φ(L).
#[derive(Clone, Debug)]
pub struct CycloElem {
    ctx: Arc<Cyclotomic>,
    coeffs: Vec<Q>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order() == other.ctx.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElem {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    /// A constant, valid in every field mode.
    Rat(BigRational),
    /// A non-constant element of ℚ(q).
    Generic(RatFunc),
    /// A non-constant element of ℚ(ζ_L).
    Cyclo(CycloElem),
}

enum Kind<'a> {
    Rat,
    Generic,
    Cyclo(&'a Arc<Cyclotomic>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Q::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Q::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(Q::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rat(Q::from_integer(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    /// The value as a rational number, if it is constant.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    fn kind(&self) -> Kind<'_> {
        match self {
            Scalar::Rat(_) => Kind::Rat,
            Scalar::Generic(_) => Kind::Generic,
            Scalar::Cyclo(c) => Kind::Cyclo(&c.ctx),
        }
    }

    fn common_kind<'a>(a: &'a Scalar, b: &'a Scalar) -> Kind<'a> {
        match (a.kind(), b.kind()) {
            (Kind::Rat, k) | (k, Kind::Rat) => k,
            (Kind::Generic, Kind::Generic) => Kind::Generic,
            (Kind::Cyclo(x), Kind::Cyclo(y)) if x.order() == y.order() => Kind::Cyclo(x),
            _ => panic!("scalars from different field modes: {a} and {b}"),
        }
    }

    fn generic_parts(&self) -> (i64, Vec<Q>, Vec<Q>) {
        match self {
            Scalar::Rat(r) => (0, upoly::constant(r.clone()), vec![Q::one()]),
            Scalar::Generic(f) => (f.low, f.num.clone(), f.den.clone()),
            Scalar::Cyclo(_) => unreachable!("cyclotomic value in generic arithmetic"),
        }
    }

    fn cyclo_coeffs(&self) -> Vec<Q> {
        match self {
            Scalar::Rat(r) => upoly::constant(r.clone()),
            Scalar::Cyclo(c) => c.coeffs.clone(),
            Scalar::Generic(_) => unreachable!("generic value in cyclotomic arithmetic"),
        }
    }

    fn from_cyclo(ctx: &Arc<Cyclotomic>, coeffs: Vec<Q>) -> Self {
        let mut coeffs = ctx.reduce(coeffs);
        match coeffs.len() {
            0 => Scalar::zero(),
            1 => Scalar::Rat(coeffs.pop().unwrap()),
            _ => Scalar::Cyclo(CycloElem {
                ctx: Arc::clone(ctx),
                coeffs,
            }),
        }
    }

    /// Canonicalizes `q^low · num / den`; `den` must be nonzero.
    fn from_generic(mut low: i64, mut num: Vec<Q>, mut den: Vec<Q>) -> Self {
        upoly::trim(&mut num);
        upoly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Scalar::zero();
        }
        let lead_zeros = |p: &[Q]| p.iter().take_while(|c| c.is_zero()).count();
        let z = lead_zeros(&num);
        num.drain(..z);
        low += z as i64;
        let z = lead_zeros(&den);
        den.drain(..z);
        low -= z as i64;
        if !upoly::is_one(&den) {
            let g = upoly::gcd(&num, &den);
            if g.len() > 1 {
                num = upoly::divrem(&num, &g).0;
                den = upoly::divrem(&den, &g).0;
            }
            let lead = den.last().unwrap().recip();
            num = upoly::scale(&num, &lead);
            den = upoly::scale(&den, &lead);
        }
        if low == 0 && num.len() == 1 && upoly::is_one(&den) {
            return Scalar::Rat(num.pop().unwrap());
        }
        Scalar::Generic(RatFunc { low, num, den })
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Generic(f) => Ok(Scalar::from_generic(-f.low, f.den.clone(), f.num.clone())),
            Scalar::Cyclo(c) => {
                let inv = c.ctx.inverse(&c.coeffs).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::from_cyclo(&c.ctx, inv))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The image of a generic-q value under q ↦ (the q of `target`).
    pub fn specialize(&self, target: &FieldMode) -> Result<Scalar> {
        let f = match self {
            Scalar::Rat(_) => return Ok(self.clone()),
            Scalar::Generic(f) => f,
            Scalar::Cyclo(_) => return Err(Error::Precondition("only generic-q scalars can be specialized".into())),
        };
        if let FieldMode::GenericQ = target {
            return Ok(self.clone());
        }
        let (low, num, den) = f.parts();
        let eval = |p: &[Q]| {
            let q = target.q();
            p.iter()
                .rev()
                .fold(Scalar::zero(), |acc, c| &(&acc * &q) + &Scalar::Rat(c.clone()))
        };
        let d = eval(den);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization(target.to_string()));
        }
        let n = &eval(num) * &target.qpow(low);
        n.checked_div(&d)
    }

    /// Splits the value into a sign and a printable magnitude for use as a
    /// coefficient. The magnitude is `None` when it equals 1; compound values
    /// come back parenthesized with a positive sign.
    pub(crate) fn factor_parts(&self) -> (bool, Option<String>) {
        let single = |c: &Q, e: i64| {
            let neg = c.is_negative();
            let abs = c.abs();
            let mag = if e == 0 && abs.is_one() {
                None
            } else {
                Some(q_term(&abs, e))
            };
            (neg, mag)
        };
        match self {
            Scalar::Rat(r) => single(r, 0),
            Scalar::Generic(f) if f.num.len() == 1 && upoly::is_one(&f.den) => single(&f.num[0], f.low),
            Scalar::Cyclo(c) => {
                let nz: Vec<_> = c.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                if let [(e, x)] = nz[..] {
                    single(x, e as i64)
                } else {
                    (false, Some(format!("({self})")))
                }
            }
            _ => (false, Some(format!("({self})"))),
        }
    }
}

fn q_term(c: &Q, e: i64) -> String {
    if e == 0 {
        return c.to_string();
    }
    let mono = if e == 1 { "q".to_string() } else { format!("q^{e}") };
    if c.is_one() {
        mono
    } else if (-c).is_one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

/// Joins printed terms with ` + ` / ` - `; an empty list prints as `0`.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn q_sum(low: i64, coeffs: &[Q]) -> String {
    join_terms(
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| q_term(c, low + k as i64)),
    )
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyclo(c) => write!(f, "{}", q_sum(0, &c.coeffs)),
            Scalar::Generic(g) => {
                let num = q_sum(g.low, &g.num);
                if upoly::is_one(&g.den) {
                    return write!(f, "{num}");
                }
                if g.num.iter().filter(|c| !c.is_zero()).count() > 1 {
                    write!(f, "({num})/({})", q_sum(0, &g.den))
                } else {
                    write!(f, "{num}/({})", q_sum(0, &g.den))
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match Scalar::common_kind(self, rhs) {
            Kind::Rat => Scalar::Rat(self.as_rational().unwrap() + rhs.as_rational().unwrap()),
            Kind::Generic => {
                let (la, na, da) = self.generic_parts();
                let (lb, nb, db) = rhs.generic_parts();
                let low = la.min(lb);
                let shift = |l: i64, p: Vec<Q>| {
                    let mut v = vec![Q::zero(); (l - low) as usize];
                    v.extend(p);
                    v
                };
                let (na, nb) = (shift(la, na), shift(lb, nb));
                if da == db {
                    Scalar::from_generic(low, upoly::add(&na, &nb), da)
                } else {
                    let num = upoly::add(&upoly::mul(&na, &db), &upoly::mul(&nb, &da));
                    Scalar::from_generic(low, num, upoly::mul(&da, &db))
                }
            }
            Kind::Cyclo(ctx) => {
                let sum = upoly::add(&self.cyclo_coeffs(), &rhs.cyclo_coeffs());
                Scalar::from_cyclo(ctx, sum)
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        match Scalar::common_kind(self, rhs) {
            Kind::Rat => Scalar::Rat(self.as_rational().unwrap() * rhs.as_rational().unwrap()),
            Kind::Generic => {
                let (la, na, da) = self.generic_parts();
                let (lb, nb, db) = rhs.generic_parts();
                Scalar::from_generic(la + lb, upoly::mul(&na, &nb), upoly::mul(&da, &db))
            }
            Kind::Cyclo(ctx) => {
                let ctx = Arc::clone(ctx);
                let prod = ctx.mul(&self.cyclo_coeffs(), &rhs.cyclo_coeffs());
                Scalar::from_cyclo(&ctx, prod)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Generic(f) => Scalar::Generic(RatFunc {
                low: f.low,
                num: upoly::neg(&f.num),
                den: f.den.clone(),
            }),
            Scalar::Cyclo(c) => Scalar::Cyclo(CycloElem {
                ctx: Arc::clone(&c.ctx),
                coeffs: upoly::neg(&c.coeffs),
            }),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rat(r)
    }
}
