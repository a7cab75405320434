//! Exact elements of cyclotomic fields ℚ(ζ_n).
//!
//! A [`CycNum`] stores its coefficient vector in the power basis
//! `1, ζ_n, …, ζ_n^{φ(n)-1}`, reduced modulo the cyclotomic polynomial Φ_n.
//! Every value is kept at the smallest order `n` whose field contains it,
//! with `n ≢ 2 (mod 4)`, so structural equality is field equality and the
//! printed form is canonical.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg;
use super::rat::{format_rat, kth_root_rational, parse_rat, Rat};
use crate::error::{Error, Result};

/// Largest order allowed when synthesising square roots from Gauss sums.
const SQRT_ORDER_CAP: u32 = 240;

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|&i| i.gcd(&n) == 1).count()
}

/// Integer coefficients (constant term first) of the n-th cyclotomic
/// polynomial, cached per order.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_poly(d);
        num = poly_div_exact(&num, &div);
    }
    let p = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let qd = r.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                r[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Reduces a raw coefficient vector (index = power of ζ_n) modulo Φ_n.
fn reduce(order: u32, mut raw: Vec<Rat>) -> Vec<Rat> {
    let phi = cyclotomic_poly(order);
    let deg = phi.len() - 1;
    if raw.len() < deg {
        raw.resize(deg, Rat::zero());
    }
    for i in (deg..raw.len()).rev() {
        if raw[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut raw[i]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                let t = &c * Rat::from_integer(pj.into());
                raw[i - deg + j] -= t;
            }
        }
    }
    raw.truncate(deg);
    raw
}

/// Element of ℚ(ζ_n) in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            order: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        CycNum {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    /// ζ_n^p.
    pub fn zeta(n: u32, p: i64) -> Self {
        assert!(n >= 1, "zeta order must be positive");
        let e = p.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rat::zero(); e + 1];
        raw[e] = Rat::one();
        Self::build(n, raw)
    }

    /// Builds a canonical value from a raw vector Σ raw[i] ζ_order^i.
    pub fn from_raw(order: u32, raw: Vec<Rat>) -> Self {
        Self::build(order, raw)
    }

    fn build(order: u32, raw: Vec<Rat>) -> Self {
        let (order, raw) = if order % 4 == 2 {
            halve(order, raw)
        } else {
            (order, raw)
        };
        let coeffs = reduce(order, raw);
        Self::minimize(order, coeffs)
    }

    fn minimize(order: u32, coeffs: Vec<Rat>) -> Self {
        if order == 1 || coeffs[1..].iter().all(Zero::is_zero) {
            return CycNum {
                order: 1,
                coeffs: vec![coeffs[0].clone()],
            };
        }
        for d in divisors(order) {
            if d == 1 || d == order || d % 4 == 2 {
                continue;
            }
            let pd = euler_phi(d);
            let basis: Vec<Vec<Rat>> = (0..pd).map(|j| embed_raw(d, j, order)).collect();
            let rows: Vec<Vec<Rat>> = (0..coeffs.len())
                .map(|r| basis.iter().map(|col| col[r].clone()).collect())
                .collect();
            if let Some(x) = linalg::solve(&rows, &coeffs) {
                return CycNum {
                    order: d,
                    coeffs: x,
                };
            }
        }
        CycNum { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis of ℚ(ζ_order), reduced modulo Φ_order.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Coefficient vector of `self` inside ℚ(ζ_m); `self.order` must divide `m`.
    fn embed(&self, m: u32) -> Vec<Rat> {
        if self.order == m {
            return self.coeffs.clone();
        }
        let step = (m / self.order) as usize;
        let mut raw = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        reduce(m, raw)
    }

    fn common_order(&self, o: &Self) -> u32 {
        self.order.lcm(&o.order)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn add_ref(&self, o: &Self) -> Self {
        if self.order == o.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Self::minimize(self.order, coeffs);
        }
        let m = self.common_order(o);
        let coeffs = self
            .embed(m)
            .iter()
            .zip(o.embed(m))
            .map(|(a, b)| a + b)
            .collect();
        Self::minimize(m, coeffs)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if let Some(r) = o.to_rat() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rat() {
            return o.scale(&r);
        }
        let m = self.common_order(o);
        let a = self.embed(m);
        let b = o.embed(m);
        let mut raw = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Self::build(m, raw)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rat() {
            return Ok(Self::from_rat(r.recip()));
        }
        let n = self.order;
        let d = self.coeffs.len();
        // Column j holds self · ζ^j.
        let cols: Vec<Vec<Rat>> = (0..d)
            .map(|j| {
                let mut raw = vec![Rat::zero(); j + d];
                for (i, c) in self.coeffs.iter().enumerate() {
                    raw[i + j] = c.clone();
                }
                reduce(n, raw)
            })
            .collect();
        let rows: Vec<Vec<Rat>> = (0..d)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut e0 = vec![Rat::zero(); d];
        e0[0] = Rat::one();
        let x = linalg::solve(&rows, &e0)
            .ok_or_else(|| Error::Internal("singular multiplication matrix".into()))?;
        Ok(Self::minimize(n, x))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the Galois automorphism ζ_n ↦ ζ_n^a of ℚ(ζ_n), where
    /// `n` is a multiple of the value's order and `gcd(a, n) = 1`.
    pub fn galois(&self, n: u32, a: u32) -> Self {
        assert_eq!(n % self.order, 0, "order must divide n");
        let v = self.embed(n);
        let mut raw = vec![Rat::zero(); n as usize];
        for (i, c) in v.iter().enumerate() {
            let t = (i as u64 * a as u64 % n as u64) as usize;
            raw[t] += c;
        }
        Self::build(n, raw)
    }

    /// Product of all Galois conjugates over ℚ(ζ_order); always rational.
    pub fn norm(&self) -> Self {
        let n = self.order;
        (1..=n)
            .filter(|a| a.gcd(&n) == 1)
            .fold(Self::one(), |acc, a| &acc * &self.galois(n, a))
    }

    /// A k-th root inside a cyclotomic field, when `self` is a rational times a
    /// root of unity whose rational part has a suitable root.
    pub fn kth_root(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        if k == 1 || self.is_zero() {
            return Some(self.clone());
        }
        if let Some(r) = self.to_rat() {
            return rational_kth_root(&r, k);
        }
        // self = r · ζ_n^j for some j?
        let n = self.order;
        for j in 0..n {
            let t = self * &Self::zeta(n, -(j as i64));
            if let Some(r) = t.to_rat() {
                let base = rational_kth_root(&r, k)?;
                return Some(&base * &Self::zeta(n * k, j as i64));
            }
        }
        None
    }
}

/// Converts a raw vector of order 2m (m odd) to order m using
/// ζ_{2m} = -ζ_m^{(m+1)/2}.
fn halve(order: u32, raw: Vec<Rat>) -> (u32, Vec<Rat>) {
    let m = order / 2;
    let half = m.div_ceil(2) as u64;
    let mut out = vec![Rat::zero(); m as usize];
    for (i, c) in raw.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = i as u64 % order as u64;
        let t = (e * half % m as u64) as usize;
        if e % 2 == 1 {
            out[t] -= c;
        } else {
            out[t] += c;
        }
    }
    (m, out)
}

/// ζ_d^j expressed in the reduced basis of ℚ(ζ_m), for d | m.
fn embed_raw(d: u32, j: usize, m: u32) -> Vec<Rat> {
    let e = j * (m / d) as usize;
    let mut raw = vec![Rat::zero(); e + 1];
    raw[e] = Rat::one();
    reduce(m, raw)
}

fn rational_kth_root(r: &Rat, k: u32) -> Option<CycNum> {
    if let Some(x) = kth_root_rational(r, k) {
        return Some(CycNum::from_rat(x));
    }
    if r.is_negative() {
        if let Some(x) = kth_root_rational(&-r, k) {
            return Some(CycNum::zeta(2 * k, 1).scale(&x));
        }
    }
    if k == 2 {
        return sqrt_rational(r);
    }
    None
}

/// Square root of a rational number via Gauss sums: r = s²·d with d a
/// squarefree integer, √d assembled from √p for the primes p | d.
fn sqrt_rational(r: &Rat) -> Option<CycNum> {
    let n: num_bigint::BigInt = r.numer() * r.denom();
    let den = r.denom().clone();
    let neg = n.is_negative();
    let mut m = n.abs();
    let mut square = num_bigint::BigInt::one();
    let mut primes = Vec::new();
    let mut p = 2u32;
    while p < 1000 && !m.is_one() {
        let bp = num_bigint::BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &bp;
        }
        if e % 2 == 1 {
            primes.push(p);
        }
        p += 1;
    }
    if !m.is_one() {
        let root = num_integer::Roots::sqrt(&m);
        if &root * &root != m {
            return None;
        }
        square *= root;
    }
    let mut order: u32 = if neg { 4 } else { 1 };
    for &p in &primes {
        order = order.lcm(&if p == 2 { 8 } else { 4 * p });
        if order > SQRT_ORDER_CAP {
            return None;
        }
    }
    let mut acc = if neg {
        CycNum::zeta(4, 1)
    } else {
        CycNum::one()
    };
    for &p in &primes {
        acc = &acc * &sqrt_prime(p);
    }
    let s = Rat::new(square, den);
    Some(acc.scale(&s))
}

fn legendre(a: u32, p: u32) -> i64 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn sqrt_prime(p: u32) -> CycNum {
    if p == 2 {
        return &CycNum::zeta(8, 1) + &CycNum::zeta(8, 7);
    }
    let mut raw = vec![Rat::zero(); p as usize];
    for a in 1..p {
        raw[a as usize] = Rat::from_integer(legendre(a, p).into());
    }
    let g = CycNum::from_raw(p, raw);
    if p % 4 == 1 {
        g
    } else {
        // g² = -p, so √p = -i·g.
        -(&g * &CycNum::zeta(4, 1))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                $imp(self, o)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                $imp(&self, &o)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_ref(b));
forward_binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_ref(&-b));
forward_binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_ref(b));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl From<Rat> for CycNum {
    fn from(r: Rat) -> Self {
        CycNum::from_rat(r)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                f.write_str(&format_rat(&a))?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", format_rat(&a))?;
                }
                write!(f, "z{}^{}", self.order, i)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Parses `c0 + c1*z{n}^1 + …` (any order, any mix of orders).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(0, "empty cyclotomic number"));
        }
        let mut acc = CycNum::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i <= bytes.len() {
            let at_split =
                i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start);
            if at_split {
                let term = &compact[start..i];
                acc = &acc + &parse_cyc_term(term, start)?;
                start = i;
            }
            i += 1;
        }
        Ok(acc)
    }
}

fn parse_cyc_term(term: &str, offset: usize) -> Result<CycNum> {
    let (neg, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(Error::parse(offset, "dangling sign"));
    }
    let (coef, root) = match body.find('z') {
        None => (
            parse_rat(body).map_err(|_| Error::parse(offset, format!("bad term `{term}`")))?,
            None,
        ),
        Some(pos) => {
            let coef = if pos == 0 {
                Rat::one()
            } else {
                let c = body[..pos]
                    .strip_suffix('*')
                    .ok_or_else(|| Error::parse(offset, format!("bad term `{term}`")))?;
                parse_rat(c).map_err(|_| Error::parse(offset, format!("bad coefficient `{c}`")))?
            };
            let rest = &body[pos + 1..];
            let (n, e) = match rest.split_once('^') {
                Some((n, e)) => (n, e),
                None => (rest, "1"),
            };
            let n: u32 = n
                .parse()
                .map_err(|_| Error::parse(offset, format!("bad root order in `{term}`")))?;
            let e: i64 = e
                .parse()
                .map_err(|_| Error::parse(offset, format!("bad root exponent in `{term}`")))?;
            if n == 0 {
                return Err(Error::parse(offset, "root order must be positive"));
            }
            (coef, Some((n, e)))
        }
    };
    let v = match root {
        None => CycNum::from_rat(coef),
        Some((n, e)) => CycNum::zeta(n, e).scale(&coef),
    };
    Ok(if neg { -v } else { v })
}
