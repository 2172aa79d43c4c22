//! Exact arithmetic in rings of cyclotomic integers `Z[zeta_m]`.
//!
//! An element is an integer polynomial in a primitive m-th root of unity,
//! stored in canonical form: the coefficient vector has exactly `m` entries
//! and is reduced modulo the m-th cyclotomic polynomial, so only the first
//! `phi(m)` positions can be nonzero. Canonical forms are unique, which makes
//! equality testing a coefficient comparison after lifting both operands to
//! the least common multiple of their orders.
//!
//! Coefficients are arbitrary-precision integers. There is no division;
//! where a quotient is needed downstream, callers keep numerator and
//! denominator separate or use [`CycInt::div_exact_int`] for exact integer
//! divisors. Floating point appears only in [`CycInt::embed_complex`], which
//! exists for diagnostics and cross-checks, never for verification verdicts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Euler's totient function.
pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1, "euler_phi(0) is undefined");
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if rest > 1 {
        result = result / rest * (rest - 1);
    }
    result
}

/// The divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1, "divisors(0) is undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
///
/// Computed by exact polynomial division: x^m - 1 divided by the cyclotomic
/// polynomials of all proper divisors of m. Results are memoized process-wide.
///
/// # Panics
///
/// Panics if `m == 0`.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic_poly(0) is undefined");
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let computed = if m == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^m - 1
        let mut q = vec![BigInt::zero(); (m + 1) as usize];
        q[0] = BigInt::from(-1);
        q[m as usize] = BigInt::from(1);
        for d in divisors(m) {
            if d < m {
                q = poly_div_exact(&q, &cyclotomic_poly(d));
            }
        }
        q
    };
    cache
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| computed.clone());
    computed
}

fn poly_deg(p: &[BigInt]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

/// Exact division of `num` by a monic polynomial `den`. Panics on a nonzero
/// remainder, which would indicate an internal error.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = poly_deg(den);
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = poly_deg(num);
    assert!(nd >= dd, "division underflow");
    let mut rem = num[..=nd].to_vec();
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (dd..=nd).rev() {
        let c = std::mem::replace(&mut rem[k], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den[..dd].iter().enumerate() {
            let t = &c * dc;
            rem[k - dd + i] -= t;
        }
        quot[k - dd] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Remainder of `num` modulo a monic polynomial `den`.
fn poly_rem_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = poly_deg(den);
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    for k in (dd..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[k], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (i, dc) in den[..dd].iter().enumerate() {
            let t = &c * dc;
            rem[k - dd + i] -= t;
        }
    }
    rem.truncate(dd.max(1));
    rem
}

/// An element of `Z[zeta_m]` in canonical form.
///
/// The order `m` is part of the value. Mixed-order operations lift both sides
/// to the least common multiple of the two orders; an order is never silently
/// truncated. Two elements compare equal exactly when they represent the same
/// algebraic number, regardless of the orders they are carried at.
#[derive(Clone, Debug)]
pub struct CycInt {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Builds an element of `Z[zeta_m]` from arbitrary coefficients.
    ///
    /// `coeffs[k]` multiplies `zeta_m^k`; indices at or beyond `m` wrap around
    /// (zeta_m^m = 1). The result is canonicalized.
    ///
    /// # Panics
    ///
    /// Panics if `order == 0`.
    pub fn new(order: u64, coeffs: &[BigInt]) -> CycInt {
        assert!(order >= 1, "order must be at least 1");
        let mut wrapped = vec![BigInt::zero(); order as usize];
        for (k, c) in coeffs.iter().enumerate() {
            wrapped[k % order as usize] += c;
        }
        CycInt {
            order,
            coeffs: canonical(order, wrapped),
        }
    }

    /// The zero element of `Z[zeta_m]`.
    pub fn zero(order: u64) -> CycInt {
        assert!(order >= 1, "order must be at least 1");
        CycInt {
            order,
            coeffs: vec![BigInt::zero(); order as usize],
        }
    }

    /// An ordinary integer, carried at order 1.
    pub fn from_int(v: i64) -> CycInt {
        CycInt {
            order: 1,
            coeffs: vec![BigInt::from(v)],
        }
    }

    /// An ordinary integer, carried at order 1.
    pub fn from_bigint(v: BigInt) -> CycInt {
        CycInt {
            order: 1,
            coeffs: vec![v],
        }
    }

    /// The root of unity `zeta_m^k`.
    pub fn root_of_unity(order: u64, k: i64) -> CycInt {
        assert!(order >= 1, "order must be at least 1");
        let idx = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); order as usize];
        coeffs[idx] = BigInt::one();
        CycInt {
            order,
            coeffs: canonical(order, coeffs),
        }
    }

    /// The order `m` this element is carried at.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The canonical coefficient vector (length `m`, reduced modulo the m-th
    /// cyclotomic polynomial).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().map_or(false, |v| v.is_one())
    }

    /// Returns the value as a plain integer if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element at a larger order `target` (a multiple of the
    /// current order). The value is unchanged.
    ///
    /// # Panics
    ///
    /// Panics if `target` is not a positive multiple of the current order.
    pub fn lift(&self, target: u64) -> CycInt {
        assert!(
            target >= self.order && target % self.order == 0,
            "lift target {} is not a multiple of order {}",
            target,
            self.order
        );
        if target == self.order {
            return self.clone();
        }
        let stride = (target / self.order) as usize;
        let mut coeffs = vec![BigInt::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * stride] = c.clone();
            }
        }
        CycInt {
            order: target,
            coeffs: canonical(target, coeffs),
        }
    }

    /// Complex conjugate, computed by the index map `k -> -k mod m`.
    pub fn conj(&self) -> CycInt {
        let m = self.order as usize;
        let mut coeffs = vec![BigInt::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(m - k) % m] += c;
            }
        }
        CycInt {
            order: self.order,
            coeffs: canonical(self.order, coeffs),
        }
    }

    /// Exact integer power.
    pub fn pow(&self, e: u64) -> CycInt {
        let mut acc = CycInt::from_int(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides every coefficient by `d` when the division is exact; returns
    /// `None` if any coefficient is not divisible or `d` is zero.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<CycInt> {
        if d.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CycInt {
            order: self.order,
            coeffs,
        })
    }

    /// Numerical embedding `zeta_m -> exp(2 pi i / m)` as `(re, im)`.
    ///
    /// For diagnostics and floating-point cross-checks only; exact verdicts
    /// never depend on this.
    pub fn embed_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = bigint_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / m;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    fn binop(&self, rhs: &CycInt, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> CycInt {
        let target = self.order.lcm(&rhs.order);
        let a = self.lift(target);
        let b = rhs.lift(target);
        let coeffs: Vec<BigInt> = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| f(x, y))
            .collect();
        // Sum and difference of canonical forms stay canonical.
        CycInt {
            order: target,
            coeffs,
        }
    }
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    // Good enough for diagnostics; exact code paths never round-trip floats.
    v.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Reduces a full-length coefficient vector into canonical form.
fn canonical(order: u64, coeffs: Vec<BigInt>) -> Vec<BigInt> {
    debug_assert_eq!(coeffs.len(), order as usize);
    let phi = cyclotomic_poly(order);
    let mut rem = poly_rem_monic(&coeffs, &phi);
    rem.resize(order as usize, BigInt::zero());
    rem
}

impl PartialEq for CycInt {
    fn eq(&self, other: &CycInt) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let target = self.order.lcm(&other.order);
        self.lift(target).coeffs == other.lift(target).coeffs
    }
}

impl Eq for CycInt {}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.binop(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.binop(rhs, |a, b| a - b)
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        let target = self.order.lcm(&rhs.order);
        let a = self.lift(target);
        let b = rhs.lift(target);
        let m = target as usize;
        let mut coeffs = vec![BigInt::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coeffs[(i + j) % m] += x * y;
            }
        }
        CycInt {
            order: target,
            coeffs: canonical(target, coeffs),
        }
    }
}

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: CycInt) -> CycInt {
        &self + &rhs
    }
}

impl std::ops::Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        &self - &rhs
    }
}

impl std::ops::Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        &self * &rhs
    }
}

impl std::ops::Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(v) = self.as_integer() {
            return write!(f, "{}", v);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            if k > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        write!(f, " (z = zeta_{})", self.order)
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Coefficients as decimal strings: lossless at any magnitude and
        // stable across serde_json number handling.
        let mut s = serializer.serialize_struct("CycInt", 2)?;
        s.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}
