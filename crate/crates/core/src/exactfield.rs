//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! N-th cyclotomic polynomial Φ_N, as integer numerators over one positive
//! common denominator. The reduced form is canonical: two values are equal
//! exactly when their conductors, numerators and denominators coincide.
//!
//! Values of different conductors never mix implicitly. Use
//! [`CycNum::lift`] to move a value into a field whose conductor is a
//! multiple of its own.

use alloc::{sync::Arc, vec, vec::Vec};
use core::{
    cmp::Ordering,
    fmt,
    hash::{Hash, Hasher},
    ops::{Add, Mul, Neg, Sub},
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("conductor mismatch ({left} vs {right}); lift to a common conductor first")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotALift { from: u32, to: u32 },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("conductor must be positive")]
    ZeroConductor,
}

/// The field ℚ(ζ_N) together with the tables needed for reduction.
pub struct CyclotomicField {
    conductor: u32,
    /// Φ_N, lowest degree first. Monic with integer coefficients.
    modulus: Vec<BigInt>,
    /// ζ^e reduced modulo Φ_N for `e` in `0..N`.
    powers: Vec<Vec<BigInt>>,
    /// Units `k` of ℤ/N with `1 < k < N/2`; one per conjugate pair of embeddings.
    half_units: Vec<u32>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

/// Shared handle to a cyclotomic field.
pub type Field = Arc<CyclotomicField>;

impl CyclotomicField {
    pub fn new(conductor: u32) -> Result<Field, FieldError> {
        if conductor == 0 {
            return Err(FieldError::ZeroConductor);
        }
        let modulus = cyclotomic_polynomial(conductor);
        let degree = modulus.len() - 1;

        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        powers.push(cur.clone());
        for _ in 1..conductor {
            // multiply by ζ, then fold the overflowing top coefficient back in
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(&modulus) {
                    *c -= &top * m;
                }
            }
            powers.push(cur.clone());
        }

        let half_units = (2..conductor)
            .filter(|&k| 2 * k < conductor && k.gcd(&conductor) == 1)
            .collect();

        Ok(Arc::new(CyclotomicField {
            conductor,
            modulus,
            powers,
            half_units,
        }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// φ(N), the dimension of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Φ_n by exact division of `x^n - 1` by Φ_d for every proper divisor `d`.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut cache: Vec<Option<Vec<BigInt>>> = vec![None; n as usize + 1];
    cyclotomic_rec(n, &mut cache)
}

fn cyclotomic_rec(n: u32, cache: &mut Vec<Option<Vec<BigInt>>>) -> Vec<BigInt> {
    if let Some(p) = &cache[n as usize] {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_rec(d, cache);
            p = div_monic(&p, &q);
        }
    }
    cache[n as usize] = Some(p.clone());
    p
}

/// Exact quotient of `a` by the monic polynomial `b`.
fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element of ℚ(ζ_N) in canonical reduced form.
#[derive(Clone)]
pub struct CycNum {
    field: Field,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(field: &Field) -> Self {
        CycNum {
            field: field.clone(),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Field, n: i64) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = BigInt::from(n);
        CycNum {
            field: field.clone(),
            num,
            den: BigInt::one(),
        }
    }

    /// Embeds a rational number as a constant.
    pub fn from_rational(field: &Field, r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = r.numer().clone();
        CycNum::normalized(field.clone(), num, r.denom().clone())
    }

    /// ζ_N^k, with `k` reduced modulo N.
    pub fn root(field: &Field, k: i64) -> Self {
        let n = i64::from(field.conductor);
        let e = k.rem_euclid(n) as usize;
        CycNum {
            field: field.clone(),
            num: field.powers[e].clone(),
            den: BigInt::one(),
        }
    }

    /// Builds a value from power-basis coefficients.
    pub fn from_coeffs(field: &Field, coeffs: &[Rational]) -> Result<Self, FieldError> {
        if coeffs.len() != field.degree() {
            return Err(FieldError::CoefficientCount {
                expected: field.degree(),
                got: coeffs.len(),
            });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycNum::normalized(field.clone(), num, den))
    }

    /// Builds a value from a polynomial in ζ of any degree, reducing modulo Φ_N.
    pub fn from_poly(field: &Field, poly: &[Rational]) -> Self {
        let mut acc = CycNum::zero(field);
        for (e, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CycNum::root(field, e as i64).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    fn normalized(field: Field, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -core::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            den /= &g;
            for c in &mut num {
                *c /= &g;
            }
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        CycNum { field, num, den }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Real and imaginary parts, when the value is a Gaussian rational
    /// written in ℚ(i) (conductors 1, 2 and 4).
    pub fn as_gaussian(&self) -> Option<(Rational, Rational)> {
        let c = self.coeffs();
        match self.field.conductor {
            1 | 2 => Some((c[0].clone(), Rational::zero())),
            4 => Some((c[0].clone(), c[1].clone())),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field.conductor == other.field.conductor {
            Ok(())
        } else {
            Err(FieldError::ConductorMismatch {
                left: self.field.conductor,
                right: other.field.conductor,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return CycNum::normalized(self.field.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        CycNum::normalized(self.field.clone(), num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.field.degree();
        if d == 1 {
            return CycNum::normalized(
                self.field.clone(),
                vec![&self.num[0] * &other.num[0]],
                &self.den * &other.den,
            );
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let m = &self.field.modulus;
        for top in (d..2 * d - 1).rev() {
            let c = core::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                if !m[i].is_zero() {
                    prod[top - d + i] -= &c * &m[i];
                }
            }
        }
        prod.truncate(d);
        CycNum::normalized(self.field.clone(), prod, &self.den * &other.den)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycNum::normalized(self.field.clone(), num, &self.den * r.denom())
    }

    /// The Galois automorphism ζ ↦ ζ^k. `k` must be coprime to N.
    pub fn galois(&self, k: u32) -> Self {
        let n = self.field.conductor;
        debug_assert_eq!(k.gcd(&n), 1);
        let d = self.field.degree();
        let mut out = vec![BigInt::zero(); d];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j as u64 * u64::from(k) % u64::from(n)) as usize;
            for (o, p) in out.iter_mut().zip(&self.field.powers[e]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycNum::normalized(self.field.clone(), out, self.den.clone())
    }

    /// Complex conjugation, the automorphism ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.field.conductor;
        if n <= 2 {
            return self.clone();
        }
        self.galois(n - 1)
    }

    /// Multiplicative inverse.
    ///
    /// With `b = a·ā` real, `a · ā · ∏ σ_k(b)` over one automorphism per
    /// conjugate pair is the field norm of `a`, a rational.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(&self.field, &r.recip()));
        }
        let abar = self.conj();
        let b = self.mul_unchecked(&abar);
        let mut cofactor = abar;
        if b.as_rational().is_none() {
            for &k in &self.field.half_units {
                cofactor = cofactor.mul_unchecked(&b.galois(k));
            }
        }
        let norm = self
            .mul_unchecked(&cofactor)
            .as_rational()
            .expect("field norm is rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// |a|² = a·ā.
    pub fn norm_sqr(&self) -> Self {
        self.mul_unchecked(&self.conj())
    }

    /// Re-expresses the value in ℚ(ζ_M) for a multiple M of N.
    pub fn lift(&self, target: &Field) -> Result<Self, FieldError> {
        let (from, to) = (self.field.conductor, target.conductor);
        if to % from != 0 {
            return Err(FieldError::NotALift { from, to });
        }
        let step = i64::from(to / from);
        let poly: Vec<Rational> = {
            let mut p = vec![Rational::zero(); ((self.num.len() as i64 - 1) * step + 1) as usize];
            for (j, c) in self.num.iter().enumerate() {
                p[j * step as usize] = Rational::new(c.clone(), self.den.clone());
            }
            p
        };
        Ok(CycNum::from_poly(target, &poly))
    }

    /// Numerical value under the embedding ζ_N ↦ e^{2πi/N}.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = f64::from(self.field.conductor);
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let t = 2.0 * core::f64::consts::PI * j as f64 / n;
            re += v * libm::cos(t);
            im += v * libm::sin(t);
        }
        num_complex::Complex64::new(re, im)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .conductor
            .cmp(&other.field.conductor)
            .then_with(|| self.num.cmp(&other.num))
            .then_with(|| self.den.cmp(&other.den))
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum<{}>({})", self.field.conductor, self)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((re, im)) = self.as_gaussian() {
            if im.is_zero() {
                return fmt_rational(&re, f);
            }
            if !re.is_zero() {
                fmt_rational(&re, f)?;
                if im.is_positive() {
                    f.write_str("+")?;
                }
            }
            if im.is_one() {
                return f.write_str("i");
            }
            if (-im.clone()).is_one() {
                return f.write_str("-i");
            }
            fmt_rational(&im, f)?;
            return f.write_str("i");
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                f.write_str("+")?;
            }
            first = false;
            if j == 0 {
                fmt_rational(c, f)?;
            } else {
                if !c.is_one() {
                    if (-c.clone()).is_one() {
                        f.write_str("-")?;
                    } else {
                        fmt_rational(c, f)?;
                        f.write_str("*")?;
                    }
                }
                write!(f, "z{}^{}", self.field.conductor, j)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Operator forms panic on conductor mismatch; the `checked_*` methods report it.

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.checked_add(rhs).expect("CycNum addition")
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.checked_sub(rhs).expect("CycNum subtraction")
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.checked_mul(rhs).expect("CycNum multiplication")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

/// Convenience: `r` embedded in ℚ(ζ_N).
pub fn cyc_from_rational(conductor: u32, r: &Rational) -> Result<CycNum, FieldError> {
    Ok(CycNum::from_rational(&CyclotomicField::new(conductor)?, r))
}

/// Convenience: ζ_N^k.
pub fn cyc_root(conductor: u32, k: i64) -> Result<CycNum, FieldError> {
    Ok(CycNum::root(&CyclotomicField::new(conductor)?, k))
}

/// Shorthand for a small rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
