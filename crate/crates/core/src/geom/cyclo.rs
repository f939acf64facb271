//! Exact real numbers in the cyclotomic field `Q(ζ_m)`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::fixed::sign_of_cos_sum;
use super::GeomError;

const OVERFLOW: &str = "CycloReal coefficient overflow";

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect(OVERFLOW)
}

fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect(OVERFLOW)
}

/// Reduction data for `Q(ζ_m)` with power basis `1, ζ, …, ζ^(φ-1)`.
pub struct CycloField {
    m: usize,
    phi: usize,
    /// `ζ^e` in the power basis for `e < powers.len()`.
    powers: Vec<Vec<i128>>,
    cos: Vec<f64>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.m)
    }
}

/// Integer coefficients of the `d`-th cyclotomic polynomial, low degree first.
fn cyclotomic(d: usize, cache: &mut HashMap<usize, Vec<i128>>) -> Vec<i128> {
    if let Some(p) = cache.get(&d) {
        return p.clone();
    }
    // x^d - 1 divided by Φ_e for every proper divisor e of d.
    let mut num = vec![0i128; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let div = cyclotomic(e, cache);
        num = divide_monic(&num, &div);
    }
    cache.insert(d, num.clone());
    num
}

fn divide_monic(num: &[i128], div: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &dj) in div.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

impl CycloField {
    fn new(m: usize) -> Self {
        assert!(m >= 1);
        let mut cache = HashMap::new();
        let poly = cyclotomic(m, &mut cache);
        let phi = poly.len() - 1;
        let table_len = m.max(2 * phi);
        let mut powers = Vec::with_capacity(table_len);
        let mut cur = vec![0i128; phi];
        cur[0] = 1;
        for _ in 0..table_len {
            powers.push(cur.clone());
            // Multiply by x, then replace x^φ by -(Φ - x^φ).
            let top = cur[phi - 1];
            let mut next = vec![0i128; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            for (k, nk) in next.iter_mut().enumerate() {
                *nk = add(*nk, mul(-top, poly[k]));
            }
            cur = next;
        }
        let cos = (0..phi).map(|j| (2.0 * std::f64::consts::PI * j as f64 / m as f64).cos()).collect();
        CycloField { m, phi, powers, cos }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    fn reduce(&self, wide: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; self.phi];
        for (e, &c) in wide.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if e < self.phi {
                out[e] = add(out[e], c);
            } else {
                for (k, &r) in self.powers[e].iter().enumerate() {
                    if r != 0 {
                        out[k] = add(out[k], mul(c, r));
                    }
                }
            }
        }
        out
    }
}

static FIELDS: OnceLock<Mutex<HashMap<usize, Arc<CycloField>>>> = OnceLock::new();

/// Shared field data for `Q(ζ_m)`.
pub fn cyclo_field(m: usize) -> Arc<CycloField> {
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("field cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(CycloField::new(m))).clone()
}

/// Element `num / den` of `Q(ζ_m)` in the power basis; the public
/// constructors only produce real elements.
#[derive(Clone)]
pub struct CycloReal {
    field: Arc<CycloField>,
    num: Vec<i128>,
    den: i128,
}

impl PartialEq for CycloReal {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloReal {}

impl Hash for CycloReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, &c) in self.num.iter().enumerate() {
            if c != 0 {
                terms.push(match j {
                    0 => format!("{c}"),
                    1 => format!("{c}z"),
                    _ => format!("{c}z^{j}"),
                });
            }
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den == 1 {
            write!(f, "[{body}]_{}", self.field.m)
        } else {
            write!(f, "[({body})/{}]_{}", self.den, self.field.m)
        }
    }
}

impl CycloReal {
    fn normalized(field: Arc<CycloField>, mut num: Vec<i128>, mut den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = den.checked_neg().expect(OVERFLOW);
            for c in &mut num {
                *c = c.checked_neg().expect(OVERFLOW);
            }
        }
        let g = num.iter().fold(den, |g, &c| g.gcd(&c));
        if g > 1 {
            den /= g;
            for c in &mut num {
                *c /= g;
            }
        }
        if num.iter().all(|&c| c == 0) {
            den = 1;
        }
        CycloReal { field, num, den }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.field.m
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    /// Rebuilds an element from its serialized form. The caller is
    /// responsible for realness (checked by `is_real`).
    pub fn from_parts(m: usize, num: Vec<i128>, den: i128) -> Result<Self, GeomError> {
        let field = cyclo_field(m);
        if num.len() != field.phi || den == 0 {
            return Err(GeomError::Parse(format!(
                "expected {} coefficients and a nonzero denominator for m = {m}",
                field.phi
            )));
        }
        let x = Self::normalized(field, num, den);
        if !x.is_real() {
            return Err(GeomError::Parse("element is not real".into()));
        }
        Ok(x)
    }

    pub fn zero(m: usize) -> Self {
        let field = cyclo_field(m);
        let phi = field.phi;
        CycloReal { field, num: vec![0; phi], den: 1 }
    }

    pub fn from_int(m: usize, v: i128) -> Self {
        Self::from_ratio(m, v, 1)
    }

    pub fn from_ratio(m: usize, p: i128, q: i128) -> Self {
        let field = cyclo_field(m);
        let mut num = vec![0; field.phi];
        num[0] = p;
        Self::normalized(field, num, q)
    }

    pub fn from_rat(m: usize, r: &BigRational) -> Result<Self, GeomError> {
        let p = r.numer().to_i128();
        let q = r.denom().to_i128();
        match (p, q) {
            (Some(p), Some(q)) => Ok(Self::from_ratio(m, p, q)),
            _ => Err(GeomError::Overflow),
        }
    }

    /// `ζ^e` (not real in general; internal building block).
    fn root_power(field: &Arc<CycloField>, e: usize) -> Self {
        let e = e % field.m;
        CycloReal { field: field.clone(), num: field.powers[e].clone(), den: 1 }
    }

    /// `cos(2πj/m)`.
    pub fn cos_2pi(m: usize, j: i64) -> Self {
        let field = cyclo_field(m);
        let mm = m as i64;
        let a = Self::root_power(&field, j.rem_euclid(mm) as usize);
        let b = Self::root_power(&field, (-j).rem_euclid(mm) as usize);
        a.add(&b).div_int(2)
    }

    /// `sin(2πj/m)`; requires `4 | m`.
    pub fn sin_2pi(m: usize, j: i64) -> Self {
        assert!(m.is_multiple_of(4), "sin needs i = ζ^(m/4) in the field");
        let field = cyclo_field(m);
        let mm = m as i64;
        let q = 3 * mm / 4;
        // sin θ = -i (ζ^j - ζ^-j) / 2 and -i = ζ^(3m/4).
        let a = Self::root_power(&field, (j + q).rem_euclid(mm) as usize);
        let b = Self::root_power(&field, (q - j).rem_euclid(mm) as usize);
        a.sub(&b).div_int(2)
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.m, other.field.m, "mixed cyclotomic fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let l = self.den.lcm(&other.den);
        let (fa, fb) = (l / self.den, l / other.den);
        let num = self.num.iter().zip(&other.num).map(|(&a, &b)| add(mul(a, fa), mul(b, fb))).collect();
        Self::normalized(self.field.clone(), num, l)
    }

    pub fn neg(&self) -> Self {
        CycloReal {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c.checked_neg().expect(OVERFLOW)).collect(),
            den: self.den,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.m);
        }
        let phi = self.field.phi;
        let mut wide = vec![0i128; 2 * phi - 1];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.num.iter().enumerate() {
                if b != 0 {
                    wide[i + j] = add(wide[i + j], mul(a, b));
                }
            }
        }
        let num = self.field.reduce(&wide);
        Self::normalized(self.field.clone(), num, mul(self.den, other.den))
    }

    pub fn div_int(&self, k: i128) -> Self {
        Self::normalized(self.field.clone(), self.num.clone(), mul(self.den, k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    /// True when the element equals its complex conjugate.
    pub fn is_real(&self) -> bool {
        let f = &self.field;
        let mut wide = vec![0i128; f.m];
        for (j, &c) in self.num.iter().enumerate() {
            wide[(f.m - j) % f.m] = add(wide[(f.m - j) % f.m], c);
        }
        f.reduce(&wide) == self.num
    }

    /// `f64` approximation and an absolute error bound for it.
    pub fn approx(&self) -> (f64, f64) {
        let mut v = 0.0f64;
        let mut w = 0.0f64;
        for (j, &c) in self.num.iter().enumerate() {
            if c != 0 {
                let cf = c as f64;
                v += cf * self.field.cos[j];
                w += cf.abs();
            }
        }
        let d = self.den as f64;
        let bound = w * (self.num.len() as f64 + 8.0) * f64::EPSILON * 4.0 / d;
        (v / d, bound)
    }

    pub fn to_f64(&self) -> f64 {
        self.approx().0
    }

    /// Exact sign: symbolic zero test, then a float filter, then
    /// fixed-point refinement.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let (v, err) = self.approx();
        if v > err {
            return 1;
        }
        if v < -err {
            return -1;
        }
        sign_of_cos_sum(self.field.m, &self.num)
    }

    /// Multiplicative inverse (Gaussian elimination over `Q`).
    pub fn inv(&self) -> Result<Self, GeomError> {
        if self.is_zero() {
            return Err(GeomError::DivisionByZero);
        }
        let phi = self.field.phi;
        // Column k of the matrix is self · ζ^k.
        let mut cols = Vec::with_capacity(phi);
        for k in 0..phi {
            let p = Self::root_power(&self.field, k);
            cols.push(CycloReal { field: self.field.clone(), num: self.num.clone(), den: 1 }.mul(&p));
        }
        let mut a: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi)
                    .map(|k| BigRational::new(BigInt::from(cols[k].num[r]), BigInt::from(cols[k].den)))
                    .collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !a[r][c].is_zero()).expect("field element is invertible");
            a.swap(c, p);
            let pivot = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v = &*v / &pivot;
            }
            for r in 0..phi {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    let pivot_row = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = a.iter().map(|row| row[phi].clone()).collect();
        let l = sol.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let num = sol
            .iter()
            .map(|x| (x.numer() * (&l / x.denom())).to_i128().ok_or(GeomError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        // The inverse of x·den is (sol); so x^-1 = sol · den.
        let num = num.iter().map(|&c| mul(c, self.den)).collect();
        let l = l.to_i128().ok_or(GeomError::Overflow)?;
        Ok(Self::normalized(self.field.clone(), num, l))
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|&c| c == 0) {
            Some(BigRational::new(BigInt::from(self.num[0]), BigInt::from(self.den)))
        } else {
            None
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr for CycloReal {
            type Output = CycloReal;
            fn $method(self, rhs: CycloReal) -> CycloReal {
                CycloReal::$inner(&self, &rhs)
            }
        }
    };
}
forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        CycloReal::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn cyclotomic_polynomials() {
        let mut cache = HashMap::new();
        assert_eq!(cyclotomic(4, &mut cache), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6, &mut cache), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12, &mut cache), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(5, &mut cache), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclo_field(20).degree(), 8);
    }

    #[test]
    fn small_polygons_are_rational() {
        for n in [3usize, 4, 6] {
            let m = n.lcm(&4);
            for k in 0..n as i64 {
                let c = CycloReal::cos_2pi(m, k * (m / n) as i64);
                let s = CycloReal::sin_2pi(m, k * (m / n) as i64);
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                assert!((c.to_f64() - theta.cos()).abs() < 1e-12);
                assert!((s.to_f64() - theta.sin()).abs() < 1e-12);
                if n == 4 {
                    assert!(c.as_rational().is_some() && s.as_rational().is_some());
                }
                if n != 4 {
                    // Cosines are rational; sines involve sqrt(3).
                    assert!(c.as_rational().is_some(), "n={n} k={k}");
                }
            }
        }
        assert_eq!(CycloReal::cos_2pi(12, 2).as_rational(), Some(r(1, 2)));
    }

    #[test]
    fn pythagoras_and_pentagon_identity() {
        for m in [12usize, 20, 28, 44] {
            for j in 0..m as i64 {
                let c = CycloReal::cos_2pi(m, j);
                let s = CycloReal::sin_2pi(m, j);
                assert_eq!(c.mul(&c).add(&s.mul(&s)), CycloReal::from_int(m, 1));
                assert!(c.is_real() && s.is_real());
            }
        }
        // 4c² + 2c - 1 = 0 for c = cos(2π/5).
        let c = CycloReal::cos_2pi(20, 4);
        let four = CycloReal::from_int(20, 4);
        let two = CycloReal::from_int(20, 2);
        let one = CycloReal::from_int(20, 1);
        assert!(four.mul(&c).mul(&c).add(&two.mul(&c)).sub(&one).is_zero());
    }

    #[test]
    fn signs_and_inverse() {
        let m = 20;
        let c = CycloReal::cos_2pi(m, 4);
        assert_eq!(c.signum(), 1);
        assert_eq!(CycloReal::cos_2pi(m, 6).signum(), -1);
        let x = c.sub(&CycloReal::from_rat(m, &r(309, 1000)).unwrap());
        assert_eq!(x.signum(), 1);
        let inv = c.inv().unwrap();
        assert_eq!(inv.mul(&c), CycloReal::from_int(m, 1));
        assert!(CycloReal::zero(m).inv().is_err());
    }

    #[test]
    fn field_axioms_on_samples() {
        let m = 28;
        let xs: Vec<CycloReal> =
            (0..7).map(|j| CycloReal::cos_2pi(m, j).add(&CycloReal::sin_2pi(m, 3 * j + 1))).collect();
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
                let d = a.sub(b);
                let approx = a.to_f64() - b.to_f64();
                assert!(d.signum() == 0 || (d.signum() as f64) * approx > -1e-12);
            }
        }
    }
}
