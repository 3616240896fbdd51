//! Finite fields `F_q`, `q = p^r`, with elements encoded as integers.
//!
//! An element `c_0 + c_1 θ + ... + c_{r-1} θ^{r-1}` (θ a root of the modulus)
//! is stored as the integer `c_0 + c_1 p + ... + c_{r-1} p^{r-1}` in `0..q`.
//! Multiplication goes through log/antilog tables built once per field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element in its base-`p` digit encoding.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Built-in moduli, coefficients in increasing degree.
///
/// | q  | modulus            |
/// |----|--------------------|
/// | 4  | x^2 + x + 1        |
/// | 8  | x^3 + x + 1        |
/// | 9  | x^2 + 1            |
/// | 16 | x^4 + x + 1        |
/// | 25 | x^2 + 2            |
/// | 27 | x^3 + 2x + 1       |
/// | 32 | x^5 + x^2 + 1      |
/// | 49 | x^2 + 1            |
/// | 64 | x^6 + x + 1        |
pub const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
];

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so `exp[log a + log b]` needs no reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    inv: Vec<Elem>,
    neg: Vec<Elem>,
    /// Full addition table, present only for small extension fields.
    add: Option<Vec<Elem>>,
}

/// A finite field. Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn default_modulus(p: u32, r: u32) -> Option<&'static [u32]> {
    DEFAULT_MODULI
        .iter()
        .find(|(pp, rr, _)| *pp == p && *rr == r)
        .map(|(_, _, m)| *m)
}

// Dense F_p polynomial helpers used only while building tables.

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    fp_trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p) as u64;
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top] as u64 * lead_inv % p as u64;
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            let sub = c * mi as u64 % p as u64;
            a[idx] = ((a[idx] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        fp_trim(&mut a);
    }
    a
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn fp_is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            if fp_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut a: u32, p: u32, r: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(r as usize);
    for _ in 0..r {
        out.push(a % p);
        a /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: u32, b: u32, p: u32, r: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, r);
    let db = digits(b, p, r);
    let mut prod = vec![0u32; 2 * r as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut rem = fp_rem(&prod, modulus, p);
    rem.resize(r as usize, 0);
    undigits(&rem, p)
}

fn digit_add(a: u32, b: u32, p: u32, r: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..r {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

impl Field {
    /// Builds `F_{p^r}`. With `modulus == None` and `r > 1` the built-in table is used.
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q64 = (p as u64).checked_pow(r).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::InvalidField(format!("{p}^{r} exceeds the supported order {MAX_ORDER}"))
        })?;
        let q = q64 as u32;

        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected degree {r}, got {} coefficients",
                        m.len()
                    )));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::BadModulus(format!("coefficient {c} is not in F_{p}")));
                }
                if m[r as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if !fp_is_irreducible(m, p) {
                    return Err(Error::BadModulus(format!("{m:?} is reducible over F_{p}")));
                }
                m.to_vec()
            }
            None if r == 1 => vec![0, 1],
            None => default_modulus(p, r)
                .ok_or(Error::NoDefaultModulus(q64))?
                .to_vec(),
        };
        if r > 1 && !fp_is_irreducible(&modulus, p) {
            return Err(Error::BadModulus(format!("{modulus:?} is reducible over F_{p}")));
        }

        let mul = |a: u32, b: u32| -> u32 {
            if r == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                slow_mul(a, b, p, r, &modulus)
            }
        };

        let n = q - 1;
        let generator = (1..q)
            .find(|&g| {
                let mut x = g;
                let mut order = 1u32;
                while x != 1 {
                    x = mul(x, g);
                    order += 1;
                }
                order == n
            })
            .ok_or_else(|| Error::Invariant("no primitive element found".into()))?;

        let mut exp = vec![0; 2 * n as usize];
        let mut log = vec![0; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = mul(x, generator);
        }

        let mut inv = vec![0; q as usize];
        for a in 1..q {
            inv[a as usize] = exp[((n - log[a as usize]) % n) as usize];
        }

        let neg: Vec<Elem> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, r).into_iter().map(|c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();

        let add = (r > 1 && p != 2 && q <= 256).then(|| {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, r);
                }
            }
            t
        });

        Ok(Field(Arc::new(Tables {
            p,
            r,
            q,
            modulus,
            exp,
            log,
            inv,
            neg,
            add,
        })))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Parses a field spec such as `2^3` or `5`, with an optional modulus like `1,1,0,1`.
    pub fn from_spec(spec: &str, modulus: Option<&str>) -> Result<Self> {
        let spec = spec.trim();
        let (p, r) = match spec.split_once('^') {
            Some((p, r)) => (p.trim(), r.trim()),
            None => (spec, "1"),
        };
        let bad = || Error::InvalidField(format!("cannot parse field spec `{spec}`"));
        let p: u32 = p.parse().map_err(|_| bad())?;
        let r: u32 = r.parse().map_err(|_| bad())?;
        let modulus = modulus
            .map(|m| {
                m.split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::BadModulus(format!("bad coefficient `{c}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Self::new(p, r, modulus.as_deref())
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.r
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.r == 1
    }

    /// The modulus, coefficients in increasing degree (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `p^r` spec string, the inverse of [`Field::from_spec`] without the modulus.
    pub fn spec(&self) -> String {
        format!("{}^{}", self.0.p, self.0.r)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    pub fn check(&self, a: Elem) -> Result<Elem> {
        if a < self.0.q {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange {
                element: a,
                order: self.0.q,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.0;
        if t.p == 2 {
            a ^ b
        } else if t.r == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if let Some(add) = &t.add {
            add[(a * t.q + b) as usize]
        } else {
            digit_add(a, b, t.p, t.r)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64 * (e % n) % n;
        self.0.exp[l as usize]
    }

    /// `a + b·c`, the inner step of every elimination loop.
    #[inline]
    pub(crate) fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.r == other.0.r && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        (self.0.p, self.0.r, &self.0.modulus).cmp(&(other.0.p, other.0.r, &other.0.modulus))
    }
}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.r.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)?;
        if self.0.r > 1 {
            write!(f, " (modulus {:?})", self.0.modulus)?;
        }
        Ok(())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn supported() -> Vec<Field> {
        let mut fields: Vec<Field> = [2, 3, 5, 7, 11, 13, 31, 61]
            .iter()
            .map(|&p| Field::prime(p).unwrap())
            .collect();
        for &(p, r, _) in DEFAULT_MODULI {
            fields.push(Field::new(p, r, None).unwrap());
        }
        fields
    }

    #[test]
    fn f2_characteristic_two() {
        let f = Field::prime(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn f5_inverse_of_two() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn f3_add() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
    }

    // Schoolbook product of (a0 + a1 θ)(b0 + b1 θ) with θ² replaced by `theta_sq`.
    fn quad_mul(a: u32, b: u32, p: u32, theta_sq: (u32, u32)) -> u32 {
        let (a0, a1, b0, b1) = (a % p, a / p, b % p, b / p);
        let c0 = a0 * b0 + a1 * b1 * theta_sq.0;
        let c1 = a0 * b1 + a1 * b0 + a1 * b1 * theta_sq.1;
        (c0 % p) + (c1 % p) * p
    }

    #[test]
    fn f4_theta_squared() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        // θ² = θ + 1 over F_2
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.mul(a, b), quad_mul(a, b, 2, (1, 1)), "{a}*{b}");
            }
        }
    }

    #[test]
    fn f9_theta_squared_is_minus_one() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.mul(3, 3), 2);
        // θ² = -1 = 2
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.mul(a, b), quad_mul(a, b, 3, (2, 0)), "{a}*{b}");
            }
        }
    }

    #[test]
    fn inv_zero_is_error() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(4).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::prime(1).unwrap_err(), Error::NotPrime(1));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(
            Field::new(2, 3, Some(&[1, 1, 1])),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1, 0])),
            Err(Error::BadModulus(_))
        ));
        assert_eq!(Field::new(11, 2, None).unwrap_err(), Error::NoDefaultModulus(121));
        assert!(matches!(Field::new(2, 17, None), Err(Error::InvalidField(_))));
        // explicit modulus for an order outside the table
        let f = Field::new(11, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.order(), 121);
    }

    #[test]
    fn spec_parsing() {
        let f = Field::from_spec("2^3", None).unwrap();
        assert_eq!(f.order(), 8);
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let g = Field::from_spec("2^3", Some("1,0,1,1")).unwrap();
        assert_ne!(f, g);
        assert_eq!(Field::from_spec("7", None).unwrap().order(), 7);
        assert!(Field::from_spec("two^3", None).is_err());
        assert!(Field::from_spec("2^3", Some("1,x,0,1")).is_err());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for &(p, r, m) in DEFAULT_MODULI {
            assert!(fp_is_irreducible(m, p), "{p}^{r}");
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in supported().into_iter().filter(|f| f.order() <= 64) {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f:?} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "{f:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in supported().into_iter().filter(|f| f.order() <= 64) {
            let p = f.characteristic() as u64;
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.pow(f.add(a, b), p),
                        f.add(f.pow(a, p), f.pow(b, p)),
                        "{f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_mul_matches_schoolbook() {
        for &(p, r, m) in DEFAULT_MODULI {
            let f = Field::new(p, r, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), slow_mul(a, b, p, r, m));
                }
            }
        }
    }

    #[test]
    fn largest_supported_field_builds() {
        let f = Field::new(2, 16, Some(&[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]))
            .unwrap();
        assert_eq!(f.order(), 65536);
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
    }
}
