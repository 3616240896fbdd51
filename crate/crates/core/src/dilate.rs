//! Sums of transcendental dilates, modelled in `F_p[t, u]`.
//!
//! A transcendental `ξ` over `F_p[t]` is represented by a second
//! indeterminate `u`; `t` and `u` are algebraically independent by
//! construction, which is all the counting needs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::setops::DEFAULT_SET_CAP;

/// A polynomial in `F_p[t, u]`. Terms are keyed by `(u-degree, t-degree)`
/// so iteration follows the canonical `(j, i)` order; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(usize, usize), Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    T,
    U,
}

fn require_prime(field: &Field) -> Result<()> {
    if field.is_prime_field() {
        Ok(())
    } else {
        Err(Error::PrimeFieldRequired(field.order()))
    }
}

impl BiPoly {
    pub fn zero(field: &Field) -> Result<Self> {
        require_prime(field)?;
        Ok(BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        })
    }

    /// From `(t-degree, u-degree, coefficient)` triples; repeated monomials add up.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (usize, usize, Elem)>) -> Result<Self> {
        let mut out = Self::zero(field)?;
        for (i, j, c) in terms {
            field.check(c)?;
            out.add_term(i, j, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, i: usize, j: usize, c: Elem) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((j, i)).or_insert(0);
        *e = self.field.add(*e, c);
        if *e == 0 {
            self.terms.remove(&(j, i));
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(t-degree, u-degree, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Elem)> + '_ {
        self.terms.iter().map(|(&(j, i), &c)| (i, j, c))
    }

    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.terms.get(&(j, i)).copied().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &BiPoly) -> Result<BiPoly> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        Ok(out)
    }

    /// Multiplication by `t` or `u`.
    pub fn times(&self, v: Var) -> BiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&(j, i), &c)| match v {
                Var::T => ((j, i + 1), c),
                Var::U => ((j + 1, i), c),
            })
            .collect();
        BiPoly {
            field: self.field.clone(),
            terms,
        }
    }

    /// Parses `i,j,c;i,j,c;...` (`0` for zero). Terms may come in any order
    /// but each monomial at most once, with a nonzero coefficient.
    pub fn parse(field: &Field, s: &str) -> Result<BiPoly> {
        let s = s.trim();
        let bad = |msg: String| Error::parse(0, msg);
        let mut out = Self::zero(field)?;
        if s == "0" {
            return Ok(out);
        }
        if s.is_empty() {
            return Err(bad("empty term list".into()));
        }
        for term in s.split(';') {
            let parts: Vec<&str> = term.split(',').map(str::trim).collect();
            let [i, j, c] = parts[..] else {
                return Err(bad(format!("term `{term}` is not i,j,c")));
            };
            let num = |x: &str| x.parse::<usize>().map_err(|_| bad(format!("bad number `{x}`")));
            let (i, j, c) = (num(i)?, num(j)?, num(c)?);
            if c == 0 || c >= field.order() as usize {
                return Err(bad(format!("coefficient {c} must lie in 1..{}", field.order())));
            }
            if out.terms.contains_key(&(j, i)) {
                return Err(bad(format!("monomial t^{i} u^{j} repeated")));
            }
            out.terms.insert((j, i), c as Elem);
        }
        Ok(out)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "{i},{j},{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPolySet {
    field: Field,
    elems: BTreeSet<BiPoly>,
}

impl BiPolySet {
    pub fn new(field: &Field) -> Result<Self> {
        require_prime(field)?;
        Ok(BiPolySet {
            field: field.clone(),
            elems: BTreeSet::new(),
        })
    }

    pub fn from_elems(field: &Field, elems: impl IntoIterator<Item = BiPoly>) -> Result<Self> {
        let mut s = Self::new(field)?;
        for e in elems {
            s.insert(e)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, e: BiPoly) -> Result<bool> {
        if e.field != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.elems.insert(e))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &BiPoly) -> bool {
        self.elems.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BiPoly> {
        self.elems.iter()
    }

    pub fn sumset(&self, other: &BiPolySet) -> Result<BiPolySet> {
        self.sumset_capped(other, DEFAULT_SET_CAP)
    }

    pub fn sumset_capped(&self, other: &BiPolySet, cap: usize) -> Result<BiPolySet> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = BTreeSet::new();
        for a in &self.elems {
            for b in &other.elems {
                out.insert(a.checked_add(b)?);
                if out.len() > cap {
                    return Err(Error::cap("bivariate sumset", out.len() as u128, cap as u128));
                }
            }
        }
        Ok(BiPolySet {
            field: self.field.clone(),
            elems: out,
        })
    }

    /// `v·A`.
    pub fn dilate(&self, v: Var) -> BiPolySet {
        BiPolySet {
            field: self.field.clone(),
            elems: self.elems.iter().map(|e| e.times(v)).collect(),
        }
    }

    /// `A + v·A`.
    pub fn dilate_sum(&self, v: Var) -> Result<BiPolySet> {
        self.sumset(&self.dilate(v))
    }
}

/// `{ Σ_{i=1}^{n} a_i(t)·u^i : a_i ∈ F_p[t], deg a_i < m }`, of size `p^{nm}`.
pub fn dilate_example(p: u32, n: usize, m: usize, cap: usize) -> Result<BiPolySet> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    let field = Field::prime(p)?;
    let slots: Vec<(usize, usize)> = (1..=n).flat_map(|j| (0..m).map(move |i| (i, j))).collect();
    let size = (p as u128).checked_pow(slots.len() as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::cap("dilate example", size, cap as u128));
    }
    let mut out = BiPolySet::new(&field)?;
    for mut idx in 0..size {
        let mut e = BiPoly::zero(&field)?;
        for &(i, j) in &slots {
            e.add_term(i, j, (idx % p as u128) as Elem);
            idx /= p as u128;
        }
        out.elems.insert(e);
    }
    Ok(out)
}

/// `log_p` of a positive rational: exact when it is an integral power of `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogValue {
    Exact(i64),
    Approx(f64),
}

impl LogValue {
    pub fn of(x: Ratio<u64>, p: u32) -> LogValue {
        match exact_log(x, p as u64) {
            Some(e) => LogValue::Exact(e),
            None => LogValue::Approx(((*x.numer() as f64).ln() - (*x.denom() as f64).ln()) / (p as f64).ln()),
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            LogValue::Exact(e) => e as f64,
            LogValue::Approx(v) => v,
        }
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            LogValue::Exact(e) => Some(e),
            LogValue::Approx(_) => None,
        }
    }

    pub fn product(self, other: LogValue) -> LogValue {
        match (self, other) {
            (LogValue::Exact(a), LogValue::Exact(b)) => LogValue::Exact(a * b),
            _ => LogValue::Approx(self.as_f64() * other.as_f64()),
        }
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LogValue::Exact(e) => s.serialize_i64(*e),
            LogValue::Approx(v) => s.serialize_f64(*v),
        }
    }
}

fn exact_log(x: Ratio<u64>, p: u64) -> Option<i64> {
    let power = |mut n: u64| -> Option<i64> {
        let mut e = 0;
        while n > 1 {
            if !n.is_multiple_of(p) {
                return None;
            }
            n /= p;
            e += 1;
        }
        (n == 1).then_some(e)
    };
    Some(power(*x.numer())? - power(*x.denom())?)
}

/// Growth of `A` under `t`- and `u`-dilation, compared with `log_p |A|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub p: u32,
    pub size: u64,
    pub t_sum_size: u64,
    pub u_sum_size: u64,
    pub k1_num: u64,
    pub k1_den: u64,
    pub k2_num: u64,
    pub k2_den: u64,
    pub log_k1: LogValue,
    pub log_k2: LogValue,
    pub log_k1_times_log_k2: LogValue,
    pub log_size: LogValue,
    /// `Some(log K_1 · log K_2 == log |A|)` when every quantity is exact.
    pub product_equals_log_size: Option<bool>,
}

pub fn growth_report(a: &BiPolySet) -> Result<GrowthReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = a.field().characteristic();
    let size = a.len() as u64;
    let t_sum_size = a.dilate_sum(Var::T)?.len() as u64;
    let u_sum_size = a.dilate_sum(Var::U)?.len() as u64;
    let k1 = Ratio::new(t_sum_size, size);
    let k2 = Ratio::new(u_sum_size, size);
    let log_k1 = LogValue::of(k1, p);
    let log_k2 = LogValue::of(k2, p);
    let product = log_k1.product(log_k2);
    let log_size = LogValue::of(Ratio::from_integer(size), p);
    let product_equals_log_size = match (product, log_size) {
        (LogValue::Exact(a), LogValue::Exact(b)) => Some(a == b),
        _ => None,
    };
    Ok(GrowthReport {
        p,
        size,
        t_sum_size,
        u_sum_size,
        k1_num: *k1.numer(),
        k1_den: *k1.denom(),
        k2_num: *k2.numer(),
        k2_den: *k2.denom(),
        log_k1,
        log_k2,
        log_k1_times_log_k2: product,
        log_size,
        product_equals_log_size,
    })
}
