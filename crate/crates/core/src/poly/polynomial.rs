use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, Ring};
use crate::{Error, Result};

/// Polynomial over the rationals; terms are kept sorted in descending ring
/// order with no zero coefficients, so equal polynomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

/// Order of vanishing at a point; the zero polynomial vanishes to infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => f.write_str("infinity"),
        }
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.arity()), c));
        }
        p
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        assert!(index < ring.arity(), "variable index out of range");
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), index), Rational::one())],
        }
    }

    /// The variable called `name`, if the ring has it.
    pub fn var_named(ring: &Ring, name: &str) -> Option<Self> {
        ring.var_index(name).map(|i| Polynomial::var(ring, i))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.arity(), ring.arity());
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted descending and nonzero; only checked in debug builds.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.is_unit()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term; 0 for constants and for zero.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[var] > 0)
    }

    /// Sorted indices of the variables occurring in some term.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.ring.arity()).filter(|&i| self.uses_var(i)).collect()
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    fn check_same(&self, other: &Polynomial) {
        assert!(
            self.ring.same_vars(&other.ring),
            "polynomials from different rings: {} vs {}",
            self.ring,
            other.ring
        );
    }

    /// `other` re-sorted into this polynomial's ring when the orders differ.
    fn aligned<'a>(&self, other: &'a Polynomial) -> std::borrow::Cow<'a, Polynomial> {
        self.check_same(other);
        if self.ring.order() == other.ring.order() {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_ring_order(&self.ring))
        }
    }

    /// The same polynomial in `ring`, which must have the same variables.
    pub fn with_ring_order(&self, ring: &Ring) -> Polynomial {
        assert!(self.ring.same_vars(ring));
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn map_to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if Ring::ptr_eq(&self.ring, target) || *self.ring == **target {
            return Ok(self.clone());
        }
        let mut index = Vec::with_capacity(self.ring.arity());
        for (i, v) in self.ring.vars().iter().enumerate() {
            let j = target.var_index(v);
            if j.is_none() && self.uses_var(i) {
                return Err(Error::RingMismatch(format!("variable `{v}` does not exist in {target}")));
            }
            index.push(j);
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; target.arity()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if let Some(j) = index[i] {
                    e[j] = k;
                }
            }
            (Monomial::new(e), c.clone())
        });
        let mut terms: Vec<_> = terms.collect();
        terms.sort_by(|a, b| target.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let other = self.aligned(other);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        let arity = self.ring.arity();
        if var >= arity {
            return Err(Error::IndexOutOfRange { index: var, arity });
        }
        let terms = self.terms.iter().filter(|(m, _)| m.exponents()[var] > 0).map(|(m, c)| {
            let k = m.exponents()[var];
            let mut m = m.clone();
            m.exponents_mut()[var] -= 1;
            (m, c * Rational::from_integer(k.into()))
        });
        // lowering one exponent can reorder terms under grevlex/block orders
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::ArityMismatch { expected: self.ring.arity(), got: images.len() });
        }
        let Some(first) = images.first() else {
            unreachable!("rings have at least one variable")
        };
        let target = first.ring().clone();
        if let Some(bad) = images.iter().find(|p| !p.ring.same_vars(&target)) {
            return Err(Error::RingMismatch(format!("substitution images live in {} and {}", target, bad.ring)));
        }
        let images: Vec<_> = images.iter().map(|p| p.with_target(&target)).collect();
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            for (tm, tc) in t.terms {
                *acc.entry(tm).or_insert_with(Rational::zero) += tc;
            }
        }
        Ok(Polynomial::from_map(&target, acc))
    }

    fn with_target(&self, target: &Ring) -> Polynomial {
        if self.ring.order() == target.order() {
            self.clone()
        } else {
            self.with_ring_order(target)
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch { expected: self.ring.arity(), got: point.len() });
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// `f(x + p)`.
    pub fn translate(&self, point: &[Rational]) -> Result<Polynomial> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch { expected: self.ring.arity(), got: point.len() });
        }
        let images: Vec<_> = point
            .iter()
            .enumerate()
            .map(|(i, p)| &Polynomial::var(&self.ring, i) + &Polynomial::constant(&self.ring, p.clone()))
            .collect();
        self.substitute(&images)
    }

    /// Order of vanishing at `point`: the lowest total degree after moving
    /// the point to the origin.
    pub fn order_at_point(&self, point: &[Rational]) -> Result<Multiplicity> {
        Ok(match self.translate(point)?.low_degree() {
            Some(d) => Multiplicity::Finite(d),
            None => Multiplicity::Infinite,
        })
    }

    /// Multivariate division by a single polynomial: `self = q * divisor + r`
    /// with no term of `r` divisible by the leading monomial of `divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let divisor = self.aligned(divisor);
        let (lm, lc) = divisor.leading_term().unwrap();
        let mut quotient = Vec::new();
        let mut remainder = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match m.div(lm) {
                Some(q) => {
                    let qc = &c / lc;
                    p = &p - &divisor.mul_term(&q, &qc);
                    quotient.push((q, qc));
                }
                None => {
                    remainder.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        (
            Polynomial::from_sorted(&self.ring, quotient),
            Polynomial::from_sorted(&self.ring, remainder),
        )
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Sign-normalized copy: leading coefficient made positive.
    pub fn abs_leading(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let rhs = self.aligned(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c).with_target(&self.ring);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *acc.entry(a.mul(b)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
