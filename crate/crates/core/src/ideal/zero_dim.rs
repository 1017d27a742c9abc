//! Zero-dimensional radicals through univariate minimal polynomials.
//!
//! For a zero-dimensional ideal the powers `1, x, x², …` of each variable are
//! linearly dependent in the finite-dimensional quotient. The first
//! dependency among their normal forms is the minimal polynomial of `x`, and
//! adjoining the squarefree parts of all minimal polynomials yields the
//! radical.

use num_traits::{One, Zero};

use super::{GroebnerBasis, Ideal};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::{Error, Result};

const MAX_QUOTIENT_DIMENSION: usize = 4096;

struct Row {
    vector: Polynomial,
    combo: Vec<Rational>,
}

/// Monic generator of `I ∩ Q[x_var]` for a zero-dimensional `I`.
pub(crate) fn minimal_polynomial(gb: &GroebnerBasis, var: usize) -> Result<Polynomial> {
    let ring = gb.ring();
    let x = Polynomial::var(ring, var);
    let mut rows: Vec<Row> = Vec::new();
    let mut power = gb.normal_form(&Polynomial::one(ring))?;
    for k in 0..=MAX_QUOTIENT_DIMENSION {
        let mut v = power.clone();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for row in &rows {
            let pivot = row.vector.leading_monomial().unwrap();
            let c = v.coefficient(pivot);
            if c.is_zero() {
                continue;
            }
            v = &v - &row.vector.scale(&c);
            for (dst, src) in combo.iter_mut().zip(&row.combo) {
                *dst -= &c * src;
            }
        }
        if v.is_zero() {
            let terms = combo.into_iter().enumerate().map(|(e, c)| (Monomial::new(var_exps(ring.arity(), var, e as u32)), c));
            return Ok(Polynomial::from_terms(ring, terms).monic());
        }
        let lc = v.leading_coefficient().unwrap().recip();
        rows.push(Row { vector: v.scale(&lc), combo: combo.iter().map(|c| c * &lc).collect() });
        power = gb.normal_form(&(&power * &x))?;
    }
    Err(Error::ResourceCap(format!("quotient ring larger than {MAX_QUOTIENT_DIMENSION}")))
}

fn var_exps(arity: usize, var: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; arity];
    v[var] = e;
    v
}

/// Greatest common divisor of two polynomials in a single variable, monic.
pub(crate) fn univariate_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// `p / gcd(p, p')` for `p` in the single variable `var`.
pub(crate) fn squarefree_part(p: &Polynomial, var: usize) -> Result<Polynomial> {
    let dp = p.partial_derivative(var)?;
    if dp.is_zero() {
        return Ok(p.monic());
    }
    let g = univariate_gcd(p, &dp);
    Ok(p.div_exact(&g).expect("gcd divides").monic())
}

pub(crate) fn radical(ideal: &Ideal) -> Result<Ideal> {
    let dim = ideal.dimension()?;
    if dim < 0 {
        return Ok(Ideal::unit(ideal.ring()));
    }
    if dim > 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    let gb = ideal.groebner()?;
    let mut gens = gb.basis().to_vec();
    let mut changed = false;
    for var in 0..ideal.ring().arity() {
        let p = minimal_polynomial(gb, var)?;
        let s = squarefree_part(&p, var)?;
        if s != p {
            changed = true;
        }
        gens.push(s);
    }
    let out = Ideal::new(ideal.ring(), gens)?;
    if changed {
        out.reduced()
    } else {
        ideal.reduced()
    }
}

const MAX_ROOT_SEARCH: u64 = 1 << 40;

/// Divisors of `n > 0` by trial division.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a polynomial in the single variable `var`.
pub(crate) fn rational_roots(p: &Polynomial, var: usize) -> Result<Vec<Rational>> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive};

    if p.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    let denominators = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut coeffs: Vec<(u32, BigInt)> = p
        .terms()
        .iter()
        .map(|(m, c)| (m.exponents()[var], (c * Rational::from_integer(denominators.clone())).to_integer()))
        .collect();
    coeffs.sort_by_key(|(e, _)| *e);
    let low = coeffs[0].0;
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let constant = coeffs[0].1.abs();
    let leading = coeffs.last().unwrap().1.abs();
    if coeffs.last().unwrap().0 == low {
        return Ok(roots);
    }
    let (Some(a0), Some(an)) = (constant.to_u64(), leading.to_u64()) else {
        return Err(Error::ResourceCap("coefficients too large for a rational root search".into()));
    };
    if a0 > MAX_ROOT_SEARCH || an > MAX_ROOT_SEARCH {
        return Err(Error::ResourceCap("coefficients too large for a rational root search".into()));
    }
    let eval = |x: &Rational| -> Rational {
        coeffs.iter().fold(Rational::zero(), |acc, (e, c)| acc + Rational::from_integer(c.clone()) * num_traits::pow(x.clone(), (*e - low) as usize))
    };
    for num in divisors(a0) {
        for den in divisors(an) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let x = Rational::new(BigInt::from(num) * sign, BigInt::from(den));
                if eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// All rational points of a zero-dimensional ideal, sorted.
pub(crate) fn rational_points(ideal: &Ideal) -> Result<Vec<Vec<Rational>>> {
    let dim = ideal.dimension()?;
    if dim < 0 {
        return Ok(Vec::new());
    }
    if dim > 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    let ring = ideal.ring().clone();
    let mut partial: Vec<(Vec<Rational>, Ideal)> = vec![(Vec::new(), ideal.clone())];
    for var in 0..ring.arity() {
        let mut next = Vec::new();
        for (coords, current) in partial {
            let p = minimal_polynomial(current.groebner()?, var)?;
            for root in rational_roots(&p, var)? {
                let images: Vec<Polynomial> = (0..ring.arity())
                    .map(|i| if i == var { Polynomial::constant(&ring, root.clone()) } else { Polynomial::var(&ring, i) })
                    .collect();
                let restricted = current.substitute(&images)?;
                if restricted.contains_one()? {
                    continue;
                }
                let mut c = coords.clone();
                c.push(root);
                next.push((c, restricted));
            }
        }
        partial = next;
    }
    let mut points: Vec<Vec<Rational>> = partial.into_iter().map(|(c, _)| c).collect();
    points.sort();
    Ok(points)
}

/// Number of standard monomials of a zero-dimensional basis, i.e. the
/// dimension of the quotient as a vector space.
pub(crate) fn quotient_dimension(gb: &GroebnerBasis) -> Result<usize> {
    let arity = gb.ring().arity();
    let leads = gb.leading_monomials();
    if gb.is_unit() {
        return Ok(0);
    }
    let mut count = 0;
    let mut frontier = vec![Monomial::one(arity)];
    let mut seen = std::collections::HashSet::new();
    seen.insert(Monomial::one(arity));
    while let Some(m) = frontier.pop() {
        count += 1;
        if count > MAX_QUOTIENT_DIMENSION {
            return Err(Error::ResourceCap(format!("quotient ring larger than {MAX_QUOTIENT_DIMENSION}")));
        }
        for v in 0..arity {
            let next = m.mul(&Monomial::var(arity, v));
            if leads.iter().any(|l| l.divides(&next)) || !seen.insert(next.clone()) {
                continue;
            }
            frontier.push(next);
        }
    }
    Ok(count)
}
