//! Jacobian criteria: minors, the Jacobian ideal of a presentation,
//! smoothness verdicts and loci of maximal order.
//!
//! Verdicts are geometric: an ideal "contains 1" exactly when its zero set
//! over the algebraic closure is empty, so smooth here means smooth over
//! `Q̄`, which for a perfect field is the same as regular.

use crate::ideal::{Ideal, QuotientPresentation};
use crate::limits::Limits;
use crate::par;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};

use num_traits::Zero;

/// The matrix of partial derivatives of a presentation's relations.
#[derive(Clone, Debug)]
pub struct JacobianData {
    pub presentation: QuotientPresentation,
    pub relations: Vec<Polynomial>,
    pub matrix: Vec<Vec<Polynomial>>,
}

impl JacobianData {
    /// Rows follow the presentation's nonzero relation generators.
    pub fn new(presentation: &QuotientPresentation) -> Result<JacobianData> {
        let relations = presentation.relation_gens();
        let matrix = jacobian_matrix(&relations, presentation.ring())?;
        Ok(JacobianData { presentation: presentation.clone(), relations, matrix })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.presentation.ring().arity()
    }
}

/// Rows of partial derivatives, one per polynomial.
pub fn jacobian_matrix(polys: &[Polynomial], ring: &Ring) -> Result<Vec<Vec<Polynomial>>> {
    polys
        .iter()
        .map(|f| (0..ring.arity()).map(|j| f.partial_derivative(j)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    /// Empty when smooth; otherwise generators of the (reduced when
    /// zero-dimensional) singular locus.
    pub witness: Vec<Polynomial>,
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ideal of the `r × r` minors using exactly the given rows.
pub fn minors_ideal(m: &[Vec<Polynomial>], ring: &Ring, r: usize, rows: &[usize]) -> Result<Ideal> {
    if r != rows.len() {
        return Err(Error::InvalidArgument(format!("minor size {r} differs from {} selected rows", rows.len())));
    }
    if r == 0 {
        return Ok(Ideal::unit(ring));
    }
    let cols = ring.arity();
    if r > cols {
        return Ok(Ideal::zero(ring));
    }
    for &i in rows {
        if i >= m.len() {
            return Err(Error::IndexOutOfRange { index: i, arity: m.len() });
        }
    }
    let mut gens = Vec::new();
    for cs in subsets(cols, r) {
        let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&i| cs.iter().map(|&c| m[i][c].clone()).collect()).collect();
        let d = determinant(&sub, ring);
        if !d.is_zero() {
            gens.push(d);
        }
    }
    Ideal::new(ring, gens)
}

/// Ideal of all `r × r` minors of `m`.
pub fn all_minors(m: &[Vec<Polynomial>], ring: &Ring, r: usize) -> Result<Ideal> {
    if r == 0 {
        return Ok(Ideal::unit(ring));
    }
    let mut gens = Vec::new();
    for rows in subsets(m.len(), r) {
        gens.extend(minors_ideal(m, ring, r, &rows)?.nonzero_gens());
    }
    Ideal::new(ring, gens)
}

/// `Σ_L (J_L : J)·H_L + J` over nonempty subsets `L` of the relations,
/// where `J_L` is generated by the relations in `L` and `H_L` by the
/// `|L|`-minors of the Jacobian rows in `L`. Not radicalized.
pub fn jacobian_ideal(p: &QuotientPresentation) -> Result<Ideal> {
    let data = JacobianData::new(p)?;
    let ring = p.ring();
    if data.relations.is_empty() {
        return Ok(Ideal::unit(ring));
    }
    let whole = Ideal::new(ring, data.relations.clone())?;
    let max = data.rows().min(data.cols());
    let all: Vec<Vec<usize>> = (1..=max).flat_map(|k| subsets(data.rows(), k)).collect();
    let parts = par::try_map(&all, |l| {
        let h = minors_ideal(&data.matrix, ring, l.len(), l)?;
        if h.is_zero() {
            return Ok(None);
        }
        let jl = Ideal::new(ring, l.iter().map(|&i| data.relations[i].clone()).collect())?;
        let colon = jl.quotient(&whole)?;
        if colon.is_zero() {
            return Ok(None);
        }
        Ok(Some(colon.product(&h)?))
    })?;
    let mut gens = data.relations.clone();
    for part in parts.into_iter().flatten() {
        gens.extend(part.nonzero_gens());
    }
    Ideal::new(ring, gens)?.reduced()
}

pub fn singular_locus_ideal(p: &QuotientPresentation) -> Result<Ideal> {
    p.lift(&jacobian_ideal(p)?)
}

pub fn is_smooth(p: &QuotientPresentation) -> Result<SmoothnessVerdict> {
    let locus = singular_locus_ideal(p)?;
    if locus.contains_one()? {
        return Ok(SmoothnessVerdict { smooth: true, witness: Vec::new() });
    }
    let reduced = if locus.dimension()? == 0 { locus.radical_zero_dim()? } else { locus.reduced()? };
    Ok(SmoothnessVerdict { smooth: false, witness: reduced.gens().to_vec() })
}

/// Whether every generator of `ideal` lies in the radical of the Jacobian
/// ideal, i.e. some power of `ideal` lies in it.
pub fn power_in_jacobian(p: &QuotientPresentation, ideal: &Ideal) -> Result<bool> {
    singular_locus_ideal(p)?.radical_contains(&ideal.map_to_ring(p.ring())?)
}

/// All partial derivatives of `f` of order exactly `k`.
fn partials_of_order(f: &Polynomial, k: u32) -> Result<Vec<Polynomial>> {
    let mut level = vec![f.clone()];
    for _ in 0..k {
        let mut next: Vec<Polynomial> = Vec::new();
        for g in &level {
            for v in 0..f.ring().arity() {
                let d = g.partial_derivative(v)?;
                if !d.is_zero() && !next.contains(&d) {
                    next.push(d);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

fn reduce_locus(ideal: Ideal) -> Result<Ideal> {
    if ideal.dimension()? == 0 {
        ideal.radical_zero_dim()
    } else {
        ideal.reduced()
    }
}

/// Maximal order `μ` of the hypersurface `f = 0` over all points, and the
/// locus where it is attained (reduced when zero-dimensional).
///
/// Searches `d` downward from the total degree: `μ` is the largest `d` for
/// which `f` and its partials of order below `d` have a common zero.
pub fn max_order_locus(f: &Polynomial) -> Result<(u32, Ideal)> {
    if f.is_constant() {
        return Err(Error::InvalidArgument("the order locus of a constant is undefined".into()));
    }
    let ring = f.ring();
    let degree = f.total_degree();
    let mut levels: Vec<Vec<Polynomial>> = Vec::new();
    for k in 0..degree {
        levels.push(partials_of_order(f, k)?);
    }
    for d in (1..=degree).rev() {
        let gens: Vec<Polynomial> = levels[..d as usize].iter().flatten().cloned().collect();
        let ideal = Ideal::new(ring, gens)?;
        if !ideal.contains_one()? {
            return Ok((d, reduce_locus(ideal)?));
        }
    }
    unreachable!("a nonconstant polynomial generates a proper ideal")
}

/// One derivative step on a smooth presented ring: `I + R` together with
/// the `(c+1)`-minors of the Jacobian of `R`'s generators with one row of
/// `I` appended, where `c` is the codimension of the presentation.
pub fn derivative_ideal(p: &QuotientPresentation, ideal: &Ideal) -> Result<Ideal> {
    let ring = p.ring();
    let ideal = ideal.map_to_ring(ring)?;
    let rel = p.relations().reduced()?;
    let rels = rel.nonzero_gens();
    let codim = (ring.arity() as i64 - p.dimension()?).max(0) as usize;
    let mut gens: Vec<Polynomial> = ideal.nonzero_gens();
    gens.extend(rels.iter().cloned());
    let jac_r = jacobian_matrix(&rels, ring)?;
    let row_sets = subsets(rels.len(), codim);
    for h in ideal.nonzero_gens() {
        let mut m = jac_r.clone();
        m.extend(jacobian_matrix(std::slice::from_ref(&h), ring)?);
        let last = m.len() - 1;
        for rows in &row_sets {
            let mut rows = rows.clone();
            rows.push(last);
            gens.extend(minors_ideal(&m, ring, rows.len(), &rows)?.nonzero_gens());
        }
    }
    Ideal::new(ring, gens)?.reduced()
}

/// Maximal order of `ideal` on a smooth presented ring, with the reduced
/// locus of points where it is attained.
pub fn order_locus(p: &QuotientPresentation, ideal: &Ideal) -> Result<(u32, Ideal)> {
    let mut current = p.lift(&ideal.map_to_ring(p.ring())?)?;
    if current.contains_one()? {
        return Err(Error::InvalidArgument("the ideal is the unit ideal on this ring".into()));
    }
    if current.same_ideal(p.relations())? {
        return Err(Error::InvalidArgument("the ideal vanishes identically on this ring".into()));
    }
    let cap = Limits::current().gb_degree_cap;
    for k in 1..=cap {
        let next = derivative_ideal(p, &current)?;
        if next.contains_one()? {
            return Ok((k, reduce_locus(current)?));
        }
        current = next;
    }
    Err(Error::ResourceCap(format!("order above {cap}")))
}

/// Order of `ideal` at a rational point of a smooth presented ring.
pub fn order_at(p: &QuotientPresentation, ideal: &Ideal, point: &[crate::poly::Rational]) -> Result<u32> {
    let ring = p.ring();
    if point.len() != ring.arity() {
        return Err(Error::ArityMismatch { expected: ring.arity(), got: point.len() });
    }
    let vanishes = |i: &Ideal| -> Result<bool> {
        for g in i.nonzero_gens() {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if !vanishes(p.relations())? {
        return Err(Error::InvalidArgument("point is not on the presented ring".into()));
    }
    let mut current = p.lift(&ideal.map_to_ring(ring)?)?;
    let cap = Limits::current().gb_degree_cap;
    for k in 0..cap {
        if !vanishes(&current)? {
            return Ok(k);
        }
        current = derivative_ideal(p, &current)?;
    }
    Err(Error::ResourceCap(format!("order above {cap}")))
}
