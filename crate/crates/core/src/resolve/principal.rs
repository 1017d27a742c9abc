use crate::blowup::chart::{divide_out_generator, divisibility_exponent};
use crate::blowup::{blowup_charts, strict_transform, BlowupStep, Center, Chart};
use crate::ideal::{Ideal, QuotientPresentation};
use crate::limits::Limits;
use crate::par;
use crate::poly::Polynomial;
use crate::{Error, Result};

/// Per-chart witness that each strict transform is principal: the strict
/// transform of `(f)` equals `(f / g^e)` modulo the chart relations.
#[derive(Clone, Debug)]
pub struct ChartCertificate {
    pub chart: usize,
    /// True when the chart itself is empty.
    pub empty: bool,
    pub exponents: Vec<u32>,
    pub generators: Vec<Polynomial>,
    /// For separation: whether the strict transforms meet in this chart.
    pub disjoint: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct PrincipalizationResult {
    pub n: u32,
    pub step: BlowupStep,
    pub certificates: Vec<ChartCertificate>,
}

impl PrincipalizationResult {
    /// Whether every chart has a principal certificate.
    pub fn all_principal(&self) -> bool {
        self.certificates.iter().all(|c| c.empty || c.generators.len() == c.exponents.len())
    }
}

fn single_generator(ideal: &Ideal, what: &str) -> Result<Polynomial> {
    let gens = ideal.nonzero_gens();
    match gens.as_slice() {
        [f] if !f.is_constant() => Ok(f.clone()),
        _ => Err(Error::InvalidArgument(format!("{what} must be generated by one nonconstant polynomial, got {ideal}"))),
    }
}

/// `I + J^n` with duplicate generators removed, `I`'s generator first.
fn center_for(ambient: &QuotientPresentation, fs: &[Polynomial], j: &Ideal, n: u32) -> Result<Center> {
    let mut gens: Vec<Polynomial> = Vec::new();
    for g in fs.iter().chain(j.power(n)?.gens()) {
        if !g.is_zero() && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    Center::new(ambient.clone(), Ideal::new(ambient.ring(), gens)?)
}

/// Exponent and quotient of `f` along the chart's exceptional generator,
/// or `None` when the strict transform is not generated by that quotient.
fn certify(chart: &Chart, f: &Polynomial) -> Result<Option<(u32, Polynomial, Ideal)>> {
    let image = chart.pull(f)?;
    let cap = Limits::current().gb_degree_cap;
    let e = divisibility_exponent(chart, &image, cap)?;
    let q = divide_out_generator(chart, &image, e)?;
    let strict = strict_transform(chart, &Ideal::principal(f.clone()))?;
    let witness = Ideal::new(chart.ring(), vec![q.clone()])?.sum(chart.relations())?;
    if strict.same_ideal(&witness)? {
        Ok(Some((e, q, strict)))
    } else {
        Ok(None)
    }
}

fn attempt(step: &BlowupStep, fs: &[Polynomial], separate: bool) -> Result<Vec<ChartCertificate>> {
    let charts: Vec<&Chart> = step.charts.iter().collect();
    par::try_map(&charts, |chart| {
        let mut cert = ChartCertificate {
            chart: chart.generator_index(),
            empty: false,
            exponents: Vec::new(),
            generators: Vec::new(),
            disjoint: None,
        };
        if chart.is_empty()? {
            cert.empty = true;
            return Ok(cert);
        }
        let mut stricts = Vec::new();
        for f in fs {
            match certify(chart, f)? {
                Some((e, q, strict)) => {
                    cert.exponents.push(e);
                    cert.generators.push(q);
                    stricts.push(strict);
                }
                None => {
                    cert.exponents.push(0);
                    return Ok(cert);
                }
            }
        }
        if separate {
            cert.disjoint = Some(stricts[0].sum(&stricts[1])?.contains_one()?);
        }
        Ok(cert)
    })
}

fn accepted(certs: &[ChartCertificate]) -> Option<usize> {
    certs
        .iter()
        .find(|c| !c.empty && (c.generators.len() != c.exponents.len() || c.disjoint == Some(false)))
        .map(|c| c.chart)
}

/// Smallest `n ≤ n_max` such that the strict transform of the principal
/// ideal `I` is principal in every chart of the blow up along `I + J^n`.
pub fn principalize_strict_transform(ambient: &QuotientPresentation, i: &Ideal, j: &Ideal, n_max: u32) -> Result<PrincipalizationResult> {
    let i = i.map_to_ring(ambient.ring())?;
    let j = j.map_to_ring(ambient.ring())?;
    let f = single_generator(&i, "the ideal to principalize")?;
    if !ambient.lift(&j)?.contains(&f)? {
        return Err(Error::InvalidArgument(format!("{f} is not in {j}")));
    }
    let fs = [f];
    search(ambient, &fs, &fs, &j, n_max, false)
}

/// Smallest `n ≤ n_max` such that blowing up `(f1·f2) + (I1 + I2)^n` makes
/// both strict transforms principal and disjoint in every chart.
pub fn separate_and_principalize(ambient: &QuotientPresentation, i1: &Ideal, i2: &Ideal, n_max: u32) -> Result<PrincipalizationResult> {
    let i1 = ambient.lift(&i1.map_to_ring(ambient.ring())?)?;
    let i2 = ambient.lift(&i2.map_to_ring(ambient.ring())?)?;
    if i1.same_ideal(&i2)? {
        return Err(Error::InvalidArgument("the two components coincide".into()));
    }
    let f1 = single_generator(&Ideal::new(ambient.ring(), i1.modulo(ambient.relations())?)?, "the first component")?;
    let f2 = single_generator(&Ideal::new(ambient.ring(), i2.modulo(ambient.relations())?)?, "the second component")?;
    let j = Ideal::new(ambient.ring(), vec![f1.clone(), f2.clone()])?;
    search(ambient, &[&f1 * &f2], &[f1, f2], &j, n_max, true)
}

fn search(
    ambient: &QuotientPresentation,
    principal: &[Polynomial],
    fs: &[Polynomial],
    j: &Ideal,
    n_max: u32,
    separate: bool,
) -> Result<PrincipalizationResult> {
    let mut last = 0;
    for n in 1..=n_max {
        let center = center_for(ambient, principal, j, n)?;
        let step = blowup_charts(&center)?;
        let certificates = attempt(&step, fs, separate)?;
        match accepted(&certificates) {
            None => return Ok(PrincipalizationResult { n, step, certificates }),
            Some(c) => {
                log::debug!("n = {n}: chart {c} is not principal");
                last = c;
            }
        }
    }
    Err(Error::StepsExhausted { limit: n_max as usize, context: format!("chart {last} still fails") })
}
