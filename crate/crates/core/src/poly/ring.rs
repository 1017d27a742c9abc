use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::{Error, Result};

/// A total, multiplicative well-order on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Elimination order: the first `k` variables compared by grevlex
    /// dominate, ties broken by grevlex on the remaining variables.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn parse(text: &str) -> Option<MonomialOrder> {
        match text.trim() {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::GrevLex),
            other => other
                .strip_prefix("block(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|k| k.trim().parse().ok())
                .map(MonomialOrder::Block),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::GrevLex => f.write_str("grevlex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Polynomial ring over the rationals in an ordered list of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!("block split {k} exceeds {} variables", vars.len())));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    /// Grevlex ring, the default order.
    pub fn grevlex<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        PolyRing::new(vars, MonomialOrder::GrevLex)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        PolyRing::new(self.vars.clone(), order)
    }

    /// Same variables, possibly different order.
    pub fn same_vars(&self, other: &PolyRing) -> bool {
        self.vars == other.vars
    }

    /// Appends variables, keeping the order kind (block splits stay put).
    pub fn extended<S: AsRef<str>>(&self, names: &[S]) -> Result<Ring> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().map(|s| s.as_ref().to_string()));
        PolyRing::new(vars, self.order)
    }

    /// A variable name not already present, of the form `prefix`, `prefix1`, ...
    pub fn fresh_name(&self, prefix: &str) -> String {
        if self.var_index(prefix).is_none() {
            return prefix.to_string();
        }
        (1..)
            .map(|i| format!("{prefix}{i}"))
            .find(|n| self.var_index(n).is_none())
            .unwrap()
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}] ({})", self.vars.join(", "), self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex(x, y, z)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[3, 0]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn lex_and_block() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let b = MonomialOrder::Block(1);
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 3])), Ordering::Greater);
        assert_eq!(b.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::grevlex(Vec::<String>::new()).is_err());
        assert!(PolyRing::grevlex(["x", "x"]).is_err());
        assert!(PolyRing::grevlex(["1x"]).is_err());
        assert!(PolyRing::new(["x"], MonomialOrder::Block(2)).is_err());
    }

    #[test]
    fn order_names_round_trip() {
        for o in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(2)] {
            assert_eq!(MonomialOrder::parse(&o.to_string()), Some(o));
        }
    }
}
