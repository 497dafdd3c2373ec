use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// Coefficient field, ordered variable names, monomial order and grading weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    weights: Vec<u32>,
}

impl Ring {
    pub fn new<S: Into<String>>(
        field: Field,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let weights = vec![0; vars.len()];
        Ring::build(field, vars, order, weights)
    }

    fn build(
        field: Field,
        vars: Vec<String>,
        order: MonomialOrder,
        weights: Vec<u32>,
    ) -> Result<Arc<Ring>> {
        if let Field::Prime(p) = field {
            Field::prime(p as u64)?;
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        match &order {
            MonomialOrder::Elimination { block } if *block > vars.len() => {
                return Err(Error::InvalidRing("elimination block larger than ring".into()))
            }
            MonomialOrder::Weighted { weights } if weights.len() != vars.len() => {
                return Err(Error::InvalidRing("order weight vector has wrong length".into()))
            }
            _ => {}
        }
        if weights.len() != vars.len() {
            return Err(Error::InvalidRing("grading vector has wrong length".into()));
        }
        Ok(Arc::new(Ring {
            field,
            vars,
            order,
            weights,
        }))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::build(self.field, self.vars.clone(), order, self.weights.clone())
    }

    pub fn with_grading(&self, weights: Vec<u32>) -> Result<Arc<Ring>> {
        Ring::build(self.field, self.vars.clone(), self.order.clone(), weights)
    }

    pub fn with_field(&self, field: Field) -> Result<Arc<Ring>> {
        Ring::build(field, self.vars.clone(), self.order.clone(), self.weights.clone())
    }

    /// Ring on an explicit variable list, keeping the field.
    pub fn derive(&self, vars: Vec<String>, order: MonomialOrder, weights: Vec<u32>) -> Result<Arc<Ring>> {
        Ring::build(self.field, vars, order, weights)
    }

    /// Appends variables (grading weight `weight`), keeping the order family.
    pub fn extend(&self, new_vars: &[String], weight: u32) -> Result<Arc<Ring>> {
        let mut vars = self.vars.clone();
        vars.extend(new_vars.iter().cloned());
        let mut weights = self.weights.clone();
        weights.extend(std::iter::repeat_n(weight, new_vars.len()));
        let order = match &self.order {
            MonomialOrder::Weighted { weights: w } => {
                let mut w = w.clone();
                w.extend(std::iter::repeat_n(1, new_vars.len()));
                MonomialOrder::Weighted { weights: w }
            }
            o => o.clone(),
        };
        Ring::build(self.field, vars, order, weights)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.arity())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        self.order.compare(a, b)
    }

    /// `count` names `base1, base2, …` that do not clash with existing variables;
    /// the base letter is doubled until no clash remains.
    pub fn fresh_names(&self, base: &str, count: usize) -> Vec<String> {
        let mut b = base.to_string();
        loop {
            let names: Vec<String> = (1..=count).map(|i| format!("{b}{i}")).collect();
            if names.iter().all(|n| self.var_index(n).is_none()) {
                return names;
            }
            b.push_str(base);
        }
    }

    /// A single fresh name, `base` itself when free.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        self.fresh_names(base, 1).remove(0)
    }

    pub fn descriptor(&self) -> String {
        format!("{}[{}]", self.field, self.vars.join(","))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(Ring::new(Field::Rational, ["x", "x"], MonomialOrder::Lex).is_err());
        assert!(Ring::new(Field::Prime(4), ["x"], MonomialOrder::Lex).is_err());
        assert!(Ring::new(Field::Rational, ["x"], MonomialOrder::Elimination { block: 2 }).is_err());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let r = Ring::new(Field::Rational, ["x", "t1"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.fresh_names("t", 2), vec!["tt1", "tt2"]);
        assert_eq!(r.fresh_names("y", 2), vec!["y1", "y2"]);
        assert_eq!(r.fresh_name("u"), "u");
        assert_eq!(r.descriptor(), "QQ[x,t1]");
    }
}
