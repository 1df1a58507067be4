use std::collections::BTreeMap;
use std::fmt;

use crate::field::FieldTower;
use crate::{Place, RatFun, Series};

#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Exact(RatFun),
    Series(Series),
    /// The variable stands for a square root of this function; it may only
    /// occur in even powers.
    FormalSqrt(RatFun),
}

impl Binding {
    pub fn kind(&self) -> &'static str {
        match self {
            Binding::Exact(_) => "exact",
            Binding::Series(_) => "series",
            Binding::FormalSqrt(_) => "sqrt",
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Exact(g) => write!(f, "{g}"),
            Binding::Series(s) => write!(f, "{s}"),
            Binding::FormalSqrt(g) => write!(f, "sqrt({g})"),
        }
    }
}

/// A candidate local point: values for the unknowns at a place.
#[derive(Clone, Debug, PartialEq)]
pub struct PointAssignment {
    pub place: Place,
    /// Field containing every binding's coefficients.
    pub tower: FieldTower,
    pub bindings: BTreeMap<String, Binding>,
}

impl PointAssignment {
    pub fn new(place: Place, tower: FieldTower) -> Self {
        PointAssignment { place, tower, bindings: BTreeMap::new() }
    }

    pub fn bind(mut self, var: &str, b: Binding) -> Self {
        self.bindings.insert(var.to_string(), b);
        self
    }

    pub fn formal_sqrt_vars(&self) -> Vec<String> {
        self.bindings
            .iter()
            .filter(|(_, b)| matches!(b, Binding::FormalSqrt(_)))
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// `var = value` pairs in a stable order, for reports.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.bindings.iter().map(|(k, b)| (k.clone(), b.to_string())).collect()
    }
}
