//! Replayable proofs and their checker.
//!
//! Checking uses polynomial arithmetic only: every step is an identity
//! `target = Σ cofactor·member` over earlier members.

use serde::{Deserialize, Serialize};

use super::ConstraintSystem;
use crate::algebra::groebner::inverse_var_names;
use crate::algebra::{rat, replay_combinations, Combination, MultiPoly, Rational, Ring, UniPoly};
use crate::projective::dot;

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Nonexistence,
    Uniqueness,
}

/// A polynomial shown to lie in the ideal spanned by the generators in `support`.
#[derive(Clone, Debug, PartialEq)]
pub struct Landmark {
    pub polynomial: MultiPoly,
    /// Member whose target is `polynomial`.
    pub member: usize,
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolvedParameter {
    pub parameter: String,
    /// Polynomial in the primary parameter.
    pub value: MultiPoly,
    /// Member whose target is `parameter - value`.
    pub member: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Conclusion {
    /// Member `member` is the nonzero constant `value`.
    Contradiction { member: usize, value: Rational },
    /// Every parameter is a polynomial in `primary`, which is a root of
    /// `minimal_polynomial`; `conjugation` maps that root to the other one.
    Solution {
        primary: String,
        minimal_polynomial: MultiPoly,
        minimal_member: usize,
        solutions: Vec<SolvedParameter>,
        conjugation: Option<MultiPoly>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub schema_version: u32,
    pub kind: CertificateKind,
    pub k: usize,
    pub d: usize,
    /// Parameters followed by the inverse variables of the hypotheses.
    pub parameters: Vec<String>,
    /// The system's equations followed by `h·y - 1` for each hypothesis `h`.
    pub generators: Vec<MultiPoly>,
    pub hypotheses: Vec<MultiPoly>,
    pub unused_parameters: Vec<String>,
    pub steps: Vec<Combination>,
    pub landmarks: Vec<Landmark>,
    pub witness: Conclusion,
}

impl Certificate {
    /// Generators followed by step targets.
    pub fn member(&self, i: usize) -> Option<&MultiPoly> {
        self.generators.get(i).or_else(|| self.steps.get(i - self.generators.len()).map(|s| &s.target))
    }

    pub fn witness_constant(&self) -> Option<&Rational> {
        match &self.witness {
            Conclusion::Contradiction { value, .. } => Some(value),
            Conclusion::Solution { .. } => None,
        }
    }

    pub fn minimal_polynomial(&self) -> Option<&MultiPoly> {
        match &self.witness {
            Conclusion::Solution { minimal_polynomial, .. } => Some(minimal_polynomial),
            Conclusion::Contradiction { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptance {
    pub steps_checked: usize,
    /// Lines and points checked against the solution.
    pub items_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    /// Index of the first failing step, when the failure is in the replay.
    pub step: Option<usize>,
    pub reason: String,
}

fn reject<T>(reason: impl Into<String>) -> Result<T, Rejection> {
    Err(Rejection { step: None, reason: reason.into() })
}

/// Variables and generators after adjoining an inverse for each hypothesis.
pub fn saturate(
    vars: &[String],
    equations: &[MultiPoly],
    hypotheses: &[MultiPoly],
) -> Result<(Vec<String>, Vec<MultiPoly>), crate::algebra::AlgebraError> {
    let ys = inverse_var_names(vars, hypotheses.len());
    let mut all = vars.to_vec();
    all.extend(ys);
    let mut gens: Vec<MultiPoly> = equations.iter().map(|e| e.extend_vars(&all)).collect::<Result<_, _>>()?;
    for (i, h) in hypotheses.iter().enumerate() {
        let y = MultiPoly::var(&all, vars.len() + i);
        gens.push(&(&h.extend_vars(&all)? * &y) - &MultiPoly::constant_in(&all, rat(1)));
    }
    Ok((all, gens))
}

/// Replay `c` against `sys`.
///
/// The generators must be exactly the system's equations plus the saturation
/// generators of hypotheses the system provides. For a uniqueness certificate
/// every line and point of the system is then checked modulo the minimal
/// polynomial.
pub fn verify_certificate(c: &Certificate, sys: &ConstraintSystem) -> Result<Acceptance, Rejection> {
    if c.schema_version != CERTIFICATE_SCHEMA_VERSION {
        return reject(format!("unsupported schema version {}", c.schema_version));
    }
    if (c.k, c.d) != (sys.net.k, sys.net.d) {
        return reject(format!("certificate is for ({},{})-nets, system for ({},{})", c.k, c.d, sys.net.k, sys.net.d));
    }
    for h in &c.hypotheses {
        if !sys.nonvanishing.iter().any(|s| s.polynomial == *h) {
            return reject(format!("hypothesis {h} is not among the system's conditions"));
        }
    }
    let (vars, gens) = match saturate(&sys.vars, &sys.equations, &c.hypotheses) {
        Ok(x) => x,
        Err(e) => return reject(e.to_string()),
    };
    if c.parameters != vars {
        return reject("parameter list does not match the system");
    }
    if c.generators.len() != gens.len() {
        return reject(format!("expected {} generators, found {}", gens.len(), c.generators.len()));
    }
    if let Some(i) = (0..gens.len()).find(|&i| c.generators[i] != gens[i]) {
        return reject(format!("generator {i} differs from the system"));
    }
    if c.unused_parameters != sys.unused_parameters() {
        return reject("unused parameter list does not match the system");
    }
    if let Err(i) = replay_combinations(&c.generators, &c.steps) {
        return Err(Rejection { step: Some(i), reason: format!("step {i} is not an identity") });
    }
    for l in &c.landmarks {
        match c.member(l.member) {
            Some(m) if *m == l.polynomial => {}
            _ => return reject(format!("landmark {} is not member {}", l.polynomial, l.member)),
        }
    }
    let steps_checked = c.steps.len();
    match &c.witness {
        Conclusion::Contradiction { member, value } => {
            if c.kind != CertificateKind::Nonexistence {
                return reject("contradiction in a uniqueness certificate");
            }
            match c.member(*member).and_then(MultiPoly::constant_value) {
                Some(v) if v == *value && !Ring::is_zero(&v) => Ok(Acceptance { steps_checked, items_checked: 0 }),
                _ => reject(format!("member {member} is not the nonzero constant {value}")),
            }
        }
        Conclusion::Solution { primary, minimal_polynomial, minimal_member, solutions, conjugation } => {
            if c.kind != CertificateKind::Uniqueness {
                return reject("solution in a nonexistence certificate");
            }
            let items_checked = check_solution(
                c,
                sys,
                &vars,
                primary,
                minimal_polynomial,
                *minimal_member,
                solutions,
                conjugation.as_ref(),
            )?;
            Ok(Acceptance { steps_checked, items_checked })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check_solution(
    c: &Certificate,
    sys: &ConstraintSystem,
    vars: &[String],
    primary: &str,
    minimal: &MultiPoly,
    minimal_member: usize,
    solutions: &[SolvedParameter],
    conjugation: Option<&MultiPoly>,
) -> Result<usize, Rejection> {
    let Some(x) = vars.iter().position(|v| v == primary) else {
        return reject(format!("unknown primary parameter {primary}"));
    };
    let Some(mu) = minimal.as_univariate(x).filter(|u| u.degree().finite().is_some_and(|d| d > 0)) else {
        return reject("minimal polynomial is not a nonconstant polynomial in the primary parameter");
    };
    if c.member(minimal_member) != Some(minimal) {
        return reject("minimal polynomial is not derived");
    }
    let modulo = |u: UniPoly| u.div_rem(&mu).map(|(_, r)| r).expect("nonzero modulus");
    let mut values: Vec<Option<UniPoly>> = vec![None; vars.len()];
    values[x] = Some(UniPoly::t());
    for s in solutions {
        let Some(i) = vars.iter().position(|v| *v == s.parameter) else {
            return reject(format!("unknown parameter {}", s.parameter));
        };
        let Some(u) = s.value.as_univariate(x) else {
            return reject(format!("value of {} is not a polynomial in {primary}", s.parameter));
        };
        let expected = &MultiPoly::var(vars, i) - &s.value;
        if c.member(s.member) != Some(&expected) {
            return reject(format!("{} = {} is not derived", s.parameter, s.value));
        }
        values[i] = Some(u);
    }
    let eval3 = |v: &[MultiPoly; 3]| -> Result<[UniPoly; 3], Rejection> {
        let mut out: [UniPoly; 3] = std::array::from_fn(|_| UniPoly::zero());
        for (j, p) in v.iter().enumerate() {
            for (i, name) in sys.vars.iter().enumerate() {
                if p.uses_var(i) && values[i].is_none() {
                    return reject(format!("parameter {name} is not determined"));
                }
            }
            let args: Vec<UniPoly> = values.iter().map(|o| o.clone().unwrap_or_else(UniPoly::zero)).collect();
            out[j] = modulo(p.eval(&args));
        }
        Ok(out)
    };
    let mut items = 0;
    let mut lines = std::collections::BTreeMap::new();
    for l in sys.net.lines() {
        let Some(item) = sys.lines.get(&l) else {
            return reject(format!("{l} is not determined"));
        };
        let v = eval3(&item.coords)?;
        if v.iter().all(UniPoly::is_zero) {
            return reject(format!("{l} vanishes"));
        }
        lines.insert(l, v);
    }
    for p in sys.net.points() {
        let Some(item) = sys.points.get(&p) else {
            return reject(format!("{p} is not determined"));
        };
        let v = eval3(&item.coords)?;
        if v.iter().all(UniPoly::is_zero) {
            return reject(format!("{p} vanishes"));
        }
        for l in sys.net.lines_through(p) {
            if !modulo(dot(&v, &lines[l])).is_zero() {
                return reject(format!("{p} is not on {l}"));
            }
        }
        items += 1;
    }
    items += lines.len();
    if let Some(sigma) = conjugation {
        let Some(s) = sigma.as_univariate(x) else {
            return reject("conjugation is not a polynomial in the primary parameter");
        };
        if s == UniPoly::t() || !modulo(mu.eval(&s)).is_zero() {
            return reject("conjugation does not map the root to another root");
        }
    }
    Ok(items)
}
