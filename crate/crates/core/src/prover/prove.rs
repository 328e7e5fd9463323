//! Searching for certificates.

use std::collections::BTreeSet;

use num::{Integer, One, Signed};

use super::certificate::{
    saturate, Certificate, CertificateKind, Conclusion, Landmark, SolvedParameter, CERTIFICATE_SCHEMA_VERSION,
};
use super::{
    build_43_skeleton, build_44_skeleton, generate_constraints, verify_certificate, ConstraintSystem, ProverError,
};
use crate::algebra::groebner::prune_steps_multi;
use crate::algebra::linear::solve_combination;
use crate::algebra::{
    groebner_with_trace, rat, Combination, GroebnerRun, Monomial, MultiPoly, QuotientElem, Rational, StepBudget,
    UniPoly,
};
use crate::nets::{verify_realized_net, RealizedNet};
use crate::projective::{ProjLine, ProjPoint};

/// Largest degree tried when looking for a minimal polynomial.
const MAX_MINIMAL_DEGREE: u32 = 32;

fn budget_like(b: &StepBudget) -> StepBudget {
    StepBudget::new(b.limit())
}

fn groebner(gens: &[MultiPoly], budget: &StepBudget) -> Result<GroebnerRun, ProverError> {
    Ok(groebner_with_trace(gens, &mut budget_like(budget))?)
}

/// Smallest hypothesis set, in a greedy sense, for which `works` holds: none if
/// possible, otherwise all of them minus those that can be dropped one by one.
fn select_hypotheses(
    sys: &ConstraintSystem,
    mut works: impl FnMut(&[MultiPoly]) -> Result<bool, ProverError>,
) -> Result<Option<Vec<MultiPoly>>, ProverError> {
    if works(&[])? {
        return Ok(Some(Vec::new()));
    }
    let all: Vec<MultiPoly> = sys.nonvanishing.iter().map(|h| h.polynomial.clone()).collect();
    if !works(&all)? {
        return Ok(None);
    }
    let mut chosen = all.clone();
    for h in &all {
        let without: Vec<MultiPoly> = chosen.iter().filter(|x| *x != h).cloned().collect();
        if works(&without)? {
            chosen = without;
        }
    }
    Ok(Some(chosen))
}

/// Steps appended to a certificate under construction, with member indices
/// relative to the full generator list.
struct Trace {
    generators: usize,
    steps: Vec<Combination>,
}

impl Trace {
    fn next_member(&self) -> usize {
        self.generators + self.steps.len()
    }

    /// Append the part of `run` needed for `goals`, where `run` was computed on
    /// the generators `subset`. Returns the global indices of `goals`.
    fn absorb(&mut self, run: &GroebnerRun, subset: &[usize], goals: &[usize]) -> Vec<usize> {
        let local_n = subset.len();
        let (pruned, remap) = prune_steps_multi(local_n, &run.steps, goals);
        let base = self.next_member();
        let global = |j: usize| if j < local_n { subset[j] } else { base + j - local_n };
        for s in pruned {
            self.steps.push(Combination {
                target: s.target,
                cofactors: s.cofactors.into_iter().map(|(i, c)| (global(i), c)).collect(),
            });
        }
        goals.iter().map(|g| global(remap[g])).collect()
    }

    /// Append `target` as the combination given by a reduction to zero over `run`.
    fn push_reduction(
        &mut self,
        run: &GroebnerRun,
        subset: &[usize],
        target: &MultiPoly,
        budget: &StepBudget,
    ) -> Result<usize, ProverError> {
        let (rem, quotients) = run.reduce(target, &mut budget_like(budget))?;
        if !rem.is_zero() {
            return Err(ProverError::Inconclusive(format!("{target} does not reduce to zero")));
        }
        let members: Vec<usize> = quotients.iter().map(|(i, _)| *i).collect();
        let global = self.absorb(run, subset, &members);
        let cofactors = global.into_iter().zip(quotients).map(|(g, (_, q))| (g, q)).collect();
        self.steps.push(Combination { target: target.clone(), cofactors });
        Ok(self.next_member() - 1)
    }
}

fn is_member(target: &MultiPoly, gens: &[MultiPoly], budget: &StepBudget) -> Result<bool, ProverError> {
    if gens.is_empty() {
        return Ok(target.is_zero());
    }
    let run = groebner(gens, budget)?;
    if run.unit.is_some() {
        return Ok(true);
    }
    Ok(run.reduce(target, &mut budget_like(budget))?.0.is_zero())
}

fn is_unit(gens: &[MultiPoly], budget: &StepBudget) -> Result<bool, ProverError> {
    Ok(!gens.is_empty() && groebner(gens, budget)?.unit.is_some())
}

/// Drop generators one at a time, in `order`, while `target` stays a member.
fn shrink(
    target: &MultiPoly,
    gens: &[MultiPoly],
    order: impl Iterator<Item = usize>,
    budget: &StepBudget,
) -> Result<Vec<usize>, ProverError> {
    let mut keep: BTreeSet<usize> = (0..gens.len()).collect();
    for i in order {
        let trial: Vec<usize> = keep.iter().copied().filter(|&j| j != i).collect();
        let polys: Vec<MultiPoly> = trial.iter().map(|&j| gens[j].clone()).collect();
        if is_member(target, &polys, budget)? {
            keep.remove(&i);
        }
    }
    Ok(keep.into_iter().collect())
}

/// Generators of a proper ideal containing `target`, if some subset works:
/// shrink from the back, and if that ends in a unit ideal, from the front.
fn landmark_support(
    target: &MultiPoly,
    gens: &[MultiPoly],
    budget: &StepBudget,
) -> Result<Option<Vec<usize>>, ProverError> {
    let polys = |s: &[usize]| s.iter().map(|&j| gens[j].clone()).collect::<Vec<_>>();
    let back = shrink(target, gens, (0..gens.len()).rev(), budget)?;
    if !is_unit(&polys(&back), budget)? {
        return Ok(Some(back));
    }
    let front = shrink(target, gens, 0..gens.len(), budget)?;
    Ok((!is_unit(&polys(&front), budget)?).then_some(front))
}

/// Integer cofactors `(s, u)` and constant `c` with `s·a + u·b = c`, when the
/// two univariate polynomials are coprime.
fn coprime_combination(a: &UniPoly, b: &UniPoly) -> Option<(UniPoly, UniPoly, Rational)> {
    let (g, s, u) = a.ext_gcd(b);
    if g.degree().finite() != Some(0) {
        return None;
    }
    let g0 = g.coeff(0);
    let lcm = s.terms().chain(u.terms()).fold(num::BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = Rational::from_integer(lcm) / &g0;
    let scale = if (s.scale(&scale).leading_coeff()).is_negative() && (u.scale(&scale).leading_coeff()).is_negative() {
        -scale
    } else {
        scale
    };
    Some((s.scale(&scale), u.scale(&scale), &g0 * &scale))
}

/// Certify that `sys` has no solution with the nonvanishing conditions.
///
/// Each of `landmarks` that some proper sub-ideal contains is derived first, from
/// a small set of generators. If two derived landmarks in one variable are
/// coprime, their combination gives the final constant; otherwise the
/// certificate falls back to the trace of a full basis computation.
pub fn prove_nonexistence(
    sys: &ConstraintSystem,
    landmarks: &[MultiPoly],
    budget: &StepBudget,
) -> Result<Certificate, ProverError> {
    let unit_with = |hyps: &[MultiPoly]| -> Result<bool, ProverError> {
        let (_, gens) = saturate(&sys.vars, &sys.equations, hyps)?;
        is_unit(&gens, budget)
    };
    let hypotheses = select_hypotheses(sys, unit_with)?
        .ok_or_else(|| ProverError::Inconclusive("the system has solutions even with all conditions".into()))?;
    let (vars, gens) = saturate(&sys.vars, &sys.equations, &hypotheses)?;
    let mut trace = Trace { generators: gens.len(), steps: Vec::new() };
    let mut found: Vec<Landmark> = Vec::new();
    for l in landmarks {
        let l = l.extend_vars(&vars)?;
        let Some(support) = landmark_support(&l, &gens, budget)? else {
            continue;
        };
        let sub: Vec<MultiPoly> = support.iter().map(|&j| gens[j].clone()).collect();
        let run = groebner(&sub, budget)?;
        let member = trace.push_reduction(&run, &support, &l, budget)?;
        found.push(Landmark { polynomial: l, member, support });
    }

    let mut witness = None;
    'pairs: for (i, a) in found.iter().enumerate() {
        for b in &found[i + 1..] {
            for x in 0..vars.len() {
                let (Some(ua), Some(ub)) = (a.polynomial.as_univariate(x), b.polynomial.as_univariate(x)) else {
                    continue;
                };
                if ua.is_constant() || ub.is_constant() {
                    continue;
                }
                if let Some((s, u, c)) = coprime_combination(&ua, &ub) {
                    trace.steps.push(Combination {
                        target: MultiPoly::constant_in(&vars, c.clone()),
                        cofactors: vec![
                            (a.member, MultiPoly::from_univariate(&vars, x, &s)),
                            (b.member, MultiPoly::from_univariate(&vars, x, &u)),
                        ],
                    });
                    witness = Some(Conclusion::Contradiction { member: trace.next_member() - 1, value: c });
                    break 'pairs;
                }
            }
        }
    }
    let witness = match witness {
        Some(w) => w,
        None => {
            let run = groebner(&gens, budget)?;
            let unit = run.unit.ok_or_else(|| ProverError::Inconclusive("no unit in the basis".into()))?;
            let all: Vec<usize> = (0..gens.len()).collect();
            let member = trace.absorb(&run, &all, &[unit])[0];
            let value = run.member(unit).constant_value().expect("unit member is constant");
            Conclusion::Contradiction { member, value }
        }
    };
    Ok(Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        kind: CertificateKind::Nonexistence,
        k: sys.net.k,
        d: sys.net.d,
        parameters: vars,
        generators: gens,
        hypotheses,
        unused_parameters: sys.unused_parameters(),
        steps: trace.steps,
        landmarks: found,
        witness,
    })
}

struct Solved {
    minimal: MultiPoly,
    values: Vec<(usize, MultiPoly)>,
}

fn coefficient_vectors(polys: &[&MultiPoly]) -> Vec<Vec<Rational>> {
    let monos: BTreeSet<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    polys
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| p.terms().find(|(n, _)| *n == m).map_or_else(|| rat(0), |(_, c)| c.clone()))
                .collect()
        })
        .collect()
}

/// Express `target` as a combination of `basis`, all given by normal forms.
fn combination_of(basis: &[MultiPoly], target: &MultiPoly) -> Option<Vec<Rational>> {
    let mut all: Vec<&MultiPoly> = basis.iter().collect();
    all.push(target);
    let mut vecs = coefficient_vectors(&all);
    let t = vecs.pop().expect("target vector");
    if basis.is_empty() {
        return t.iter().all(|c| c == &rat(0)).then(Vec::new);
    }
    solve_combination(&vecs, &t)
}

/// Minimal polynomial of variable `x` and each parameter in `needed` as a
/// polynomial in `x`, from normal forms modulo `run`.
fn solve_in_primary(
    run: &GroebnerRun,
    x: usize,
    needed: &[usize],
    budget: &StepBudget,
) -> Result<Solved, ProverError> {
    let vars = &run.vars;
    let xv = MultiPoly::var(vars, x);
    let mut powers: Vec<MultiPoly> = Vec::new();
    let mut normal: Vec<MultiPoly> = Vec::new();
    let mut power = MultiPoly::constant_in(vars, rat(1));
    let minimal = loop {
        if powers.len() as u32 > MAX_MINIMAL_DEGREE {
            return Err(ProverError::Inconclusive(format!("{} is not algebraic over the constraints", vars[x])));
        }
        let nf = run.normal_form(&power, &mut budget_like(budget))?;
        if let Some(c) = combination_of(&normal, &nf) {
            let mut m = power.clone();
            for (ci, p) in c.iter().zip(&powers) {
                m = &m - &p.scale(ci);
            }
            break m;
        }
        powers.push(power.clone());
        normal.push(nf);
        power = &power * &xv;
    };
    let mut values = Vec::new();
    for &i in needed.iter().filter(|&&i| i != x) {
        let nf = run.normal_form(&MultiPoly::var(vars, i), &mut budget_like(budget))?;
        let c = combination_of(&normal, &nf).ok_or_else(|| {
            ProverError::Inconclusive(format!("{} is not a polynomial in {}", vars[i], vars[x]))
        })?;
        let mut v = MultiPoly::zero();
        for (ci, p) in c.iter().zip(&powers) {
            v = &v + &p.scale(ci);
        }
        values.push((i, v.extend_vars(vars)?));
    }
    Ok(Solved { minimal, values })
}

/// Parameters occurring in the equations or in the coordinates of the system.
fn needed_parameters(sys: &ConstraintSystem) -> Vec<usize> {
    let coords = sys.lines.values().chain(sys.points.values()).flat_map(|d| d.coords.iter());
    let all: Vec<&MultiPoly> = sys.equations.iter().chain(coords).collect();
    (0..sys.vars.len()).filter(|&i| all.iter().any(|p| p.uses_var(i))).collect()
}

/// Certify that every solution of `sys` is given by a root of one minimal
/// polynomial in `primary`, and build the net over `Q[k]/(k^2 - k + 1)`.
pub fn prove_uniqueness(
    sys: &ConstraintSystem,
    primary: &str,
    budget: &StepBudget,
) -> Result<(Certificate, RealizedNet<QuotientElem>), ProverError> {
    let x = sys
        .vars
        .iter()
        .position(|v| v == primary)
        .ok_or_else(|| ProverError::Inconclusive(format!("unknown parameter {primary}")))?;
    let needed = needed_parameters(sys);
    let attempt = |hyps: &[MultiPoly]| -> Result<Option<(GroebnerRun, Solved)>, ProverError> {
        let (_, gens) = saturate(&sys.vars, &sys.equations, hyps)?;
        let run = groebner(&gens, budget)?;
        if run.unit.is_some() {
            return Ok(None);
        }
        match solve_in_primary(&run, x, &needed, budget) {
            Ok(s) => Ok(Some((run, s))),
            Err(ProverError::Inconclusive(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let hypotheses = select_hypotheses(sys, |h| Ok(attempt(h)?.is_some()))?
        .ok_or_else(|| ProverError::Inconclusive("the parameters are not determined by one root".into()))?;
    let (run, solved) = attempt(&hypotheses)?.expect("selected hypotheses work");
    let vars = run.vars.clone();
    let gens = run.generators.clone();
    let all: Vec<usize> = (0..gens.len()).collect();
    let mut trace = Trace { generators: gens.len(), steps: Vec::new() };
    let minimal = solved.minimal.extend_vars(&vars)?;
    let minimal_member = trace.push_reduction(&run, &all, &minimal, budget)?;
    let mut solutions = Vec::new();
    for (i, v) in &solved.values {
        let target = &MultiPoly::var(&vars, *i) - v;
        let member = trace.push_reduction(&run, &all, &target, budget)?;
        solutions.push(SolvedParameter { parameter: vars[*i].clone(), value: v.clone(), member });
    }
    let mu = minimal.as_univariate(x).expect("univariate in the primary parameter");
    let conjugation = (mu.degree().finite() == Some(2)).then(|| {
        let p = mu.coeff(1) / mu.coeff(2);
        let other = &UniPoly::constant(-p) - &UniPoly::t();
        MultiPoly::from_univariate(&vars, x, &other)
    });
    let cert = Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        kind: CertificateKind::Uniqueness,
        k: sys.net.k,
        d: sys.net.d,
        parameters: vars.clone(),
        generators: gens,
        hypotheses,
        unused_parameters: sys.unused_parameters(),
        steps: trace.steps,
        landmarks: Vec::new(),
        witness: Conclusion::Solution {
            primary: primary.to_string(),
            minimal_polynomial: minimal,
            minimal_member,
            solutions,
            conjugation,
        },
    };
    let net = realize_over_quotient(sys, x, &mu, &solved.values)?;
    Ok((cert, net))
}

/// Substitute the solution and read coordinates in `Q[k]/(k^2 - k + 1)`.
fn realize_over_quotient(
    sys: &ConstraintSystem,
    x: usize,
    mu: &UniPoly,
    values: &[(usize, MultiPoly)],
) -> Result<RealizedNet<QuotientElem>, ProverError> {
    if *mu != UniPoly::from_int_terms(&[(0, 1), (1, -1), (2, 1)]) {
        return Err(ProverError::Inconclusive(format!(
            "minimal polynomial {} is not k^2 - k + 1",
            mu.display_with("k")
        )));
    }
    let mut args: Vec<UniPoly> = vec![UniPoly::zero(); sys.vars.len()];
    args[x] = UniPoly::t();
    for (i, v) in values {
        args[*i] = v.as_univariate(x).expect("solved in the primary parameter");
    }
    let to_q = |p: &MultiPoly| -> QuotientElem {
        let r = p.eval(&args).div_rem(mu).expect("nonzero modulus").1;
        QuotientElem::new(r.coeff(0), r.coeff(1))
    };
    let conv = |v: &[MultiPoly; 3]| -> [QuotientElem; 3] { std::array::from_fn(|i| to_q(&v[i])) };
    let mut lines = std::collections::BTreeMap::new();
    for (id, item) in &sys.lines {
        lines.insert(*id, ProjLine(conv(&item.coords)).canonical());
    }
    let mut points = std::collections::BTreeMap::new();
    for (id, item) in &sys.points {
        points.insert(*id, ProjPoint(conv(&item.coords)).canonical());
    }
    let net = RealizedNet { net: sys.net.clone(), lines, points };
    let report = verify_realized_net(&net);
    if !report.passed() {
        return Err(ProverError::Inconsistent {
            item: "realized net".into(),
            reason: format!("{} violations, first {:?}", report.violations.len(), report.violations.first()),
        });
    }
    Ok(net)
}

fn parse(src: &str, vars: &[String]) -> MultiPoly {
    MultiPoly::parse(src, vars).expect("well-formed landmark")
}

/// Landmarks of the (4,4) argument, in the order they are derived.
pub fn landmarks_44(vars: &[String]) -> Vec<MultiPoly> {
    ["k2^2 - k2 + 1", "3*k1^2 - 3*k1 + 1", "k1^2 - k1 + 1"].iter().map(|s| parse(s, vars)).collect()
}

/// Certificate that no (4,4)-net exists, checked before it is returned.
pub fn prove_nonexistence_44() -> Result<Certificate, ProverError> {
    let s = build_44_skeleton()?;
    let sys = generate_constraints(&s, &s.net)?;
    let cert = prove_nonexistence(&sys, &landmarks_44(&sys.vars), &StepBudget::from_env())?;
    verify_certificate(&cert, &sys)
        .map_err(|r| ProverError::Inconsistent { item: "certificate".into(), reason: r.reason })?;
    Ok(cert)
}

/// Certificate that the (4,3)-net is unique up to conjugation, with the net.
pub fn prove_uniqueness_43() -> Result<(Certificate, RealizedNet<QuotientElem>), ProverError> {
    let s = build_43_skeleton()?;
    let sys = generate_constraints(&s, &s.net)?;
    let (cert, net) = prove_uniqueness(&sys, "k2", &StepBudget::from_env())?;
    verify_certificate(&cert, &sys)
        .map_err(|r| ProverError::Inconsistent { item: "certificate".into(), reason: r.reason })?;
    Ok((cert, net))
}
