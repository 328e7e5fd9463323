//! Buchberger's algorithm with a cofactor trace, and decisions on `1 ∈ I`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num::Zero;

use super::multipoly::{Monomial, MultiPoly};
use super::ring::{rat, Rational};
use super::AlgebraError;

pub const DEFAULT_STEP_BUDGET: usize = 100_000;

/// Environment variable that overrides the default reduction budget.
pub const STEP_BUDGET_ENV: &str = "TROPNET_STEP_BUDGET";

/// Counts elementary reduction steps and fails once the limit is hit.
#[derive(Clone, Debug)]
pub struct StepBudget {
    limit: usize,
    used: usize,
}

impl StepBudget {
    pub fn new(limit: usize) -> Self {
        StepBudget { limit, used: 0 }
    }

    /// Limit from the environment if set and valid, the default otherwise.
    pub fn from_env() -> Self {
        let limit = std::env::var(STEP_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_STEP_BUDGET);
        Self::new(limit)
    }

    pub fn tick(&mut self) -> Result<(), AlgebraError> {
        if self.used >= self.limit {
            return Err(AlgebraError::BudgetExhausted(self.limit));
        }
        self.used += 1;
        Ok(())
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn limit(&self) -> usize {
        self.limit
    }
}

impl Default for StepBudget {
    fn default() -> Self {
        Self::new(DEFAULT_STEP_BUDGET)
    }
}

/// `target = sum cofactor * member[index]`, where members are the generators
/// followed by the targets of earlier steps.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination {
    pub target: MultiPoly,
    pub cofactors: Vec<(usize, MultiPoly)>,
}

/// Replay a derivation with exact arithmetic. On failure returns the index of
/// the first step that does not check.
pub fn replay_combinations(generators: &[MultiPoly], steps: &[Combination]) -> Result<(), usize> {
    let mut members: Vec<MultiPoly> = generators.to_vec();
    for (i, step) in steps.iter().enumerate() {
        let mut sum = MultiPoly::zero();
        for (idx, c) in &step.cofactors {
            let Some(m) = members.get(*idx) else {
                return Err(i);
            };
            sum = sum + c * m;
        }
        if sum != step.target {
            return Err(i);
        }
        members.push(step.target.clone());
    }
    Ok(())
}

/// Generators together with polynomials assumed not to vanish.
#[derive(Clone, Debug, Default)]
pub struct IdealBasis {
    pub generators: Vec<MultiPoly>,
    pub nonvanishing: Vec<MultiPoly>,
}

/// An explicit derivation of a nonzero constant from the generators.
#[derive(Clone, Debug)]
pub struct Witness {
    pub vars: Vec<String>,
    pub generators: Vec<MultiPoly>,
    pub steps: Vec<Combination>,
}

impl Witness {
    /// True when the trace replays and ends in a nonzero constant.
    pub fn verify(&self) -> bool {
        replay_combinations(&self.generators, &self.steps).is_ok()
            && self.steps.last().map_or_else(
                || self.generators.iter().any(is_unit),
                |s| is_unit(&s.target),
            )
    }
}

#[derive(Clone, Debug)]
pub enum IdealDecision {
    /// The ideal is the whole ring.
    Trivial(Witness),
    /// The ideal is proper; the Gröbner basis is attached.
    Proper(GroebnerRun),
}

impl IdealDecision {
    pub fn is_trivial(&self) -> bool {
        matches!(self, IdealDecision::Trivial(_))
    }
}

fn is_unit(p: &MultiPoly) -> bool {
    p.constant_value().is_some_and(|c| !c.is_zero())
}

/// State and trace of a Buchberger run.
#[derive(Clone, Debug)]
pub struct GroebnerRun {
    pub vars: Vec<String>,
    pub generators: Vec<MultiPoly>,
    pub steps: Vec<Combination>,
    /// Member indices forming the basis.
    pub basis: Vec<usize>,
    /// Member index of a nonzero constant, if one was derived.
    pub unit: Option<usize>,
}

impl GroebnerRun {
    pub fn member(&self, i: usize) -> &MultiPoly {
        if i < self.generators.len() {
            &self.generators[i]
        } else {
            &self.steps[i - self.generators.len()].target
        }
    }

    pub fn basis_polys(&self) -> Vec<&MultiPoly> {
        self.basis.iter().map(|&i| self.member(i)).collect()
    }

    /// Remainder of `p` modulo the basis and quotients by member index.
    pub fn reduce(
        &self,
        p: &MultiPoly,
        budget: &mut StepBudget,
    ) -> Result<(MultiPoly, Vec<(usize, MultiPoly)>), AlgebraError> {
        let divisors: Vec<(usize, &MultiPoly)> =
            self.basis.iter().map(|&i| (i, self.member(i))).collect();
        let p = p.extend_vars(&self.vars)?;
        divide(&p, &divisors, budget)
    }

    /// Normal form of `p`.
    pub fn normal_form(&self, p: &MultiPoly, budget: &mut StepBudget) -> Result<MultiPoly, AlgebraError> {
        Ok(self.reduce(p, budget)?.0)
    }

    /// Minimal reduced monic Gröbner basis, sorted by leading monomial.
    pub fn reduced_basis(&self, budget: &mut StepBudget) -> Result<Vec<MultiPoly>, AlgebraError> {
        let mut polys: Vec<MultiPoly> = self.basis_polys().into_iter().map(MultiPoly::monic).collect();
        polys.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        let mut minimal: Vec<MultiPoly> = Vec::new();
        for p in polys {
            let lm = p.leading_monomial().expect("nonzero").clone();
            if minimal.iter().any(|q| q.leading_monomial().expect("nonzero").divides(&lm)) {
                continue;
            }
            minimal.retain(|q| !lm.divides(q.leading_monomial().expect("nonzero")));
            minimal.push(p);
        }
        let mut out = Vec::new();
        for i in 0..minimal.len() {
            let others: Vec<(usize, &MultiPoly)> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).collect();
            // Leading monomials are pairwise non-divisible, so the leading term survives.
            let (r, _) = divide(&minimal[i], &others, budget)?;
            out.push(r.monic());
        }
        out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        Ok(out)
    }
}

/// Multivariate division with remainder. Divisors are tried in the given order.
fn divide(
    p: &MultiPoly,
    divisors: &[(usize, &MultiPoly)],
    budget: &mut StepBudget,
) -> Result<(MultiPoly, Vec<(usize, MultiPoly)>), AlgebraError> {
    let zero_like = p.scale(&rat(0));
    let mut rest = p.clone();
    let mut rem = zero_like.clone();
    let mut quots: Vec<MultiPoly> = vec![zero_like; divisors.len()];
    while let Some((m, c)) = rest.pop_leading() {
        let hit = divisors.iter().position(|(_, d)| {
            d.leading_monomial().is_some_and(|lm| lm.divides(&m))
        });
        match hit {
            Some(k) => {
                budget.tick()?;
                let d = divisors[k].1;
                let (lm, lc) = d.leading_term().expect("nonzero divisor");
                let shift = lm.quotient_of(&m);
                let f = &c / lc;
                // The leading terms cancel; the popped term is already gone.
                let mut tail = d.clone();
                tail.pop_leading();
                rest.add_scaled_shifted(&-f.clone(), &shift, &tail);
                quots[k].insert_term(shift, f);
            }
            None => rem.insert_term(m, c),
        }
    }
    let q = divisors.iter().zip(quots).filter(|(_, q)| !q.is_zero()).map(|((i, _), q)| (*i, q)).collect();
    Ok((rem, q))
}

/// Remainder of `p` on division by `basis` in the order given.
pub fn multipoly_reduce(p: &MultiPoly, basis: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
    let vars = common_vars(std::iter::once(p).chain(basis))?;
    let ext: Vec<MultiPoly> = basis.iter().map(|b| b.extend_vars(&vars)).collect::<Result<_, _>>()?;
    let divisors: Vec<(usize, &MultiPoly)> = ext.iter().enumerate().filter(|(_, b)| !b.is_zero()).collect();
    let mut budget = StepBudget::new(usize::MAX);
    Ok(divide(&p.extend_vars(&vars)?, &divisors, &mut budget)?.0)
}

/// Longest variable list, checking that all lists are prefixes of it.
fn common_vars<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> Result<Vec<String>, AlgebraError> {
    let mut vars: Vec<String> = Vec::new();
    for p in polys {
        let v = p.vars();
        let (short, long) = if v.len() <= vars.len() { (v, &vars[..]) } else { (&vars[..], v) };
        if !short.iter().zip(long).all(|(a, b)| a == b) {
            return Err(AlgebraError::IncompatibleVariables(vars.clone(), v.to_vec()));
        }
        if v.len() > vars.len() {
            vars = v.to_vec();
        }
    }
    Ok(vars)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Run Buchberger's algorithm, recording every new basis element as an explicit
/// combination of earlier members. Stops early once a nonzero constant appears.
///
/// Pairs are processed by increasing lcm in the term order (total degree first),
/// ties broken by basis positions. Coprime leading monomials and the chain
/// criterion discard pairs.
pub fn groebner_with_trace(gens: &[MultiPoly], budget: &mut StepBudget) -> Result<GroebnerRun, AlgebraError> {
    let vars = common_vars(gens)?;
    let generators: Vec<MultiPoly> = gens.iter().map(|g| g.extend_vars(&vars)).collect::<Result<_, _>>()?;
    let mut run = GroebnerRun { vars, generators, steps: Vec::new(), basis: Vec::new(), unit: None };

    for (i, g) in run.generators.iter().enumerate() {
        if is_unit(g) {
            let c = g.constant_value().expect("constant");
            run.steps.push(Combination {
                target: MultiPoly::constant_in(&run.vars, rat(1)),
                cofactors: vec![(i, MultiPoly::constant_in(&run.vars, c.recip()))],
            });
            run.unit = Some(run.generators.len());
            return Ok(run);
        }
    }

    let mut pending: BTreeSet<PairKey> = BTreeSet::new();
    let mut live: HashSet<(usize, usize)> = HashSet::new();
    let gen_ids: Vec<usize> = (0..run.generators.len()).filter(|&i| !run.generators[i].is_zero()).collect();
    for id in gen_ids {
        add_to_basis(&mut run, id, &mut pending, &mut live);
    }

    while let Some(key) = pending.pop_first() {
        live.remove(&(key.i, key.j));
        let (fi, fj) = (run.member(key.i), run.member(key.j));
        let (lmi, lci) = fi.leading_term().expect("nonzero");
        let (lmj, lcj) = fj.leading_term().expect("nonzero");
        if lmi.coprime(lmj) {
            continue;
        }
        let chain = run.basis.iter().any(|&k| {
            k != key.i
                && k != key.j
                && run.member(k).leading_monomial().expect("nonzero").divides(&key.lcm)
                && !live.contains(&ordered(key.i, k))
                && !live.contains(&ordered(key.j, k))
        });
        if chain {
            continue;
        }
        let ci = lci.recip();
        let cj = -lcj.recip();
        let si = lmi.quotient_of(&key.lcm);
        let sj = lmj.quotient_of(&key.lcm);
        let mut s = fi.scale(&rat(0));
        s.add_scaled_shifted(&ci, &si, fi);
        s.add_scaled_shifted(&cj, &sj, fj);
        budget.tick()?;
        let (h, quots) = run.reduce(&s, budget)?;
        if h.is_zero() {
            continue;
        }
        let inv = h.leading_coeff().recip();
        let mut cof: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        let mono = |m: &Monomial, c: Rational, vars: &[String]| {
            let mut p = MultiPoly::constant_in(vars, rat(0));
            p.insert_term(m.clone(), c);
            p
        };
        *cof.entry(key.i).or_insert_with(MultiPoly::zero) += mono(&si, &ci * &inv, &run.vars);
        *cof.entry(key.j).or_insert_with(MultiPoly::zero) += mono(&sj, &cj * &inv, &run.vars);
        for (idx, q) in quots {
            *cof.entry(idx).or_insert_with(MultiPoly::zero) += q.scale(&-inv.clone());
        }
        let target = h.scale(&inv);
        let cofactors = cof.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        run.steps.push(Combination { target: target.clone(), cofactors });
        let id = run.generators.len() + run.steps.len() - 1;
        if is_unit(&target) {
            run.unit = Some(id);
            return Ok(run);
        }
        add_to_basis(&mut run, id, &mut pending, &mut live);
    }
    Ok(run)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn add_to_basis(
    run: &mut GroebnerRun,
    id: usize,
    pending: &mut BTreeSet<PairKey>,
    live: &mut HashSet<(usize, usize)>,
) {
    let lm = run.member(id).leading_monomial().expect("nonzero").clone();
    for &k in &run.basis {
        let lk = run.member(k).leading_monomial().expect("nonzero");
        let (i, j) = ordered(k, id);
        pending.insert(PairKey { lcm: lk.lcm(&lm), i, j });
        live.insert((i, j));
    }
    run.basis.push(id);
}

/// Keep only the steps needed to derive member `goal`, renumbering references.
pub(crate) fn prune_steps(generators: &[MultiPoly], steps: &[Combination], goal: usize) -> Vec<Combination> {
    prune_steps_multi(generators.len(), steps, &[goal]).0
}

/// Steps needed for all `goals`, and the map from old to new member indices.
pub(crate) fn prune_steps_multi(
    n: usize,
    steps: &[Combination],
    goals: &[usize],
) -> (Vec<Combination>, BTreeMap<usize, usize>) {
    let mut needed = BTreeSet::new();
    let mut stack = goals.to_vec();
    while let Some(m) = stack.pop() {
        if m < n || !needed.insert(m) {
            continue;
        }
        for (idx, _) in &steps[m - n].cofactors {
            stack.push(*idx);
        }
    }
    let mut remap: BTreeMap<usize, usize> = (0..n).map(|i| (i, i)).collect();
    let mut out = Vec::new();
    for &m in &needed {
        let step = &steps[m - n];
        out.push(Combination {
            target: step.target.clone(),
            cofactors: step.cofactors.iter().map(|(i, c)| (remap[i], c.clone())).collect(),
        });
        remap.insert(m, n + out.len() - 1);
    }
    (out, remap)
}

/// Fresh names for the inverse variables, avoiding collisions with `vars`.
pub fn inverse_var_names(vars: &[String], count: usize) -> Vec<String> {
    (1..=count)
        .map(|i| {
            let mut name = format!("y{i}");
            while vars.contains(&name) {
                name.push('_');
            }
            name
        })
        .collect()
}

/// Decide whether `1` lies in the ideal after saturating by each nonvanishing
/// polynomial `q` (adjoining `q*y - 1` with a fresh variable `y`).
pub fn ideal_contains_one(b: &IdealBasis, budget: &mut StepBudget) -> Result<IdealDecision, AlgebraError> {
    let base = common_vars(b.generators.iter().chain(&b.nonvanishing))?;
    let ys = inverse_var_names(&base, b.nonvanishing.len());
    let mut vars = base.clone();
    vars.extend(ys.iter().cloned());
    let mut gens: Vec<MultiPoly> = b.generators.iter().map(|g| g.extend_vars(&vars)).collect::<Result<_, _>>()?;
    for (i, q) in b.nonvanishing.iter().enumerate() {
        let y = MultiPoly::var(&vars, base.len() + i);
        gens.push(&(&q.extend_vars(&vars)? * &y) - &MultiPoly::constant_in(&vars, rat(1)));
    }
    let run = groebner_with_trace(&gens, budget)?;
    match run.unit {
        Some(goal) => {
            let steps = prune_steps(&run.generators, &run.steps, goal);
            Ok(IdealDecision::Trivial(Witness { vars: run.vars, generators: run.generators, steps }))
        }
        None => Ok(IdealDecision::Proper(run)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, vars: &[String]) -> MultiPoly {
        MultiPoly::parse(s, vars).unwrap()
    }

    #[test]
    fn reduce_uses_grlex_leading_terms() {
        let vars = v(&["k1", "k2", "k3"]);
        let r = multipoly_reduce(&p("k1*k2*k3 - 1", &vars), &[p("k3 - (1 - k1*k2)", &vars)]).unwrap();
        assert_eq!(r, p("-k3^2 + k3 - 1", &vars));
    }

    #[test]
    fn reduce_to_zero() {
        let vars = v(&["x", "y"]);
        let r = multipoly_reduce(&p("x^2*y - y^3", &vars), &[p("x - y", &vars)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn unit_ideal_with_witness() {
        let vars = v(&["x", "y"]);
        let b = IdealBasis { generators: vec![p("x*y - 1", &vars), p("x", &vars)], nonvanishing: vec![] };
        match ideal_contains_one(&b, &mut StepBudget::default()).unwrap() {
            IdealDecision::Trivial(w) => assert!(w.verify()),
            IdealDecision::Proper(_) => panic!("expected unit ideal"),
        }
    }

    #[test]
    fn saturation_makes_unit() {
        let vars = v(&["x"]);
        let b = IdealBasis { generators: vec![p("x^2", &vars)], nonvanishing: vec![p("x", &vars)] };
        assert!(ideal_contains_one(&b, &mut StepBudget::default()).unwrap().is_trivial());
        let b = IdealBasis { generators: vec![p("x^2 - x", &vars)], nonvanishing: vec![p("x", &vars)] };
        assert!(!ideal_contains_one(&b, &mut StepBudget::default()).unwrap().is_trivial());
    }

    #[test]
    fn budget_is_enforced() {
        let vars = v(&["k1", "k2", "k3"]);
        let gens = vec![p("-k2*k3 + 1", &vars), p("k1*k2 - 1", &vars), p("k1*k3 - k1 + 1", &vars)];
        let err = groebner_with_trace(&gens, &mut StepBudget::new(3)).unwrap_err();
        assert_eq!(err, AlgebraError::BudgetExhausted(3));
    }

    #[test]
    fn reduced_basis_of_cyclic_system() {
        let vars = v(&["k1", "k2", "k3"]);
        let gens = vec![p("-k2*k3 + 1", &vars), p("k1*k2 - 1", &vars), p("k1*k3 - k1 + 1", &vars)];
        let mut budget = StepBudget::default();
        let run = groebner_with_trace(&gens, &mut budget).unwrap();
        assert!(run.unit.is_none());
        assert!(replay_combinations(&run.generators, &run.steps).is_ok());
        let rb = run.reduced_basis(&mut budget).unwrap();
        let expect = vec![p("k2 + k3 - 1", &vars), p("k1 - k3", &vars), p("k3^2 - k3 + 1", &vars)];
        assert_eq!(rb, expect);
    }
}
