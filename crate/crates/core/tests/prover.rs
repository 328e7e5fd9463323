use std::sync::OnceLock;

use tropnet::algebra::{rat, MultiPoly, StepBudget};
use tropnet::codec::{decode_certificate, encode_certificate, to_canonical_string};
use tropnet::prover::*;

fn system_44() -> &'static ConstraintSystem {
    static S: OnceLock<ConstraintSystem> = OnceLock::new();
    S.get_or_init(|| {
        let s = build_44_skeleton().unwrap();
        generate_constraints(&s, &s.net).unwrap()
    })
}

fn system_43() -> &'static ConstraintSystem {
    static S: OnceLock<ConstraintSystem> = OnceLock::new();
    S.get_or_init(|| {
        let s = build_43_skeleton().unwrap();
        generate_constraints(&s, &s.net).unwrap()
    })
}

fn cert_44() -> &'static Certificate {
    static C: OnceLock<Certificate> = OnceLock::new();
    C.get_or_init(|| prove_nonexistence_44().unwrap())
}

fn cert_43() -> &'static Certificate {
    static C: OnceLock<Certificate> = OnceLock::new();
    C.get_or_init(|| prove_uniqueness_43().unwrap().0)
}

#[test]
fn skeletons_fix_the_frame() {
    let s = build_44_skeleton().unwrap();
    let fixed: Vec<_> = s.fixed_lines().into_iter().map(|(id, _)| id).collect();
    for (id, _) in STANDARD_FRAME {
        assert!(fixed.contains(&id), "{id}");
    }
    assert_eq!(s.fixed_lines().len(), 6);
    assert!(s.parameters.contains(&"k1".to_string()) && s.parameters.contains(&"k2".to_string()));
    let s3 = build_43_skeleton().unwrap();
    assert_eq!((s3.net.k, s3.net.d), (4, 3));
    assert!(s3.lines.len() <= 12 && s3.points.len() <= 9);
    let sys = system_43();
    assert_eq!((sys.lines.len(), sys.points.len()), (12, 9));
}

#[test]
fn constraint_counts() {
    assert_eq!(system_44().equations.len(), 28);
    assert_eq!(system_43().equations.len(), 5);
    assert_eq!(system_44().unused_parameters(), ["m2", "s1", "t1"]);
    assert_eq!(system_43().unused_parameters(), ["s1", "t1"]);
}

#[test]
fn nonexistence_certificate_is_a_contradiction() {
    let c = cert_44();
    assert_eq!(c.kind, CertificateKind::Nonexistence);
    assert!(c.hypotheses.is_empty());
    assert_eq!(c.landmarks.len(), 3);
    assert_eq!(c.witness_constant(), Some(&rat(2)));
    assert!(verify_certificate(c, system_44()).is_ok());
}

#[test]
fn uniqueness_certificate_solves_every_parameter() {
    let c = cert_43();
    let acc = verify_certificate(c, system_43()).unwrap();
    assert!(acc.items_checked > 0);
    let Conclusion::Solution { primary, minimal_polynomial, solutions, conjugation, .. } = &c.witness else {
        panic!("expected a solution");
    };
    assert_eq!(primary, "k2");
    assert_eq!(*minimal_polynomial, MultiPoly::parse("k2^2 - k2 + 1", &c.parameters).unwrap());
    let one_minus = MultiPoly::parse("1 - k2", &c.parameters).unwrap();
    for p in ["k1", "k3"] {
        let s = solutions.iter().find(|s| s.parameter == p).unwrap();
        assert_eq!(s.value, one_minus, "{p}");
    }
    assert_eq!(conjugation.as_ref(), Some(&one_minus));
}

#[test]
fn proofs_are_deterministic() {
    let a = to_canonical_string(&encode_certificate(cert_43()));
    let b = to_canonical_string(&encode_certificate(&prove_uniqueness_43().unwrap().0));
    assert_eq!(a, b);
}

#[test]
fn certificates_survive_the_codec() {
    for (c, sys) in [(cert_44(), system_44()), (cert_43(), system_43())] {
        let text = to_canonical_string(&encode_certificate(c));
        let back = decode_certificate(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(&back, c);
        assert_eq!(to_canonical_string(&encode_certificate(&back)), text);
        assert!(verify_certificate(&back, sys).is_ok());
    }
}

#[test]
fn tampered_steps_are_located() {
    let mut c = cert_43().clone();
    let i = c.steps.len() / 2;
    let bump = MultiPoly::constant_in(&c.parameters, rat(1));
    let cof = &mut c.steps[i].cofactors[0].1;
    *cof = cof.clone() + bump;
    let r = verify_certificate(&c, system_43()).unwrap_err();
    assert_eq!(r.step, Some(i));
}

#[test]
fn tampered_witness_is_rejected() {
    let mut c = cert_44().clone();
    if let Conclusion::Contradiction { value, .. } = &mut c.witness {
        *value = rat(3);
    }
    assert!(verify_certificate(&c, system_44()).is_err());

    let mut c = cert_44().clone();
    c.generators.pop();
    assert_eq!(verify_certificate(&c, system_44()).unwrap_err().step, None);
}

#[test]
fn certificates_are_bound_to_their_system() {
    assert!(verify_certificate(cert_44(), system_43()).is_err());
    assert!(verify_certificate(cert_43(), system_44()).is_err());
}

#[test]
fn satisfiable_systems_are_not_refuted() {
    let sys = system_43();
    let err = prove_nonexistence(sys, &landmarks_44(&sys.vars), &StepBudget::default()).unwrap_err();
    assert!(matches!(err, ProverError::Inconclusive(_)), "{err}");
}

#[test]
fn exhausted_budget_is_an_error() {
    let sys = system_44();
    let err = prove_nonexistence(sys, &landmarks_44(&sys.vars), &StepBudget::new(3)).unwrap_err();
    assert!(matches!(err, ProverError::Algebra(_)), "{err}");
}
