use jacobi_core::group_geom::GroupJacobiStructure;
use jacobi_core::hamsys::{
    closure_check, commutator, example_spec, example_specs, hamiltonian_of, hamiltonian_vf, independent,
    jacobi_bracket, morphism_check, random_polynomial, span_coefficients, verify_example, VectorField,
};
use jacobi_core::report::Verdict;
use jacobi_core::symexpr::ZeroTester;
use jacobi_core::{Error, Expr, Rational};
use proptest::prelude::*;

fn x(k: usize) -> Expr {
    Expr::x(k)
}

fn int(n: i64) -> Expr {
    Expr::int(n)
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn vf(c: &[Expr]) -> VectorField {
    VectorField(c.to_vec())
}

fn structure(n: usize) -> GroupJacobiStructure {
    example_spec(n).unwrap().printed_structure().unwrap()
}

fn zero(t: &mut ZeroTester, e: &Expr) -> bool {
    t.test(e).is_zero()
}

#[test]
fn hamiltonian_field_examples() {
    let a2 = structure(1);
    let x1 = hamiltonian_vf(&a2, &x(2));
    assert_eq!(x1.0[0], (x(2) - Expr::sym("lambda12")) * x(2).exp());
    assert!(x1.0[1].is_structurally_zero());
    assert!(hamiltonian_vf(&a2, &Expr::zero()).0.iter().all(Expr::is_structurally_zero));
    let iii = structure(3);
    assert_eq!(hamiltonian_vf(&iii, &int(1)), vf(&[int(0), int(-1), int(1)]));
}

#[test]
fn bracket_examples() {
    let mut t = ZeroTester::new(0);
    let iii = structure(3);
    let b = jacobi_bracket(&iii, &x(1), &(x(1) + x(2) + x(3)));
    assert_eq!(b, int(1));
    // E = 0: {f, f} = 0.
    let poisson = GroupJacobiStructure::from_upper(3, &[(0, 1, x(3)), (1, 2, x(1))], vec![int(0), int(0), int(0)]).unwrap();
    let f = x(1) * x(2) + x(3).sin();
    assert!(jacobi_bracket(&poisson, &f, &f).is_structurally_zero());
    let spec = example_spec(6).unwrap();
    let b = jacobi_bracket(&structure(6), &spec.hamiltonians[0], &spec.hamiltonians[2]);
    assert!(zero(&mut t, &(&b + x(3))), "{b}");
}

#[test]
fn commutator_examples() {
    let c = commutator(&vf(&[int(1), int(0)]), &vf(&[int(0), x(1)])).unwrap();
    assert_eq!(c, vf(&[int(0), int(1)]));
    assert!(matches!(commutator(&vf(&[int(1)]), &vf(&[int(1), int(0)])), Err(Error::Dimension(_))));
    let mut t = ZeroTester::new(0);
    let s3 = example_spec(3).unwrap();
    let xs: Vec<VectorField> = s3.hamiltonians.iter().map(|f| hamiltonian_vf(&structure(3), f)).collect();
    let c = commutator(&xs[1], &xs[2]).unwrap().sub(&xs[0]);
    assert!(c.0.iter().all(|e| zero(&mut t, e)));
    let s4 = example_spec(4).unwrap();
    let xs: Vec<VectorField> = s4.hamiltonians.iter().map(|f| hamiltonian_vf(&structure(4), f)).collect();
    let c = commutator(&xs[0], &xs[1]).unwrap().sub(&xs[2].sub(&xs[1]));
    assert!(c.0.iter().all(|e| zero(&mut t, e)));
}

#[test]
fn closure_examples() {
    let mut t = ZeroTester::new(0);
    let s1 = example_spec(1).unwrap();
    let xs: Vec<VectorField> = s1.hamiltonians.iter().map(|f| hamiltonian_vf(&structure(1), f)).collect();
    let rep = closure_check(&xs, &mut t).unwrap();
    assert!(rep.closed);
    assert_eq!(rep.bracket(0, 1), Some(&[q(1), q(0)][..]));
    assert_eq!(rep.matched.as_deref(), Some("A2"));

    let s6 = example_spec(6).unwrap();
    let xs: Vec<VectorField> = s6.hamiltonians.iter().map(|f| hamiltonian_vf(&structure(6), f)).collect();
    let rep = closure_check(&xs, &mut t).unwrap();
    assert!(rep.closed);
    assert_eq!(rep.bracket(0, 2), Some(&[q(0), q(-1), q(0)][..]));
    assert_eq!(rep.bracket(1, 2), Some(&[q(1), q(0), q(0)][..]));
    assert_eq!(rep.bracket(0, 1), Some(&[q(0), q(0), q(0)][..]));
    assert_eq!(rep.matched.as_deref(), Some("VII0"));

    // [∂1, x1²∂1] = 2x1∂1 is not a constant combination.
    let rep = closure_check(&[vf(&[int(1)]), vf(&[x(1) * x(1)])], &mut t).unwrap();
    assert!(!rep.closed);
    assert_eq!(rep.outside_span.len(), 1);

    let dep = closure_check(&[vf(&[int(1), int(0)]), vf(&[int(2), int(0)])], &mut t);
    assert!(matches!(dep, Err(Error::DependentGenerators(_))));
}

#[test]
fn span_and_independence() {
    let mut t = ZeroTester::new(0);
    let gens = [vf(&[int(1), int(0)]), vf(&[x(2), int(1)])];
    assert!(independent(&gens, &mut t).unwrap());
    let target = vf(&[Expr::frac(1, 3) - Expr::int(2) * x(2), int(-2)]);
    assert_eq!(span_coefficients(&gens, &target, &mut t).unwrap(), Some(vec![Rational::new(1.into(), 3.into()), q(-2)]));
    assert_eq!(span_coefficients(&gens, &vf(&[x(1), int(0)]), &mut t).unwrap(), None);
    // Dependent over the functions but not over the constants.
    assert!(independent(&[vf(&[int(1), int(0)]), vf(&[x(1), int(0)])], &mut t).unwrap());
}

#[test]
fn hamiltonian_of_examples() {
    let mut t = ZeroTester::new(0);
    let s2 = example_spec(2).unwrap();
    let got = hamiltonian_of(&structure(2), &s2.fields[1], &[x(1), x(2)], &mut t);
    assert_eq!(got, Some(x(2)));
    let got = hamiltonian_of(&structure(2), &VectorField::zero(3), &[Expr::zero()], &mut t);
    assert_eq!(got, Some(Expr::zero()));
    let s5 = example_spec(5).unwrap();
    let f3 = x(1) * x(3).sinh() - x(2) * x(3).cosh();
    assert_eq!(hamiltonian_of(&structure(5), &s5.fields[2], &[f3.clone()], &mut t), Some(f3));
    assert_eq!(hamiltonian_of(&structure(5), &s5.fields[2], &[x(3)], &mut t), None);
}

#[test]
fn every_example_reproduces() {
    for n in 1..=6 {
        let rep = verify_example(n, &mut ZeroTester::new(0)).unwrap();
        let fails: Vec<String> = rep.records.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.to_string()).collect();
        assert!(fails.is_empty(), "example {n}: {fails:#?}");
        assert!(rep.lie_system.closed);
        assert!(rep.records.iter().any(|r| r.name.starts_with('{')), "example {n} has no bracket checks");
    }
    assert_eq!(verify_example(7, &mut ZeroTester::new(0)).err(), Some(Error::UnknownExample(7)));
}

#[test]
fn examples_with_degenerate_second_class() {
    for n in [3, 4] {
        let rep = verify_example(n, &mut ZeroTester::new(0)).unwrap();
        assert!(rep.second.is_some());
        let dep = rep.records.iter().find(|r| r.name.contains("pointwise dependent")).expect("dependence record");
        assert_eq!(dep.verdict, Verdict::Pass);
        assert!(rep.records.iter().any(|r| r.name.contains("[[Lambda, Lambda]] = 0 = 2 E ^ Lambda") && r.verdict == Verdict::Pass));
    }
}

#[test]
fn example_notes() {
    let rep = verify_example(1, &mut ZeroTester::new(0)).unwrap();
    assert!(rep.notes.iter().any(|n| n.contains("lambda12")));
    let rep = verify_example(4, &mut ZeroTester::new(0)).unwrap();
    assert!(rep.notes.iter().any(|n| n.contains("x2")));
}

#[test]
fn morphism_property_on_examples() {
    let mut t = ZeroTester::new(11);
    for spec in example_specs().unwrap() {
        let jg = spec.printed_structure().unwrap();
        let dim = jg.dim();
        let f = random_polynomial(dim, 2, &mut t);
        let g = random_polynomial(dim, 2, &mut t);
        let rec = morphism_check(&jg, &f, &g, 100, 1e-9, &mut t).unwrap();
        assert!(!rec.verdict.is_fail(), "example {}: {rec}", spec.number);
    }
}

fn quad(c: [i64; 10]) -> Expr {
    let mons = [int(1), x(1), x(2), x(3), x(1) * x(1), x(2) * x(2), x(3) * x(3), x(1) * x(2), x(1) * x(3), x(2) * x(3)];
    mons.iter().zip(c).map(|(m, k)| int(k) * m).sum()
}

/// The polynomial examples: II, III and IV printed structures.
fn polynomial_structure(k: usize) -> GroupJacobiStructure {
    structure([2, 3, 4][k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(a in prop::array::uniform10(-2i64..=2), b in prop::array::uniform10(-2i64..=2), k in 0usize..3) {
        let jg = polynomial_structure(k);
        let (f, g) = (quad(a), quad(b));
        prop_assert_eq!(jacobi_bracket(&jg, &f, &g), -jacobi_bracket(&jg, &g, &f));
    }

    #[test]
    fn conformal_leibniz(a in prop::array::uniform10(-2i64..=2), b in prop::array::uniform10(-2i64..=2),
                         c in prop::array::uniform10(-2i64..=2), k in 0usize..3) {
        let jg = polynomial_structure(k);
        let (f, g, h) = (quad(a), quad(b), quad(c));
        let br = |u: &Expr, v: &Expr| jacobi_bracket(&jg, u, v);
        // {f, 1} = -E(f), straight from the bracket formula.
        let ef: Expr = jg.reeb.iter().enumerate().map(|(mu, e)| e * f.dx(mu + 1)).sum();
        prop_assert_eq!(br(&f, &Expr::one()), -ef);
        let lhs = br(&f, &(&g * &h)) - &g * br(&f, &h) - &h * br(&f, &g) + &g * &h * br(&f, &Expr::one());
        prop_assert!(lhs.is_structurally_zero(), "{}", lhs);
    }

    #[test]
    fn morphism_holds_exactly_on_polynomial_examples(a in prop::array::uniform10(-2i64..=2), b in prop::array::uniform10(-2i64..=2), k in 0usize..3) {
        let jg = polynomial_structure(k);
        let (f, g) = (quad(a), quad(b));
        let lhs = commutator(&hamiltonian_vf(&jg, &f), &hamiltonian_vf(&jg, &g)).unwrap();
        let rhs = hamiltonian_vf(&jg, &jacobi_bracket(&jg, &f, &g));
        prop_assert_eq!(lhs, rhs);
    }
}
