use jacobi_core::group_geom::{
    coordinate_jacobi_residuals, inverse_check, is_jacobi_manifold, lift_to_group, maurer_cartan, maurer_cartan_check,
    schouten_el, schouten_ll, schouten_residuals, vielbein_catalog, vielbeins, wedge, GroupJacobiStructure,
    Multivector,
};
use jacobi_core::hamsys::example_specs;
use jacobi_core::jacobi_alg::{table_row, AlgJacobiStructure};
use jacobi_core::liealg::{algebra, LieAlgebra};
use jacobi_core::report::{all_pass, Verdict};
use jacobi_core::symexpr::{ZeroTester, ZeroVerdict};
use jacobi_core::{Error, Expr, ExprMatrix, Matrix};
use proptest::prelude::*;

fn s(name: &str) -> Expr {
    Expr::sym(name)
}

fn x(k: usize) -> Expr {
    Expr::x(k)
}

fn int(n: i64) -> Expr {
    Expr::int(n)
}

fn upper3(l12: Expr, l13: Expr, l23: Expr, e: [Expr; 3]) -> GroupJacobiStructure {
    GroupJacobiStructure::from_upper(3, &[(0, 1, l12), (0, 2, l13), (1, 2, l23)], e.to_vec()).unwrap()
}

fn exact_zero(v: &[Expr]) -> bool {
    v.iter().all(Expr::is_structurally_zero)
}

#[test]
fn vielbein_catalog_entries() {
    let a2 = vielbein_catalog("A2").unwrap();
    assert_eq!(a2.inv_e, Matrix::from_rows(vec![vec![x(2).exp(), int(0)], vec![int(0), int(1)]]));
    let iii = vielbein_catalog("III").unwrap();
    let m = -x(2) - x(3);
    assert_eq!(
        iii.inv_e,
        Matrix::from_rows(vec![vec![int(1), int(0), int(0)], vec![m.clone(), int(1), int(0)], vec![m, int(0), int(1)]])
    );
    let vii = vielbein_catalog("VII0").unwrap();
    assert_eq!(
        vii.inv_e,
        Matrix::from_rows(vec![
            vec![x(3).cos(), x(3).sin(), int(0)],
            vec![-x(3).sin(), x(3).cos(), int(0)],
            vec![int(0), int(0), int(1)],
        ])
    );
    assert_eq!(vielbein_catalog("IX"), Err(Error::UnknownGroup("IX".into())));
    let groups: Vec<String> = vielbeins().unwrap().into_iter().map(|v| v.group).collect();
    assert_eq!(groups, ["A2", "II", "III", "IV", "VI0", "VII0"]);
}

/// e^c_ν (e_a^μ ∂_μ e_b^ν - e_b^μ ∂_μ e_a^ν), written out from the index formula.
fn oracle_frame_constants(inv_e: &ExprMatrix, e: &ExprMatrix) -> Vec<Expr> {
    let n = inv_e.rows();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut terms = Vec::new();
                for nu in 0..n {
                    for mu in 0..n {
                        let d_b = inv_e[(nu, b)].dx(mu + 1);
                        let d_a = inv_e[(nu, a)].dx(mu + 1);
                        terms.push(&e[(c, nu)] * (&inv_e[(mu, a)] * d_b - &inv_e[(mu, b)] * d_a));
                    }
                }
                out.push(Expr::sum(terms));
            }
        }
    }
    out
}

#[test]
fn maurer_cartan_matches_oracle_and_catalog() {
    let mut t = ZeroTester::new(0);
    for v in vielbeins().unwrap() {
        let l = algebra(&v.group).unwrap();
        let computed = maurer_cartan(&v);
        let oracle = oracle_frame_constants(&v.inv_e, &v.e);
        for (c, o) in computed.iter().zip(&oracle) {
            assert!(t.test(&(c - o)).is_zero(), "{}: {c} vs {o}", v.group);
        }
        // The frame brackets are the negated table constants.
        for (c, f) in oracle.iter().zip(l.constants()) {
            assert!(t.test(&(c + f)).is_zero(), "{}", v.group);
        }
        assert!(!inverse_check(&v, &mut t).verdict.is_fail());
        let rec = maurer_cartan_check(&v, &l, &mut t).unwrap();
        assert!(!rec.verdict.is_fail(), "{rec}");
        let transcendental_free = v.inv_e.entries().all(|x| !x.has_functions()) && v.e.entries().all(|x| !x.has_functions());
        if v.group == "II" || v.group == "III" || v.group == "IV" {
            assert!(transcendental_free);
        }
    }
}

#[test]
fn maurer_cartan_rejects_wrong_algebra() {
    let mut t = ZeroTester::new(0);
    let a2 = vielbein_catalog("A2").unwrap();
    let a1 = algebra("A1").unwrap();
    let rec = maurer_cartan_check(&a2, &a1, &mut t).unwrap();
    assert_eq!(rec.verdict, Verdict::Fail);
    assert!(rec.detail.iter().any(|d| d.contains("(1,2,1)") || d.contains("c_12^1")), "{:?}", rec.detail);
    let ii = algebra("II").unwrap();
    assert!(maurer_cartan_check(&a2, &ii, &mut t).is_err());
}

#[test]
fn lift_examples() {
    let iii = lift_to_group(&table_row("III", "2c").unwrap().structure, &vielbein_catalog("III").unwrap()).unwrap();
    assert_eq!(iii, upper3(int(0), int(1), -x(2) - x(3), [int(0), int(-1), int(1)]));
    let a2 = lift_to_group(&table_row("A2", "1c").unwrap().structure, &vielbein_catalog("A2").unwrap()).unwrap();
    assert_eq!(a2.lambda[(0, 1)], x(2).exp() * s("lambda12"));
    assert_eq!(a2.reeb, vec![x(2).exp(), int(0)]);
    let zero = lift_to_group(&AlgJacobiStructure::zero(3), &vielbein_catalog("VII0").unwrap()).unwrap();
    assert!(zero.lambda.entries().all(Expr::is_structurally_zero));
    assert!(exact_zero(&zero.reeb));
    let bad = lift_to_group(&AlgJacobiStructure::zero(2), &vielbein_catalog("III").unwrap());
    assert!(matches!(bad, Err(Error::Dimension(_))));
}

#[test]
fn printed_example_structures_are_lifts() {
    let mut t = ZeroTester::new(0);
    for spec in example_specs().unwrap() {
        let v = vielbein_catalog(&spec.group).unwrap();
        let lifted = lift_to_group(&table_row(&spec.group, &spec.row).unwrap().structure, &v).unwrap();
        let printed = spec.printed_structure().unwrap();
        for (label, d) in lifted.differences(&printed) {
            assert!(t.test(&d).is_zero(), "example {} {label}: {d}", spec.number);
        }
    }
}

#[test]
fn coordinate_residual_examples() {
    let iii = lift_to_group(&table_row("III", "2c").unwrap().structure, &vielbein_catalog("III").unwrap()).unwrap();
    let (a, b) = coordinate_jacobi_residuals(&iii);
    assert!(exact_zero(&a) && exact_zero(&b));
    let vi = lift_to_group(&table_row("VI0", "2c").unwrap().structure, &vielbein_catalog("VI0").unwrap()).unwrap();
    let (a, b) = coordinate_jacobi_residuals(&vi);
    let mut t = ZeroTester::new(0);
    assert!(a.iter().chain(&b).all(|r| t.test(r).is_zero()));
    // Λ = ∂1∧∂2, E = ∂3: the first equation picks up E∧Λ.
    let contact = upper3(int(1), int(0), int(0), [int(0), int(0), int(1)]);
    let (a, b) = coordinate_jacobi_residuals(&contact);
    assert_eq!(a[(0 * 3 + 1) * 3 + 2], int(1));
    assert!(exact_zero(&b));
}

#[test]
fn schouten_examples() {
    // Lifted II: [[Λ, Λ]] = 2 ∂1∧∂2∧∂3 = 2 E∧Λ.
    let ii = lift_to_group(&table_row("II", "2c").unwrap().structure, &vielbein_catalog("II").unwrap()).unwrap();
    assert_eq!(ii, upper3(int(0), x(3), int(1), [int(1), int(0), int(0)]));
    let ll = schouten_ll(&ii.bivector()).unwrap();
    assert_eq!(ll.component(&[0, 1, 2]), int(2));
    assert_eq!(wedge(&ii.vector(), &ii.bivector()).unwrap().component(&[0, 1, 2]), int(1));
    // Constant coefficients.
    let c = upper3(int(3), int(-1), int(2), [int(0), int(0), int(0)]);
    assert!(schouten_ll(&c.bivector()).unwrap().is_structurally_zero());
    // Example 4, second class: [[Λ, Λ]] = 0 = 2 E∧Λ.
    let iv = upper3(int(0), int(1), -x(2), [int(0), int(0), int(1)]);
    assert!(schouten_ll(&iv.bivector()).unwrap().is_structurally_zero());
    assert!(wedge(&iv.vector(), &iv.bivector()).unwrap().is_structurally_zero());
}

#[test]
fn lie_derivative_examples() {
    let iii = upper3(int(0), int(1), -x(2) - x(3), [int(0), int(-1), int(1)]);
    assert!(schouten_el(&iii.vector(), &iii.bivector()).unwrap().is_structurally_zero());
    let e0 = Multivector::vector(&[int(0), int(0), int(0)]);
    assert!(schouten_el(&e0, &iii.bivector()).unwrap().is_structurally_zero());
    // E = ∂1, Λ = x1 ∂1∧∂2.
    let e = Multivector::vector(&[int(1), int(0), int(0)]);
    let lam = upper3(x(1), int(0), int(0), [int(0), int(0), int(0)]).bivector();
    let d = schouten_el(&e, &lam).unwrap();
    assert_eq!(d.component(&[0, 1]), int(1));
    assert_eq!(d.component(&[1, 0]), int(-1));
    assert_eq!(d.blades().count(), 1);
}

#[test]
fn wedge_examples() {
    let lam = upper3(int(0), int(0), int(1), [int(0), int(0), int(0)]).bivector();
    let w = wedge(&Multivector::vector(&[int(1), int(0), int(0)]), &lam).unwrap();
    assert_eq!(w.component(&[0, 1, 2]), int(1));
    assert_eq!(w.component(&[2, 1, 0]), int(-1));
    let lam = upper3(int(0), int(1), int(0), [int(0), int(0), int(0)]).bivector();
    assert!(wedge(&Multivector::vector(&[int(0), int(0), int(1)]), &lam).unwrap().is_structurally_zero());
    // By-hand antisymmetrization: E^1Λ^23 + E^2Λ^31 + E^3Λ^12.
    let e = [s("a"), s("b"), s("c")];
    let g = upper3(s("p"), s("q"), s("r"), e.clone());
    let w = wedge(&g.vector(), &g.bivector()).unwrap();
    assert_eq!(w.component(&[0, 1, 2]), s("a") * s("r") - s("b") * s("q") + s("c") * s("p"));
}

#[test]
fn four_dimensions_are_rejected() {
    let z = Expr::zero();
    let mut lam = ExprMatrix::zeros(4, 4);
    lam[(0, 1)] = int(1);
    lam[(1, 0)] = int(-1);
    let g = GroupJacobiStructure::new(lam, vec![z.clone(), z.clone(), z.clone(), z]).unwrap();
    assert_eq!(schouten_ll(&g.bivector()), Err(Error::DimensionUnsupported(4)));
    assert_eq!(wedge(&g.vector(), &g.bivector()), Err(Error::DimensionUnsupported(4)));
    assert!(matches!(is_jacobi_manifold(&g, &mut ZeroTester::new(0)), Err(Error::DimensionUnsupported(4))));
}

#[test]
fn is_jacobi_manifold_examples() {
    let mut t = ZeroTester::new(0);
    for spec in example_specs().unwrap() {
        let recs = is_jacobi_manifold(&spec.printed_structure().unwrap(), &mut t).unwrap();
        assert!(all_pass(&recs), "example {}: {recs:?}", spec.number);
        if let Some(sc) = &spec.second {
            let g = GroupJacobiStructure::from_upper(3, &sc.lambda, sc.reeb.clone()).unwrap();
            assert!(all_pass(&is_jacobi_manifold(&g, &mut t).unwrap()));
        }
    }
    let contact = upper3(int(1), int(0), int(0), [int(0), int(0), int(1)]);
    let recs = is_jacobi_manifold(&contact, &mut t).unwrap();
    assert_eq!(recs[0].verdict, Verdict::Fail);
    assert_eq!(recs[2].verdict, Verdict::Fail);
    assert_eq!(recs[3].verdict, Verdict::Pass);
    let e_only = upper3(int(0), int(0), int(0), [x(1).sin(), x(2) * x(3), int(7)]);
    assert!(all_pass(&is_jacobi_manifold(&e_only, &mut t).unwrap()));
}

fn coeff() -> impl Strategy<Value = i64> {
    -2i64..=2
}

/// Polynomial of degree ≤ 2 in x1, x2, x3 from ten coefficients.
fn quad(c: [i64; 10]) -> Expr {
    let mons = [
        int(1),
        x(1),
        x(2),
        x(3),
        x(1) * x(1),
        x(2) * x(2),
        x(3) * x(3),
        x(1) * x(2),
        x(1) * x(3),
        x(2) * x(3),
    ];
    mons.iter().zip(c).map(|(m, k)| int(k) * m).sum()
}

fn quad_strategy() -> impl Strategy<Value = Expr> {
    prop::array::uniform10(coeff()).prop_map(quad)
}

/// Half arbitrary structures, half `f ∂1∧∂2` with E = 0, which always solves.
fn structure() -> impl Strategy<Value = GroupJacobiStructure> {
    prop_oneof![
        (quad_strategy(), quad_strategy(), quad_strategy(), quad_strategy(), quad_strategy(), quad_strategy())
            .prop_map(|(a, b, c, e1, e2, e3)| upper3(a, b, c, [e1, e2, e3])),
        quad_strategy().prop_map(|f| upper3(f, int(0), int(0), [int(0), int(0), int(0)])),
    ]
}

fn verdict_zero(t: &mut ZeroTester, v: impl IntoIterator<Item = Expr>) -> bool {
    v.into_iter().all(|e| t.test(&e) == ZeroVerdict::ExactZero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn schouten_and_coordinate_forms_agree(g in structure()) {
        let mut t = ZeroTester::new(5);
        let (r1, r2) = schouten_residuals(&g).unwrap();
        let schouten_ok = verdict_zero(&mut t, r1.all_blades().into_iter().chain(r2.all_blades()).map(|(_, e)| e));
        let (c1, c2) = coordinate_jacobi_residuals(&g);
        let coord_ok = verdict_zero(&mut t, c1.into_iter().chain(c2));
        prop_assert_eq!(schouten_ok, coord_ok);
    }

    #[test]
    fn lift_is_linear(a in prop::array::uniform3(coeff()), b in prop::array::uniform3(coeff()),
                      ea in prop::array::uniform3(coeff()), eb in prop::array::uniform3(coeff()), g in 0usize..5) {
        let v = &vielbeins().unwrap()[g + 1];
        let mk = |l: [i64; 3], e: [i64; 3]| AlgJacobiStructure::from_upper(
            3, &[(0, 1, int(l[0])), (0, 2, int(l[1])), (1, 2, int(l[2]))], e.iter().map(|k| int(*k)).collect()).unwrap();
        let (ja, jb) = (mk(a, ea), mk(b, eb));
        let sum = AlgJacobiStructure::new(ja.lambda.add(&jb.lambda), ja.reeb.iter().zip(&jb.reeb).map(|(p, q)| p + q).collect()).unwrap();
        let lhs = lift_to_group(&sum, v).unwrap();
        let rhs = lift_to_group(&ja, v).unwrap().add(&lift_to_group(&jb, v).unwrap()).unwrap();
        let mut t = ZeroTester::new(2);
        for (_, d) in lhs.differences(&rhs) {
            prop_assert!(t.test(&d).is_zero());
        }
    }
}

#[test]
fn algebra_level_solutions_lift_to_jacobi_manifolds() {
    let mut t = ZeroTester::new(9);
    for v in vielbeins().unwrap() {
        let l: LieAlgebra = algebra(&v.group).unwrap();
        for row in jacobi_core::jacobi_alg::table_rows_for(&l.name).unwrap() {
            let jg = lift_to_group(&row.structure, &v).unwrap();
            let recs = is_jacobi_manifold(&jg, &mut t).unwrap();
            assert!(all_pass(&recs), "{} row {}: {recs:?}", l.name, row.id);
        }
    }
}
