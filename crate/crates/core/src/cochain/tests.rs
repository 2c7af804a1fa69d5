use super::*;
use crate::actions::sweep_closure;
use crate::coeffalg::{regular_representation, Keying, MultiModule};

const Q: Field = Field::Rationals;

fn space(name: &str) -> SimplicialSpace {
    SimplicialSpace::builtin(name).unwrap()
}

fn negate_x(alg: &Algebra) -> Matrix {
    let rows = (0..alg.dim()).map(|k| vec![(k, alg.field().from_i64(if k % 2 == 0 { 1 } else { -1 }))]).collect();
    Matrix::from_rows(alg.field(), alg.dim(), rows).unwrap()
}

fn setup_with(name: &str, alg: &Algebra, n: usize, build: impl Fn(&Algebra, &[String]) -> MultiModule) -> CochainSetup {
    let sp = space(name);
    let partition = sweep_closure(&sp).unwrap();
    let module = build(alg, &partition.class_ids());
    let assignment = CoefficientAssignment::by_class(partition, module).unwrap();
    CochainSetup::new(sp, alg.clone(), assignment, n).unwrap()
}

fn regular(alg: &Algebra, keys: &[String]) -> MultiModule {
    MultiModule::regular(alg, keys).unwrap()
}

fn twisted(alg: &Algebra, keys: &[String]) -> MultiModule {
    MultiModule::twisted(alg, keys, keys.last().unwrap(), &negate_x(alg)).unwrap()
}

fn endomorphism(alg: &Algebra, keys: &[String]) -> MultiModule {
    let rho = regular_representation(alg);
    let m = MultiModule::endomorphism(alg, &rho, "post", keys.get(1).map(|_| "pre")).unwrap();
    let names = keys.to_vec();
    m.rekey(|k| if k == "post" { names[0].clone() } else { names[1].clone() })
}

fn scalar_module(m: usize) -> impl Fn(&Algebra, &[String]) -> MultiModule {
    move |alg, keys| MultiModule::uniform(alg, &[Matrix::identity(alg.field(), m)], keys).unwrap()
}

#[test]
fn hom_dimensions() {
    let dual = Algebra::truncated_polynomial(Q, 2);
    let circle = setup_with("circle", &dual, 3, regular);
    assert_eq!(circle.hom_dimension(0).unwrap(), 2);
    assert_eq!(circle.hom_dimension(3).unwrap(), 16);
    assert_eq!((0..=4).map(|n| circle.tensor_factors(n).unwrap()).collect::<Vec<_>>(), [0, 1, 2, 3, 4]);
    let sphere = setup_with("sphere2", &dual, 3, regular);
    assert_eq!(sphere.hom_dimension(3).unwrap(), 16);
    let zero = setup_with("torus", &dual, 2, |alg, keys| {
        MultiModule::uniform(alg, &vec![Matrix::zero(Q, 0, 0); 2], keys).unwrap()
    });
    assert!((0..=3).all(|n| zero.hom_dimension(n).unwrap() == 0));
    assert!(zero.basis(4).is_err());
}

#[test]
fn hom_basis_encoding_is_a_bijection() {
    let alg = Algebra::truncated_polynomial(Q, 3);
    let setup = setup_with("sphere2", &alg, 2, endomorphism);
    let basis = setup.basis(3).unwrap();
    // one class, so End_k(A) keeps only post-composition: m = 9
    assert_eq!(basis.dim(), 9 * 27);
    for index in 0..basis.dim() {
        let (digits, mu) = basis.decode(index);
        assert_eq!(basis.encode(&digits, mu), index);
    }
    // first simplex most significant
    assert_eq!(basis.encode(&[1, 0, 0], 0), 9 * 9);
}

#[test]
fn circle_degree_zero_cofaces_are_the_two_actions() {
    let alg = Algebra::truncated_polynomial(Q, 2);
    let setup = setup_with("circle", &alg, 2, twisted);
    let module = setup.assignment().module();
    for (i, key) in ["e.0", "e.1"].iter().enumerate() {
        let d = setup.coface_matrix(0, i).unwrap();
        assert_eq!((d.rows(), d.cols()), (4, 2));
        for a in 0..2 {
            let rho = module.act(key, &alg.basis_vector(a)).unwrap();
            for mu in 0..2 {
                for nu in 0..2 {
                    assert_eq!(d.get(a * 2 + mu, nu), rho.get(mu, nu));
                }
            }
        }
    }
}

#[test]
fn codegeneracy_zero_evaluates_at_the_unit() {
    let alg = Algebra::truncated_polynomial(Q, 2);
    let setup = setup_with("circle", &alg, 2, regular);
    let s = setup.codegeneracy_matrix(0, 0).unwrap();
    assert_eq!(s, Matrix::from_i64(Q, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap());
    let d0 = setup.coface_matrix(0, 0).unwrap();
    assert_eq!(s.mul(&d0).unwrap(), Matrix::identity(Q, 2));
    assert!(setup.codegeneracy_matrix(0, 1).is_err());
    assert!(setup.coface_matrix(0, 2).is_err());
}

#[test]
fn ground_field_maps_are_identities() {
    let alg = Algebra::ground_field(Q);
    for name in ["circle", "sphere3", "torus", "pinched-torus"] {
        let setup = setup_with(name, &alg, 3, scalar_module(2));
        let id = Matrix::identity(Q, 2);
        for n in 0..=3 {
            for i in 0..=n + 1 {
                assert_eq!(setup.coface_matrix(n, i).unwrap(), id, "{name} d^{i} in degree {n}");
            }
            for i in 0..=n {
                assert_eq!(setup.codegeneracy_matrix(n, i).unwrap(), id);
            }
            let delta = setup.differential(n).unwrap();
            if n % 2 == 0 {
                assert!(delta.is_zero());
            } else {
                assert_eq!(delta, id);
            }
        }
        assert_eq!(setup.cohomology_dims().unwrap(), [2, 0, 0, 0]);
    }
}

#[test]
fn circle_differential_in_degree_zero() {
    let alg = Algebra::truncated_polynomial(Q, 2);
    assert!(setup_with("circle", &alg, 1, regular).differential(0).unwrap().is_zero());
    let delta = setup_with("circle", &alg, 1, twisted).differential(0).unwrap();
    assert_eq!(delta.rank(), 1);
    // δm(x) = x m - (-x) m = 2 x m
    assert_eq!(delta.get(2 + 1, 0), Q.from_i64(2));
}

#[test]
fn circle_cohomology() {
    let alg = Algebra::truncated_polynomial(Q, 2);
    let setup = setup_with("circle", &alg, 4, regular);
    assert_eq!(setup.cohomology_dims().unwrap(), [2, 1, 1, 1, 1]);
    assert_eq!(classical_oracle(&alg, setup.assignment().module(), 4).unwrap(), [2, 1, 1, 1, 1]);
    let tw = setup_with("circle", &alg, 3, twisted);
    let dims = tw.cohomology_dims().unwrap();
    assert_eq!(dims[0], 1);
    assert_eq!(dims, classical_oracle(&alg, tw.assignment().module(), 3).unwrap());
}

#[test]
fn classical_oracle_on_the_ground_field() {
    let alg = Algebra::ground_field(Q);
    let m = MultiModule::regular(&alg, &["l", "r"]).unwrap();
    assert_eq!(classical_oracle(&alg, &m, 4).unwrap(), [1, 0, 0, 0, 0]);
    let one = MultiModule::regular(&alg, &["l"]).unwrap();
    assert!(classical_oracle(&alg, &one, 2).is_err());
}

#[test]
fn circle_agrees_with_the_oracle_on_bigger_coefficients() {
    let cube = Algebra::truncated_polynomial(Q, 3);
    for build in [regular, twisted, endomorphism] {
        let setup = setup_with("circle", &cube, 3, build);
        assert_eq!(setup.cohomology_dims().unwrap(), classical_oracle(&cube, setup.assignment().module(), 3).unwrap());
    }
    let f3 = Field::Prime(3);
    let split = Algebra::monogenic(f3, &[f3.one(), f3.zero()]).unwrap();
    let setup = setup_with("circle", &split, 3, regular);
    assert_eq!(setup.cohomology_dims().unwrap(), classical_oracle(&split, setup.assignment().module(), 3).unwrap());
}

#[test]
fn identities_hold_for_class_respecting_coefficients() {
    let dual = Algebra::truncated_polynomial(Q, 2);
    for name in ["circle", "sphere2", "pinched-torus", "sphere1"] {
        for build in [regular, twisted, endomorphism] {
            let report = setup_with(name, &dual, 2, build).check_cosimplicial_identities().unwrap();
            assert!(report.passed(), "{name}: {:?}", report.failures);
        }
    }
    let report = setup_with("torus", &dual, 1, endomorphism).check_cosimplicial_identities().unwrap();
    assert!(report.passed());
}

#[test]
fn unequal_slot_actions_break_identity_a() {
    let alg = Algebra::truncated_polynomial(Q, 2);
    let sp = space("sphere2");
    let partition = sweep_closure(&sp).unwrap();
    let rho = regular_representation(&alg);
    let names = partition.slot_names().to_vec();

    let equal = MultiModule::uniform(&alg, &rho, &names).unwrap();
    let assignment = CoefficientAssignment::new(partition.clone(), equal, Keying::BySlot).unwrap();
    let setup = CochainSetup::new(sp.clone(), alg.clone(), assignment, 2).unwrap();
    assert!(setup.check_cosimplicial_identities().unwrap().passed());

    let unequal = MultiModule::twisted(&alg, &names, "sigma.2", &negate_x(&alg)).unwrap();
    let assignment = CoefficientAssignment::new(partition, unequal, Keying::BySlot).unwrap();
    let setup = CochainSetup::new(sp, alg, assignment, 2).unwrap();
    let report = setup.check_cosimplicial_identities().unwrap();
    assert!(report.fails(Relation::A), "{:?}", report.failures);
    assert!(report.failures.iter().filter(|f| f.relation == Relation::A).all(|f| f.degree <= 1));
}

#[test]
fn budget_stops_the_torus_at_degree_four() {
    let dual = Algebra::truncated_polynomial(Q, 2);
    let sp = space("torus");
    let partition = sweep_closure(&sp).unwrap();
    let module = MultiModule::regular(&dual, &partition.class_ids()).unwrap();
    let assignment = CoefficientAssignment::by_class(partition, module).unwrap();
    let err = CochainSetup::new(sp.clone(), dual.clone(), assignment.clone(), 3).unwrap_err();
    assert_eq!(err, CochainError::Budget { degree: 4, dimension: (2u64 << 24).to_string(), budget: DEFAULT_BUDGET });
    assert!(CochainSetup::with_budget(sp.clone(), dual.clone(), assignment.clone(), 2, 1000).is_err());
    assert!(CochainSetup::new(sp.clone(), dual.clone(), assignment.clone(), 2).is_ok());
    assert_eq!(CochainSetup::new(sp, dual, assignment, 0).unwrap_err(), CochainError::MaxDegree);
}

#[test]
fn report_round_trips() {
    let alg = Algebra::truncated_polynomial(Q, 2);
    let report = setup_with("circle", &alg, 2, regular).report().unwrap();
    assert_eq!(report.t, [0, 1, 2, 3]);
    assert_eq!(report.hom_dims, [2, 4, 8, 16]);
    assert_eq!(report.hh_dims.as_deref(), Some(&[2, 1, 1][..]));
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["identities"], "pass");
    assert_eq!(serde_json::from_value::<CochainReport>(json).unwrap(), report);

    let failing = CochainReport {
        identities: IdentityOutcome::Failures(vec![IdentityFailure {
            relation: Relation::A,
            degree: 0,
            i: Some(0),
            j: Some(2),
        }]),
        hh_dims: None,
        ..report
    };
    let json = serde_json::to_value(&failing).unwrap();
    assert_eq!(json["identities"][0]["relation"], "a");
    assert!(json.get("hh_dims").is_none());
    assert_eq!(serde_json::from_value::<CochainReport>(json).unwrap(), failing);
}
