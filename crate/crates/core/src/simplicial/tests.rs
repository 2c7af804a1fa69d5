use super::*;

fn builtins() -> Vec<SimplicialSpace> {
    ["circle", "sphere1", "sphere2", "sphere3", "sphere4", "torus", "pinched-torus"]
        .iter()
        .map(|n| SimplicialSpace::builtin(n).unwrap())
        .collect()
}

fn gen(space: &SimplicialSpace, name: &str) -> Simplex {
    space.simplex(space.find(name).unwrap())
}

fn word(space: &SimplicialSpace, name: &str, w: &[usize]) -> Simplex {
    let mut s = gen(space, name);
    for &j in w.iter().rev() {
        s = space.apply_degeneracy(&s, j).unwrap();
    }
    s
}

const CIRCLE: &str = r#"{
  "name": "circle", "basepoint": "pt",
  "simplices": [
    { "name": "pt", "dim": 0, "faces": [] },
    { "name": "e", "dim": 1, "faces": [["pt", []], ["pt", []]] }
  ]
}"#;

#[test]
fn parses_circle_and_torus_documents() {
    let circle = parse_space(CIRCLE).unwrap();
    assert_eq!(circle.generators().len(), 2);
    assert_eq!(circle, SimplicialSpace::builtin("circle").unwrap());

    let torus = r#"{"name": "torus", "basepoint": "pt", "simplices": [
        {"name": "pt", "dim": 0},
        {"name": "a", "dim": 1, "faces": [["pt", []], ["pt", []]]},
        {"name": "b", "dim": 1, "faces": [["pt", []], ["pt", []]]},
        {"name": "c", "dim": 1, "faces": [["pt", []], ["pt", []]]},
        {"name": "sigma", "dim": 2, "faces": [["c", []], ["b", []], ["a", []]]},
        {"name": "tau", "dim": 2, "faces": [["a", []], ["b", []], ["c", []]]}
    ]}"#;
    assert_eq!(parse_space(torus).unwrap(), SimplicialSpace::builtin("torus").unwrap());
}

#[test]
fn document_round_trip() {
    for space in builtins() {
        let json = serde_json::to_string(&space.to_document()).unwrap();
        assert_eq!(parse_space(&json).unwrap(), space);
    }
}

#[test]
fn rejects_malformed_documents() {
    let bad_dim = r#"{"name": "x", "basepoint": "pt", "simplices": [
        {"name": "pt", "dim": 0},
        {"name": "t", "dim": 2, "faces": [["pt", []], ["pt", []], ["pt", []]]}
    ]}"#;
    assert!(matches!(parse_space(bad_dim), Err(SpaceError::FaceDimension { face: 0, .. })));

    let unknown = CIRCLE.replace(r#"["pt", []]]"#, r#"["q", []]]"#);
    assert!(matches!(parse_space(&unknown), Err(SpaceError::UnknownGenerator { .. })));

    let no_base = CIRCLE.replace(r#""basepoint": "pt""#, r#""basepoint": "e""#);
    assert!(matches!(parse_space(&no_base), Err(SpaceError::BadBasepoint(_))));

    let increasing = r#"{"name": "x", "basepoint": "pt", "simplices": [
        {"name": "pt", "dim": 0},
        {"name": "t", "dim": 3, "faces": [["pt", [0, 1]], ["pt", [1, 0]], ["pt", [1, 0]], ["pt", [1, 0]]]}
    ]}"#;
    assert!(matches!(parse_space(increasing), Err(SpaceError::NonNormalWord { face: 0, .. })));

    let out_of_range = r#"{"name": "x", "basepoint": "pt", "simplices": [
        {"name": "pt", "dim": 0},
        {"name": "t", "dim": 2, "faces": [["pt", [1]], ["pt", [0]], ["pt", [0]]]}
    ]}"#;
    assert!(matches!(parse_space(out_of_range), Err(SpaceError::NonNormalWord { .. })));

    let dup = CIRCLE.replace(r#""name": "e""#, r#""name": "pt""#);
    assert!(matches!(parse_space(&dup), Err(SpaceError::DuplicateGenerator(_))));

    let count = CIRCLE.replace(r#"[["pt", []], ["pt", []]]"#, r#"[["pt", []]]"#);
    assert!(matches!(parse_space(&count), Err(SpaceError::FaceCount { .. })));

    assert!(matches!(parse_space("{"), Err(SpaceError::Json(_))));
}

#[test]
fn builtin_shapes() {
    let circle = SimplicialSpace::builtin("circle").unwrap();
    let names: Vec<&str> = circle.generators().iter().map(|g| g.name()).collect();
    assert_eq!(names, ["e", "pt"]);

    let s2 = SimplicialSpace::builtin("sphere2").unwrap();
    assert_eq!(s2, SimplicialSpace::builtin("sphere(2)").unwrap());
    let sigma = s2.generator(s2.find("sigma").unwrap());
    assert_eq!(sigma.dim(), 2);
    assert!(sigma.faces().iter().all(|f| s2.is_basepoint(f)));

    let pinched = SimplicialSpace::builtin("pinched-torus").unwrap();
    assert!(pinched.find("b").is_none());
    let render = |g: &str| -> Vec<String> {
        let gen = pinched.generator(pinched.find(g).unwrap());
        gen.faces().iter().map(|f| pinched.render(f)).collect()
    };
    assert_eq!(render("sigma"), ["c", "s0(pt)", "a"]);
    assert_eq!(render("tau"), ["a", "s0(pt)", "c"]);

    assert!(matches!(SimplicialSpace::builtin("klein"), Err(SpaceError::UnknownBuiltin(_))));
    assert!(SimplicialSpace::builtin("sphere0").is_err());
}

#[test]
fn face_examples() {
    let circle = SimplicialSpace::builtin("circle").unwrap();
    let s0e = word(&circle, "e", &[0]);
    assert_eq!(circle.apply_face(&s0e, 2).unwrap(), circle.basepoint_simplex(1));
    assert_eq!(circle.apply_face(&s0e, 0).unwrap(), gen(&circle, "e"));
    assert_eq!(circle.apply_face(&s0e, 1).unwrap(), gen(&circle, "e"));
    assert!(matches!(circle.apply_face(&s0e, 3), Err(SpaceError::FaceIndex { .. })));
    assert!(circle.apply_face(&gen(&circle, "pt"), 0).is_err());

    let torus = SimplicialSpace::builtin("torus").unwrap();
    assert_eq!(torus.apply_face(&gen(&torus, "sigma"), 1).unwrap(), gen(&torus, "b"));
}

#[test]
fn degeneracy_examples() {
    let circle = SimplicialSpace::builtin("circle").unwrap();
    let e = gen(&circle, "e");
    let s0e = circle.apply_degeneracy(&e, 0).unwrap();
    assert_eq!(s0e.word(), [0]);
    assert_eq!(circle.apply_degeneracy(&s0e, 0).unwrap().word(), [1, 0]);
    let pt = gen(&circle, "pt");
    assert_eq!(circle.apply_degeneracy(&pt, 0).unwrap(), circle.basepoint_simplex(1));
    assert!(matches!(circle.apply_degeneracy(&e, 2), Err(SpaceError::DegeneracyIndex { .. })));
}

#[test]
fn enumeration_examples() {
    let circle = SimplicialSpace::builtin("circle").unwrap();
    let all = circle.enumerate_simplices(2);
    let rendered: Vec<String> = all.iter().map(|s| circle.render(s)).collect();
    assert_eq!(rendered, ["s0(e)", "s1(e)", "s1s0(pt)"]);
    assert_eq!(circle.non_basepoint_simplices(2).len(), 2);

    let s2 = SimplicialSpace::builtin("sphere2").unwrap();
    let three: Vec<String> = s2.non_basepoint_simplices(3).iter().map(|s| s2.render(s)).collect();
    assert_eq!(three, ["s0(sigma)", "s1(sigma)", "s2(sigma)"]);

    for space in builtins() {
        let zero = space.enumerate_simplices(0);
        assert!(zero.iter().all(|s| space.generator(s.base()).dim() == 0));
        assert_eq!(zero.len(), 1);
    }
}

/// Every sequence over `0..n` of length `len`, kept when strictly decreasing.
fn brute_force_words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |j| {
                    let mut w = w.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    all.retain(|w| w.windows(2).all(|p| p[0] > p[1]));
    all.sort();
    all
}

#[test]
fn word_enumeration_matches_brute_force() {
    for n in 0..=6 {
        for len in 0..=n {
            assert_eq!(decreasing_words(n, len), brute_force_words(n, len), "n={n} len={len}");
        }
    }
}

#[test]
fn counts_match_closed_form_and_are_unique() {
    for space in builtins() {
        for n in 0..=6 {
            let all = space.enumerate_simplices(n);
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, all, "{} n={n}: canonical order, no duplicates", space.name());
            assert_eq!(space.non_basepoint_simplices(n).len(), space.count_non_basepoint(n));
            assert_eq!(all.iter().filter(|s| space.is_basepoint(s)).count(), 1);
        }
    }
    let torus = SimplicialSpace::builtin("torus").unwrap();
    let t: Vec<usize> = (0..=4).map(|n| torus.count_non_basepoint(n)).collect();
    assert_eq!(t, [0, 3, 8, 15, 24]);
}

#[test]
fn simplicial_identities_on_all_simplices() {
    for space in builtins() {
        for n in 0..=5 {
            for s in space.enumerate_simplices(n) {
                let d = |x: &Simplex, i| space.apply_face(x, i).unwrap();
                let sd = |x: &Simplex, i| space.apply_degeneracy(x, i).unwrap();
                // d_i d_j = d_{j-1} d_i, i < j
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            assert_eq!(d(&d(&s, j), i), d(&d(&s, i), j - 1));
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i, i <= j
                for j in 0..=n {
                    for i in 0..=j {
                        assert_eq!(sd(&sd(&s, j), i), sd(&sd(&s, i), j + 1));
                    }
                }
                // d_i s_j
                for j in 0..=n {
                    let sj = sd(&s, j);
                    for i in 0..=n + 1 {
                        let lhs = d(&sj, i);
                        if i == j || i == j + 1 {
                            assert_eq!(lhs, s);
                        } else if i < j {
                            assert_eq!(lhs, sd(&d(&s, i), j - 1));
                        } else {
                            assert_eq!(lhs, sd(&d(&s, i - 1), j));
                        }
                    }
                }
                if space.is_basepoint(&s) {
                    assert_eq!(s, space.basepoint_simplex(n));
                }
            }
        }
    }
}

#[test]
fn builtins_validate() {
    for space in builtins() {
        assert!(space.validate().passed(), "{}", space.name());
    }
}

#[test]
fn permuted_torus_still_validates() {
    let mut doc = SimplicialSpace::builtin("torus").unwrap().to_document();
    let sigma = doc.simplices.iter_mut().find(|g| g.name == "sigma").unwrap();
    sigma.faces = vec![FaceRef::plain("a"), FaceRef::plain("c"), FaceRef::plain("b")];
    // all vertices are the basepoint, so no dimension-one check can fail
    assert!(doc.resolve().unwrap().validate().passed());
}

#[test]
fn two_vertex_violation_is_reported() {
    let text = r#"{"name": "bad", "basepoint": "p", "simplices": [
        {"name": "p", "dim": 0},
        {"name": "q", "dim": 0},
        {"name": "x", "dim": 1, "faces": [["q", []], ["p", []]]},
        {"name": "y", "dim": 1, "faces": [["q", []], ["p", []]]},
        {"name": "t", "dim": 2, "faces": [["x", []], ["y", []], ["x", []]]}
    ]}"#;
    let space = SpaceDocument::from_json(text).unwrap().resolve().unwrap();
    let report = space.validate();
    assert_eq!(report.violations.len(), 1);
    let v = &report.violations[0];
    assert_eq!((v.generator.as_str(), v.i, v.j), ("t", 0, 2));
    assert_eq!((v.left.as_str(), v.right.as_str()), ("q", "p"));
    assert!(matches!(parse_space(text), Err(SpaceError::IdentityViolation(_))));
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    /// A generator of a built-in space, degenerated by an arbitrary (not
    /// necessarily normal) sequence of `s_j`.
    fn degenerate_simplex() -> impl Strategy<Value = (SimplicialSpace, Simplex)> {
        (0..7usize, any::<prop::sample::Index>(), prop::collection::vec(any::<prop::sample::Index>(), 1..7)).prop_map(
            |(k, g, picks)| {
                let space = builtins().swap_remove(k);
                let ids: Vec<GenId> = space.generator_ids().collect();
                let mut s = space.simplex(*g.get(&ids));
                for p in picks {
                    s = space.apply_degeneracy(&s, p.index(s.dim() + 1)).unwrap();
                }
                (space, s)
            },
        )
    }

    proptest! {
        #[test]
        fn degeneracies_stay_in_normal_form((space, s) in degenerate_simplex()) {
            prop_assert!(s.word().windows(2).all(|w| w[0] > w[1]));
            prop_assert_eq!(s.dim(), space.generator(s.base()).dim() + s.word().len());
            prop_assert!(s.word().iter().enumerate().all(|(k, &j)| j < s.dim() - k));
        }

        #[test]
        fn face_identities_in_high_dimensions((space, s) in degenerate_simplex()) {
            let n = s.dim();
            let d = |x: &Simplex, i| space.apply_face(x, i).unwrap();
            for j in (1..=n).filter(|_| n >= 2) {
                for i in 0..j {
                    prop_assert_eq!(d(&d(&s, j), i), d(&d(&s, i), j - 1));
                }
            }
            for j in 0..=n {
                let sj = space.apply_degeneracy(&s, j).unwrap();
                prop_assert_eq!(d(&sj, j), s.clone());
                prop_assert_eq!(d(&sj, j + 1), s.clone());
            }
        }
    }
}
