use super::{FaceRef, GeneratorDocument, SimplicialSpace, SpaceDocument, SpaceError};

fn vertex(name: &str) -> GeneratorDocument {
    GeneratorDocument { name: name.into(), dim: 0, faces: Vec::new() }
}

fn cell(name: &str, dim: usize, faces: Vec<FaceRef>) -> GeneratorDocument {
    GeneratorDocument { name: name.into(), dim, faces }
}

/// The basepoint as an `n`-simplex.
fn star(n: usize) -> FaceRef {
    FaceRef("pt".into(), (0..n).rev().collect())
}

fn loop_edge(name: &str) -> GeneratorDocument {
    cell(name, 1, vec![star(0), star(0)])
}

fn circle() -> SpaceDocument {
    SpaceDocument { name: "circle".into(), basepoint: "pt".into(), simplices: vec![vertex("pt"), loop_edge("e")] }
}

fn sphere(n: usize) -> SpaceDocument {
    SpaceDocument {
        name: format!("sphere{n}"),
        basepoint: "pt".into(),
        simplices: vec![vertex("pt"), cell("sigma", n, vec![star(n - 1); n + 1])],
    }
}

/// Square with opposite sides glued, cut along the diagonal `c`:
/// `d0 sigma = c, d1 sigma = b, d2 sigma = a` and `tau = [a, b, c]`.
fn torus() -> SpaceDocument {
    let f = FaceRef::plain;
    SpaceDocument {
        name: "torus".into(),
        basepoint: "pt".into(),
        simplices: vec![
            vertex("pt"),
            loop_edge("a"),
            loop_edge("b"),
            loop_edge("c"),
            cell("sigma", 2, vec![f("c"), f("b"), f("a")]),
            cell("tau", 2, vec![f("a"), f("b"), f("c")]),
        ],
    }
}

/// The torus with the edge `b` collapsed to the basepoint.
fn pinched_torus() -> SpaceDocument {
    let f = FaceRef::plain;
    SpaceDocument {
        name: "pinched-torus".into(),
        basepoint: "pt".into(),
        simplices: vec![
            vertex("pt"),
            loop_edge("a"),
            loop_edge("c"),
            cell("sigma", 2, vec![f("c"), star(1), f("a")]),
            cell("tau", 2, vec![f("a"), star(1), f("c")]),
        ],
    }
}

fn parse_sphere(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("sphere")?;
    let digits = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    digits.parse().ok().filter(|&n| n >= 1)
}

pub(super) fn builtin(name: &str) -> Result<SimplicialSpace, SpaceError> {
    let doc = match name {
        "circle" => circle(),
        "torus" => torus(),
        "pinched-torus" => pinched_torus(),
        other => match parse_sphere(other) {
            Some(n) => sphere(n),
            None => return Err(SpaceError::UnknownBuiltin(name.to_string())),
        },
    };
    doc.resolve()
}
