//! Instance-file parsing and result emission.
//!
//! One instance per file. The grammar is line-oriented:
//!
//! ```text
//! tropical-cone            # or tropical-polyhedron
//! dim 3
//! ineqs 4
//! -oo -oo 0 ; 2 -oo -oo    # cone row: A-row ; B-row   (A x ≤ B x)
//! ...
//! ```
//!
//! Polyhedron data lines carry four `;`-separated sections — A-row, the
//! constant c, B-row, the constant e — encoding `A x ⊕ c ≤ B x ⊕ e`.
//! `#` starts a comment anywhere; blank lines are ignored. Scalar tokens are
//! `-oo`, integers, exact decimals (`2.5`), or fractions (`5/2`).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::dd::{AffineGenerators, GeneratorSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::system::{AffineSystem, IneqSystem};
use crate::vector::TVector;

/// A parsed instance: a cone `Ax ≤ Bx` or a polyhedron `Ax ⊕ c ≤ Bx ⊕ e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemFile {
    Cone(IneqSystem),
    Polyhedron(AffineSystem),
}

impl ProblemFile {
    pub fn dim(&self) -> usize {
        match self {
            ProblemFile::Cone(s) => s.dim(),
            ProblemFile::Polyhedron(s) => s.dim(),
        }
    }

    pub fn row_count(&self) -> usize {
        match self {
            ProblemFile::Cone(s) => s.row_count(),
            ProblemFile::Polyhedron(s) => s.row_count(),
        }
    }
}

fn parse_scalar(tok: &str, line: usize) -> Result<Scalar> {
    Scalar::from_str(tok).map_err(|_| Error::parse(line, format!("bad scalar token `{tok}`")))
}

fn parse_tokens(toks: &[&str], want: usize, line: usize, what: &str) -> Result<Vec<Scalar>> {
    if toks.len() != want {
        return Err(Error::parse(
            line,
            format!("{what}: expected {want} token(s), found {}", toks.len()),
        ));
    }
    toks.iter().map(|t| parse_scalar(t, line)).collect()
}

fn vector_of(entries: Vec<Scalar>, line: usize) -> Result<TVector> {
    TVector::new(entries).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parse a whitespace-separated vector of exactly `dim` scalar tokens, as
/// passed on the command line.
pub fn parse_vector(text: &str, dim: usize) -> Result<TVector> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() != dim {
        return Err(Error::invalid(format!(
            "vector `{text}`: expected {dim} token(s), found {}",
            toks.len()
        )));
    }
    let entries = toks
        .iter()
        .map(|t| Scalar::from_str(t).map_err(|_| Error::invalid(format!("bad scalar token `{t}`"))))
        .collect::<Result<Vec<Scalar>>>()?;
    TVector::new(entries)
}

/// Semantic lines of an instance file: comments and blanks stripped,
/// original 1-based line numbers retained for error reports.
struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let body = raw.split('#').next().unwrap_or("").trim();
                if body.is_empty() {
                    None
                } else {
                    Some((i + 1, body))
                }
            })
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.lines.get(self.pos) {
            Some(&(n, s)) => {
                self.pos += 1;
                Ok((n, s))
            }
            None => {
                let after = self.lines.last().map_or(0, |&(n, _)| n);
                Err(Error::parse(after + 1, format!("missing {what}")))
            }
        }
    }

    fn header_num(&mut self, label: &str) -> Result<(usize, usize)> {
        let (n, body) = self.next(&format!("`{label} <value>` line"))?;
        let mut it = body.split_whitespace();
        match (it.next(), it.next(), it.next()) {
            (Some(l), Some(v), None) if l == label => v
                .parse::<usize>()
                .map(|v| (n, v))
                .map_err(|_| Error::parse(n, format!("bad {label} value `{v}`"))),
            _ => Err(Error::parse(n, format!("expected `{label} <value>`, found `{body}`"))),
        }
    }

    fn leftover(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }
}

/// Parse an instance file. Errors carry the 1-based line number of the
/// first offending line.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut cur = Cursor::new(text);

    let (kind_line, kind) = cur.next("header line (`tropical-cone` or `tropical-polyhedron`)")?;
    let is_cone = match kind {
        "tropical-cone" => true,
        "tropical-polyhedron" => false,
        other => {
            return Err(Error::parse(
                kind_line,
                format!("expected `tropical-cone` or `tropical-polyhedron`, found `{other}`"),
            ))
        }
    };

    let (dim_line, dim) = cur.header_num("dim")?;
    let (_, n_rows) = cur.header_num("ineqs")?;
    if dim == 0 {
        return Err(Error::parse(dim_line, "dim must be at least 1".to_string()));
    }

    let mut cone = IneqSystem::empty(dim).ok();
    let mut poly = AffineSystem::empty(dim).ok();
    for _ in 0..n_rows {
        let (n, body) = cur.next("data line")?;
        let sections: Vec<Vec<&str>> = body
            .split(';')
            .map(|s| s.split_whitespace().collect())
            .collect();
        if is_cone {
            if sections.len() != 2 {
                return Err(Error::parse(
                    n,
                    format!("cone row: expected `A-row ; B-row`, found {} section(s)", sections.len()),
                ));
            }
            let a = vector_of(parse_tokens(&sections[0], dim, n, "A-row")?, n)?;
            let b = vector_of(parse_tokens(&sections[1], dim, n, "B-row")?, n)?;
            cone.as_mut()
                .unwrap()
                .push_row(a, b)
                .map_err(|e| Error::parse(n, e.to_string()))?;
        } else {
            if sections.len() != 4 {
                return Err(Error::parse(
                    n,
                    format!(
                        "polyhedron row: expected `A-row ; c ; B-row ; e`, found {} section(s)",
                        sections.len()
                    ),
                ));
            }
            let a = vector_of(parse_tokens(&sections[0], dim, n, "A-row")?, n)?;
            let c = parse_tokens(&sections[1], 1, n, "constant c")?.pop().unwrap();
            let b = vector_of(parse_tokens(&sections[2], dim, n, "B-row")?, n)?;
            let e = parse_tokens(&sections[3], 1, n, "constant e")?.pop().unwrap();
            poly.as_mut()
                .unwrap()
                .push_row(a, c, b, e)
                .map_err(|e| Error::parse(n, e.to_string()))?;
        }
    }
    if let Some((n, body)) = cur.leftover() {
        return Err(Error::parse(n, format!("unexpected extra line `{body}`")));
    }

    Ok(if is_cone {
        ProblemFile::Cone(cone.unwrap())
    } else {
        ProblemFile::Polyhedron(poly.unwrap())
    })
}

fn push_tokens(out: &mut String, v: &[Scalar]) {
    for (i, s) in v.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{s}");
    }
}

/// Serialize an instance in the grammar accepted by [`parse_problem`].
/// Deterministic byte-for-byte for equal inputs.
pub fn emit_problem(p: &ProblemFile) -> String {
    let mut out = String::new();
    match p {
        ProblemFile::Cone(sys) => {
            let _ = writeln!(out, "tropical-cone");
            let _ = writeln!(out, "dim {}", sys.dim());
            let _ = writeln!(out, "ineqs {}", sys.row_count());
            for k in 1..=sys.row_count() {
                let (a, b) = sys.row(k);
                push_tokens(&mut out, a.entries());
                out.push_str(" ; ");
                push_tokens(&mut out, b.entries());
                out.push('\n');
            }
        }
        ProblemFile::Polyhedron(sys) => {
            let _ = writeln!(out, "tropical-polyhedron");
            let _ = writeln!(out, "dim {}", sys.dim());
            let _ = writeln!(out, "ineqs {}", sys.row_count());
            for k in 1..=sys.row_count() {
                let (a, c, b, e) = sys.row(k);
                push_tokens(&mut out, a.entries());
                let _ = write!(out, " ; {c} ; ");
                push_tokens(&mut out, b.entries());
                let _ = writeln!(out, " ; {e}");
            }
        }
    }
    out
}

/// Serialize the extreme rays of a cone: header, then one ray per line in
/// canonical order. Deterministic byte-for-byte for equal inputs.
pub fn emit_generators(g: &GeneratorSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "extreme-rays");
    let _ = writeln!(out, "dim {}", g.dim());
    let _ = writeln!(out, "count {}", g.len());
    for v in g.iter() {
        push_tokens(&mut out, v.entries());
        out.push('\n');
    }
    out
}

/// Serialize the extreme points and rays of a polyhedron as a `points`
/// block followed by a `rays` block, each in canonical order.
pub fn emit_affine_generators(g: &AffineGenerators) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "points {}", g.points.len());
    for v in &g.points {
        push_tokens(&mut out, v.entries());
        out.push('\n');
    }
    let _ = writeln!(out, "rays {}", g.rays.len());
    for v in &g.rays {
        push_tokens(&mut out, v.entries());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::fixtures::{running_example, tv};

    const RUNNING_EXAMPLE_FILE: &str = "\
# x2 <= x1 + 2, x1 <= max(x2, x3), x1 <= x3 + 2, x3 <= max(x1, x2 - 1)
tropical-cone
dim 3
ineqs 4
-oo -oo 0 ; 2 -oo -oo
0 -oo -oo ; -oo 0 0
0 -oo -oo ; -oo -oo 2
-oo -oo 0 ; 0 -1 -oo
";

    #[test]
    fn parse_running_example_file() {
        let p = parse_problem(RUNNING_EXAMPLE_FILE).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.row_count(), 4);
        match p {
            ProblemFile::Cone(sys) => {
                let want = running_example();
                for k in 1..=4 {
                    assert_eq!(sys.row(k), want.row(k));
                }
            }
            _ => panic!("expected a cone"),
        }
    }

    #[test]
    fn parse_empty_and_tokens() {
        let p = parse_problem("tropical-cone\ndim 2\nineqs 0\n").unwrap();
        assert_eq!(p.row_count(), 0);

        // decimals and fractions are exact
        let p = parse_problem("tropical-cone\ndim 2\nineqs 1\n2.5 -oo ; -oo 5/2\n").unwrap();
        if let ProblemFile::Cone(sys) = p {
            let (a, b) = sys.row(1);
            assert_eq!(a.get(1), &Scalar::from_ratio(5, 2));
            assert_eq!(a.get(1), b.get(2));
        } else {
            unreachable!()
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let arity = parse_problem("tropical-cone\ndim 3\nineqs 1\n0 0 ; 0 0 0\n");
        assert!(matches!(arity, Err(Error::Parse { line: 4, .. })), "{arity:?}");

        let token = parse_problem("tropical-cone\ndim 1\nineqs 1\nxyz ; 0\n");
        assert!(matches!(token, Err(Error::Parse { line: 4, .. })));

        let header = parse_problem("tropical-wedge\ndim 1\nineqs 0\n");
        assert!(matches!(header, Err(Error::Parse { line: 1, .. })));

        let missing = parse_problem("tropical-cone\ndim 3\nineqs 2\n0 0 0 ; 0 0 0\n");
        assert!(matches!(missing, Err(Error::Parse { line: 5, .. })), "{missing:?}");

        let extra = parse_problem("tropical-cone\ndim 1\nineqs 0\n0 ; 0\n");
        assert!(matches!(extra, Err(Error::Parse { line: 4, .. })));

        let zero_dim = parse_problem("tropical-cone\ndim 0\nineqs 0\n");
        assert!(matches!(zero_dim, Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn parse_polyhedron_rows() {
        // x1 <= 3  encoded as  x1 ⊕ -oo  <=  (-oo)x ⊕ 3
        let text = "tropical-polyhedron\ndim 1\nineqs 1\n0 ; -oo ; -oo ; 3\n";
        let p = parse_problem(text).unwrap();
        match &p {
            ProblemFile::Polyhedron(sys) => {
                let (a, c, b, e) = sys.row(1);
                assert_eq!(a, &tv("0"));
                assert!(c.is_zero());
                assert_eq!(b, &tv("-oo"));
                assert_eq!(e, &Scalar::from_int(3));
            }
            _ => panic!("expected a polyhedron"),
        }
        assert_eq!(parse_problem(&emit_problem(&p)).unwrap(), p);
    }

    #[test]
    fn problem_round_trip() {
        let p = parse_problem(RUNNING_EXAMPLE_FILE).unwrap();
        let emitted = emit_problem(&p);
        assert_eq!(parse_problem(&emitted).unwrap(), p);
        // emit is a fixpoint: parse(emit(parse(t))) == parse(t) byte-stably
        assert_eq!(emit_problem(&parse_problem(&emitted).unwrap()), emitted);
    }

    #[test]
    fn emit_running_example_rays() {
        let g = GeneratorSet::new(
            3,
            vec![tv("-oo 0 -oo"), tv("0 3 2"), tv("0 0 -2"), tv("0 -oo 0")],
        )
        .unwrap();
        assert_eq!(
            emit_generators(&g),
            "extreme-rays\ndim 3\ncount 4\n-oo 0 -oo\n0 -oo 0\n0 0 -2\n0 3 2\n"
        );
        let empty = GeneratorSet::empty(3).unwrap();
        assert_eq!(emit_generators(&empty), "extreme-rays\ndim 3\ncount 0\n");
    }

    #[test]
    fn emit_affine_blocks() {
        let g = AffineGenerators {
            points: vec![tv("0 3 2")],
            rays: vec![tv("0 0 -2")],
        };
        assert_eq!(emit_affine_generators(&g), "points 1\n0 3 2\nrays 1\n0 0 -2\n");
    }

    #[test]
    fn parse_vector_checks_arity() {
        assert_eq!(parse_vector("0 3 2", 3).unwrap(), tv("0 3 2"));
        assert!(parse_vector("0 3", 3).is_err());
        assert!(parse_vector("0 3 q", 3).is_err());
    }
}
