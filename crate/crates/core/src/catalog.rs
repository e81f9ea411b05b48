//! Named constructors for standard permutation groups and the generator
//! file format.
//!
//! Spec grammar (products bind loosest, `x` separates factors):
//!
//! ```text
//! spec    := factor ("x" factor)*
//! factor  := C<n> | S<n> | A<n> | D<n> | EA(<p>,<k>) | Q8 | V4 | file:<path>
//! ```

use std::fmt::Write as _;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// The groups swept by `verify --group catalog` and by the test suites.
pub const VERIFICATION_SET: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "V4", "EA(3,2)",
    "D4", "D6", "Q8", "S3", "S4", "A4",
];

pub const GRAMMAR: &[(&str, &str)] = &[
    ("C<n>", "cyclic group of order n, the n-cycle on n points"),
    ("S<n>", "symmetric group on n points"),
    ("A<n>", "alternating group on n points"),
    ("D<n>", "dihedral group of order 2n on n points (n >= 3)"),
    (
        "EA(p,k)",
        "elementary abelian group of order p^k on pk points",
    ),
    ("Q8", "quaternion group, regular representation on 8 points"),
    ("V4", "alias for EA(2,2)"),
    ("AxB", "direct product on disjoint point sets"),
    ("file:<path>", "generators read from a file"),
];

/// A resolved group spec.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub resolved: FiniteGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Factor {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    ElementaryAbelian(u64, u32),
    Quaternion,
    File(String),
}

impl Factor {
    fn nominal_order(&self) -> Option<u128> {
        match self {
            Factor::Cyclic(n) => Some(*n as u128),
            Factor::Symmetric(n) => factorial(*n),
            Factor::Alternating(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            Factor::Dihedral(n) => (*n as u128).checked_mul(2),
            Factor::ElementaryAbelian(p, k) => (*p as u128).checked_pow(*k),
            Factor::Quaternion => Some(8),
            Factor::File(_) => None,
        }
    }

    fn degree(&self) -> Option<usize> {
        match self {
            Factor::Cyclic(n)
            | Factor::Symmetric(n)
            | Factor::Alternating(n)
            | Factor::Dihedral(n) => Some(*n),
            Factor::ElementaryAbelian(p, k) => (*p as usize).checked_mul(*k as usize),
            Factor::Quaternion => Some(8),
            Factor::File(_) => None,
        }
    }

    /// Generators on `degree` points, 0-based.
    fn generators(&self, degree: usize) -> Result<Vec<Permutation>> {
        let cycle = |pts: Vec<u32>| Permutation::from_cycles(degree, &[pts]);
        Ok(match self {
            Factor::Cyclic(n) => vec![cycle((0..*n as u32).collect())?],
            Factor::Symmetric(n) if *n >= 2 => {
                vec![cycle(vec![0, 1])?, cycle((0..*n as u32).collect())?]
            }
            Factor::Alternating(n) => (2..*n as u32)
                .map(|k| cycle(vec![0, 1, k]))
                .collect::<Result<_>>()?,
            Factor::Dihedral(n) => {
                let n = *n as u32;
                let reflection: Vec<Vec<u32>> = (1..n)
                    .map(|i| vec![i, n - i])
                    .filter(|c| c[0] < c[1])
                    .collect();
                vec![
                    cycle((0..n).collect())?,
                    Permutation::from_cycles(degree, &reflection)?,
                ]
            }
            Factor::ElementaryAbelian(p, k) => {
                let p = *p as u32;
                (0..*k)
                    .map(|i| cycle((i * p..(i + 1) * p).collect()))
                    .collect::<Result<_>>()?
            }
            Factor::Quaternion => {
                let [i, j] = quaternion_generators();
                vec![Permutation::from_images(i)?, Permutation::from_images(j)?]
            }
            Factor::Symmetric(_) | Factor::File(_) => Vec::new(),
        })
    }
}

fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Right multiplication by `i` and by `j` on Q8, with elements numbered
/// `±1, ±i, ±j, ±k` as `unit + 4 * sign`.
fn quaternion_generators() -> [Vec<u32>; 2] {
    // unit products in {1,i,j,k}: (sign, unit)
    const TABLE: [[(u32, u32); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let right_mul = |g: u32| -> Vec<u32> {
        (0..8u32)
            .map(|x| {
                let (sx, ux) = (x / 4, x % 4);
                let (s, u) = TABLE[ux as usize][g as usize];
                u + 4 * ((sx + s) % 2)
            })
            .collect()
    };
    [right_mul(1), right_mul(2)]
}

fn split_product(spec: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    if spec.starts_with("file:") {
        return vec![spec];
    }
    for (i, c) in spec.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                parts.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&spec[start..]);
    parts
}

fn parse_factor(spec: &str, factor: &str) -> Result<Factor> {
    let malformed = |reason: &str| Error::MalformedSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let factor = factor.trim();
    if let Some(path) = factor.strip_prefix("file:") {
        if path.is_empty() {
            return Err(malformed("empty file path"));
        }
        return Ok(Factor::File(path.to_string()));
    }
    match factor {
        "Q8" => return Ok(Factor::Quaternion),
        "V4" => return Ok(Factor::ElementaryAbelian(2, 2)),
        _ => {}
    }
    if let Some(args) = factor.strip_prefix("EA(").and_then(|s| s.strip_suffix(')')) {
        let (p, k) = args
            .split_once(',')
            .ok_or_else(|| malformed("expected EA(p,k)"))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| malformed("p is not an integer"))?;
        let k: u32 = k
            .trim()
            .parse()
            .map_err(|_| malformed("k is not an integer"))?;
        if !is_prime(p) {
            return Err(malformed("p must be prime"));
        }
        if k == 0 {
            return Err(malformed("k must be at least 1"));
        }
        return Ok(Factor::ElementaryAbelian(p, k));
    }
    let mut chars = factor.chars();
    let tag = chars.next().ok_or_else(|| malformed("empty factor"))?;
    let rest = chars.as_str();
    if !matches!(tag, 'C' | 'S' | 'A' | 'D') || rest.is_empty() {
        return Err(Error::UnknownSpec(spec.to_string()));
    }
    let n: usize = rest
        .parse()
        .map_err(|_| malformed("expected a positive integer parameter"))?;
    if n == 0 {
        return Err(malformed("parameter must be positive"));
    }
    Ok(match tag {
        'C' => Factor::Cyclic(n),
        'S' => Factor::Symmetric(n),
        'A' => Factor::Alternating(n),
        _ if n < 3 => return Err(malformed("dihedral D<n> needs n >= 3")),
        _ => Factor::Dihedral(n),
    })
}

/// Nominal order of a spec, or `None` when it involves a file.
pub fn nominal_order(spec: &str) -> Result<Option<u128>> {
    let mut total = Some(1u128);
    for part in split_product(spec) {
        let order = parse_factor(spec, part)?.nominal_order();
        total = match (total, order) {
            (Some(a), Some(b)) => Some(a.saturating_mul(b)),
            _ => None,
        };
    }
    Ok(total)
}

/// Resolves `spec`, refusing anything whose nominal order exceeds
/// `max_order` before enumerating it. File-based groups are bounded by the
/// same number as an element budget.
pub fn build(spec: &str, max_order: usize) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let factors: Vec<Factor> = split_product(spec)
        .into_iter()
        .map(|f| parse_factor(spec, f))
        .collect::<Result<_>>()?;
    if let Some(order) = nominal_order(spec)? {
        if order > max_order as u128 {
            return Err(Error::OrderLimit {
                spec: spec.to_string(),
                order,
                limit: max_order,
            });
        }
    }

    let mut pieces: Vec<(usize, Vec<Permutation>)> = Vec::with_capacity(factors.len());
    for factor in &factors {
        match factor {
            Factor::File(path) => {
                let text = std::fs::read_to_string(path)?;
                pieces.push(parse_generators(&text)?);
            }
            _ => {
                let degree = factor.degree().expect("non-file factors have a degree");
                pieces.push((degree, factor.generators(degree)?));
            }
        }
    }
    let degree: usize = pieces.iter().map(|(d, _)| *d).sum();
    let mut gens = Vec::new();
    let mut offset = 0u32;
    for (d, piece) in &pieces {
        for g in piece {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (x, &y) in g.images().iter().enumerate() {
                images[offset as usize + x] = y + offset;
            }
            gens.push(Permutation::from_images(images)?);
        }
        offset += *d as u32;
    }
    FiniteGroup::generate(degree.max(1), &gens, max_order).map_err(|e| match e {
        Error::ElementBudgetExceeded { .. } => Error::OrderLimit {
            spec: spec.to_string(),
            order: max_order as u128 + 1,
            limit: max_order,
        },
        other => other,
    })
}

pub fn build_spec(spec: &str, max_order: usize) -> Result<GroupSpec> {
    Ok(GroupSpec {
        name: spec.trim().to_string(),
        resolved: build(spec, max_order)?,
    })
}

/// Parses the generator file format: a `degree N` header, then one
/// permutation per non-empty line in 1-based cycle notation. Lines whose
/// first non-blank character is `#` are comments.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `degree N` header".to_string()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .and_then(|rest| rest.trim().parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| {
            Error::Parse(format!(
                "line {line_no}: expected `degree N`, found `{header}`"
            ))
        })?;
    let mut gens = Vec::new();
    for (line_no, line) in lines {
        gens.push(parse_cycles(degree, line).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("line {line_no}: {msg}")),
            other => other,
        })?);
    }
    Ok((degree, gens))
}

fn parse_cycles(degree: usize, line: &str) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = line;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in `{line}`")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{line}`")))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split_whitespace() {
            let point: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("`{tok}` is not a point")))?;
            if point == 0 || point > degree {
                return Err(Error::PointOutOfRange { point, degree });
            }
            cycle.push(point as u32 - 1);
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    if cycles.is_empty() {
        return Err(Error::Parse("empty line".to_string()));
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Canonical text: disjoint cycles sorted by least moved point, fixed points
/// omitted, `()` for the identity.
pub fn format_generators(degree: usize, gens: &[Permutation]) -> String {
    let mut s = format!("degree {degree}\n");
    for g in gens {
        let _ = writeln!(s, "{}", g.cycle_string());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nominal_orders_match() {
        for spec in VERIFICATION_SET
            .iter()
            .chain(["S5", "A5", "D5", "C2xC2", "EA(2,3)", "S3xC3", "A1", "S1"].iter())
        {
            let g = build(spec, 5000).unwrap();
            assert_eq!(
                Some(g.order() as u128),
                nominal_order(spec).unwrap(),
                "{spec}"
            );
        }
    }

    #[test]
    fn examples() {
        assert_eq!(build("C1", 10).unwrap().order(), 1);
        let v4 = build("EA(2,2)", 10).unwrap();
        assert_eq!(v4.degree(), 4);
        assert!(v4.elements().iter().all(|g| g.order() <= 2));
        let q8 = build("Q8", 10).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.elements().iter().filter(|g| g.order() == 2).count(), 1);
        assert!(!q8.is_abelian());
        let d4 = build("D4", 10).unwrap();
        assert_eq!(d4.elements().iter().filter(|g| g.order() == 2).count(), 5);
        assert_eq!(build("S3xC2", 20).unwrap().degree(), 5);
    }

    #[test]
    fn guards_and_errors() {
        assert!(matches!(
            build("S8", 5000),
            Err(Error::OrderLimit { order: 40320, .. })
        ));
        assert!(matches!(build("S40", 5000), Err(Error::OrderLimit { .. })));
        assert!(matches!(build("X3", 10), Err(Error::UnknownSpec(_))));
        assert!(matches!(
            build("EA(4,2)", 10),
            Err(Error::MalformedSpec { .. })
        ));
        assert!(matches!(
            build("Cfoo", 10),
            Err(Error::MalformedSpec { .. })
        ));
        assert!(matches!(build("D2", 10), Err(Error::MalformedSpec { .. })));
        assert!(matches!(
            build("file:/nonexistent/gens.txt", 10),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn parse_examples() {
        let (d, gens) = parse_generators("degree 3\n(1 2)\n(1 2 3)\n").unwrap();
        assert_eq!((d, gens.len()), (3, 2));
        assert_eq!(gens[1].images(), &[1, 2, 0]);
        let (d, gens) = parse_generators("# header comment\ndegree 4\n\n()\n").unwrap();
        assert_eq!(d, 4);
        assert!(gens[0].is_identity());
        assert!(matches!(
            parse_generators("degree 2\n(1 3)\n"),
            Err(Error::PointOutOfRange {
                point: 3,
                degree: 2
            })
        ));
        assert!(matches!(
            parse_generators("degree 3\n(1 2 1)\n"),
            Err(Error::RepeatedPoint(1))
        ));
        assert!(matches!(parse_generators("(1 2)\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_generators(""), Err(Error::Parse(_))));
    }

    #[test]
    fn format_examples() {
        assert_eq!(
            format_generators(4, &[Permutation::identity(4)]),
            "degree 4\n()\n"
        );
        let g = Permutation::from_images(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(format_generators(4, &[g]), "degree 4\n(1 2)(3 4)\n");
    }

    #[test]
    fn format_of_parse_canonicalizes() {
        let (d, gens) = parse_generators("degree 5\n(3 1)(5 4)\n(2 3)(1 2)\n").unwrap();
        let once = format_generators(d, &gens);
        assert_eq!(once, "degree 5\n(1 3)(4 5)\n(1 2 3)\n");
        let (d2, gens2) = parse_generators(&once).unwrap();
        assert_eq!(format_generators(d2, &gens2), once);
    }

    #[test]
    fn file_specs_build() {
        let dir =
            std::env::temp_dir().join(format!("mackey-cartan-catalog-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("s3.txt");
        std::fs::write(&path, "degree 3\n(1 2)\n(1 2 3)\n").unwrap();
        let g = build(&format!("file:{}", path.display()), 100).unwrap();
        assert_eq!(g.order(), 6);
        assert!(matches!(
            build(&format!("file:{}", path.display()), 5),
            Err(Error::OrderLimit { .. })
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
