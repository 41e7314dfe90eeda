//! Quivers, type-A orientation specs, and relation expressions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverArrow {
    /// 1-based source vertex.
    pub source: usize,
    /// 1-based target vertex.
    pub target: usize,
    pub label: String,
}

/// A finite quiver with 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<QuiverArrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<QuiverArrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver(
                "a quiver needs at least one vertex".into(),
            ));
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source == 0 || a.source > vertex_count || a.target == 0 || a.target > vertex_count
            {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} joins {}->{} outside [1, {vertex_count}]",
                    a.label, a.source, a.target
                )));
            }
            if !is_valid_label(&a.label) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow label {:?} is not a valid identifier (labels e<k> are reserved)",
                    a.label
                )));
            }
            if arrows[..i].iter().any(|b| b.label == a.label) {
                return Err(Error::InvalidQuiver(format!("duplicate label {}", a.label)));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Convenience constructor from `(source, target, label)` triples.
    pub fn from_triples(vertex_count: usize, arrows: &[(usize, usize, &str)]) -> Result<Self> {
        Quiver::new(
            vertex_count,
            arrows
                .iter()
                .map(|&(source, target, label)| QuiverArrow {
                    source,
                    target,
                    label: label.to_string(),
                })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[QuiverArrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| QuiverArrow {
                    source: a.target,
                    target: a.source,
                    label: a.label.clone(),
                })
                .collect(),
        }
    }

    /// Whether the underlying graph is the linear graph `1 - 2 - ... - n`.
    pub fn is_linear_type_a(&self) -> bool {
        let n = self.vertex_count;
        if self.arrows.len() != n - 1 {
            return false;
        }
        (1..n).all(|k| {
            self.arrows
                .iter()
                .filter(|a| (a.source.min(a.target), a.source.max(a.target)) == (k, k + 1))
                .count()
                == 1
        })
    }

    /// For a linear quiver, `true` at position `k-1` when the edge between `k`
    /// and `k+1` points rightward.
    pub fn linear_directions(&self) -> Option<Vec<bool>> {
        if !self.is_linear_type_a() {
            return None;
        }
        Some(
            (1..self.vertex_count)
                .map(|k| {
                    self.arrows
                        .iter()
                        .find(|a| (a.source.min(a.target), a.source.max(a.target)) == (k, k + 1))
                        .map(|a| a.source == k)
                        .expect("linear quiver")
                })
                .collect(),
        )
    }
}

fn is_valid_label(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_ascii_alphabetic() || first == '_') {
        return false;
    }
    if !s
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
    {
        return false;
    }
    !is_trivial_path_label(s)
}

fn is_trivial_path_label(s: &str) -> bool {
    s.len() > 1 && s.starts_with('e') && s[1..].chars().all(|c| c.is_ascii_digit())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rightward,
    Leftward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Rightward => Direction::Leftward,
            Direction::Leftward => Direction::Rightward,
        }
    }
}

/// A type-A quiver on `n` vertices described by the vertices where the
/// orientation changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverAnSpec {
    pub n: usize,
    pub change_vertices: Vec<usize>,
    pub initial_direction: Direction,
}

impl QuiverAnSpec {
    pub fn equioriented(n: usize) -> Self {
        QuiverAnSpec {
            n,
            change_vertices: Vec::new(),
            initial_direction: Direction::Rightward,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidQuiver("A_n needs n >= 1".into()));
        }
        for &k in &self.change_vertices {
            if k <= 1 || k >= self.n {
                return Err(Error::InvalidQuiver(format!(
                    "orientation change at {k} is outside 1 < k < {}",
                    self.n
                )));
            }
        }
        if self.change_vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidQuiver(
                "change vertices must be strictly increasing".into(),
            ));
        }
        Ok(())
    }

    /// Direction of the edge between `k` and `k+1` (1-based `k`).
    pub fn edge_direction(&self, k: usize) -> Direction {
        let flips = self.change_vertices.iter().filter(|&&c| c <= k).count();
        if flips % 2 == 0 {
            self.initial_direction
        } else {
            self.initial_direction.flip()
        }
    }
}

/// Linear quiver whose edge directions flip exactly at the change vertices.
/// The edge between `k` and `k+1` is labelled `a{k}`.
pub fn build_quiver_an(spec: &QuiverAnSpec) -> Result<Quiver> {
    spec.validate()?;
    let arrows = (1..spec.n)
        .map(|k| {
            let (source, target) = match spec.edge_direction(k) {
                Direction::Rightward => (k, k + 1),
                Direction::Leftward => (k + 1, k),
            };
            QuiverArrow {
                source,
                target,
                label: format!("a{k}"),
            }
        })
        .collect();
    Quiver::new(spec.n, arrows)
}

/// A path in a quiver: either a trivial path at a vertex or a nonempty
/// sequence of arrows in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 1-based source vertex.
    pub fn source(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.arrows[a[0]].source,
        }
    }

    /// 1-based target vertex.
    pub fn target(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.arrows[*a.last().expect("nonempty")].target,
        }
    }

    /// The algebra product `self * other`: traverse `other`, then `self`.
    pub fn compose_after(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if other.target(q) != self.source(q) {
            return None;
        }
        Some(match (other, self) {
            (Path::Trivial(_), p) | (p, Path::Trivial(_)) => p.clone(),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut v = a.clone();
                v.extend_from_slice(b);
                Path::Arrows(v)
            }
        })
    }

    /// Written in product notation, last arrow first: `b*a` traverses `a` then `b`.
    pub fn label(&self, q: &Quiver) -> String {
        match self {
            Path::Trivial(v) => format!("e{v}"),
            Path::Arrows(a) => a
                .iter()
                .rev()
                .map(|&i| q.arrows[i].label.as_str())
                .collect::<Vec<_>>()
                .join("*"),
        }
    }

    /// Deterministic order: by length, then by arrow labels in traversal order.
    pub fn sort_key(&self, q: &Quiver) -> (usize, Vec<String>, usize) {
        match self {
            Path::Trivial(v) => (0, Vec::new(), *v),
            Path::Arrows(a) => (
                a.len(),
                a.iter().map(|&i| q.arrows[i].label.clone()).collect(),
                0,
            ),
        }
    }
}

/// All paths of exactly the given length.
pub fn paths_of_length(q: &Quiver, len: usize) -> Vec<Path> {
    if len == 0 {
        return (1..=q.vertex_count).map(Path::Trivial).collect();
    }
    let mut current: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    for _ in 1..len {
        let mut next = Vec::new();
        for p in &current {
            let end = q.arrows[*p.last().unwrap()].target;
            for (i, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut np = p.clone();
                    np.push(i);
                    next.push(np);
                }
            }
        }
        current = next;
    }
    current.into_iter().map(Path::Arrows).collect()
}

/// A linear combination of paths with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    pub terms: Vec<(i64, Path)>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Relation {
    /// Parse expressions like `x*x`, `b*a - d*c`, `2*a*b + e1`.
    ///
    /// Factors are separated by `*` and read as algebra products, so `b*a`
    /// traverses `a` first. `e<k>` denotes the trivial path at vertex `k`.
    pub fn parse(text: &str, q: &Quiver) -> Result<Relation> {
        let bad = |msg: String| Error::InvalidPresentation(format!("relation {text:?}: {msg}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut start = 0usize;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > start {
                pieces.push((sign, &compact[start..i]));
                sign = if b == b'-' { -1 } else { 1 };
                start = i + 1;
            } else if (b == b'+' || b == b'-') && i == start {
                if b == b'-' {
                    sign = -sign;
                }
                start = i + 1;
            }
        }
        if start >= compact.len() {
            return Err(bad("dangling sign".into()));
        }
        pieces.push((sign, &compact[start..]));

        for (sign, piece) in pieces {
            let mut coeff = sign;
            let mut factors: Vec<Path> = Vec::new();
            for factor in piece.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor".into()));
                }
                if let Ok(c) = factor.parse::<i64>() {
                    coeff *= c;
                } else if is_trivial_path_label(factor) {
                    let v: usize = factor[1..].parse().map_err(|_| bad(factor.into()))?;
                    if v == 0 || v > q.vertex_count {
                        return Err(bad(format!("no vertex {v}")));
                    }
                    factors.push(Path::Trivial(v));
                } else {
                    let a = q
                        .arrow_index(factor)
                        .ok_or_else(|| bad(format!("unknown arrow {factor}")))?;
                    factors.push(Path::Arrows(vec![a]));
                }
            }
            if factors.is_empty() {
                return Err(bad(
                    "a scalar term is a multiple of the unit, which is never admissible".into(),
                ));
            }
            // Rightmost factor is traversed first.
            let mut path = factors.pop().unwrap();
            while let Some(f) = factors.pop() {
                match f.compose_after(&path, q) {
                    Some(p) => path = p,
                    None => {
                        // A non-composable product is zero in the path algebra.
                        coeff = 0;
                        break;
                    }
                }
            }
            if coeff != 0 {
                terms.push((coeff, path));
            }
        }
        Ok(Relation {
            text: text.trim().to_string(),
            terms,
        })
    }
}
