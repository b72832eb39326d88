//! Generators for the example algebras: abelian, Heisenberg, free
//! nilpotent of class at most 3 on a Hall basis, algebras attached to
//! graphs, and the fixed six-dimensional example with its two
//! distinguished symplectic forms.

use crate::exactlin::Rational;
use crate::exterior::KForm;
use crate::liealg::LieAlgebra;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Simple undirected graph: no loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are 0-based vertex pairs in either order.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidParameter(format!("loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a},{b}) out of range for {vertex_count} vertices"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidParameter(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Graph {
            vertex_count,
            edges: set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn e_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// The abelian Lie algebra of dimension n.
pub fn abelian(n: usize) -> Result<LieAlgebra> {
    LieAlgebra::new(n, e_labels(n), Vec::new())
}

/// Heisenberg algebra of odd dimension `n = 2t+1`:
/// `[e_{2i-1}, e_{2i}] = e_n`.
pub fn heisenberg(n: usize) -> Result<LieAlgebra> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "Heisenberg dimension must be odd and >= 3, got {n}"
        )));
    }
    let t = (n - 1) / 2;
    let brackets = (0..t)
        .map(|i| ((2 * i, 2 * i + 1), vec![(n - 1, Rational::one())]))
        .collect::<Vec<_>>();
    LieAlgebra::new(n, e_labels(n), brackets)
}

fn hall_label(indices: &[usize]) -> String {
    if indices.iter().all(|&i| i <= 9) {
        format!(
            "x{}",
            indices.iter().map(|i| i.to_string()).collect::<String>()
        )
    } else {
        format!(
            "x{}",
            indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("_")
        )
    }
}

/// Free nilpotent Lie algebra on `m >= 2` generators of class `c <= 3`,
/// on the Hall basis: generators `x_i`; weight two `[x_j, x_k]` for
/// `k < j`; weight three `[[x_r, x_s], x_t]` for `s < r`, `t >= s`.
/// Brackets `[[x_r,x_s],x_t]` with `t < s` are rewritten through Jacobi.
pub fn free_nilpotent(m: usize, class: usize) -> Result<LieAlgebra> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "free nilpotent algebra needs at least 2 generators, got {m}"
        )));
    }
    if class == 0 || class > 3 {
        return Err(Error::UnsupportedClass(class));
    }
    if class == 1 {
        return abelian(m);
    }

    // Basis layout: generators, then (j,k) pairs with k < j in lex order,
    // then (r,s,t) triples with s < r, t >= s in lex order. All 1-based
    // in labels, 0-based in indices.
    let mut labels: Vec<String> = (1..=m).map(|i| hall_label(&[i])).collect();
    let mut pair_index = std::collections::BTreeMap::new();
    for j in 1..=m {
        for k in 1..j {
            pair_index.insert((j, k), labels.len());
            labels.push(hall_label(&[j, k]));
        }
    }
    let mut triple_index = std::collections::BTreeMap::new();
    if class == 3 {
        for r in 1..=m {
            for s in 1..r {
                for t in s..=m {
                    triple_index.insert((r, s, t), labels.len());
                    labels.push(hall_label(&[r, s, t]));
                }
            }
        }
    }

    let dim = labels.len();
    let mut brackets: Vec<((usize, usize), Vec<(usize, Rational)>)> = Vec::new();

    // [x_i, x_j] = -[x_j, x_i] = -H_{ji} for i < j (1-based).
    for j in 1..=m {
        for i in 1..j {
            brackets.push((
                (i - 1, j - 1),
                vec![(pair_index[&(j, i)], -&Rational::one())],
            ));
        }
    }

    if class == 3 {
        // [x_t, H_{rs}]: stored with the generator first since generators
        // precede pairs in the basis order.
        for (&(r, s), &h_idx) in &pair_index {
            for t in 1..=m {
                let mut terms: Vec<(usize, Rational)> = Vec::new();
                if t >= s {
                    // [H_{rs}, x_t] = H_{rst}; stored bracket is the negative.
                    terms.push((triple_index[&(r, s, t)], -&Rational::one()));
                } else {
                    // Jacobi rewrite: [[x_r,x_s],x_t] = [[x_r,x_t],x_s] - [[x_s,x_t],x_r].
                    terms.push((triple_index[&(r, t, s)], -&Rational::one()));
                    terms.push((triple_index[&(s, t, r)], Rational::one()));
                }
                brackets.push(((t - 1, h_idx), terms));
            }
        }
    }

    LieAlgebra::new(dim, labels, brackets)
}

/// Two-step algebra of a graph: vertices and edges as basis,
/// `[v_i, v_j] = e_{ij}` along edges, edges central. An edgeless graph
/// degenerates to an abelian algebra and is rejected.
pub fn graph_algebra(g: &Graph) -> Result<LieAlgebra> {
    if g.edge_count() == 0 {
        return Err(Error::InvalidParameter(
            "graph algebra requires at least one edge".into(),
        ));
    }
    let n = g.vertex_count();
    let mut labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut brackets = Vec::new();
    for (idx, (a, b)) in g.edges().enumerate() {
        labels.push(format!("e{}{}", a + 1, b + 1));
        brackets.push(((a, b), vec![(n + idx, Rational::one())]));
    }
    LieAlgebra::new(n + g.edge_count(), labels, brackets)
}

/// The six-dimensional example `[e1,e2]=e4, [e1,e3]=e5, [e1,e4]=e6`
/// together with its two distinguished symplectic forms
/// `w1 = e1^e6 - e2^e4 + e3^e5` and `w2 = e1^e6 + e2^e5 + e3^e4`.
pub fn example_six_dim() -> (LieAlgebra, KForm, KForm) {
    let one = Rational::one();
    let algebra = LieAlgebra::new(
        6,
        e_labels(6),
        vec![
            ((0, 1), vec![(3, one.clone())]),
            ((0, 2), vec![(4, one.clone())]),
            ((0, 3), vec![(5, one.clone())]),
        ],
    )
    .expect("fixed example is well-formed");
    let w1 = KForm::from_terms(
        6,
        2,
        vec![
            (vec![0, 5], Rational::one()),
            (vec![1, 3], Rational::from_int(-1)),
            (vec![2, 4], Rational::one()),
        ],
    );
    let w2 = KForm::from_terms(
        6,
        2,
        vec![
            (vec![0, 5], Rational::one()),
            (vec![1, 4], Rational::one()),
            (vec![2, 3], Rational::one()),
        ],
    );
    (algebra, w1, w2)
}
