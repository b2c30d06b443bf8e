//! Determinants by eliminating one vertex at a time with Schur complements.
//!
//! With the pivot `v` moved last, `A = [[A1, b], [c, d]]` and
//!
//! 1. `A1` invertible: `det A = det(A1) (d − c A1⁻¹ b)`;
//! 2. `A1` singular, `d ≠ 0`: `det A = d det(A1 − b d⁻¹ c)`;
//! 3. `A1` singular, `d = 0`: `det A = det(A1 − bc)`.
//!
//! Case 3 uses `det(A1 − bc) = det A1 − c adj(A1) b`, so it relies on `A1`
//! being singular. Whenever the reduced digraph has a cut-vertex (or falls
//! apart), the block-based determinant takes over.
//!
//! In integer mode nothing is inverted: case 2 is done fraction-free as
//! `det(d A1 − bc) / d^{m−1}` with `m` the order of `A1`, which is also valid
//! for invertible `A1`. An invertible `A1` with `d = 0` falls back to the
//! block-based determinant.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::decompose;
use crate::digraph::{VertexId, WeightedDigraph};
use crate::engine::determinant;
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// `A1` counts as singular when `|det A1| ≤ SINGULAR_REL · (max row norm)^m`.
pub const SINGULAR_REL: f64 = 1e-9;

/// Above this order the exhaustive pivot search gives way to max degree.
pub const EXHAUSTIVE_PIVOT_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PivotRule {
    /// Exhaustive up to order 12, max degree above.
    Auto,
    Exhaustive,
    MaxDegree,
    /// Smallest vertex id; mostly useful to test order independence.
    Smallest,
    /// Largest vertex id, so `A1` is the leading principal submatrix.
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchurCase {
    A1Invertible,
    A1SingularDNonzero,
    A1SingularDZero,
}

/// How the step's value was formed from the reduced determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// `det(A1) · (d − c A1⁻¹ b)`.
    Complement,
    /// `d · det(A1 − b d⁻¹ c)`.
    DivideByD,
    /// `det(d A1 − bc) / d^{m−1}`.
    FractionFree,
    /// `det(A1 − bc)`.
    RankOne,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationStep<T> {
    pub pivot: VertexId,
    /// `b(G∖v)` for the chosen pivot.
    pub blocks_after: usize,
    pub case: SchurCase,
    pub formula: Formula,
    /// The step's value is `factor · det(reduced) / divisor`.
    pub factor: T,
    pub divisor: T,
    pub reduced: SquareMatrix<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Terminal {
    /// Order at most two, closed form.
    Direct { order: usize },
    /// Handed to the block-based determinant.
    Blocks { order: usize, cut_vertices: usize, components: usize },
    /// Integer mode with invertible `A1` and `d = 0`.
    Fallback { order: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchurTrace<T> {
    pub steps: Vec<EliminationStep<T>>,
    pub terminal: Terminal,
    pub value: T,
}

impl<T: Scalar> SchurTrace<T> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "steps": self.steps.iter().map(|s| serde_json::json!({
                "pivot": s.pivot.0,
                "blocks_after": s.blocks_after,
                "case": s.case,
                "formula": s.formula,
                "factor": s.factor.to_json(),
                "divisor": s.divisor.to_json(),
                "reduced_order": s.reduced.order(),
                "reduced": s.reduced.to_json(),
            })).collect::<Vec<_>>(),
            "terminal": self.terminal,
            "value": self.value.to_json(),
        })
    }
}

/// Ring-specific parts of the elimination.
pub trait Eliminate: Scalar {
    fn is_singular(a1: &SquareMatrix<Self>) -> bool;

    /// `d − c A1⁻¹ b`, when it can be formed in the ring.
    fn complement(a1: &SquareMatrix<Self>, b: &[Self], c: &[Self], d: &Self) -> Option<Self>;

    /// Reduced matrix, factor, divisor and formula for case 2.
    fn divide_by_d(a1: &SquareMatrix<Self>, b: &[Self], c: &[Self], d: &Self) -> (SquareMatrix<Self>, Self, Self, Formula);

    /// Whether the integer-mode shortcut applies to an invertible `A1`.
    fn prefers_fraction_free() -> bool;
}

fn to_dmatrix(a: &SquareMatrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.order(), a.order(), |i, j| *a.get(i, j))
}

impl Eliminate for Complex64 {
    fn is_singular(a1: &SquareMatrix<Self>) -> bool {
        let m = a1.order();
        let norm = a1
            .rows()
            .map(|r| r.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let det = to_dmatrix(a1).lu().determinant();
        det.norm() <= SINGULAR_REL * norm.powi(m as i32)
    }

    fn complement(a1: &SquareMatrix<Self>, b: &[Self], c: &[Self], d: &Self) -> Option<Self> {
        let x = to_dmatrix(a1).lu().solve(&nalgebra::DVector::from_column_slice(b))?;
        Some(d - c.iter().zip(x.iter()).map(|(ci, xi)| ci * xi).sum::<Complex64>())
    }

    fn divide_by_d(a1: &SquareMatrix<Self>, b: &[Self], c: &[Self], d: &Self) -> (SquareMatrix<Self>, Self, Self, Formula) {
        let reduced = SquareMatrix::from_fn(a1.order(), |i, j| a1.get(i, j) - b[i] * c[j] / d);
        (reduced, *d, Complex64::one(), Formula::DivideByD)
    }

    fn prefers_fraction_free() -> bool {
        false
    }
}

impl Eliminate for BigInt {
    fn is_singular(a1: &SquareMatrix<Self>) -> bool {
        determinant(&WeightedDigraph::from_matrix(a1)).is_zero()
    }

    fn complement(_: &SquareMatrix<Self>, _: &[Self], _: &[Self], _: &Self) -> Option<Self> {
        None
    }

    fn divide_by_d(a1: &SquareMatrix<Self>, b: &[Self], c: &[Self], d: &Self) -> (SquareMatrix<Self>, Self, Self, Formula) {
        let m = a1.order();
        let reduced = SquareMatrix::from_fn(m, |i, j| d * a1.get(i, j) - &b[i] * &c[j]);
        let divisor = Pow::pow(d, m.saturating_sub(1) as u32);
        (reduced, BigInt::one(), divisor, Formula::FractionFree)
    }

    fn prefers_fraction_free() -> bool {
        true
    }
}

/// Vertex whose deletion leaves the most blocks; ties go to the smallest id.
pub fn best_elimination_vertex<T: Scalar>(g: &WeightedDigraph<T>) -> Option<VertexId> {
    let counts = blocks_after_deletion(g);
    argmax(g.vertices(), &counts)
}

/// `b(G∖v)` for every vertex, in vertex order.
pub fn blocks_after_deletion<T: Scalar>(g: &WeightedDigraph<T>) -> Vec<usize> {
    g.vertices()
        .par_iter()
        .map(|&v| decompose(&g.without(&[v])).block_count())
        .collect()
}

fn argmax(vs: &[VertexId], score: &[usize]) -> Option<VertexId> {
    // max_by_key keeps the last maximum, so walk in reverse.
    vs.iter().zip(score).rev().max_by_key(|(_, &s)| s).map(|(&v, _)| v)
}

/// Vertex of maximum degree. Ties go to the vertex whose neighbours have the
/// smallest total degree (sparser surroundings split more easily), then to
/// the smallest id.
pub fn max_degree_vertex<T: Scalar>(g: &WeightedDigraph<T>) -> Option<VertexId> {
    let adj = g.undirected_adjacency();
    (0..g.order())
        .min_by_key(|&i| {
            let around: usize = adj[i].iter().map(|&j| adj[j].len()).sum();
            (std::cmp::Reverse(adj[i].len()), around, i)
        })
        .map(|i| g.vertices()[i])
}

pub fn choose_pivot<T: Scalar>(g: &WeightedDigraph<T>, rule: PivotRule) -> Option<VertexId> {
    match rule {
        PivotRule::Auto if g.order() <= EXHAUSTIVE_PIVOT_LIMIT => best_elimination_vertex(g),
        PivotRule::Auto | PivotRule::MaxDegree => max_degree_vertex(g),
        PivotRule::Exhaustive => best_elimination_vertex(g),
        PivotRule::Smallest => g.vertices().first().copied(),
        PivotRule::Last => g.vertices().last().copied(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeuristicReport {
    pub degree_vertex: VertexId,
    pub degree_blocks: usize,
    pub best_vertex: VertexId,
    pub best_blocks: usize,
    /// The max-degree vertex reaches the maximum block count.
    pub agree: bool,
}

/// Compare the max-degree pick with the exhaustive argmax of `b(G∖v)`.
pub fn degree_heuristic_report<T: Scalar>(g: &WeightedDigraph<T>) -> Option<HeuristicReport> {
    let counts = blocks_after_deletion(g);
    let best_vertex = argmax(g.vertices(), &counts)?;
    let degree_vertex = max_degree_vertex(g)?;
    let best_blocks = counts[g.position(best_vertex)];
    let degree_blocks = counts[g.position(degree_vertex)];
    Some(HeuristicReport {
        degree_vertex,
        degree_blocks,
        best_vertex,
        best_blocks,
        agree: degree_blocks == best_blocks,
    })
}

pub fn det_schur<T: Eliminate>(g: &WeightedDigraph<T>, rule: PivotRule) -> T {
    schur_trace(g, rule).value
}

pub fn schur_trace<T: Eliminate>(g: &WeightedDigraph<T>, rule: PivotRule) -> SchurTrace<T> {
    let mut steps = Vec::new();
    let (value, terminal) = eliminate(g.clone(), rule, &mut steps);
    SchurTrace { steps, terminal, value }
}

fn direct<T: Scalar>(a: &SquareMatrix<T>) -> T {
    match a.order() {
        0 => T::one(),
        1 => a.get(0, 0).clone(),
        _ => a.get(0, 0).clone() * a.get(1, 1).clone() - a.get(0, 1).clone() * a.get(1, 0).clone(),
    }
}

/// Digraph of `a` on the given (sorted) vertex ids.
fn relabeled<T: Scalar>(ids: &[VertexId], a: &SquareMatrix<T>) -> WeightedDigraph<T> {
    let edges = (0..a.order())
        .flat_map(|i| (0..a.order()).map(move |j| (i, j)))
        .map(|(i, j)| ((ids[i], ids[j]), a.get(i, j).clone()));
    WeightedDigraph::new(ids.iter().copied(), edges).expect("ids are distinct")
}

fn eliminate<T: Eliminate>(g: WeightedDigraph<T>, rule: PivotRule, steps: &mut Vec<EliminationStep<T>>) -> (T, Terminal) {
    let n = g.order();
    if n <= 2 {
        return (direct(&g.to_matrix()), Terminal::Direct { order: n });
    }
    let d = decompose(&g);
    let components = g.component_sets().len();
    if !d.cut_vertices.is_empty() || components > 1 {
        let terminal = Terminal::Blocks {
            order: n,
            cut_vertices: d.cut_vertices.len(),
            components,
        };
        return (determinant(&g), terminal);
    }

    let v = choose_pivot(&g, rule).expect("nonempty");
    let a = g.to_matrix();
    let p = g.position(v);
    let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let ids: Vec<VertexId> = rest.iter().map(|&i| g.vertices()[i]).collect();
    let a1 = a.submatrix(&rest, &rest);
    let b: Vec<T> = rest.iter().map(|&i| a.get(i, p).clone()).collect();
    let c: Vec<T> = rest.iter().map(|&j| a.get(p, j).clone()).collect();
    let dv = a.get(p, p).clone();
    let blocks_after = decompose(&g.without(&[v])).block_count();

    let singular = T::is_singular(&a1);
    let case = match (singular, dv.is_zero()) {
        (false, _) => SchurCase::A1Invertible,
        (true, false) => SchurCase::A1SingularDNonzero,
        (true, true) => SchurCase::A1SingularDZero,
    };

    let (reduced, factor, divisor, formula) = match case {
        SchurCase::A1Invertible if T::prefers_fraction_free() && !dv.is_zero() => T::divide_by_d(&a1, &b, &c, &dv),
        SchurCase::A1Invertible => match T::complement(&a1, &b, &c, &dv) {
            Some(s) => (a1, s, T::one(), Formula::Complement),
            None => return (determinant(&g), Terminal::Fallback { order: n }),
        },
        SchurCase::A1SingularDNonzero => T::divide_by_d(&a1, &b, &c, &dv),
        SchurCase::A1SingularDZero => {
            let m = SquareMatrix::from_fn(a1.order(), |i, j| a1.get(i, j).clone() - b[i].clone() * c[j].clone());
            (m, T::one(), T::one(), Formula::RankOne)
        }
    };

    let next = relabeled(&ids, &reduced);
    steps.push(EliminationStep {
        pivot: v,
        blocks_after,
        case,
        formula,
        factor: factor.clone(),
        divisor: divisor.clone(),
        reduced,
    });
    let (inner, terminal) = eliminate(next, rule, steps);
    let value = factor * inner;
    let value = if divisor.is_one() {
        value
    } else {
        value.checked_div(&divisor).expect("fraction-free division is exact")
    };
    (value, terminal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vids;
    use crate::fixtures;
    use crate::oracle::leibniz_det;

    fn cplx(rows: &[&[f64]]) -> WeightedDigraph<Complex64> {
        WeightedDigraph::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn int(rows: &[&[i64]]) -> WeightedDigraph<BigInt> {
        WeightedDigraph::from_matrix(&SquareMatrix::from_i64_rows(rows).unwrap())
    }

    #[test]
    fn two_by_two_closed_form() {
        let g = cplx(&[&[2.0, 3.0], &[5.0, 7.0]]);
        assert!((det_schur(&g, PivotRule::Auto) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn case_two_on_order_two() {
        // A1 = [0] singular, d = 5: 5·(0 − b c / 5) = −bc.
        let a1 = SquareMatrix::from_fn(1, |_, _| Complex64::zero());
        let b = [Complex64::new(3.0, 0.0)];
        let c = [Complex64::new(4.0, 0.0)];
        let (r, f, _, _) = Complex64::divide_by_d(&a1, &b, &c, &Complex64::new(5.0, 0.0));
        assert!((f * direct(&r) - Complex64::new(-12.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn wheel_needs_elimination() {
        // Hub v1 joined to the 4-cycle v2..v5: no cut-vertex anywhere.
        let mut e = fixtures::cycle_edges(2, 4);
        e.extend((2..=5).map(|i| (VertexId(1), VertexId(i))));
        let g = WeightedDigraph::<BigInt>::simple(vids(&[1, 2, 3, 4, 5]), e).unwrap();
        assert!(decompose(&g).cut_vertices.is_empty());
        let expected = leibniz_det(&g.to_matrix()).unwrap();
        for rule in [PivotRule::Auto, PivotRule::MaxDegree, PivotRule::Smallest, PivotRule::Last] {
            let t = schur_trace(&g, rule);
            assert_eq!(t.value, expected, "{rule:?}");
        }
        let gc = g.map_weights(Scalar::to_complex);
        let got = det_schur(&gc, PivotRule::Auto);
        assert!((got - expected.to_complex()).norm() < 1e-9);
    }

    #[test]
    fn singular_leading_block_uses_case_three() {
        // Pivot v1: A1 = [[1,1],[1,1]] is singular and d = 0.
        let g = int(&[&[0, 1, 2], &[3, 1, 1], &[1, 1, 1]]);
        let t = schur_trace(&g, PivotRule::Smallest);
        assert_eq!(t.steps[0].case, SchurCase::A1SingularDZero);
        assert_eq!(t.value, BigInt::from(2));
        assert_eq!(t.value, leibniz_det(&g.to_matrix()).unwrap());
        let gc = g.map_weights(Scalar::to_complex);
        let tc = schur_trace(&gc, PivotRule::Smallest);
        assert_eq!(tc.steps[0].pivot, VertexId(1));
        assert!((tc.value - t.value.to_complex()).norm() < 1e-9);
    }

    #[test]
    fn pivot_selection() {
        let k4 = fixtures::complete_graph(4);
        assert_eq!(best_elimination_vertex(&k4), Some(VertexId(1)));
        let p4 = WeightedDigraph::<BigInt>::simple(vids(&[1, 2, 3, 4]), fixtures::path_edges(1, 4)).unwrap();
        assert_eq!(blocks_after_deletion(&p4), vec![2, 2, 2, 2]);
        assert_eq!(best_elimination_vertex(&p4), Some(VertexId(1)));
        let r = degree_heuristic_report(&k4).unwrap();
        assert!(r.agree);
    }
}
