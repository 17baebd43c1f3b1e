//! Assembly of the three-point semidefinite program.
//!
//! The program minimizes `1 + sum a_k + b_11 + <J, F_0>` over PSD blocks
//! subject to two polynomial identities obtained from the sum-of-squares
//! relaxations of the constraints on the domains of admissible pair and
//! triple inner products. Coefficient matching is done over exact rationals,
//! with `cos(theta)` carried symbolically as a degree-one affine part, and a
//! single rounding to `f64` when the constraint rows are emitted.

use crate::numerics::Rational;
use crate::orthopoly::{jacobi_p, rational_to_f64, s_matrix, TriPoly, UniPoly};
use nalgebra::DMatrix;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SdpError {
    #[error("degree {d} is too small: the multipliers need d >= 2")]
    DegreeTooSmall { d: u32 },
    #[error("dimension {n} is too small: the kernel expansion needs n >= 3")]
    DimensionTooSmall { n: u32 },
    #[error("no bound available: solver status {status:?}")]
    NoBound { status: SolverStatus },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverStatus {
    Optimal,
    MaxIterations,
    NumericalBreakdown,
    Infeasible,
}

/// Ordering of the trivariate monomial basis used for the `V^d` vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GradedLex,
    GradedRevLex,
}

/// Monomials of total degree <= d in (u, v, t), sorted by total degree and
/// then by the requested tie-break.
pub fn monomial_basis(d: u32, order: MonomialOrder) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for e0 in 0..=d {
        for e1 in 0..=(d - e0) {
            for e2 in 0..=(d - e0 - e1) {
                out.push([e0, e1, e2]);
            }
        }
    }
    out.sort_by(|a, b| compare_monomials(a, b, order));
    out
}

fn compare_monomials(a: &[u32; 3], b: &[u32; 3], order: MonomialOrder) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    match order {
        MonomialOrder::GradedLex => b.cmp(a), // higher u-power first
        MonomialOrder::GradedRevLex => {
            // Smaller power in the *last* variable ranks higher.
            for i in (0..3).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpec {
    pub name: String,
    pub size: usize,
}

/// A single nonzero of a symmetric constraint/objective matrix; only the
/// upper triangle (row <= col) is stored, the mirror entry is implied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintRow {
    pub entries: Vec<Entry>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpProblem {
    pub n: u32,
    pub d: u32,
    pub cos_theta: f64,
    pub blocks: Vec<BlockSpec>,
    pub constraints: Vec<ConstraintRow>,
    pub objective: Vec<Entry>,
    pub objective_offset: f64,
    /// Number of constraint rows produced by identity (i); they come first.
    pub univariate_rows: usize,
    /// Monomial matched by each identity-(ii) row, in row order.
    pub trivariate_monomials: Vec<[u32; 3]>,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub blocks: Vec<DMatrix<f64>>,
    pub y: Vec<f64>,
    pub objective: f64,
    pub status: SolverStatus,
    pub primal_infeasibility: f64,
    pub dual_infeasibility: f64,
    pub duality_gap: f64,
    pub min_eigenvalues: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub max_equality_residual: f64,
    pub min_eigenvalue: f64,
    pub min_eigenvalues: Vec<f64>,
    pub eps_eq: f64,
    pub eps_psd: f64,
    pub passes: bool,
}

/// Affine coefficient `c0 + c1 * cos(theta)` over exact rationals.
#[derive(Debug, Clone, PartialEq)]
struct LinCoeff {
    c0: Rational,
    c1: Rational,
}

impl LinCoeff {
    fn zero() -> Self {
        LinCoeff {
            c0: Rational::zero(),
            c1: Rational::zero(),
        }
    }

    fn emit(&self, cos_theta: f64) -> f64 {
        rational_to_f64(&self.c0) + rational_to_f64(&self.c1) * cos_theta
    }
}

type Key = (usize, usize, usize);
type RowAcc = BTreeMap<Key, LinCoeff>;

fn acc(row: &mut RowAcc, key: Key, c0: Option<&Rational>, c1: Option<&Rational>) {
    let slot = row.entry(key).or_insert_with(LinCoeff::zero);
    if let Some(c) = c0 {
        slot.c0 += c;
    }
    if let Some(c) = c1 {
        slot.c1 += c;
    }
}

/// Block layout: b, F_0..F_d, Q0, Q1, R, R0..R3, then the a_k scalars as
/// 1x1 blocks.
struct Layout {
    d: usize,
}

impl Layout {
    fn b(&self) -> usize {
        0
    }
    fn f(&self, k: usize) -> usize {
        1 + k
    }
    fn q0(&self) -> usize {
        self.d + 2
    }
    fn q1(&self) -> usize {
        self.d + 3
    }
    fn r(&self) -> usize {
        self.d + 4
    }
    fn r_mult(&self, q: usize) -> usize {
        self.d + 5 + q
    }
    fn a(&self, k: usize) -> usize {
        self.d + 9 + (k - 1)
    }

    fn blocks(&self, n_basis_d: usize, n_basis_d1: usize) -> Vec<BlockSpec> {
        let d = self.d;
        let mut out = vec![BlockSpec {
            name: "b".into(),
            size: 2,
        }];
        for k in 0..=d {
            out.push(BlockSpec {
                name: format!("F{k}"),
                size: d - k + 1,
            });
        }
        out.push(BlockSpec {
            name: "Q0".into(),
            size: d + 1,
        });
        out.push(BlockSpec {
            name: "Q1".into(),
            size: d,
        });
        out.push(BlockSpec {
            name: "R".into(),
            size: n_basis_d,
        });
        for q in 0..4 {
            out.push(BlockSpec {
                name: format!("R{q}"),
                size: n_basis_d1,
            });
        }
        for k in 1..=d {
            out.push(BlockSpec {
                name: format!("a{k}"),
                size: 1,
            });
        }
        out
    }
}

pub fn build_sdp(n: u32, cos_theta: f64, d: u32) -> Result<SdpProblem, SdpError> {
    build_sdp_ordered(n, cos_theta, d, MonomialOrder::GradedLex)
}

pub fn build_sdp_ordered(
    n: u32,
    cos_theta: f64,
    d: u32,
    order: MonomialOrder,
) -> Result<SdpProblem, SdpError> {
    if n < 3 {
        return Err(SdpError::DimensionTooSmall { n });
    }
    if d < 2 {
        return Err(SdpError::DegreeTooSmall { d });
    }
    let du = d as usize;
    let lay = Layout { d: du };
    let one = Rational::one();
    let minus_one = -Rational::one();
    let two = Rational::from_integer(2.into());

    let s_mats: Vec<_> = (0..=d).map(|k| s_matrix(n, k, d)).collect();

    // ---- identity (i): polynomial identity in u, degree <= 2d ----
    let mut acc1: Vec<RowAcc> = vec![RowAcc::new(); 2 * du + 1];
    for k in 1..=du {
        let p = jacobi_p(n, k as u32);
        for (m, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc(&mut acc1[m], (lay.a(k), 0, 0), Some(c), None);
            }
        }
    }
    // 2 b_12 + b_22: the off-diagonal entry doubles in the trace pairing.
    acc(&mut acc1[0], (lay.b(), 0, 1), Some(&one), None);
    acc(&mut acc1[0], (lay.b(), 1, 1), Some(&one), None);
    let three = Rational::from_integer(3.into());
    for (k, sm) in s_mats.iter().enumerate() {
        for i in 0..sm.size {
            for j in i..sm.size {
                let diag: UniPoly = sm.entry(i, j).restrict_diagonal();
                for (m, c) in diag.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc(&mut acc1[m], (lay.f(k), i, j), Some(&(c * &three)), None);
                    }
                }
            }
        }
    }
    // <Q0, V^d(u)>: entry (i, j) of V^d is u^(i+j).
    for i in 0..=du {
        for j in i..=du {
            acc(&mut acc1[i + j], (lay.q0(), i, j), Some(&one), None);
        }
    }
    // (u+1)(cos theta - u) <Q1, V^{d-1}(u)>:
    // u^(i+j) * [cos theta * (u + 1) - u^2 - u].
    for i in 0..du {
        for j in i..du {
            let base = i + j;
            let key = (lay.q1(), i, j);
            acc(&mut acc1[base], key, None, Some(&one));
            acc(&mut acc1[base + 1], key, Some(&minus_one), Some(&one));
            acc(&mut acc1[base + 2], key, Some(&minus_one), None);
        }
    }

    // ---- identity (ii): polynomial identity in (u, v, t) ----
    let basis_d = monomial_basis(d, order);
    let basis_d1 = monomial_basis(d - 1, order);
    let mut acc2: BTreeMap<[u32; 3], RowAcc> = BTreeMap::new();
    let mut acc2_at = |mono: [u32; 3], key: Key, c0: Option<&Rational>, c1: Option<&Rational>| {
        acc(acc2.entry(mono).or_default(), key, c0, c1);
    };
    acc2_at([0, 0, 0], (lay.b(), 1, 1), Some(&one), None);
    for (k, sm) in s_mats.iter().enumerate() {
        for i in 0..sm.size {
            for j in i..sm.size {
                for (mono, c) in sm.entry(i, j).terms() {
                    acc2_at(*mono, (lay.f(k), i, j), Some(c), None);
                }
            }
        }
    }
    for i in 0..basis_d.len() {
        for j in i..basis_d.len() {
            let mono = [
                basis_d[i][0] + basis_d[j][0],
                basis_d[i][1] + basis_d[j][1],
                basis_d[i][2] + basis_d[j][2],
            ];
            acc2_at(mono, (lay.r(), i, j), Some(&one), None);
        }
    }
    // Domain multipliers as (constant part, cos-theta part) pairs.
    let mut multipliers: Vec<(TriPoly, TriPoly)> = Vec::new();
    for var in 0..3usize {
        // (x + 1)(cos theta - x) = cos theta * (x + 1) - x^2 - x
        let x = TriPoly::var(var);
        let mut c1 = x.clone();
        c1.add_term([0, 0, 0], one.clone());
        let c0 = x.mul(&x).add(&x).scale(&minus_one);
        multipliers.push((c0, c1));
    }
    {
        // 1 + 2uvt - u^2 - v^2 - t^2
        let mut c0 = TriPoly::zero();
        c0.add_term([0, 0, 0], one.clone());
        c0.add_term([1, 1, 1], two.clone());
        c0.add_term([2, 0, 0], minus_one.clone());
        c0.add_term([0, 2, 0], minus_one.clone());
        c0.add_term([0, 0, 2], minus_one.clone());
        multipliers.push((c0, TriPoly::zero()));
    }
    for (q, (c0, c1)) in multipliers.iter().enumerate() {
        let block = lay.r_mult(q);
        for i in 0..basis_d1.len() {
            for j in i..basis_d1.len() {
                let base = [
                    basis_d1[i][0] + basis_d1[j][0],
                    basis_d1[i][1] + basis_d1[j][1],
                    basis_d1[i][2] + basis_d1[j][2],
                ];
                for (mono, c) in c0.terms() {
                    let m = [base[0] + mono[0], base[1] + mono[1], base[2] + mono[2]];
                    acc2_at(m, (block, i, j), Some(c), None);
                }
                for (mono, c) in c1.terms() {
                    let m = [base[0] + mono[0], base[1] + mono[1], base[2] + mono[2]];
                    acc2_at(m, (block, i, j), None, Some(c));
                }
            }
        }
    }

    // ---- emission ----
    let mut constraints = Vec::with_capacity(acc1.len() + acc2.len());
    for (m, row) in acc1.iter().enumerate() {
        let entries: Vec<Entry> = row
            .iter()
            .filter_map(|(&(block, r, c), lc)| {
                let value = lc.emit(cos_theta);
                (value != 0.0).then_some(Entry {
                    block,
                    row: r,
                    col: c,
                    value,
                })
            })
            .collect();
        // The free +1 in identity (i) lands on the right-hand side.
        let rhs = if m == 0 { -1.0 } else { 0.0 };
        constraints.push(ConstraintRow { entries, rhs });
    }
    let univariate_rows = constraints.len();
    let mut monos: Vec<[u32; 3]> = acc2.keys().cloned().collect();
    monos.sort_by(|a, b| compare_monomials(a, b, order));
    for mono in &monos {
        let row = &acc2[mono];
        let entries: Vec<Entry> = row
            .iter()
            .filter_map(|(&(block, r, c), lc)| {
                let value = lc.emit(cos_theta);
                (value != 0.0).then_some(Entry {
                    block,
                    row: r,
                    col: c,
                    value,
                })
            })
            .collect();
        constraints.push(ConstraintRow { entries, rhs: 0.0 });
    }

    let mut objective = vec![Entry {
        block: lay.b(),
        row: 0,
        col: 0,
        value: 1.0,
    }];
    let f0_size = du + 1;
    for i in 0..f0_size {
        for j in i..f0_size {
            objective.push(Entry {
                block: lay.f(0),
                row: i,
                col: j,
                value: 1.0,
            });
        }
    }
    for k in 1..=du {
        objective.push(Entry {
            block: lay.a(k),
            row: 0,
            col: 0,
            value: 1.0,
        });
    }

    Ok(SdpProblem {
        n,
        d,
        cos_theta,
        blocks: lay.blocks(basis_d.len(), basis_d1.len()),
        constraints,
        objective,
        objective_offset: 1.0,
        univariate_rows,
        trivariate_monomials: monos,
    })
}

/// Trace pairing of a sparse upper-triangle entry list with a dense
/// symmetric matrix.
pub fn pair_entries(entries: &[Entry], blocks: &[DMatrix<f64>]) -> f64 {
    let mut sum = 0.0;
    for e in entries {
        let x = blocks[e.block][(e.row, e.col)];
        sum += if e.row == e.col {
            e.value * x
        } else {
            2.0 * e.value * x
        };
    }
    sum
}

impl SdpProblem {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn constraint_value(&self, i: usize, blocks: &[DMatrix<f64>]) -> f64 {
        pair_entries(&self.constraints[i].entries, blocks)
    }

    pub fn objective_value(&self, blocks: &[DMatrix<f64>]) -> f64 {
        self.objective_offset + pair_entries(&self.objective, blocks)
    }
}

pub fn bound_from_solution(p: &SdpProblem, s: &SdpSolution) -> Result<f64, SdpError> {
    match s.status {
        SolverStatus::Optimal | SolverStatus::MaxIterations => Ok(p.objective_value(&s.blocks)),
        status => Err(SdpError::NoBound { status }),
    }
}

/// Smallest eigenvalue, falling back to Cholesky bisection when the
/// iterative eigensolver fails to converge.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 1 {
        return m[(0, 0)];
    }
    if let Some(eig) = m.clone().try_symmetric_eigen(1e-13, 200) {
        return eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    }
    // QR iteration failed to converge; fall back to bisection on the shifted
    // Cholesky factorization, bracketed by the Gershgorin bounds.
    let n = m.nrows();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
        lo = lo.min(m[(i, i)] - off);
        hi = hi.max(m[(i, i)] + off);
    }
    let scale = lo.abs().max(hi.abs()).max(1.0);
    while hi - lo > 1e-14 * scale {
        let mid = 0.5 * (lo + hi);
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] -= mid;
        }
        if nalgebra::Cholesky::new(shifted).is_some() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn verify_solution(
    p: &SdpProblem,
    s: &SdpSolution,
    eps_eq: f64,
    eps_psd: f64,
) -> VerificationReport {
    let max_equality_residual = (0..p.constraints.len())
        .map(|i| (p.constraint_value(i, &s.blocks) - p.constraints[i].rhs).abs())
        .fold(0.0, f64::max);
    let min_eigenvalues: Vec<f64> = s.blocks.iter().map(min_eigenvalue).collect();
    let min_eigenvalue = min_eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    VerificationReport {
        max_equality_residual,
        min_eigenvalue,
        min_eigenvalues,
        eps_eq,
        eps_psd,
        passes: max_equality_residual <= eps_eq && min_eigenvalue >= -eps_psd,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(2, MonomialOrder::GradedLex).len(), 10);
        assert_eq!(monomial_basis(8, MonomialOrder::GradedLex).len(), 165);
        assert_eq!(monomial_basis(7, MonomialOrder::GradedRevLex).len(), 120);
    }

    #[test]
    fn orderings_agree_as_sets() {
        let mut a = monomial_basis(4, MonomialOrder::GradedLex);
        let mut b = monomial_basis(4, MonomialOrder::GradedRevLex);
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn r_block_size_example() {
        // (4, -1, 2): V^d basis has C(5,3) = 10 monomials, so R is 10x10.
        let p = build_sdp(4, -1.0, 2).unwrap();
        let r = p.blocks.iter().find(|b| b.name == "R").unwrap();
        assert_eq!(r.size, 10);
    }

    #[test]
    fn full_problem_dimensions() {
        let p = build_sdp(4, 0.5, 8).unwrap();
        let r = p.blocks.iter().find(|b| b.name == "R").unwrap();
        assert_eq!(r.size, 165);
        // Identity (ii) rows: one per distinct trivariate monomial. Every
        // monomial of degree <= 2d appears (the R pairing alone produces
        // them all); degree 2d+1 only arises from the 2uvt multiplier term.
        let distinct = p.constraints.len() - p.univariate_rows;
        assert_eq!(distinct, p.trivariate_monomials.len());
        let full_2d = monomial_basis(16, MonomialOrder::GradedLex).len();
        assert!(distinct >= full_2d, "{distinct} < {full_2d}");
        assert!(p
            .trivariate_monomials
            .iter()
            .all(|m| m.iter().sum::<u32>() <= 17));
    }

    #[test]
    fn univariate_row_count_matches_identity_degree() {
        // The identity in u has degree 2d, so coefficient matching yields
        // 2d + 1 rows; checked against an independent enumeration below.
        let d = 2;
        let p = build_sdp(3, 0.5, d).unwrap();
        assert_eq!(p.univariate_rows, (2 * d + 1) as usize);
        let q = build_sdp_ordered(3, 0.5, d, MonomialOrder::GradedRevLex).unwrap();
        assert_eq!(p.univariate_rows, q.univariate_rows);
        assert_eq!(p.constraints.len(), q.constraints.len());
    }

    #[test]
    fn degree_too_small_rejected() {
        assert!(matches!(
            build_sdp(3, 0.5, 1),
            Err(SdpError::DegreeTooSmall { d: 1 })
        ));
        assert!(matches!(
            build_sdp(2, 0.5, 4),
            Err(SdpError::DimensionTooSmall { n: 2 })
        ));
    }

    #[test]
    fn objective_at_origin_is_offset() {
        let p = build_sdp(4, -1.0, 2).unwrap();
        let blocks: Vec<DMatrix<f64>> = p
            .block_sizes()
            .iter()
            .map(|&s| DMatrix::zeros(s, s))
            .collect();
        assert_eq!(p.objective_value(&blocks), 1.0);
    }

    #[test]
    fn zero_solution_fails_verification_with_rhs_residual() {
        let p = build_sdp(3, 0.5, 2).unwrap();
        let blocks: Vec<DMatrix<f64>> = p
            .block_sizes()
            .iter()
            .map(|&s| DMatrix::zeros(s, s))
            .collect();
        let s = SdpSolution {
            blocks,
            y: vec![0.0; p.constraints.len()],
            objective: 1.0,
            status: SolverStatus::Optimal,
            primal_infeasibility: 0.0,
            dual_infeasibility: 0.0,
            duality_gap: 0.0,
            min_eigenvalues: vec![],
            iterations: 0,
        };
        let report = verify_solution(&p, &s, 1e-7, 1e-7);
        assert!(!report.passes);
        assert!((report.max_equality_residual - 1.0).abs() < 1e-15); // |rhs| of the m=0 row
    }

    /// Substituting random points and random PSD blocks into the symbolic
    /// identities must reproduce the value predicted by the constraint rows.
    #[test]
    fn identity_sampling_check() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 4u32;
        let d = 3u32;
        let cos_theta = -0.3;
        let p = build_sdp(n, cos_theta, d).unwrap();
        let sizes = p.block_sizes();
        let blocks: Vec<DMatrix<f64>> = sizes
            .iter()
            .map(|&s| {
                let g = DMatrix::from_fn(s, s, |_, _| rng.gen_range(-1.0..1.0));
                &g * g.transpose()
            })
            .collect();
        // Row values (constraint activations) with constants folded back in.
        let row_vals: Vec<f64> = (0..p.constraints.len())
            .map(|i| p.constraint_value(i, &blocks) - p.constraints[i].rhs)
            .collect();

        let lay = Layout { d: d as usize };
        let s_mats: Vec<_> = (0..=d).map(|k| s_matrix(n, k, d)).collect();
        let basis_d = monomial_basis(d, MonomialOrder::GradedLex);
        let basis_d1 = monomial_basis(d - 1, MonomialOrder::GradedLex);
        let mono_eval =
            |m: &[u32; 3], u: f64, v: f64, t: f64| u.powi(m[0] as i32) * v.powi(m[1] as i32) * t.powi(m[2] as i32);

        for _ in 0..50 {
            let u: f64 = rng.gen_range(-1.0..1.0);
            let v: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(-1.0..1.0);

            // Identity (i) evaluated directly at u.
            let mut direct = 1.0 + 2.0 * blocks[lay.b()][(0, 1)] + blocks[lay.b()][(1, 1)];
            for k in 1..=d as usize {
                direct += blocks[lay.a(k)][(0, 0)] * jacobi_p(n, k as u32).eval_f64(u);
            }
            for (k, sm) in s_mats.iter().enumerate() {
                for i in 0..sm.size {
                    for j in 0..sm.size {
                        direct += 3.0
                            * sm.entry(i, j).eval_f64(u, u, 1.0)
                            * blocks[lay.f(k)][(i, j)];
                    }
                }
            }
            for i in 0..=d as usize {
                for j in 0..=d as usize {
                    direct += blocks[lay.q0()][(i, j)] * u.powi((i + j) as i32);
                }
            }
            let mult = (u + 1.0) * (cos_theta - u);
            for i in 0..d as usize {
                for j in 0..d as usize {
                    direct += mult * blocks[lay.q1()][(i, j)] * u.powi((i + j) as i32);
                }
            }
            let predicted: f64 = (0..p.univariate_rows)
                .map(|m| row_vals[m] * u.powi(m as i32))
                .sum();
            assert!(
                (direct - predicted).abs() < 1e-9 * (1.0 + direct.abs()),
                "(i): {direct} vs {predicted}"
            );

            // Identity (ii) evaluated directly at (u, v, t).
            let mut direct = blocks[lay.b()][(1, 1)];
            for (k, sm) in s_mats.iter().enumerate() {
                for i in 0..sm.size {
                    for j in 0..sm.size {
                        direct += sm.entry(i, j).eval_f64(u, v, t) * blocks[lay.f(k)][(i, j)];
                    }
                }
            }
            for i in 0..basis_d.len() {
                for j in 0..basis_d.len() {
                    direct += blocks[lay.r()][(i, j)]
                        * mono_eval(&basis_d[i], u, v, t)
                        * mono_eval(&basis_d[j], u, v, t);
                }
            }
            let mults = [
                (u + 1.0) * (cos_theta - u),
                (v + 1.0) * (cos_theta - v),
                (t + 1.0) * (cos_theta - t),
                1.0 + 2.0 * u * v * t - u * u - v * v - t * t,
            ];
            for (q, mq) in mults.iter().enumerate() {
                for i in 0..basis_d1.len() {
                    for j in 0..basis_d1.len() {
                        direct += mq
                            * blocks[lay.r_mult(q)][(i, j)]
                            * mono_eval(&basis_d1[i], u, v, t)
                            * mono_eval(&basis_d1[j], u, v, t);
                    }
                }
            }
            let predicted: f64 = p
                .trivariate_monomials
                .iter()
                .enumerate()
                .map(|(idx, m)| row_vals[p.univariate_rows + idx] * mono_eval(m, u, v, t))
                .sum();
            assert!(
                (direct - predicted).abs() < 1e-9 * (1.0 + direct.abs()),
                "(ii): {direct} vs {predicted}"
            );
        }
    }
}
