//! Dense primal-dual interior-point solver for block-diagonal SDPs.
//!
//! Standard form: minimize `<C, X>` subject to `<A_i, X> = b_i`, `X >= 0`
//! (block diagonal). Infeasible start, predictor-corrector path following
//! with the dual-scaled search direction; the Schur complement
//! `M_ij = tr(A_i X A_j S^-1)` is assembled blockwise in parallel and
//! factored densely.

use super::model::{
    min_eigenvalue, SdpProblem, SdpSolution, SolverStatus,
};
use nalgebra::{Cholesky, DMatrix};
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub max_iterations: usize,
    pub gap_tolerance: f64,
    pub feasibility_tolerance: f64,
    pub step_fraction: f64,
    pub initial_scale: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            max_iterations: 200,
            gap_tolerance: 1e-9,
            feasibility_tolerance: 1e-9,
            step_fraction: 0.98,
            initial_scale: 1.0,
        }
    }
}

/// Directed entry list: off-diagonal upper entries appear in both orders so
/// sparse trace pairings can ignore symmetry.
type Directed = Vec<(usize, usize, f64)>;

struct BlockData {
    size: usize,
    /// constraint index -> directed entries within this block
    dirs: HashMap<usize, Directed>,
    /// sorted constraint indices touching this block
    idxs: Vec<usize>,
}

fn collect_blocks(p: &SdpProblem) -> Vec<BlockData> {
    let mut out: Vec<BlockData> = p
        .blocks
        .iter()
        .map(|b| BlockData {
            size: b.size,
            dirs: HashMap::new(),
            idxs: Vec::new(),
        })
        .collect();
    for (i, row) in p.constraints.iter().enumerate() {
        for e in &row.entries {
            let d = out[e.block].dirs.entry(i).or_default();
            d.push((e.row, e.col, e.value));
            if e.row != e.col {
                d.push((e.col, e.row, e.value));
            }
        }
    }
    for b in &mut out {
        b.idxs = b.dirs.keys().cloned().collect();
        b.idxs.sort_unstable();
    }
    out
}

fn dense_objective(p: &SdpProblem) -> Vec<DMatrix<f64>> {
    let mut c: Vec<DMatrix<f64>> = p
        .blocks
        .iter()
        .map(|b| DMatrix::zeros(b.size, b.size))
        .collect();
    for e in &p.objective {
        c[e.block][(e.row, e.col)] += e.value;
        if e.row != e.col {
            c[e.block][(e.col, e.row)] += e.value;
        }
    }
    c
}

fn frob_inner(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// `tr(A_i H)` for every constraint, H per block (not necessarily symmetric).
fn pair_all(p: &SdpProblem, blocks: &[BlockData], h: &[DMatrix<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; p.constraints.len()];
    for (b, data) in blocks.iter().enumerate() {
        let hb = &h[b];
        for (&i, dirs) in &data.dirs {
            let mut sum = 0.0;
            for &(a, bb, w) in dirs {
                sum += w * hb[(bb, a)];
            }
            out[i] += sum;
        }
    }
    out
}

/// Adds `sum_i y_i A_i` to the per-block accumulator.
fn add_aty(p: &SdpProblem, y: &[f64], sign: f64, acc: &mut [DMatrix<f64>]) {
    for (i, row) in p.constraints.iter().enumerate() {
        let yi = sign * y[i];
        if yi == 0.0 {
            continue;
        }
        for e in &row.entries {
            acc[e.block][(e.row, e.col)] += yi * e.value;
            if e.row != e.col {
                acc[e.block][(e.col, e.row)] += yi * e.value;
            }
        }
    }
}

/// Largest `alpha` with `X + alpha dX` positive semidefinite, given the
/// Cholesky factor of `X`.
fn max_step(chol: &Cholesky<f64, nalgebra::Dyn>, dx: &DMatrix<f64>) -> f64 {
    let p = dx.nrows();
    if p == 1 {
        let x = chol.l()[(0, 0)].powi(2);
        let d = dx[(0, 0)];
        return if d >= 0.0 { f64::INFINITY } else { -x / d };
    }
    let l = chol.l();
    let y = l
        .solve_lower_triangular(dx)
        .expect("triangular solve with positive diagonal");
    let z = l
        .solve_lower_triangular(&y.transpose())
        .expect("triangular solve with positive diagonal");
    let w = (&z + z.transpose()).scale(0.5);
    let lam = min_sym_eig(&w);
    if lam >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / lam
    }
}

fn min_sym_eig(m: &DMatrix<f64>) -> f64 {
    match m.clone().try_symmetric_eigen(1e-12, 200) {
        Some(e) => e.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min),
        None => {
            // Gershgorin is a valid (conservative) lower bound here.
            (0..m.nrows())
                .map(|i| {
                    let off: f64 = (0..m.ncols())
                        .filter(|&j| j != i)
                        .map(|j| m[(i, j)].abs())
                        .sum();
                    m[(i, i)] - off
                })
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Schur complement `M_ij = tr(A_i X A_j S^-1)`, upper triangle, assembled
/// blockwise with row-level parallelism.
fn schur(
    m: usize,
    blocks: &[BlockData],
    xs: &[DMatrix<f64>],
    sinvs: &[DMatrix<f64>],
) -> DMatrix<f64> {
    let mut mm = vec![0.0f64; m * m];
    for (b, data) in blocks.iter().enumerate() {
        let p = data.size;
        if p == 0 || data.dirs.is_empty() {
            continue;
        }
        let x = &xs[b];
        let sinv = &sinvs[b];
        let xsl = x.as_slice(); // column-major; symmetric, so col b == row b
        let ssl = sinv.as_slice();
        mm.par_chunks_mut(m).enumerate().for_each(|(i, row)| {
            let Some(di) = data.dirs.get(&i) else { return };
            // G = S^-1 A_i X accumulated from rank-one terms.
            let mut g = vec![0.0f64; p * p];
            for &(a, bb, w) in di {
                let sc = &ssl[a * p..(a + 1) * p];
                let xr = &xsl[bb * p..(bb + 1) * p];
                for r in 0..p {
                    let s = w * sc[r];
                    if s != 0.0 {
                        let grow = &mut g[r * p..(r + 1) * p];
                        for (gc, xc) in grow.iter_mut().zip(xr.iter()) {
                            *gc += s * xc;
                        }
                    }
                }
            }
            // M_ij = tr(A_j G)
            for &j in data.idxs.iter().filter(|&&j| j >= i) {
                let mut val = 0.0;
                for &(c, dd, w2) in &data.dirs[&j] {
                    val += w2 * g[dd * p + c];
                }
                row[j] += val;
            }
        });
    }
    let mut out = DMatrix::from_fn(m, m, |r, c| if r <= c { mm[r * m + c] } else { 0.0 });
    for r in 0..m {
        for c in 0..r {
            out[(r, c)] = out[(c, r)];
        }
    }
    out
}

/// Cholesky with escalating diagonal shifts; the interior-point iterates
/// can go numerically indefinite in the last iterations.
fn chol_shifted(m: &DMatrix<f64>) -> Option<Cholesky<f64, nalgebra::Dyn>> {
    if let Some(ch) = Cholesky::new(m.clone()) {
        return Some(ch);
    }
    let n = m.nrows();
    let base: f64 = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let mut shift = 1e-14 * (1.0 + base);
    for _ in 0..5 {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] += shift;
        }
        if let Some(ch) = Cholesky::new(shifted) {
            return Some(ch);
        }
        shift *= 100.0;
    }
    None
}

fn factor_schur(mut m: DMatrix<f64>) -> Option<Cholesky<f64, nalgebra::Dyn>> {
    let n = m.nrows();
    let base: f64 = (0..n).map(|i| m[(i, i)].abs()).fold(0.0, f64::max);
    let mut reg = 0.0;
    for attempt in 0..6 {
        if attempt > 0 {
            let add = if reg == 0.0 {
                1e-13 * (1.0 + base)
            } else {
                reg * 100.0
            };
            for i in 0..n {
                m[(i, i)] += add - reg;
            }
            reg = add;
        }
        if let Some(ch) = Cholesky::new(m.clone()) {
            return Some(ch);
        }
    }
    None
}

pub fn solve(p: &SdpProblem, settings: &SolverSettings) -> SdpSolution {
    let m = p.constraints.len();
    let sizes = p.block_sizes();
    let ntot: usize = sizes.iter().sum();

    // Structural infeasibility: an empty row with a nonzero right-hand side.
    if p
        .constraints
        .iter()
        .any(|r| r.entries.is_empty() && r.rhs != 0.0)
    {
        return finish(p, zeros(&sizes), vec![0.0; m], SolverStatus::Infeasible, 0);
    }

    // Ruiz equilibration, alternating between constraint rows and variable
    // blocks. Row scaling leaves the primal variables unchanged and is
    // undone on the dual multipliers at exit; block scaling substitutes
    // X_b -> c_b X_b and is undone on the primal blocks at exit. Both keep
    // all inner products (hence the objective) invariant.
    let mut work = p.clone();
    let mut row_scale = vec![1.0f64; m];
    let nblocks = p.blocks.len();
    let mut block_scale = vec![1.0f64; nblocks];
    for _ in 0..6 {
        let mut bmaxes = vec![0.0f64; nblocks];
        for e in &work.objective {
            bmaxes[e.block] = bmaxes[e.block].max(e.value.abs());
        }
        for row in &work.constraints {
            for e in &row.entries {
                bmaxes[e.block] = bmaxes[e.block].max(e.value.abs());
            }
        }
        let bs: Vec<f64> = bmaxes
            .iter()
            .map(|&v| if v > 0.0 { v.sqrt() } else { 1.0 })
            .collect();
        for e in &mut work.objective {
            e.value /= bs[e.block];
        }
        for (c, s) in block_scale.iter_mut().zip(bs.iter()) {
            *c *= s;
        }
        for (i, row) in work.constraints.iter_mut().enumerate() {
            for e in &mut row.entries {
                e.value /= bs[e.block];
            }
            let s = row
                .entries
                .iter()
                .map(|e| e.value.abs())
                .fold(0.0f64, f64::max);
            if s > 0.0 {
                let s = s.sqrt();
                row_scale[i] *= s;
                for e in &mut row.entries {
                    e.value /= s;
                }
                row.rhs /= s;
            }
        }
    }
    let w = &work;

    let blocks = collect_blocks(w);
    let c = dense_objective(w);
    let b_vec: Vec<f64> = w.constraints.iter().map(|r| r.rhs).collect();
    let bmax = b_vec.iter().cloned().fold(0.0f64, |a, v| a.max(v.abs()));
    let cmax = w
        .objective
        .iter()
        .map(|e| e.value.abs())
        .fold(0.0f64, f64::max);
    let eta = settings.initial_scale * 10.0f64.max(bmax).max(cmax);
    let mut xs: Vec<DMatrix<f64>> = sizes.iter().map(|&s| DMatrix::identity(s, s) * eta).collect();
    let mut ss: Vec<DMatrix<f64>> = sizes.iter().map(|&s| DMatrix::identity(s, s) * eta).collect();
    let mut y = vec![0.0; m];

    // Gram matrix of the constraint rows, factored once: used to project
    // primal directions exactly onto A(dX) = rp, which keeps the primal
    // residual contracting even when the Schur system turns ill-conditioned,
    // and to polish the returned iterate.
    let eyes: Vec<DMatrix<f64>> = sizes.iter().map(|&s| DMatrix::identity(s, s)).collect();
    let gram = schur(m, &blocks, &eyes, &eyes);
    let gram_chol = factor_schur(gram.clone());
    let project_primal = |dx: &mut Vec<DMatrix<f64>>, target: &[f64]| {
        if let Some(gch) = &gram_chol {
            let adx = pair_all(w, &blocks, dx);
            let r = nalgebra::DVector::from_fn(m, |i, _| target[i] - adx[i]);
            let mut lam = gch.solve(&r);
            let resid = &r - &gram * &lam;
            lam += gch.solve(&resid);
            add_aty(w, lam.as_slice(), 1.0, dx);
        }
    };

    let bnorm = 1.0 + bmax;
    let cnorm = 1.0 + cmax;
    let trace = std::env::var_os("SDP_TRACE").is_some();
    let mut status = SolverStatus::MaxIterations;
    let mut iterations = 0;
    let mut best: Option<(Vec<DMatrix<f64>>, Vec<f64>, f64)> = None;
    let mut since_best = 0usize;

    let merit_of = |xs: &[DMatrix<f64>], y: &[f64]| -> (f64, f64, f64) {
        let ax = pair_all(w, &blocks, xs);
        let pinf = (0..m)
            .map(|i| (b_vec[i] - ax[i]).abs())
            .fold(0.0f64, f64::max)
            / bnorm;
        let mut slack: Vec<DMatrix<f64>> = c.clone();
        add_aty(w, y, -1.0, &mut slack);
        // Dual infeasibility here is distance of C - A^T(y) - S from zero,
        // but S is implicit in the loop; the caller passes residuals instead.
        let pobj = w.objective_offset
            + xs.iter().zip(c.iter()).map(|(x, cb)| frob_inner(x, cb)).sum::<f64>();
        let dobj = w.objective_offset
            + b_vec.iter().zip(y.iter()).map(|(b, yy)| b * yy).sum::<f64>();
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        (gap, pinf, pobj)
    };

    for iter in 0..settings.max_iterations {
        iterations = iter;
        // Residuals.
        let ax = pair_all(w, &blocks, &xs);
        let rp: Vec<f64> = (0..m).map(|i| b_vec[i] - ax[i]).collect();
        let mut rd: Vec<DMatrix<f64>> = c.iter().zip(ss.iter()).map(|(cb, sb)| cb - sb).collect();
        add_aty(w, &y, -1.0, &mut rd);

        let (gap, pinf, pobj) = merit_of(&xs, &y);
        let dinf = rd
            .iter()
            .map(|rb| rb.iter().cloned().fold(0.0f64, |a, v| a.max(v.abs())))
            .fold(0.0, f64::max)
            / cnorm;
        if trace {
            eprintln!("iter {iter}: pobj {pobj:.9e} gap {gap:.3e} pinf {pinf:.3e} dinf {dinf:.3e}");
        }
        let merit = gap.max(pinf).max(dinf);
        if best.as_ref().map_or(true, |(_, _, bm)| merit < *bm) {
            best = Some((xs.clone(), y.clone(), merit));
            since_best = 0;
        } else if let Some((_, _, bm)) = &best {
            // The endgame has turned around or stagnated; further
            // iterations cannot recover once this sets in.
            since_best += 1;
            if merit > 1e4 * bm.max(1e-12) || since_best >= 40 {
                if trace {
                    eprintln!("stall: merit {merit:.3e} vs best {bm:.3e} ({since_best} iters)");
                }
                break;
            }
        }
        if gap <= settings.gap_tolerance
            && pinf <= settings.feasibility_tolerance
            && dinf <= settings.feasibility_tolerance
        {
            status = SolverStatus::Optimal;
            break;
        }

        let mu = xs
            .iter()
            .zip(ss.iter())
            .map(|(x, s)| frob_inner(x, s))
            .sum::<f64>()
            / ntot.max(1) as f64;
        // Tighter fraction-to-boundary once the path is nearly traced out.
        let tau = if mu < 1e-7 {
            settings.step_fraction.max(0.995)
        } else if mu < 1e-4 {
            settings.step_fraction.max(0.99)
        } else {
            settings.step_fraction
        };

        // Factorizations of the current iterates.
        let chol_s: Option<Vec<_>> = ss.iter().map(chol_shifted).collect();
        let chol_x: Option<Vec<_>> = xs.iter().map(chol_shifted).collect();
        let (Some(chol_s), Some(chol_x)) = (chol_s, chol_x) else {
            if trace {
                eprintln!("breakdown: iterate cholesky");
            }
            status = SolverStatus::NumericalBreakdown;
            break;
        };
        let sinvs: Vec<DMatrix<f64>> = chol_s.iter().map(|ch| ch.inverse()).collect();

        let mm = schur(m, &blocks, &xs, &sinvs);
        let Some(mchol) = factor_schur(mm.clone()) else {
            if trace {
                eprintln!("breakdown: schur factorization");
            }
            status = SolverStatus::NumericalBreakdown;
            break;
        };
        let solve_schur = |rhs: &nalgebra::DVector<f64>| {
            let mut dy = mchol.solve(rhs);
            // One step of iterative refinement keeps the normal equations
            // usable deep into the ill-conditioned endgame.
            let resid = rhs - &mm * &dy;
            dy += mchol.solve(&resid);
            dy
        };

        let a_sinv = pair_all(w, &blocks, &sinvs);
        // X * Rd * S^-1 per block.
        let xrds: Vec<DMatrix<f64>> = xs
            .iter()
            .zip(rd.iter())
            .zip(sinvs.iter())
            .map(|((x, r), si)| x * r * si)
            .collect();
        let a_xrds = pair_all(w, &blocks, &xrds);

        let direction = |sigma_mu: f64, corr: Option<&[DMatrix<f64>]>| {
            let a_corr: Vec<f64> = match corr {
                Some(k) => pair_all(w, &blocks, k),
                None => vec![0.0; m],
            };
            let rhs = nalgebra::DVector::from_fn(m, |i, _| {
                b_vec[i] - sigma_mu * a_sinv[i] + a_xrds[i] + a_corr[i]
            });
            let dy = solve_schur(&rhs);
            // dS = Rd - A^T(dy)
            let mut ds: Vec<DMatrix<f64>> = rd.clone();
            add_aty(w, dy.as_slice(), -1.0, &mut ds);
            // dX = sigma*mu*S^-1 - X - X dS S^-1 - corr, symmetrized
            let mut dx: Vec<DMatrix<f64>> = (0..sizes.len())
                .map(|b| {
                    let mut raw = &sinvs[b] * sigma_mu - &xs[b] - &xs[b] * &ds[b] * &sinvs[b];
                    if let Some(k) = corr {
                        raw -= &k[b];
                    }
                    (&raw + raw.transpose()).scale(0.5)
                })
                .collect();
            // Any direction must restore A(X + dX) = b exactly.
            project_primal(&mut dx, &rp);
            (dx, dy, ds)
        };

        // Predictor (affine scaling).
        let (dxa, _dya, dsa) = direction(0.0, None);
        let ap_aff = step_length(&chol_x, &dxa, tau);
        let ad_aff = step_length(&chol_s, &dsa, tau);
        let mu_aff = (0..sizes.len())
            .map(|b| frob_inner(&(&xs[b] + &dxa[b] * ap_aff), &(&ss[b] + &dsa[b] * ad_aff)))
            .sum::<f64>()
            / ntot.max(1) as f64;
        let sigma = (mu_aff / mu).powi(3).clamp(1e-10, 1.0);

        // Corrector.
        let corr: Vec<DMatrix<f64>> = (0..sizes.len())
            .map(|b| &dxa[b] * &dsa[b] * &sinvs[b])
            .collect();
        let (dx, dy, ds) = direction(sigma * mu, Some(&corr));
        let ap = step_length(&chol_x, &dx, tau);
        let ad = step_length(&chol_s, &ds, tau);
        if ap < 1e-12 && ad < 1e-12 {
            if trace {
                eprintln!("breakdown: step collapse ap {ap:.1e} ad {ad:.1e}");
            }
            status = SolverStatus::NumericalBreakdown;
            break;
        }

        for b in 0..sizes.len() {
            xs[b] += &dx[b] * ap;
            ss[b] += &ds[b] * ad;
        }
        for i in 0..m {
            y[i] += ad * dy[i];
        }
    }

    // Hand back the best iterate seen, not necessarily the last one. A
    // stall near the solution is reported as max_iter: the iterate is still
    // usable, unlike a genuine breakdown.
    let (mut xs, mut y) = (xs, y);
    if status != SolverStatus::Optimal {
        let (gap, pinf, _) = merit_of(&xs, &y);
        let final_merit = gap.max(pinf);
        if let Some((bx, by, bm)) = best {
            if bm < final_merit {
                if status == SolverStatus::NumericalBreakdown && bm <= 1e-4 {
                    status = SolverStatus::MaxIterations;
                }
                xs = bx;
                y = by;
            }
        }
    }

    // Final polish: alternate between the PSD cone (eigenvalue clipping)
    // and the equality manifold (least-norm Gram correction). A stalled
    // endgame can leave X slightly indefinite; a few rounds of alternating
    // projections push both residuals to rounding level.
    if status != SolverStatus::Infeasible {
        project_primal(&mut xs, &b_vec);
        for _ in 0..100 {
            let mut most_negative = 0.0f64;
            for (bi, x) in xs.iter_mut().enumerate().filter(|(_, x)| x.nrows() > 0) {
                let eig = x.clone().symmetric_eigen();
                let neg = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::min);
                // Judge negativity in the caller's units: the block scaling
                // is undone below, amplifying eigenvalues by 1 / c_b.
                most_negative = most_negative.min(neg / block_scale[bi]);
                if neg < 0.0 {
                    let mut vals = eig.eigenvalues;
                    for v in vals.iter_mut() {
                        *v = v.max(0.0);
                    }
                    let q = eig.eigenvectors;
                    let clipped = &q * DMatrix::from_diagonal(&vals) * q.transpose();
                    *x = (&clipped + clipped.transpose()) * 0.5;
                }
            }
            project_primal(&mut xs, &b_vec);
            if most_negative >= -1e-10 {
                break;
            }
        }
    }

    for (yy, s) in y.iter_mut().zip(row_scale.iter()) {
        *yy /= s;
    }
    for (x, c) in xs.iter_mut().zip(block_scale.iter()) {
        *x /= *c;
    }
    finish(p, xs, y, status, iterations)
}

fn step_length(chols: &[Cholesky<f64, nalgebra::Dyn>], d: &[DMatrix<f64>], tau: f64) -> f64 {
    let amax = chols
        .iter()
        .zip(d.iter())
        .filter(|(_, db)| db.nrows() > 0)
        .map(|(ch, db)| max_step(ch, db))
        .fold(f64::INFINITY, f64::min);
    (tau * amax).min(1.0)
}

fn zeros(sizes: &[usize]) -> Vec<DMatrix<f64>> {
    sizes.iter().map(|&s| DMatrix::zeros(s, s)).collect()
}

fn finish(
    p: &SdpProblem,
    xs: Vec<DMatrix<f64>>,
    y: Vec<f64>,
    status: SolverStatus,
    iterations: usize,
) -> SdpSolution {
    let m = p.constraints.len();
    let blocks = collect_blocks(p);
    let c = dense_objective(p);
    let ax = pair_all(p, &blocks, &xs);
    let bmax = p
        .constraints
        .iter()
        .map(|r| r.rhs.abs())
        .fold(0.0f64, f64::max);
    let cmax = p
        .objective
        .iter()
        .map(|e| e.value.abs())
        .fold(0.0f64, f64::max);
    let primal_infeasibility = (0..m)
        .map(|i| (p.constraints[i].rhs - ax[i]).abs())
        .fold(0.0f64, f64::max)
        / (1.0 + bmax);
    // Dual slack implied by y: S = C - A^T(y); its most negative eigenvalue
    // measures dual infeasibility.
    let mut slack: Vec<DMatrix<f64>> = c.clone();
    add_aty(p, &y, -1.0, &mut slack);
    let dual_infeasibility = slack
        .iter()
        .filter(|s| s.nrows() > 0)
        .map(|s| (-min_eigenvalue(s)).max(0.0))
        .fold(0.0, f64::max)
        / (1.0 + cmax);
    let pobj = p.objective_value(&xs);
    let dobj = p.objective_offset
        + p.constraints
            .iter()
            .zip(y.iter())
            .map(|(r, yy)| r.rhs * yy)
            .sum::<f64>();
    let duality_gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
    let min_eigenvalues: Vec<f64> = xs.iter().map(min_eigenvalue).collect();
    SdpSolution {
        objective: pobj,
        blocks: xs,
        y,
        status,
        primal_infeasibility,
        dual_infeasibility,
        duality_gap,
        min_eigenvalues,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::model::{
        bound_from_solution, build_sdp, verify_solution, BlockSpec, ConstraintRow, Entry,
        SdpProblem,
    };

    fn tiny_problem() -> SdpProblem {
        // minimize x subject to x = 1, x >= 0
        SdpProblem {
            n: 3,
            d: 2,
            cos_theta: 0.0,
            blocks: vec![BlockSpec {
                name: "x".into(),
                size: 1,
            }],
            constraints: vec![ConstraintRow {
                entries: vec![Entry {
                    block: 0,
                    row: 0,
                    col: 0,
                    value: 1.0,
                }],
                rhs: 1.0,
            }],
            objective: vec![Entry {
                block: 0,
                row: 0,
                col: 0,
                value: 1.0,
            }],
            objective_offset: 0.0,
            univariate_rows: 0,
            trivariate_monomials: vec![],
        }
    }

    fn saddle_problem() -> SdpProblem {
        // minimize t with [[t, 1], [1, t]] psd: X00 = X11 = t, X01 = 1.
        SdpProblem {
            n: 3,
            d: 2,
            cos_theta: 0.0,
            blocks: vec![BlockSpec {
                name: "X".into(),
                size: 2,
            }],
            constraints: vec![
                ConstraintRow {
                    entries: vec![Entry {
                        block: 0,
                        row: 0,
                        col: 1,
                        value: 0.5,
                    }],
                    rhs: 1.0,
                },
                ConstraintRow {
                    entries: vec![
                        Entry {
                            block: 0,
                            row: 0,
                            col: 0,
                            value: 1.0,
                        },
                        Entry {
                            block: 0,
                            row: 1,
                            col: 1,
                            value: -1.0,
                        },
                    ],
                    rhs: 0.0,
                },
            ],
            objective: vec![Entry {
                block: 0,
                row: 0,
                col: 0,
                value: 1.0,
            }],
            objective_offset: 0.0,
            univariate_rows: 0,
            trivariate_monomials: vec![],
        }
    }

    #[test]
    fn solves_one_by_one() {
        let p = tiny_problem();
        let s = solve(&p, &SolverSettings::default());
        assert_eq!(s.status, SolverStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-7, "{}", s.objective);
    }

    #[test]
    fn solves_two_by_two_saddle() {
        let p = saddle_problem();
        let s = solve(&p, &SolverSettings::default());
        assert_eq!(s.status, SolverStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-6, "{}", s.objective);
    }

    #[test]
    fn structurally_infeasible_detected() {
        let mut p = tiny_problem();
        p.constraints.push(ConstraintRow {
            entries: vec![],
            rhs: 2.0,
        });
        let s = solve(&p, &SolverSettings::default());
        assert_eq!(s.status, SolverStatus::Infeasible);
    }

    #[test]
    fn scale_invariance_of_objective() {
        let base = saddle_problem();
        let mut scaled = base.clone();
        for e in &mut scaled.objective {
            e.value *= 10.0;
        }
        let s1 = solve(&base, &SolverSettings::default());
        let s2 = solve(&scaled, &SolverSettings::default());
        assert_eq!(s1.status, SolverStatus::Optimal);
        assert_eq!(s2.status, SolverStatus::Optimal);
        assert!((s2.objective - 10.0 * s1.objective).abs() / s2.objective.abs() < 1e-8);
    }

    #[test]
    fn determinism() {
        let p = build_sdp(3, 0.5, 2).unwrap();
        let s1 = solve(&p, &SolverSettings::default());
        let s2 = solve(&p, &SolverSettings::default());
        assert_eq!(s1.iterations, s2.iterations);
        assert_eq!(s1.objective.to_bits(), s2.objective.to_bits());
    }

    #[test]
    fn kissing_number_d2_bound() {
        // n = 3, cos theta = 1/2: the Euclidean kissing number is 12, so
        // any valid relaxation value is >= 12.
        let p = build_sdp(3, 0.5, 3).unwrap();
        let s = solve(&p, &SolverSettings::default());
        assert_eq!(s.status, SolverStatus::Optimal, "{:?}", s);
        let bound = bound_from_solution(&p, &s).unwrap();
        assert!(bound >= 12.0 - 1e-6, "{bound}");
        assert!(bound < 24.1, "{bound}");
    }

    #[test]
    fn solved_small_problem_verifies() {
        let p = build_sdp(4, -1.0, 4).unwrap();
        let s = solve(&p, &SolverSettings::default());
        // The optimum here is degenerate; the solver may stop on a stall,
        // but the returned iterate must still verify at 1e-7.
        assert_ne!(s.status, SolverStatus::NumericalBreakdown, "{:?}", s.status);
        let report = verify_solution(&p, &s, 1e-7, 1e-7);
        assert!(
            report.passes,
            "residual {} min eig {}",
            report.max_equality_residual, report.min_eigenvalue
        );
        // Perturbing one block entry breaks the equality system.
        let mut bad = s.clone();
        bad.blocks[1][(0, 0)] += 1e-3;
        let report = verify_solution(&p, &bad, 1e-7, 1e-7);
        assert!(!report.passes);
    }

    #[test]
    fn kkt_residuals_recompute() {
        let p = saddle_problem();
        let s = solve(&p, &SolverSettings::default());
        let blocks = collect_blocks(&p);
        let ax = pair_all(&p, &blocks, &s.blocks);
        let pinf = (0..p.constraints.len())
            .map(|i| (p.constraints[i].rhs - ax[i]).abs())
            .fold(0.0f64, f64::max)
            / (1.0 + 1.0);
        assert!((pinf - s.primal_infeasibility).abs() < 1e-12);
        assert!((p.objective_value(&s.blocks) - s.objective).abs() < 1e-12);
    }
}
