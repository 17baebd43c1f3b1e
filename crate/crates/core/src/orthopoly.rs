//! Exact-rational orthogonal-polynomial machinery for the three-point bound:
//! normalized Jacobi polynomials, the trivariate kernels built from them, and
//! their averages under permutations of `(u, v, t)`.
//!
//! Everything here stays in exact rational arithmetic; conversion to floats
//! happens once, when the semidefinite program is assembled.

use crate::numerics::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Univariate polynomial with exact rational coefficients; index `i` holds
/// the coefficient of `u^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly { coeffs: vec![c] }.trimmed()
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UniPoly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &UniPoly) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly { coeffs }.trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .trimmed()
    }

    pub fn mul(&self, rhs: &UniPoly) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly { coeffs }.trimmed()
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Jacobi polynomial of degree `k` with both parameters `(n-3)/2`,
/// normalized so that its value at `1` is exactly `1`. For `n = 2` this is
/// the Chebyshev polynomial of the first kind.
pub fn jacobi_p(n: u32, k: u32) -> UniPoly {
    assert!(n >= 2);
    if n == 2 {
        return chebyshev_t(k);
    }
    let alpha = q(n as i64 - 3, 2);
    let p = jacobi_raw(&alpha, k);
    let at_one = p.eval_rational(&Rational::one());
    assert!(!at_one.is_zero());
    p.scale(&at_one.recip())
}

/// Unnormalized Jacobi with equal parameters, by the three-term recurrence.
fn jacobi_raw(alpha: &Rational, k: u32) -> UniPoly {
    let one = Rational::one();
    let mut p_prev = UniPoly::one();
    if k == 0 {
        return p_prev;
    }
    // P_1^{(a,a)}(x) = (a+1) x.
    let mut p_cur = UniPoly::x().scale(&(alpha + &one));
    let two_alpha = alpha + alpha;
    for m in 2..=k {
        let m_q = Rational::from_integer(BigInt::from(m));
        // For equal parameters the odd term of the recurrence vanishes:
        // 2m(m+2a)(2m+2a-2) P_m
        //   = (2m+2a-1)(2m+2a)(2m+2a-2) x P_{m-1} - 2(m+a-1)^2 (2m+2a) P_{m-2}.
        let s = &m_q + &m_q + &two_alpha; // 2m + 2a
        let c0 = (&m_q + &m_q) * (&m_q + &two_alpha) * (&s - q(2, 1));
        let c1 = (&s - &one) * &s * (&s - q(2, 1));
        let ma1 = &m_q + alpha - &one;
        let c2 = q(2, 1) * &ma1 * &ma1 * &s;
        let next = UniPoly::x()
            .mul(&p_cur)
            .scale(&c1)
            .add(&p_prev.scale(&(-c2)));
        assert!(!c0.is_zero());
        let next = next.scale(&c0.recip());
        p_prev = p_cur;
        p_cur = next;
    }
    p_cur
}

fn chebyshev_t(k: u32) -> UniPoly {
    let mut t_prev = UniPoly::one();
    if k == 0 {
        return t_prev;
    }
    let mut t_cur = UniPoly::x();
    for _ in 2..=k {
        let next = UniPoly::x()
            .mul(&t_cur)
            .scale(&q(2, 1))
            .add(&t_prev.scale(&q(-1, 1)));
        t_prev = t_cur;
        t_cur = next;
    }
    t_cur
}

/// Sparse trivariate polynomial in `(u, v, t)`; exponent triples map to
/// nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<[u32; 3], Rational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = TriPoly::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    pub fn one() -> Self {
        TriPoly::constant(Rational::one())
    }

    /// The monomial for variable index `0 = u`, `1 = v`, `2 = t`.
    pub fn var(i: usize) -> Self {
        let mut e = [0u32; 3];
        e[i] = 1;
        let mut p = TriPoly::zero();
        p.add_term(e, Rational::one());
        p
    }

    pub fn add_term(&mut self, exps: [u32; 3], c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &TriPoly) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TriPoly) -> Self {
        self.add(&rhs.scale(&q(-1, 1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e, a * c))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &TriPoly) -> Self {
        let mut out = TriPoly::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = TriPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Lifts a univariate polynomial into variable `i`.
    pub fn from_unipoly(i: usize, p: &UniPoly) -> Self {
        let mut out = TriPoly::zero();
        for (deg, c) in p.coeffs().iter().enumerate() {
            let mut e = [0u32; 3];
            e[i] = deg as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    /// Applies a permutation of the variables: the result at `(x0, x1, x2)`
    /// equals `self` at `(x_{p[0]}, x_{p[1]}, x_{p[2]})`.
    pub fn permuted(&self, p: [usize; 3]) -> Self {
        let mut out = TriPoly::zero();
        for (e, c) in self.terms.iter() {
            let mut ne = [0u32; 3];
            for i in 0..3 {
                ne[p[i]] += e[i];
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Average over all six permutations of `(u, v, t)`.
    pub fn s3_average(&self) -> Self {
        let mut sum = TriPoly::zero();
        for p in PERMUTATIONS {
            sum = sum.add(&self.permuted(p));
        }
        sum.scale(&q(1, 6))
    }

    /// Substitutes `v = u`, `t = 1`, collapsing to a univariate polynomial.
    pub fn restrict_diagonal(&self) -> UniPoly {
        let mut coeffs: Vec<Rational> = vec![];
        for (e, c) in self.terms.iter() {
            let deg = (e[0] + e[1]) as usize;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Rational::zero());
            }
            coeffs[deg] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn eval_f64(&self, u: f64, v: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                rational_to_f64(c) * u.powi(e[0] as i32) * v.powi(e[1] as i32) * t.powi(e[2] as i32)
            })
            .sum()
    }
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The trivariate kernel
/// `Q^{n-1}_k(u,v,t) = ((1-u^2)(1-v^2))^{k/2} P^{n-1}_k((t-uv)/sqrt((1-u^2)(1-v^2)))`,
/// expanded exactly. The symmetric-parameter Jacobi polynomial has parity
/// `k`, so every half power of the radical cancels and the result is a
/// genuine polynomial.
pub fn q_poly(n: u32, k: u32) -> TriPoly {
    assert!(n >= 3, "q_poly needs n - 1 >= 2");
    let p = jacobi_p(n - 1, k);
    let u = TriPoly::var(0);
    let v = TriPoly::var(1);
    let t = TriPoly::var(2);
    let one = TriPoly::one();
    let w = t.sub(&u.mul(&v)); // t - uv
    let s = one
        .sub(&u.mul(&u))
        .mul(&one.sub(&v.mul(&v))); // (1-u^2)(1-v^2)
    let mut out = TriPoly::zero();
    for (m, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        assert!(
            (k as usize - m) % 2 == 0,
            "parity violation: odd radical power would survive"
        );
        let half = (k as usize - m) as u32 / 2;
        out = out.add(&w.pow(m as u32).mul(&s.pow(half)).scale(c));
    }
    out
}

/// Symmetric matrix of `S3`-averaged trivariate polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    pub size: usize,
    pub entries: Vec<Vec<TriPoly>>,
}

impl PolyMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &TriPoly {
        &self.entries[i][j]
    }
}

/// The `(d-k+1) x (d-k+1)` matrix `S^n_k`, entry `(i,j)` being the group
/// average of `P^{n+2k}_i(u) P^{n+2k}_j(v) Q^{n-1}_k(u,v,t)`.
pub fn s_matrix(n: u32, k: u32, d: u32) -> PolyMatrix {
    assert!(n >= 3);
    assert!(k <= d);
    let size = (d - k + 1) as usize;
    let qk = q_poly(n, k);
    let basis: Vec<TriPoly> = (0..size)
        .map(|i| TriPoly::from_unipoly(0, &jacobi_p(n + 2 * k, i as u32)))
        .collect();
    let basis_v: Vec<TriPoly> = (0..size)
        .map(|i| TriPoly::from_unipoly(1, &jacobi_p(n + 2 * k, i as u32)))
        .collect();
    let mut entries = vec![vec![TriPoly::zero(); size]; size];
    for i in 0..size {
        for j in i..size {
            let y = basis[i].mul(&basis_v[j]).mul(&qk);
            let s = y.s3_average();
            entries[i][j] = s.clone();
            if i != j {
                entries[j][i] = s;
            }
        }
    }
    PolyMatrix { size, entries }
}
