//! The exact certificate LP.
//!
//! Minimizing `Σ_i C(n,i) Λ_i` over profiles with `Λ(0) = 1`, `Λ ≥ 0` and
//! `Λ̂_s ≤ 0` for `s ≥ d` yields the best ratio bound any certificate can
//! give; by duality it coincides with the classical primal optimum over
//! distance distributions. Everything here is `BigRational` and the pivot
//! rule is Bland's, so the solver terminates and the reported optimum is
//! exact rather than a float that happens to look rational.

use num::{One, Signed, Zero};

use crate::certificate::{method, BoundReport, Certificate};
use crate::error::{Error, Result};
use crate::fourier::Cube;
use crate::profile::{Side, SymmetricProfile};
use crate::scalar::{binomial, Int, Rat};

const PIVOT_CAP: usize = 50_000;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub sense: Sense,
    pub rhs: Rat,
}

/// Minimize `c · x` over `x ≥ 0` subject to the constraints, exactly.
/// Returns `(optimum, solution, pivots)`.
pub fn solve_min(c: &[Rat], cons: &[Constraint], cap: usize) -> Result<(Rat, Vec<Rat>, usize)> {
    let nvars = c.len();
    for con in cons {
        if con.coeffs.len() != nvars {
            return Err(Error::Mismatch(format!(
                "constraint with {} coefficients against {nvars} variables",
                con.coeffs.len()
            )));
        }
    }

    // normalize: rhs ≥ 0, then Le rows get a slack, everything else an
    // artificial (Le with negative rhs becomes a ≥ row, which needs a
    // surplus column first)
    struct Row {
        coeffs: Vec<Rat>,
        surplus: bool,
        artificial: bool,
        rhs: Rat,
    }
    let mut rows = Vec::with_capacity(cons.len());
    for con in cons {
        let flip = con.rhs.is_negative();
        let coeffs: Vec<Rat> = if flip {
            con.coeffs.iter().map(|v| -v).collect()
        } else {
            con.coeffs.clone()
        };
        let rhs = if flip { -&con.rhs } else { con.rhs.clone() };
        match (con.sense, flip) {
            (Sense::Le, false) => rows.push(Row { coeffs, surplus: false, artificial: false, rhs }),
            (Sense::Le, true) => rows.push(Row { coeffs, surplus: true, artificial: true, rhs }),
            (Sense::Eq, _) => rows.push(Row { coeffs, surplus: false, artificial: true, rhs }),
        }
    }

    let m = rows.len();
    let n_slack: usize = rows.iter().filter(|r| !r.artificial).count()
        + rows.iter().filter(|r| r.surplus).count();
    let art_start = nvars + n_slack;
    let n_art: usize = rows.iter().filter(|r| r.artificial).count();
    let ncols = art_start + n_art;

    // tableau rows: coefficients then rhs; basis[r] = basic column of row r
    let mut a = vec![vec![Rat::zero(); ncols]; m];
    let mut b = vec![Rat::zero(); m];
    let mut basis = vec![0usize; m];
    let mut next_slack = nvars;
    let mut next_art = art_start;
    for (r, row) in rows.iter().enumerate() {
        a[r][..nvars].clone_from_slice(&row.coeffs);
        b[r] = row.rhs.clone();
        if row.surplus {
            a[r][next_slack] = -Rat::one();
            next_slack += 1;
        }
        if row.artificial {
            a[r][next_art] = Rat::one();
            basis[r] = next_art;
            next_art += 1;
        } else {
            a[r][next_slack] = Rat::one();
            basis[r] = next_slack;
            next_slack += 1;
        }
    }

    let mut pivots = 0usize;

    // phase 1: minimize the sum of artificials
    if n_art > 0 {
        let mut obj1 = vec![Rat::zero(); ncols];
        let mut z1 = Rat::zero();
        for (r, row) in rows.iter().enumerate() {
            if row.artificial {
                for j in 0..ncols {
                    if j != basis[r] {
                        let t = &a[r][j];
                        obj1[j] -= t;
                    }
                }
                z1 += &b[r];
            }
        }
        run_simplex(&mut a, &mut b, &mut obj1, &mut z1, &mut basis, art_start, cap, &mut pivots)?;
        if !z1.is_zero() {
            return Err(Error::Domain("linear program is infeasible".into()));
        }
        // drive any leftover basic artificials out (degenerate pivots); an
        // all-zero row is redundant and can keep its artificial at level 0
        for r in 0..m {
            if basis[r] >= art_start {
                if let Some(j) = (0..art_start).find(|&j| !a[r][j].is_zero()) {
                    let mut dummy = vec![Rat::zero(); ncols];
                    let mut zd = Rat::zero();
                    pivot_step(&mut a, &mut b, &mut dummy, &mut zd, &mut basis, r, j);
                    pivots += 1;
                }
            }
        }
    }

    // phase 2: reduced costs of the real objective under the current basis
    let mut obj2: Vec<Rat> = c.iter().cloned().chain(
        std::iter::repeat(Rat::zero()).take(ncols - nvars),
    )
    .collect();
    let mut z2 = Rat::zero();
    for r in 0..m {
        let cb = obj2[basis[r]].clone();
        if !cb.is_zero() {
            for j in 0..ncols {
                let t = &a[r][j] * &cb;
                obj2[j] -= t;
            }
            let t = &b[r] * &cb;
            z2 += t;
        }
    }
    run_simplex(&mut a, &mut b, &mut obj2, &mut z2, &mut basis, art_start, cap, &mut pivots)?;

    let mut x = vec![Rat::zero(); nvars];
    for r in 0..m {
        if basis[r] < nvars {
            x[basis[r]] = b[r].clone();
        }
    }
    Ok((z2, x, pivots))
}

fn pivot_step(
    a: &mut [Vec<Rat>],
    b: &mut [Rat],
    obj: &mut [Rat],
    zval: &mut Rat,
    basis: &mut [usize],
    r: usize,
    e: usize,
) {
    let p = a[r][e].clone();
    for v in a[r].iter_mut() {
        *v /= &p;
    }
    b[r] /= &p;
    for rr in 0..a.len() {
        if rr != r && !a[rr][e].is_zero() {
            let f = a[rr][e].clone();
            for j in 0..a[rr].len() {
                let t = &a[r][j] * &f;
                a[rr][j] -= t;
            }
            let t = &b[r] * &f;
            b[rr] -= t;
        }
    }
    if !obj[e].is_zero() {
        let f = obj[e].clone();
        for j in 0..obj.len() {
            let t = &a[r][j] * &f;
            obj[j] -= t;
        }
        // the basic value of the entering variable is b[r]; the objective
        // moves by its reduced cost times that step
        let t = &b[r] * &f;
        *zval += t;
    }
    basis[r] = e;
}

// Bland's rule: smallest eligible entering index; leaving row by exact ratio
// test with ties broken on the smallest basic variable index
fn run_simplex(
    a: &mut [Vec<Rat>],
    b: &mut [Rat],
    obj: &mut [Rat],
    zval: &mut Rat,
    basis: &mut [usize],
    banned_from: usize,
    cap: usize,
    pivots: &mut usize,
) -> Result<()> {
    loop {
        let enter = (0..banned_from).find(|&j| obj[j].is_negative());
        let Some(e) = enter else { return Ok(()) };
        let mut best: Option<(Rat, usize)> = None;
        for r in 0..a.len() {
            if a[r][e].is_positive() {
                let ratio = &b[r] / &a[r][e];
                best = match best {
                    None => Some((ratio, r)),
                    Some((cur, cr)) => {
                        if ratio < cur || (ratio == cur && basis[r] < basis[cr]) {
                            Some((ratio, r))
                        } else {
                            Some((cur, cr))
                        }
                    }
                };
            }
        }
        let Some((_, r)) = best else {
            return Err(Error::Domain("linear program is unbounded".into()));
        };
        pivot_step(a, b, obj, zval, basis, r, e);
        *pivots += 1;
        if *pivots > cap {
            return Err(Error::PivotCap { cap });
        }
    }
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub n: usize,
    pub d: usize,
    pub optimum: Rat,
    pub lambda: SymmetricProfile,
    pub pivots: usize,
}

/// Point-form certificate LP: variables `Λ_0..Λ_n ≥ 0`, `Λ_0 = 1`,
/// `Σ_i K_i(s) Λ_i ≤ 0` for `s ≥ d`; minimize `Σ_i C(n,i) Λ_i`.
pub fn lp_optimum(cube: &Cube, d: usize) -> Result<LpSolution> {
    let n = cube.n();
    if d == 0 || d > n {
        return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    let nv = n + 1;
    let c: Vec<Rat> = (0..=n)
        .map(|i| Rat::from_integer(binomial(n, i as isize)))
        .collect();
    let mut cons = Vec::new();
    let mut norm = vec![Rat::zero(); nv];
    norm[0] = Rat::one();
    cons.push(Constraint { coeffs: norm, sense: Sense::Eq, rhs: Rat::one() });
    let t = cube.table();
    for s in d..=n {
        let coeffs = (0..=n)
            .map(|i| Rat::from_integer(t.get(i, s).clone()))
            .collect();
        cons.push(Constraint { coeffs, sense: Sense::Le, rhs: Rat::zero() });
    }
    let (optimum, x, pivots) = solve_min(&c, &cons, PIVOT_CAP)?;
    let lambda = SymmetricProfile::new(n, Side::Point, x)?;
    Ok(LpSolution { n, d, optimum, lambda, pivots })
}

/// Transform-side formulation as an independent cross-check: variables are
/// `Λ̂_s` (split into signed parts below `d`, forced nonpositive from `d`
/// up), constrained by `Λ_i ≥ 0` and `Λ_0 = 1`, minimizing `2^n Λ̂_0`.
pub fn lp_optimum_hat(cube: &Cube, d: usize) -> Result<LpSolution> {
    let n = cube.n();
    if d == 0 || d > n {
        return Err(Error::Domain(format!("need 1 ≤ d ≤ n, got d = {d}, n = {n}")));
    }
    // variables: u_s, v_s for s < d (hat = u - v), w_s for s ≥ d (hat = -w)
    let nfree = d;
    let nv = 2 * nfree + (n + 1 - d);
    let hat_coeff = |s: usize, col_val: &mut dyn FnMut(usize, Rat)| {
        if s < d {
            col_val(2 * s, Rat::one());
            col_val(2 * s + 1, -Rat::one());
        } else {
            col_val(2 * nfree + (s - d), -Rat::one());
        }
    };
    let t = cube.table();
    let mut cons = Vec::new();
    for i in 0..=n {
        // Λ_i = Σ_s Λ̂_s K_s(i) ≥ 0, written as a ≤ row
        let mut coeffs = vec![Rat::zero(); nv];
        for s in 0..=n {
            let k = Rat::from_integer(t.get(s, i).clone());
            hat_coeff(s, &mut |col, sign| {
                let t = &k * sign;
                coeffs[col] -= t;
            });
        }
        let sense = if i == 0 { Sense::Eq } else { Sense::Le };
        let rhs = if i == 0 { -Rat::one() } else { Rat::zero() };
        cons.push(Constraint { coeffs, sense, rhs });
    }
    let mut c = vec![Rat::zero(); nv];
    let two_n = Rat::from_integer(Int::one() << n);
    hat_coeff(0, &mut |col, sign| {
        c[col] = &two_n * sign;
    });
    let (optimum, x, pivots) = solve_min(&c, &cons, PIVOT_CAP)?;
    let mut hat = SymmetricProfile::zeros(n, Side::Fourier);
    for s in 0..=n {
        let mut val = Rat::zero();
        hat_coeff(s, &mut |col, sign| {
            let t = &x[col] * sign;
            val += t;
        });
        hat.set(s, val);
    }
    let lambda = cube.inverse(&hat)?;
    Ok(LpSolution { n, d, optimum, lambda, pivots })
}

/// LP optimum as a checked certificate plus a bound report.
pub fn lp_bound(cube: &Cube, d: usize) -> Result<(LpSolution, Certificate, BoundReport)> {
    let sol = lp_optimum(cube, d)?;
    let cert = Certificate::check(cube, d, sol.lambda.clone())?;
    if !cert.verdict.is_feasible() {
        return Err(Error::Mismatch(format!(
            "LP solution for (n, d) = ({}, {d}) failed the certificate check: {:?}",
            sol.n, cert.verdict
        )));
    }
    let mut report = cert.bound()?;
    if report.bound != sol.optimum {
        return Err(Error::Mismatch(format!(
            "certificate bound differs from LP optimum for (n, d) = ({}, {d})",
            sol.n
        )));
    }
    report.method = method::LP.to_string();
    Ok((sol, cert, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    /// Exact optima, indexed by d = 1..=n for each n.
    fn frozen_table() -> Vec<(usize, Vec<Rat>)> {
        vec![
            (1, vec![rat(2)]),
            (2, vec![rat(4), rat(2)]),
            (3, vec![rat(8), rat(4), rat(2)]),
            (4, vec![rat(16), rat(8), ratio(8, 3), rat(2)]),
            (5, vec![rat(32), rat(16), rat(4), ratio(8, 3), rat(2)]),
            (6, vec![rat(64), rat(32), rat(8), rat(4), ratio(12, 5), rat(2)]),
            (7, vec![rat(128), rat(64), rat(16), rat(8), rat(3), ratio(12, 5), rat(2)]),
            (
                8,
                vec![
                    rat(256),
                    rat(128),
                    ratio(128, 5),
                    rat(16),
                    rat(4),
                    rat(3),
                    ratio(16, 7),
                    rat(2),
                ],
            ),
        ]
    }

    #[test]
    fn point_form_matches_frozen_optima() {
        for (n, per_d) in frozen_table() {
            let cube = Cube::new(n);
            for (idx, want) in per_d.iter().enumerate() {
                let d = idx + 1;
                let sol = lp_optimum(&cube, d).unwrap();
                assert_eq!(&sol.optimum, want, "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn hat_form_agrees_with_point_form() {
        for n in 1..=6usize {
            let cube = Cube::new(n);
            for d in 1..=n {
                let p = lp_optimum(&cube, d).unwrap();
                let h = lp_optimum_hat(&cube, d).unwrap();
                assert_eq!(p.optimum, h.optimum, "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn optimum_is_a_feasible_certificate() {
        let cube = Cube::new(7);
        let (sol, cert, report) = lp_bound(&cube, 3).unwrap();
        assert_eq!(sol.optimum, rat(16)); // the Hamming code is LP-tight here
        assert!(cert.verdict.is_feasible());
        assert_eq!(report.bound, rat(16));
        assert_eq!(report.method, method::LP);
        assert!((report.rate - 4.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let cube = Cube::new(5);
        assert!(lp_optimum(&cube, 0).is_err());
        assert!(lp_optimum(&cube, 6).is_err());
    }

    #[test]
    fn generic_solver_handles_negative_rhs() {
        // min x subject to -x ≤ -3, i.e. x ≥ 3
        let c = vec![rat(1)];
        let cons = vec![Constraint {
            coeffs: vec![rat(-1)],
            sense: Sense::Le,
            rhs: rat(-3),
        }];
        let (opt, x, _) = solve_min(&c, &cons, 1000).unwrap();
        assert_eq!(opt, rat(3));
        assert_eq!(x[0], rat(3));
    }

    #[test]
    fn generic_solver_detects_infeasible_and_unbounded() {
        // x ≤ 1 and x ≥ 2 simultaneously
        let cons = vec![
            Constraint { coeffs: vec![rat(1)], sense: Sense::Le, rhs: rat(1) },
            Constraint { coeffs: vec![rat(-1)], sense: Sense::Le, rhs: rat(-2) },
        ];
        assert!(solve_min(&[rat(1)], &cons, 1000).is_err());
        // min -x with only x ≥ 2
        let cons = vec![Constraint {
            coeffs: vec![rat(-1)],
            sense: Sense::Le,
            rhs: rat(-2),
        }];
        assert!(solve_min(&[rat(-1)], &cons, 1000).is_err());
    }
}
