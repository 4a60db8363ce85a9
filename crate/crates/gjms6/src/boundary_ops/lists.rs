//! Closed-form operator lists for special geometries: the flat half-space,
//! the unit ball, the round hemisphere, metrics in boundary normal form and
//! geodesic compactifications of Poincaré–Einstein spaces.

use super::calculus::{Acc, BoundaryCalculus, NPoly};
use crate::error::{Gjms6Error, Result};
use crate::rational::{q, q0, qi, rising, Q};

/// Which closed-form list to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListKind {
    Flat,
    Ball,
    Hemisphere,
    NormalForm,
}

/// Γ((n+1+2k)/2)/Γ((n−5)/2) for k ≥ 0.
fn gamma_block(n: i64, k: u32) -> Q {
    rising(&q(n - 5, 2), 3 + k)
}

/// Named coefficients of the normal-form list that are not fixed numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormCoeffs {
    pub b3_jbar_eta: Q,
    pub b4_jbar_lap: Q,
    pub b4_jbar_barlap: Q,
    pub b4_grad_jbar: Q,
    pub b5_jbar_eta_lap: Q,
    pub b5_jbar_barlap_eta: Q,
    pub b5_hess_j: Q,
    pub b5_grad_jbar_eta: Q,
    pub b5_lap_jbar: Q,
    pub b5_pbar_sq: Q,
    pub b5_jbar_sq: Q,
}

impl NormalFormCoeffs {
    pub fn new(n: i64) -> Self {
        let k = NPoly::new(n);
        NormalFormCoeffs {
            b3_jbar_eta: k.r(&[-4, 4], &[3]),
            b4_jbar_lap: k.r(&[-26, 10], &[3]),
            b4_jbar_barlap: -k.r(&[-40, 16], &[3]),
            b4_grad_jbar: -k.r(&[-4, 4], &[3]),
            b5_jbar_eta_lap: -k.r(&[-14, 6], &[3]),
            b5_jbar_barlap_eta: -k.r(&[-80, 32], &[9]),
            b5_hess_j: -k.p(&[-9, 1]),
            b5_grad_jbar_eta: -k.r(&[-220, 52], &[9]),
            b5_lap_jbar: -k.r(&[-152, 32], &[9]),
            b5_pbar_sq: -k.p(&[-32, 8]),
            b5_jbar_sq: k.r(&[40, -80, 16], &[9]),
        }
    }
}

/// B_j(u) from one of the closed-form lists.
pub fn apply_list<C: BoundaryCalculus + ?Sized>(c: &C, kind: ListKind, j: usize, u: &C::Field) -> Result<C::Bdry> {
    if j > 5 {
        return Err(Gjms6Error::OperatorIndex(j));
    }
    let n = c.dim();
    let r = c.restrict(u);
    if j == 0 {
        return Ok(r);
    }
    let e = c.eta(u);
    let lu = c.lap(u);
    let rl = c.restrict(&lu);
    let el = c.eta(&lu);
    let lr = c.bar_lap(&r);
    let le = c.bar_lap(&e);
    let mut a = Acc::new(c);
    // The leading parts common to every list.
    match j {
        1 => {
            a.add(&qi(1), &e);
        }
        2 => {
            a.add(&qi(1), &rl).add(&q(-4, 3), &lr);
        }
        3 => {
            a.add(&qi(1), &el).add(&qi(-4), &le);
        }
        4 => {
            let rl2 = c.restrict(&c.lap(&lu));
            a.add(&qi(-1), &rl2).add(&qi(-4), &c.bar_lap(&rl)).add(&qi(8), &c.bar_lap(&lr));
        }
        _ => {
            let el2 = c.eta(&c.lap(&lu));
            a.add(&qi(1), &el2).add(&q(4, 3), &c.bar_lap(&el)).add(&q(8, 3), &c.bar_lap(&le));
        }
    }
    let k = NPoly::new(n);
    match kind {
        ListKind::Flat => {}
        ListKind::Ball => match j {
            1 => {
                a.add(&k.r(&[-5, 1], &[2]), &r);
            }
            2 => {
                a.add(&qi(-4), &e).add(&k.r(&[15, -8, 1], &[3]), &r);
            }
            3 => {
                a.add(&k.r(&[-9, 1], &[2]), &rl)
                    .add(&-k.p(&[-14, 2]), &lr)
                    .add(&k.p(&[9, -2, 1]), &e)
                    .add(&(qi(4) * gamma_block(n, 0)), &r);
            }
            4 => {
                a.add(&qi(4), &el)
                    .add(&qi(16), &le)
                    .add(&k.p(&[-9, 0, 1]), &rl)
                    .add(&-k.p(&[4, -16, 4]), &lr)
                    .add(&-k.p(&[-12, -8, 4]), &e)
                    .add(&(qi(8) * gamma_block(n, 1)), &r);
            }
            _ => {
                let rl2 = c.restrict(&c.lap(&lu));
                a.add(&k.r(&[-5, 1], &[2]), &rl2)
                    .add(&k.r(&[-6, 2], &[3]), &c.bar_lap(&rl))
                    .add(&k.r(&[-4, 4], &[3]), &c.bar_lap(&lr))
                    .add(&-k.r(&[-15, -2, 1], &[3]), &el)
                    .add(&-k.r(&[-36, -8, 4], &[3]), &le)
                    .add(&-k.r(&[45, -9, -5, 1], &[6]), &rl)
                    .add(&-k.r(&[18, -14, -6, 2], &[3]), &lr)
                    .add(&k.r(&[45, 36, -14, -4, 1], &[6]), &e)
                    .add(&(q(8, 3) * gamma_block(n, 2)), &r);
            }
        },
        ListKind::Hemisphere => match j {
            1 => {}
            2 => {
                a.add(&k.r(&[15, -8, 1], &[12]), &r);
            }
            3 => {
                a.add(&k.r(&[13, -8, 3], &[4]), &e);
            }
            4 => {
                a.add(&k.r(&[-11, -4, 3], &[2]), &rl)
                    .add(&-k.p(&[-3, -8, 3]), &lr)
                    .add(&(qi(3) * k.p(&[-1, 0, 1]) * k.p(&[15, -8, 1]) / qi(16)), &r);
            }
            _ => {
                a.add(&-k.r(&[-45, -4, 5], &[6]), &el)
                    .add(&-k.r(&[-37, -8, 5], &[3]), &le)
                    .add(&(k.p(&[3, 4, 1]) * k.p(&[149, -100, 15]) / qi(48)), &e);
            }
        },
        ListKind::NormalForm => {
            let cv = c.curvature();
            let nf = NormalFormCoeffs::new(n);
            let jb = &cv.jbar;
            match j {
                1 | 2 => {}
                3 => {
                    a.add2(&nf.b3_jbar_eta, jb, &e);
                }
                4 => {
                    a.add(&qi(8), &c.div_pbar_grad(&r, jb))
                        .add2(&nf.b4_jbar_lap, jb, &rl)
                        .add2(&nf.b4_jbar_barlap, jb, &lr)
                        .add(&nf.b4_grad_jbar, &c.bar_grad_dot(jb, &r));
                }
                _ => {
                    a.add2(&nf.b5_jbar_eta_lap, jb, &el)
                        .add2(&nf.b5_jbar_barlap_eta, jb, &le)
                        .add(&qi(16), &c.div_pbar_grad(&e, jb))
                        .add(&qi(8), &c.eta_p_hess(u))
                        .add2(&nf.b5_hess_j, &cv.hess_j_nn, &e)
                        .add(&nf.b5_grad_jbar_eta, &c.bar_grad_dot(jb, &e))
                        .add2(&nf.b5_lap_jbar, &c.bar_lap(jb), &e)
                        .add2(&nf.b5_pbar_sq, &cv.pbar_sq, &e)
                        .add3(&nf.b5_jbar_sq, jb, jb, &e);
                }
            }
        }
    }
    Ok(a.value())
}

/// A boundary operator on a single boundary eigenmode (−Δ̄ = λ) written as
/// Σ_k c_k(λ) ∂_r^k u|_M with each c_k a polynomial in λ.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeStencil {
    /// `terms[k]` holds the ascending λ-coefficients multiplying ∂_r^k u.
    pub terms: Vec<Vec<Q>>,
}

impl ModeStencil {
    fn zero(order: usize) -> Self {
        ModeStencil { terms: vec![Vec::new(); order + 1] }
    }

    fn add_term(&mut self, k: usize, poly: &[Q]) {
        let t = &mut self.terms[k];
        if t.len() < poly.len() {
            t.resize(poly.len(), q0());
        }
        for (i, c) in poly.iter().enumerate() {
            t[i] += c;
        }
    }

    /// Stencil coefficients at a given eigenvalue.
    pub fn at(&self, lambda: &Q) -> Vec<Q> {
        self.terms
            .iter()
            .map(|p| {
                let mut s = q0();
                for c in p.iter().rev() {
                    s = s * lambda + c;
                }
                s
            })
            .collect()
    }

    /// Σ_k c_k(λ) r_k for normal derivatives r_k = ∂_r^k u(0).
    pub fn apply(&self, lambda: &Q, jets: &[Q]) -> Q {
        self.at(lambda).iter().zip(jets).map(|(c, r)| c * r).sum()
    }
}

fn lin(c0: Q, c1: Q) -> Vec<Q> {
    vec![c0, c1]
}

fn pmul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![q0(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pscale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

/// The six operators for a geodesic compactification with round boundary
/// (J̄ = n/2, P̄ = ½ḡ) as per-mode stencils in ∂_r.
pub fn geodesic_forms(n: i64) -> Result<Vec<ModeStencil>> {
    if n < 5 {
        return Err(Gjms6Error::InvalidDimension(n));
    }
    let jbar = q(n, 2);
    let pbar_sq = q(n, 4);
    // −Δ̄ + a·J̄ on a mode is λ + a·J̄.
    let shifted = |a: Q| lin(a * &jbar, qi(1));
    // δ̄(2P̄ − J̄ḡ)d̄ + J̄Δ̄ − s|P̄|² reduces to Δ̄ − s|P̄|².
    let l4 = |s: Q| lin(-(s * &pbar_sq), qi(-1));
    let one = vec![qi(1)];
    let mut out = Vec::with_capacity(6);
    let mut b0 = ModeStencil::zero(0);
    b0.add_term(0, &one);
    out.push(b0);
    let mut b1 = ModeStencil::zero(1);
    b1.add_term(1, &[qi(-1)]);
    out.push(b1);
    let mut b2 = ModeStencil::zero(2);
    b2.add_term(2, &one);
    b2.add_term(0, &pscale(&shifted(q(n - 5, 2)), &q(1, 3)));
    out.push(b2);
    let mut b3 = ModeStencil::zero(3);
    b3.add_term(3, &[qi(-1)]);
    b3.add_term(1, &pscale(&shifted(q(n - 3, 2)), &qi(-3)));
    out.push(b3);
    let mut b4 = ModeStencil::zero(4);
    b4.add_term(4, &[qi(-1)]);
    b4.add_term(2, &pscale(&shifted(q(n - 1, 2)), &qi(6)));
    b4.add_term(0, &pscale(&pmul(&shifted(q(n - 1, 2)), &shifted(q(n - 5, 2))), &qi(3)));
    b4.add_term(0, &pscale(&l4(q(n - 5, 2)), &qi(3)));
    out.push(b4);
    let mut b5 = ModeStencil::zero(5);
    b5.add_term(5, &[qi(-1)]);
    b5.add_term(3, &pscale(&shifted(q(n + 1, 2)), &q(10, 3)));
    b5.add_term(1, &pscale(&pmul(&shifted(q(n + 1, 2)), &shifted(q(n - 3, 2))), &qi(-5)));
    b5.add_term(1, &pscale(&l4(q(n - 3, 2)), &qi(-15)));
    out.push(b5);
    Ok(out)
}

/// The simplified list valid for metrics in boundary normal form, returned as
/// its n-dependent coefficients; evaluate with [`apply_list`].
pub fn normal_form_operators(n: i64) -> Result<NormalFormCoeffs> {
    if n < 5 {
        return Err(Gjms6Error::InvalidDimension(n));
    }
    Ok(NormalFormCoeffs::new(n))
}
