//! The closed-form spherical growth series.
//!
//! Every part of `Gamma` is a set of syllable words whose exponents on each
//! generator range over a window `-A_k..=B_k`, possibly with a generator `K`
//! forbidden at one or both ends. Those sets have rational generating
//! functions built from `f(A_k, B_k)`, and the growth series is a signed sum
//! of products of them.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::canonical::{
    boundary_generator, case_grid, case_windows, lowered_windows, CaseId, KWindow, Parity,
    Windows,
};
use crate::ratfun::{elem_sym_all, f_poly, g_denominator, Poly, RationalFunction};
use crate::word::{reindex, Presentation, Reindexing};

/// Per-generator windows `-A_k <= a <= B_k` and an optional generator `K`
/// that may not start (and for [`omega_kk`] also not end) a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSpec {
    pub windows: Vec<(u32, u32)>,
    pub k: Option<usize>,
}

impl WindowSpec {
    pub fn new(windows: Vec<(u32, u32)>) -> Self {
        Self { windows, k: None }
    }

    pub fn with_k(windows: Vec<(u32, u32)>, k: usize) -> Self {
        Self {
            windows,
            k: Some(k),
        }
    }

    fn from_signed(ws: &Windows, k: Option<usize>) -> Self {
        let conv = |x: i64| u32::try_from(x).expect("window bounds are nonnegative");
        Self {
            windows: ws.iter().map(|&(a, b)| (conv(a), conv(b))).collect(),
            k,
        }
    }

    fn k_or_panic(&self) -> usize {
        self.k.expect("window spec needs an excluded generator")
    }

    fn fs(&self) -> Vec<Poly> {
        self.windows.iter().map(|&(a, b)| f_poly(a, b)).collect()
    }
}

fn over_g(num: Poly, ws: &WindowSpec) -> RationalFunction {
    RationalFunction::new(num, g_denominator(&ws.windows)).expect("constant term is 1")
}

/// All window words: `prod (1 + f_k) * g`.
pub fn omega(ws: &WindowSpec) -> RationalFunction {
    let num = ws
        .fs()
        .iter()
        .fold(Poly::one(), |acc, f| &acc * &(&Poly::one() + f));
    over_g(num, ws)
}

/// Window words not starting with `K`: `prod_{k != K} (1 + f_k) * g`.
pub fn omega_k(ws: &WindowSpec) -> RationalFunction {
    let k = ws.k_or_panic();
    let num = ws
        .fs()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .fold(Poly::one(), |acc, (_, f)| &acc * &(&Poly::one() + f));
    over_g(num, ws)
}

/// Nonempty window words neither starting nor ending with `K`:
/// `sum_{i=1}^{n-1} i F^i(f with f_K = 0) * g`.
pub fn omega_kk(ws: &WindowSpec) -> RationalFunction {
    let k = ws.k_or_panic();
    let mut fs = ws.fs();
    fs[k] = Poly::zero();
    let e = elem_sym_all(&fs);
    let mut num = Poly::zero();
    for (i, ei) in e.iter().enumerate().take(fs.len()).skip(1) {
        num = &num + &ei.scale(&BigInt::from(i));
    }
    over_g(num, ws)
}

fn full_windows(pres: &Presentation) -> Vec<(u32, u32)> {
    (0..pres.n())
        .map(|g| {
            let b = pres.bounds(g);
            (b.minus as u32, b.plus as u32)
        })
        .collect()
}

fn t_pow(e: usize) -> Poly {
    Poly::monomial(BigInt::from(1), e)
}

/// `h(p^-, p^+) * t^p1 / (1 - t^p1)`; also the series of the type 2 part.
pub fn series_gamma1(pres: &Presentation) -> RationalFunction {
    let p1 = pres.p1() as usize;
    let geo = RationalFunction::new(t_pow(p1), &Poly::one() - &t_pow(p1)).expect("nonzero");
    omega(&WindowSpec::new(full_windows(pres))).mul(&geo)
}

/// `(h(p^-, p^+), h(p^-, p^-))`: the `Gamma_3+` part and its overlap with
/// `Gamma_3-`.
pub fn series_gamma3(pres: &Presentation) -> (RationalFunction, RationalFunction) {
    let full = full_windows(pres);
    let low: Vec<(u32, u32)> = full.iter().map(|&(a, _)| (a, a)).collect();
    (omega(&WindowSpec::new(full)), omega(&WindowSpec::new(low)))
}

/// Series of the words of one case of `Gamma_3^0`.
pub fn series_case(pres: &Presentation, reidx: &Reindexing, case: &CaseId) -> RationalFunction {
    let k = boundary_generator(reidx, case);
    let win = |kw| case_windows(pres, reidx, case.level, case.block, kw);
    match case.parity {
        Parity::Odd => {
            // K^-(K^- + N + 1) and K^(K^+ - N) together have length p_K.
            let head = RationalFunction::from_poly(t_pow(pres.order(k) as usize));
            let first = omega_k(&WindowSpec::from_signed(&win(KWindow::Half), Some(k)));
            let middle = omega_kk(&WindowSpec::from_signed(&win(KWindow::Closed), Some(k)));
            let last = omega_k(&WindowSpec::from_signed(&win(KWindow::Open), Some(k)));
            head.mul(&first).mul(&middle).mul(&last)
        }
        Parity::Even => {
            let closed = win(KWindow::Closed);
            let half = win(KWindow::Half);
            let h = |ws: &Windows| omega(&WindowSpec::from_signed(ws, None));
            let with_k = h(&closed).sub(&h(&half));
            let without_big = h(&lowered_windows(pres, &closed))
                .sub(&h(&lowered_windows(pres, &half)));
            with_k.sub(&without_big)
        }
    }
}

/// Sum of [`series_case`] over the whole case grid.
pub fn series_gamma30(pres: &Presentation, reidx: &Reindexing) -> RationalFunction {
    let parts: Vec<RationalFunction> = case_grid(pres, reidx)
        .par_iter()
        .map(|c| series_case(pres, reidx, c))
        .collect();
    sum_tree(parts)
}

/// Pairwise summation keeps intermediate denominators small.
fn sum_tree(mut parts: Vec<RationalFunction>) -> RationalFunction {
    if parts.is_empty() {
        return RationalFunction::zero();
    }
    while parts.len() > 1 {
        parts = parts
            .par_chunks(2)
            .map(|c| match c {
                [a, b] => a.add(b),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    parts.pop().expect("nonempty")
}

/// The per-class pieces of the growth series.
#[derive(Debug, Clone)]
pub struct SeriesParts {
    /// Type 1 elements; type 2 has the same series.
    pub gamma1: RationalFunction,
    pub gamma3plus: RationalFunction,
    pub gamma3plus_and_minus: RationalFunction,
    pub gamma30: RationalFunction,
}

impl SeriesParts {
    pub fn compute(pres: &Presentation) -> Self {
        let reidx = reindex(pres);
        let (gamma3plus, gamma3plus_and_minus) = series_gamma3(pres);
        Self {
            gamma1: series_gamma1(pres),
            gamma3plus,
            gamma3plus_and_minus,
            gamma30: series_gamma30(pres, &reidx),
        }
    }

    /// Type 3- elements that are not type 3+.
    pub fn gamma3minus_only(&self) -> RationalFunction {
        self.gamma3plus.sub(&self.gamma3plus_and_minus)
    }

    pub fn total(&self) -> RationalFunction {
        // 2 h / (1 - t^p1) = 2 (Gamma_1 + Gamma_3+).
        let two = RationalFunction::from_poly(Poly::from_i64s(&[2]));
        two.mul(&self.gamma1.add(&self.gamma3plus))
            .sub(&self.gamma3plus_and_minus)
            .add(&self.gamma30)
    }
}

/// The spherical growth series as one normalized rational function.
pub fn growth_series(pres: &Presentation) -> RationalFunction {
    SeriesParts::compute(pres).total()
}
