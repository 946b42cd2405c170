//! The canonical geodesic of every element and the set `Gamma` of all of them.
//!
//! Spread candidates of a type 3^0 element fall into blocks `Z_k[l]` and
//! `Y_k[l]`: the positions whose exponent sits `l` below the top of their
//! window. All positions of one block share a spread weight, and the global
//! block order
//!
//! ```text
//! Z_n[0] .. Z_{m+1}[0] Y_m[0] .. Y_1[0] Z_n[1] .. Y_1[1] .. Z_{m+1}[p1-1]
//! ```
//!
//! never increases the weight. The canonical output spreads the first
//! `delta` positions in that order, leftmost first inside a block.
//!
//! A block is addressed by its level `N` and its block index `M`, where
//! index `M` holds the generator with new index `n - M` (1-based). Levels of
//! `y` blocks stop at `p1 - 2`, levels of `z` blocks at `p1 - 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::geodesics::{apply_spread, classify, TypeTag};
use crate::normal_forms::{r_nu, ModifiedNF};
use crate::word::{GenKind, Presentation, Reindexing, SyllableWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    /// `delta` falls strictly inside a block: slot `2M + 1`.
    Odd,
    /// `delta` ends exactly at a block: slot `2M + 2`.
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// Some `p_k - p1` is odd (`m < n`).
    Mixed,
    /// Every `p_k - p1` is even (`m = n`).
    AllEven,
}

/// One cell `(N, 2M+1)` or `(N, 2M+2)` of the case partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseId {
    pub level: usize,
    pub block: usize,
    pub parity: Parity,
    pub regime: Regime,
}

impl CaseId {
    pub fn slot(&self) -> usize {
        match self.parity {
            Parity::Odd => 2 * self.block + 1,
            Parity::Even => 2 * self.block + 2,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case(N={},slot={})", self.level, self.slot())
    }
}

fn regime(reidx: &Reindexing) -> Regime {
    if reidx.m == reidx.n() {
        Regime::AllEven
    } else {
        Regime::Mixed
    }
}

/// New (0-based) generator index held by block index `block`.
fn new_of_block(reidx: &Reindexing, block: usize) -> usize {
    reidx.n() - 1 - block
}

/// All `(level, block)` pairs in the global block order.
pub fn block_sequence(pres: &Presentation, reidx: &Reindexing) -> Vec<(usize, usize)> {
    let p1 = pres.p1() as usize;
    let n = reidx.n();
    let mut seq = Vec::new();
    for level in 0..p1 {
        for block in 0..n {
            let top = match reidx.kind_of_new(new_of_block(reidx, block)) {
                GenKind::Y => p1 - 1,
                GenKind::Z => p1,
            };
            if level < top {
                seq.push((level, block));
            }
        }
    }
    seq
}

/// Every case of the partition, in block order with the odd case first.
///
/// An even case needs a later block to exist, since `delta < r_nu`.
pub fn case_grid(pres: &Presentation, reidx: &Reindexing) -> Vec<CaseId> {
    let seq = block_sequence(pres, reidx);
    let reg = regime(reidx);
    let mut out = Vec::new();
    for (i, &(level, block)) in seq.iter().enumerate() {
        out.push(CaseId {
            level,
            block,
            parity: Parity::Odd,
            regime: reg,
        });
        if i + 1 < seq.len() {
            out.push(CaseId {
                level,
                block,
                parity: Parity::Even,
                regime: reg,
            });
        }
    }
    out
}

/// Spread candidates grouped by generator and level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Buckets {
    /// `y[k][l]`: positions with generator `y_{k+1}` and exponent `q^+ - l`.
    pub y: Vec<Vec<Vec<usize>>>,
    /// `z[k - m][l]`: positions with generator `z_{k+1}` and exponent `r^+ - l`.
    pub z: Vec<Vec<Vec<usize>>>,
    pub y_count: Vec<usize>,
    pub z_count: Vec<usize>,
}

impl Buckets {
    fn block(&self, reidx: &Reindexing, level: usize, block: usize) -> &[usize] {
        let k = new_of_block(reidx, block);
        if k < reidx.m {
            &self.y[k][level]
        } else {
            &self.z[k - reidx.m][level]
        }
    }
}

pub fn buckets(pres: &Presentation, reidx: &Reindexing, mnf: &ModifiedNF) -> Buckets {
    let p1 = pres.p1() as usize;
    let m = reidx.m;
    let mut b = Buckets {
        y: vec![vec![Vec::new(); p1 - 1]; m],
        z: vec![vec![Vec::new(); p1]; reidx.n() - m],
        y_count: vec![0; p1 - 1],
        z_count: vec![0; p1],
    };
    for j in r_nu(pres, mnf).r_set {
        let s = mnf.syllables[j];
        let level = (pres.bounds(s.gen).plus - s.exp) as usize;
        let k = reidx.new_of_orig[s.gen];
        if k < m {
            b.y[k][level].push(j);
            b.y_count[level] += 1;
        } else {
            b.z[k - m][level].push(j);
            b.z_count[level] += 1;
        }
    }
    b
}

/// Spread positions in canonical order: block order, then left to right.
fn canonical_order(pres: &Presentation, reidx: &Reindexing, b: &Buckets) -> Vec<usize> {
    block_sequence(pres, reidx)
        .into_iter()
        .flat_map(|(level, block)| b.block(reidx, level, block).iter().copied())
        .collect()
}

/// Locates `delta` for a type 3^0 element. The offset inside the block is
/// returned for odd cases (it is `phi` for `z` blocks and `psi` for `y`).
pub fn locate_case(
    pres: &Presentation,
    reidx: &Reindexing,
    mnf: &ModifiedNF,
) -> Result<(CaseId, Option<usize>)> {
    let tag = classify(pres, mnf);
    if tag != TypeTag::T3Zero {
        return Err(Error::Argument(format!(
            "case location needs a type 3^0 element, got {tag}"
        )));
    }
    let b = buckets(pres, reidx, mnf);
    let delta = mnf.delta_pow.unsigned_abs() as usize;
    locate_delta(pres, reidx, &b, delta)
        .ok_or_else(|| Error::Argument(format!("delta = {delta} is not inside (0, r_nu)")))
}

/// The case bracketing `delta` for the given buckets, if `0 < delta < r_nu`.
pub fn locate_delta(
    pres: &Presentation,
    reidx: &Reindexing,
    b: &Buckets,
    delta: usize,
) -> Option<(CaseId, Option<usize>)> {
    let seq = block_sequence(pres, reidx);
    let total: usize = seq.iter().map(|&(l, k)| b.block(reidx, l, k).len()).sum();
    if delta == 0 || delta >= total {
        return None;
    }
    let reg = regime(reidx);
    let mut before = 0;
    for (level, block) in seq {
        let size = b.block(reidx, level, block).len();
        if size == 0 {
            continue;
        }
        let case = |parity| CaseId {
            level,
            block,
            parity,
            regime: reg,
        };
        if delta < before + size {
            return Some((case(Parity::Odd), Some(delta - before)));
        }
        if delta == before + size {
            return Some((case(Parity::Even), None));
        }
        before += size;
    }
    None
}

/// The canonical geodesic of the element with normal form `mnf`.
pub fn canonical_spread(pres: &Presentation, reidx: &Reindexing, mnf: &ModifiedNF) -> SyllableWord {
    if mnf.delta_pow >= 0 {
        return mnf.as_word();
    }
    let delta = mnf.delta_pow.unsigned_abs() as usize;
    let order = canonical_order(pres, reidx, &buckets(pres, reidx, mnf));
    let mut chosen: Vec<usize> = order.into_iter().take(delta).collect();
    chosen.sort_unstable();
    apply_spread(pres, mnf, &chosen)
}

/// Exponent windows `-A_k <= a <= B_k`, indexed by original generator.
pub type Windows = Vec<(i64, i64)>;

/// How the boundary generator `K` of a case is bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KWindow {
    /// `(K^- + N, K^+ - N - 1)`: before the first special syllable.
    Half,
    /// `(K^- + N + 1, K^+ - N - 1)`: level `N` of `K` fully spread.
    Closed,
    /// `(K^- + N, K^+ - N)`: level `N` of `K` untouched.
    Open,
}

/// Windows of case `(level, block)`: blocks before `block` are closed at
/// this level, blocks after it are open, and `K` itself follows `kw`.
pub fn case_windows(
    pres: &Presentation,
    reidx: &Reindexing,
    level: usize,
    block: usize,
    kw: KWindow,
) -> Windows {
    let n = level as i64;
    (0..pres.n())
        .map(|g| {
            let b = pres.bounds(g);
            let open = (b.minus + n, b.plus - n);
            let closed = (b.minus + n + 1, b.plus - n - 1);
            let gb = reidx.n() - 1 - reidx.new_of_orig[g];
            match gb.cmp(&block) {
                std::cmp::Ordering::Less => closed,
                std::cmp::Ordering::Greater => open,
                std::cmp::Ordering::Equal => match kw {
                    KWindow::Half => (b.minus + n, b.plus - n - 1),
                    KWindow::Closed => closed,
                    KWindow::Open => open,
                },
            }
        })
        .collect()
}

/// The same windows with every upper bound lowered to `p^-`.
pub fn lowered_windows(pres: &Presentation, ws: &Windows) -> Windows {
    ws.iter()
        .enumerate()
        .map(|(g, &(a, _))| (a, pres.bounds(g).minus))
        .collect()
}

/// Original generator acting as `K` in a case.
pub fn boundary_generator(reidx: &Reindexing, case: &CaseId) -> usize {
    reidx.orig_of_new(new_of_block(reidx, case.block))
}

/// Which parts of `Gamma` contain a word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GammaMembership {
    pub gamma1: bool,
    pub gamma2: bool,
    pub gamma3plus: bool,
    pub gamma3minus: bool,
    pub gamma30: Vec<CaseId>,
}

impl GammaMembership {
    /// Number of classes hit, with `Gamma_3+ u Gamma_3-` counted once.
    pub fn class_count(&self) -> usize {
        usize::from(self.gamma1)
            + usize::from(self.gamma2)
            + usize::from(self.gamma3plus || self.gamma3minus)
            + self.gamma30.len()
    }

    pub fn is_member(&self) -> bool {
        self.class_count() > 0
    }
}

impl fmt::Display for GammaMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.gamma1 {
            parts.push("Gamma_1".into());
        }
        if self.gamma2 {
            parts.push("Gamma_2".into());
        }
        match (self.gamma3plus, self.gamma3minus) {
            (true, true) => parts.push("Gamma_3+ and Gamma_3-".into()),
            (true, false) => parts.push("Gamma_3+".into()),
            (false, true) => parts.push("Gamma_3-".into()),
            _ => {}
        }
        for c in &self.gamma30 {
            parts.push(format!("Gamma_3^0 {c}"));
        }
        if parts.is_empty() {
            f.write_str("not in Gamma")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

fn within(word: &[crate::word::Syllable], ws: &Windows) -> bool {
    word.iter().all(|s| {
        let (a, b) = ws[s.gen];
        -a <= s.exp && s.exp <= b
    })
}

/// Evaluates the defining conditions of every part of `Gamma`.
pub fn gamma_membership(
    pres: &Presentation,
    reidx: &Reindexing,
    word: &SyllableWord,
) -> GammaMembership {
    let mut out = GammaMembership::default();
    if word.validate().is_err() || word.syllables.iter().any(|s| s.gen >= pres.n()) {
        return out;
    }
    let bounds: Vec<_> = (0..pres.n()).map(|g| pres.bounds(g)).collect();
    let upper: Windows = bounds.iter().map(|b| (b.minus, b.plus)).collect();
    let lower: Windows = bounds.iter().map(|b| (b.plus, b.minus)).collect();
    let syl = &word.syllables;
    let c = word.delta_pow;
    out.gamma1 = c > 0 && within(syl, &upper);
    out.gamma2 = c < 0 && within(syl, &lower);
    if c != 0 {
        return out;
    }
    out.gamma3plus = within(syl, &upper);
    out.gamma3minus = within(syl, &lower);
    for case in case_grid(pres, reidx) {
        if in_gamma30_case(pres, reidx, syl, &case) {
            out.gamma30.push(case);
        }
    }
    out
}

fn in_gamma30_case(
    pres: &Presentation,
    reidx: &Reindexing,
    syl: &[crate::word::Syllable],
    case: &CaseId,
) -> bool {
    let k = boundary_generator(reidx, case);
    let kb = pres.bounds(k);
    let n = case.level as i64;
    let low = -(kb.minus + n + 1);
    let win = |kw| case_windows(pres, reidx, case.level, case.block, kw);
    match case.parity {
        Parity::Even => {
            within(syl, &win(KWindow::Closed))
                && syl.iter().any(|s| s.gen == k && s.exp == low)
                && syl.iter().any(|s| s.exp > pres.bounds(s.gen).minus)
        }
        Parity::Odd => {
            let high = kb.plus - n;
            let (w1, w2, w3) = (win(KWindow::Half), win(KWindow::Closed), win(KWindow::Open));
            (0..syl.len())
                .filter(|&i| syl[i].gen == k && syl[i].exp == low)
                .any(|i| {
                    within(&syl[..i], &w1)
                        && (i + 2..syl.len())
                            .filter(|&j| syl[j].gen == k && syl[j].exp == high)
                            .any(|j| within(&syl[i + 1..j], &w2) && within(&syl[j + 1..], &w3))
                })
        }
    }
}
