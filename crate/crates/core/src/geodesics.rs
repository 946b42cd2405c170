//! Element types, geodesic length and the suitable-spread procedure.
//!
//! Spreading position `j` rewrites `x^a * D^-1` as `x^(a - p)`, which is
//! shorter by the weight `2a + p1 - p` whenever `a > p^-`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::normal_forms::{canonical_key, r_nu, ModifiedNF};
use crate::word::{Letter, Presentation, Syllable, SyllableWord};

/// The five-way classification of group elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    T1,
    T2,
    T3Plus,
    T3MinusNotPlus,
    T3Zero,
}

impl TypeTag {
    pub const ALL: [TypeTag; 5] = [
        TypeTag::T1,
        TypeTag::T2,
        TypeTag::T3Plus,
        TypeTag::T3MinusNotPlus,
        TypeTag::T3Zero,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_type3(self) -> bool {
        matches!(
            self,
            TypeTag::T3Plus | TypeTag::T3MinusNotPlus | TypeTag::T3Zero
        )
    }

    /// Tag from `d + rho` and `r_nu` alone.
    pub fn from_parts(delta_pow: i64, r_nu: usize) -> Self {
        match delta_pow {
            d if d > 0 => TypeTag::T1,
            0 => TypeTag::T3Plus,
            d => {
                let delta = d.unsigned_abs() as usize;
                match r_nu.cmp(&delta) {
                    std::cmp::Ordering::Less => TypeTag::T2,
                    std::cmp::Ordering::Equal => TypeTag::T3MinusNotPlus,
                    std::cmp::Ordering::Greater => TypeTag::T3Zero,
                }
            }
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::T1 => "type 1",
            TypeTag::T2 => "type 2",
            TypeTag::T3Plus => "type 3+",
            TypeTag::T3MinusNotPlus => "type 3- (not 3+)",
            TypeTag::T3Zero => "type 3^0",
        })
    }
}

pub fn classify(pres: &Presentation, mnf: &ModifiedNF) -> TypeTag {
    TypeTag::from_parts(mnf.delta_pow, r_nu(pres, mnf).r_nu)
}

/// Per-generator maxima of positive exponents and of negated negative ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosNegProfile {
    pub pos: Vec<i64>,
    pub neg: Vec<i64>,
}

impl PosNegProfile {
    /// The largest `Pos_k + Neg_k'` compared against `(p_k + p_k')/2`:
    /// returns `(all <=, any ==)` over all pairs, computed on doubled values.
    pub fn inequality_status(&self, pres: &Presentation) -> (bool, bool) {
        let n = pres.n();
        let (mut holds, mut tight) = (true, false);
        for k in 0..n {
            for kk in 0..n {
                let lhs = 2 * (self.pos[k] + self.neg[kk]);
                let rhs = pres.order(k) + pres.order(kk);
                holds &= lhs <= rhs;
                tight |= lhs == rhs;
            }
        }
        (holds, tight)
    }
}

pub fn pos_neg(pres: &Presentation, word: &SyllableWord) -> Result<PosNegProfile> {
    if word.delta_pow != 0 {
        return Err(Error::Argument(
            "Pos/Neg profiles are defined for words without a D factor".into(),
        ));
    }
    let mut prof = PosNegProfile {
        pos: vec![0; pres.n()],
        neg: vec![0; pres.n()],
    };
    for s in &word.syllables {
        pres.check_gen(s.gen)?;
        if s.exp > 0 {
            prof.pos[s.gen] = prof.pos[s.gen].max(s.exp);
        } else {
            prof.neg[s.gen] = prof.neg[s.gen].max(-s.exp);
        }
    }
    Ok(prof)
}

/// Length saving from spreading syllable `s`.
pub fn spread_weight(pres: &Presentation, s: Syllable) -> i64 {
    2 * s.exp + pres.p1() - pres.order(s.gen)
}

/// Word length of a geodesic for the element with this normal form.
pub fn geodesic_length(pres: &Presentation, mnf: &ModifiedNF) -> u64 {
    let base = mnf.len(pres);
    if mnf.delta_pow >= 0 {
        return base;
    }
    let delta = mnf.delta_pow.unsigned_abs() as usize;
    let mut w: Vec<i64> = r_nu(pres, mnf)
        .r_set
        .iter()
        .map(|&j| spread_weight(pres, mnf.syllables[j]))
        .collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    let saved: i64 = w.iter().take(delta).sum();
    base - saved as u64
}

pub fn is_geodesic(pres: &Presentation, letters: &[Letter]) -> bool {
    letters.len() as u64 == geodesic_length(pres, &canonical_key(pres, letters))
}

/// A maximizing choice of spread positions (0-based, increasing).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpreadChoice {
    pub positions: Vec<usize>,
}

/// All maximizing choices, or the first `cap` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeSet {
    pub choices: Vec<SpreadChoice>,
    pub count: BigUint,
    pub truncated: bool,
}

/// Spreads the given positions of `mnf`, absorbing one `D^-1` each.
pub fn apply_spread(pres: &Presentation, mnf: &ModifiedNF, positions: &[usize]) -> SyllableWord {
    let mut w = mnf.as_word();
    for &j in positions {
        let s = &mut w.syllables[j];
        s.exp -= pres.order(s.gen);
    }
    w.delta_pow += positions.len() as i64;
    w
}

pub fn enumerate_ce(pres: &Presentation, mnf: &ModifiedNF, cap: Option<usize>) -> Result<CeSet> {
    let tag = classify(pres, mnf);
    if tag != TypeTag::T3Zero {
        return Err(Error::Argument(format!(
            "maximizing spread choices need a type 3^0 element, got {tag}"
        )));
    }
    let delta = mnf.delta_pow.unsigned_abs() as usize;
    let r = r_nu(pres, mnf).r_set;
    let weight = |j: usize| spread_weight(pres, mnf.syllables[j]);
    let mut sorted: Vec<i64> = r.iter().map(|&j| weight(j)).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let threshold = sorted[delta - 1];
    let forced: Vec<usize> = r.iter().copied().filter(|&j| weight(j) > threshold).collect();
    let ties: Vec<usize> = r.iter().copied().filter(|&j| weight(j) == threshold).collect();
    let need = delta - forced.len();
    let count = binomial(ties.len(), need);
    let limit = cap.unwrap_or(usize::MAX);

    let mut choices = Vec::new();
    let mut idx: Vec<usize> = (0..need).collect();
    loop {
        if choices.len() >= limit {
            break;
        }
        let mut positions = forced.clone();
        positions.extend(idx.iter().map(|&i| ties[i]));
        positions.sort_unstable();
        choices.push(SpreadChoice { positions });
        if !next_combination(&mut idx, ties.len()) {
            break;
        }
    }
    choices.sort();
    let truncated = BigUint::from(choices.len()) < count;
    Ok(CeSet {
        choices,
        count,
        truncated,
    })
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for t in i + 1..k {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// The outputs of the suitable-spread procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadSet {
    pub words: Vec<SyllableWord>,
    pub count: BigUint,
    pub truncated: bool,
}

pub fn suitable_spread(pres: &Presentation, mnf: &ModifiedNF, cap: Option<usize>) -> SpreadSet {
    let single = |w: SyllableWord| SpreadSet {
        words: vec![w],
        count: BigUint::one(),
        truncated: false,
    };
    if mnf.delta_pow >= 0 {
        return single(mnf.as_word());
    }
    let r = r_nu(pres, mnf);
    if r.r_nu <= mnf.delta_pow.unsigned_abs() as usize {
        return single(apply_spread(pres, mnf, &r.r_set));
    }
    let ce = enumerate_ce(pres, mnf, cap).expect("type 3^0 by the checks above");
    SpreadSet {
        words: ce
            .choices
            .iter()
            .map(|c| apply_spread(pres, mnf, &c.positions))
            .collect(),
        count: ce.count,
        truncated: ce.truncated,
    }
}
