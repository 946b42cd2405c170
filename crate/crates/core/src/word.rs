//! Presentations, letters and the syllable (run-length) word model.
//!
//! Generator indices are 0-based in the API and 1-based in every textual
//! form, so `x1` is generator `0`.

use std::fmt;

use crate::error::{Error, Result};

/// The exponent tuple `(p1, ..., pn)` of `<x1..xn | x1^p1 = ... = xn^pn>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    p: Vec<u32>,
}

/// The half-window bounds `p_k^-` and `p_k^+` of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfBounds {
    pub minus: i64,
    pub plus: i64,
}

impl Presentation {
    /// Requires `n >= 2` and `2 <= p1 <= ... <= pn`.
    pub fn new(p: Vec<u32>) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::InvalidPresentation(format!(
                "need at least two generators, got {}",
                p.len()
            )));
        }
        if p[0] < 2 {
            return Err(Error::InvalidPresentation(format!(
                "exponents must be at least 2, got {}",
                p[0]
            )));
        }
        if p.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPresentation(format!(
                "exponents must be non-decreasing, got {p:?}"
            )));
        }
        Ok(Self { p })
    }

    /// Parses a comma-separated list such as `2,3,7`.
    pub fn parse(s: &str) -> Result<Self> {
        let p = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPresentation(format!("bad exponent {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p)
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[u32] {
        &self.p
    }

    /// `p_k` as a signed integer, for exponent arithmetic.
    pub fn order(&self, k: usize) -> i64 {
        i64::from(self.p[k])
    }

    pub fn p1(&self) -> i64 {
        i64::from(self.p[0])
    }

    /// Panicking variant of [`half_bounds`] for indices already known valid.
    pub fn bounds(&self, k: usize) -> HalfBounds {
        let (p1, pk) = (self.p1(), self.order(k));
        HalfBounds {
            minus: (pk - p1).div_euclid(2),
            plus: (p1 + pk - 1).div_euclid(2),
        }
    }

    pub(crate) fn check_gen(&self, k: usize) -> Result<()> {
        if k < self.n() {
            Ok(())
        } else {
            Err(Error::Argument(format!(
                "generator index {k} out of range for n = {}",
                self.n()
            )))
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.p.iter().map(u32::to_string).collect();
        write!(f, "G({})", parts.join(","))
    }
}

/// `(p_k^-, p_k^+) = (floor((p_k - p1)/2), floor((p1 + p_k - 1)/2))`.
pub fn half_bounds(pres: &Presentation, k: usize) -> Result<HalfBounds> {
    pres.check_gen(k)?;
    Ok(pres.bounds(k))
}

/// Whether a generator was relabelled `y` (even `p_k - p1`) or `z` (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    Y,
    Z,
}

/// The relabelling `x -> (y_1..y_m, z_{m+1}..z_n)` by parity of `p_k - p1`.
///
/// New indices are 0-based: `y` generators occupy `0..m` and `z` generators
/// `m..n`. Equal exponents keep their original relative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reindexing {
    pub m: usize,
    pub q: Vec<u32>,
    pub r: Vec<u32>,
    pub orig_of_q: Vec<usize>,
    pub orig_of_r: Vec<usize>,
    /// Original generator to new index.
    pub new_of_orig: Vec<usize>,
}

impl Reindexing {
    pub fn n(&self) -> usize {
        self.new_of_orig.len()
    }

    pub fn kind_of_new(&self, k: usize) -> GenKind {
        if k < self.m {
            GenKind::Y
        } else {
            GenKind::Z
        }
    }

    pub fn kind_of_orig(&self, g: usize) -> GenKind {
        self.kind_of_new(self.new_of_orig[g])
    }

    pub fn orig_of_new(&self, k: usize) -> usize {
        if k < self.m {
            self.orig_of_q[k]
        } else {
            self.orig_of_r[k - self.m]
        }
    }

    /// Writes a word in the relabelled alphabet, e.g. `z3^2 y2^-3 y1`.
    pub fn relabel(&self, w: &SyllableWord) -> String {
        let mut parts: Vec<String> = w
            .syllables
            .iter()
            .map(|s| {
                let k = self.new_of_orig[s.gen];
                let name = match self.kind_of_new(k) {
                    GenKind::Y => format!("y{}", k + 1),
                    GenKind::Z => format!("z{}", k + 1),
                };
                match s.exp {
                    1 => name,
                    e => format!("{name}^{e}"),
                }
            })
            .collect();
        match w.delta_pow {
            0 => {}
            1 => parts.push("D".into()),
            c => parts.push(format!("D^{c}")),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

pub fn reindex(pres: &Presentation) -> Reindexing {
    let p1 = pres.p1();
    let (mut ys, mut zs): (Vec<usize>, Vec<usize>) =
        (0..pres.n()).partition(|&k| (pres.order(k) - p1) % 2 == 0);
    // The input is sorted already, so a stable sort only documents intent.
    ys.sort_by_key(|&k| pres.p()[k]);
    zs.sort_by_key(|&k| pres.p()[k]);
    let m = ys.len();
    let mut new_of_orig = vec![0; pres.n()];
    for (i, &g) in ys.iter().chain(zs.iter()).enumerate() {
        new_of_orig[g] = i;
    }
    Reindexing {
        m,
        q: ys.iter().map(|&k| pres.p()[k]).collect(),
        r: zs.iter().map(|&k| pres.p()[k]).collect(),
        orig_of_q: ys,
        orig_of_r: zs,
        new_of_orig,
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self { gen, sign: 1 }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Self {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    /// All `2n` letters, ordered `x1, x1^-1, x2, x2^-1, ...`.
    pub fn alphabet(n: usize) -> Vec<Letter> {
        (0..n).flat_map(|k| [Letter::pos(k), Letter::neg(k)]).collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign > 0 {
            write!(f, "x{}", self.gen + 1)
        } else {
            write!(f, "x{}^-1", self.gen + 1)
        }
    }
}

/// One run `x_gen^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

impl Syllable {
    pub fn new(gen: usize, exp: i64) -> Self {
        Self { gen, exp }
    }
}

/// `x_{i1}^{a1} ... x_{it}^{at} * D^c` with adjacent generators distinct and
/// all exponents nonzero. `D` is the central element `x1^p1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SyllableWord {
    pub syllables: Vec<Syllable>,
    pub delta_pow: i64,
}

impl SyllableWord {
    /// Checks the syllable invariants.
    pub fn new(syllables: Vec<Syllable>, delta_pow: i64) -> Result<Self> {
        let w = Self {
            syllables,
            delta_pow,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.syllables.iter().find(|s| s.exp == 0) {
            return Err(Error::Argument(format!(
                "zero exponent on x{}",
                s.gen + 1
            )));
        }
        if self.syllables.windows(2).any(|w| w[0].gen == w[1].gen) {
            return Err(Error::Argument(
                "adjacent syllables share a generator".into(),
            ));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.delta_pow == 0
    }

    /// Word length `sum |a_j| + |c| * p1`.
    pub fn len(&self, pres: &Presentation) -> u64 {
        self.syllables
            .iter()
            .map(|s| s.exp.unsigned_abs())
            .sum::<u64>()
            + self.delta_pow.unsigned_abs() * pres.p1() as u64
    }

    /// Spells the word letter by letter, with `D^c` written as `x1^(c p1)`.
    pub fn to_letters(&self, pres: &Presentation) -> Vec<Letter> {
        let mut out = Vec::new();
        let runs = self
            .syllables
            .iter()
            .copied()
            .chain(std::iter::once(Syllable::new(0, self.delta_pow * pres.p1())));
        for s in runs {
            let l = if s.exp > 0 {
                Letter::pos(s.gen)
            } else {
                Letter::neg(s.gen)
            };
            out.extend(std::iter::repeat(l).take(s.exp.unsigned_abs() as usize));
        }
        out
    }

    /// Run-length form of a letter sequence. Adjacent inverse letters are
    /// kept as separate runs, so the result may violate the invariants when
    /// the input is not freely reduced.
    pub fn from_letters(letters: &[Letter]) -> Vec<Syllable> {
        let mut out: Vec<Syllable> = Vec::new();
        for l in letters {
            match out.last_mut() {
                Some(s) if s.gen == l.gen && s.exp.signum() == i64::from(l.sign) => {
                    s.exp += i64::from(l.sign)
                }
                _ => out.push(Syllable::new(l.gen, i64::from(l.sign))),
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
            delta_pow: -self.delta_pow,
        }
    }
}

impl fmt::Display for SyllableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_syllables(f, &self.syllables, self.delta_pow)
    }
}

pub(crate) fn write_syllables(
    f: &mut fmt::Formatter<'_>,
    syllables: &[Syllable],
    delta_pow: i64,
) -> fmt::Result {
    if syllables.is_empty() && delta_pow == 0 {
        return f.write_str("1");
    }
    let mut first = true;
    let mut sep = |f: &mut fmt::Formatter<'_>| {
        if !std::mem::take(&mut first) {
            f.write_str(" ")
        } else {
            Ok(())
        }
    };
    for s in syllables {
        sep(f)?;
        match s.exp {
            1 => write!(f, "x{}", s.gen + 1)?,
            e => write!(f, "x{}^{}", s.gen + 1, e)?,
        }
    }
    if delta_pow != 0 {
        sep(f)?;
        match delta_pow {
            1 => f.write_str("D")?,
            c => write!(f, "D^{c}")?,
        }
    }
    Ok(())
}

/// A parsed word: raw runs in input order plus the total power of `D`.
///
/// Runs are not merged or reduced; feed them to [`to_lambda_syllables`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedWord {
    pub runs: Vec<Syllable>,
    pub delta_pow: i64,
}

impl ParsedWord {
    pub fn to_letters(&self, pres: &Presentation) -> Vec<Letter> {
        // Runs may repeat a generator; spelling them out needs no invariant.
        SyllableWord {
            syllables: self.runs.iter().filter(|s| s.exp != 0).copied().collect(),
            delta_pow: self.delta_pow,
        }
        .to_letters(pres)
    }
}

/// Parses `x1^2 x3^-3 x1^-2 D^-3`. `1`, `e` or the empty string denote the
/// identity. Generator indices are checked against `pres`.
pub fn parse_word(pres: &Presentation, text: &str) -> Result<ParsedWord> {
    let mut w = ParsedWord::default();
    for tok in text.split_whitespace() {
        if tok == "1" || tok == "e" {
            continue;
        }
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        if base == "D" {
            w.delta_pow += exp;
            continue;
        }
        let idx = base
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i >= 1 && i <= pres.n())
            .ok_or_else(|| Error::Parse(format!("unknown generator in {tok:?}")))?;
        w.runs.push(Syllable::new(idx - 1, exp));
    }
    Ok(w)
}

/// Cancels adjacent `s s^-1` pairs.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// The lambda-form of a letter sequence.
pub fn to_lambda(pres: &Presentation, letters: &[Letter]) -> SyllableWord {
    to_lambda_syllables(
        pres,
        letters
            .iter()
            .map(|l| Syllable::new(l.gen, i64::from(l.sign))),
        0,
    )
}

/// The lambda-form of arbitrary runs times `D^delta_pow`.
///
/// A stack pass merges equal neighbours, which performs free reduction, and
/// pulls every full power `x_k^(+-p_k)` out as `D^(+-1)`. An emptied run lets
/// its neighbours meet on a later push, so one pass reaches the fixpoint.
pub fn to_lambda_syllables(
    pres: &Presentation,
    runs: impl IntoIterator<Item = Syllable>,
    delta_pow: i64,
) -> SyllableWord {
    let mut stack: Vec<Syllable> = Vec::new();
    let mut c = delta_pow;
    for s in runs {
        let mut a = s.exp;
        if let Some(top) = stack.last() {
            if top.gen == s.gen {
                a += top.exp;
                stack.pop();
            }
        }
        let p = pres.order(s.gen);
        c += a / p;
        a %= p;
        if a != 0 {
            stack.push(Syllable::new(s.gen, a));
        }
    }
    SyllableWord {
        syllables: stack,
        delta_pow: c,
    }
}
