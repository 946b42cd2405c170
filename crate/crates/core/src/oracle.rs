//! Brute-force ground truth from the Cayley graph.
//!
//! Elements are stored as modified normal forms packed into an integer:
//!
//! ```text
//! bits 0..a        number of syllables
//! bits a..a+b      delta power, offset to be nonnegative
//! bits a+b..       one code per syllable, code 0 unused
//! ```
//!
//! Right multiplication by a letter touches only the last syllable, so the
//! BFS never unpacks a key. Neighbours of sphere `l` lie in spheres `l - 1`,
//! `l` and `l + 1`, so two stored spheres suffice, and the last sphere is
//! only counted. Field widths are sized to the search radius so that most
//! searches fit `u64` keys.

use std::fmt::Write as _;
use std::hash::Hash;

use hashbrown::HashMap;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::geodesics::TypeTag;
use crate::normal_forms::ModifiedNF;
use crate::word::{Letter, Presentation, Syllable, SyllableWord};

/// Storage type of packed keys.
trait PackedKey: Copy + Eq + Hash + Send + Sync {
    fn pack(wide: u128) -> Self;
    fn wide(self) -> u128;
}

impl PackedKey for u64 {
    fn pack(wide: u128) -> Self {
        wide as u64
    }
    fn wide(self) -> u128 {
        u128::from(self)
    }
}

impl PackedKey for u128 {
    fn pack(wide: u128) -> Self {
        wide
    }
    fn wide(self) -> u128 {
        self
    }
}

/// Result of putting a letter on a syllable: its new code (0 when it
/// cancels) and the change of the delta power.
#[derive(Debug, Clone, Copy)]
struct Step {
    code: u32,
    ddelta: i8,
}

fn bit_width(x: u64) -> u32 {
    u64::BITS - x.leading_zeros()
}

/// Packs modified normal forms into integer keys.
#[derive(Debug, Clone)]
pub struct KeyCodec {
    bits: u32,
    tau_bits: u32,
    delta_bits: u32,
    max_syllables: usize,
    /// `(gen, exp)` of every code, index 0 unused.
    table: Vec<Syllable>,
    in_r: Vec<bool>,
    alphabet: Vec<Letter>,
    /// `merge[c * 2n + i]`: letter `i` on a syllable with code `c` and the
    /// same generator.
    merge: Vec<Step>,
    /// `fresh[i]`: letter `i` starting a new syllable.
    fresh: Vec<Step>,
}

impl KeyCodec {
    /// A roomy layout: up to 255 syllables (as many as fit in 128 bits) and
    /// delta powers of absolute value below `2^15`.
    pub fn new(pres: &Presentation) -> Self {
        Self::with_layout(pres, 8, 16, 128)
    }

    /// The tightest layout for elements within distance `radius`, in a key
    /// of `width` bits. Elements outside it make [`KeyCodec::mul`] fail
    /// rather than wrap.
    pub fn for_radius(pres: &Presentation, radius: usize, width: u32) -> Self {
        let r = radius as u64 + 1;
        Self::with_layout(pres, bit_width(r), bit_width(r) + 1, width)
    }

    fn with_layout(pres: &Presentation, tau_bits: u32, delta_bits: u32, width: u32) -> Self {
        let mut table = vec![Syllable::new(0, 0)];
        let mut in_r = vec![false];
        let mut code_of = std::collections::HashMap::new();
        for g in 0..pres.n() {
            let b = pres.bounds(g);
            for e in (-b.minus..=b.plus).filter(|&e| e != 0) {
                code_of.insert((g, e), table.len() as u32);
                table.push(Syllable::new(g, e));
                in_r.push(e > b.minus);
            }
        }
        let alphabet = Letter::alphabet(pres.n());
        // Same reduction as the modified normal form's right multiplication.
        let step = |g: usize, e: i64| {
            let b = pres.bounds(g);
            let (e, dd) = if e > b.plus {
                (e - pres.order(g), 1)
            } else if e < -b.minus {
                (e + pres.order(g), -1)
            } else {
                (e, 0)
            };
            Step {
                code: if e == 0 { 0 } else { code_of[&(g, e)] },
                ddelta: dd,
            }
        };
        let mut merge = Vec::with_capacity(table.len() * alphabet.len());
        for s in &table {
            for a in &alphabet {
                merge.push(if s.exp != 0 && s.gen == a.gen {
                    step(a.gen, s.exp + i64::from(a.sign))
                } else {
                    Step { code: 0, ddelta: 0 }
                });
            }
        }
        let fresh = alphabet.iter().map(|a| step(a.gen, i64::from(a.sign))).collect();
        let bits = bit_width(table.len() as u64 - 1);
        let room = ((width - tau_bits - delta_bits) / bits) as usize;
        Self {
            bits,
            tau_bits,
            delta_bits,
            max_syllables: room.min((1 << tau_bits) - 1),
            table,
            in_r,
            alphabet,
            merge,
            fresh,
        }
    }

    fn header_bits(&self) -> u32 {
        self.tau_bits + self.delta_bits
    }

    fn delta_offset(&self) -> i64 {
        1 << (self.delta_bits - 1)
    }

    pub fn identity(&self) -> u128 {
        (self.delta_offset() as u128) << self.tau_bits
    }

    /// Longest normal form a key can hold.
    pub fn max_syllables(&self) -> usize {
        self.max_syllables
    }

    fn code(&self, s: Syllable) -> u128 {
        self.table
            .iter()
            .position(|&t| t == s)
            .expect("exponent inside the window") as u128
    }

    fn len_of(&self, key: u128) -> usize {
        (key & ((1 << self.tau_bits) - 1)) as usize
    }

    fn delta_of(&self, key: u128) -> i64 {
        ((key >> self.tau_bits) & ((1 << self.delta_bits) - 1)) as i64 - self.delta_offset()
    }

    fn shift(&self, j: usize) -> usize {
        (self.header_bits() + j as u32 * self.bits) as usize
    }

    fn code_at(&self, key: u128, j: usize) -> usize {
        ((key >> self.shift(j)) & ((1 << self.bits) - 1)) as usize
    }

    fn pack_header(&self, body: u128, tau: usize, delta: i64) -> Option<u128> {
        let d = delta + self.delta_offset();
        if !(0..1 << self.delta_bits).contains(&d) || tau > self.max_syllables {
            return None;
        }
        Some(body | (d as u128) << self.tau_bits | tau as u128)
    }

    pub fn encode(&self, mnf: &ModifiedNF) -> Option<u128> {
        let mut body = 0;
        for (j, s) in mnf.syllables.iter().enumerate().take(self.max_syllables) {
            body |= self.code(*s) << self.shift(j);
        }
        self.pack_header(body, mnf.syllables.len(), mnf.delta_pow)
    }

    pub fn decode(&self, key: u128) -> ModifiedNF {
        ModifiedNF {
            syllables: (0..self.len_of(key))
                .map(|j| self.table[self.code_at(key, j)])
                .collect(),
            delta_pow: self.delta_of(key),
        }
    }

    pub fn classify(&self, key: u128) -> TypeTag {
        let r = (0..self.len_of(key))
            .filter(|&j| self.in_r[self.code_at(key, j)])
            .count();
        TypeTag::from_parts(self.delta_of(key), r)
    }

    /// `key * letter`, or `None` when the result does not fit.
    pub fn mul(&self, key: u128, l: Letter) -> Option<u128> {
        self.mul_index(key, l.gen * 2 + usize::from(l.sign < 0))
    }

    /// Multiplication by the letter at position `i` of the alphabet.
    #[inline]
    fn mul_index(&self, key: u128, i: usize) -> Option<u128> {
        let tau = self.len_of(key);
        let gen = self.alphabet[i].gen;
        let last = if tau > 0 { self.code_at(key, tau - 1) } else { 0 };
        let body = key & !((1 << self.header_bits()) - 1);
        let delta = self.delta_of(key);
        if last != 0 && self.table[last].gen == gen {
            let st = self.merge[last * self.alphabet.len() + i];
            let cleared = body & !(((1 << self.bits) - 1) << self.shift(tau - 1));
            let delta = delta + i64::from(st.ddelta);
            if st.code == 0 {
                self.pack_header(cleared, tau - 1, delta)
            } else {
                let body = cleared | u128::from(st.code) << self.shift(tau - 1);
                self.pack_header(body, tau, delta)
            }
        } else {
            let st = self.fresh[i];
            if tau == self.max_syllables {
                return None;
            }
            let body = body | u128::from(st.code) << self.shift(tau);
            self.pack_header(body, tau + 1, delta + i64::from(st.ddelta))
        }
    }

    fn overflow(&self) -> Error {
        Error::Argument(format!(
            "normal forms beyond {} syllables do not fit the packed key",
            self.max_syllables
        ))
    }

    fn mul_checked(&self, key: u128, l: Letter) -> Result<u128> {
        self.mul(key, l).ok_or_else(|| self.overflow())
    }

    /// Checked product in a key type.
    #[inline]
    fn step<K: PackedKey>(&self, key: K, i: usize) -> Result<K> {
        self.mul_index(key.wide(), i).map(K::pack).ok_or_else(|| self.overflow())
    }
}

/// Sphere sizes `#{g : |g| = l}` for `l = 0..=max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereTable {
    pub pres: Presentation,
    pub max_len: usize,
    pub counts: Vec<u64>,
    /// Per length, counts indexed by [`TypeTag::index`].
    pub per_type: Option<Vec<[u64; 5]>>,
    /// False when the budget stopped the search early.
    pub complete: bool,
}

impl SphereTable {
    pub fn type_counts(&self, tag: TypeTag) -> Option<Vec<u64>> {
        self.per_type
            .as_ref()
            .map(|v| v.iter().map(|row| row[tag.index()]).collect())
    }

    /// `length,count[,type1,type2,type3p,type3m,type30]`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("length,count");
        if self.per_type.is_some() {
            s.push_str(",type1,type2,type3p,type3m,type30");
        }
        s.push('\n');
        for (l, c) in self.counts.iter().enumerate() {
            let _ = write!(s, "{l},{c}");
            if let Some(rows) = &self.per_type {
                for x in rows[l] {
                    let _ = write!(s, ",{x}");
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Limits for [`bfs_spheres_with`].
#[derive(Debug, Clone, Copy)]
pub struct BfsOptions {
    /// Most keys held at once across the stored spheres.
    pub max_stored: usize,
    /// Memory for one batch of candidate keys, sort buffer included.
    pub batch_bytes: usize,
}

impl Default for BfsOptions {
    fn default() -> Self {
        Self {
            max_stored: 250_000_000,
            batch_bytes: 1 << 30,
        }
    }
}

pub fn bfs_spheres(pres: &Presentation, max_len: usize, with_types: bool) -> Result<SphereTable> {
    bfs_spheres_with(pres, max_len, with_types, BfsOptions::default())
}

/// Sphere sizes by breadth-first search.
///
/// Each sphere is a sorted vector of keys. The next one is found by sorting
/// all neighbours of the current sphere and removing duplicates and members
/// of the two stored spheres in one merge pass; neighbours are processed in
/// key ranges so that a batch fits in [`BfsOptions::batch_bytes`].
pub fn bfs_spheres_with(
    pres: &Presentation,
    max_len: usize,
    with_types: bool,
    opts: BfsOptions,
) -> Result<SphereTable> {
    let narrow = KeyCodec::for_radius(pres, max_len, 64);
    if narrow.max_syllables() >= max_len {
        bfs_keyed::<u64>(pres, &narrow, max_len, with_types, opts)
    } else {
        let wide = KeyCodec::for_radius(pres, max_len, 128);
        bfs_keyed::<u128>(pres, &wide, max_len, with_types, opts)
    }
}

fn bfs_keyed<K: PackedKey + Ord + radsort::Key>(
    pres: &Presentation,
    codec: &KeyCodec,
    max_len: usize,
    with_types: bool,
    opts: BfsOptions,
) -> Result<SphereTable> {
    let mut table = SphereTable {
        pres: pres.clone(),
        max_len,
        counts: vec![1],
        per_type: with_types.then(|| {
            let mut row = [0; 5];
            row[TypeTag::T3Plus.index()] = 1;
            vec![row]
        }),
        complete: true,
    };
    let batch = (opts.batch_bytes / (2 * std::mem::size_of::<K>())).max(1);
    let mut prev: Vec<K> = Vec::new();
    let mut cur = vec![K::pack(codec.identity())];
    for l in 1..=max_len {
        let store = l < max_len;
        let mut next = Vec::new();
        let mut count = 0;
        let mut row = [0u64; 5];
        let bounds = batch_bounds(codec, &cur, batch)?;
        for w in bounds.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mut cand = neighbours_in(codec, &cur, lo, hi)?;
            radsort::sort(&mut cand);
            cand.dedup();
            let fresh = subtract(subtract(cand, window(&cur, lo, hi)), window(&prev, lo, hi));
            count += fresh.len() as u64;
            if with_types {
                for &x in &fresh {
                    row[codec.classify(x.wide()).index()] += 1;
                }
            }
            if store {
                next.extend(fresh);
                if cur.len() + next.len() > opts.max_stored {
                    table.complete = false;
                    return Err(Error::Budget(Box::new(table)));
                }
            }
        }
        table.counts.push(count);
        if let Some(v) = table.per_type.as_mut() {
            v.push(row);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(table)
}

/// Key range bounds `lo <= x < hi` splitting the neighbours of `cur` into
/// batches of roughly `batch` keys; `None` stands for an open end.
fn batch_bounds<K: PackedKey + Ord + radsort::Key>(
    codec: &KeyCodec,
    cur: &[K],
    batch: usize,
) -> Result<Vec<Option<K>>> {
    let letters = codec.alphabet.len();
    let parts = (cur.len() * letters).div_ceil(batch);
    let mut bounds = vec![None];
    if parts > 1 {
        // Quantiles of a regular sample of the neighbours.
        let stride = (cur.len() / (64 * parts)).max(1);
        let mut sample = Vec::new();
        for &y in cur.iter().step_by(stride) {
            for i in 0..letters {
                sample.push(codec.step(y, i)?);
            }
        }
        radsort::sort(&mut sample);
        for k in 1..parts {
            let q = Some(sample[k * sample.len() / parts]);
            if q > *bounds.last().expect("nonempty") {
                bounds.push(q);
            }
        }
    }
    bounds.push(None);
    Ok(bounds)
}

fn in_range<K: Ord>(x: K, lo: Option<K>, hi: Option<K>) -> bool {
    lo.map_or(true, |lo| x >= lo) && hi.map_or(true, |hi| x < hi)
}

fn neighbours_in<K: PackedKey + Ord>(
    codec: &KeyCodec,
    cur: &[K],
    lo: Option<K>,
    hi: Option<K>,
) -> Result<Vec<K>> {
    let letters = codec.alphabet.len();
    let parts: Vec<Vec<K>> = cur
        .par_chunks(1 << 16)
        .map(|ys| {
            let mut out = Vec::new();
            for &y in ys {
                for i in 0..letters {
                    let x = codec.step(y, i)?;
                    if in_range(x, lo, hi) {
                        out.push(x);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(parts.concat())
}

/// The part of a sorted slice inside a key range.
fn window<K: Ord + Copy>(xs: &[K], lo: Option<K>, hi: Option<K>) -> &[K] {
    let a = lo.map_or(0, |lo| xs.partition_point(|&x| x < lo));
    let b = hi.map_or(xs.len(), |hi| xs.partition_point(|&x| x < hi));
    &xs[a..b]
}

/// Sorted `xs` without the members of sorted `ys`.
fn subtract<K: Ord + Copy>(mut xs: Vec<K>, ys: &[K]) -> Vec<K> {
    let mut j = 0;
    xs.retain(|&x| {
        while j < ys.len() && ys[j] < x {
            j += 1;
        }
        j >= ys.len() || ys[j] != x
    });
    xs
}

/// Every element up to some radius with its word length.
#[derive(Debug, Clone)]
pub struct Ball {
    codec: KeyCodec,
    dist: HashMap<u128, u32, FxBuildHasher>,
    spheres: Vec<Vec<u128>>,
}

/// Geodesic spellings of one element, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicSpellings {
    pub words: Vec<Vec<Letter>>,
    pub truncated: bool,
}

impl Ball {
    pub fn new(pres: &Presentation, radius: usize) -> Result<Self> {
        let codec = KeyCodec::new(pres);
        let id = codec.identity();
        let mut ball = Self {
            codec,
            dist: HashMap::default(),
            spheres: vec![vec![id]],
        };
        ball.dist.insert(id, 0);
        ball.extend_to(radius)?;
        Ok(ball)
    }

    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    /// Grows the ball by whole spheres.
    pub fn extend_to(&mut self, radius: usize) -> Result<()> {
        while self.radius() < radius {
            let l = self.spheres.len() as u32;
            let mut next = Vec::new();
            for &y in self.spheres.last().expect("identity sphere") {
                for &a in &self.codec.alphabet {
                    let x = self.codec.mul_checked(y, a)?;
                    if !self.dist.contains_key(&x) {
                        self.dist.insert(x, l);
                        next.push(x);
                    }
                }
            }
            next.sort_unstable();
            self.spheres.push(next);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn sphere_sizes(&self) -> Vec<u64> {
        self.spheres.iter().map(|s| s.len() as u64).collect()
    }

    /// Elements of sphere `l` in key order.
    pub fn sphere(&self, l: usize) -> impl Iterator<Item = ModifiedNF> + '_ {
        self.spheres[l].iter().map(|&k| self.codec.decode(k))
    }

    pub fn distance(&self, mnf: &ModifiedNF) -> Option<u32> {
        self.dist.get(&self.codec.encode(mnf)?).copied()
    }

    /// All geodesic spellings of an element inside the ball, found by
    /// walking back along edges that lower the distance by one.
    pub fn geodesics(&self, mnf: &ModifiedNF, cap: Option<usize>) -> Option<GeodesicSpellings> {
        let key = self.codec.encode(mnf)?;
        let d = *self.dist.get(&key)?;
        let mut out = GeodesicSpellings {
            words: Vec::new(),
            truncated: false,
        };
        let mut suffix = Vec::with_capacity(d as usize);
        self.walk_back(key, d, &mut suffix, cap.unwrap_or(usize::MAX), &mut out);
        out.words.sort();
        Some(out)
    }

    fn walk_back(
        &self,
        key: u128,
        d: u32,
        suffix: &mut Vec<Letter>,
        cap: usize,
        out: &mut GeodesicSpellings,
    ) {
        if out.words.len() >= cap {
            out.truncated = true;
            return;
        }
        if d == 0 {
            out.words.push(suffix.iter().rev().copied().collect());
            return;
        }
        for &a in &self.codec.alphabet {
            let Some(y) = self.codec.mul(key, a.inverse()) else {
                continue;
            };
            if self.dist.get(&y) == Some(&(d - 1)) {
                suffix.push(a);
                self.walk_back(y, d - 1, suffix, cap, out);
                suffix.pop();
            }
        }
    }
}

/// Geodesic spellings of `mnf`, growing a ball until the element appears.
pub fn all_geodesics(
    pres: &Presentation,
    mnf: &ModifiedNF,
    cap: Option<usize>,
) -> Result<GeodesicSpellings> {
    mnf.validate(pres)?;
    let mut ball = Ball::new(pres, 0)?;
    loop {
        if let Some(g) = ball.geodesics(mnf, cap) {
            return Ok(g);
        }
        let r = ball.radius() + 1;
        ball.extend_to(r)?;
    }
}

/// Which ends of a window word may not carry generator `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndRule {
    Free,
    NotFirst(usize),
    /// Also nonempty.
    NotFirstNorLast(usize),
}

/// Counts of window words by length, by dynamic programming over the last
/// generator.
pub fn window_word_counts(windows: &[(u32, u32)], rule: EndRule, max_len: usize) -> Vec<u64> {
    let n = windows.len();
    let k = match rule {
        EndRule::Free => None,
        EndRule::NotFirst(k) | EndRule::NotFirstNorLast(k) => Some(k),
    };
    let exps = |g: usize| -> Vec<usize> {
        let (a, b) = windows[g];
        (1..=a as usize).chain(1..=b as usize).collect()
    };
    // ends[l][g]: words of length l whose last syllable is on g.
    let mut ends = vec![vec![0u64; n]; max_len + 1];
    for l in 1..=max_len {
        for g in 0..n {
            let mut c = 0;
            for e in exps(g) {
                if e > l {
                    continue;
                }
                if e == l {
                    c += u64::from(Some(g) != k);
                } else {
                    c += (0..n).filter(|&h| h != g).map(|h| ends[l - e][h]).sum::<u64>();
                }
            }
            ends[l][g] = c;
        }
    }
    (0..=max_len)
        .map(|l| {
            let last_ok = |g: usize| !(matches!(rule, EndRule::NotFirstNorLast(_)) && Some(g) == k);
            let body: u64 = (0..n).filter(|&g| last_ok(g)).map(|g| ends[l][g]).sum();
            let empty = u64::from(l == 0 && !matches!(rule, EndRule::NotFirstNorLast(_)));
            body + empty
        })
        .collect()
}

/// Calls `f` on every syllable word `x^a ... * D^c` (adjacent generators
/// distinct) with `-lo_g <= a <= hi_g` on generator `g` and length at most
/// `max_len`.
pub fn for_each_word(
    pres: &Presentation,
    bounds: &[(i64, i64)],
    max_len: u64,
    f: &mut impl FnMut(&SyllableWord),
) {
    let p1 = pres.p1() as u64;
    let mut w = SyllableWord::identity();
    fn rec(
        pres: &Presentation,
        bounds: &[(i64, i64)],
        budget: u64,
        p1: u64,
        w: &mut SyllableWord,
        f: &mut impl FnMut(&SyllableWord),
    ) {
        let cmax = (budget / p1) as i64;
        for c in -cmax..=cmax {
            w.delta_pow = c;
            f(w);
        }
        w.delta_pow = 0;
        for g in 0..pres.n() {
            if w.syllables.last().is_some_and(|s| s.gen == g) {
                continue;
            }
            let (lo, hi) = bounds[g];
            for e in (-lo..=hi).filter(|&e| e != 0) {
                let cost = e.unsigned_abs();
                if cost > budget {
                    continue;
                }
                w.syllables.push(Syllable::new(g, e));
                rec(pres, bounds, budget - cost, p1, w, f);
                w.syllables.pop();
            }
        }
    }
    rec(pres, bounds, max_len, p1, &mut w, f);
}
