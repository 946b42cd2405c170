//! Univariate polynomials and rational functions over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t`; `coeffs[i]` multiplies `t^i`. No trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Lowest-order nonzero coefficient.
    pub fn lowest(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn div_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x / c).collect())
    }

    /// A nonzero scalar multiple of the remainder of `self` modulo `d`.
    fn sparse_prem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("nonzero divisor");
        let dl = d.lc();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.lc();
            let g = rl.gcd(&dl);
            let (a, b) = (&dl / &g, &rl / &g);
            let shift = rd - dd;
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|x| x * &a).collect();
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[i + shift] -= c * &b;
            }
            r = Poly::from_coeffs(coeffs);
        }
        r
    }

    /// Quotient when `d` divides `self` exactly over the integers.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let dl = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= c * &qk;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Poly::from_coeffs(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut u, mut v) = (self.primitive_part(), other.primitive_part());
        if u.degree() < v.degree() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_zero() {
            if v.degree() == Some(0) {
                return Poly::one();
            }
            let r = u.sparse_prem(&v).primitive_part();
            u = v;
            v = r;
        }
        u
    }

    /// Evaluates `sum c_i b^i a^(deg-i)`, the numerator of `self(b/a)`.
    fn eval_frac_num(&self, b: &BigInt, a: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut apow = BigInt::one();
        // Horner in b with compensating powers of a.
        for c in self.coeffs.iter().rev() {
            acc = acc * b + c * &apow;
            apow *= a;
        }
        acc
    }

    pub fn plain(&self) -> String {
        render_poly(self, Style::Plain)
    }

    pub fn latex(&self) -> String {
        render_poly(self, Style::Latex)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Plain,
    Latex,
}

fn render_poly(p: &Poly, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match (i, style) {
            (0, _) => String::new(),
            (1, _) => "t".into(),
            (k, Style::Plain) => format!("t^{k}"),
            (k, Style::Latex) => format!("t^{{{k}}}"),
        };
        if var.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&var);
        } else if style == Style::Plain {
            out.push_str(&format!("{mag}*{var}"));
        } else {
            out.push_str(&format!("{mag}{var}"));
        }
    }
    out
}

/// `num / den` in lowest terms: coprime, no common integer content, and the
/// lowest-order nonzero coefficient of `den` positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        if g.degree().unwrap_or(0) == 0 {
            Ok(Self::finish(num, den))
        } else {
            Ok(Self::finish(
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            ))
        }
    }

    /// Content and sign normalization of an already coprime pair.
    fn finish(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut c = num.content().gcd(&den.content());
        if den.lowest().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self {
            num: num.div_scalar(&c),
            den: den.div_scalar(&c),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::finish(p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        // Henrici: only the gcd of the denominators can cancel.
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            return Self::finish(
                &(&self.num * &o.den) + &(&o.num * &self.den),
                &self.den * &o.den,
            );
        }
        let b1 = self.den.exact_div(&g).expect("gcd divides");
        let d1 = o.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        let den = &b1 * &o.den;
        let h = num.gcd(&g);
        if h.degree().unwrap_or(0) == 0 {
            Self::finish(num, den)
        } else {
            Self::finish(
                num.exact_div(&h).expect("gcd divides"),
                den.exact_div(&h).expect("gcd divides"),
            )
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let cut = |p: &Poly, g: &Poly| p.exact_div(g).expect("gcd divides");
        Self::finish(
            &cut(&self.num, &g1) * &cut(&o.num, &g2),
            &cut(&self.den, &g2) * &cut(&o.den, &g1),
        )
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Equality by cross multiplication, independent of normalization.
    pub fn cross_equals(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// Coefficients of `t^0 .. t^l` of the power series expansion.
    pub fn taylor(&self, l: usize) -> Result<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NotExpandable);
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(l + 1);
        for k in 0..=l {
            let mut acc = self.num.coeff(k);
            for (i, d) in self.den.coeffs.iter().enumerate().skip(1).take(k) {
                acc -= d * &out[k - i];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(Error::NonIntegral(k));
            }
            out.push(q);
        }
        Ok(out)
    }

    pub fn plain(&self) -> String {
        if self.den.is_one() {
            return self.num.plain();
        }
        format!("({}) / ({})", self.num.plain(), self.den.plain())
    }

    pub fn latex(&self) -> String {
        if self.den.is_one() {
            return self.num.latex();
        }
        format!("\\frac{{{}}}{{{}}}", self.num.latex(), self.den.latex())
    }

    /// Best-effort factored rendering: square-free parts with rational
    /// linear factors split off, each factor with positive leading term.
    pub fn factored(&self) -> String {
        let (sn, fnum) = factor_poly(&self.num);
        let (sd, fden) = factor_poly(&self.den);
        let neg = sn.is_negative() != sd.is_negative();
        let g = sn.gcd(&sd);
        let (cn, cd) = (sn.abs() / &g, sd.abs() / &g);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&render_factors(&fnum, &cn));
        let den = render_factors(&fden, &cd);
        if den != "1" {
            s.push_str(" / ");
            let single = fden.len() + usize::from(!cd.is_one()) == 1
                && fden.first().map_or(true, |f| f.1 == 1);
            if single {
                s.push_str(&den);
            } else {
                s.push_str(&format!("({den})"));
            }
        }
        s
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.plain())
    }
}

/// `p = scalar * prod f_i^e_i` with primitive factors of positive leading
/// coefficient. The scalar absorbs content and sign.
fn factor_poly(p: &Poly) -> (BigInt, Vec<(Poly, u32)>) {
    if p.degree().unwrap_or(0) == 0 {
        return (p.coeff(0), Vec::new());
    }
    let pp = p.primitive_part();
    let scalar = p.lc() / pp.lc();
    let mut out = Vec::new();
    for (part, e) in square_free(&pp) {
        let (lin, rest) = split_rational_roots(&part);
        for f in lin {
            out.push((f, e));
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, e));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.1, a.0.coeffs.clone()).cmp(&(b.0.degree(), b.1, b.0.coeffs.clone()))
    });
    (scalar, out)
}

/// Yun's square-free decomposition of a primitive polynomial. Every divisor
/// is a primitive gcd, so by Gauss's lemma all quotients stay integral.
fn square_free(p: &Poly) -> Vec<(Poly, u32)> {
    let div = |a: &Poly, b: &Poly| a.exact_div(b).expect("primitive divisor over Q");
    let d = p.derivative();
    let a = p.gcd(&d);
    let mut b = div(p, &a);
    let mut c = div(&d, &a);
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let dd = &c - &b.derivative();
        let g = b.gcd(&dd);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        b = div(&b, &g);
        c = div(&dd, &g);
        i += 1;
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let limit = BigInt::from(1_000_000u32);
    if n > limit || n.is_zero() {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    Some(
        (1..=n)
            .filter(|d| n % d == 0)
            .map(BigInt::from)
            .collect(),
    )
}

/// Splits off factors `a t + b` with rational roots, trying small divisors.
fn split_rational_roots(p: &Poly) -> (Vec<Poly>, Poly) {
    let mut rest = p.clone();
    let mut lin = Vec::new();
    while rest.degree().unwrap_or(0) > 0 {
        if rest.coeff(0).is_zero() {
            lin.push(Poly::t());
            rest = rest.exact_div(&Poly::t()).expect("t divides");
            continue;
        }
        let (Some(bs), Some(as_)) = (small_divisors(&rest.coeff(0)), small_divisors(&rest.lc()))
        else {
            break;
        };
        let mut found = None;
        'search: for a in &as_ {
            for b in &bs {
                for b in [b.clone(), -b] {
                    if rest.eval_frac_num(&b, a).is_zero() {
                        found = Some(Poly::from_coeffs(vec![-b, a.clone()]));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(f) => {
                rest = rest.exact_div(&f).expect("root gives a factor");
                lin.push(f);
            }
            None => break,
        }
    }
    (lin, rest.primitive_part())
}

fn render_factors(fs: &[(Poly, u32)], scale: &BigInt) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !scale.is_one() {
        parts.push(scale.to_string());
    }
    for (f, e) in fs {
        let body = format!("({})", f.plain());
        parts.push(if *e == 1 { body } else { format!("{body}^{e}") });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `T_u = t + t^2 + ... + t^u`, with `T_0 = 0`.
pub fn t_poly(u: u32) -> Poly {
    let mut coeffs = vec![BigInt::one(); u as usize + 1];
    coeffs[0] = BigInt::zero();
    Poly::from_coeffs(coeffs)
}

/// `f(u, v) = T_u + T_v`: exponents `-u..=v` without zero, by length.
pub fn f_poly(u: u32, v: u32) -> Poly {
    &t_poly(u) + &t_poly(v)
}

/// All elementary symmetric polynomials `F^0 .. F^k` of `xs`, read off the
/// coefficients of `prod (1 + x_j T)` in an auxiliary variable `T`.
pub fn elem_sym_all(xs: &[Poly]) -> Vec<Poly> {
    let mut e = vec![Poly::one()];
    for x in xs {
        let mut next = e.clone();
        next.push(Poly::zero());
        for i in 0..e.len() {
            next[i + 1] = &next[i + 1] + &(&e[i] * x);
        }
        e = next;
    }
    e
}

pub fn elem_sym(i: usize, xs: &[Poly]) -> Result<Poly> {
    if i > xs.len() {
        return Err(Error::Argument(format!(
            "degree {i} exceeds the {} variables",
            xs.len()
        )));
    }
    Ok(elem_sym_all(xs).swap_remove(i))
}

/// The denominator `1 - sum_{i>=2} (i-1) F^i(f_1..f_k)` of `g_k`.
pub fn g_denominator(pairs: &[(u32, u32)]) -> Poly {
    let fs: Vec<Poly> = pairs.iter().map(|&(u, v)| f_poly(u, v)).collect();
    let e = elem_sym_all(&fs);
    let mut d = Poly::one();
    for (i, ei) in e.iter().enumerate().skip(2) {
        d = &d - &ei.scale(&BigInt::from(i - 1));
    }
    d
}

/// `g_k(u_1, v_1; ...; u_k, v_k)`.
pub fn g_func(pairs: &[(u32, u32)]) -> RationalFunction {
    RationalFunction::new(Poly::one(), g_denominator(pairs)).expect("constant term is 1")
}

/// `h_k = prod (1 + f(u_j, v_j)) * g_k`.
pub fn h_func(pairs: &[(u32, u32)]) -> RationalFunction {
    let mut num = Poly::one();
    for &(u, v) in pairs {
        num = &num * &(&Poly::one() + &f_poly(u, v));
    }
    RationalFunction::new(num, g_denominator(pairs)).expect("constant term is 1")
}
