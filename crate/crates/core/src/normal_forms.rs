//! Garside and modified normal forms, and the spread candidates `R_nu`.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{
    to_lambda, to_lambda_syllables, write_syllables, Letter, ParsedWord, Presentation, Syllable,
    SyllableWord,
};

/// The unique representative with `1 <= alpha_j <= p_{i_j} - 1`, times `D^d`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideNF {
    pub syllables: Vec<Syllable>,
    pub delta_pow: i64,
}

/// The unique representative with `-p^- <= a_j <= p^+`, `a_j != 0`, times
/// `D^(d + rho)`. This is the canonical key of a group element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModifiedNF {
    pub syllables: Vec<Syllable>,
    pub delta_pow: i64,
}

impl fmt::Display for GarsideNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_syllables(f, &self.syllables, self.delta_pow)
    }
}

impl fmt::Display for ModifiedNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_syllables(f, &self.syllables, self.delta_pow)
    }
}

impl ModifiedNF {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn as_word(&self) -> SyllableWord {
        SyllableWord {
            syllables: self.syllables.clone(),
            delta_pow: self.delta_pow,
        }
    }

    /// Word length of the normal form itself, `sum |a_j| + |d + rho| p1`.
    pub fn len(&self, pres: &Presentation) -> u64 {
        self.as_word().len(pres)
    }

    /// Checks the window and adjacency conditions.
    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        self.as_word().validate()?;
        for s in &self.syllables {
            pres.check_gen(s.gen)?;
            let b = pres.bounds(s.gen);
            if s.exp < -b.minus || s.exp > b.plus {
                return Err(Error::Argument(format!(
                    "exponent {} of x{} outside [-{}, {}]",
                    s.exp,
                    s.gen + 1,
                    b.minus,
                    b.plus
                )));
            }
        }
        Ok(())
    }

    /// Right multiplication by one letter in place.
    ///
    /// Only the last syllable changes: its exponent moves by one and wraps
    /// back into `[-p^-, p^+]` through a factor `D^(+-1)`, which is central.
    pub fn mul_letter(&mut self, pres: &Presentation, l: Letter) {
        let b = pres.bounds(l.gen);
        let last = self.syllables.last().filter(|s| s.gen == l.gen).map(|s| s.exp);
        let mut e = last.unwrap_or(0) + i64::from(l.sign);
        if e > b.plus {
            e -= pres.order(l.gen);
            self.delta_pow += 1;
        } else if e < -b.minus {
            e += pres.order(l.gen);
            self.delta_pow -= 1;
        }
        if last.is_some() {
            if e == 0 {
                self.syllables.pop();
            } else {
                self.syllables.last_mut().expect("checked above").exp = e;
            }
        } else if e != 0 {
            self.syllables.push(Syllable::new(l.gen, e));
        }
    }
}

/// Garside normal form of a lambda-form.
pub fn garside_nf(pres: &Presentation, lam: &SyllableWord) -> Result<GarsideNF> {
    lam.validate()?;
    let mut d = lam.delta_pow;
    let mut syllables = Vec::with_capacity(lam.syllables.len());
    for s in &lam.syllables {
        pres.check_gen(s.gen)?;
        let p = pres.order(s.gen);
        if s.exp.abs() >= p {
            return Err(Error::Argument(format!(
                "exponent {} of x{} is not reduced modulo {p}",
                s.exp,
                s.gen + 1
            )));
        }
        if s.exp < 0 {
            // x^a = x^(p+a) D^-1 with D central.
            syllables.push(Syllable::new(s.gen, p + s.exp));
            d -= 1;
        } else {
            syllables.push(*s);
        }
    }
    Ok(GarsideNF {
        syllables,
        delta_pow: d,
    })
}

/// Modified normal form of a Garside normal form.
pub fn modified_nf(pres: &Presentation, gnf: &GarsideNF) -> ModifiedNF {
    let mut rho = 0;
    let syllables: Vec<Syllable> = gnf
        .syllables
        .iter()
        .map(|s| {
            if s.exp > pres.bounds(s.gen).plus {
                rho += 1;
                Syllable::new(s.gen, s.exp - pres.order(s.gen))
            } else {
                *s
            }
        })
        .collect();
    debug_assert!(syllables.windows(2).all(|w| w[0].gen != w[1].gen));
    ModifiedNF {
        syllables,
        delta_pow: gnf.delta_pow + rho,
    }
}

/// Inverse of [`modified_nf`].
pub fn garside_of_modified(pres: &Presentation, mnf: &ModifiedNF) -> GarsideNF {
    let mut rho = 0;
    let syllables = mnf
        .syllables
        .iter()
        .map(|s| {
            if s.exp < 0 {
                rho += 1;
                Syllable::new(s.gen, s.exp + pres.order(s.gen))
            } else {
                *s
            }
        })
        .collect();
    GarsideNF {
        syllables,
        delta_pow: mnf.delta_pow - rho,
    }
}

/// Positions (0-based) with `p^- + 1 <= a_j <= p^+` and their count.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RNuData {
    pub r_set: Vec<usize>,
    pub r_nu: usize,
}

pub fn r_nu(pres: &Presentation, mnf: &ModifiedNF) -> RNuData {
    let r_set: Vec<usize> = mnf
        .syllables
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            let b = pres.bounds(s.gen);
            s.exp > b.minus && s.exp <= b.plus
        })
        .map(|(j, _)| j)
        .collect();
    RNuData {
        r_nu: r_set.len(),
        r_set,
    }
}

/// Canonical key of a letter sequence.
pub fn canonical_key(pres: &Presentation, letters: &[Letter]) -> ModifiedNF {
    from_lambda(pres, &to_lambda(pres, letters))
}

/// Canonical key of a syllable word with arbitrary (even unreduced) exponents.
pub fn canonical_key_word(pres: &Presentation, w: &SyllableWord) -> ModifiedNF {
    from_lambda(
        pres,
        &to_lambda_syllables(pres, w.syllables.iter().copied(), w.delta_pow),
    )
}

/// Canonical key of a parsed textual word.
pub fn canonical_key_parsed(pres: &Presentation, w: &ParsedWord) -> ModifiedNF {
    from_lambda(
        pres,
        &to_lambda_syllables(pres, w.runs.iter().copied(), w.delta_pow),
    )
}

fn from_lambda(pres: &Presentation, lam: &SyllableWord) -> ModifiedNF {
    let gnf = garside_nf(pres, lam).expect("lambda-forms are reduced");
    modified_nf(pres, &gnf)
}
