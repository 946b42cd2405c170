//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use amalgam_growth::{Poly, Presentation, RationalFunction};
use num_bigint::BigInt;

/// Published closed forms, transcribed factor by factor.
pub const GOLDENS: &[(&str, &str, &str)] = &[
    ("2,2,2", "(1 + t) (-1 + 2 t^2)", "(-1 + t) (-1 + 2 t)^2"),
    (
        "2,2,3",
        "(1 + t) (1 + t - 3 t^2 - 15 t^3 - 10 t^4 + 30 t^5 + 28 t^6 + 16 t^7)",
        "(-1 + t) (-1 + t + 4 t^2)^2 (-1 + t + 2 t^2 + 2 t^3)",
    ),
    ("2,2,4", "-1 - t + 6 t^3 + 6 t^4 + 2 t^5", "(-1 + t) (-1 + 2 t + 2 t^2)^2"),
    (
        "2,3,3",
        "(1 + t) (-1 + 2 t) (-1 - t + t^2 + 16 t^3 + 32 t^4 + 20 t^5 + 8 t^6)",
        "(-1 + t) (-1 + 2 t + 4 t^2)^2 (-1 + t + 3 t^2 + 2 t^3)",
    ),
    (
        "2,3,4",
        "1 + 2 t - 6 t^2 - 29 t^3 - 51 t^4 + 7 t^5 + 220 t^6 + 445 t^7 + 463 t^8 + 284 t^9 \
         + 100 t^10 + 16 t^11",
        "(-1 + t) (-1 + t + 7 t^2 + 4 t^3)^2 (-1 + t + 4 t^2 + 5 t^3 + 2 t^4)",
    ),
    // Printed identically to G(2,3,4).
    (
        "2,3,5",
        "1 + 2 t - 6 t^2 - 29 t^3 - 51 t^4 + 7 t^5 + 220 t^6 + 445 t^7 + 463 t^8 + 284 t^9 \
         + 100 t^10 + 16 t^11",
        "(-1 + t) (-1 + t + 7 t^2 + 4 t^3)^2 (-1 + t + 4 t^2 + 5 t^3 + 2 t^4)",
    ),
    (
        "2,3,6",
        "(1 + t) (1 - 8 t^2 - 18 t^3 - 12 t^4 + 48 t^5 + 166 t^6 + 274 t^7 + 265 t^8 \
         + 172 t^9 + 68 t^10 + 16 t^11)",
        "(-1 + t) (-1 + 2 t + 3 t^2 + 2 t^3) (-1 + t + 7 t^2 + 7 t^3 + 4 t^4)^2",
    ),
    (
        "2,3,7",
        "(1 + t) (1 + 4 t - t^2 - 43 t^3 - 138 t^4 - 193 t^5 + 75 t^6 + 1056 t^7 + 2930 t^8 \
         + 5284 t^9 + 7160 t^10 + 7638 t^11 + 6544 t^12 + 4524 t^13 + 2500 t^14 + 1088 t^15 \
         + 336 t^16 + 64 t^17)",
        "(-1 + t) (-1 + 8 t^2 + 14 t^3 + 14 t^4 + 8 t^5)^2 \
         (-1 + 5 t^2 + 11 t^3 + 12 t^4 + 9 t^5 + 5 t^6 + 2 t^7)",
    ),
    (
        "3,3,3",
        "(1 + t) (-1 + 2 t) (1 + 2 t^2)",
        "(-1 + t) (-1 + 4 t) (-1 + 2 t + 2 t^2)",
    ),
    (
        "3,3,4",
        "-1 + t + 17 t^2 + 11 t^3 - 67 t^4 - 167 t^5 - 246 t^6 - 130 t^7 + 638 t^8 + 2152 t^9 \
         + 3672 t^10 + 4272 t^11 + 3704 t^12 + 2376 t^13 + 1040 t^14 + 272 t^15 + 32 t^16",
        "(-1 + t) (-1 + 2 t + 8 t^2 + 4 t^3)^2 (-1 + t + 5 t^2 + 6 t^3 + 2 t^4) \
         (-1 + t + 3 t^2 + 4 t^3 + 4 t^4 + 2 t^5)",
    ),
    (
        "3,6,7",
        "-1 - 4 t + 21 t^2 + 172 t^3 + 301 t^4 - 1070 t^5 - 7231 t^6 - 18462 t^7 - 16780 t^8 \
         + 58393 t^9 + 331780 t^10 + 992604 t^11 + 2257404 t^12 + 4289278 t^13 \
         + 7087793 t^14 + 10394402 t^15 + 13680190 t^16 + 16262820 t^17 + 17530098 t^18 \
         + 17171612 t^19 + 15299344 t^20 + 12395068 t^21 + 9117638 t^22 + 6071726 t^23 \
         + 3643664 t^24 + 1957008 t^25 + 931500 t^26 + 387360 t^27 + 137776 t^28 \
         + 40544 t^29 + 9328 t^30 + 1504 t^31 + 128 t^32",
        "(-1 + t) (-1 + t + 8 t^2 + 15 t^3 + 15 t^4 + 11 t^5 + 6 t^6 + 2 t^7) \
         (-1 + 12 t^2 + 32 t^3 + 48 t^4 + 46 t^5 + 26 t^6 + 8 t^7)^2 \
         (-1 + 8 t^2 + 21 t^3 + 31 t^4 + 35 t^5 + 32 t^6 + 24 t^7 + 13 t^8 + 6 t^9 + 2 t^10)",
    ),
    ("2,2,2,2", "(1 + t) (-1 + 3 t^2)", "(-1 + t) (-1 + 3 t)^2"),
    (
        "2,3,4,5",
        "1 + 4 t - 16 t^2 - 149 t^3 - 393 t^4 + 45 t^5 + 3879 t^6 + 16001 t^7 + 40715 t^8 \
         + 75854 t^9 + 109176 t^10 + 124076 t^11 + 112301 t^12 + 80936 t^13 + 45998 t^14 \
         + 20136 t^15 + 6464 t^16 + 1368 t^17 + 144 t^18",
        "(-1 + t) (-1 + t + 17 t^2 + 38 t^3 + 36 t^4 + 12 t^5)^2 \
         (-1 + t + 12 t^2 + 25 t^3 + 30 t^4 + 22 t^5 + 11 t^6 + 3 t^7)",
    ),
    (
        "2,3,7,8",
        "1 + 4 t - 16 t^2 - 163 t^3 - 516 t^4 - 320 t^5 + 4296 t^6 + 24213 t^7 + 81073 t^8 \
         + 206772 t^9 + 434218 t^10 + 778907 t^11 + 1218441 t^12 + 1683284 t^13 \
         + 2070095 t^14 + 2277157 t^15 + 2246173 t^16 + 1987792 t^17 + 1576248 t^18 \
         + 1116383 t^19 + 702382 t^20 + 389314 t^21 + 187754 t^22 + 77324 t^23 \
         + 26408 t^24 + 7112 t^25 + 1368 t^26 + 144 t^27",
        "(-1 + t) (-1 + t + 17 t^2 + 43 t^3 + 69 t^4 + 80 t^5 + 62 t^6 + 36 t^7 + 12 t^8)^2 \
         (-1 + t + 12 t^2 + 33 t^3 + 55 t^4 + 68 t^5 + 64 t^6 + 47 t^7 + 26 t^8 + 11 t^9 \
         + 3 t^10)",
    ),
    ("2,2,2,2,2", "(1 + t) (-1 + 2 t) (1 + 2 t)", "(-1 + t) (-1 + 4 t)^2"),
    (
        "3,3,3,3,3",
        "(1 + t) (-1 + 4 t - 4 t^2 + 8 t^3)",
        "(-1 + t) (-1 + 8 t) (-1 + 4 t + 4 t^2)",
    ),
    (
        "3,4,5,6,7",
        "-1 - 4 t + 88 t^2 + 839 t^3 + 829 t^4 - 29238 t^5 - 227292 t^6 - 729448 t^7 \
         + 537936 t^8 + 19529418 t^9 + 126701958 t^10 + 554358269 t^11 + 1923140887 t^12 \
         + 5629278332 t^13 + 14371787530 t^14 + 32675409006 t^15 + 67112438033 t^16 \
         + 125827368129 t^17 + 217031712921 t^18 + 346438522281 t^19 + 514115396075 t^20 \
         + 711769397882 t^21 + 921744217990 t^22 + 1118743167770 t^23 \
         + 1274436479732 t^24 + 1363938860927 t^25 + 1372181491114 t^26 \
         + 1297977449990 t^27 + 1154299044726 t^28 + 964677120102 t^29 \
         + 757061517889 t^30 + 557294933886 t^31 + 384230982310 t^32 \
         + 247632202450 t^33 + 148818119668 t^34 + 83136635312 t^35 + 43006809888 t^36 \
         + 20501800616 t^37 + 8952019048 t^38 + 3552861968 t^39 + 1268966672 t^40 \
         + 402581120 t^41 + 111449184 t^42 + 26255936 t^43 + 5070080 t^44 + 754944 t^45 \
         + 77312 t^46 + 4096 t^47",
        "(-1 + t) (-1 + t + 39 t^2 + 177 t^3 + 441 t^4 + 734 t^5 + 872 t^6 + 748 t^7 \
         + 448 t^8 + 172 t^9 + 32 t^10)^2 \
         (-1 + 2 t + 30 t^2 + 99 t^3 + 188 t^4 + 249 t^5 + 251 t^6 + 198 t^7 + 123 t^8 \
         + 58 t^9 + 20 t^10 + 4 t^11) \
         (-1 + t + 24 t^2 + 90 t^3 + 209 t^4 + 364 t^5 + 510 t^6 + 594 t^7 + 589 t^8 \
         + 500 t^9 + 366 t^10 + 227 t^11 + 119 t^12 + 51 t^13 + 16 t^14 + 4 t^15)",
    ),
];

/// BFS depth used for each tuple: 12, 10 or 8 for 3, 4 or 5 generators.
pub fn bfs_depth(pres: &Presentation) -> usize {
    match pres.n() {
        ..=3 => 12,
        4 => 10,
        _ => 8,
    }
}

pub fn pres(s: &str) -> Presentation {
    Presentation::parse(s).unwrap()
}

/// Parses `-1 + 2 t^2` style sums.
pub fn parse_poly(s: &str) -> Poly {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let s = s.replace(' ', "");
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let (c, e) = match body.find('t') {
            None => (body.parse::<BigInt>().unwrap(), 0),
            Some(i) => {
                let c = if i == 0 {
                    BigInt::from(1)
                } else {
                    body[..i].parse().unwrap()
                };
                let e = match body[i + 1..].strip_prefix('^') {
                    Some(e) => e.parse().unwrap(),
                    None => 1,
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::from(0));
        }
        coeffs[e] += c * sign;
    }
    Poly::from_coeffs(coeffs)
}

/// Parses a product `(a) (b)^2 ...` or a single bare sum.
pub fn parse_product(s: &str) -> Poly {
    let s = s.trim();
    if !s.starts_with('(') {
        return parse_poly(s);
    }
    let mut out = Poly::one();
    let mut rest = s;
    while let Some(open) = rest.find('(') {
        let close = open + rest[open..].find(')').unwrap();
        let factor = parse_poly(&rest[open + 1..close]);
        rest = &rest[close + 1..];
        let mut power = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let digits: String = r.chars().take_while(char::is_ascii_digit).collect();
            power = digits.parse().unwrap();
            rest = &r[digits.len()..];
        }
        out = &out * &factor.pow(power);
    }
    out
}

pub fn golden(tuple: &str) -> RationalFunction {
    let (_, n, d) = GOLDENS.iter().find(|g| g.0 == tuple).unwrap();
    RationalFunction::new(parse_product(n), parse_product(d)).unwrap()
}

pub fn to_u64(xs: &[BigInt]) -> Vec<u64> {
    xs.iter().map(|x| u64::try_from(x).unwrap()).collect()
}
