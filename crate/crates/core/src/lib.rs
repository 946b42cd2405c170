//! Spherical growth series of the groups
//! `G(p_1, ..., p_n) = <x_1, ..., x_n | x_1^p_1 = ... = x_n^p_n>`.
//!
//! Elements are handled through normal forms in the Garside sense; the central
//! element `D = x_k^p_k` is kept as a separate power. The crate computes the
//! word length of an element from its normal form, enumerates its geodesic
//! representatives, picks a canonical one, and assembles the growth series as
//! an exact rational function. [`oracle`] holds brute-force counterparts used
//! for verification.
//!
//! ```
//! use amalgam_growth::{growth_series, Presentation};
//!
//! let pres = Presentation::parse("2,3").unwrap();
//! let series = growth_series(&pres);
//! let coeffs = series.taylor(4).unwrap();
//! assert_eq!(coeffs, [1, 4, 12, 22, 40].map(Into::into));
//! ```

pub mod canonical;
pub mod error;
pub mod geodesics;
pub mod normal_forms;
pub mod oracle;
pub mod ratfun;
pub mod series;
pub mod word;

pub use canonical::{canonical_spread, gamma_membership, CaseId, GammaMembership};
pub use error::{Error, Result};
pub use geodesics::{
    classify, enumerate_ce, geodesic_length, is_geodesic, suitable_spread, TypeTag,
};
pub use normal_forms::{
    canonical_key, canonical_key_word, garside_nf, modified_nf, GarsideNF, ModifiedNF,
};
pub use oracle::{all_geodesics, bfs_spheres, SphereTable};
pub use ratfun::{Poly, RationalFunction};
pub use series::{growth_series, SeriesParts};
pub use word::{parse_word, reindex, Letter, Presentation, Reindexing, Syllable, SyllableWord};
