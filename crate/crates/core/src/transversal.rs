//! Transversals of set orbits and kaleidoscopic colorings.
//!
//! A configuration `A` is kaleidoscopic when some coloring of `X` with `|A|`
//! colors is bijective on every translate `gA`. The color classes of such a
//! coloring are exactly a partition of `X` into `G[A]`-transversals.

use crate::config::Configuration;
use crate::error::Result;
use crate::rainbow::{is_rainbow, Coloring, RainbowProblem, Search, SearchReport};
use crate::space::{set_orbit, GSpace};

/// Whether `t` meets every member of `family` in exactly one point.
pub fn is_transversal(family: &[Configuration], t: &Configuration) -> bool {
    family.iter().all(|f| f.intersection_len(t) == 1)
}

/// Budgeted search for the lexicographically least kaleidoscopic coloring.
pub fn search_kaleidoscopic_coloring(
    space: &GSpace,
    a: &Configuration,
    budget: Option<u64>,
) -> Result<SearchReport<Coloring>> {
    let n = space.point_count();
    a.validate_nonempty(n)?;
    let k = a.len();
    if !n.is_multiple_of(k) {
        return Ok(SearchReport {
            outcome: Search::Absent,
            nodes: 0,
        });
    }
    let edges: Vec<Vec<usize>> = set_orbit(space, a)?.into_iter().map(Vec::from).collect();
    if edges.len() == 1 {
        // A is invariant, hence all of X by transitivity
        return Ok(SearchReport {
            outcome: Search::Found(Coloring {
                palette: k,
                colors: (0..n).collect(),
            }),
            nodes: 0,
        });
    }
    Ok(RainbowProblem::new(n, k, edges).solve(budget))
}

/// The lexicographically least coloring `chi: X -> |A|` that is bijective on
/// every `gA`, or `None` when `A` is not kaleidoscopic.
pub fn find_kaleidoscopic_coloring(space: &GSpace, a: &Configuration) -> Result<Option<Coloring>> {
    Ok(search_kaleidoscopic_coloring(space, a, None)?
        .outcome
        .found())
}

/// Why a coloring fails to certify a configuration.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ColoringDefect {
    #[error("palette has {palette} colors but the configuration has {expected} points")]
    PaletteMismatch { palette: usize, expected: usize },
    #[error("coloring covers {got} points, space has {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("color {color} at point {point} is outside the palette")]
    ColorOutOfRange { point: usize, color: usize },
    #[error("translate {0} is not colored bijectively")]
    NotBijective(Configuration),
    #[error("invalid configuration: {0}")]
    Invalid(#[from] crate::Error),
}

/// Checks a coloring certificate and names the first defect.
pub fn check_kaleidoscopic(
    space: &GSpace,
    a: &Configuration,
    chi: &Coloring,
) -> std::result::Result<(), ColoringDefect> {
    let n = space.point_count();
    a.validate_nonempty(n)?;
    if chi.palette != a.len() {
        return Err(ColoringDefect::PaletteMismatch {
            palette: chi.palette,
            expected: a.len(),
        });
    }
    if chi.colors.len() != n {
        return Err(ColoringDefect::LengthMismatch {
            got: chi.colors.len(),
            expected: n,
        });
    }
    if let Some((point, &color)) = chi
        .colors
        .iter()
        .enumerate()
        .find(|(_, &c)| c >= chi.palette)
    {
        return Err(ColoringDefect::ColorOutOfRange { point, color });
    }
    for edge in set_orbit(space, a)? {
        if !is_rainbow(std::slice::from_ref(&edge.points().to_vec()), chi) {
            return Err(ColoringDefect::NotBijective(edge));
        }
    }
    Ok(())
}

/// Whether `chi` witnesses that `a` is kaleidoscopic.
pub fn verify_kaleidoscopic(space: &GSpace, a: &Configuration, chi: &Coloring) -> bool {
    check_kaleidoscopic(space, a, chi).is_ok()
}

/// A partition of `X` into `G[A]`-transversals, read off the least
/// kaleidoscopic coloring.
pub fn transversal_partition(
    space: &GSpace,
    a: &Configuration,
) -> Result<Option<Vec<Configuration>>> {
    Ok(find_kaleidoscopic_coloring(space, a)?.map(|chi| chi.classes()))
}
