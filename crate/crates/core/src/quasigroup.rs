//! Latin squares as quasigroups.
//!
//! Symbols are `0..n` internally and `1..=n` in text I/O. For a square `L`,
//! `x * y = L[x][y]`, `b / a` is the `y` with `y * a = b`, and `a \ b` is
//! the `x` with `a * x = b`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::{BitIter, Configuration};
use crate::error::{Error, Result};
use crate::group::AbelianGroupSpec;
use crate::rainbow::{Coloring, RainbowProblem, SearchReport};

/// An `n×n` array whose rows and columns are permutations of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct LatinSquare {
    table: Vec<Vec<usize>>,
    /// `right[a][b] = b / a`.
    right: Vec<Vec<usize>>,
    /// `left[a][b] = a \ b`.
    left: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidLatin("empty square".into()));
        }
        let mut right = vec![vec![usize::MAX; n]; n];
        let mut left = vec![vec![usize::MAX; n]; n];
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidLatin(format!(
                    "row {} has {} entries",
                    x + 1,
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidLatin(format!(
                        "symbol {} out of range",
                        v + 1
                    )));
                }
                if left[x][v] != usize::MAX {
                    return Err(Error::InvalidLatin(format!(
                        "row {} repeats {}",
                        x + 1,
                        v + 1
                    )));
                }
                if right[y][v] != usize::MAX {
                    return Err(Error::InvalidLatin(format!(
                        "column {} repeats {}",
                        y + 1,
                        v + 1
                    )));
                }
                left[x][v] = y;
                right[y][v] = x;
            }
        }
        Ok(Self { table, right, left })
    }

    /// Cayley table of an abelian group under its element indexing.
    pub fn cayley(spec: &AbelianGroupSpec) -> Self {
        let n = spec.order();
        let table = (0..n)
            .map(|x| (0..n).map(|y| spec.add(x, y)).collect())
            .collect();
        Self::new(table).expect("group tables are Latin")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// `b / a`.
    pub fn right_div(&self, b: usize, a: usize) -> usize {
        self.right[a][b]
    }

    /// `a \ b`.
    pub fn left_div(&self, a: usize, b: usize) -> usize {
        self.left[a][b]
    }

    /// `x * A`.
    pub fn row_image(&self, x: usize, a: &Configuration) -> Configuration {
        a.iter().map(|y| self.mul(x, y)).collect()
    }

    /// Whether the top-left block equals `rect`.
    pub fn extends(&self, rect: &PartialRectangle) -> bool {
        rect.n == self.order()
            && rect
                .table
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &v)| self.table[i][j] == v))
    }
}

impl TryFrom<Vec<Vec<usize>>> for LatinSquare {
    type Error = Error;

    fn try_from(t: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(t)
    }
}

impl From<LatinSquare> for Vec<Vec<usize>> {
    fn from(s: LatinSquare) -> Self {
        s.table
    }
}

impl fmt::Display for LatinSquare {
    /// The text file format: `n`, then rows of 1-based symbols.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order())?;
        write_rows(f, &self.table)
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<usize>]) -> fmt::Result {
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

/// A fully filled `r×s` array over `n` symbols without repeats in any row
/// or column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialRectangle {
    n: usize,
    table: Vec<Vec<usize>>,
}

impl PartialRectangle {
    pub fn new(n: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let r = table.len();
        let s = table.first().map_or(0, Vec::len);
        if r == 0 || s == 0 {
            return Err(Error::InvalidLatin("empty rectangle".into()));
        }
        if r > n || s > n {
            return Err(Error::InvalidLatin(format!(
                "{r}x{s} rectangle exceeds order {n}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != s {
                return Err(Error::InvalidLatin(format!(
                    "row {} has {} entries",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidLatin(format!(
                        "symbol {} out of range",
                        v + 1
                    )));
                }
                if row[..j].contains(&v) {
                    return Err(Error::InvalidLatin(format!(
                        "row {} repeats {}",
                        i + 1,
                        v + 1
                    )));
                }
                if table[..i].iter().any(|other| other[j] == v) {
                    return Err(Error::InvalidLatin(format!(
                        "column {} repeats {}",
                        j + 1,
                        v + 1
                    )));
                }
            }
        }
        Ok(Self { n, table })
    }

    /// Builds from 1-based symbols.
    pub fn from_one_based(n: usize, rows: &[&[usize]]) -> Result<Self> {
        let table = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        v.checked_sub(1)
                            .ok_or_else(|| Error::InvalidLatin("symbol 0".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, table)
    }

    pub fn symbols(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.table.len()
    }

    pub fn cols(&self) -> usize {
        self.table[0].len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl fmt::Display for PartialRectangle {
    /// The text file format: `n r s`, then rows of 1-based symbols.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.n, self.rows(), self.cols())?;
        write_rows(f, &self.table)
    }
}

fn parse_numbers(text: &str) -> Result<Vec<Vec<usize>>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("not a symbol: {t:?}")))
                })
                .collect()
        })
        .collect()
}

fn to_zero_based(rows: &[Vec<usize>], n: usize) -> Result<Vec<Vec<usize>>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|&v| {
                    if (1..=n).contains(&v) {
                        Ok(v - 1)
                    } else {
                        Err(Error::InvalidLatin(format!("symbol {v} outside 1..={n}")))
                    }
                })
                .collect()
        })
        .collect()
}

/// Parses a square file: `n` on the first line, then `n` rows.
pub fn parse_latin_square(text: &str) -> Result<LatinSquare> {
    let lines = parse_numbers(text)?;
    let (head, rows) = lines
        .split_first()
        .ok_or_else(|| Error::Parse("empty square file".into()))?;
    let &[n] = head.as_slice() else {
        return Err(Error::Parse("first line must hold the order".into()));
    };
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} rows, got {}",
            rows.len()
        )));
    }
    LatinSquare::new(to_zero_based(rows, n)?)
}

/// Parses a rectangle file: `n r s` on the first line, then `r` rows.
pub fn parse_partial_rectangle(text: &str) -> Result<PartialRectangle> {
    let lines = parse_numbers(text)?;
    let (head, rows) = lines
        .split_first()
        .ok_or_else(|| Error::Parse("empty rectangle file".into()))?;
    let &[n, r, s] = head.as_slice() else {
        return Err(Error::Parse("first line must be `n r s`".into()));
    };
    if rows.len() != r || rows.iter().any(|row| row.len() != s) {
        return Err(Error::Parse(format!("expected {r} rows of {s} symbols")));
    }
    PartialRectangle::new(n, to_zero_based(rows, n)?)
}

/// The 9×3 rectangle whose completions contain a self-complemented subset
/// `{1,2,3}` that is not kaleidoscopic.
pub fn order9_rectangle() -> PartialRectangle {
    PartialRectangle::from_one_based(
        9,
        &[
            &[1, 4, 5],
            &[6, 2, 7],
            &[8, 9, 3],
            &[4, 1, 6],
            &[5, 6, 1],
            &[2, 7, 8],
            &[7, 8, 2],
            &[3, 5, 9],
            &[9, 3, 4],
        ],
    )
    .expect("constant rectangle is valid")
}

/// Ryser's condition: every symbol occurs at least `r + s - n` times.
pub fn ryser_completable(rect: &PartialRectangle) -> bool {
    let mut count = vec![0usize; rect.n];
    for row in &rect.table {
        for &v in row {
            count[v] += 1;
        }
    }
    let need = (rect.rows() + rect.cols()).saturating_sub(rect.n);
    count.iter().all(|&c| c >= need)
}

/// Bipartite matching from "left" vertices to symbols, Kuhn style. The
/// candidate order decides which matching is found.
struct Matching {
    symbol_of: Vec<Option<usize>>,
    left_of: Vec<Option<usize>>,
}

impl Matching {
    fn new(left: usize, symbols: usize) -> Self {
        Self {
            symbol_of: vec![None; left],
            left_of: vec![None; symbols],
        }
    }

    /// Augments from a free left vertex. Vertices already matched stay
    /// matched.
    fn augment_left(&mut self, u: usize, adj: &[Vec<usize>], seen: &mut [bool]) -> bool {
        for &k in &adj[u] {
            if seen[k] {
                continue;
            }
            seen[k] = true;
            let free = match self.left_of[k] {
                None => true,
                Some(w) => self.augment_left(w, adj, seen),
            };
            if free {
                self.symbol_of[u] = Some(k);
                self.left_of[k] = Some(u);
                return true;
            }
        }
        false
    }

    /// Augments from a free symbol, alternating symbol -> left -> symbol.
    fn augment_symbol(&mut self, k: usize, radj: &[Vec<usize>], seen: &mut [bool]) -> bool {
        for &u in &radj[k] {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            let free = match self.symbol_of[u] {
                None => true,
                Some(k2) => self.augment_symbol(k2, radj, seen),
            };
            if free {
                self.symbol_of[u] = Some(k);
                self.left_of[k] = Some(u);
                return true;
            }
        }
        false
    }
}

fn order_candidates<R: Rng + ?Sized>(lists: &mut [Vec<usize>], rng: &mut Option<&mut R>) {
    if let Some(rng) = rng {
        for l in lists.iter_mut() {
            l.shuffle(*rng);
        }
    }
}

/// Completes the rectangle to a Latin square, or `None` exactly when
/// Ryser's condition fails. Deterministic; see
/// [`complete_rectangle_with_rng`] for sampling different completions.
pub fn complete_rectangle(rect: &PartialRectangle) -> Option<LatinSquare> {
    complete_rectangle_inner::<rand::rngs::ThreadRng>(rect, None)
}

/// Like [`complete_rectangle`] with candidate orders shuffled by `rng`.
pub fn complete_rectangle_with_rng<R: Rng + ?Sized>(
    rect: &PartialRectangle,
    rng: &mut R,
) -> Option<LatinSquare> {
    complete_rectangle_inner(rect, Some(rng))
}

fn complete_rectangle_inner<R: Rng + ?Sized>(
    rect: &PartialRectangle,
    mut rng: Option<&mut R>,
) -> Option<LatinSquare> {
    if !ryser_completable(rect) {
        return None;
    }
    let n = rect.n;
    let r = rect.rows();
    let mut rows: Vec<Vec<usize>> = rect.table.clone();

    // columns: each new column is a matching rows -> symbols that uses every
    // symbol whose count sits at the Ryser bound
    for c in rect.cols()..n {
        let mut count = vec![0usize; n];
        let mut in_row = vec![vec![false; n]; r];
        for (i, row) in rows.iter().enumerate() {
            for &v in row {
                count[v] += 1;
                in_row[i][v] = true;
            }
        }
        // after this column every symbol needs r + c + 1 - n occurrences
        let need = (r + c + 1) as isize - n as isize;
        let mut adj: Vec<Vec<usize>> = (0..r)
            .map(|i| (0..n).filter(|&k| !in_row[i][k]).collect())
            .collect();
        let mut radj: Vec<Vec<usize>> = (0..n)
            .map(|k| (0..r).filter(|&i| !in_row[i][k]).collect())
            .collect();
        order_candidates(&mut adj, &mut rng);
        order_candidates(&mut radj, &mut rng);
        let mut m = Matching::new(r, n);
        for k in (0..n).filter(|&k| (count[k] as isize) < need) {
            if !m.augment_symbol(k, &radj, &mut vec![false; r]) {
                return None;
            }
        }
        for i in 0..r {
            if m.symbol_of[i].is_none() && !m.augment_left(i, &adj, &mut vec![false; n]) {
                return None;
            }
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(m.symbol_of[i].expect("all rows matched"));
        }
    }

    // rows: each new row is a perfect matching columns -> missing symbols
    while rows.len() < n {
        let mut adj: Vec<Vec<usize>> = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&k| rows.iter().all(|row| row[j] != k))
                    .collect()
            })
            .collect();
        order_candidates(&mut adj, &mut rng);
        let mut m = Matching::new(n, n);
        for j in 0..n {
            if !m.augment_left(j, &adj, &mut vec![false; n]) {
                return None;
            }
        }
        rows.push(m.symbol_of.iter().map(|s| s.expect("perfect")).collect());
    }
    let square = LatinSquare::new(rows).ok()?;
    debug_assert!(square.extends(rect));
    Some(square)
}

/// Flags for a subset `A` of a quasigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiFlags {
    /// Least `B` with `(b, a) -> b / a` bijective `B×A -> X`.
    pub complemented: Option<Configuration>,
    /// Least complemented `B` with `(a, b) -> a * b` bijective `A×B -> X`,
    /// paired with the least complement `C` of `B`.
    pub doubly: Option<(Configuration, Configuration)>,
    /// `A×A -> X` bijective under both `*` and `/`.
    pub self_complemented: bool,
}

/// Every `B` such that the tiles `tile(b)` for `b` in `B` partition `0..n`,
/// sorted lexicographically. `tile_through(u)` lists the `b` whose tile
/// contains `u`.
fn exact_covers(n: usize, tiles: &[u64], tile_through: &dyn Fn(usize) -> Vec<usize>) -> Vec<u64> {
    fn walk(
        n: usize,
        tiles: &[u64],
        through: &[Vec<usize>],
        covered: u64,
        chosen: u64,
        out: &mut Vec<u64>,
    ) {
        let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        if covered == full {
            out.push(chosen);
            return;
        }
        let u = (!covered).trailing_zeros() as usize;
        for &b in &through[u] {
            if chosen & (1 << b) == 0 && tiles[b] & covered == 0 {
                walk(
                    n,
                    tiles,
                    through,
                    covered | tiles[b],
                    chosen | (1 << b),
                    out,
                );
            }
        }
    }
    let through: Vec<Vec<usize>> = (0..n).map(tile_through).collect();
    let mut out = Vec::new();
    walk(n, tiles, &through, 0, 0, &mut out);
    out.sort_by(|&x, &y| BitIter(x).cmp(BitIter(y)));
    out
}

fn mask_points(points: impl Iterator<Item = usize>) -> u64 {
    points.fold(0, |m, p| m | (1 << p))
}

fn right_complements(square: &LatinSquare, a: &Configuration) -> Vec<u64> {
    let n = square.order();
    let tiles: Vec<u64> = (0..n)
        .map(|b| mask_points(a.iter().map(|x| square.right_div(b, x))))
        .collect();
    // u = b / x  iff  b = u * x
    exact_covers(n, &tiles, &|u| {
        let mut bs: Vec<usize> = a.iter().map(|x| square.mul(u, x)).collect();
        bs.sort_unstable();
        bs
    })
}

fn bijective(n: usize, images: impl Iterator<Item = usize>) -> bool {
    let mut hit = vec![false; n];
    let mut count = 0;
    for v in images {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return false;
        }
        count += 1;
    }
    count == n
}

/// Whether `(b, a) -> b / a` maps `B×A` bijectively onto `X`.
pub fn is_right_complement(square: &LatinSquare, a: &Configuration, b: &Configuration) -> bool {
    let n = square.order();
    a.validate(n).is_ok()
        && b.validate(n).is_ok()
        && bijective(
            n,
            b.iter()
                .flat_map(|y| a.iter().map(move |x| square.right_div(y, x))),
        )
}

/// Whether `(a, b) -> a * b` maps `A×B` bijectively onto `X`.
pub fn is_left_factorization(square: &LatinSquare, a: &Configuration, b: &Configuration) -> bool {
    let n = square.order();
    a.validate(n).is_ok()
        && b.validate(n).is_ok()
        && bijective(
            n,
            a.iter()
                .flat_map(|x| b.iter().map(move |y| square.mul(x, y))),
        )
}

/// `A×A -> X` bijective under both `*` and `/`.
pub fn is_self_complemented(square: &LatinSquare, a: &Configuration) -> bool {
    let n = square.order();
    a.validate(n).is_ok()
        && bijective(
            n,
            a.iter()
                .flat_map(|x| a.iter().map(move |y| square.mul(x, y))),
        )
        && bijective(
            n,
            a.iter()
                .flat_map(|x| a.iter().map(move |y| square.right_div(x, y))),
        )
}

impl QuasiFlags {
    /// Re-checks every positive flag against the square.
    pub fn verify(&self, square: &LatinSquare, a: &Configuration) -> bool {
        self.complemented
            .as_ref()
            .is_none_or(|b| is_right_complement(square, a, b))
            && self.doubly.as_ref().is_none_or(|(b, c)| {
                is_left_factorization(square, a, b) && is_right_complement(square, b, c)
            })
            && (!self.self_complemented || is_self_complemented(square, a))
    }
}

/// Classifies `a` against the three complementation notions.
pub fn quasi_classify_subset(square: &LatinSquare, a: &Configuration) -> Result<QuasiFlags> {
    let n = square.order();
    a.validate_nonempty(n)?;
    if n > 64 {
        return Err(Error::CapExceeded {
            what: "quasigroup order for exact cover",
            cap: 64,
        });
    }
    let complemented = right_complements(square, a)
        .first()
        .map(|&m| Configuration::from_mask(m));

    let product_tiles: Vec<u64> = (0..n)
        .map(|b| mask_points(a.iter().map(|x| square.mul(x, b))))
        .collect();
    // u = x * b  iff  b = x \ u
    let left_covers = exact_covers(n, &product_tiles, &|u| {
        let mut bs: Vec<usize> = a.iter().map(|x| square.left_div(x, u)).collect();
        bs.sort_unstable();
        bs
    });
    let doubly = left_covers.into_iter().find_map(|m| {
        let b = Configuration::from_mask(m);
        let c = right_complements(square, &b).first().copied()?;
        Some((b, Configuration::from_mask(c)))
    });
    let self_complemented = is_self_complemented(square, a);
    Ok(QuasiFlags {
        complemented,
        doubly,
        self_complemented,
    })
}

/// Least coloring `chi: X -> |A|` bijective on every `x * A`.
pub fn quasi_kaleidoscopic(square: &LatinSquare, a: &Configuration) -> Result<Option<Coloring>> {
    Ok(quasi_kaleidoscopic_search(square, a, None)?.outcome.found())
}

/// [`quasi_kaleidoscopic`] with an optional node budget.
pub fn quasi_kaleidoscopic_search(
    square: &LatinSquare,
    a: &Configuration,
    budget: Option<u64>,
) -> Result<SearchReport<Coloring>> {
    let n = square.order();
    a.validate_nonempty(n)?;
    if a.len() > 128 {
        return Err(Error::CapExceeded {
            what: "palette size",
            cap: 128,
        });
    }
    let mut edges: Vec<Vec<usize>> = (0..n).map(|x| square.row_image(x, a).into()).collect();
    edges.sort();
    edges.dedup();
    Ok(RainbowProblem::new(n, a.len(), edges).solve(budget))
}

/// Checks a coloring against the hyperedges `x * A`.
pub fn verify_quasi_kaleidoscopic(square: &LatinSquare, a: &Configuration, chi: &Coloring) -> bool {
    let n = square.order();
    a.validate_nonempty(n).is_ok()
        && chi.palette == a.len()
        && chi.colors.len() == n
        && crate::rainbow::is_rainbow(
            &(0..n)
                .map(|x| square.row_image(x, a).into())
                .collect::<Vec<Vec<usize>>>(),
            chi,
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    fn set(p: &[usize]) -> Configuration {
        Configuration::new(p.iter().copied())
    }

    #[test]
    fn order9_rows() {
        let r = order9_rectangle();
        assert_eq!(r.table()[0], vec![0, 3, 4]);
        assert_eq!(r.table()[4], vec![4, 5, 0]);
        assert_eq!(r.table()[8], vec![8, 2, 3]);
        assert!(ryser_completable(&r));
    }

    #[test]
    fn ryser_small_cases() {
        let one = PartialRectangle::from_one_based(2, &[&[1]]).unwrap();
        assert!(ryser_completable(&one));
        let full = PartialRectangle::from_one_based(2, &[&[1, 2], &[2, 1]]).unwrap();
        assert!(ryser_completable(&full));
        // 2 appears once in a 2x2 block over 3 symbols: needs 1, fine;
        // 3 never appears in a 2x3 block over 3 symbols
        let bad = PartialRectangle::from_one_based(3, &[&[1, 2], &[2, 1]]).unwrap();
        assert!(!ryser_completable(&bad));
        assert_eq!(complete_rectangle(&bad), None);
    }

    #[test]
    fn short_row_completes() {
        let rect = PartialRectangle::from_one_based(6, &[&[6, 5, 4, 2]]).unwrap();
        assert!(complete_rectangle(&rect).unwrap().extends(&rect));
    }

    #[test]
    fn completions() {
        let full = PartialRectangle::from_one_based(2, &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(
            complete_rectangle(&full).unwrap().rows(),
            &[vec![0, 1], vec![1, 0]]
        );
        let one = PartialRectangle::from_one_based(2, &[&[1]]).unwrap();
        assert_eq!(
            complete_rectangle(&one).unwrap().rows(),
            &[vec![0, 1], vec![1, 0]]
        );
        let nine = complete_rectangle(&order9_rectangle()).unwrap();
        assert!(nine.extends(&order9_rectangle()));
    }

    #[test]
    fn order9_subset() {
        let sq = complete_rectangle(&order9_rectangle()).unwrap();
        let a = set(&[0, 1, 2]);
        let flags = quasi_classify_subset(&sq, &a).unwrap();
        assert!(flags.self_complemented);
        assert!(flags.verify(&sq, &a));
        assert_eq!(quasi_kaleidoscopic(&sq, &a).unwrap(), None);
    }

    #[test]
    fn trivial_subsets() {
        let one = LatinSquare::new(vec![vec![0]]).unwrap();
        assert!(
            quasi_classify_subset(&one, &set(&[0]))
                .unwrap()
                .self_complemented
        );
        let two = LatinSquare::cayley(&parse_group_spec("C2").unwrap());
        assert!(
            !quasi_classify_subset(&two, &set(&[0]))
                .unwrap()
                .self_complemented
        );
        let whole = quasi_kaleidoscopic(&two, &set(&[0, 1])).unwrap().unwrap();
        assert_eq!(whole.colors, vec![0, 1]);
    }

    #[test]
    fn group_square_matches_translates() {
        let sq = LatinSquare::cayley(&parse_group_spec("C4").unwrap());
        let chi = quasi_kaleidoscopic(&sq, &set(&[0, 1])).unwrap().unwrap();
        assert_eq!(chi.colors, vec![0, 1, 0, 1]);
        assert!(verify_quasi_kaleidoscopic(&sq, &set(&[0, 1]), &chi));
    }

    #[test]
    fn divisions() {
        let sq = complete_rectangle(&order9_rectangle()).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(sq.mul(sq.right_div(b, a), a), b);
                assert_eq!(sq.mul(a, sq.left_div(a, b)), b);
            }
        }
    }

    #[test]
    fn file_formats() {
        let sq = parse_latin_square("2\n1 2\n2 1\n").unwrap();
        assert_eq!(sq.to_string(), "2\n1 2\n2 1\n");
        assert!(parse_latin_square("2\n1 2\n1 2\n").is_err());
        assert!(parse_latin_square("2\n1 2\n").is_err());
        let rect = parse_partial_rectangle(
            "9 9 3\n1 4 5\n6 2 7\n8 9 3\n4 1 6\n5 6 1\n2 7 8\n7 8 2\n3 5 9\n9 3 4\n",
        )
        .unwrap();
        assert_eq!(rect, order9_rectangle());
        assert!(parse_partial_rectangle("3 1 2\n1 4\n").is_err());
        assert!(parse_partial_rectangle("3 2 1\n1\n1\n").is_err());
    }
}
