//! Catalog scan of small simple matroids: which ones have -1 as a root of
//! the J-Mobius polynomial?
//!
//! The J-Mobius polynomial of a matroid only sees the lattice of flats,
//! which is blind to loops and parallel copies, so scanning simple
//! matroids covers all small matroids up to simplification. Rank <= 2
//! simple matroids are uniform; rank-3 simple matroids correspond to line
//! arrangements (families of >= 3-point lines meeting pairwise in at most
//! one point), enumerated here with brute-force isomorphism rejection.
//! Every candidate's bases set is re-validated through the exchange-axiom
//! constructor before it enters the catalog.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{complete_bipartite_edges, matroid_m_at_minus_one, Matroid};

/// One catalog row.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub ground: usize,
    pub rank: usize,
    pub connected: bool,
    pub modular: bool,
    /// J-Mobius polynomial evaluated at -1 (decimal string to keep the
    /// JSON schema simple).
    pub m_at_minus_one: String,
    pub vanishes: bool,
}

/// Scan all simple matroids with the given bounds, plus the pinned
/// dual-graphic example on 9 elements (a connected non-modular matroid
/// whose J-Mobius polynomial vanishes at -1).
pub fn search_minus_one_roots(max_ground: usize, max_rank: usize) -> Result<Vec<CatalogEntry>> {
    if max_ground > 7 {
        return Err(Error::SizeBound(format!(
            "exhaustive rank-3 enumeration is limited to 7 ground elements, got {max_ground}"
        )));
    }
    if max_rank > 3 {
        return Err(Error::SizeBound(format!(
            "exhaustive enumeration is limited to rank 3, got {max_rank}"
        )));
    }
    let mut rows = Vec::new();
    // rank 0 and rank 1: the empty matroid and the single coloop are the
    // only simple ones.
    if max_ground >= 1 && max_rank >= 1 {
        rows.push(entry(&Matroid::uniform(1, 1)?.with_name("U(1,1)"))?);
    }
    // rank 2: all points distinct means uniform.
    if max_rank >= 2 {
        for n in 2..=max_ground {
            rows.push(entry(&Matroid::uniform(2, n)?)?);
        }
    }
    // rank 3: line arrangements. A family whose single line swallows all
    // points has rank 2 and is already covered by the uniform scan.
    if max_rank >= 3 {
        for n in 3..=max_ground {
            for lines in line_arrangements(n) {
                let Ok(m) = matroid_from_lines(n, &lines) else {
                    continue;
                };
                let name = describe_lines(n, &lines);
                rows.push(entry(&m.with_name(name))?);
            }
        }
    }
    // Pinned known positive: the dual of the graphic matroid of the
    // complete bipartite graph on 3+3 vertices.
    let k33_dual = Matroid::graphic(&complete_bipartite_edges(3, 3))?
        .dual()
        .with_name("dual(graphic(K33))");
    rows.push(entry(&k33_dual)?);
    Ok(rows)
}

fn entry(m: &Matroid) -> Result<CatalogEntry> {
    let value = matroid_m_at_minus_one(m)?;
    Ok(CatalogEntry {
        name: m.name().unwrap_or("unnamed").to_string(),
        ground: m.ground_size(),
        rank: m.rank(),
        connected: m.is_connected(),
        modular: m.is_modular()?,
        vanishes: value.is_zero(),
        m_at_minus_one: value.to_string(),
    })
}

/// All families of lines (subsets of size >= 3 of an n-point set) meeting
/// pairwise in at most one point, up to isomorphism. The empty family is
/// included (it is the uniform matroid of rank 3).
fn line_arrangements(n: usize) -> Vec<Vec<u32>> {
    let candidates: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() >= 3).collect();
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    let mut cur: Vec<u32> = Vec::new();

    fn compatible(cur: &[u32], cand: u32) -> bool {
        cur.iter().all(|&l| (l & cand).count_ones() <= 1)
    }

    fn go(
        n: usize,
        candidates: &[u32],
        start: usize,
        cur: &mut Vec<u32>,
        seen: &mut std::collections::BTreeSet<Vec<u32>>,
        out: &mut Vec<Vec<u32>>,
    ) {
        // record the current family if new up to relabeling
        let canon = canonical_form(n, cur);
        if seen.insert(canon) {
            out.push(cur.clone());
        }
        for i in start..candidates.len() {
            if compatible(cur, candidates[i]) {
                cur.push(candidates[i]);
                go(n, candidates, i + 1, cur, seen, out);
                cur.pop();
            }
        }
    }

    go(n, &candidates, 0, &mut cur, &mut seen, &mut out);
    out
}

/// Minimum over all point relabelings of the sorted line list.
#[allow(clippy::needless_range_loop)]
fn canonical_form(n: usize, lines: &[u32]) -> Vec<u32> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u32>> = None;
    permute(&mut perm, 0, &mut |p| {
        let mut relabeled: Vec<u32> = lines
            .iter()
            .map(|&l| {
                let mut out = 0u32;
                for i in 0..n {
                    if l >> i & 1 == 1 {
                        out |= 1 << p[i];
                    }
                }
                out
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    });
    best.unwrap_or_default()
}

fn permute<F: FnMut(&[usize])>(perm: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Rank-3 simple matroid from a line family: bases are the 3-subsets not
/// inside any line. Skips families where a line swallows every point
/// (rank < 3) by erroring; callers filter with `is_ok`.
fn matroid_from_lines(n: usize, lines: &[u32]) -> Result<Matroid> {
    let mut bases = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() == 3 && !lines.iter().any(|&l| mask & !l == 0) {
            bases.push((0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>());
        }
    }
    if bases.is_empty() {
        return Err(Error::Hypothesis(
            "all points collinear: rank below 3".into(),
        ));
    }
    Matroid::from_bases(n, &bases)
}

fn describe_lines(n: usize, lines: &[u32]) -> String {
    if lines.is_empty() {
        return format!("U(3,{n})");
    }
    let parts: Vec<String> = lines
        .iter()
        .map(|&l| {
            let pts: Vec<String> = (0..n)
                .filter(|&i| l >> i & 1 == 1)
                .map(|i| i.to_string())
                .collect();
            pts.join("")
        })
        .collect();
    format!("rank3(n={n}; lines {})", parts.join(" "))
}
