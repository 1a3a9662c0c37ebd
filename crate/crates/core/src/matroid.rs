//! Matroids given by explicit bases sets, their lattices of flats, the
//! subspace lattices of finite prime-field vector spaces, and polytope
//! subdivision fixtures for valuation checks.
//!
//! Ground sets are tiny here (at most a couple dozen elements), so bases
//! and flats are bitmask subsets and every oracle works directly off the
//! bases list.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::invariants::RankedLattice;
use crate::poly::LaurentPoly;
use crate::poset::Poset;

const MAX_GROUND: usize = 25;

/// A matroid on ground set `{0, ..., ground-1}` stored by its bases,
/// validated against the basis exchange axiom at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: usize,
    bases: Vec<u32>,
    rank: usize,
    name: Option<String>,
}

fn subset_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn vec_to_subset(elems: &[usize]) -> u32 {
    elems.iter().fold(0, |m, &e| m | 1 << e)
}

fn subset_label(mask: u32) -> String {
    let elems: Vec<String> = subset_to_vec(mask).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

impl Matroid {
    /// Validate and build from explicit bases (as element-index sets).
    pub fn from_bases(ground: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
        if ground > MAX_GROUND {
            return Err(Error::SizeBound(format!("ground set of size {ground}")));
        }
        if bases.is_empty() {
            return Err(Error::ExchangeAxiom(
                "a matroid needs at least one basis".into(),
            ));
        }
        let mut masks = BTreeSet::new();
        for b in bases {
            for &e in b {
                if e >= ground {
                    return Err(Error::Index {
                        index: e,
                        size: ground,
                    });
                }
            }
            let mask = vec_to_subset(b);
            if (mask.count_ones() as usize) != b.len() {
                return Err(Error::ExchangeAxiom(format!(
                    "repeated element in basis {b:?}"
                )));
            }
            masks.insert(mask);
        }
        let masks: Vec<u32> = masks.into_iter().collect();
        let rank = masks[0].count_ones() as usize;
        if masks.iter().any(|m| m.count_ones() as usize != rank) {
            return Err(Error::ExchangeAxiom("bases have different sizes".into()));
        }
        // Exchange: for bases B1, B2 and e in B1 \ B2 there is f in B2 \ B1
        // with B1 - e + f a basis.
        let set: BTreeSet<u32> = masks.iter().copied().collect();
        for &b1 in &masks {
            for &b2 in &masks {
                let only1 = b1 & !b2;
                for e in subset_to_vec(only1) {
                    let found = subset_to_vec(b2 & !b1)
                        .into_iter()
                        .any(|f| set.contains(&(b1 & !(1 << e) | 1 << f)));
                    if !found {
                        return Err(Error::ExchangeAxiom(format!(
                            "no exchange for element {e} between {} and {}",
                            subset_label(b1),
                            subset_label(b2)
                        )));
                    }
                }
            }
        }
        Ok(Matroid {
            ground,
            bases: masks,
            rank,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Matroid {
        self.name = Some(name.into());
        self
    }

    /// Uniform matroid: every r-subset of an n-set is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::Arity(format!(
                "uniform matroid needs r <= n, got {r} > {n}"
            )));
        }
        if n > MAX_GROUND {
            return Err(Error::SizeBound(format!("ground set of size {n}")));
        }
        let mut bases = Vec::new();
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize == r {
                bases.push(mask);
            }
        }
        Ok(Matroid {
            ground: n,
            bases,
            rank: r,
            name: Some(format!("U({r},{n})")),
        })
    }

    /// The free (Boolean) matroid: the whole ground set is the one basis.
    pub fn boolean(n: usize) -> Result<Matroid> {
        Ok(Matroid::uniform(n, n)?.with_name(format!("B({n})")))
    }

    /// Graphic matroid of an edge list; bases are the maximal spanning
    /// forests, and the ground set indexes the edges in the given order.
    pub fn graphic(edges: &[(usize, usize)]) -> Result<Matroid> {
        if edges.len() > MAX_GROUND {
            return Err(Error::SizeBound(format!("{} edges", edges.len())));
        }
        let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let m = edges.len();
        let full_rank = forest_rank(vertices, edges, (1u32 << m) - 1);
        let mut bases = Vec::new();
        for mask in 0u32..1 << m {
            if mask.count_ones() as usize == full_rank
                && forest_rank(vertices, edges, mask) == full_rank
            {
                bases.push(mask);
            }
        }
        if bases.is_empty() {
            // edgeless graph: the empty set is the unique basis
            bases.push(0);
        }
        Ok(Matroid {
            ground: m,
            bases,
            rank: full_rank,
            name: None,
        })
    }

    /// Columns over the prime field GF(p); bases are the maximal
    /// independent column sets.
    pub fn vector(p: u8, columns: &[Vec<u8>]) -> Result<Matroid> {
        if !is_prime(p) {
            return Err(Error::Arity(format!("{p} is not prime")));
        }
        if columns.len() > MAX_GROUND {
            return Err(Error::SizeBound(format!("{} columns", columns.len())));
        }
        let m = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != m) {
            return Err(Error::Arity("columns must all have the same height".into()));
        }
        let n = columns.len();
        let full = gf_rank(p, columns, (1u32 << n) - 1);
        let mut bases = Vec::new();
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize == full && gf_rank(p, columns, mask) == full {
                bases.push(mask);
            }
        }
        if bases.is_empty() {
            bases.push(0);
        }
        Ok(Matroid {
            ground: n,
            bases,
            rank: full,
            name: None,
        })
    }

    /// Dual matroid: bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let full = (1u32 << self.ground) - 1;
        let mut bases: Vec<u32> = self.bases.iter().map(|b| full & !b).collect();
        bases.sort_unstable();
        Matroid {
            ground: self.ground,
            bases,
            rank: self.ground - self.rank,
            name: self.name.as_ref().map(|n| format!("dual({n})")),
        }
    }

    /// Delete one element, relabeling the ground set past it down by one.
    pub fn delete(&self, e: usize) -> Result<Matroid> {
        if e >= self.ground {
            return Err(Error::Index {
                index: e,
                size: self.ground,
            });
        }
        let avoiding: Vec<u32> = self
            .bases
            .iter()
            .copied()
            .filter(|b| b >> e & 1 == 0)
            .collect();
        let kept = if avoiding.is_empty() {
            // e is a coloop: drop it from every basis
            self.bases.iter().map(|b| b & !(1 << e)).collect()
        } else {
            avoiding
        };
        let mut bases: Vec<u32> = kept.into_iter().map(|b| drop_bit(b, e)).collect();
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].count_ones() as usize;
        Ok(Matroid {
            ground: self.ground - 1,
            bases,
            rank,
            name: None,
        })
    }

    /// Contract one element, relabeling the ground set past it down by one.
    pub fn contract(&self, e: usize) -> Result<Matroid> {
        if e >= self.ground {
            return Err(Error::Index {
                index: e,
                size: self.ground,
            });
        }
        let through: Vec<u32> = self
            .bases
            .iter()
            .copied()
            .filter(|b| b >> e & 1 == 1)
            .collect();
        let kept: Vec<u32> = if through.is_empty() {
            // e is a loop: contraction is deletion
            self.bases.clone()
        } else {
            through.into_iter().map(|b| b & !(1 << e)).collect()
        };
        let mut bases: Vec<u32> = kept.into_iter().map(|b| drop_bit(b, e)).collect();
        bases.sort_unstable();
        bases.dedup();
        let rank = bases[0].count_ones() as usize;
        Ok(Matroid {
            ground: self.ground - 1,
            bases,
            rank,
            name: None,
        })
    }

    /// Direct sum: disjoint ground sets, bases are unions.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let ground = self.ground + other.ground;
        if ground > MAX_GROUND {
            return Err(Error::SizeBound(format!("ground set of size {ground}")));
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a | b << self.ground);
            }
        }
        bases.sort_unstable();
        Ok(Matroid {
            ground,
            bases,
            rank: self.rank + other.rank,
            name: None,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn bases(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.bases.iter().map(|&b| subset_to_vec(b))
    }

    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }

    pub(crate) fn bases_masks(&self) -> &[u32] {
        &self.bases
    }

    /// Rank oracle: `max |S ∩ B|` over bases.
    pub fn rank_of(&self, subset: &[usize]) -> usize {
        self.rank_of_mask(vec_to_subset(subset))
    }

    fn rank_of_mask(&self, mask: u32) -> usize {
        self.bases
            .iter()
            .map(|&b| (b & mask).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Closure oracle: all elements whose addition keeps the rank.
    pub fn closure(&self, subset: &[usize]) -> Vec<usize> {
        subset_to_vec(self.closure_mask(vec_to_subset(subset)))
    }

    fn closure_mask(&self, mask: u32) -> u32 {
        let r = self.rank_of_mask(mask);
        let mut out = mask;
        for e in 0..self.ground {
            if out >> e & 1 == 0 && self.rank_of_mask(mask | 1 << e) == r {
                out |= 1 << e;
            }
        }
        out
    }

    /// The lattice of flats (closed sets ordered by inclusion), ranked by
    /// matroid rank. Always geometric.
    pub fn flats_lattice(&self) -> Result<RankedLattice> {
        if self.ground > 20 {
            return Err(Error::SizeBound(format!(
                "flats of a {}-element ground set",
                self.ground
            )));
        }
        let mut flats: Vec<u32> = (0u32..1 << self.ground)
            .filter(|&s| self.closure_mask(s) == s)
            .collect();
        flats.sort_by_key(|&f| (self.rank_of_mask(f), f));
        let k = flats.len();
        let poset = Poset::from_leq(k, |i, j| flats[i] & !flats[j] == 0)?
            .with_ranks(flats.iter().map(|&f| self.rank_of_mask(f) as u32).collect())?
            .with_labels(flats.iter().map(|&f| subset_label(f)).collect())?;
        RankedLattice::new(Arc::new(poset))
    }

    /// Modular matroid: pairwise rank equality on the lattice of flats.
    pub fn is_modular(&self) -> Result<bool> {
        self.flats_lattice()?.poset().is_modular_lattice()
    }

    /// Connected: no proper nonempty separator, i.e. no subset S with
    /// `rank(S) + rank(E \ S) = rank(E)`.
    pub fn is_connected(&self) -> bool {
        if self.ground <= 1 {
            return true;
        }
        let full = (1u32 << self.ground) - 1;
        for s in 1..full {
            if self.rank_of_mask(s) + self.rank_of_mask(full & !s) == self.rank {
                return false;
            }
        }
        true
    }
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).all(|d| !p.is_multiple_of(d))
}

/// Remove bit `e` and shift the higher bits down.
fn drop_bit(mask: u32, e: usize) -> u32 {
    let low = mask & ((1 << e) - 1);
    let high = mask >> (e + 1);
    low | high << e
}

/// Rank of an edge subset in a graphic matroid: vertices touched minus
/// components (union-find).
fn forest_rank(vertices: usize, edges: &[(usize, usize)], mask: u32) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut rank = 0;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let ru = find(&mut parent, u);
            let rv = find(&mut parent, v);
            if ru != rv {
                parent[ru] = rv;
                rank += 1;
            }
        }
    }
    rank
}

/// Rank over GF(p) of the selected columns, by elimination.
#[allow(clippy::needless_range_loop)]
fn gf_rank(p: u8, columns: &[Vec<u8>], mask: u32) -> usize {
    let m = columns.first().map_or(0, Vec::len);
    let mut mat: Vec<Vec<u8>> = columns
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, c)| c.clone())
        .collect();
    let n = mat.len();
    let mut rank = 0;
    for row in 0..m {
        let Some(pivot) = (rank..n).find(|&c| mat[c][row] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = gf_inv(p, mat[rank][row]);
        for r in row..m {
            mat[rank][r] = (mat[rank][r] as u16 * inv as u16 % p as u16) as u8;
        }
        for c in 0..n {
            if c != rank && mat[c][row] != 0 {
                let factor = mat[c][row] as u16;
                for r in row..m {
                    let sub = factor * mat[rank][r] as u16 % p as u16;
                    mat[c][r] = ((mat[c][r] as u16 + p as u16 - sub) % p as u16) as u8;
                }
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

fn gf_inv(p: u8, a: u8) -> u8 {
    (1..p)
        .find(|&x| (x as u16 * a as u16) % p as u16 == 1)
        .expect("nonzero element of a prime field")
}

// ----- subspace lattices ---------------------------------------------------

pub const DEFAULT_POINT_BOUND: u64 = 81;

/// The lattice of all subspaces of an n-dimensional vector space over the
/// prime field GF(q), enumerated through canonical reduced row echelon
/// representatives and ordered by containment. Bounded by `q^n <= 81` by
/// default to stay at desk scale.
pub fn subspace_lattice(q: u64, n: u32) -> Result<RankedLattice> {
    subspace_lattice_with_bound(q, n, DEFAULT_POINT_BOUND)
}

pub fn subspace_lattice_with_bound(q: u64, n: u32, max_points: u64) -> Result<RankedLattice> {
    if q < 2 || (2..q).any(|d| q.is_multiple_of(d)) {
        return Err(Error::Arity(format!("{q} is not prime")));
    }
    let points = q
        .checked_pow(n)
        .ok_or_else(|| Error::SizeBound("q^n overflows".into()))?;
    if points > max_points || points > 128 {
        return Err(Error::SizeBound(format!(
            "q^n = {points} exceeds the bound {max_points}"
        )));
    }

    let n = n as usize;
    let qv = q as u8;
    // All reduced row echelon forms: choose pivot columns, then every
    // assignment of the free cells.
    let mut spaces: Vec<(Vec<Vec<u8>>, u128)> = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let mut free_cells = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..n {
                    if !pivots.contains(&c) {
                        free_cells.push((i, c));
                    }
                }
            }
            let mut assignment = vec![0u8; free_cells.len()];
            loop {
                let mut rows = vec![vec![0u8; n]; k];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i][pc] = 1;
                }
                for (slot, &(i, c)) in free_cells.iter().enumerate() {
                    rows[i][c] = assignment[slot];
                }
                spaces.push((rows.clone(), span_bitmask(qv, n, &rows)));
                // odometer over GF(q) assignments
                let mut pos = 0;
                loop {
                    if pos == assignment.len() {
                        break;
                    }
                    assignment[pos] += 1;
                    if assignment[pos] < qv {
                        break;
                    }
                    assignment[pos] = 0;
                    pos += 1;
                }
                if pos == assignment.len() {
                    break;
                }
            }
        }
    }
    spaces.sort_by_key(|(rows, mask)| (rows.len(), *mask));
    let size = spaces.len();
    let masks: Vec<u128> = spaces.iter().map(|(_, m)| *m).collect();
    let poset = Poset::from_leq(size, |i, j| masks[i] & !masks[j] == 0)?
        .with_ranks(spaces.iter().map(|(rows, _)| rows.len() as u32).collect())?
        .with_labels(spaces.iter().map(|(rows, _)| rref_label(rows)).collect())?;
    RankedLattice::new(Arc::new(poset))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Bitmask over all q^n vectors of the span of the given rows; vector
/// (v_0, ..., v_{n-1}) is bit `sum v_i q^i`.
fn span_bitmask(q: u8, n: usize, rows: &[Vec<u8>]) -> u128 {
    let k = rows.len();
    let mut mask = 0u128;
    let mut coeffs = vec![0u8; k];
    loop {
        let mut v = vec![0u8; n];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (j, slot) in v.iter_mut().enumerate() {
                    *slot = ((*slot as u16 + c as u16 * rows[i][j] as u16) % q as u16) as u8;
                }
            }
        }
        let mut index = 0u128;
        for &coord in v.iter().rev() {
            index = index * q as u128 + coord as u128;
        }
        mask |= 1 << index;
        let mut pos = 0;
        loop {
            if pos == k {
                return mask;
            }
            coeffs[pos] += 1;
            if coeffs[pos] < q {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
    }
}

fn rref_label(rows: &[Vec<u8>]) -> String {
    if rows.is_empty() {
        return "<0>".to_string();
    }
    let parts: Vec<String> = rows
        .iter()
        .map(|r| r.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    format!("<{}>", parts.join(","))
}

// ----- JSON descriptors -----------------------------------------------------

/// Recipe for building a matroid; this is the JSON-facing form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MatroidDescriptor {
    Uniform {
        r: usize,
        n: usize,
    },
    Graphic {
        edges: Vec<(usize, usize)>,
    },
    Bases {
        ground: usize,
        bases: Vec<Vec<usize>>,
    },
    Dual {
        of: Box<MatroidDescriptor>,
    },
    DirectSum {
        parts: Vec<MatroidDescriptor>,
    },
}

impl MatroidDescriptor {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidDescriptor::Uniform { r, n } => Matroid::uniform(*r, *n),
            MatroidDescriptor::Graphic { edges } => Matroid::graphic(edges),
            MatroidDescriptor::Bases { ground, bases } => Matroid::from_bases(*ground, bases),
            MatroidDescriptor::Dual { of } => Ok(of.build()?.dual()),
            MatroidDescriptor::DirectSum { parts } => {
                let mut parts = parts.iter();
                let first = parts
                    .next()
                    .ok_or_else(|| Error::Arity("direct sum needs at least one part".into()))?
                    .build()?;
                parts.try_fold(first, |acc, d| acc.direct_sum(&d.build()?))
            }
        }
    }
}

impl Serialize for Matroid {
    /// Serializes in the explicit-bases form.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatroidDescriptor::Bases {
            ground: self.ground,
            bases: self.bases().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        MatroidDescriptor::deserialize(d)?
            .build()
            .map_err(D::Error::custom)
    }
}

// ----- subdivision fixtures --------------------------------------------------

/// A matroid polytope subdivision given as data: the parent matroid, the
/// maximal pieces, and the nonempty intersections of piece subsets (keyed
/// by sorted piece-index lists of length >= 2). Vertices of each piece
/// must be vertices of the parent, and a supplied intersection matroid
/// must have exactly the common bases of its pieces.
#[derive(Debug, Clone)]
pub struct SubdivisionFixture {
    pub parent: Matroid,
    pub pieces: Vec<Matroid>,
    pub intersections: BTreeMap<Vec<usize>, Option<Matroid>>,
}

impl SubdivisionFixture {
    pub fn new(
        parent: Matroid,
        pieces: Vec<Matroid>,
        intersections: BTreeMap<Vec<usize>, Option<Matroid>>,
    ) -> Result<SubdivisionFixture> {
        let fix = SubdivisionFixture {
            parent,
            pieces,
            intersections,
        };
        fix.validate()?;
        Ok(fix)
    }

    fn validate(&self) -> Result<()> {
        let ground = self.parent.ground_size();
        let parent_bases: BTreeSet<u32> = self.parent.bases_masks().iter().copied().collect();
        if self.pieces.is_empty() {
            return Err(Error::Fixture(
                "a subdivision needs at least one piece".into(),
            ));
        }
        for (i, piece) in self.pieces.iter().enumerate() {
            if piece.ground_size() != ground {
                return Err(Error::Fixture(format!(
                    "piece {i} lives on a different ground set"
                )));
            }
            if piece
                .bases_masks()
                .iter()
                .any(|b| !parent_bases.contains(b))
            {
                return Err(Error::Fixture(format!(
                    "piece {i} has a vertex outside the parent polytope"
                )));
            }
        }
        let k = self.pieces.len();
        for (key, entry) in &self.intersections {
            let ok_key =
                key.len() >= 2 && key.windows(2).all(|w| w[0] < w[1]) && key.iter().all(|&i| i < k);
            if !ok_key {
                return Err(Error::Fixture(format!("bad intersection key {key:?}")));
            }
            if let Some(m) = entry {
                if m.ground_size() != ground {
                    return Err(Error::Fixture(format!(
                        "intersection {key:?} lives on a different ground set"
                    )));
                }
            }
        }
        // Every piece subset of size >= 2 with common bases must be
        // supplied, and supplied data must match the common bases.
        for mask in 1u32..1 << k {
            if mask.count_ones() < 2 {
                continue;
            }
            let subset: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            let common = self.common_bases(&subset);
            match self.intersections.get(&subset) {
                Some(Some(m)) => {
                    let have: BTreeSet<u32> = m.bases_masks().iter().copied().collect();
                    if have != common {
                        return Err(Error::Fixture(format!(
                            "intersection {subset:?} does not match the common bases of its pieces"
                        )));
                    }
                }
                Some(None) | None => {
                    if !common.is_empty() {
                        return Err(Error::Fixture(format!(
                            "pieces {subset:?} share vertices but no intersection matroid is supplied"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn common_bases(&self, subset: &[usize]) -> BTreeSet<u32> {
        let mut iter = subset.iter();
        let first = *iter.next().expect("nonempty subset");
        let mut acc: BTreeSet<u32> = self.pieces[first].bases_masks().iter().copied().collect();
        for &i in iter {
            let other: BTreeSet<u32> = self.pieces[i].bases_masks().iter().copied().collect();
            acc = acc.intersection(&other).copied().collect();
        }
        acc
    }

    fn intersection_matroid(&self, subset: &[usize]) -> Option<&Matroid> {
        if subset.len() == 1 {
            return Some(&self.pieces[subset[0]]);
        }
        self.intersections.get(subset).and_then(Option::as_ref)
    }
}

/// Result of an inclusion-exclusion check over a subdivision.
#[derive(Debug, Clone)]
pub struct ValuationReport {
    pub parent_value: LaurentPoly,
    pub inclusion_exclusion: LaurentPoly,
    /// `parent_value - inclusion_exclusion`; zero means the invariant
    /// respects this subdivision.
    pub residual: LaurentPoly,
}

/// Evaluate `f(parent) - sum_{∅ != I ⊆ pieces} (-1)^(|I|+1) f(∩ pieces_I)`
/// exactly, with empty intersections contributing nothing.
pub fn valuation_check<F>(fix: &SubdivisionFixture, invariant: F) -> Result<ValuationReport>
where
    F: Fn(&Matroid) -> Result<LaurentPoly>,
{
    fix.validate()?;
    let k = fix.pieces.len();
    let parent_value = invariant(&fix.parent)?;
    let mut incl_excl = LaurentPoly::zero();
    for mask in 1u32..1 << k {
        let subset: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        if let Some(m) = fix.intersection_matroid(&subset) {
            let v = invariant(m)?;
            if mask.count_ones() % 2 == 1 {
                incl_excl = &incl_excl + &v;
            } else {
                incl_excl = &incl_excl - &v;
            }
        }
    }
    let residual = &parent_value - &incl_excl;
    Ok(ValuationReport {
        parent_value,
        inclusion_exclusion: incl_excl,
        residual,
    })
}

/// The standard split of the rank-2 uniform matroid on 4 elements along
/// the hyperplane `x_0 + x_1 = 1`: two pieces, one common face.
pub fn u24_split_fixture() -> SubdivisionFixture {
    let parent = Matroid::uniform(2, 4).expect("uniform(2,4)");
    let all: Vec<Vec<usize>> = parent.bases().collect();
    let not01: Vec<Vec<usize>> = all
        .iter()
        .filter(|b| b.as_slice() != [0, 1])
        .cloned()
        .collect();
    let not23: Vec<Vec<usize>> = all
        .iter()
        .filter(|b| b.as_slice() != [2, 3])
        .cloned()
        .collect();
    let both: Vec<Vec<usize>> = all
        .iter()
        .filter(|b| b.as_slice() != [0, 1] && b.as_slice() != [2, 3])
        .cloned()
        .collect();
    let m1 = Matroid::from_bases(4, &not01)
        .expect("piece 1")
        .with_name("U(2,4) minus {0,1}");
    let m2 = Matroid::from_bases(4, &not23)
        .expect("piece 2")
        .with_name("U(2,4) minus {2,3}");
    let m12 = Matroid::from_bases(4, &both).expect("common face");
    let mut intersections = BTreeMap::new();
    intersections.insert(vec![0, 1], Some(m12));
    SubdivisionFixture::new(parent, vec![m1, m2], intersections).expect("the split is consistent")
}

/// JSON-facing fixture description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixtureDescriptor {
    pub parent: MatroidDescriptor,
    pub pieces: Vec<MatroidDescriptor>,
    #[serde(default)]
    pub intersections: Vec<IntersectionEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntersectionEntry {
    pub pieces: Vec<usize>,
    pub matroid: Option<MatroidDescriptor>,
}

impl FixtureDescriptor {
    pub fn build(&self) -> Result<SubdivisionFixture> {
        let parent = self.parent.build()?;
        let pieces = self
            .pieces
            .iter()
            .map(MatroidDescriptor::build)
            .collect::<Result<Vec<_>>>()?;
        let mut intersections = BTreeMap::new();
        for entry in &self.intersections {
            let m = entry
                .matroid
                .as_ref()
                .map(MatroidDescriptor::build)
                .transpose()?;
            intersections.insert(entry.pieces.clone(), m);
        }
        SubdivisionFixture::new(parent, pieces, intersections)
    }
}

/// Convenience: the J-characteristic polynomial of a matroid through its
/// lattice of flats.
pub fn matroid_j_char(m: &Matroid) -> Result<LaurentPoly> {
    Ok(crate::invariants::j_char_poly(&m.flats_lattice()?))
}

/// Convenience: the J-Mobius polynomial of a matroid through its lattice
/// of flats.
pub fn matroid_j_mobius(m: &Matroid) -> Result<LaurentPoly> {
    Ok(crate::invariants::j_mobius_poly(&m.flats_lattice()?))
}

/// Convenience: the classical characteristic polynomial of a matroid.
pub fn matroid_char(m: &Matroid) -> Result<LaurentPoly> {
    Ok(crate::invariants::char_poly(&m.flats_lattice()?))
}

/// `M(matroid, -1)` through the lattice of flats.
pub fn matroid_m_at_minus_one(m: &Matroid) -> Result<BigInt> {
    Ok(crate::invariants::eval_at_minus_one(&m.flats_lattice()?))
}

/// Complete bipartite edge list K(a,b) on vertices 0..a and a..a+b.
pub fn complete_bipartite_edges(a: usize, b: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    edges
}

/// Complete graph edge list on n vertices.
pub fn complete_graph_edges(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    edges
}
