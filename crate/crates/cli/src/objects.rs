//! Named object registry and JSON object parsing.
//!
//! Recognized names: `B<n>` (Boolean lattice), `C<n>` (chain),
//! `U<r>,<n>` (uniform matroid), `L<q>^<n>` (subspace lattice, also `L`
//! with --q/--n), `K3`, `K4`, `K33` (graphic matroids), `K33-dual`.
//! Anything starting with `{` is parsed as JSON: a poset
//! (`{"size":..,"covers":..}`) or a matroid descriptor (`{"type":..}`).

use std::sync::Arc;

use trinc::invariants::RankedLattice;
use trinc::matroid::{
    complete_bipartite_edges, complete_graph_edges, subspace_lattice, Matroid, MatroidDescriptor,
};
use trinc::poset::Poset;
use trinc::{Error, Result};

pub enum Obj {
    Poset(Arc<Poset>),
    Matroid(Matroid),
}

impl Obj {
    /// The poset a 2- or 3-variable incidence function lives on: the poset
    /// itself, or a matroid's lattice of flats.
    pub fn poset(&self) -> Result<Arc<Poset>> {
        match self {
            Obj::Poset(p) => Ok(Arc::clone(p)),
            Obj::Matroid(m) => Ok(Arc::clone(m.flats_lattice()?.poset())),
        }
    }

    /// The bounded ranked poset for polynomial invariants.
    pub fn ranked_lattice(&self) -> Result<RankedLattice> {
        match self {
            Obj::Poset(p) => RankedLattice::new(Arc::clone(p)),
            Obj::Matroid(m) => m.flats_lattice(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Obj::Poset(p) => format!("poset ({} elements)", p.size()),
            Obj::Matroid(m) => match m.name() {
                Some(n) => format!(
                    "matroid {n} (ground {}, rank {})",
                    m.ground_size(),
                    m.rank()
                ),
                None => format!("matroid (ground {}, rank {})", m.ground_size(), m.rank()),
            },
        }
    }
}

pub fn parse_object(text: &str, q: Option<u64>, n: Option<u32>) -> Result<Obj> {
    let text = text.trim();
    if text.starts_with('{') {
        return parse_json_object(text);
    }
    if let Some(rest) = text.strip_prefix('B') {
        if let Ok(k) = rest.parse::<usize>() {
            if k > 12 {
                return Err(Error::SizeBound(format!("B{k} is beyond desk scale")));
            }
            return Ok(Obj::Poset(Arc::new(Poset::boolean(k))));
        }
    }
    if let Some(rest) = text.strip_prefix('C') {
        if let Ok(k) = rest.parse::<usize>() {
            return Ok(Obj::Poset(Arc::new(Poset::chain(k))));
        }
    }
    if let Some(rest) = text.strip_prefix('U') {
        if let Some((r, m)) = rest.split_once(',') {
            if let (Ok(r), Ok(m)) = (r.parse::<usize>(), m.parse::<usize>()) {
                return Ok(Obj::Matroid(Matroid::uniform(r, m)?));
            }
        }
    }
    if text == "L" {
        let (q, n) = match (q, n) {
            (Some(q), Some(n)) => (q, n),
            _ => return Err(Error::Arity("object L needs --q and --n".into())),
        };
        return Ok(Obj::Poset(Arc::clone(subspace_lattice(q, n)?.poset())));
    }
    if let Some(rest) = text.strip_prefix('L') {
        if let Some((qs, ns)) = rest.split_once('^') {
            if let (Ok(q), Ok(n)) = (qs.parse::<u64>(), ns.parse::<u32>()) {
                return Ok(Obj::Poset(Arc::clone(subspace_lattice(q, n)?.poset())));
            }
        }
    }
    match text {
        "K3" => Ok(Obj::Matroid(
            Matroid::graphic(&complete_graph_edges(3))?.with_name("graphic(K3)"),
        )),
        "K4" => Ok(Obj::Matroid(
            Matroid::graphic(&complete_graph_edges(4))?.with_name("graphic(K4)"),
        )),
        "K33" => Ok(Obj::Matroid(
            Matroid::graphic(&complete_bipartite_edges(3, 3))?.with_name("graphic(K33)"),
        )),
        "K33-dual" => Ok(Obj::Matroid(
            Matroid::graphic(&complete_bipartite_edges(3, 3))?
                .dual()
                .with_name("dual(graphic(K33))"),
        )),
        _ => Err(Error::Arity(format!(
            "unknown object {text:?}; use B<n>, C<n>, U<r>,<n>, L<q>^<n>, K3, K4, K33, K33-dual, or JSON"
        ))),
    }
}

fn parse_json_object(text: &str) -> Result<Obj> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::Arity(format!("invalid JSON object: {e}")))?;
    let map = value
        .as_object()
        .ok_or_else(|| Error::Arity("object JSON must be a map".into()))?;
    if map.contains_key("type") {
        let descr: MatroidDescriptor = serde_json::from_value(value.clone())
            .map_err(|e| Error::Arity(format!("bad matroid JSON: {e}")))?;
        Ok(Obj::Matroid(descr.build()?))
    } else if map.contains_key("size") {
        let poset: Poset = serde_json::from_value(value.clone())
            .map_err(|e| Error::Arity(format!("bad poset JSON: {e}")))?;
        // Grade when possible so polynomial invariants work out of the box.
        let poset = if poset.ranks().is_none() {
            match poset.grade() {
                Ok(ranks) => poset.with_ranks(ranks)?,
                Err(_) => poset,
            }
        } else {
            poset
        };
        Ok(Obj::Poset(Arc::new(poset)))
    } else {
        Err(Error::Arity(
            "object JSON needs either a \"type\" (matroid) or \"size\" (poset) field".into(),
        ))
    }
}
