//! Which L-fuzzy sets have a prescribed family of cuts.
//!
//! For a family `F` that contains `X` and is closed under intersections, the
//! set `N(L,F)` of all `μ : X → L` with `μ_L = F` splits into classes indexed
//! by `S(L,F)`, the meet-closed subsets of `L` (top included) that are order
//! isomorphic to `(F, ⊇)`. Each class is one orbit of a witness under the
//! automorphism group of its subset, so `|N(L,F)| = |S(L,F)| · |OI(F)|`, and
//! the representing fuzzy set is unique exactly when both factors are 1.
//!
//! [`brute_force_oracle`] computes `N(L,F)` by scanning every map `X → L`
//! without using any of the above; it exists to cross-check the rest.

use std::collections::BTreeSet;

use crate::caps::DEFAULT_ORACLE_CAP;
use crate::error::{Error, Result};
use crate::fuzzy::{DomainSet, FuzzySet, SetFamily};
use crate::lattice::{validate_complete_lattice, Lattice, MeetClosedSet};
use crate::order::{automorphisms, count_automorphisms, find_isomorphism, OrderMap, Poset};

/// `(F, ⊇)`.
pub fn family_dual_poset(f: &SetFamily) -> Poset {
    f.dual_poset()
}

/// Why `F` fails to contain `X` or to be closed under pairwise
/// intersections, or `None` if it passes.
pub fn closure_violation(f: &SetFamily) -> Option<String> {
    let x = DomainSet::full(f.universe().len());
    if !f.contains(&x) {
        return Some(format!("X = {} is missing", x.render(f.universe())));
    }
    let members = f.members();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let c = a.intersection(b);
            if !f.contains(&c) {
                return Some(format!(
                    "{} ∩ {} = {} is missing",
                    a.render(f.universe()),
                    b.render(f.universe()),
                    c.render(f.universe())
                ));
            }
        }
    }
    None
}

/// `X ∈ F` and `F` is closed under intersections. Pairwise closure is
/// enough for a finite family.
pub fn check_closure_conditions(f: &SetFamily) -> bool {
    closure_violation(f).is_none()
}

fn require_closed(f: &SetFamily) -> Result<()> {
    match closure_violation(f) {
        Some(why) => Err(Error::FamilyNotClosed(why)),
        None => Ok(()),
    }
}

/// `S(L,F)`, ascending by member indices.
///
/// Searches for injective maps `(F,⊇) → L` that reflect the order, send the
/// top of `(F,⊇)` to `1_L` and preserve binary meets; their images are
/// exactly the members of `S(L,F)`.
pub fn enumerate_s(l: &Lattice, f: &SetFamily) -> Result<Vec<MeetClosedSet>> {
    require_closed(f)?;
    let p = f.dual_poset();
    let pl = validate_complete_lattice(&p).map_err(|e| {
        Error::InternalInvariantViolation(format!("(F,⊇) of a closed family is a lattice: {e}"))
    })?;
    if p.len() > l.len() {
        return Ok(Vec::new());
    }
    let mut images = BTreeSet::new();
    let mut search = EmbeddingSearch {
        family: &pl,
        host: l,
        map: Vec::with_capacity(p.len()),
        used: vec![false; l.len()],
        images: &mut images,
    };
    search.extend();
    images
        .into_iter()
        .map(|members| l.meet_closed_subset(&members))
        .collect()
}

struct EmbeddingSearch<'a> {
    family: &'a Lattice,
    host: &'a Lattice,
    map: Vec<usize>,
    used: Vec<bool>,
    images: &'a mut BTreeSet<Vec<usize>>,
}

impl EmbeddingSearch<'_> {
    fn extend(&mut self) {
        let (pl, l) = (self.family, self.host);
        let i = self.map.len();
        if i == pl.len() {
            let mut image = self.map.clone();
            image.sort_unstable();
            self.images.insert(image);
            return;
        }
        for j in 0..l.len() {
            if self.used[j] || (i == pl.top()) != (j == l.top()) {
                continue;
            }
            if !self.consistent(i, j) {
                continue;
            }
            self.used[j] = true;
            self.map.push(j);
            self.extend();
            self.map.pop();
            self.used[j] = false;
        }
    }

    // Checks every order relation and every meet among assigned elements
    // that involves the new pair i -> j.
    fn consistent(&self, i: usize, j: usize) -> bool {
        let (pl, l, map) = (self.family, self.host, &self.map);
        let image = |k: usize| if k == i { j } else { map[k] };
        for a in 0..i {
            let ma = map[a];
            if pl.leq(a, i) != l.leq(ma, j) || pl.leq(i, a) != l.leq(j, ma) {
                return false;
            }
            let c = pl.meet(a, i);
            if c <= i && l.meet(ma, j) != image(c) {
                return false;
            }
        }
        for a in 0..i {
            for b in (a + 1)..i {
                if pl.meet(a, b) == i && l.meet(map[a], map[b]) != j {
                    return false;
                }
            }
        }
        true
    }
}

/// `S(L,F)` by filtering every meet-closed subset of size `|F|` through an
/// isomorphism test. Slower than [`enumerate_s`]; same result.
pub fn enumerate_s_filtered(l: &Lattice, f: &SetFamily) -> Result<Vec<MeetClosedSet>> {
    require_closed(f)?;
    if f.len() > l.len() {
        return Ok(Vec::new());
    }
    let p = f.dual_poset();
    Ok(l
        .enumerate_meet_closed_subsets(f.len())?
        .into_iter()
        .filter(|s| find_isomorphism(&p, &s.sub_poset()).is_some())
        .collect())
}

/// A fuzzy set `g : X → L_0` with `g_{L_0} = F` and `L_0^g = L_0`.
///
/// `g(x)` is the image under `iso` of the smallest member of `F` containing
/// `x`. Both properties are checked before returning.
pub fn construct_witness(l0: &Lattice, f: &SetFamily, iso: &OrderMap) -> Result<FuzzySet> {
    let fail = |why: String| Err(Error::WitnessVerificationFailed(why));
    if iso.source() != &f.dual_poset() || iso.target() != l0.poset() || !iso.verify() {
        return fail(format!("{iso:?} is not an isomorphism (F,⊇) → L_0"));
    }
    let n = f.universe().len();
    let mut map = Vec::with_capacity(n);
    for x in 0..n {
        let smallest = f
            .members()
            .iter()
            .filter(|m| m.contains(x))
            .fold(DomainSet::full(n), |acc, m| acc.intersection(m));
        let Some(pos) = f.position(&smallest) else {
            return fail(format!(
                "{} is not in F",
                smallest.render(f.universe())
            ));
        };
        map.push(iso.apply(pos));
    }
    let g = FuzzySet::new(f.universe().to_vec(), l0.clone(), map)?;
    if &g.cut_family() != f {
        return fail(format!("cuts of {g:?} differ from F"));
    }
    if g.image_meet_closure().len() != l0.len() {
        return fail(format!("image of {g:?} does not generate L_0"));
    }
    Ok(g)
}

/// `H_(L,L_0,F)`: the orbit of a witness under the automorphisms of `L_0`,
/// pushed into `L`. Listed in automorphism order, witness first.
pub fn enumerate_h(l: &Lattice, l0: &MeetClosedSet, f: &SetFamily) -> Result<Vec<FuzzySet>> {
    require_closed(f)?;
    if l0.host() != l || l0.len() != f.len() {
        return Err(Error::NotInS);
    }
    let sub = l0.to_lattice();
    let iso = find_isomorphism(&f.dual_poset(), sub.poset()).ok_or(Error::NotInS)?;
    let g = construct_witness(&sub, f, &iso)?;
    let iota = l0.iota();
    Ok(automorphisms(sub.poset())
        .iter()
        .map(|eta| {
            let map = g.values().iter().map(|&v| iota.apply(eta.apply(v))).collect();
            FuzzySet::new(f.universe().to_vec(), l.clone(), map)
                .expect("values lie in the host carrier")
        })
        .collect())
}

/// Sorts fuzzy sets by their value tuples in domain order.
pub fn sort_canonical(sets: &mut [FuzzySet]) {
    sets.sort_by(|a, b| a.values().cmp(b.values()));
}

/// `N(L,F)` as the union of the classes `H_(L,L_0,F)`, canonically sorted.
pub fn enumerate_n(l: &Lattice, f: &SetFamily) -> Result<Vec<FuzzySet>> {
    let mut out = Vec::new();
    for l0 in enumerate_s(l, f)? {
        out.extend(enumerate_h(l, &l0, f)?);
    }
    sort_canonical(&mut out);
    Ok(out)
}

/// Number of maps `X → L`, or `None` if it does not fit in a `u64`.
pub fn search_space(l: &Lattice, f: &SetFamily) -> Option<u64> {
    u32::try_from(f.universe().len())
        .ok()
        .and_then(|n| (l.len() as u64).checked_pow(n))
}

/// `N(L,F)` by exhaustive scan with the default cap.
pub fn brute_force_oracle(l: &Lattice, f: &SetFamily) -> Result<Vec<FuzzySet>> {
    brute_force_oracle_with_cap(l, f, DEFAULT_ORACLE_CAP)
}

/// Scans every map `X → L` in lexicographic order of value tuples and keeps
/// those whose cut family is `F`.
pub fn brute_force_oracle_with_cap(l: &Lattice, f: &SetFamily, cap: u64) -> Result<Vec<FuzzySet>> {
    let n = f.universe().len();
    match search_space(l, f) {
        Some(size) if size <= cap => {}
        size => {
            return Err(Error::SearchSpaceTooLarge {
                size: size.map_or_else(
                    || format!("{}^{}", l.len(), n),
                    |s| s.to_string(),
                ),
                cap,
            })
        }
    }
    let k = l.len();
    let mut values = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let mu = FuzzySet::new(f.universe().to_vec(), l.clone(), values.clone())?;
        if &mu.cut_family() == f {
            out.push(mu);
        }
        // odometer, last domain element fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            values[pos] += 1;
            if values[pos] < k {
                break;
            }
            values[pos] = 0;
        }
    }
}

#[derive(Debug, Clone)]
pub struct RepresentationReport {
    pub representable: bool,
    /// `None` when `F` contains `X` and is intersection-closed.
    pub closure_violation: Option<String>,
    pub s_members: Vec<MeetClosedSet>,
    pub oi_size: usize,
    pub total: usize,
    pub unique: bool,
    pub witnesses: Option<Vec<FuzzySet>>,
}

/// Counts `N(L,F)` as `|S(L,F)| · |OI(F)|` and decides uniqueness. `N` is
/// enumerated only when witnesses are requested.
pub fn analyze(l: &Lattice, f: &SetFamily, want_witnesses: bool) -> RepresentationReport {
    let oi_size = count_automorphisms(&f.dual_poset());
    if let Some(why) = closure_violation(f) {
        return RepresentationReport {
            representable: false,
            closure_violation: Some(why),
            s_members: Vec::new(),
            oi_size,
            total: 0,
            unique: false,
            witnesses: want_witnesses.then(Vec::new),
        };
    }
    let s_members = enumerate_s(l, f).expect("closure already checked");
    let total = s_members.len() * oi_size;
    let witnesses = want_witnesses.then(|| enumerate_n(l, f).expect("closure already checked"));
    RepresentationReport {
        representable: total >= 1,
        closure_violation: None,
        unique: s_members.len() == 1 && oi_size == 1,
        s_members,
        oi_size,
        total,
        witnesses,
    }
}
