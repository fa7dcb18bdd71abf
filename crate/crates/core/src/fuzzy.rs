//! L-fuzzy sets, their cuts and cut families, and families of subsets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, MeetClosedSet};
use crate::order::{MapKind, OrderMap, Poset};

/// A subset of a finite domain, stored as ascending element indices.
///
/// Ordered by size first, then lexicographically by member indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DomainSet(Vec<usize>);

impl DomainSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        DomainSet(members)
    }

    pub fn full(n: usize) -> Self {
        DomainSet((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &DomainSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &DomainSet) -> DomainSet {
        DomainSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    /// `{a,b}` style rendering over the given universe.
    pub fn render(&self, universe: &[String]) -> String {
        let names: Vec<&str> = self.0.iter().map(|&i| universe[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl Ord for DomainSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DomainSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A universe `X` together with a family of distinct subsets of it, kept in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Vec<String>,
    members: Vec<DomainSet>,
}

impl SetFamily {
    pub fn new(universe: Vec<String>, members: Vec<DomainSet>) -> Result<Self> {
        check_universe(&universe)?;
        let n = universe.len();
        let mut members = members;
        for m in &members {
            if let Some(&bad) = m.members().iter().find(|&&x| x >= n) {
                return Err(Error::UnknownElement(format!("#{bad}")));
            }
        }
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidFamily(format!(
                "duplicate set {}",
                w[0].render(&universe)
            )));
        }
        Ok(SetFamily { universe, members })
    }

    /// Builds a family from member names.
    pub fn from_names<S: AsRef<str>>(universe: &[S], sets: &[&[S]]) -> Result<Self> {
        let universe: Vec<String> = universe.iter().map(|s| s.as_ref().to_owned()).collect();
        let index: HashMap<&str, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let members = sets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|s| {
                        index
                            .get(s.as_ref())
                            .copied()
                            .ok_or_else(|| Error::UnknownElement(s.as_ref().to_owned()))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(DomainSet::new)
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(universe, members)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn members(&self) -> &[DomainSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &DomainSet) -> bool {
        self.members.binary_search(s).is_ok()
    }

    pub fn position(&self, s: &DomainSet) -> Option<usize> {
        self.members.binary_search(s).ok()
    }

    /// `(F, ⊇)`: members ordered by reverse inclusion, in canonical order.
    pub fn dual_poset(&self) -> Poset {
        let names = self
            .members
            .iter()
            .map(|m| m.render(&self.universe))
            .collect();
        Poset::from_relation(names, |a, b| self.members[b].is_subset(&self.members[a]))
            .expect("reverse inclusion is a partial order")
    }

    pub fn render_member(&self, i: usize) -> String {
        self.members[i].render(&self.universe)
    }
}

fn check_universe(universe: &[String]) -> Result<()> {
    if universe.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let mut seen = std::collections::HashSet::new();
    for u in universe {
        if !seen.insert(u.as_str()) {
            return Err(Error::DuplicateElement(u.clone()));
        }
    }
    Ok(())
}

/// A total map `μ : X → L`.
#[derive(Clone, PartialEq, Eq)]
pub struct FuzzySet {
    domain: Vec<String>,
    lattice: Lattice,
    map: Vec<usize>,
}

impl FuzzySet {
    pub fn new(domain: Vec<String>, lattice: Lattice, map: Vec<usize>) -> Result<Self> {
        check_universe(&domain)?;
        if map.len() != domain.len() {
            return Err(Error::InvalidFuzzySet(format!(
                "map has {} values for {} domain elements",
                map.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= lattice.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(FuzzySet {
            domain,
            lattice,
            map,
        })
    }

    /// Builds `μ` from `(x, value)` name pairs, in domain order.
    pub fn from_names<S: AsRef<str>>(lattice: &Lattice, pairs: &[(S, S)]) -> Result<Self> {
        let domain = pairs.iter().map(|(x, _)| x.as_ref().to_owned()).collect();
        let map = pairs
            .iter()
            .map(|(_, v)| lattice.resolve(v.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        FuzzySet::new(domain, lattice.clone(), map)
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Values as lattice indices, in domain order.
    pub fn values(&self) -> &[usize] {
        &self.map
    }

    pub fn value(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn value_name(&self, x: usize) -> &str {
        self.lattice.name(self.map[x])
    }

    /// `μ_p = {x ∈ X : μ(x) ≥ p}`.
    pub fn cut(&self, p: usize) -> DomainSet {
        DomainSet(
            (0..self.map.len())
                .filter(|&x| self.lattice.leq(p, self.map[x]))
                .collect(),
        )
    }

    pub fn cut_named(&self, p: &str) -> Result<DomainSet> {
        Ok(self.cut(self.lattice.resolve(p)?))
    }

    /// `μ_L`, deduplicated.
    pub fn cut_family(&self) -> SetFamily {
        let mut cuts: Vec<DomainSet> = (0..self.lattice.len()).map(|p| self.cut(p)).collect();
        cuts.sort();
        cuts.dedup();
        SetFamily {
            universe: self.domain.clone(),
            members: cuts,
        }
    }

    /// `μ(X)` as ascending lattice indices.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `L^μ`: every meet of a subset of `μ(X)`, the empty meet included.
    pub fn image_meet_closure(&self) -> MeetClosedSet {
        self.lattice.meet_closure(&self.image())
    }

    /// `⋀_{x ∈ C} μ(x)` for a set of domain elements (`1_L` when empty).
    pub fn meet_over(&self, c: &DomainSet) -> usize {
        self.lattice.meet_of_set(c.members().iter().map(|&x| self.map[x]))
    }

    /// The map `μ_p ↦ ⋀_{x∈μ_p} μ(x)` from `(μ_L, ⊇)` to `(L^μ, ≤)`, checked
    /// to be an order isomorphism before it is returned.
    pub fn phi(&self) -> Result<OrderMap> {
        let cuts = self.cut_family();
        let closure = self.image_meet_closure();
        let map = cuts
            .members()
            .iter()
            .map(|c| {
                let v = self.meet_over(c);
                closure.local_index(v).ok_or_else(|| {
                    Error::InternalInvariantViolation(format!(
                        "φ sends {} outside L^μ",
                        c.render(&self.domain)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if map.len() != closure.len() {
            return Err(Error::InternalInvariantViolation(format!(
                "{} cuts but |L^μ| = {}",
                map.len(),
                closure.len()
            )));
        }
        let phi = OrderMap::new(cuts.dual_poset(), closure.sub_poset(), map, MapKind::Isomorphism);
        if !phi.verify() {
            return Err(Error::InternalInvariantViolation(format!(
                "φ is not an order isomorphism: {phi:?}"
            )));
        }
        Ok(phi)
    }

    /// `μ = ι ∘ ν` with `ν : X → L^μ` and `ι` the inclusion of `L^μ` into `L`.
    pub fn canonical_factorization(&self) -> (FuzzySet, OrderMap) {
        let closure = self.image_meet_closure();
        let sub = closure.to_lattice();
        let map = self
            .map
            .iter()
            .map(|&v| closure.local_index(v).expect("μ(X) ⊆ L^μ"))
            .collect();
        let nu = FuzzySet {
            domain: self.domain.clone(),
            lattice: sub,
            map,
        };
        (nu, closure.iota())
    }

    /// `x ↦ embed(μ(x))`, landing in the target of `embed`.
    pub fn compose(&self, embed: &OrderMap, target: &Lattice) -> FuzzySet {
        assert_eq!(embed.source(), self.lattice.poset());
        assert_eq!(embed.target(), target.poset());
        FuzzySet {
            domain: self.domain.clone(),
            lattice: target.clone(),
            map: self.map.iter().map(|&v| embed.apply(v)).collect(),
        }
    }
}

impl fmt::Debug for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = (0..self.map.len())
            .map(|x| format!("{}->{}", self.domain[x], self.value_name(x)))
            .collect();
        write!(f, "FuzzySet({})", pairs.join(", "))
    }
}
