//! Finite complete lattices and their meet-closed subsets.
//!
//! A subset `S` of a finite lattice `L` is ι-embedded (the inclusion preserves
//! the top element and every infimum) exactly when `1_L ∈ S` and `S` is closed
//! under binary meets: any nonempty finite meet is a fold of binary meets, and
//! the empty meet is `1_L`. Everything here relies on that reduction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::{MapKind, OrderMap, Poset};

#[derive(Debug)]
struct LatticeData {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// A validated finite lattice with precomputed meet and join tables.
#[derive(Clone)]
pub struct Lattice {
    data: Arc<LatticeData>,
}

/// Checks that every pair has a meet and a join and fills both tables.
pub fn validate_complete_lattice(p: &Poset) -> Result<Lattice> {
    let n = p.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let glb = greatest(p, (0..n).filter(|&x| p.leq(x, a) && p.leq(x, b)))
                .ok_or_else(|| {
                    Error::NotALattice(p.name(a).into(), p.name(b).into(), "greatest lower bound")
                })?;
            let lub = least(p, (0..n).filter(|&x| p.leq(a, x) && p.leq(b, x))).ok_or_else(|| {
                Error::NotALattice(p.name(a).into(), p.name(b).into(), "least upper bound")
            })?;
            meet[a * n + b] = glb;
            meet[b * n + a] = glb;
            join[a * n + b] = lub;
            join[b * n + a] = lub;
        }
    }
    let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);
    let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
    Ok(Lattice {
        data: Arc::new(LatticeData {
            poset: p.clone(),
            meet,
            join,
            bottom,
            top,
        }),
    })
}

fn greatest(p: &Poset, candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
    candidates
        .clone()
        .find(|&g| candidates.clone().all(|x| p.leq(x, g)))
}

fn least(p: &Poset, candidates: impl Iterator<Item = usize> + Clone) -> Option<usize> {
    candidates
        .clone()
        .find(|&l| candidates.clone().all(|x| p.leq(l, x)))
}

impl Lattice {
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        validate_complete_lattice(&Poset::from_covers(elements, covers)?)
    }

    pub fn poset(&self) -> &Poset {
        &self.data.poset
    }

    pub fn len(&self) -> usize {
        self.data.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        self.data.poset.name(i)
    }

    pub fn elements(&self) -> &[String] {
        self.data.poset.elements()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.poset.index_of(name)
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        self.data.poset.resolve(name)
    }

    pub fn resolve_all<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.resolve(n.as_ref())).collect()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.data.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.data.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.data.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.data.bottom
    }

    pub fn top(&self) -> usize {
        self.data.top
    }

    /// `⋀S`, with `⋀∅ = 1_L`.
    pub fn meet_of_set(&self, s: impl IntoIterator<Item = usize>) -> usize {
        s.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// `⋁S`, with `⋁∅ = 0_L`.
    pub fn join_of_set(&self, s: impl IntoIterator<Item = usize>) -> usize {
        s.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Smallest subset containing `s` and the top that is closed under meets.
    pub fn meet_closure(&self, s: &[usize]) -> MeetClosedSet {
        let n = self.len();
        let mut member = vec![false; n];
        member[self.top()] = true;
        let mut members = vec![self.top()];
        for &x in s {
            if !std::mem::replace(&mut member[x], true) {
                members.push(x);
            }
        }
        let mut frontier = 0;
        while frontier < members.len() {
            let x = members[frontier];
            for k in 0..=frontier {
                let m = self.meet(x, members[k]);
                if !std::mem::replace(&mut member[m], true) {
                    members.push(m);
                }
            }
            frontier += 1;
        }
        members.sort_unstable();
        MeetClosedSet {
            host: self.clone(),
            members,
        }
    }

    /// Whether the inclusion of `s` into this lattice preserves all infima
    /// and the top element.
    pub fn is_iota_embedded(&self, s: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in s {
            member[x] = true;
        }
        member[self.top()]
            && s.iter()
                .all(|&a| s.iter().all(|&b| member[self.meet(a, b)]))
    }

    /// All ι-embedded subsets with exactly `size` elements, ordered
    /// lexicographically by their sorted member indices.
    pub fn enumerate_meet_closed_subsets(&self, size: usize) -> Result<Vec<MeetClosedSet>> {
        if size == 0 || size > self.len() {
            return Err(Error::SizeOutOfRange {
                size,
                max: self.len(),
            });
        }
        let mut out = Vec::new();
        let mut walk = SubsetWalk {
            lattice: self,
            size,
            chosen: Vec::with_capacity(size),
            member: vec![false; self.len()],
            out: &mut out,
        };
        walk.step(0);
        Ok(out)
    }

    /// The meet-closed subset `s`, or an error if it is not ι-embedded.
    pub fn meet_closed_subset(&self, s: &[usize]) -> Result<MeetClosedSet> {
        if !self.is_iota_embedded(s) {
            let names: Vec<&str> = s.iter().map(|&x| self.name(x)).collect();
            return Err(Error::NotMeetClosed(names.join(" ")));
        }
        let mut members = s.to_vec();
        members.sort_unstable();
        members.dedup();
        Ok(MeetClosedSet {
            host: self.clone(),
            members,
        })
    }
}

struct SubsetWalk<'a> {
    lattice: &'a Lattice,
    size: usize,
    chosen: Vec<usize>,
    member: Vec<bool>,
    out: &'a mut Vec<MeetClosedSet>,
}

impl SubsetWalk<'_> {
    // Elements are decided in index order. A meet that lands on an index
    // already passed over can never be repaired, so that branch is cut.
    fn step(&mut self, i: usize) {
        let l = self.lattice;
        let n = l.len();
        if self.chosen.len() == self.size {
            if l.is_iota_embedded(&self.chosen) {
                self.out.push(MeetClosedSet {
                    host: l.clone(),
                    members: self.chosen.clone(),
                });
            }
            return;
        }
        if i == n || self.chosen.len() + (n - i) < self.size {
            return;
        }
        let blocked = self.chosen.iter().any(|&c| {
            let m = l.meet(c, i);
            m < i && !self.member[m]
        });
        if !blocked {
            self.member[i] = true;
            self.chosen.push(i);
            self.step(i + 1);
            self.chosen.pop();
            self.member[i] = false;
        }
        let required = i == l.top()
            || self
                .chosen
                .iter()
                .any(|&a| self.chosen.iter().any(|&b| l.meet(a, b) == i));
        if !required {
            self.step(i + 1);
        }
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.poset == other.data.poset
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Lattice").field(&self.data.poset).finish()
    }
}

/// A subset of a host lattice that contains the top and is closed under meets.
#[derive(Clone, PartialEq, Eq)]
pub struct MeetClosedSet {
    host: Lattice,
    members: Vec<usize>,
}

impl MeetClosedSet {
    pub fn host(&self) -> &Lattice {
        &self.host
    }

    /// Host indices, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of a host element inside this subset.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|&m| self.host.name(m)).collect()
    }

    /// The induced sub-poset, in host order.
    pub fn sub_poset(&self) -> Poset {
        self.host
            .poset()
            .sub_poset(&self.members)
            .expect("restriction of a partial order is a partial order")
    }

    /// The subset as a lattice in its own right. Meets agree with the host;
    /// joins are taken inside the subset.
    pub fn to_lattice(&self) -> Lattice {
        validate_complete_lattice(&self.sub_poset())
            .expect("a finite meet-closed subset with top is a complete lattice")
    }

    /// The inclusion `ι` of [`MeetClosedSet::to_lattice`] into the host.
    pub fn iota(&self) -> OrderMap {
        OrderMap::new(
            self.sub_poset(),
            self.host.poset().clone(),
            self.members.clone(),
            MapKind::IotaEmbedding,
        )
    }
}

impl fmt::Debug for MeetClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}
