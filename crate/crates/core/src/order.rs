//! Finite posets, order maps, isomorphism search and automorphism groups.
//!
//! Elements are addressed by their position in the carrier. The order is
//! held as a dense `n × n` boolean table; every derived quantity (covers,
//! per-element invariants) is computed once when the poset is built.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::caps::DEFAULT_LATTICE_CAP;
use crate::error::{Error, Result};

/// Per-element data that any order isomorphism must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementInvariant {
    pub down_set: usize,
    pub up_set: usize,
    pub lower_covers: usize,
    pub upper_covers: usize,
}

#[derive(Debug)]
struct PosetData {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    invariants: Vec<ElementInvariant>,
}

/// An immutable finite partially ordered set. Cloning is cheap.
#[derive(Clone)]
pub struct Poset {
    data: Arc<PosetData>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of a Hasse diagram.
    ///
    /// Each cover pair `(a, b)` means `a < b`.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        Self::from_covers_with_cap(elements, covers, DEFAULT_LATTICE_CAP)
    }

    pub fn from_covers_with_cap<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
        cap: usize,
    ) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        let index = index_names(&names)?;
        if names.len() > cap {
            return Err(Error::CarrierTooLarge {
                size: names.len(),
                cap,
            });
        }
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in covers {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(s.to_owned()))
            };
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CyclicCovers(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Self::assemble(names, index, leq))
    }

    /// Builds a poset from an explicit order relation, checking the order axioms.
    pub fn from_relation<F>(elements: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let index = index_names(&elements)?;
        let n = elements.len();
        let mut table = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = leq(i, j);
            }
        }
        let at = |i: usize, j: usize| table[i * n + j];
        for i in 0..n {
            if !at(i, i) {
                return Err(Error::NotAPartialOrder(format!(
                    "`{}` is not below itself",
                    elements[i]
                )));
            }
            for j in 0..n {
                if i != j && at(i, j) && at(j, i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        elements[i], elements[j]
                    )));
                }
                if !at(i, j) {
                    continue;
                }
                for k in 0..n {
                    if at(j, k) && !at(i, k) {
                        return Err(Error::NotAPartialOrder(format!(
                            "`{}` ≤ `{}` ≤ `{}` is not transitive",
                            elements[i], elements[j], elements[k]
                        )));
                    }
                }
            }
        }
        Ok(Self::assemble(elements, index, table))
    }

    fn assemble(elements: Vec<String>, index: HashMap<String, usize>, leq: Vec<bool>) -> Self {
        let n = elements.len();
        let lt = |i: usize, j: usize| i != j && leq[i * n + j];
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    covers.push((i, j));
                }
            }
        }
        let invariants = (0..n)
            .map(|x| ElementInvariant {
                down_set: (0..n).filter(|&y| leq[y * n + x]).count(),
                up_set: (0..n).filter(|&y| leq[x * n + y]).count(),
                lower_covers: covers.iter().filter(|&&(_, b)| b == x).count(),
                upper_covers: covers.iter().filter(|&&(a, _)| a == x).count(),
            })
            .collect();
        Poset {
            data: Arc::new(PosetData {
                elements,
                index,
                leq,
                covers,
                invariants,
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.data.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.data.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.data.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.data.index.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.data.leq[i * self.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Cover pairs `(a, b)` with `a ⋖ b`, in row-major order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.data.covers
    }

    pub fn invariant(&self, i: usize) -> ElementInvariant {
        self.data.invariants[i]
    }

    /// The same carrier with the order reversed.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let leq = (0..n * n)
            .map(|k| self.leq(k % n, k / n))
            .collect::<Vec<_>>();
        Self::assemble(self.data.elements.clone(), self.data.index.clone(), leq)
    }

    /// The induced order on the given elements, kept in the given order.
    pub fn sub_poset(&self, members: &[usize]) -> Result<Poset> {
        let names = members.iter().map(|&m| self.name(m).to_owned()).collect();
        Poset::from_relation(names, |i, j| self.leq(members[i], members[j]))
    }
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    if names.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.elements == other.data.elements && self.data.leq == other.data.leq)
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .iter()
            .map(|&(a, b)| format!("{}<{}", self.name(a), self.name(b)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.data.elements)
            .field("covers", &covers)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Isomorphism,
    Automorphism,
    IotaEmbedding,
}

/// A total map between two poset carriers, tagged with the property it is
/// supposed to have. [`OrderMap::verify`] checks that property.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderMap {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
    kind: MapKind,
}

impl OrderMap {
    pub fn new(source: Poset, target: Poset, map: Vec<usize>, kind: MapKind) -> Self {
        assert_eq!(source.len(), map.len(), "order map must be total");
        assert!(map.iter().all(|&m| m < target.len()));
        OrderMap {
            source,
            target,
            map,
            kind,
        }
    }

    pub fn identity(p: &Poset) -> Self {
        OrderMap::new(p.clone(), p.clone(), (0..p.len()).collect(), MapKind::Automorphism)
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Looks a source element up by name and returns the target name.
    pub fn apply_named(&self, name: &str) -> Option<&str> {
        self.source
            .index_of(name)
            .map(|i| self.target.name(self.map[i]))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&m| !std::mem::replace(&mut seen[m], true))
    }

    /// `x ≤ y ⟺ f(x) ≤ f(y)` for all pairs.
    pub fn reflects_order(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|x| {
            (0..n).all(|y| self.source.leq(x, y) == self.target.leq(self.map[x], self.map[y]))
        })
    }

    /// Checks the property named by [`OrderMap::kind`].
    pub fn verify(&self) -> bool {
        match self.kind {
            MapKind::Isomorphism => self.is_bijective() && self.reflects_order(),
            MapKind::Automorphism => {
                self.source == self.target && self.is_bijective() && self.reflects_order()
            }
            MapKind::IotaEmbedding => {
                self.reflects_order()
                    && (0..self.source.len())
                        .all(|x| self.source.name(x) == self.target.name(self.map[x]))
            }
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &OrderMap) -> OrderMap {
        assert_eq!(self.target, other.source, "composition domains differ");
        let kind = if self.source == other.target {
            MapKind::Automorphism
        } else {
            MapKind::Isomorphism
        };
        OrderMap::new(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&m| other.map[m]).collect(),
            kind,
        )
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<OrderMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (i, &m) in self.map.iter().enumerate() {
            inv[m] = i;
        }
        Some(OrderMap::new(
            self.target.clone(),
            self.source.clone(),
            inv,
            self.kind,
        ))
    }
}

impl fmt::Debug for OrderMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{{", self.kind)?;
        for (i, &m) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.source.name(i), self.target.name(m))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for OrderMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, &m)| format!("{}->{}", self.source.name(i), self.target.name(m)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Depth-first search over bijections `src → dst` that reflect the order.
///
/// Source elements are assigned in carrier order and candidates are tried in
/// target carrier order, so solutions arrive in lexicographic order of their
/// image vectors. `visit` returns `false` to stop the search.
fn search_isomorphisms(src: &Poset, dst: &Poset, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let n = src.len();
    if n != dst.len() {
        return;
    }
    let mut src_inv: Vec<_> = (0..n).map(|i| src.invariant(i)).collect();
    let mut dst_inv: Vec<_> = (0..n).map(|i| dst.invariant(i)).collect();
    src_inv.sort();
    dst_inv.sort();
    if src_inv != dst_inv {
        return;
    }

    struct State<'a> {
        src: &'a Poset,
        dst: &'a Poset,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    fn extend(st: &mut State<'_>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let i = st.map.len();
        if i == st.src.len() {
            return visit(&st.map);
        }
        let want = st.src.invariant(i);
        for j in 0..st.dst.len() {
            if st.used[j] || st.dst.invariant(j) != want {
                continue;
            }
            let consistent = st.map.iter().enumerate().all(|(k, &mk)| {
                st.src.leq(k, i) == st.dst.leq(mk, j) && st.src.leq(i, k) == st.dst.leq(j, mk)
            });
            if !consistent {
                continue;
            }
            st.used[j] = true;
            st.map.push(j);
            let go_on = extend(st, visit);
            st.map.pop();
            st.used[j] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    let mut st = State {
        src,
        dst,
        map: Vec::with_capacity(n),
        used: vec![false; n],
    };
    extend(&mut st, visit);
}

/// Returns the first order isomorphism `p → q` in search order, if any.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<OrderMap> {
    let mut found = None;
    search_isomorphisms(p, q, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(|m| OrderMap::new(p.clone(), q.clone(), m, MapKind::Isomorphism))
}

/// Every order automorphism of `p`, identity first, the rest in
/// lexicographic order of their image vectors.
pub fn automorphisms(p: &Poset) -> Vec<OrderMap> {
    let mut out = Vec::new();
    search_isomorphisms(p, p, &mut |m| {
        out.push(OrderMap::new(p.clone(), p.clone(), m.to_vec(), MapKind::Automorphism));
        true
    });
    out
}

/// Number of automorphisms, without materializing the maps.
pub fn count_automorphisms(p: &Poset) -> usize {
    let mut count = 0;
    search_isomorphisms(p, p, &mut |_| {
        count += 1;
        true
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig1() -> Poset {
        Poset::from_covers(
            &["0", "q", "r", "p", "s", "t", "1"],
            &[
                ("0", "q"),
                ("0", "r"),
                ("0", "p"),
                ("q", "s"),
                ("r", "s"),
                ("r", "t"),
                ("p", "t"),
                ("s", "1"),
                ("t", "1"),
            ],
        )
        .unwrap()
    }

    fn chain(names: &[&str]) -> Poset {
        let covers: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
        Poset::from_covers(names, &covers).unwrap()
    }

    fn antichain(names: &[&str]) -> Poset {
        Poset::from_covers(names, &[]).unwrap()
    }

    #[test]
    fn fig1_closure() {
        let p = fig1();
        let ix = |s| p.index_of(s).unwrap();
        assert!(p.leq(ix("q"), ix("s")));
        assert!(p.leq(ix("s"), ix("1")));
        assert!(p.leq(ix("q"), ix("1")));
        assert!(!p.leq(ix("q"), ix("t")));
        assert_eq!(p.covers().len(), 9);
    }

    #[test]
    fn singleton() {
        let p = Poset::from_covers::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Poset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err(),
            Error::CyclicCovers("a".into(), "b".into())
        );
        assert_eq!(
            Poset::from_covers::<&str>(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            Poset::from_covers(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(
            Poset::from_covers::<&str>(&[], &[]).unwrap_err(),
            Error::EmptyCarrier
        );
        let names: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
        assert_eq!(
            Poset::from_covers_with_cap::<String>(&names, &[], 4).unwrap_err(),
            Error::CarrierTooLarge { size: 5, cap: 4 }
        );
    }

    #[test]
    fn relation_checks_axioms() {
        let names = || vec!["a".to_string(), "b".to_string(), "c".to_string()];
        assert!(Poset::from_relation(names(), |i, j| i <= j).is_ok());
        assert!(Poset::from_relation(names(), |i, j| i < j).is_err());
        assert!(Poset::from_relation(names(), |_, _| true).is_err());
        // a ≤ b, b ≤ c but not a ≤ c
        let bad = |i: usize, j: usize| i == j || (i, j) == (0, 1) || (i, j) == (1, 2);
        assert!(Poset::from_relation(names(), bad).is_err());
    }

    #[test]
    fn dual_of_fig1_swaps_bounds() {
        let p = fig1();
        let d = p.dual();
        let (zero, one) = (p.index_of("0").unwrap(), p.index_of("1").unwrap());
        assert!((0..d.len()).all(|x| d.leq(one, x)));
        assert!((0..d.len()).all(|x| d.leq(x, zero)));
        assert_eq!(d.dual(), p);
        let a = antichain(&["x", "y", "z"]);
        assert_eq!(a.dual(), a);
    }

    #[test]
    fn chains_are_rigid() {
        let p = chain(&["a", "b", "c"]);
        let q = chain(&["z", "y", "x"]);
        let iso = find_isomorphism(&p, &q).unwrap();
        assert_eq!(iso.apply_named("a"), Some("z"));
        assert_eq!(iso.apply_named("b"), Some("y"));
        assert_eq!(iso.apply_named("c"), Some("x"));
        assert!(iso.verify());
        for n in 1..6 {
            let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let auts = automorphisms(&chain(&refs));
            assert_eq!(auts.len(), 1);
            assert!(auts[0].is_identity());
        }
    }

    #[test]
    fn chain_vs_antichain() {
        assert!(find_isomorphism(&chain(&["a", "b", "c"]), &antichain(&["a", "b", "c"])).is_none());
        assert!(find_isomorphism(&chain(&["a", "b"]), &chain(&["a", "b", "c"])).is_none());
    }

    #[test]
    fn antichain_of_three_has_six_automorphisms() {
        let auts = automorphisms(&antichain(&["a", "b", "c"]));
        assert_eq!(auts.len(), 6);
        assert!(auts[0].is_identity());
        let images: Vec<Vec<usize>> = auts.iter().map(|a| a.as_slice().to_vec()).collect();
        let mut sorted = images.clone();
        sorted.sort();
        assert_eq!(images, sorted);
    }

    #[test]
    fn fig1_automorphisms() {
        // Reflection q<->p, s<->t fixes r.
        let auts = automorphisms(&fig1());
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[1].apply_named("q"), Some("p"));
        assert_eq!(auts[1].apply_named("s"), Some("t"));
        assert_eq!(auts[1].apply_named("r"), Some("r"));
        assert_eq!(count_automorphisms(&fig1()), 2);
    }

    #[test]
    fn composition_and_inverse() {
        let auts = automorphisms(&antichain(&["a", "b", "c"]));
        for f in &auts {
            let inv = f.inverse().unwrap();
            assert!(f.then(&inv).is_identity());
            for g in &auts {
                let fg = f.then(g);
                assert!(auts.iter().any(|h| h.as_slice() == fg.as_slice()));
            }
        }
    }

    #[test]
    fn display_lists_pairs() {
        let p = chain(&["a", "b"]);
        assert_eq!(OrderMap::identity(&p).to_string(), "a->a b->b");
    }
}
