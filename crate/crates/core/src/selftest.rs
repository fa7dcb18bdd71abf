//! Randomized cross-check of the counting formula against the brute-force
//! oracle.
//!
//! Instances are drawn from a seeded ChaCha stream, so a given configuration
//! always produces the same instances and the same report.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fuzzy::{DomainSet, FuzzySet, SetFamily};
use crate::lattice::{validate_complete_lattice, Lattice};
use crate::order::{count_automorphisms, Poset};
use crate::representation::{
    analyze, brute_force_oracle_with_cap, check_closure_conditions, enumerate_s,
    enumerate_s_filtered,
};

const LATTICE_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub instances: usize,
    pub max_lattice: usize,
    pub max_domain: usize,
    pub seed: u64,
}

/// A random lattice with exactly `size` elements.
///
/// Draws bounded posets (random order among the inner elements, one bottom,
/// one top, carrier shuffled) until one is a lattice. Falls back to a chain
/// if none is found within a fixed number of attempts.
pub fn random_lattice<R: Rng>(rng: &mut R, size: usize) -> Lattice {
    assert!(size >= 1);
    let names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
    for _ in 0..LATTICE_ATTEMPTS {
        // rank[k] is the position of carrier element k in a linear extension
        let mut rank: Vec<usize> = (0..size).collect();
        rank.shuffle(rng);
        let density = rng.gen_range(0.2..0.8);
        let mut covers = Vec::new();
        for a in 0..size {
            for b in 0..size {
                let (ra, rb) = (rank[a], rank[b]);
                if ra >= rb {
                    continue;
                }
                let bound = ra == 0 || rb == size - 1;
                if bound || rng.gen_bool(density) {
                    covers.push((names[a].clone(), names[b].clone()));
                }
            }
        }
        let poset = Poset::from_covers_with_cap(&names, &covers, usize::MAX)
            .expect("edges follow a linear extension");
        if let Ok(l) = validate_complete_lattice(&poset) {
            return l;
        }
    }
    let covers: Vec<(String, String)> = names
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Lattice::from_covers(&names, &covers).expect("a chain is a lattice")
}

pub fn random_fuzzy_set<R: Rng>(rng: &mut R, lattice: &Lattice, domain_size: usize) -> FuzzySet {
    let domain = (0..domain_size).map(|i| format!("x{i}")).collect();
    let map = (0..domain_size)
        .map(|_| rng.gen_range(0..lattice.len()))
        .collect();
    FuzzySet::new(domain, lattice.clone(), map).expect("values drawn from the carrier")
}

/// A random family over `domain_size` points. Roughly half the draws are
/// made to contain `X` and half of those are closed under intersections, so
/// both representable and non-representable families show up.
pub fn random_family<R: Rng>(rng: &mut R, domain_size: usize) -> SetFamily {
    let universe: Vec<String> = (0..domain_size).map(|i| format!("x{i}")).collect();
    let all = 1u64 << domain_size;
    let count = rng.gen_range(1..=all.min(8));
    let mut masks: BTreeSet<u64> = (0..count).map(|_| rng.gen_range(0..all)).collect();
    if rng.gen_bool(0.5) {
        masks.insert(all - 1);
        if rng.gen_bool(0.5) {
            loop {
                let extra: Vec<u64> = masks
                    .iter()
                    .flat_map(|&a| masks.iter().map(move |&b| a & b))
                    .filter(|m| !masks.contains(m))
                    .collect();
                if extra.is_empty() {
                    break;
                }
                masks.extend(extra);
            }
        }
    }
    let members = masks
        .into_iter()
        .map(|m| DomainSet::new((0..domain_size).filter(|&i| m >> i & 1 == 1).collect()))
        .collect();
    SetFamily::new(universe, members).expect("distinct subsets of the universe")
}

/// One generated case: a lattice, a fuzzy set on it and that set's cuts.
#[derive(Debug, Clone)]
pub struct Instance {
    pub lattice: Lattice,
    pub mu: FuzzySet,
    pub family: SetFamily,
}

/// The deterministic instance stream for a configuration.
pub fn instances(cfg: &SelftestConfig) -> impl Iterator<Item = Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (max_lattice, max_domain) = (cfg.max_lattice.max(2), cfg.max_domain.max(1));
    (0..cfg.instances).map(move |_| {
        let size = rng.gen_range(2..=max_lattice);
        let lattice = random_lattice(&mut rng, size);
        let domain = rng.gen_range(1..=max_domain);
        let mu = random_fuzzy_set(&mut rng, &lattice, domain);
        let family = mu.cut_family();
        Instance {
            lattice,
            mu,
            family,
        }
    })
}

/// Outcome of cross-checking one `(L, F)` pair.
#[derive(Debug, Clone, Default)]
pub struct InstanceCheck {
    pub lattice_size: usize,
    pub domain_size: usize,
    pub family_size: usize,
    pub closed: bool,
    pub s_size: usize,
    pub oi_size: usize,
    pub formula_total: usize,
    pub enumerated: usize,
    pub oracle: usize,
    pub unique: bool,
    pub failures: Vec<String>,
}

impl InstanceCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares every route to `N(L,F)`: the count formula, the orbit
/// enumeration and the exhaustive oracle.
pub fn check_instance(l: &Lattice, f: &SetFamily, oracle_cap: u64) -> Result<InstanceCheck> {
    let oracle = brute_force_oracle_with_cap(l, f, oracle_cap)?;
    let report = analyze(l, f, true);
    let enumerated = report.witnesses.clone().unwrap_or_default();
    let mut c = InstanceCheck {
        lattice_size: l.len(),
        domain_size: f.universe().len(),
        family_size: f.len(),
        closed: check_closure_conditions(f),
        s_size: report.s_members.len(),
        oi_size: report.oi_size,
        formula_total: report.total,
        enumerated: enumerated.len(),
        oracle: oracle.len(),
        unique: report.unique,
        failures: Vec::new(),
    };
    let mut failures = Vec::new();
    let mut fail = |msg: String| failures.push(msg);

    let values = |sets: &[FuzzySet]| -> Vec<Vec<usize>> {
        sets.iter().map(|s| s.values().to_vec()).collect()
    };
    if values(&enumerated) != values(&oracle) {
        fail(format!(
            "enumerated N {:?} differs from oracle {:?}",
            enumerated, oracle
        ));
    }
    if report.total != report.s_members.len() * report.oi_size || report.total != oracle.len() {
        fail(format!(
            "|N|={} but |S|·|OI| = {}·{}",
            oracle.len(),
            report.s_members.len(),
            report.oi_size
        ));
    }
    if report.oi_size != count_automorphisms(&f.dual_poset()) {
        fail("|OI(F)| disagrees with the automorphism count".into());
    }
    if report.unique != (oracle.len() == 1) {
        fail(format!(
            "unique={} but the oracle found {}",
            report.unique,
            oracle.len()
        ));
    }
    let exists = c.closed && !report.s_members.is_empty();
    if exists != !oracle.is_empty() {
        fail(format!(
            "existence test says {exists} but the oracle found {}",
            oracle.len()
        ));
    }
    if c.closed {
        match enumerate_s_filtered(l, f) {
            Ok(filtered) if filtered == report.s_members => {}
            Ok(filtered) => fail(format!(
                "S by embedding {:?} differs from S by filtering {filtered:?}",
                report.s_members
            )),
            Err(e) => fail(format!("filtered S failed: {e}")),
        }
        debug_assert_eq!(enumerate_s(l, f).ok().as_ref(), Some(&report.s_members));
    }
    for mu in &enumerated {
        if &mu.cut_family() != f {
            fail(format!("{mu:?} does not have cut family F"));
        }
        let closure = mu.image_meet_closure();
        let class = enumerated
            .iter()
            .filter(|other| other.image_meet_closure() == closure)
            .count();
        if !report.s_members.contains(&closure) {
            fail(format!("L^μ of {mu:?} is not in S"));
        } else if class != report.oi_size {
            fail(format!("class of {closure:?} has {class} members, not |OI|"));
        }
    }
    c.failures = failures;
    Ok(c)
}

/// Checks the cut/φ/factorization properties of a single fuzzy set and
/// returns the list of violations.
pub fn check_factorization(mu: &FuzzySet) -> Vec<String> {
    let mut failures = Vec::new();
    let l = mu.lattice();
    let closure = mu.image_meet_closure();

    match mu.phi() {
        Ok(phi) if phi.verify() => {}
        Ok(phi) => failures.push(format!("φ = {phi:?} is not an isomorphism")),
        Err(e) => failures.push(format!("φ failed: {e}")),
    }
    for p in 0..l.len() {
        let image = mu.meet_over(&mu.cut(p));
        if !l.leq(p, image) {
            failures.push(format!("φ(μ_{}) = {} is not ≥ {}", l.name(p), l.name(image), l.name(p)));
        }
        if closure.contains(p) && image != p {
            failures.push(format!("φ(μ_{}) = {} for p in L^μ", l.name(p), l.name(image)));
        }
        for q in 0..l.len() {
            if l.leq(p, q) && !mu.cut(q).is_subset(&mu.cut(p)) {
                failures.push(format!("cuts not antitone at {} ≤ {}", l.name(p), l.name(q)));
            }
        }
    }
    // ⋂_{p∈S} μ_p = μ_{⋁S}, over every S when that is affordable
    if l.len() <= 12 {
        for mask in 0u32..(1 << l.len()) {
            let s: Vec<usize> = (0..l.len()).filter(|&i| mask >> i & 1 == 1).collect();
            let lhs = s
                .iter()
                .fold(DomainSet::full(mu.domain().len()), |acc, &p| acc.intersection(&mu.cut(p)));
            if lhs != mu.cut(l.join_of_set(s.iter().copied())) {
                failures.push(format!("intersection identity fails for {s:?}"));
            }
        }
    }

    let (nu, iota) = mu.canonical_factorization();
    if !iota.verify() {
        failures.push("ι is not an identity embedding".into());
    }
    if (0..mu.domain().len()).any(|x| iota.apply(nu.value(x)) != mu.value(x)) {
        failures.push("ι ∘ ν differs from μ".into());
    }
    if nu.cut_family() != mu.cut_family() {
        failures.push("ν and μ have different cut families".into());
    }
    if nu.image_meet_closure().len() != nu.lattice().len() {
        failures.push("(L^μ)^ν is smaller than L^μ".into());
    }
    let carrier: Vec<&str> = nu.lattice().elements().iter().map(String::as_str).collect();
    if carrier != closure.names() {
        failures.push("ν's codomain is not L^μ".into());
    }
    failures
}

#[derive(Debug, Clone)]
pub struct SelftestSummary {
    pub passed: usize,
    pub total: usize,
    pub report: String,
}

impl SelftestSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

pub fn run(cfg: &SelftestConfig, caps: &Caps) -> Result<SelftestSummary> {
    if cfg.max_lattice < 2 || cfg.max_domain < 1 {
        return Err(Error::InvalidArgument(format!(
            "selftest needs --max-lattice >= 2 and --max-domain >= 1, got {} and {}",
            cfg.max_lattice, cfg.max_domain
        )));
    }
    if cfg.max_lattice > caps.lattice {
        return Err(Error::CarrierTooLarge {
            size: cfg.max_lattice,
            cap: caps.lattice,
        });
    }
    let worst = u32::try_from(cfg.max_domain)
        .ok()
        .and_then(|d| (cfg.max_lattice as u64).checked_pow(d));
    match worst {
        Some(w) if w <= caps.oracle => {}
        w => {
            return Err(Error::SearchSpaceTooLarge {
                size: w.map_or_else(
                    || format!("{}^{}", cfg.max_lattice, cfg.max_domain),
                    |w| w.to_string(),
                ),
                cap: caps.oracle,
            })
        }
    }

    let mut report = String::new();
    let mut passed = 0;
    for (i, inst) in instances(cfg).enumerate() {
        let mut c = check_instance(&inst.lattice, &inst.family, caps.oracle)?;
        c.failures.extend(check_factorization(&inst.mu));
        let _ = write!(
            report,
            "#{:03} |L|={} |X|={} |F|={} |S|={} |OI|={} |N|={} oracle={}",
            i + 1,
            c.lattice_size,
            c.domain_size,
            c.family_size,
            c.s_size,
            c.oi_size,
            c.formula_total,
            c.oracle
        );
        if c.passed() {
            passed += 1;
            report.push_str(" ok\n");
        } else {
            let _ = writeln!(report, " FAIL: {}", c.failures.join("; "));
        }
    }
    let _ = writeln!(
        report,
        "selftest: {passed}/{} passed (seed {})",
        cfg.instances, cfg.seed
    );
    Ok(SelftestSummary {
        passed,
        total: cfg.instances,
        report,
    })
}
