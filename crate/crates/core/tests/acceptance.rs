//! Exit criteria. Run with `cargo test -p lattice-cuts --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lattice_cuts::cli::{run_command_with_caps, EXIT_OK};
use lattice_cuts::io::{parse_family, parse_lattice};
use lattice_cuts::representation::{
    analyze, brute_force_oracle, check_closure_conditions, enumerate_s,
};
use lattice_cuts::selftest::{
    check_factorization, check_instance, instances, random_family, random_lattice, SelftestConfig,
};
use lattice_cuts::{automorphisms, Caps, Lattice, Poset, SetFamily};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

const STREAM: SelftestConfig = SelftestConfig {
    instances: 200,
    max_lattice: 6,
    max_domain: 3,
    seed: 42,
};

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let (lat, fam) = (fixture("fig1.lat"), fixture("exa1.fam"));
    let count = run_command_with_caps(["lattice-cuts", "count", &lat, &fam], &caps);
    ensure(count.code == EXIT_OK && count.text == "|S|=2 |OI|=2 |N|=4\n", || {
        format!("count gave {:?} (exit {})", count.text, count.code)
    })?;
    let listed = run_command_with_caps(["lattice-cuts", "enumerate", &lat, &fam], &caps);
    ensure(listed.code == EXIT_OK, || format!("enumerate exit {}", listed.code))?;
    let got: BTreeSet<String> = listed
        .text
        .split("\n\n")
        .map(|block| block.trim().to_owned())
        .collect();
    let want: BTreeSet<String> = [
        ["r", "t", "p"], // δ
        ["p", "t", "r"], // γ
        ["q", "s", "r"], // β
        ["r", "s", "q"], // α
    ]
    .iter()
    .map(|v| format!("map: a -> {}\nmap: b -> {}\nmap: c -> {}", v[0], v[1], v[2]))
    .collect();
    ensure(got == want, || format!("enumerate gave {got:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("|S|=2 |OI|=2 |N|=4, four maps, {:?}", start.elapsed()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let out = run_command_with_caps(
        [
            "lattice-cuts",
            "selftest",
            "--instances",
            "200",
            "--max-lattice",
            "6",
            "--max-domain",
            "3",
            "--seed",
            "42",
        ],
        &Caps::default(),
    );
    ensure(out.code == EXIT_OK, || {
        let fails: Vec<&str> = out.text.lines().filter(|l| l.contains("FAIL")).collect();
        format!("exit {}: {fails:?}", out.code)
    })?;
    let last = out.text.lines().last().unwrap_or_default();
    ensure(last == "selftest: 200/200 passed (seed 42)", || last.to_owned())?;
    let ok_lines = out.text.lines().filter(|l| l.ends_with(" ok")).count();
    ensure(ok_lines == 200, || format!("{ok_lines} instance lines ok"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("200/200, {:?}", start.elapsed()))
}

fn factorization_properties() -> Outcome {
    let start = Instant::now();
    let cfg = SelftestConfig {
        instances: 600,
        max_lattice: 7,
        max_domain: 4,
        seed: 2024,
    };
    let mut checked = 0;
    for inst in instances(&cfg) {
        ensure(inst.lattice.len() <= 7 && inst.mu.domain().len() <= 4, || {
            "instance outside bounds".into()
        })?;
        let failures = check_factorization(&inst.mu);
        ensure(failures.is_empty(), || format!("{:?}: {failures:?}", inst.mu))?;
        checked += 1;
    }
    ensure(checked >= 500, || format!("only {checked} instances"))?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{checked} fuzzy sets, {:?}", start.elapsed()))
}

fn existence_agreement() -> Outcome {
    let mut checked = 0;
    let mut negative = 0;
    let mut check = |l: &Lattice, f: &SetFamily| -> Result<(), String> {
        let oracle = brute_force_oracle(l, f).map_err(|e| e.to_string())?;
        let closed = check_closure_conditions(f);
        let s_nonempty = closed && !enumerate_s(l, f).map_err(|e| e.to_string())?.is_empty();
        ensure(!oracle.is_empty() == s_nonempty, || {
            format!("{l:?} {f:?}: oracle {} vs S nonempty {s_nonempty}", oracle.len())
        })?;
        checked += 1;
        if oracle.is_empty() {
            negative += 1;
        }
        Ok(())
    };
    for inst in instances(&STREAM) {
        check(&inst.lattice, &inst.family)?;
    }
    // raw families over the same lattice sizes, mostly not representable
    let mut rng = ChaCha8Rng::seed_from_u64(STREAM.seed);
    for _ in 0..400 {
        let size = rng.gen_range(2..=STREAM.max_lattice);
        let l = random_lattice(&mut rng, size);
        let domain = rng.gen_range(1..=STREAM.max_domain);
        let f = random_family(&mut rng, domain);
        check(&l, &f)?;
    }
    ensure(negative > 0, || "no non-representable family was tried".into())?;
    Ok(format!("{checked} pairs, {negative} not representable, zero mismatches"))
}

fn uniqueness_criterion() -> Outcome {
    let mut unique = 0;
    for inst in instances(&STREAM) {
        let report = analyze(&inst.lattice, &inst.family, false);
        let oracle = brute_force_oracle(&inst.lattice, &inst.family).map_err(|e| e.to_string())?;
        ensure(report.unique == (oracle.len() == 1), || {
            format!("{:?}: unique={} oracle={}", inst.mu, report.unique, oracle.len())
        })?;
        ensure(
            report.unique == (report.s_members.len() == 1 && report.oi_size == 1),
            || "unique flag disagrees with |S| = |OI| = 1".into(),
        )?;
        unique += usize::from(report.unique);
    }
    let l = parse_lattice(&std::fs::read_to_string(fixture("chain3.lat")).unwrap())
        .map_err(|e| e.to_string())?;
    let f = parse_family(&std::fs::read_to_string(fixture("chain3.fam")).unwrap())
        .map_err(|e| e.to_string())?;
    let report = analyze(&l, &f, true);
    ensure(report.unique, || "chain instance not unique".into())?;
    let w = report.witnesses.unwrap_or_default();
    ensure(
        w.len() == 1 && w[0].value_name(0) == "m" && w[0].value_name(1) == "0",
        || format!("chain witness {w:?}"),
    )?;
    ensure(brute_force_oracle(&l, &f).map_err(|e| e.to_string())? == w, || {
        "chain oracle differs".into()
    })?;
    Ok(format!("{unique}/200 unique, chain witness a->m b->0"))
}

fn check_structure(l: &Lattice) -> Result<(), String> {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            let m = l.meet(a, b);
            let j = l.join(a, b);
            ensure(m == l.meet(b, a) && j == l.join(b, a), || "commutativity".into())?;
            ensure(l.meet(a, j) == a && l.join(a, m) == a, || "absorption".into())?;
            for c in 0..n {
                ensure(l.meet(a, l.meet(b, c)) == l.meet(m, c), || "meet associativity".into())?;
                ensure(l.join(a, l.join(b, c)) == l.join(j, c), || "join associativity".into())?;
            }
        }
        ensure(l.meet(a, a) == a && l.join(a, a) == a, || "idempotence".into())?;
    }
    let subsets: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    let closures: Vec<_> = subsets.iter().map(|s| l.meet_closure(s)).collect();
    for (i, s) in subsets.iter().enumerate() {
        let c = &closures[i];
        ensure(s.iter().all(|&x| c.contains(x)), || "closure not extensive".into())?;
        ensure(&l.meet_closure(c.members()) == c, || "closure not idempotent".into())?;
        ensure(l.is_iota_embedded(c.members()), || "closure not ι-embedded".into())?;
        for (j, t) in subsets.iter().enumerate() {
            if s.iter().all(|x| t.contains(x)) {
                ensure(c.members().iter().all(|&x| closures[j].contains(x)), || {
                    "closure not monotone".into()
                })?;
            }
        }
    }
    check_poset(l.poset())
}

fn check_poset(p: &Poset) -> Result<(), String> {
    ensure(&p.dual().dual() == p, || "dual is not an involution".into())?;
    let auts = automorphisms(p);
    ensure(auts.first().is_some_and(|a| a.is_identity()), || {
        "identity not first".into()
    })?;
    let images: BTreeSet<Vec<usize>> = auts.iter().map(|a| a.as_slice().to_vec()).collect();
    for f in &auts {
        ensure(f.verify(), || format!("{f:?} is not an automorphism"))?;
        let inv = f.inverse().ok_or("not invertible")?;
        ensure(images.contains(inv.as_slice()), || "inverse missing".into())?;
        for g in &auts {
            ensure(images.contains(f.then(g).as_slice()), || "composite missing".into())?;
        }
    }
    ensure(auts.len() == automorphisms(&p.dual()).len(), || {
        "dual has a different group".into()
    })
}

fn structural_invariants() -> Outcome {
    let mut lattices = 0;
    let fig1 = parse_lattice(&std::fs::read_to_string(fixture("fig1.lat")).unwrap())
        .map_err(|e| e.to_string())?;
    let chain = parse_lattice(&std::fs::read_to_string(fixture("chain3.lat")).unwrap())
        .map_err(|e| e.to_string())?;
    for l in [&fig1, &chain] {
        check_structure(l)?;
        lattices += 1;
    }
    for name in ["exa1.fam", "trivial.fam", "chain3.fam", "not_closed.fam"] {
        let f = parse_family(&std::fs::read_to_string(fixture(name)).unwrap())
            .map_err(|e| e.to_string())?;
        check_poset(&f.dual_poset())?;
    }
    for inst in instances(&STREAM) {
        check_structure(&inst.lattice)?;
        check_poset(&inst.family.dual_poset())?;
        lattices += 1;
    }
    Ok(format!("{lattices} lattices, zero failures"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 example reproduction", example_reproduction),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 factorization properties", factorization_properties),
        ("4 existence agreement", existence_agreement),
        ("5 uniqueness criterion", uniqueness_criterion),
        ("6 structural invariants", structural_invariants),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                println!("criterion {name}: FAIL ({why})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn stream_instances_all_pass_direct_check() {
    for inst in instances(&STREAM) {
        let c = check_instance(&inst.lattice, &inst.family, Caps::default().oracle).unwrap();
        assert!(c.passed(), "{:?}", c.failures);
    }
}
