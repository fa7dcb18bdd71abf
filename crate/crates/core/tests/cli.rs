use std::path::PathBuf;
use std::process::Command;

use lattice_cuts::cli::{run_command_with_caps, EXIT_CAP, EXIT_MISMATCH, EXIT_NOT_CLOSED, EXIT_OK, EXIT_USAGE};
use lattice_cuts::Caps;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = run_command_with_caps(
        std::iter::once("lattice-cuts").chain(args.iter().copied()),
        &Caps::default(),
    );
    (out.code, out.text)
}

#[test]
fn count_example() {
    let (code, text) = run(&["count", &fixture("fig1.lat"), &fixture("exa1.fam")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(text, "|S|=2 |OI|=2 |N|=4\n");
}

#[test]
fn enumerate_example_is_canonical() {
    let (code, text) = run(&["enumerate", &fixture("fig1.lat"), &fixture("exa1.fam")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        text,
        "map: a -> q\nmap: b -> s\nmap: c -> r\n\n\
         map: a -> r\nmap: b -> s\nmap: c -> q\n\n\
         map: a -> r\nmap: b -> t\nmap: c -> p\n\n\
         map: a -> p\nmap: b -> t\nmap: c -> r\n"
    );
}

#[test]
fn unique_outputs() {
    assert_eq!(
        run(&["unique", &fixture("fig1.lat"), &fixture("trivial.fam")]),
        (EXIT_OK, "unique\n".into())
    );
    assert_eq!(
        run(&["unique", &fixture("fig1.lat"), &fixture("exa1.fam")]),
        (EXIT_OK, "not-unique (4)\n".into())
    );
    assert_eq!(
        run(&["unique", &fixture("chain3.lat"), &fixture("chain3.fam")]),
        (EXIT_OK, "unique\n".into())
    );
}

#[test]
fn oracle_matches() {
    let (code, text) = run(&["oracle", &fixture("fig1.lat"), &fixture("exa1.fam")]);
    assert_eq!(code, EXIT_OK);
    assert!(text.ends_with("\nMATCH\n"));
    assert_eq!(text.matches("map: a ->").count(), 4);
}

#[test]
fn cuts_of_delta() {
    let (code, text) = run(&["cuts", &fixture("fig1.lat"), &fixture("delta.fz")]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("cut 0: a b c\ncut q:\ncut r: a b\n"));
    assert!(text.contains("cut t: b\n"));
    let family = text.split_once("universe:").unwrap().1;
    assert_eq!(
        family,
        " a b c\nset:\nset: b\nset: a b\nset: b c\nset: a b c\n"
    );
}

#[test]
fn automorphisms_of_lattice_and_family() {
    let (code, text) = run(&["automorphisms", &fixture("exa1.fam")]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("|OI|=2\n"));
    let (code, text) = run(&["automorphisms", &fixture("chain3.lat")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(text, "|OI|=1\n0->0 m->m 1->1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["count", &fixture("fig1.lat"), &fixture("not_closed.fam")]).0,
        EXIT_NOT_CLOSED
    );
    assert_eq!(run(&["count", &fixture("fig1.lat")]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["count", &fixture("missing.lat"), &fixture("exa1.fam")]).0,
        EXIT_USAGE
    );
    // a family file is not a lattice file
    assert_eq!(
        run(&["count", &fixture("exa1.fam"), &fixture("exa1.fam")]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["--help"]).0, EXIT_OK);

    let tight = Caps {
        lattice: 64,
        oracle: 100,
    };
    let out = run_command_with_caps(
        ["lattice-cuts", "oracle", &fixture("fig1.lat"), &fixture("exa1.fam")],
        &tight,
    );
    assert_eq!(out.code, EXIT_CAP);
    let small = Caps {
        lattice: 3,
        oracle: 100,
    };
    let out = run_command_with_caps(
        ["lattice-cuts", "count", &fixture("fig1.lat"), &fixture("exa1.fam")],
        &small,
    );
    assert_eq!(out.code, EXIT_CAP);
    assert_ne!(EXIT_MISMATCH, EXIT_OK);
}

#[test]
fn selftest_is_reproducible() {
    let args = [
        "selftest",
        "--instances",
        "30",
        "--max-lattice",
        "5",
        "--max-domain",
        "3",
        "--seed",
        "9",
    ];
    let a = run(&args);
    assert_eq!(a.0, EXIT_OK, "{}", a.1);
    assert_eq!(a, run(&args));
    assert!(a.1.ends_with("selftest: 30/30 passed (seed 9)\n"));
}

#[test]
fn binary_honours_caps_env() {
    let bin = env!("CARGO_BIN_EXE_lattice-cuts");
    let out = Command::new(bin)
        .args(["count", &fixture("fig1.lat"), &fixture("exa1.fam")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "|S|=2 |OI|=2 |N|=4\n");

    let out = Command::new(bin)
        .env("LATTICE_CUTS_CAPS", "64,10")
        .args(["oracle", &fixture("fig1.lat"), &fixture("exa1.fam")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    let out = Command::new(bin)
        .env("LATTICE_CUTS_CAPS", "nonsense")
        .args(["count", &fixture("fig1.lat"), &fixture("exa1.fam")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
