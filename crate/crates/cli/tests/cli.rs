use std::process::Command;

use joint_digits::formats::{
    CoverageRecord, DepsRecord, DigitRecord, ImageRecord, TableRecord, WitnessRecord,
};
use joint_digits::{limits_from_env, run, run_with_limits};
use joint_digits_core::dependence::{pairwise_report, DependenceReport};
use joint_digits_core::image::{image_exact, image_report, joint_table, ImageReport, JointTable};
use joint_digits_core::torus::{orbit_sample, CoverageReport, Sampler};
use joint_digits_core::witness::{find_witness, WitnessOutcome, WitnessQuery};
use joint_digits_core::{Base, Limits, PositiveRational};

fn jd(args: &[&str]) -> joint_digits::Outcome {
    let mut argv = vec!["joint-digits"];
    argv.extend_from_slice(args);
    run_with_limits(argv, &Limits::default())
}

fn bases(v: &[u64]) -> Vec<Base> {
    Base::distinct(v).unwrap()
}

#[test]
fn digit_subcommand() {
    let out = jd(&["digit", "--base", "4", "--x", "56"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "3\n"));
    assert_eq!(jd(&["digit", "--base", "10", "--x", "1/3"]).stdout, "3\n");
    assert_eq!(jd(&["digit", "--bases", "4,8", "--x", "9"]).stdout, "2,1\n");
    let out = jd(&["digit", "--bases", "4,8", "--x", "56", "--output", "json"]);
    let rec: DigitRecord = serde_json::from_str(&out.stdout).unwrap();
    let (x, digits) = rec.into_domain().unwrap();
    assert_eq!(x, PositiveRational::from(56));
    assert_eq!(digits.iter().map(|d| d.value()).collect::<Vec<_>>(), vec![3, 7]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["digit", "--base", "2", "--x", "5"][..],
        &["digit", "--base", "10", "--x", "1e3"],
        &["digit", "--base", "10", "--x", "-4"],
        &["digit", "--base", "10", "--x", "0.5"],
        &["deps", "--bases", "4,4"],
        &["deps", "--bases", "4,x"],
        &["table", "--bases", "4,8", "--bogus"],
        &["frobnicate"],
        &["image", "--bases", "4,8,16"],
        &["digit", "--base", "4", "--x", "5", "--output", "csv"],
        &["coverage", "--bases", "3,10", "--samples", "5", "--ratio", "3"],
    ] {
        let out = jd(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn domain_errors_exit_1() {
    let out = jd(&["image", "--bases", "3,10"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("independent"));
    assert_eq!(jd(&["table", "--bases", "3,10"]).code, 1);
    let out = run_with_limits(
        ["joint-digits", "table", "--bases", "4,8"],
        &Limits { enumeration: 10, ..Limits::default() },
    );
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("cap"));
}

#[test]
fn image_json_round_trip() {
    let out = jd(&["image", "--bases", "4,8"]);
    assert_eq!(out.code, 0);
    let rec: ImageRecord = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((rec.attainable_count, rec.excluded_count), (15, 6));
    let p = rec.pairs.iter().find(|p| p.pair == (2, 1)).unwrap();
    assert_eq!((p.attainable, p.certificate_c), (true, Some(1)));
    let back = ImageReport::try_from(&rec).unwrap();
    assert_eq!(back, image_exact(Base::new(4).unwrap(), Base::new(8).unwrap(), &Limits::default()).unwrap());

    let out = jd(&["image", "--bases", "3,10", "--allow-trivial"]);
    assert_eq!(out.code, 0);
    let rec: ImageRecord = serde_json::from_str(&out.stdout).unwrap();
    assert!(rec.pairs.iter().all(|p| p.certificate == "density"));
    let back = ImageReport::try_from(&rec).unwrap();
    assert_eq!(back, image_report(Base::new(3).unwrap(), Base::new(10).unwrap(), &Limits::default()).unwrap());
}

#[test]
fn table_json_round_trip() {
    let out = jd(&["table", "--bases", "4,8", "--output", "json"]);
    let rec: TableRecord = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(rec.cells.len(), 21);
    let table = JointTable::try_from(&rec).unwrap();
    let dep = table.dependence();
    assert_eq!(table, joint_table(dep, &Limits::default()).unwrap());
    let mut tampered = rec.clone();
    tampered.cells[0].runs.clear();
    assert!(JointTable::try_from(&tampered).is_err());
}

#[test]
fn table_for_another_pair() {
    let out = jd(&["table", "--bases", "9,27"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("bases (9, 27): a = 3, e1 = 2, e2 = 3, combined base 729\n"));
    // 26 rows of j2 plus header, title and excluded line
    assert_eq!(out.stdout.lines().count(), 29);
}

#[test]
fn deps_json_round_trip() {
    let out = jd(&["deps", "--bases", "4,8,10", "--output", "json"]);
    let rec: DepsRecord = serde_json::from_str(&out.stdout).unwrap();
    assert!(!rec.pairwise_independent);
    assert_eq!(rec.dependent_pairs.len(), 1);
    assert_eq!(rec.dependent_pairs[0].certificate.combined_base, "64");
    let back = DependenceReport::try_from(&rec).unwrap();
    assert_eq!(back, pairwise_report(&bases(&[4, 8, 10])).unwrap());
    let text = jd(&["deps", "--bases", "3,10"]).stdout;
    assert!(text.contains("pairwise independent: yes"));
}

#[test]
fn witness_outcomes() {
    let out = jd(&["witness", "--bases", "3,10", "--target", "2,9"]);
    assert_eq!(out.code, 0);
    let rec: WitnessRecord = serde_json::from_str(&out.stdout).unwrap();
    match &rec {
        WitnessRecord::Found { x, anchor, k, verified, .. } => {
            assert_eq!((x.as_str(), *anchor, *k, *verified), ("9565938", 0, 14, true));
        }
        other => panic!("{other:?}"),
    }
    let q = WitnessQuery::new(&[3, 10], &[2, 9]).unwrap();
    assert_eq!(rec.into_domain().unwrap(), find_witness(&q).unwrap());

    let out = jd(&["witness", "--bases", "4,8", "--target", "2,3"]);
    assert_eq!(out.code, 0);
    let rec: WitnessRecord = serde_json::from_str(&out.stdout).unwrap();
    assert!(matches!(rec, WitnessRecord::NotAttainable { verified: true, .. }));
    let q = WitnessQuery::new(&[4, 8], &[2, 3]).unwrap();
    assert_eq!(rec.into_domain().unwrap(), find_witness(&q).unwrap());

    let out = jd(&["witness", "--bases", "3,10,7", "--target", "2,9,6", "--budget", "1", "--no-retry"]);
    let rec: WitnessRecord = serde_json::from_str(&out.stdout).unwrap();
    assert!(matches!(rec, WitnessRecord::Exhausted { k_reached: 1, verified: false, .. }));
    assert!(matches!(rec.into_domain().unwrap(), WitnessOutcome::Exhausted { .. }));

    let out = jd(&["witness", "--bases", "3,10", "--target", "2,9", "--anchor", "1", "--output", "text"]);
    assert!(out.stdout.starts_with("found x = "), "{}", out.stdout);
    assert_eq!(jd(&["witness", "--bases", "3,10", "--target", "3,9"]).code, 1);
}

#[test]
fn coverage_outputs() {
    let out = jd(&["coverage", "--bases", "4,8", "--samples", "63"]);
    assert_eq!(out.code, 0);
    let rec: CoverageRecord = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((rec.rectangles_hit, rec.rectangles_total, rec.samples), (15, 21, 63));
    let back = CoverageReport::try_from(&rec).unwrap();
    let direct = orbit_sample(&bases(&[4, 8]), 63, &Sampler::IntegerScan, 128, &Limits::default()).unwrap();
    assert_eq!(back, direct);

    let out = jd(&["coverage", "--bases", "3,10", "--samples", "50", "--sampler", "geometric", "--start", "1/3", "--ratio", "7/5"]);
    let rec: CoverageRecord = serde_json::from_str(&out.stdout).unwrap();
    let back = CoverageReport::try_from(&rec).unwrap();
    let sampler = Sampler::Geometric {
        start: PositiveRational::from_u64(1, 3).unwrap(),
        ratio: PositiveRational::from_u64(7, 5).unwrap(),
    };
    assert_eq!(back, orbit_sample(&bases(&[3, 10]), 50, &sampler, 128, &Limits::default()).unwrap());

    let csv = jd(&["coverage", "--bases", "3,10", "--samples", "100", "--output", "csv"]).stdout;
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("tuple,count,frequency,measure"));
    assert_eq!(lines.count(), 18);
    assert!(csv.contains("\n1 1,"));

    let text = jd(&["coverage", "--bases", "3,10", "--samples", "10", "--sampler", "low-discrepancy", "--output", "text"]);
    assert_eq!(text.code, 0);
    assert!(text.stdout.starts_with("10 samples (low-discrepancy)"));
}

#[test]
fn env_caps() {
    let lookup = |k: &str| match k {
        "JOINT_DIGITS_SAMPLE_CAP" => Some("5".to_string()),
        "JOINT_DIGITS_ENUM_CAP" => Some(" 100 ".to_string()),
        _ => None,
    };
    let l = limits_from_env(lookup).unwrap();
    assert_eq!((l.samples, l.enumeration, l.scan), (5, 100, Limits::DEFAULT.scan));
    assert!(limits_from_env(|_| Some("lots".to_string())).is_err());
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_joint-digits");
    let out = Command::new(bin).args(["witness", "--bases", "4,8", "--target", "2,3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not_attainable"));
    let out = Command::new(bin).args(["image", "--bases", "3,10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let out = Command::new(bin).args(["digit", "--base", "1", "--x", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["coverage", "--bases", "3,10", "--samples", "10"])
        .env("JOINT_DIGITS_SAMPLE_CAP", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["table", "--bases", "4,8"])
        .env("JOINT_DIGITS_ENUM_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["table", "--bases", "4,8", "--output", "json"][..],
        &["witness", "--bases", "5,7,11", "--target", "4,6,10"],
        &["coverage", "--bases", "3,10", "--samples", "300000"],
        &["image", "--bases", "16,64"],
    ] {
        let a = run(std::iter::once("joint-digits").chain(args.iter().copied()));
        let b = run(std::iter::once("joint-digits").chain(args.iter().copied()));
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
}
