//! End-to-end tests of the `tilepump` binary: exit codes, report text,
//! canonical round-trips of the shipped fixture files, and render
//! determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tilepump_cli::formats;

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fx(name: &str) -> String {
    fixture_dir().join(name).to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tilepump"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("binary exits normally"),
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        String::from_utf8(out.stderr).expect("stderr is UTF-8"),
    )
}

// -- canonical fixtures -----------------------------------------------------

#[test]
fn shipped_fixtures_round_trip_byte_exact() {
    for name in ["row.tiles", "staircase.tiles", "quad.tiles", "cold.tiles"] {
        let text = fs::read_to_string(fixture_dir().join(name)).unwrap();
        let sys = formats::parse_tile_system(name, &text).unwrap();
        assert_eq!(formats::serialize_tile_system(&sys), text, "{name}");
    }
    for name in [
        "row2.assembly",
        "cold-pair.assembly",
        "quad-square.assembly",
        "staircase-seed.assembly",
    ] {
        let text = fs::read_to_string(fixture_dir().join(name)).unwrap();
        let a = formats::parse_assembly(name, &text).unwrap();
        assert_eq!(formats::serialize_assembly(&a), text, "{name}");
    }
    let text = fs::read_to_string(fixture_dir().join("ushape.shape")).unwrap();
    let s = formats::parse_shape("ushape.shape", &text).unwrap();
    assert_eq!(formats::serialize_shape(&s), text);
    for name in ["crossing.curves", "three-chain.curves", "fractional.curves"] {
        let text = fs::read_to_string(fixture_dir().join(name)).unwrap();
        let f = formats::parse_curves(name, &text).unwrap();
        assert_eq!(formats::serialize_curves(&f), text, "{name}");
    }
}

// -- stable -----------------------------------------------------------------

#[test]
fn stable_reports_the_min_cut_against_tau() {
    let (code, out, _) = run(&[
        "stable",
        "--system",
        &fx("cold.tiles"),
        "--assembly",
        &fx("cold-pair.assembly"),
    ]);
    assert_eq!(code, 1);
    assert_eq!(out, "unstable: min cut 1 < τ=2\n");

    let (code, out, _) = run(&[
        "stable",
        "--system",
        &fx("quad.tiles"),
        "--assembly",
        &fx("quad-square.assembly"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "stable: min cut 2 >= τ=2\n");
}

#[test]
fn stable_rejects_assemblies_naming_unknown_tiles() {
    let (code, _, err) = run(&[
        "stable",
        "--system",
        &fx("row.tiles"),
        "--assembly",
        &fx("quad-square.assembly"),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("does not exist in the system"), "{err}");
}

// -- enumerate --------------------------------------------------------------

#[test]
fn enumerate_quad_finds_exactly_seven_assemblies() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("found");
    let (code, out, _) = run(&[
        "enumerate",
        "--system",
        &fx("quad.tiles"),
        "--max-size",
        "8",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "count 7");
    assert_eq!(out.matches("# assembly ").count(), 7);

    let written: Vec<_> = (0..7)
        .map(|i| out_dir.join(format!("assembly_{i:04}.txt")))
        .collect();
    assert!(written.iter().all(|p| p.is_file()));
    // The canonically largest of the seven is the full square.
    let last = fs::read_to_string(&written[6]).unwrap();
    let square = fs::read_to_string(fixture_dir().join("quad-square.assembly")).unwrap();
    assert_eq!(last, square);
}

#[test]
fn enumerate_rejects_a_zero_bound() {
    let (code, _, err) = run(&["enumerate", "--system", &fx("quad.tiles"), "--max-size", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("enumerate"), "{err}");
}

// -- repetitions ------------------------------------------------------------

#[test]
fn repetitions_lists_canonical_vectors_or_reports_none() {
    let (code, out, _) = run(&["repetitions", "--assembly", &fx("staircase-seed.assembly")]);
    assert_eq!(code, 0);
    assert_eq!(out, "v 2,-2 overlap 1\n");

    let (code, out, _) = run(&["repetitions", "--assembly", &fx("quad-square.assembly")]);
    assert_eq!(code, 1);
    assert_eq!(out, "none\n");
}

// -- pump -------------------------------------------------------------------

#[test]
fn pump_grows_the_row_by_one_tile_per_iteration() {
    let (code, out, _) = run(&[
        "pump",
        "--system",
        &fx("row.tiles"),
        "--assembly",
        &fx("row2.assembly"),
        "--vec",
        "1,0",
        "--iters",
        "10",
        "--certify-bound",
        "8",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("start: size 2, v 1,0\n"));
    for (i, size) in (3..=12).enumerate() {
        assert!(
            out.contains(&format!("iter {}: size {size}, v 1,0, |C1| 1, stable\n", i + 1)),
            "missing iter {} in {out}",
            i + 1
        );
    }
    // Sizes 2..=8 fit under the certification bound; 9..=12 are skipped.
    assert_eq!(out.matches(": producible").count(), 7);
    assert_eq!(out.matches(": skipped").count(), 4);
    assert_eq!(out.matches("NOT FOUND").count(), 0);
}

#[test]
fn pump_walks_the_staircase_in_four_tile_periods() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("iters");
    let (code, out, _) = run(&[
        "pump",
        "--system",
        &fx("staircase.tiles"),
        "--assembly",
        &fx("staircase-seed.assembly"),
        "--vec",
        "2,-2",
        "--iters",
        "3",
        "--certify-bound",
        "13",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("iter 1: size 9, v 2,-2, |C1| 4, stable\n"));
    assert!(out.contains("iter 2: size 13, v 2,-2, |C1| 4, stable\n"));
    assert!(out.contains("iter 3: size 17, v 2,-2, |C1| 4, stable\n"));
    assert_eq!(out.matches(": producible").count(), 3);
    assert_eq!(out.matches(": skipped").count(), 1);

    // Per-iterate files exist and parse; sizes march up by four.
    for (i, size) in [(0, 5), (1, 9), (2, 13), (3, 17)] {
        let text = fs::read_to_string(out_dir.join(format!("iterate_{i:03}.txt"))).unwrap();
        let a = formats::parse_assembly("iterate", &text).unwrap();
        assert_eq!(a.len(), size);
    }
}

#[test]
fn pump_refuses_a_vector_that_is_no_repetition() {
    let (code, out, _) = run(&[
        "pump",
        "--system",
        &fx("row.tiles"),
        "--assembly",
        &fx("row2.assembly"),
        "--vec",
        "5,5",
        "--iters",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("not pumpable:"), "{out}");
}

// -- shape commands ---------------------------------------------------------

#[test]
fn shape_walk_ends_at_the_component_shape_component_reports() {
    let (code, component, _) = run(&[
        "shape-component",
        "--shape",
        &fx("ushape.shape"),
        "--vec",
        "0,1",
    ]);
    assert_eq!(code, 0);
    let parsed = formats::parse_shape("out", &component).unwrap();
    assert!(!parsed.is_empty());

    let (code, walk, _) = run(&["shape-walk", "--shape", &fx("ushape.shape"), "--vec", "0,1"]);
    assert_eq!(code, 0);
    let (_, final_part) = walk.split_once("final component:\n").unwrap();
    assert_eq!(final_part, component);
}

#[test]
fn shape_commands_reject_the_zero_vector() {
    let (code, _, err) = run(&[
        "shape-component",
        "--shape",
        &fx("ushape.shape"),
        "--vec",
        "0,0",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("nonzero"), "{err}");
}

// -- curves -----------------------------------------------------------------

#[test]
fn curves_check_passes_the_fractional_system() {
    let (code, out, _) = run(&["curves", "check", "--file", &fx("fractional.curves")]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "condition 1 (endpoints): ok\ncondition 2 (self-translation): ok\ncondition 3 (pairwise): ok\n"
    );
}

#[test]
fn curves_check_pinpoints_the_crossing() {
    let (code, out, _) = run(&["curves", "check", "--file", &fx("crossing.curves")]);
    assert_eq!(code, 1);
    assert!(out.contains("condition 3 (pairwise): 1 failure(s)\n"), "{out}");
    assert!(out.contains("  pairwise chain 0 vs chain 1 at 1/2,1/2\n"), "{out}");
}

#[test]
fn curves_violate_direct_finds_exact_witnesses() {
    let (code, out, _) = run(&["curves", "violate", "--file", &fx("crossing.curves")]);
    assert_eq!(code, 0);
    assert_eq!(out, "violation: pairwise chain 0 vs chain 1 at 1/2,1/2\n");

    let (code, out, _) = run(&["curves", "violate", "--file", &fx("three-chain.curves")]);
    assert_eq!(code, 0);
    assert_eq!(out, "violation: self-translation chain 0 shift 1 at 2,2\n");
}

#[test]
fn curves_violate_reduce_maps_the_witness_back() {
    let (code, out, _) = run(&[
        "curves",
        "violate",
        "--file",
        &fx("three-chain.curves"),
        "--mode",
        "reduce",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "violation: self-translation chain 2 shift 1 at -7/4,-1\nreductions 2, fallback no\n"
    );
}

#[test]
fn curves_violate_declines_fractional_multipliers() {
    for mode in ["direct", "reduce"] {
        let (code, out, _) = run(&[
            "curves",
            "violate",
            "--file",
            &fx("fractional.curves"),
            "--mode",
            mode,
        ]);
        assert_eq!(code, 1);
        assert!(out.starts_with("not applicable:"), "{out}");
        assert!(out.contains("integer"), "{out}");
    }
}

#[test]
fn curves_example_emits_a_checkable_file() {
    let (code, out, _) = run(&["curves", "example", "--x", "18/5", "--eps", "1/10"]);
    assert_eq!(code, 0);
    let f = formats::parse_curves("example", &out).unwrap();
    assert_eq!(f.curves.len(), 1);
    assert_eq!(f.curves[0].1.vertices().len(), 8);
    assert!(out.contains("use phi base 0 0 mult 18/5\n"));
    assert!(out.contains("vec 1 0\n"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("example.curves");
    fs::write(&path, &out).unwrap();
    let (code, check_out, _) = run(&["curves", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{check_out}");
}

#[test]
fn curves_example_handles_negative_targets() {
    let (code, out, _) = run(&["curves", "example", "--x", "-3/2", "--eps", "1/10"]);
    assert_eq!(code, 0);
    assert!(out.contains("mult 3/2\n"), "{out}");
    assert!(out.contains("vec -1 0\n"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("neg.curves");
    fs::write(&path, &out).unwrap();
    let (code, _, _) = run(&["curves", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
}

#[test]
fn curves_example_rejects_unusable_parameters() {
    for (x, eps) in [("3", "1/10"), ("1/2", "1/10"), ("18/5", "0"), ("18/5", "-1/10"), ("a", "1/10")] {
        let (code, _, err) = run(&["curves", "example", "--x", x, "--eps", eps]);
        assert_eq!(code, 2, "x={x} eps={eps}");
        assert!(!err.is_empty());
    }
}

// -- render -----------------------------------------------------------------

#[test]
fn render_is_deterministic_for_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let inputs: Vec<(String, Vec<&str>)> = vec![
        (fx("ushape.shape"), vec![]),
        (fx("quad-square.assembly"), vec![]),
        (fx("quad.tiles"), vec![]),
        (fx("three-chain.curves"), vec![]),
    ];
    for (i, (input, extra)) in inputs.iter().enumerate() {
        let out_a = dir.path().join(format!("a{i}.svg"));
        let out_b = dir.path().join(format!("b{i}.svg"));
        for out in [&out_a, &out_b] {
            let mut args = vec!["render", "--in", input, "--svg", out.to_str().unwrap()];
            args.extend(extra);
            let (code, _, err) = run(&args);
            assert_eq!(code, 0, "{err}");
        }
        let a = fs::read(&out_a).unwrap();
        let b = fs::read(&out_b).unwrap();
        assert_eq!(a, b, "render of {input} not deterministic");
        assert!(a.starts_with(b"<svg xmlns"));
    }
}

#[test]
fn render_draws_glue_ticks_when_given_the_system() {
    let dir = tempfile::tempdir().unwrap();
    let with = dir.path().join("with.svg");
    let without = dir.path().join("without.svg");
    let (code, _, _) = run(&[
        "render",
        "--in",
        &fx("quad-square.assembly"),
        "--svg",
        with.to_str().unwrap(),
        "--system",
        &fx("quad.tiles"),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = run(&[
        "render",
        "--in",
        &fx("quad-square.assembly"),
        "--svg",
        without.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let with = fs::read_to_string(&with).unwrap();
    let without = fs::read_to_string(&without).unwrap();
    assert!(with.matches("<line").count() > 0);
    assert_eq!(without.matches("<line").count(), 0);
    assert!(with.contains(">NW</text>"));
}

#[test]
fn render_rejects_unrecognizable_input() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.txt");
    fs::write(&junk, "gibberish here\n").unwrap();
    let (code, _, err) = run(&[
        "render",
        "--in",
        junk.to_str().unwrap(),
        "--svg",
        dir.path().join("out.svg").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("unrecognized input format"), "{err}");
}

// -- diagnostics and usage --------------------------------------------------

#[test]
fn parse_diagnostics_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tiles");
    fs::write(&bad, "temperature 2\nglue a\n").unwrap();
    let (code, _, err) = run(&[
        "stable",
        "--system",
        bad.to_str().unwrap(),
        "--assembly",
        &fx("cold-pair.assembly"),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.tiles:2:"), "{err}");
}

#[test]
fn missing_files_and_bad_usage_exit_two() {
    let (code, _, err) = run(&["stable", "--system", "/nonexistent.tiles", "--assembly", "/x"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "{err}");

    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&[]);
    assert_eq!(code, 2);

    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("tilepump"));
}
