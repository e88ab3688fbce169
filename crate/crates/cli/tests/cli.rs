use std::io::Write;
use std::process::{Command, Stdio};

use egalitarian_cli::{run, EXIT_AXIOM_FAILED, EXIT_INVALID, EXIT_OK};
use egalitarian_core::format::GameFile;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn egal(args: &[&str]) -> Output {
    egal_with_input(args, "")
}

fn egal_with_input(args: &[&str], input: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("egal").chain(args.iter().copied());
    let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn parking_file(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("parking.game");
    let out = egal(&["example", "parking", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    path.to_str().unwrap().to_string()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const PARKING_TABLE: &str = "\
value     1     2     3      4      5  total
ED     43.2  43.2  43.2   43.2   43.2    216
ESD    40.8  44.8  40.8   44.8   44.8    216
LED      54    54    54     27     27    216
LESD1  51.5  51.5  56.5  28.25  28.25    216
LESD2  49.5  53.5  49.5  31.75  31.75    216
LESD3  22.5  26.5  22.5  72.25  72.25    216
";

#[test]
fn compute_all_values_on_parking() {
    let dir = tempfile::tempdir().unwrap();
    let game = parking_file(&dir);
    let out = egal(&["compute", "--game", &game, "--values", "all"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, PARKING_TABLE);
}

#[test]
fn compute_exact_prints_fractions() {
    let dir = tempfile::tempdir().unwrap();
    let game = parking_file(&dir);
    let out = egal(&["compute", "--game", &game, "--values", "lesd1,ed", "--exact"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("LESD1  103/2  103/2  113/2  113/4  113/4    216"), "{}", out.stdout);
    assert!(out.stdout.contains("ED     216/5"), "{}", out.stdout);
}

#[test]
fn compute_json_rows_sum_to_grand_worth() {
    let dir = tempfile::tempdir().unwrap();
    let game = parking_file(&dir);
    let out = egal(&["compute", "--game", &game, "--format", "json"]);
    assert_eq!(out.code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(doc["players"].as_array().unwrap().len(), 5);
    for row in rows {
        let sum: f64 =
            row["payoffs"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse::<f64>().unwrap()).sum();
        assert!((sum - 216.0).abs() < 1e-9);
        assert_eq!(row["total"], "216");
    }
    assert_eq!(rows[5]["value"], "LESD3");
    assert_eq!(rows[5]["payoffs"][3], "72.25");
}

const GRAND_ONLY: &str = r#"
players = ["a", "b", "c"]
levels = [[["a", "b"], ["c"]]]
worths = [{ coalition = ["c", "b", "a"], worth = 12 }]
"#;

#[test]
fn led_needs_only_the_grand_worth() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(&dir, "grand.game", GRAND_ONLY);
    let out = egal(&["compute", "--game", &game, "--values", "led"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(out.stdout, "value  a  b  c  total\nLED    3  3  6     12\n");
}

#[test]
fn lesd2_names_the_missing_block() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(&dir, "grand.game", GRAND_ONLY);
    let out = egal(&["compute", "--game", &game, "--values", "lesd2"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("LESD2"), "{}", out.stderr);
    assert!(out.stderr.contains("{a}") || out.stderr.contains("{a,b}"), "{}", out.stderr);
}

#[test]
fn non_nested_levels_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(
        &dir,
        "bad.game",
        r#"
players = ["a", "b", "c"]
levels = [[["a", "b"], ["c"]], [["a"], ["b", "c"]]]
worths = [{ coalition = ["a", "b", "c"], worth = 1 }]
"#,
    );
    let out = egal(&["compute", "--game", &game, "--values", "led"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("level 2 block {a} splits level 1 block {a,b}"), "{}", out.stderr);
}

#[test]
fn parse_errors_carry_a_line_number() {
    let out = egal_with_input(&["compute"], "players = [\"a\"\nlevels = ]\n");
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("line"), "{}", out.stderr);
}

#[test]
fn compute_reads_standard_input() {
    let text = egal(&["example", "parking"]).stdout;
    let out = egal_with_input(&["compute", "--values", "all"], &text);
    assert_eq!(out.stdout, PARKING_TABLE);
    let dash = egal_with_input(&["compute", "--game", "-"], &text);
    assert_eq!(dash.stdout, PARKING_TABLE);
}

#[test]
fn example_pipes_into_compute() {
    let bin = env!("CARGO_BIN_EXE_egal");
    let example = Command::new(bin).args(["example", "parking"]).output().unwrap();
    assert!(example.status.success());
    let mut child = Command::new(bin)
        .args(["compute", "--values", "all"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&example.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), PARKING_TABLE);
}

#[test]
fn unknown_example_lists_the_available_ones() {
    let out = egal(&["example", "garage"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("available: parking"), "{}", out.stderr);
}

#[test]
fn example_round_trips() {
    let text = egal(&["example", "parking"]).stdout;
    let first = GameFile::parse(&text).unwrap();
    let again = GameFile::parse(&first.to_toml_string()).unwrap();
    assert_eq!(first, again);
    assert_eq!(first.to_toml_string(), text);
    assert_eq!(first.game.n(), 5);
    assert_eq!(first.game.k(), 2);
}

#[test]
fn random_game_round_trips_and_is_seeded() {
    let a = egal(&["random", "--seed", "11"]);
    let b = egal(&["random", "--seed", "11"]);
    let c = egal(&["random", "--seed", "12"]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let file = GameFile::parse(&a.stdout).unwrap();
    assert_eq!(file.to_toml_string(), a.stdout);
    let out = egal_with_input(&["compute"], &a.stdout);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
}

#[test]
fn verify_parking_passes_the_characterizations() {
    let dir = tempfile::tempdir().unwrap();
    let game = parking_file(&dir);
    let out = egal(&["verify", "--game", &game, "--values", "led"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    for axiom in ["EFF", "ADD", "SYM_UNIONS", "NULLIFYING"] {
        assert!(
            out.stdout.lines().any(|l| l.starts_with("LED") && l.contains(axiom) && l.contains("pass")),
            "{}",
            out.stdout
        );
    }
    let all = egal(&["verify", "--game", &game]);
    assert_eq!(all.code, EXIT_OK, "{}", all.stdout);
    assert_eq!(all.stdout.lines().filter(|l| l.contains("pass (characterizing")).count(), 16);
}

#[test]
fn informational_failures_do_not_fail_the_run() {
    // a nullifying player on a structure where LESD3 pays it
    let dir = tempfile::tempdir().unwrap();
    let game = write(
        &dir,
        "null.game",
        r#"
players = ["a", "b", "c"]
levels = [[["a", "b"], ["c"]]]
worths = [
  { coalition = ["a"], worth = 0 },
  { coalition = ["b"], worth = 6 },
  { coalition = ["c"], worth = 6 },
  { coalition = ["a", "b"], worth = 0 },
  { coalition = ["a", "c"], worth = 0 },
  { coalition = ["b", "c"], worth = 6 },
  { coalition = ["a", "b", "c"], worth = 0 },
]
"#,
    );
    let out = egal(&["verify", "--game", &game, "--values", "lesd3", "--axioms", "nullifying,eff"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("NULLIFYING           fail (informational"), "{}", out.stdout);
    assert!(out.stdout.contains("witness game"), "{}", out.stdout);
    let led = egal(&["verify", "--game", &game, "--values", "led", "--axioms", "nullifying"]);
    assert_eq!(led.code, EXIT_OK, "{}", led.stdout);
}

#[test]
fn expected_failure_exits_with_two() {
    // 0.1 / 2 + 3 · (0.1 / 6) is not 0.1 in floating point
    let dir = tempfile::tempdir().unwrap();
    let game = write(
        &dir,
        "round.game",
        r#"
players = ["a", "b", "c", "d"]
levels = [[["a"], ["b", "c", "d"]]]
worths = [{ coalition = ["a", "b", "c", "d"], worth = 0.1 }]
"#,
    );
    let strict = egal(&["verify", "--game", &game, "--values", "led", "--axioms", "eff", "--tol", "0"]);
    assert_eq!(strict.code, EXIT_AXIOM_FAILED, "{}", strict.stdout);
    assert!(strict.stdout.contains("fail (characterizing"), "{}", strict.stdout);
    assert!(strict.stdout.contains("e-17") || strict.stdout.contains("e-18"), "{}", strict.stdout);
    assert!(strict.stdout.ends_with("FAILED\n"));
    let loose = egal(&["verify", "--game", &game, "--values", "led", "--axioms", "eff"]);
    assert_eq!(loose.code, EXIT_OK);
}

#[test]
fn characterization_free_values_are_informational() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(
        &dir,
        "sym.game",
        r#"
players = ["a", "b", "c"]
levels = [[["a", "b"], ["c"]]]
worths = [
  { coalition = ["a"], worth = 0 },
  { coalition = ["b"], worth = 0 },
  { coalition = ["c"], worth = 0 },
  { coalition = ["a", "b"], worth = 0 },
  { coalition = ["a", "c"], worth = 0 },
  { coalition = ["b", "c"], worth = 0 },
  { coalition = ["a", "b", "c"], worth = 6 },
]
"#,
    );
    let esd = egal(&["verify", "--game", &game, "--values", "esd", "--axioms", "sym_unions"]);
    assert_eq!(esd.code, EXIT_OK);
    assert!(esd.stdout.contains("ESD    SYM_UNIONS           fail (informational"), "{}", esd.stdout);
}

#[test]
fn partial_games_cannot_be_verified() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(&dir, "grand.game", GRAND_ONLY);
    let out = egal(&["verify", "--game", &game, "--values", "led", "--axioms", "sym_unions"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("not defined") || out.stderr.contains("complete"), "{}", out.stderr);
}

#[test]
fn random_campaign_passes() {
    let out = egal(&["verify", "--random", "--trials", "1000", "--seed", "42"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.starts_with("campaign seed 42 trials 1000"));
    assert_eq!(out.stdout.lines().filter(|l| l.contains("pass (characterizing, 3000 games")).count(), 16);
    assert!(out.stdout.ends_with("ok\n"));
}

#[test]
fn campaign_reports_informational_failures_with_a_seed() {
    let out = egal(&["verify", "--random", "--trials", "200", "--values", "lesd3", "--axioms", "sym_unions"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("fail (informational"), "{}", out.stdout);
    assert!(out.stdout.contains("first failure at seed"), "{}", out.stdout);
}

#[test]
fn search_emits_a_witness_game() {
    let out = egal(&["verify", "--axiom", "sym_unions", "--value", "lesd3", "--search"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let first = out.stdout.lines().next().unwrap();
    assert!(first.contains("witness found at seed") || first.contains("not found in 10000 trials"), "{first}");
    if first.contains("witness found") {
        // the embedded game file parses and reproduces the violation
        let game: String =
            out.stdout.lines().filter_map(|l| l.strip_prefix("    | ")).map(|l| format!("{l}\n")).collect();
        let file = GameFile::parse(&game).unwrap();
        let check = egal_with_input(&["verify", "--values", "lesd3", "--axioms", "sym_unions"], &game);
        assert!(check.stdout.contains("fail"), "{}", check.stdout);
        assert_eq!(file.game.worths().entries().count(), (1 << file.game.n()) - 1);
    }
}

#[test]
fn search_for_a_characterizing_pair_reports_not_found() {
    let out = egal(&["verify", "--axiom", "eff", "--value", "led", "--search", "--trials", "100"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("not found in 100 trials"), "{}", out.stdout);
}

#[test]
fn search_json_is_structured() {
    let out = egal(&["verify", "--axiom", "sym_unions", "--value", "lesd3", "--search", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let row = &doc[0];
    assert_eq!(row["value"], "LESD3");
    assert_eq!(row["axiom"], "SYM_UNIONS");
    assert_eq!(row["expected"], false);
    assert!(row["found"].is_boolean());
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let game = parking_file(&dir);
    for args in [
        vec!["compute", "--game", game.as_str(), "--format", "json"],
        vec!["verify", "--game", game.as_str(), "--axioms", "all", "--values", "all"],
        vec![
            "verify", "--random", "--trials", "300", "--seed", "9", "--format", "json", "--values", "all", "--axioms",
            "all",
        ],
    ] {
        let a = egal(&args);
        let b = egal(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn bad_flags_are_validation_errors() {
    assert_eq!(egal(&["compute", "--values", "nope"]).code, EXIT_INVALID);
    assert_eq!(egal(&["verify", "--random", "--axioms", "bogus"]).code, EXIT_INVALID);
    assert_eq!(egal(&["verify", "--random", "--tol", "-1"]).code, EXIT_INVALID);
    assert_eq!(egal(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(egal(&["--help"]).code, EXIT_OK);
}
