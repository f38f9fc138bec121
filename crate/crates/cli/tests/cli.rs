use std::process::Command;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use hss_cli::args::Format;
use hss_cli::commands::{ClassifyRecord, ContactRecord, EinsteinRecord, SasakiRecord, SpaceRecord, VerifyRecord};
use hss_cli::output::Output;
use hss_core::einstein::TableRow;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hss(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hss")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = hss(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    r.stdout
}

fn with_format(args: &[&str], format: &str) -> String {
    let mut v = args.to_vec();
    v.extend(["--format", format]);
    ok(&v)
}

/// parse(emit(x)) = x for the typed records, and re-emitting is byte-identical.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(args: &[&str]) -> Vec<T> {
    let text = with_format(args, "json");
    let parsed: Vec<T> = serde_json::from_str(&text).unwrap();
    let again = Output::new(&parsed, &[]).unwrap().render(Format::Json);
    assert_eq!(again, text, "{args:?}");
    let reparsed: Vec<T> = serde_json::from_str(&again).unwrap();
    assert_eq!(reparsed, parsed);
    parsed
}

fn lookup<'a>(v: &'a Value, dotted: &str) -> Option<&'a Value> {
    dotted.split('.').try_fold(v, |acc, k| acc.get(k))
}

/// Every numeric JSON leaf appears with the same value in the CSV cell of
/// the same record and column.
fn csv_matches_json(args: &[&str]) {
    let json: Vec<Value> = serde_json::from_str(&with_format(args, "json")).unwrap();
    let csv_text = with_format(args, "csv");
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), json.len(), "{args:?}");
    let mut numbers = 0;
    for (rec, row) in json.iter().zip(&rows) {
        for (col, cell) in headers.iter().zip(row.iter()) {
            match lookup(rec, col) {
                Some(Value::Number(n)) => {
                    assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{args:?} column {col}");
                    numbers += 1;
                }
                Some(Value::Array(a)) => {
                    let parts: Vec<&str> = if cell.is_empty() { vec![] } else { cell.split(';').collect() };
                    assert_eq!(parts.len(), a.len(), "{args:?} column {col}");
                }
                Some(Value::Null) | None => assert!(cell.is_empty(), "{args:?} column {col}: {cell}"),
                Some(other) => {
                    let want = other.as_str().map_or_else(|| other.to_string(), str::to_string);
                    assert_eq!(cell, want, "{args:?} column {col}");
                }
            }
        }
    }
    let json_numbers = json.iter().map(count_numbers).sum::<usize>();
    assert!(numbers >= json_numbers.saturating_sub(count_nested(&json)), "{args:?}");
}

fn count_numbers(v: &Value) -> usize {
    match v {
        Value::Number(_) => 1,
        Value::Array(a) => a.iter().map(count_numbers).sum(),
        Value::Object(m) => m.values().map(count_numbers).sum(),
        _ => 0,
    }
}

/// Numbers inside arrays, which CSV joins into one cell.
fn count_nested(json: &[Value]) -> usize {
    fn inside(v: &Value, in_array: bool) -> usize {
        match v {
            Value::Number(_) => usize::from(in_array),
            Value::Array(a) => a.iter().map(|x| inside(x, true)).sum(),
            Value::Object(m) => m.values().map(|x| inside(x, in_array)).sum(),
            _ => 0,
        }
    }
    json.iter().map(|v| inside(v, false)).sum()
}

#[test]
fn einstein_table_rows() {
    let md = with_format(&["einstein", "--table"], "markdown");
    for row in ["| Sp(n)/U(n) | n>=2 | 1 |", "| EIII |  | 8/3 |", "| EVII |  | 12/5 |", "| G_4(C^8) | k=4,n=8 | 4/3 |"] {
        assert!(md.contains(row), "missing {row}");
    }
    let rows: Vec<TableRow> = round_trip(&["einstein", "--table"]);
    assert!(rows.iter().any(|r| r.space == "CP^3" && r.d_solution == "none"));
}

#[test]
fn einstein_for_one_space() {
    let r: Vec<EinsteinRecord> = round_trip(&["einstein", "--space", "so:5"]);
    assert_eq!(hss_core::rational::format(&r[0].einstein.solution_d.unwrap()), "5/2");
    assert_eq!(r[0].polar.polar_space, "G_2(C^5)");
}

#[test]
fn lagrangian_point_is_ruled() {
    let r: Vec<ClassifyRecord> = round_trip(&["classify", "--space", "sp:3", "--H", "1/4,1/4,1/4", "--d", "1"]);
    let v: Value = serde_json::to_value(&r[0].report).unwrap();
    assert_eq!(v["cr_type"], "totally_real_lagrangian");
    assert_eq!(v["ruled"], true);
}

#[test]
fn sasaki_orbit_in_classify() {
    let r: Vec<ClassifyRecord> = round_trip(&["classify", "--space", "grass:2,5", "--H", "1/6,0", "--d", "3"]);
    assert_eq!(r[0].report.sasaki_t, Some(hss_core::rational::rat(1, 3)));
    assert!(r[0].report.contact);
}

#[test]
fn contact_segments() {
    let r: Vec<ContactRecord> = round_trip(&["contact", "--space", "sp:3"]);
    let contact: Vec<bool> = r.iter().map(|c| c.contact).collect();
    assert_eq!(contact, [true, false, true]);
    assert!(r.iter().all(|c| c.real_rank == 1));
    let r: Vec<ContactRecord> = round_trip(&["contact", "--space", "eiii", "--t", "1/3"]);
    assert_eq!(r.iter().map(|c| c.contact).collect::<Vec<_>>(), [true, false]);
}

#[test]
fn sasaki_parameter_values() {
    let r: Vec<SasakiRecord> = round_trip(&["sasaki", "--d", "1/3"]);
    assert_eq!(r[0].t_exact, Some(hss_core::rational::rat(2, 3)));
    assert!((r[0].k - 1.0).abs() < 1e-11);
    let r: Vec<SasakiRecord> = round_trip(&["sasaki", "--d", "2"]);
    assert_eq!(r[0].t_exact, None);
}

#[test]
fn spaces_listing() {
    let r: Vec<SpaceRecord> = round_trip(&["spaces", "list"]);
    assert!(r.iter().any(|s| s.selector == "evii" && s.dimension == 54));
    let one: Vec<SpaceRecord> = round_trip(&["spaces", "--space", "grass:3,7"]);
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].dimension, 24);
}

#[test]
fn verify_single_family() {
    let r: Vec<VerifyRecord> = round_trip(&["verify", "--family", "su", "--n", "4", "--d", "2"]);
    assert!(!r.is_empty());
    assert!(r.iter().all(|c| c.pass && c.space == "G_2(C^4)"));
}

#[test]
fn verify_all_passes() {
    let run = hss(&["verify", "--all"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let r: Vec<VerifyRecord> = serde_json::from_str(&run.stdout).unwrap();
    let spaces: std::collections::BTreeSet<&str> = r.iter().map(|c| c.space.as_str()).collect();
    assert_eq!(spaces.len(), hss_core::oracle::classical_suite().len());
}

#[test]
fn csv_and_json_agree() {
    for args in [
        &["spaces"][..],
        &["classify", "--space", "eiii", "--H", "1/4,1/8"],
        &["contact", "--space", "so:6"],
        &["sasaki", "--d", "7/3"],
        &["einstein", "--space", "evii"],
        &["einstein", "--table"],
        &["verify", "--family", "sp", "--n", "2", "--d", "1/2"],
    ] {
        csv_matches_json(args);
    }
}

#[test]
fn output_is_stable() {
    let args = ["verify", "--family", "so", "--n", "6", "--format", "csv"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn argument_errors_exit_two() {
    for args in [
        &[][..],
        &["classify", "--space", "sp:3"],
        &["classify", "--space", "sp:3", "--H", "1/4,1/4"],
        &["classify", "--space", "sp:3", "--H", "1/2,1/4,1/3"],
        &["classify", "--space", "nope:3", "--H", "1/4"],
        &["sasaki", "--d", "-1"],
        &["sasaki", "--d", "x"],
        &["einstein"],
        &["einstein", "--table", "--space", "eiii"],
        &["verify", "--family", "su"],
        &["verify", "--space", "evii"],
        &["verify", "--family", "sp", "--n", "7"],
        &["verify", "--family", "so", "--n", "5", "--k", "2"],
        &["spaces", "--format", "yaml"],
        &["frobnicate"],
    ] {
        let r = hss(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let r = hss(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("verify"));
}
