use assert_cmd::Command;
use predicates::prelude::*;
use std::path::PathBuf;
use std::{env, fs};

fn monvar(cache: &tempfile::TempDir) -> Command {
    let mut cmd = Command::cargo_bin("monvar").unwrap();
    cmd.env("MONVAR_CACHE_DIR", cache.path());
    cmd
}

/// Compares stdout with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let cache = tempfile::tempdir().unwrap();
    let out = monvar(&cache).args(args).output().unwrap();
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    let actual = String::from_utf8(out.stdout).unwrap();
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    if env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "{name} differs from its golden file");
}

#[test]
fn golden_outputs() {
    golden("decompose.txt", &["decompose", "abcdxcbyezaed"]);
    golden("decompose.json", &["decompose", "abcdxcbyezaed", "--json"]);
    golden("decompose_mixed.json", &["decompose", "xxyx", "--json"]);
    golden("decide_sigma1.json", &["decide", "--variety", "M", "--identity", "xyzxty = yxzxty", "--json"]);
    golden("decide_d2.txt", &["decide", "--variety", "D2", "--identity", "xyzxty = yxzxty"]);
    golden("sw_build_xtx.json", &["sw", "build", "xtx", "--json"]);
    golden("sw_table_xtx.txt", &["sw", "table", "xtx"]);
    golden("sw_table_xtx.json", &["sw", "table", "xtx", "--json"]);
    golden("check_sigma1.json", &["check", "--sw", "xysxty", "--identity", "xyzxty = yxzxty", "--json"]);
    golden("gen_a1.json", &["gen", "a", "1", "--json"]);
    golden("gen_b2_swap.txt", &["gen", "b", "2", "--zeta", "swap:0"]);
    golden("gen_basis_n.json", &["gen", "basis", "N", "--json"]);
    golden("derive_sigma1.json", &["derive", "--builtin", "sigma1", "--identity", "xyzxy = yxzxy", "--depth", "1", "--json"]);
    golden("derive_sigma1.txt", &["derive", "--builtin", "sigma1", "--identity", "xyzxy = yxzxy", "--depth", "1"]);
    golden("isoterm.json", &["isoterm", "--variety", "N", "xysyx", "--json"]);
}

#[test]
fn example_commands() {
    let cache = tempfile::tempdir().unwrap();
    monvar(&cache)
        .args(["decompose", "abcdxcbyezaed"])
        .assert()
        .success()
        .stdout("a|bc|d _x_ cb _y_ e _z_ a|e|d\n");
    monvar(&cache)
        .args(["sw", "build", "xtx"])
        .assert()
        .success()
        .stdout(predicate::str::contains("7 elements"));
    monvar(&cache).args(["verify", "--quick"]).assert().success();
}

#[test]
fn usage_and_input_errors_fail() {
    let cache = tempfile::tempdir().unwrap();
    monvar(&cache).arg("frobnicate").assert().failure();
    monvar(&cache).args(["decide", "--variety", "Q", "--identity", "x = x"]).assert().failure();
    monvar(&cache)
        .args(["decompose", "x[1,"])
        .assert()
        .failure()
        .stderr(predicate::str::contains("error"));
    monvar(&cache)
        .args(["decide", "--variety", "N", "--identity", "xxx = xx"])
        .assert()
        .failure()
        .stderr(predicate::str::contains("reduced"));
    monvar(&cache).args(["gen", "a", "3"]).assert().failure();
    monvar(&cache).args(["gen", "b", "1", "--zeta", "swap:1"]).assert().failure();
    monvar(&cache).args(["verify", "--check", "13"]).assert().failure();
}

#[test]
fn tables_are_cached_and_reloadable() {
    let cache = tempfile::tempdir().unwrap();
    let table = cache.path().join("table.json");
    monvar(&cache)
        .args(["sw", "build", "xysxty", "--out"])
        .arg(&table)
        .assert()
        .success();
    let entries: Vec<_> = fs::read_dir(cache.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().starts_with("sw-"))
        .collect();
    assert_eq!(entries.len(), 1);
    // a second build reads the cached entry
    monvar(&cache)
        .args(["sw", "build", "xysxty"])
        .assert()
        .success()
        .stdout(predicate::str::contains("21 elements"));
    monvar(&cache)
        .args(["check", "--monoid"])
        .arg(&table)
        .args(["--identity", "xtyzxy = xtyzyx"])
        .assert()
        .success()
        .stdout("holds\n");
}

#[test]
fn derive_reads_identity_files() {
    let cache = tempfile::tempdir().unwrap();
    let file = cache.path().join("sigma2.ids");
    fs::write(&file, "# second occurrences swap\nsigma2: xtyzxy = xtyzyx\n").unwrap();
    monvar(&cache)
        .args(["derive", "--system"])
        .arg(&file)
        .args(["--identity", "abcxabc = abcxcba", "--depth", "8", "--max-len", "20"])
        .assert()
        .success()
        .stdout(predicate::str::contains("abcxabc = abcxcba in 2 steps"));
    monvar(&cache)
        .args(["derive", "--builtin", "sigma2", "--identity", "x = y"])
        .assert()
        .success()
        .stdout(predicate::str::contains("no derivation found"));
}

#[test]
fn verify_is_reproducible() {
    let cache = tempfile::tempdir().unwrap();
    let run = || {
        let out = monvar(&cache).args(["verify", "--quick", "--json"]).output().unwrap();
        assert!(out.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let first = run();
    assert_eq!(first["checks"].as_array().unwrap().len(), 12);
    assert_eq!(first, run());
}
