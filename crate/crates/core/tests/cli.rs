use std::path::Path;
use std::process::{Command, Output};

fn prcode(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prcode"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .output()
        .unwrap()
}

#[test]
fn primitives_lists_degree_four() {
    let dir = tempfile::tempdir().unwrap();
    let o = prcode(&["primitives", "--k", "4"], dir.path());
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "0x13\n0x19\n");
}

#[test]
fn weights_writes_enumerator_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = prcode(&["weights", "--poly", "1+x+x^4", "--n", "20"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(file).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# prcode "));
    let rows: Vec<&str> = lines.filter(|l| !l.ends_with(",0")).collect();
    assert_eq!(rows, ["j,value", "0,1", "9,2", "10,4", "11,6", "12,3"]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(prcode(&["weights", "--n", "20"], dir.path()).status.code(), Some(2));
    assert_eq!(prcode(&["primitives", "--k", "64"], dir.path()).status.code(), Some(1));
    assert_eq!(
        prcode(&["weights", "--poly", "1+x^2+x^4", "--n", "20"], dir.path()).status.code(),
        Some(1)
    );
    assert_eq!(prcode(&["simulate", "--poly", "0x1053", "--n", "30", "--ebno-list", "1"], dir.path()).status.code(), Some(2));
}

#[test]
fn simulate_repeats_byte_for_byte() {
    let args = ["simulate", "--poly", "0x19", "--n", "12", "--ebno-list", "1,3", "--seed", "9", "--max-trials", "20000"];
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(prcode(&args, a.path()).status.success());
    assert!(prcode(&args, b.path()).status.success());
    let name = "wer_0x19_n12_seed9.csv";
    assert_eq!(
        std::fs::read(a.path().join(name)).unwrap(),
        std::fs::read(b.path().join(name)).unwrap()
    );
}
