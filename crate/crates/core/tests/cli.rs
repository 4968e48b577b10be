use std::fs;
use std::process::Command;

use mkball_core::archive::load_front;
use mkball_core::load_instance;

fn mkball() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mkball"))
}

#[test]
fn invalid_config_exits_nonzero() {
    for args in [
        vec!["run", "--r", "0"],
        vec!["run", "--time-limit", "0"],
        vec!["run", "--n", "3", "--k", "3"],
        vec!["run", "--model", "nk"],
        vec!["run", "--q", "1"],
    ] {
        let out = mkball().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn run_writes_reproducible_results() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for dir in &dirs {
        let status = mkball()
            .args(["run", "--n", "60", "--k", "2", "--r", "2", "--seed", "11", "--runs", "3"])
            .args(["--time-limit", "60", "--max-restarts", "15", "--out"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success());
    }
    for name in ["metadata.txt", "instance.txt", "front_000.txt", "front_002.txt", "eas50.txt"] {
        let a = fs::read_to_string(dirs[0].path().join(name)).unwrap();
        let b = fs::read_to_string(dirs[1].path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between reruns");
    }
    let meta = fs::read_to_string(dirs[0].path().join("metadata.txt")).unwrap();
    assert!(meta.contains("seed=11\n"));
    assert!(meta.contains("time_limit=60\n"));
    let f = load_instance(dirs[0].path().join("instance.txt")).unwrap();
    assert_eq!((f.n(), f.k(), f.d()), (60, 3, 2));
    let stats = fs::read_to_string(dirs[0].path().join("stats_001.txt")).unwrap();
    assert!(stats.contains("restarts=15\n"));
}

#[test]
fn generate_then_eas() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.txt");
    let status = mkball()
        .args(["generate", "--n", "30", "--k", "2", "--d", "3", "--seed", "4", "--out"])
        .arg(&inst)
        .status()
        .unwrap();
    assert!(status.success());
    let f = load_instance(&inst).unwrap();
    assert_eq!((f.n(), f.d()), (30, 3));

    fs::write(dir.path().join("a.txt"), "1\t3\n").unwrap();
    fs::write(dir.path().join("b.txt"), "3\t1\n").unwrap();
    fs::write(dir.path().join("c.txt"), "2\t2\n").unwrap();
    let surface = dir.path().join("eas.txt");
    let status = mkball()
        .arg("eas")
        .args(["a.txt", "b.txt", "c.txt"].map(|n| dir.path().join(n)))
        .arg("--out")
        .arg(&surface)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(load_front(&surface).unwrap(), vec![vec![1, 2], vec![2, 1]]);

    fs::write(dir.path().join("d3.txt"), "1\t2\t3\n").unwrap();
    let out = mkball().arg("eas").arg(dir.path().join("d3.txt")).output().unwrap();
    assert!(!out.status.success());
}
