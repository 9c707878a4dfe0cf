#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use navstat_cli::{run_report, Command, Dataset, RunConfig};
use navstat_core::Parallelism;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs every command over the golden fixture into `out_dir` and returns the
/// written files keyed by file name.
pub fn golden_run(out_dir: &Path, par: Parallelism) -> BTreeMap<String, Vec<u8>> {
    let mut cfg = RunConfig::from_file(&fixtures_dir().join("golden.conf")).expect("golden config");
    cfg.out_dir = out_dir.to_path_buf();
    let ds = Dataset::load(&cfg).expect("fixture loads");
    let mut out = BTreeMap::new();
    for c in Command::ALL {
        for f in run_report(&ds, &cfg, c, par).expect("command succeeds") {
            let name = f.file_name().unwrap().to_string_lossy().into_owned();
            out.insert(name, std::fs::read(&f).unwrap());
        }
    }
    out
}

/// Compares a run against the committed golden files. Returns a list of
/// differences; empty means byte-identical. With `NAVSTAT_UPDATE_GOLDEN=1`
/// the golden directory is rewritten instead.
pub fn compare_golden(files: &BTreeMap<String, Vec<u8>>) -> Vec<String> {
    let dir = golden_dir();
    if std::env::var("NAVSTAT_UPDATE_GOLDEN").as_deref() == Ok("1") {
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).unwrap();
        for (name, bytes) in files {
            std::fs::write(dir.join(name), bytes).unwrap();
        }
        return Vec::new();
    }
    let mut problems = Vec::new();
    let committed: Vec<String> = std::fs::read_dir(&dir)
        .map(|rd| {
            rd.filter_map(|e| e.ok())
                .map(|e| e.file_name().to_string_lossy().into_owned())
                .collect()
        })
        .unwrap_or_default();
    for name in &committed {
        if !files.contains_key(name) {
            problems.push(format!("{name}: not produced"));
        }
    }
    for (name, bytes) in files {
        match std::fs::read(dir.join(name)) {
            Ok(expected) if &expected == bytes => {}
            Ok(expected) => {
                let line = expected
                    .split(|&b| b == b'\n')
                    .zip(bytes.split(|&b| b == b'\n'))
                    .position(|(a, b)| a != b)
                    .map_or(0, |i| i + 1);
                problems.push(format!("{name}: differs (first at line {line})"));
            }
            Err(_) => problems.push(format!("{name}: no golden file")),
        }
    }
    problems
}
