use std::path::PathBuf;
use std::process::Command;

/// The cdylib cargo builds alongside the rlib used by this test.
fn extension() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let name = if cfg!(target_os = "macos") { "libautosync_py.dylib" } else { "libautosync_py.so" };
    [deps, deps.parent().unwrap()].iter().map(|d| d.join(name)).find(|p| p.exists()).unwrap_or_else(|| deps.join(name))
}

#[test]
fn smoke_script_runs() {
    let Ok(probe) = Command::new("python3").arg("--version").output() else {
        eprintln!("python3 not found, skipping");
        return;
    };
    assert!(probe.status.success());
    let lib = extension();
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(&lib, dir.path().join("autosync.so")).unwrap();
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../python/smoke_test.py");
    let out = Command::new("python3").arg(&script).env("PYTHONPATH", dir.path()).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
