//! Compiles and runs a C program against the generated header and static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "bmkit.h"

int main(void) {
    char *out = NULL;
    if (bm_kostka("2,1", "1,1,1", &out) != BM_STATUS_OK || strcmp(out, "2") != 0) return 10;
    bm_string_free(out);
    BmMatrix *m = NULL;
    if (bm_inverse_kostka_matrix_new(3, &m) != BM_STATUS_OK) return 11;
    int64_t v = 0;
    if (bm_matrix_entry(m, 1, 2, &v) != BM_STATUS_OK || v != -2) return 12;
    bm_matrix_free(m);
    if (bm_kostka("1,2", "3", &out) != BM_STATUS_INVALID_ARGUMENT || bm_last_error() == NULL) return 13;
    uint64_t count = 0;
    if (bm_count_components(2, 2, 0, &count) != BM_STATUS_OK || count != 3) return 14;
    puts("ok");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let deps = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib_dir = deps.parent().unwrap().to_path_buf();
    let archive = lib_dir.join("libbmkit_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !archive.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("bmkit_smoke.c");
    let exe = dir.join("bmkit_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "C program exited with {:?}",
        run.status.code()
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
