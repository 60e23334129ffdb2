//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "vlimit.h"

int main(void) {
    VlTower *t = NULL;
    if (vl_tower_new("{\"kind\":\"heisenberg\"}", "{\"family\":\"symmetric\"}", 3, &t) != VL_STATUS_OK) return 1;
    size_t dim = 0;
    if (vl_tower_dim(t, 4, 3, &dim) != VL_STATUS_OK || dim != 6) return 2;
    uint32_t w[3] = {0, 1, 1};
    size_t ix[3] = {0, 0, 0};
    double v = 0;
    char *exact = NULL;
    if (vl_tower_sc(t, 3, w, ix, 2, &v, &exact) != VL_STATUS_OK) return 3;
    /* averaged orbit vector of a single boson at N = 3: norm 1/3 */
    int ok = strcmp(exact, "1/3") == 0 && v > 0.333 && v < 0.334;
    vl_string_free(exact);
    VlStatus s = vl_tower_dim(NULL, 1, 1, &dim);
    if (s != VL_STATUS_NULL_POINTER || strcmp(vl_last_error_kind(), "null_pointer") != 0) return 4;
    vl_tower_free(t);
    printf("%s\n", vl_version());
    return ok ? 0 : 5;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which("cc") else {
        eprintln!("no C compiler on PATH; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libvlimit_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let work = std::env::temp_dir().join(format!("vlimit-c-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = work.join("main");
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), env!("CARGO_PKG_VERSION"));
}

fn which(name: &str) -> Result<PathBuf, ()> {
    let path = std::env::var_os("PATH").ok_or(())?;
    std::env::split_paths(&path).map(|d| d.join(name)).find(|p| p.is_file()).ok_or(())
}
