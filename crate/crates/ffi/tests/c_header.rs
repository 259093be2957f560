//! Compile and run a C program against the generated header and the static
//! library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "polyaut.h"

int main(void) {
    PaField *q = NULL;
    PaMap *f = NULL;
    char *s = NULL;
    if (pa_field_new("Q", &q) != PA_STATUS_OK) return 1;
    if (pa_map_parse(q, "(-x2, x1 + x2^2)", &f) != PA_STATUS_OK) return 2;
    if (pa_map_classify(f, &s) != PA_STATUS_OK || strcmp(s, "henon") != 0) return 3;
    pa_string_free(s);
    if (pa_map_parse(q, "(x1 + , x2)", &f) != PA_STATUS_PARSE) return 4;
    if (strlen(pa_last_error()) == 0) return 5;
    pa_map_free(f);
    pa_field_free(q);
    puts("ok");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libpolyaut_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let work = std::env::temp_dir().join(format!("polyaut-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    let bin = work.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
    std::fs::remove_dir_all(&work).unwrap();
}
