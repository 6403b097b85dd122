//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "klr.h"

int main(void) {
    KlrQuiver *q = NULL;
    if (klr_quiver_builtin("A2", &q) != KLR_STATUS_OK) return 1;
    char *tsv = NULL;
    if (klr_p_matrix_tsv(q, "1,1", NULL, &tsv) != KLR_STATUS_OK) return 2;
    fputs(tsv, stdout);
    klr_string_free(tsv);
    if (klr_p_matrix_tsv(q, "1,1,1", NULL, &tsv) != KLR_STATUS_PARSE) return 3;
    if (strlen(klr_last_error()) == 0) return 4;
    klr_quiver_free(q);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).parent().unwrap().join("debug");
    let lib = ["debug", "release"]
        .iter()
        .map(|p| manifest.join("../../target").join(p).join("libklr_ffi.a"))
        .chain(std::iter::once(lib_dir.join("libklr_ffi.a")))
        .find(|p| p.exists());
    let Some(lib) = lib else {
        eprintln!("static library not built; skipping");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "lambda\\mu\t11\t01,10\n11\t1\t0\n01,10\tq\t1\n");
}
