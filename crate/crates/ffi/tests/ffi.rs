use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use stancu_ffi::*;

fn builtin(name: &str) -> *mut StancuFunction {
    let name = CString::new(name).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { stancu_function_builtin(name.as_ptr(), &mut f) },
        StancuStatus::Ok
    );
    assert!(!f.is_null());
    f
}

fn last_error() -> String {
    let len = stancu_last_error_length();
    assert!(len > 0);
    let mut buf = vec![0 as c_char; len];
    assert_eq!(
        unsafe { stancu_last_error_message(buf.as_mut_ptr(), len) },
        StancuStatus::Ok
    );
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn status_messages_are_static_strings() {
    for s in [
        StancuStatus::Ok,
        StancuStatus::NullPointer,
        StancuStatus::Domain,
        StancuStatus::InvalidArgument,
        StancuStatus::BufferTooSmall,
        StancuStatus::Unbounded,
        StancuStatus::InvalidUtf8,
        StancuStatus::Panic,
    ] {
        let msg = unsafe { CStr::from_ptr(stancu_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
    assert_eq!(StancuStatus::Ok as i32, 0);
}

#[test]
fn apply_operator_matches_core() {
    let f = builtin("sin15");
    let mut v = 0.0;
    let status = unsafe { stancu_apply_operator(f, 50, 20.0, 30.0, 0.3, &mut v) };
    assert_eq!(status, StancuStatus::Ok);
    let spec = stancu_core::FunctionSpec::builtin(stancu_core::Builtin::Sin15);
    let p = stancu_core::operators::StancuParams::new(50, 20.0, 30.0).unwrap();
    assert_eq!(
        v,
        stancu_core::operators::apply_operator(&spec, p, 0.3).unwrap()
    );
    unsafe { stancu_function_free(f) };
}

#[test]
fn moments_and_e1_identity() {
    let f = builtin("e1");
    let mut v = 0.0;
    let mut c = 0.0;
    unsafe {
        assert_eq!(
            stancu_apply_operator(f, 10, 1.0, 2.0, 0.5, &mut v),
            StancuStatus::Ok
        );
        assert_eq!(
            stancu_moment(1, 10, 1.0, 2.0, 0.5, &mut c),
            StancuStatus::Ok
        );
        stancu_function_free(f);
    }
    assert!((v - 0.5).abs() < 1e-15);
    assert!((c - 0.5).abs() < 1e-15);
    assert_eq!(
        unsafe { stancu_moment(3, 10, 1.0, 2.0, 0.5, &mut c) },
        StancuStatus::Domain
    );
}

#[test]
fn invalid_parameters_set_domain_status_and_message() {
    let f = builtin("e0");
    let mut v = 0.0;
    let status = unsafe { stancu_apply_operator(f, 10, 3.0, 2.0, 0.5, &mut v) };
    assert_eq!(status, StancuStatus::Domain);
    assert!(last_error().contains("alpha"), "{}", last_error());
    let status = unsafe { stancu_apply_operator(f, 10, 0.0, 0.0, 1.5, &mut v) };
    assert_eq!(status, StancuStatus::Domain);
    unsafe { stancu_function_free(f) };
}

#[test]
fn null_pointers_are_reported() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(
            stancu_apply_operator(ptr::null(), 10, 0.0, 0.0, 0.5, &mut v),
            StancuStatus::NullPointer
        );
        let f = builtin("e2");
        assert_eq!(
            stancu_apply_operator(f, 10, 0.0, 0.0, 0.5, ptr::null_mut()),
            StancuStatus::NullPointer
        );
        assert_eq!(
            stancu_function_builtin(ptr::null(), &mut ptr::null_mut()),
            StancuStatus::NullPointer
        );
        assert_eq!(
            stancu_last_error_message(ptr::null_mut(), 10),
            StancuStatus::NullPointer
        );
        stancu_function_free(f);
        stancu_function_free(ptr::null_mut());
    }
}

#[test]
fn unknown_builtin_and_bad_utf8() {
    let mut f = ptr::null_mut();
    let name = CString::new("cos").unwrap();
    let status = unsafe { stancu_function_builtin(name.as_ptr(), &mut f) };
    assert_ne!(status, StancuStatus::Ok);
    assert!(f.is_null());
    let bad = [0xffu8 as c_char, 0];
    assert_eq!(
        unsafe { stancu_function_builtin(bad.as_ptr(), &mut f) },
        StancuStatus::InvalidUtf8
    );
}

#[test]
fn buffers_too_small() {
    let mut row = [0.0; 10];
    assert_eq!(
        unsafe { stancu_basis_row(10, 0.3, row.as_mut_ptr(), row.len()) },
        StancuStatus::BufferTooSmall
    );
    assert!(last_error().contains("11"));
    let mut row = [0.0; 11];
    assert_eq!(
        unsafe { stancu_basis_row(10, 0.3, row.as_mut_ptr(), row.len()) },
        StancuStatus::Ok
    );
    assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-15);

    let mut tiny = [0 as c_char; 2];
    let f = builtin("e0");
    let mut v = 0.0;
    unsafe { stancu_apply_operator(f, 0, 0.0, 0.0, 0.5, &mut v) };
    assert_eq!(
        unsafe { stancu_last_error_message(tiny.as_mut_ptr(), tiny.len()) },
        StancuStatus::BufferTooSmall
    );
    unsafe { stancu_function_free(f) };
}

#[test]
fn nodes_and_gap() {
    let mut nodes = [0.0; 101];
    assert_eq!(
        unsafe { stancu_nodes(100, 47.0, 100.0, nodes.as_mut_ptr(), nodes.len()) },
        StancuStatus::Ok
    );
    assert_eq!(nodes[47], 0.47);
    let mut g = 1.0;
    assert_eq!(
        unsafe { stancu_node_gap(47, 100, 47.0, 100.0, &mut g) },
        StancuStatus::Ok
    );
    assert_eq!(g, 0.0);
}

#[test]
fn theorem_checks() {
    let mut holds = false;
    let degrees = [25u32, 50, 100, 250];
    unsafe {
        assert_eq!(
            stancu_check_theorem1(20.0, 30.0, degrees.as_ptr(), degrees.len(), &mut holds),
            StancuStatus::Ok
        );
        assert!(holds);
        holds = false;
        assert_eq!(
            stancu_check_theorem2(25, 17.0, 100.0, &mut holds),
            StancuStatus::Ok
        );
        assert!(holds);
        holds = false;
        assert_eq!(
            stancu_check_theorem3(100, 4.7, 10.0, 47.0, 100.0, &mut holds),
            StancuStatus::Ok
        );
        assert!(holds);
        assert_eq!(
            stancu_check_theorem2(25, 0.0, 0.0, &mut holds),
            StancuStatus::Domain
        );
        assert_eq!(
            stancu_check_theorem3(100, 4.7, 10.0, 50.0, 100.0, &mut holds),
            StancuStatus::Domain
        );
    }
}

#[test]
fn bounds_with_default_and_explicit_config() {
    let f = builtin("sin15");
    let cfg = stancu_bound_config_default();
    assert_eq!(cfg.mod_grid_size, 10001);
    assert_eq!(cfg.sup_grid_size, 1001);
    let (mut w1, mut w2, mut e, mut b) = (0.0, 0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(
            stancu_modulus_of_continuity(f, 0.01, ptr::null(), &mut w1),
            StancuStatus::Ok
        );
        assert_eq!(
            stancu_modulus_of_continuity(f, 0.01, &cfg, &mut w2),
            StancuStatus::Ok
        );
        assert_eq!(
            stancu_sup_error(f, 50, 20.0, 30.0, ptr::null(), &mut e),
            StancuStatus::Ok
        );
        assert_eq!(
            stancu_corollary2_bound(f, 50, 20.0, 30.0, ptr::null(), &mut b),
            StancuStatus::Ok
        );
    }
    assert_eq!(w1, w2);
    assert!((w1 - 0.149_859_414_541_440_64).abs() < 1e-6);
    assert!(e <= b);
    let bad = StancuBoundConfig {
        c1: 1.0,
        mod_grid_size: 5,
        sup_grid_size: 1001,
    };
    assert_eq!(
        unsafe { stancu_sup_error(f, 50, 20.0, 30.0, &bad, &mut e) },
        StancuStatus::InvalidArgument
    );
    unsafe { stancu_function_free(f) };
}

#[test]
fn derive_c_for_e1_and_constant() {
    let f = builtin("e1");
    let cfg = StancuBoundConfig {
        c1: 1.09,
        ..stancu_bound_config_default()
    };
    let mut c = 0.0;
    assert_eq!(
        unsafe { stancu_derive_c(f, 100, 20.0, 30.0, &cfg, &mut c) },
        StancuStatus::Ok
    );
    assert!((c - (50.0 / 130.0 + 0.109) / 0.1).abs() < 1e-3, "{c}");
    unsafe { stancu_function_free(f) };
    let f = builtin("e0");
    assert_eq!(
        unsafe { stancu_derive_c(f, 100, 20.0, 30.0, ptr::null(), &mut c) },
        StancuStatus::Ok
    );
    assert_eq!(c, 0.0);
    unsafe { stancu_function_free(f) };
}

#[test]
fn tabulated_function_roundtrip() {
    let xs = [0.0, 0.5, 1.0];
    let ys = [0.0, 1.0, 0.0];
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { stancu_function_tabulated(xs.as_ptr(), ys.as_ptr(), 3, &mut f) },
        StancuStatus::Ok
    );
    let mut v = 0.0;
    assert_eq!(
        unsafe { stancu_function_eval(f, 0.25, &mut v) },
        StancuStatus::Ok
    );
    assert_eq!(v, 0.5);
    assert_eq!(
        unsafe { stancu_function_eval(f, 1.25, &mut v) },
        StancuStatus::Domain
    );
    unsafe { stancu_function_free(f) };

    let unsorted = [0.0, 0.7, 0.5, 1.0];
    let ys = [0.0; 4];
    let mut g = ptr::null_mut();
    let status = unsafe { stancu_function_tabulated(unsorted.as_ptr(), ys.as_ptr(), 4, &mut g) };
    assert_ne!(status, StancuStatus::Ok);
    assert!(g.is_null());
}

#[test]
fn curve_and_many_agree() {
    let f = builtin("abshalf");
    let mut curve = [0.0; 11];
    let xs: Vec<f64> = (0..11).map(|i| f64::from(i) / 10.0).collect();
    let mut many = [0.0; 11];
    unsafe {
        assert_eq!(
            stancu_apply_operator_curve(f, 30, 2.0, 5.0, 11, curve.as_mut_ptr(), 11),
            StancuStatus::Ok
        );
        assert_eq!(
            stancu_apply_operator_many(f, 30, 2.0, 5.0, xs.as_ptr(), many.as_mut_ptr(), 11),
            StancuStatus::Ok
        );
        assert_eq!(
            stancu_apply_operator_curve(f, 30, 2.0, 5.0, 12, curve.as_mut_ptr(), 11),
            StancuStatus::BufferTooSmall
        );
        stancu_function_free(f);
    }
    for (a, b) in curve.iter().zip(&many) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn theorem4_levels() {
    let f = builtin("sin15");
    let scales = [1.0, 10.0, 100.0, 1000.0];
    let mut at_m = [0.0; 4];
    let mut sup = [0.0; 4];
    let status = unsafe {
        stancu_theorem4_experiment(
            f,
            100,
            4.7,
            10.0,
            scales.as_ptr(),
            4,
            ptr::null(),
            at_m.as_mut_ptr(),
            sup.as_mut_ptr(),
        )
    };
    assert_eq!(status, StancuStatus::Ok);
    assert!(at_m.windows(2).all(|w| w[1] < w[0]));
    assert!(at_m[3] < 0.05);
    assert!((at_m[0] - 0.143_903_198_131_603_46).abs() < 1e-10);
    let bad = [1.0, 0.5];
    let status = unsafe {
        stancu_theorem4_experiment(
            f,
            100,
            4.7,
            10.0,
            bad.as_ptr(),
            2,
            ptr::null(),
            ptr::null_mut(),
            ptr::null_mut(),
        )
    };
    assert_eq!(status, StancuStatus::Domain);
    unsafe { stancu_function_free(f) };
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/stancu.h")).unwrap();
    assert!(header.contains("#ifndef STANCU_FFI_H"));
    assert!(header.contains("typedef struct StancuFunction StancuFunction;"));
    for sym in [
        "stancu_status_message",
        "stancu_last_error_length",
        "stancu_last_error_message",
        "stancu_bound_config_default",
        "stancu_function_builtin",
        "stancu_function_tabulated",
        "stancu_function_free",
        "stancu_function_eval",
        "stancu_basis_row",
        "stancu_apply_operator",
        "stancu_apply_operator_curve",
        "stancu_apply_operator_many",
        "stancu_moment",
        "stancu_nodes",
        "stancu_node_gap",
        "stancu_check_theorem1",
        "stancu_check_theorem2",
        "stancu_check_theorem3",
        "stancu_modulus_of_continuity",
        "stancu_sup_error",
        "stancu_operator_distance",
        "stancu_corollary2_bound",
        "stancu_derive_c",
        "stancu_theorem4_experiment",
        "STANCU_STATUS_BUFFER_TOO_SMALL",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }
}

const C_SMOKE: &str = r#"
#include <stdio.h>
#include <math.h>
#include "stancu.h"

int main(void) {
    StancuFunction *f = NULL;
    if (stancu_function_builtin("e1", &f) != STANCU_STATUS_OK) return 1;
    double v = 0.0;
    if (stancu_apply_operator(f, 10, 1.0, 2.0, 0.5, &v) != STANCU_STATUS_OK) return 2;
    if (fabs(v - 0.5) > 1e-15) return 3;
    if (stancu_apply_operator(f, 10, 3.0, 2.0, 0.5, &v) != STANCU_STATUS_DOMAIN) return 4;
    char msg[256];
    if (stancu_last_error_message(msg, sizeof msg) != STANCU_STATUS_OK) return 5;
    stancu_function_free(f);
    printf("%s\n", msg);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libstancu_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, C_SMOKE).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("alpha"));
}
