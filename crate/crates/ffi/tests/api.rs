use std::ffi::{CStr, CString};
use std::ptr;

use cpplc_ffi::*;

const EXAMPLE: &str = "CPPLC 1\n4 4 0\n1 2 2 100\n2 3 1 20\n1 4 1 10\n3 4 10 5\n";

struct Handle(*mut CpplcInstance);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { cpplc_instance_free(self.0) };
    }
}

fn parse(text: &str) -> Result<Handle, CpplcStatus> {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { cpplc_instance_parse(c.as_ptr(), &mut out) } {
        CpplcStatus::Ok => Ok(Handle(out)),
        s => Err(s),
    }
}

fn last_error() -> String {
    let p = cpplc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn example_cost_and_directions() {
    let h = parse(EXAMPLE).unwrap();
    let mut m = 0;
    assert_eq!(
        unsafe { cpplc_instance_num_edges(h.0, &mut m) },
        CpplcStatus::Ok
    );
    assert_eq!(m, 4);

    let mut cost = 0.0;
    let order = [1u32, 2, 3, 4];
    assert_eq!(
        unsafe { cpplc_tour_cost(h.0, order.as_ptr(), 4, &mut cost) },
        CpplcStatus::Ok
    );
    assert_eq!(cost, 275.0);

    let mut dirs = [0u8; 4];
    assert_eq!(
        unsafe {
            cpplc_tour_directions(h.0, order.as_ptr(), 4, dirs.as_mut_ptr(), ptr::null_mut())
        },
        CpplcStatus::Ok
    );
    assert_eq!(dirs, [1, 1, 1, 2]);

    let order = [1u32, 2, 4, 3];
    assert_eq!(
        unsafe { cpplc_tour_cost(h.0, order.as_ptr(), 4, &mut cost) },
        CpplcStatus::Ok
    );
    assert_eq!(cost, 325.0);
}

#[test]
fn error_codes() {
    assert_eq!(parse("CPPLC 2\n1 0 0\n").err(), Some(CpplcStatus::Parse));
    assert!(last_error().contains("version"));
    assert_eq!(
        parse("CPPLC 1\n3 1 0\n1 2 1 1\n").err(),
        Some(CpplcStatus::InvalidInstance)
    );
    assert!(last_error().contains("disconnected"));

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cpplc_instance_parse(ptr::null(), &mut out) },
        CpplcStatus::NullPointer
    );

    let h = parse(EXAMPLE).unwrap();
    let mut cost = 0.0;
    let dup = [1u32, 1, 3, 4];
    assert_eq!(
        unsafe { cpplc_tour_cost(h.0, dup.as_ptr(), 4, &mut cost) },
        CpplcStatus::InvalidTour
    );
    let short = [1u32, 2];
    assert_eq!(
        unsafe { cpplc_tour_cost(h.0, short.as_ptr(), 2, &mut cost) },
        CpplcStatus::InvalidTour
    );
    let mut m = 0;
    assert_eq!(
        unsafe { cpplc_instance_num_edges(ptr::null(), &mut m) },
        CpplcStatus::NullPointer
    );
}

#[test]
fn read_missing_file() {
    let path = CString::new("/nonexistent/x.cpplc").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { cpplc_instance_read(path.as_ptr(), &mut out) },
        CpplcStatus::Io
    );
    assert!(out.is_null());
}

#[test]
fn solve_matches_exact_on_example() {
    let h = parse(EXAMPLE).unwrap();
    let mut order = [0u32; 4];
    let mut dirs = [0u8; 4];
    let mut cost = 0.0;
    let mut evals = 0;
    for alg in [
        CPPLC_ALG_GHC,
        CPPLC_ALG_ILS,
        CPPLC_ALG_VNS,
        CPPLC_ALG_EA,
        CPPLC_ALG_ACO,
        CPPLC_ALG_EXACT,
    ] {
        let opts = CpplcSolveOptions {
            algorithm: alg,
            max_iters: 5,
            ..cpplc_solve_options_default()
        };
        let status = unsafe {
            cpplc_solve(
                h.0,
                &opts,
                order.as_mut_ptr(),
                dirs.as_mut_ptr(),
                4,
                &mut cost,
                &mut evals,
            )
        };
        assert_eq!(status, CpplcStatus::Ok);
        // Greedy already finds the optimum on this instance.
        assert_eq!(cost, 275.0, "alg {alg}");
        let mut sorted = order;
        sorted.sort();
        assert_eq!(sorted, [1, 2, 3, 4]);
    }

    let bad = CpplcSolveOptions {
        algorithm: 99,
        ..cpplc_solve_options_default()
    };
    let status = unsafe {
        cpplc_solve(
            h.0,
            &bad,
            order.as_mut_ptr(),
            dirs.as_mut_ptr(),
            4,
            &mut cost,
            &mut evals,
        )
    };
    assert_eq!(status, CpplcStatus::InvalidArgument);
}

#[test]
fn status_messages_are_static() {
    let s = unsafe { CStr::from_ptr(cpplc_status_message(CpplcStatus::TooLarge)) };
    assert_eq!(s.to_str().unwrap(), "instance too large");
}

#[test]
fn header_is_current_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/cpplc.h")).unwrap();
    for sym in [
        "cpplc_instance_parse",
        "cpplc_instance_read",
        "cpplc_instance_free",
        "cpplc_instance_num_edges",
        "cpplc_tour_cost",
        "cpplc_tour_directions",
        "cpplc_solve_options_default",
        "cpplc_solve",
        "cpplc_status_message",
        "cpplc_last_error_message",
        "CPPLC_STATUS_INVALID_TOUR",
    ] {
        assert!(header.contains(sym), "{sym} missing from header");
    }

    // Compile-only check when a C compiler is available.
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .status()
    else {
        eprintln!("cc not found; skipping C compile check");
        return;
    };
    assert!(status.success());

    // Link and run against the static library when it sits next to this
    // test binary (target/<profile>/deps/..).
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libcpplc_ffi.a");
    if !lib.exists() {
        eprintln!("{} not found; skipping link check", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("cpplc_smoke_{}", std::process::id()));
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "smoke exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "275 1 1 1 2\n");
}
