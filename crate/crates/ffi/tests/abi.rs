use std::ffi::{CStr, CString};
use std::ptr;

use vlimit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    vl_string_free(p);
    s
}

fn last_kind() -> String {
    unsafe { CStr::from_ptr(vl_last_error_kind()).to_str().unwrap().to_owned() }
}

fn tower(family: &str) -> *mut VlTower {
    let mut t = ptr::null_mut();
    let s = unsafe { vl_tower_new(c(r#"{"kind":"heisenberg"}"#).as_ptr(), c(family).as_ptr(), 3, &mut t) };
    assert_eq!(s, VlStatus::Ok);
    t
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(vl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn tower_dims_and_constants() {
    let t = tower(r#"{"family":"symmetric"}"#);
    unsafe {
        let mut d = 0usize;
        let dims: Vec<usize> = (1..=4)
            .map(|n| {
                assert_eq!(vl_tower_dim(t, n, 3, &mut d), VlStatus::Ok);
                d
            })
            .collect();
        assert_eq!(dims, [3, 5, 6, 6]);
        // ⟨a|a_(0)|vac⟩-type constant C_{a, a, vac} at N = 2 through all three methods
        let (w, i) = ([1u32, 1, 0], [0usize, 0, 0]);
        let mut values = Vec::new();
        for m in 0..3 {
            let (mut v, mut e) = (0.0, ptr::null_mut());
            assert_eq!(vl_tower_sc(t, 2, w.as_ptr(), i.as_ptr(), m, &mut v, &mut e), VlStatus::Ok);
            values.push((v, take(e)));
        }
        assert!(values.windows(2).all(|p| p[0] == p[1]));
        assert_eq!(vl_tower_sc(t, 2, w.as_ptr(), [0usize, 5, 0].as_ptr(), 0, ptr::null_mut(), ptr::null_mut()), VlStatus::OutOfRange);
        assert_eq!(vl_tower_sc(t, 2, w.as_ptr(), i.as_ptr(), 9, ptr::null_mut(), ptr::null_mut()), VlStatus::InvalidArgument);
        vl_tower_free(t);
    }
}

#[test]
fn limit_handle_outlives_tower() {
    let t = tower(r#"{"family":"symmetric"}"#);
    unsafe {
        let mut l = ptr::null_mut();
        assert_eq!(vl_limit_new(t, 3, 6, &mut l), VlStatus::Ok);
        vl_tower_free(t);
        let mut d = 0;
        assert_eq!(vl_limit_dim(l, 2, &mut d), VlStatus::Ok);
        assert_eq!(d, 3);
        // B(a, a) = C_{vac, a, a} = 1 in the limit
        let (mut v, mut e) = (0.0, ptr::null_mut());
        assert_eq!(vl_limit_constant(l, [0u32, 1, 1].as_ptr(), [0usize, 0, 0].as_ptr(), &mut v, &mut e), VlStatus::Ok);
        assert_eq!(take(e), "1");
        assert_eq!(v, 1.0);
        vl_limit_free(l);
    }
}

#[test]
fn unsaturated_limit_is_reported() {
    let t = tower(r#"{"family":"trivial"}"#);
    unsafe {
        let mut l = ptr::null_mut();
        assert_eq!(vl_limit_new(t, 2, 4, &mut l), VlStatus::OutOfRange);
        assert!(l.is_null());
        assert_eq!(last_kind(), "unsaturated");
        vl_tower_free(t);
    }
}

#[test]
fn bad_inputs() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(vl_tower_new(c("{").as_ptr(), c(r#"{"family":"symmetric"}"#).as_ptr(), 3, &mut t), VlStatus::InvalidArgument);
        assert!(t.is_null());
        assert_eq!(last_kind(), "config");
        assert_eq!(vl_tower_new(ptr::null(), ptr::null(), 3, &mut t), VlStatus::NullPointer);
        assert_eq!(vl_tower_dim(ptr::null(), 1, 1, ptr::null_mut()), VlStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(vl_tower_new(bytes.as_ptr().cast(), bytes.as_ptr().cast(), 3, &mut t), VlStatus::InvalidUtf8);
        vl_string_free(ptr::null_mut());
        vl_tower_free(ptr::null_mut());
    }
}

#[test]
fn characters() {
    let mut buf = [0u64; 7];
    unsafe {
        assert_eq!(vl_fk_character(2, 6, buf.as_mut_ptr(), buf.len()), VlStatus::Ok);
        assert_eq!(buf, [1, 0, 1, 1, 2, 2, 4]);
        assert_eq!(vl_fk_character(2, 7, buf.as_mut_ptr(), buf.len()), VlStatus::BufferTooSmall);
        assert_eq!(vl_fk_character(0, 6, buf.as_mut_ptr(), buf.len()), VlStatus::InvalidArgument);
    }
}

#[test]
fn run_matches_cli_documents() {
    unsafe {
        let mut doc = ptr::null_mut();
        let cfg = c(r#"{"char": {"k": 3, "order": 6}}"#);
        assert_eq!(vl_run(c("char").as_ptr(), cfg.as_ptr(), &mut doc), VlStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(doc)).unwrap();
        let coeffs: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["coefficient"].as_u64().unwrap()).collect();
        assert_eq!(coeffs, [1, 0, 0, 1, 1, 1, 2]);
        assert_eq!(vl_run(c("nope").as_ptr(), ptr::null(), &mut doc), VlStatus::InvalidArgument);
        assert!(doc.is_null());
        assert_eq!(vl_run(c("dims").as_ptr(), c(r#"{"n_min": 3, "n_max": 2}"#).as_ptr(), &mut doc), VlStatus::InvalidArgument);
        assert_eq!(last_kind(), "config");
    }
}
