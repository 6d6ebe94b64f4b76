use std::ffi::{c_char, CStr, CString};
use std::ptr;

use gsss_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gsss_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let e = gsss_last_error();
    (!e.is_null()).then(|| unsafe { take(e) })
}

const ABC: &str = r#"{"participants":["A","B","C"],"authorized_sets":[["A","B"],["B","C"]]}"#;

unsafe fn structure(json: &str) -> *mut GsssStructure {
    let mut s = ptr::null_mut();
    assert_eq!(gsss_structure_from_json(c(json).as_ptr(), &mut s), GsssStatus::Ok);
    s
}

#[test]
fn deal_and_reconstruct() {
    unsafe {
        let s = structure(ABC);
        let mut d = ptr::null_mut();
        let seed = b"ffi";
        let st = gsss_deal(s, c("42").as_ptr(), 32, seed.as_ptr(), seed.len(), &mut d);
        assert_eq!(st, GsssStatus::Ok);
        assert!(last_error().is_none());

        let mut public = ptr::null_mut();
        assert_eq!(gsss_dealing_public(d, &mut public), GsssStatus::Ok);
        let share = |id: &str| {
            let mut out = ptr::null_mut();
            assert_eq!(gsss_dealing_share_json(d, c(id).as_ptr(), &mut out), GsssStatus::Ok);
            c(&take(out))
        };
        let (a, b, cc) = (share("A"), share("B"), share("C"));

        let mut out = ptr::null_mut();
        let ab = [a.as_ptr(), b.as_ptr()];
        assert_eq!(gsss_reconstruct(public, ab.as_ptr(), 2, &mut out), GsssStatus::Ok);
        assert_eq!(take(out), "42");

        let ac = [a.as_ptr(), cc.as_ptr()];
        assert_eq!(gsss_reconstruct(public, ac.as_ptr(), 2, &mut out), GsssStatus::Ok);
        assert_ne!(take(out), "42");

        let aa = [a.as_ptr(), a.as_ptr()];
        assert_eq!(gsss_reconstruct(public, aa.as_ptr(), 2, &mut out), GsssStatus::DuplicateShare);
        assert!(last_error().unwrap().contains('A'));

        // JSON round trip of the public polynomial
        let mut json = ptr::null_mut();
        assert_eq!(gsss_public_to_json(public, &mut json), GsssStatus::Ok);
        let json = c(&take(json));
        let mut again = ptr::null_mut();
        assert_eq!(gsss_public_from_json(json.as_ptr(), &mut again), GsssStatus::Ok);
        assert_eq!(gsss_reconstruct(again, ab.as_ptr(), 2, &mut out), GsssStatus::Ok);
        assert_eq!(take(out), "42");

        gsss_public_free(again);
        gsss_public_free(public);
        gsss_dealing_free(d);
        gsss_structure_free(s);
    }
}

#[test]
fn structure_queries_and_closure() {
    unsafe {
        let s = structure(ABC);
        let ids = [c("B"), c("A")];
        let ptrs: Vec<*const c_char> = ids.iter().map(|s| s.as_ptr()).collect();
        let mut yes = false;
        assert_eq!(gsss_structure_is_authorized(s, ptrs.as_ptr(), 2, &mut yes), GsssStatus::Ok);
        assert!(yes);
        let unknown = [c("Z")];
        let ptrs: Vec<*const c_char> = unknown.iter().map(|s| s.as_ptr()).collect();
        assert_eq!(
            gsss_structure_is_authorized(s, ptrs.as_ptr(), 1, &mut yes),
            GsssStatus::UnknownParticipant
        );

        let mut closed = ptr::null_mut();
        assert_eq!(gsss_structure_closure(s, 2, &mut closed), GsssStatus::ClosureTooLarge);
        assert!(closed.is_null());
        assert_eq!(gsss_structure_closure(s, 16, &mut closed), GsssStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(gsss_structure_to_json(closed, &mut json), GsssStatus::Ok);
        assert!(take(json).contains(r#""C""#));
        gsss_structure_free(closed);
        gsss_structure_free(s);
    }
}

#[test]
fn analyze_worked_instance() {
    unsafe {
        let json = c(r#"{"k":2,"coefficients":["132","-21","1"]}"#);
        let mut public = ptr::null_mut();
        assert_eq!(gsss_public_from_json(json.as_ptr(), &mut public), GsssStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(gsss_analyze(public, c("1/1000").as_ptr(), &mut out), GsssStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(report["delta2"], "-87/4");
        assert_eq!(gsss_analyze(public, c("zero").as_ptr(), &mut out), GsssStatus::InvalidInput);
        gsss_public_free(public);
    }
}

#[test]
fn shamir_round_trip() {
    unsafe {
        let mut out = ptr::null_mut();
        let seed = b"s";
        let st = gsss_shamir_split(c("31337").as_ptr(), 5, 3, ptr::null(), seed.as_ptr(), 1, &mut out);
        assert_eq!(st, GsssStatus::Ok);
        let shares: Vec<serde_json::Value> = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(shares.len(), 5);
        let subset = serde_json::to_string(&shares[1..4]).unwrap();
        assert_eq!(gsss_shamir_combine(c(&subset).as_ptr(), &mut out), GsssStatus::Ok);
        assert_eq!(take(out), "31337");

        let two = serde_json::to_string(&shares[..2]).unwrap();
        assert_eq!(gsss_shamir_combine(c(&two).as_ptr(), &mut out), GsssStatus::InvalidInput);
        let st = gsss_shamir_split(c("1").as_ptr(), 2, 3, ptr::null(), ptr::null(), 0, &mut out);
        assert_eq!(st, GsssStatus::InvalidInput);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(gsss_structure_from_json(ptr::null(), &mut s), GsssStatus::NullPointer);
        assert_eq!(gsss_structure_from_json(c("{").as_ptr(), &mut s), GsssStatus::InvalidInput);
        let empty = c(r#"{"participants":["A"],"authorized_sets":[]}"#);
        assert_eq!(gsss_structure_from_json(empty.as_ptr(), &mut s), GsssStatus::InvalidInput);
        assert!(last_error().unwrap().contains("empty access structure"));
        assert!(s.is_null());

        let bad_utf8 = [0xffu8 as c_char, 0];
        assert_eq!(gsss_structure_from_json(bad_utf8.as_ptr(), &mut s), GsssStatus::InvalidUtf8);

        let abc = structure(ABC);
        assert_eq!(
            gsss_structure_from_json(c(ABC).as_ptr(), ptr::null_mut()),
            GsssStatus::NullPointer
        );
        let mut d = ptr::null_mut();
        let st = gsss_deal(abc, c("1").as_ptr(), 2, b"x".as_ptr(), 1, &mut d);
        assert_eq!(st, GsssStatus::PrimeGeneration);
        let st = gsss_deal(abc, c("not a number").as_ptr(), 32, ptr::null(), 0, &mut d);
        assert_eq!(st, GsssStatus::InvalidInput);
        assert!(gsss_deal(abc, c("1").as_ptr(), 32, ptr::null(), 0, &mut d) == GsssStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(
            gsss_dealing_share_json(d, c("Z").as_ptr(), &mut out),
            GsssStatus::UnknownParticipant
        );
        gsss_dealing_free(d);
        gsss_structure_free(abc);

        // freeing NULL is a no-op
        gsss_structure_free(ptr::null_mut());
        gsss_string_free(ptr::null_mut());
        let v = CStr::from_ptr(gsss_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
