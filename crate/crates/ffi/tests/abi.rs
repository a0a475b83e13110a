use std::ffi::{CStr, CString};
use std::ptr;

use kquiver_ffi::*;

#[test]
fn cartan_module_round_trip() {
    unsafe {
        let mut c = ptr::null_mut();
        let graph = CString::new(r#"{"vertices": ["a", "b"], "edges": [["a", "b"]]}"#).unwrap();
        assert_eq!(kq_cartan_from_json(graph.as_ptr(), &mut c), KqStatus::Ok);
        let mut rank = 0;
        assert_eq!(kq_cartan_rank(c, &mut rank), KqStatus::Ok);
        assert_eq!(rank, 2);

        let (w, v) = ([1i64, 1], [1i64, 1]);
        let mut pair = 9;
        assert_eq!(
            kq_cartan_pair(c, w.as_ptr(), v.as_ptr(), 2, 0, &mut pair),
            KqStatus::Ok
        );
        assert_eq!(pair, 0);
        let mut dim = 0;
        assert_eq!(
            kq_quiver_dim(c, w.as_ptr(), v.as_ptr(), 2, &mut dim),
            KqStatus::Ok
        );
        assert_eq!(dim, 2);

        let mut m = ptr::null_mut();
        assert_eq!(kq_module_build(c, w.as_ptr(), 2, -1, &mut m), KqStatus::Ok);
        let mut total = 0;
        assert_eq!(kq_module_total_dim(m, &mut total), KqStatus::Ok);
        assert_eq!(total, 8);
        let mut zero = 0;
        assert_eq!(
            kq_module_weight_dim(m, v.as_ptr(), 2, &mut zero),
            KqStatus::Ok
        );
        assert_eq!(zero, 2);

        let mut json = ptr::null_mut();
        assert_eq!(kq_module_to_json(m, &mut json), KqStatus::Ok);
        assert!(CStr::from_ptr(json)
            .to_str()
            .unwrap()
            .contains("\"generators\""));
        kq_string_free(json);

        let mut report = ptr::null_mut();
        assert_eq!(kq_module_verify(m, &mut report), KqStatus::Ok);
        kq_string_free(report);
        kq_module_free(m);
        kq_cartan_free(c);
    }
}

#[test]
fn invalid_inputs_report_messages() {
    unsafe {
        let mut c = ptr::null_mut();
        let empty = CString::new(r#"{"vertices": [], "edges": []}"#).unwrap();
        assert_eq!(
            kq_cartan_from_json(empty.as_ptr(), &mut c),
            KqStatus::InvalidInput
        );
        let msg = CStr::from_ptr(kq_last_error_message()).to_str().unwrap();
        assert!(msg.contains("empty vertex list"), "{msg}");

        let garbage = CString::new("{").unwrap();
        assert_eq!(
            kq_cartan_from_json(garbage.as_ptr(), &mut c),
            KqStatus::Parse
        );

        assert_eq!(kq_cartan_from_type(c"A2".as_ptr(), &mut c), KqStatus::Ok);
        let w = [1i64];
        let mut m = ptr::null_mut();
        assert_eq!(
            kq_module_build(c, w.as_ptr(), 1, -1, &mut m),
            KqStatus::InvalidInput
        );
        assert!(m.is_null());
        kq_cartan_free(c);
    }
}

#[test]
fn ktheory_checks_through_the_abi() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            kq_ktheory_verify(3, c"commutator,divided".as_ptr(), false, 0, 5, &mut out),
            KqStatus::Ok
        );
        let report: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(report["passed"], true);
        kq_string_free(out);
        assert_eq!(
            kq_ktheory_verify(3, c"affine".as_ptr(), false, 0, 5, ptr::null_mut()),
            KqStatus::CheckFailed
        );
        assert_eq!(
            kq_ktheory_verify(3, c"bogus".as_ptr(), false, 0, 5, ptr::null_mut()),
            KqStatus::Parse
        );
    }
}
