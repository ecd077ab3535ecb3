//! Exercises the C surface the way a foreign caller would: build handles,
//! pass strings across the boundary, check status codes and the thread-local
//! error message.

use cohtab_capi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn take_string(p: *mut libc::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { cohtab_string_free(p) };
    s
}

fn last_error() -> String {
    let p = cohtab_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn stock_entry_and_regularity_round_trip() {
    let name = CString::new("ideal-point-p2").unwrap();
    let mut table: *mut CohtabTable = ptr::null_mut();
    let status = unsafe { cohtab_stock_table(name.as_ptr(), 0, -10, 6, &mut table) };
    assert_eq!(status, CohtabStatus::Ok);

    let mut value: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_table_entry(table, 0, 2, &mut value) },
        CohtabStatus::Ok
    );
    assert_eq!(take_string(value), "5");

    let mut dim = 0i64;
    assert_eq!(
        unsafe { cohtab_table_dimension(table, &mut dim) },
        CohtabStatus::Ok
    );
    assert_eq!(dim, 2);

    let mut roots = [0i64; 8];
    let mut len = 0usize;
    assert_eq!(
        unsafe { cohtab_table_regularity(table, roots.as_mut_ptr(), roots.len(), &mut len) },
        CohtabStatus::Ok
    );
    assert_eq!(&roots[..len], &[0, -2]);

    // text emit parses back to an identical serialization
    let mut text: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_table_emit_text(table, &mut text) },
        CohtabStatus::Ok
    );
    let emitted = take_string(text);
    let ctext = CString::new(emitted.clone()).unwrap();
    let mut reparsed: *mut CohtabTable = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_table_parse(ctext.as_ptr(), &mut reparsed) },
        CohtabStatus::Ok
    );
    let mut text2: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_table_emit_text(reparsed, &mut text2) },
        CohtabStatus::Ok
    );
    assert_eq!(take_string(text2), emitted);

    unsafe {
        cohtab_table_free(table);
        cohtab_table_free(reparsed);
    }
}

#[test]
fn decompose_json_carries_steps_and_reconstructs() {
    let name = CString::new("ideal-point-p2").unwrap();
    let mut table: *mut CohtabTable = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_stock_table(name.as_ptr(), 0, -20, 6, &mut table) },
        CohtabStatus::Ok
    );
    let mut json: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_decompose(table, 5, &mut json) },
        CohtabStatus::Ok
    );
    let doc = take_string(json);
    assert!(doc.contains("\"q\": \"1/3\""));
    assert!(doc.contains("budget_reached"));

    let cjson = CString::new(doc).unwrap();
    let mut rebuilt: *mut CohtabTable = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_reconstruct(cjson.as_ptr(), -20, 6, &mut rebuilt) },
        CohtabStatus::Ok
    );
    let mut value: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_table_entry(rebuilt, 2, -3, &mut value) },
        CohtabStatus::Ok
    );
    assert_eq!(take_string(value), "1"); // the first generator restores the corner
    unsafe {
        cohtab_table_free(table);
        cohtab_table_free(rebuilt);
    }
}

#[test]
fn functional_and_certificate_on_near_miss_table() {
    let name = CString::new("T3").unwrap();
    let mut table: *mut CohtabTable = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_stock_table(name.as_ptr(), 0, -9, 9, &mut table) },
        CohtabStatus::Ok
    );

    let degrees = [-1i64, 1, 2, 3];
    let mut value: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_functional(table, degrees.as_ptr(), degrees.len(), 2, &mut value) },
        CohtabStatus::Ok
    );
    assert_eq!(take_string(value), "-4");

    let mut cert: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_certificate_search(table, -4, 4, 2, &mut cert) },
        CohtabStatus::Ok
    );
    let cert = take_string(cert);
    assert!(cert.contains("\"j\":2"));
    assert!(cert.contains("\"value\":\"-4\""));

    // a genuine sheaf table yields no certificate: null out-pointer
    let genuine = CString::new("ideal-point-p2").unwrap();
    let mut ip: *mut CohtabTable = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_stock_table(genuine.as_ptr(), 0, -6, 6, &mut ip) },
        CohtabStatus::Ok
    );
    let mut none: *mut libc::c_char = CString::new("sentinel").unwrap().into_raw();
    unsafe { cohtab_string_free(none) };
    none = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_certificate_search(ip, -6, 6, 2, &mut none) },
        CohtabStatus::Ok
    );
    assert!(none.is_null());

    unsafe {
        cohtab_table_free(table);
        cohtab_table_free(ip);
    }
}

#[test]
fn error_paths_set_status_and_message() {
    let mut table: *mut CohtabTable = ptr::null_mut();
    let bad = CString::new("n=1 window=3:1\n").unwrap();
    assert_eq!(
        unsafe { cohtab_table_parse(bad.as_ptr(), &mut table) },
        CohtabStatus::OutOfWindow
    );
    assert!(last_error().contains("empty window"));

    let garbled = CString::new("not a table").unwrap();
    assert_eq!(
        unsafe { cohtab_table_parse(garbled.as_ptr(), &mut table) },
        CohtabStatus::InvalidInput
    );

    // a row index beyond the ambient dimension is a caller error
    let name = CString::new("T2").unwrap();
    assert_eq!(
        unsafe { cohtab_stock_table(name.as_ptr(), 0, -30, 8, &mut table) },
        CohtabStatus::Ok
    );
    let mut value: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_table_entry(table, 5, 0, &mut value) },
        CohtabStatus::InvalidInput
    );

    // decomposing the non-realizable table reports the negative witness
    let mut json: *mut libc::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { cohtab_decompose(table, 40, &mut json) },
        CohtabStatus::NonAdmissible
    );
    assert!(last_error().contains("negative entry"));

    unsafe { cohtab_table_free(table) };
    assert_eq!(
        unsafe { cohtab_table_dimension(ptr::null(), &mut 0i64) },
        CohtabStatus::InvalidInput
    );
}
