//! Exercises the C ABI exactly as a foreign caller would: through raw
//! pointers and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use relaycap_ffi::*;

fn c_string(bytes: &[u8]) -> CString {
    CString::new(bytes).unwrap()
}

#[test]
fn network_json_round_trip_through_the_abi() {
    let doc = c_string(
        br#"{"num_relays": 1, "link_capacities": [
            {"from": 0, "to": 1, "bits": 2.0},
            {"from": 1, "to": 2, "bits": 5.0}
        ]}"#,
    );
    let mut net: *mut RcapNetwork = ptr::null_mut();
    let status = unsafe { rcap_network_from_json(doc.as_ptr(), &mut net) };
    assert_eq!(status, RcapStatus::Ok);
    assert!(!net.is_null());

    let mut relays = 0u32;
    assert_eq!(
        unsafe { rcap_network_num_relays(net, &mut relays) },
        RcapStatus::Ok
    );
    assert_eq!(relays, 1);

    let mut bits = 0.0f64;
    assert_eq!(
        unsafe { rcap_network_link_capacity(net, 0, 1, &mut bits) },
        RcapStatus::Ok
    );
    assert_eq!(bits, 2.0);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { rcap_network_to_json(net, &mut json) },
        RcapStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { rcap_string_free(json) };

    let mut reloaded: *mut RcapNetwork = ptr::null_mut();
    let re_doc = c_string(text.as_bytes());
    assert_eq!(
        unsafe { rcap_network_from_json(re_doc.as_ptr(), &mut reloaded) },
        RcapStatus::Ok
    );
    let mut bits2 = 0.0f64;
    unsafe { rcap_network_link_capacity(reloaded, 0, 1, &mut bits2) };
    assert_eq!(bits, bits2);

    unsafe {
        rcap_network_free(net);
        rcap_network_free(reloaded);
    }
}

#[test]
fn capacity_route_and_guarantee_through_the_abi() {
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { rcap_construct_general_json(5, 1.0, &mut json) },
        RcapStatus::Ok
    );
    let mut net: *mut RcapNetwork = ptr::null_mut();
    assert_eq!(
        unsafe { rcap_network_from_json(json, &mut net) },
        RcapStatus::Ok
    );
    unsafe { rcap_string_free(json) };

    let mut bits = 0.0f64;
    let mut cut = [0u32; 8];
    let mut cut_len = 0u32;
    let status =
        unsafe { rcap_network_capacity(net, 0, &mut bits, cut.as_mut_ptr(), 8, &mut cut_len) };
    assert_eq!(status, RcapStatus::Ok);
    assert!((bits - 3.0).abs() < 1e-9);
    assert_eq!(&cut[..cut_len as usize], &[0, 2, 3]);

    let mut route_bits = 0.0f64;
    let mut nodes = [0u32; 8];
    let mut node_len = 0u32;
    let status = unsafe {
        rcap_network_best_route(net, &mut route_bits, nodes.as_mut_ptr(), 8, &mut node_len)
    };
    assert_eq!(status, RcapStatus::Ok);
    assert_eq!(route_bits, 1.0);
    assert!(node_len >= 2);

    let mut report = RcapGuaranteeReport {
        best_route_bits: 0.0,
        approx_capacity_bits: 0.0,
        fraction: 0.0,
        additive_gap_bits: 0.0,
        satisfied: false,
    };
    assert_eq!(
        unsafe { rcap_network_route_guarantee(net, 0, &mut report) },
        RcapStatus::Ok
    );
    assert!(report.satisfied);
    assert_eq!(report.best_route_bits, 1.0);
    assert_eq!(report.fraction, 1.0 / 3.0);

    // too-small cut buffer is reported, not overrun
    let mut tiny = [0u32; 1];
    let status =
        unsafe { rcap_network_capacity(net, 0, &mut bits, tiny.as_mut_ptr(), 1, &mut cut_len) };
    assert_eq!(status, RcapStatus::BufferTooSmall);

    unsafe { rcap_network_free(net) };
}

#[test]
fn channel_selection_through_the_abi() {
    // 3x3 parallel unit-capacity channel, interleaved (re, im) row-major
    let mut entries = [0.0f64; 18];
    for i in 0..3 {
        entries[2 * (i * 3 + i)] = 1.0;
    }
    let mut ch: *mut RcapChannel = ptr::null_mut();
    assert_eq!(
        unsafe { rcap_channel_create(3, 3, entries.as_ptr(), &mut ch) },
        RcapStatus::Ok
    );

    let mut bits = 0.0f64;
    assert_eq!(
        unsafe { rcap_channel_capacity(ch, &mut bits) },
        RcapStatus::Ok
    );
    assert_eq!(bits, 3.0);

    let mut selected = 0.0f64;
    let mut tx = [0u32; 2];
    let mut rx = [0u32; 1];
    assert_eq!(
        unsafe {
            rcap_subchannel_bruteforce(ch, 2, 1, &mut selected, tx.as_mut_ptr(), rx.as_mut_ptr())
        },
        RcapStatus::Ok
    );
    assert_eq!(selected, 1.0);

    let mut greedy_bits = 0.0f64;
    let mut gtx = [0u32; 1];
    let mut grx = [0u32; 1];
    assert_eq!(
        unsafe {
            rcap_subchannel_greedy(
                ch,
                1,
                1,
                &mut greedy_bits,
                gtx.as_mut_ptr(),
                grx.as_mut_ptr(),
            )
        },
        RcapStatus::Ok
    );
    assert_eq!(greedy_bits, 1.0);
    assert_eq!(
        gtx[0], grx[0],
        "kept link of a parallel channel is diagonal"
    );

    unsafe { rcap_channel_free(ch) };
}

#[test]
fn errors_surface_as_status_codes_and_messages() {
    let mut net: *mut RcapNetwork = ptr::null_mut();
    assert_eq!(
        unsafe { rcap_network_from_json(ptr::null(), &mut net) },
        RcapStatus::NullPointer
    );

    let bad = c_string(br#"{"num_relays": 0, "gains": []}"#);
    assert_eq!(
        unsafe { rcap_network_from_json(bad.as_ptr(), &mut net) },
        RcapStatus::ParseError
    );
    let message = unsafe { CStr::from_ptr(rcap_last_error_message()) }
        .to_str()
        .unwrap();
    assert!(message.contains("num_relays"), "{message}");

    // a disconnected network distinguishes its status
    let island =
        c_string(br#"{"num_relays": 2, "link_capacities": [{"from": 0, "to": 1, "bits": 1.0}]}"#);
    assert_eq!(
        unsafe { rcap_network_from_json(island.as_ptr(), &mut net) },
        RcapStatus::Ok
    );
    let mut bits = 0.0f64;
    assert_eq!(
        unsafe { rcap_network_best_route(net, &mut bits, ptr::null_mut(), 0, ptr::null_mut()) },
        RcapStatus::Disconnected
    );
    unsafe { rcap_network_free(net) };

    // invalid construction parameters
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { rcap_construct_general_json(0, 1.0, &mut json) },
        RcapStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { rcap_construct_layered_json(2, 2, -3.0, &mut json) },
        RcapStatus::InvalidArgument
    );
}

#[test]
fn generated_header_covers_the_surface() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/relaycap.h"))
            .expect("cbindgen header exists");
    for symbol in [
        "rcap_network_from_json",
        "rcap_network_capacity",
        "rcap_network_best_route",
        "rcap_network_route_guarantee",
        "rcap_construct_general_json",
        "rcap_construct_layered_json",
        "rcap_channel_create",
        "rcap_subchannel_bruteforce",
        "rcap_subchannel_greedy",
        "rcap_last_error_message",
        "rcap_string_free",
        "RCAP_STATUS_OK",
        "RcapGuaranteeReport",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
