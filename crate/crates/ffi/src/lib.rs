//! C ABI for the relaycap library.
//!
//! Handles are opaque pointers created and freed here; every fallible call
//! returns an [`RcapStatus`] and writes its results through out-pointers.
//! A thread-local copy of the last error message is available through
//! [`rcap_last_error_message`]. Strings returned by `*_json` functions are
//! owned by the caller and must be released with [`rcap_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use relaycap::constructions::{
    construct_general_tight, construct_layered_tight, save_tight_example,
};
use relaycap::cutset::{approx_capacity_with_cap, DEFAULT_EXHAUSTIVE_CAP};
use relaycap::linalg::{mimo_capacity, ComplexMatrix};
use relaycap::mimo_select::{best_subchannel_bruteforce, greedy_subchannel};
use relaycap::network::{link_capacity, load_network, save_network, Network};
use relaycap::routing::{best_route, check_route_guarantee_with_cap};
use relaycap::Error;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    TooLarge = 4,
    Disconnected = 5,
    BufferTooSmall = 6,
    InternalError = 7,
}

/// Opaque relay network handle.
pub struct RcapNetwork(Network);

/// Opaque MIMO channel handle.
pub struct RcapChannel(ComplexMatrix);

/// Route-guarantee outcome; mirrors the library's report.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RcapGuaranteeReport {
    pub best_route_bits: f64,
    pub approx_capacity_bits: f64,
    pub fraction: f64,
    pub additive_gap_bits: f64,
    pub satisfied: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> RcapStatus {
    match err {
        Error::Json(_) | Error::InvalidDocument(_) => RcapStatus::ParseError,
        Error::TooManyRelays { .. }
        | Error::MatrixTooLarge { .. }
        | Error::SearchSpaceTooLarge { .. } => RcapStatus::TooLarge,
        Error::Disconnected => RcapStatus::Disconnected,
        Error::Io(_) => RcapStatus::InternalError,
        _ => RcapStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> RcapStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// Runs a closure, translating panics into InternalError instead of
/// unwinding across the ABI.
fn guarded(body: impl FnOnce() -> RcapStatus) -> RcapStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            RcapStatus::InternalError
        }
    }
}

/// Last error message of this thread; valid until the next failing call.
/// Never null.
#[no_mangle]
pub extern "C" fn rcap_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by one of the `*_json` functions.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed, or null.
#[no_mangle]
pub unsafe extern "C" fn rcap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn export_string(content: Vec<u8>, out: *mut *mut c_char) -> RcapStatus {
    let text = match CString::new(content) {
        Ok(text) => text,
        Err(_) => {
            set_error("output contained an interior NUL byte");
            return RcapStatus::InternalError;
        }
    };
    unsafe { *out = text.into_raw() };
    RcapStatus::Ok
}

/// Parses a network document (UTF-8 JSON) into a new handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_from_json(
    json: *const c_char,
    out: *mut *mut RcapNetwork,
) -> RcapStatus {
    if json.is_null() || out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let bytes = unsafe { CStr::from_ptr(json) }.to_bytes();
        match load_network(bytes) {
            Ok(net) => {
                unsafe { *out = Box::into_raw(Box::new(RcapNetwork(net))) };
                RcapStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Serializes a network handle back to its JSON document.
///
/// # Safety
/// `net` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_to_json(
    net: *const RcapNetwork,
    out: *mut *mut c_char,
) -> RcapStatus {
    if net.is_null() || out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let net = unsafe { &*net };
        export_string(save_network(&net.0), out)
    })
}

/// Releases a network handle.
///
/// # Safety
/// `net` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_free(net: *mut RcapNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Number of relays of a network.
///
/// # Safety
/// `net` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_num_relays(
    net: *const RcapNetwork,
    out: *mut u32,
) -> RcapStatus {
    if net.is_null() || out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    unsafe { *out = (*net).0.num_relays() as u32 };
    RcapStatus::Ok
}

/// Point-to-point capacity of one link, in bits.
///
/// # Safety
/// `net` must be a live handle; `out_bits` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_link_capacity(
    net: *const RcapNetwork,
    from: u32,
    to: u32,
    out_bits: *mut f64,
) -> RcapStatus {
    if net.is_null() || out_bits.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let net = unsafe { &*net };
        match link_capacity(&net.0, from as usize, to as usize) {
            Ok(bits) => {
                unsafe { *out_bits = bits.bits() };
                RcapStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

fn export_nodes(
    nodes: &[usize],
    out_nodes: *mut u32,
    buffer_len: u32,
    out_len: *mut u32,
) -> RcapStatus {
    if !out_len.is_null() {
        unsafe { *out_len = nodes.len() as u32 };
    }
    if out_nodes.is_null() {
        return RcapStatus::Ok;
    }
    if (buffer_len as usize) < nodes.len() {
        set_error("node buffer too small");
        return RcapStatus::BufferTooSmall;
    }
    for (i, &node) in nodes.iter().enumerate() {
        unsafe { *out_nodes.add(i) = node as u32 };
    }
    RcapStatus::Ok
}

/// Approximate capacity and one minimum cut. `max_relays` of zero uses the
/// default exhaustive cap. `out_cut` may be null to query only the
/// capacity; otherwise `out_cut_len` receives the member count and the
/// buffer must hold at least that many entries.
///
/// # Safety
/// `net` must be a live handle; non-null out-pointers must be valid, and
/// `out_cut` (when non-null) must point to `cut_buffer_len` writable
/// entries.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_capacity(
    net: *const RcapNetwork,
    max_relays: u32,
    out_bits: *mut f64,
    out_cut: *mut u32,
    cut_buffer_len: u32,
    out_cut_len: *mut u32,
) -> RcapStatus {
    if net.is_null() || out_bits.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let net = unsafe { &*net };
        let cap = if max_relays == 0 {
            DEFAULT_EXHAUSTIVE_CAP
        } else {
            max_relays as usize
        };
        match approx_capacity_with_cap(&net.0, cap) {
            Ok((bits, cut)) => {
                unsafe { *out_bits = bits.bits() };
                export_nodes(cut.members(), out_cut, cut_buffer_len, out_cut_len)
            }
            Err(err) => fail(err),
        }
    })
}

/// Best route and its bottleneck capacity. `out_nodes` may be null to
/// query only the capacity.
///
/// # Safety
/// Same contract as [`rcap_network_capacity`].
#[no_mangle]
pub unsafe extern "C" fn rcap_network_best_route(
    net: *const RcapNetwork,
    out_bits: *mut f64,
    out_nodes: *mut u32,
    node_buffer_len: u32,
    out_node_len: *mut u32,
) -> RcapStatus {
    if net.is_null() || out_bits.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let net = unsafe { &*net };
        match best_route(&net.0) {
            Ok((path, bits)) => {
                unsafe { *out_bits = bits.bits() };
                export_nodes(path.nodes(), out_nodes, node_buffer_len, out_node_len)
            }
            Err(err) => fail(err),
        }
    })
}

/// Best-route guarantee report for a network. `max_relays` of zero uses
/// the default exhaustive cap.
///
/// # Safety
/// `net` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcap_network_route_guarantee(
    net: *const RcapNetwork,
    max_relays: u32,
    out: *mut RcapGuaranteeReport,
) -> RcapStatus {
    if net.is_null() || out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let net = unsafe { &*net };
        let cap = if max_relays == 0 {
            DEFAULT_EXHAUSTIVE_CAP
        } else {
            max_relays as usize
        };
        match check_route_guarantee_with_cap(&net.0, cap) {
            Ok(report) => {
                unsafe {
                    *out = RcapGuaranteeReport {
                        best_route_bits: report.best_route_bits,
                        approx_capacity_bits: report.approx_capacity_bits,
                        fraction: report.fraction,
                        additive_gap_bits: report.additive_gap_bits,
                        satisfied: report.satisfied,
                    };
                }
                RcapStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Generates the arbitrary-topology worst-case network as a JSON document
/// with its designed sidecar block.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcap_construct_general_json(
    num_relays: u32,
    weak_bits: f64,
    out: *mut *mut c_char,
) -> RcapStatus {
    if out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(
        || match construct_general_tight(num_relays as usize, weak_bits) {
            Ok(example) => export_string(save_tight_example(&example), out),
            Err(err) => fail(err),
        },
    )
}

/// Generates the layered worst-case network as a JSON document with its
/// designed sidecar block.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rcap_construct_layered_json(
    layers: u32,
    per_layer: u32,
    capacity_bits: f64,
    out: *mut *mut c_char,
) -> RcapStatus {
    if out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(
        || match construct_layered_tight(layers as usize, per_layer as usize, capacity_bits) {
            Ok(example) => export_string(save_tight_example(&example), out),
            Err(err) => fail(err),
        },
    )
}

/// Builds a channel handle from `rows * cols` interleaved (re, im) pairs
/// in row-major order; rows are receive antennas.
///
/// # Safety
/// `entries` must point to `2 * rows * cols` readable doubles; `out` must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn rcap_channel_create(
    rows: u32,
    cols: u32,
    entries: *const f64,
    out: *mut *mut RcapChannel,
) -> RcapStatus {
    if entries.is_null() || out.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    if rows == 0 || cols == 0 {
        set_error("a channel needs at least one antenna per side");
        return RcapStatus::InvalidArgument;
    }
    guarded(|| {
        let count = rows as usize * cols as usize;
        let mut data = Vec::with_capacity(count);
        for i in 0..count {
            let re = unsafe { *entries.add(2 * i) };
            let im = unsafe { *entries.add(2 * i + 1) };
            match relaycap::Complex::new(re, im) {
                Ok(z) => data.push(z),
                Err(err) => return fail(err),
            }
        }
        match ComplexMatrix::from_rows(rows as usize, cols as usize, data) {
            Ok(h) => {
                unsafe { *out = Box::into_raw(Box::new(RcapChannel(h))) };
                RcapStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Releases a channel handle.
///
/// # Safety
/// `ch` must be a handle from this library, not yet freed, or null.
#[no_mangle]
pub unsafe extern "C" fn rcap_channel_free(ch: *mut RcapChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// MIMO capacity of a channel with i.i.d. unit-power inputs, in bits.
///
/// # Safety
/// `ch` must be a live handle; `out_bits` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rcap_channel_capacity(
    ch: *const RcapChannel,
    out_bits: *mut f64,
) -> RcapStatus {
    if ch.is_null() || out_bits.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        unsafe { *out_bits = mimo_capacity(&(*ch).0).bits() };
        RcapStatus::Ok
    })
}

unsafe fn run_selection(
    ch: *const RcapChannel,
    k_t: u32,
    k_r: u32,
    out_bits: *mut f64,
    out_tx: *mut u32,
    out_rx: *mut u32,
    exhaustive: bool,
) -> RcapStatus {
    if ch.is_null() || out_bits.is_null() || out_tx.is_null() || out_rx.is_null() {
        set_error("null pointer argument");
        return RcapStatus::NullPointer;
    }
    guarded(|| {
        let h = unsafe { &(*ch).0 };
        let selection = if exhaustive {
            best_subchannel_bruteforce(h, k_t as usize, k_r as usize)
        } else {
            greedy_subchannel(h, k_t as usize, k_r as usize).map(|g| g.selection)
        };
        match selection {
            Ok(sel) => {
                unsafe { *out_bits = sel.capacity_bits.bits() };
                for (i, &t) in sel.tx_indices.as_slice().iter().enumerate() {
                    unsafe { *out_tx.add(i) = t as u32 };
                }
                for (i, &r) in sel.rx_indices.as_slice().iter().enumerate() {
                    unsafe { *out_rx.add(i) = r as u32 };
                }
                RcapStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Exact best k_t x k_r subchannel by exhaustive search. `out_tx` and
/// `out_rx` receive the kept antenna indices and must hold k_t and k_r
/// entries.
///
/// # Safety
/// `ch` must be a live handle; out-pointers must be valid with the stated
/// capacities.
#[no_mangle]
pub unsafe extern "C" fn rcap_subchannel_bruteforce(
    ch: *const RcapChannel,
    k_t: u32,
    k_r: u32,
    out_bits: *mut f64,
    out_tx: *mut u32,
    out_rx: *mut u32,
) -> RcapStatus {
    run_selection(ch, k_t, k_r, out_bits, out_tx, out_rx, true)
}

/// Greedy k_t x k_r subchannel by one-antenna-at-a-time pruning; keeps at
/// least k_t k_r / (n_t n_r) of the capacity. Buffer contract as in
/// [`rcap_subchannel_bruteforce`].
///
/// # Safety
/// Same contract as [`rcap_subchannel_bruteforce`].
#[no_mangle]
pub unsafe extern "C" fn rcap_subchannel_greedy(
    ch: *const RcapChannel,
    k_t: u32,
    k_r: u32,
    out_bits: *mut f64,
    out_tx: *mut u32,
    out_rx: *mut u32,
) -> RcapStatus {
    run_selection(ch, k_t, k_r, out_bits, out_tx, out_rx, false)
}
