use matchfactory_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

struct Handle(*mut MfGraph);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { mf_graph_free(self.0) };
    }
}

fn counts(g: &Handle) -> (usize, usize) {
    let (mut n, mut m) = (0, 0);
    assert_eq!(unsafe { mf_graph_counts(g.0, &mut n, &mut m) }, MfStatus::Ok);
    (n, m)
}

fn petersen() -> Handle {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mf_construct_petersen(&mut g) }, MfStatus::Ok);
    Handle(g)
}

#[test]
fn petersen_properties() {
    let g = petersen();
    assert_eq!(counts(&g), (10, 15));
    let (mut reg, mut d) = (false, 0);
    assert_eq!(unsafe { mf_is_regular(g.0, &mut reg, &mut d) }, MfStatus::Ok);
    assert!(reg);
    assert_eq!(d, 3);
    let mut lambda = 0;
    assert_eq!(unsafe { mf_edge_connectivity(g.0, &mut lambda) }, MfStatus::Ok);
    assert_eq!(lambda, 3);
    let (mut is_r, mut r) = (false, 0);
    assert_eq!(unsafe { mf_is_r_graph(g.0, &mut is_r, &mut r) }, MfStatus::Ok);
    assert!(is_r && r == 3);
    let mut odd = 0;
    assert_eq!(unsafe { mf_min_odd_cut(g.0, &mut odd) }, MfStatus::Ok);
    assert_eq!(odd, 3);
    let mut v = MfVerdict::Unknown;
    assert_eq!(unsafe { mf_has_disjoint_pms(g.0, 2, 0, 0.0, &mut v, ptr::null_mut()) }, MfStatus::Ok);
    assert_eq!(v, MfVerdict::No);
}

#[test]
fn serialize_parse_round_trip() {
    let g = petersen();
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { mf_graph_serialize(g.0, &mut text) }, MfStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { mf_graph_parse(text, &mut back) }, MfStatus::Ok);
    let back = Handle(back);
    assert_eq!(counts(&back), (10, 15));
    for e in 0..15 {
        let (mut a, mut b, mut c, mut d) = (0, 0, 0, 0);
        unsafe {
            mf_graph_endpoints(g.0, e, &mut a, &mut b);
            mf_graph_endpoints(back.0, e, &mut c, &mut d);
        }
        assert_eq!((a, b), (c, d));
    }
    unsafe { mf_string_free(text) };
}

#[test]
fn from_edges_and_errors() {
    let edges = [0usize, 1, 0, 1];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mf_graph_from_edges(2, edges.as_ptr(), 2, &mut g) }, MfStatus::Ok);
    let g = Handle(g);
    let mut v = MfVerdict::Unknown;
    let mut nodes = 0;
    assert_eq!(unsafe { mf_has_disjoint_pms(g.0, 2, 0, 0.0, &mut v, &mut nodes) }, MfStatus::Ok);
    assert_eq!(v, MfVerdict::Yes);

    let mut bad = ptr::null_mut();
    let out_of_range = [0usize, 5];
    assert_eq!(unsafe { mf_graph_from_edges(2, out_of_range.as_ptr(), 1, &mut bad) }, MfStatus::InvalidArgument);
    assert!(bad.is_null());
    let msg = unsafe { CStr::from_ptr(mf_last_error()) }.to_string_lossy().into_owned();
    assert!(msg.contains("out of range"), "{msg}");

    let (mut a, mut b) = (0, 0);
    assert_eq!(unsafe { mf_graph_endpoints(g.0, 9, &mut a, &mut b) }, MfStatus::InvalidArgument);
    let garbage = CString::new("not json").unwrap();
    assert_eq!(unsafe { mf_graph_parse(garbage.as_ptr(), &mut bad) }, MfStatus::Parse);
    assert_eq!(unsafe { mf_construct_p(0, &mut bad) }, MfStatus::Construction);
    assert_eq!(unsafe { mf_counterexample(3, &mut bad, ptr::null_mut()) }, MfStatus::Construction);
    let mut n = 0;
    assert_eq!(unsafe { mf_min_odd_cut(ptr::null(), &mut n) }, MfStatus::NullPointer);
}

#[test]
fn constructions_have_expected_regularity() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mf_construct_p(2, &mut p) }, MfStatus::Ok);
    let p = Handle(p);
    assert_eq!(counts(&p), (10, 40));

    for (variant, degree) in
        [(MfVariant::Base, 4), (MfVariant::Prime, 7), (MfVariant::DoublePrime, 5), (MfVariant::TriplePrime, 6)]
    {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { mf_construct_h(1, variant, &mut h) }, MfStatus::Ok);
        let h = Handle(h);
        let (mut reg, mut d) = (false, 0);
        unsafe { mf_is_regular(h.0, &mut reg, &mut d) };
        assert!(reg);
        assert_eq!(d, degree, "{variant:?}");
        assert_eq!(counts(&h).0, 60);
    }

    let mut c = ptr::null_mut();
    let mut t = 0;
    assert_eq!(unsafe { mf_counterexample(5, &mut c, &mut t) }, MfStatus::Ok);
    let c = Handle(c);
    assert_eq!(t, 4);
    let mut lambda = 0;
    unsafe { mf_edge_connectivity(c.0, &mut lambda) };
    assert_eq!(lambda, 4);
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/matchfactory.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exported: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 15);
    for name in exported {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct MfGraph MfGraph;"));
}
