//! Acceptance criterion exercised through the CLI surface: the K3-class
//! case k = 2 of the elliptic preset.

use std::process::Command;

use spincert::construction::elliptic_preset;
use spincert::obstruction::{certify, VerdictKind};

#[test]
fn criterion_4_k3_case() {
    // library level: preset (n, m) = (2, 3) with default r = 1
    let params = elliptic_preset(2).unwrap();
    assert_eq!((params.n, params.m, params.r), (2, 3, 1));
    let verdict = certify(&params).unwrap();
    assert_eq!(verdict.kind, VerdictKind::Nonsmoothable);
    assert_eq!(verdict.certificate.fixed_count, 4);
    assert_eq!(verdict.certificate.rohlin_residue, -8);
    assert_eq!(verdict.certificate.sigma, -16);

    // CLI level: elliptic --k 2 prints the verdict and exits 0
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("k3.json");
    let out = Command::new(env!("CARGO_BIN_EXE_spincert"))
        .args(["elliptic", "--k", "2", "--json-out", cert_path.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("VERDICT: NONSMOOTHABLE"), "{text}");
    assert!(text.contains("fixed points: 4"), "{text}");
    assert!(text.contains("rohlin residue mod 16: -8"), "{text}");

    let written = std::fs::read_to_string(&cert_path).unwrap();
    let cert = spincert::Certificate::from_json(&written).unwrap();
    assert_eq!(cert, verdict.certificate);

    println!("[PASS] criterion 4: elliptic --k 2 gives (n,m) = (2,3), a 4-fixed-point action, verdict NONSMOOTHABLE with rohlin residue -8 mod 16");
}
