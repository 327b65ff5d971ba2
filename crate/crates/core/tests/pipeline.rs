use enriques_core::cover::analyze;
use enriques_core::lattice::cy_report;
use enriques_core::quadric::random_admissible_branch;
use enriques_core::seeker::{certify, exact_tangent_lines, expected_profile, seek, SeekOptions, Tolerances};
use enriques_core::severi::{dedieu_dim, SeveriSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn branch_to_conics_and_lattice() {
    let b = random_admissible_branch(&mut ChaCha8Rng::seed_from_u64(11), 5);
    assert!(b.check_branch_admissible().unwrap().is_admissible());
    assert_eq!(dedieu_dim(&SeveriSpec::ladder(2)), 0);

    let out = seek(&b, 2, &SeekOptions { seeds: 40, master_seed: 1, ..Default::default() }).unwrap();
    assert!(!out.certificates.is_empty());
    for cert in &out.certificates {
        assert_eq!(cert.profile, expected_profile(1));
        assert!(certify(cert, &Tolerances::default()).passed());
        assert!(cert.sigma_image().unwrap().report.passed());
        assert_eq!(cert.tangency.geom_genus_pullback, 0);
    }

    let r = cy_report(2, 10).unwrap();
    assert_eq!((r.pa, r.phi.value, r.two_divisible), (5, 2, true));
}

#[test]
fn rational_lines_agree_with_exact_analysis() {
    let b = random_admissible_branch(&mut ChaCha8Rng::seed_from_u64(3), 5);
    let found = exact_tangent_lines(&b, &Tolerances::default()).unwrap();
    assert_eq!(found.roots.iter().map(|r| r.multiplicity).sum::<u32>(), 24);
    for line in &found.lines {
        assert!(line.member);
        if let Some((x0, x1)) = &line.exact {
            let curve = enriques_core::quadric::GraphCurve::line(x0.clone(), x1.clone()).unwrap();
            assert!(!analyze(&b, &curve).unwrap().splits);
        }
    }
}
