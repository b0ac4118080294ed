use giv_core::crt::{crt_reconstruct_signed, prime_window};
use giv_core::generators::{
    cfi_ladder, desarguesian_plane, dual_plane, miyazaki, twisted_miyazaki, CfiMode,
};
use giv_core::oracle::{is_isomorphic_bruteforce, is_isomorphism};
use giv_core::{
    apply_permutation, compare, connection_matrix, incidence_graph, parse_incidence, EngineConfig,
    Permutation, Verdict,
};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn one_rung_twist_parity_by_exhaustive_search() {
    let plain = cfi_ladder(1, &[], CfiMode::Contracted).unwrap();
    assert_eq!(plain.n(), 14);
    for edge in 0..3 {
        let odd = cfi_ladder(1, &[edge], CfiMode::Contracted).unwrap();
        assert_eq!(
            is_isomorphic_bruteforce(&plain, &odd).unwrap(),
            None,
            "twist on edge {edge}"
        );
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let even = cfi_ladder(1, &[a, b], CfiMode::Contracted).unwrap();
        let map = is_isomorphic_bruteforce(&plain, &even)
            .unwrap()
            .expect("even twists are isomorphic");
        assert!(is_isomorphism(&plain, &even, &map));
    }
}

#[test]
fn engine_separates_the_one_rung_pair() {
    let plain = cfi_ladder(1, &[], CfiMode::Contracted).unwrap();
    let odd = cfi_ladder(1, &[2], CfiMode::Contracted).unwrap();
    for diagonal in [1, 3] {
        let cfg = EngineConfig {
            diagonal,
            prime_count: 4,
            ..EngineConfig::default()
        };
        assert!(compare(&plain, &odd, &cfg).unwrap().is_non_isomorphic());
        let even = cfi_ladder(1, &[0, 1], CfiMode::Contracted).unwrap();
        assert!(!compare(&plain, &even, &cfg).unwrap().is_non_isomorphic());
    }
}

#[test]
fn relabelled_ladders_are_presumed_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = EngineConfig {
        diagonal: 3,
        prime_count: 3,
        ..EngineConfig::default()
    };
    for k in 1..=3 {
        let m = miyazaki(k).unwrap();
        let r = apply_permutation(&m, &Permutation::random(m.n(), &mut rng)).unwrap();
        assert_eq!(
            compare(&m, &r, &cfg).unwrap(),
            Verdict::PresumedIsomorphic { iterations_run: 2 }
        );
    }
}

#[test]
fn ladder_sizes() {
    for (k, n) in [(4, 80), (10, 200), (25, 500)] {
        assert_eq!(miyazaki(k).unwrap().n(), n);
    }
    let (m, t) = (miyazaki(4).unwrap(), twisted_miyazaki(4, 2).unwrap());
    assert_eq!((m.n(), m.edge_count()), (t.n(), t.edge_count()));
}

#[test]
fn fano_is_self_dual_to_the_engine() {
    let s = desarguesian_plane(2).unwrap();
    let g = incidence_graph(&s).unwrap();
    let d = incidence_graph(&dual_plane(&s).unwrap()).unwrap();
    assert!(!compare(&g, &d, &EngineConfig::default())
        .unwrap()
        .is_non_isomorphic());
    let map = is_isomorphic_bruteforce(&g, &d).unwrap().unwrap();
    assert!(is_isomorphism(&g, &d, &map));
}

#[test]
fn plane_text_round_trips() {
    for q in [2, 3, 4, 5] {
        let s = desarguesian_plane(q).unwrap();
        assert_eq!(parse_incidence(&s.to_text()).unwrap(), s);
    }
}

/// The incidence graph of a plane of order `q` has adjacency eigenvalues
/// `±(q+1)` once each and `±√q` with multiplicity `q²+q` each, so with a unit
/// diagonal `det A = (q+2)·(−q)·(1−q)^{q²+q}`.
#[test]
fn plane_determinants_match_the_spectrum() {
    let basis = prime_window(72).unwrap();
    for q in [2usize, 3, 4, 5, 7, 16] {
        let g = incidence_graph(&desarguesian_plane(q).unwrap()).unwrap();
        let a = connection_matrix(&g, 1);
        let residues: Vec<u32> = basis.moduli().iter().map(|&m| a.reduce(m).det()).collect();
        let q = q as i64;
        let expected = BigInt::from((q + 2) * -q) * BigInt::from(1 - q).pow((q * q + q) as u32);
        assert_eq!(
            crt_reconstruct_signed(&residues, &basis).unwrap(),
            expected,
            "q = {q}"
        );
    }
}
