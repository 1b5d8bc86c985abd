use num_rational::BigRational;
use pqmaps_core::field::rat;
use pqmaps_core::seeds::trial_rng;
use pqmaps_core::FieldKind;
use pqmaps_resolution::chain::{Cell, FilteredChainComplex};
use pqmaps_resolution::corpus::{random_surjection, CorpusParams};
use pqmaps_resolution::embedding::{affine_rank, moment_point};
use pqmaps_resolution::fox_neuwirth::fox_neuwirth_complex;
use pqmaps_resolution::resolution::{build_resolution, check_resolution_equivalence, Mode};
use pqmaps_resolution::spectral::spectral_sequence;
use pqmaps_resolution::SimplicialComplex;
use proptest::prelude::*;

fn small() -> CorpusParams {
    CorpusParams { max_target_vertices: 5, max_facets: 3, max_sheets: 2, max_lifts: 2, ..CorpusParams::default() }
}

/// A random complex filtered by the largest vertex level of each simplex.
fn vertex_filtered(seed: u64) -> FilteredChainComplex {
    use rand::Rng;
    let mut rng = trial_rng(seed, 0);
    let n = rng.gen_range(3..8);
    let facets: Vec<Vec<usize>> = (0..rng.gen_range(1..6))
        .map(|_| {
            let size = rng.gen_range(1..=3.min(n));
            rand::seq::index::sample(&mut rng, n, size).into_vec()
        })
        .collect();
    let k = SimplicialComplex::new(n, facets).unwrap();
    let vertex_level: Vec<usize> = (0..n).map(|_| rng.gen_range(1..4)).collect();
    let all = k.all_simplices();
    let base = k.chain_complex();
    let cells = all
        .iter()
        .map(|s| Cell { dim: s.len() - 1, level: s.iter().map(|&v| vertex_level[v]).max().unwrap() })
        .collect();
    FilteredChainComplex::new(cells, base.boundary().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_resolutions_are_equivalences(seed in any::<u64>()) {
        let map = random_surjection(&mut trial_rng(seed, 0), &small());
        // construction validates d^2 = 0 and the filtration
        let res = build_resolution(&map, &Mode::Nondegenerate, None, seed).unwrap();
        prop_assert!(check_resolution_equivalence(&res, FieldKind::Rational).holds);
        let ss = spectral_sequence(&res.complex, FieldKind::F2);
        prop_assert!(ss.converged && ss.consistent);
    }

    #[test]
    fn spectral_sequences_converge(seed in any::<u64>(), field in prop::sample::select(vec![FieldKind::Rational, FieldKind::F2, FieldKind::F3])) {
        let fc = vertex_filtered(seed);
        let ss = spectral_sequence(&fc, field);
        prop_assert!(ss.converged, "{:?}", ss);
        prop_assert!(ss.consistent);
    }

    #[test]
    fn pages_are_additive(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (vertex_filtered(a), vertex_filtered(b));
        let sx = spectral_sequence(&x, FieldKind::Rational);
        let sy = spectral_sequence(&y, FieldKind::Rational);
        let sum = spectral_sequence(&x.direct_sum(&y), FieldKind::Rational);
        for page in &sum.pages {
            for e in &page.entries {
                let part = |s: &pqmaps_resolution::SpectralPages| {
                    let idx = (page.r - 1).min(s.pages.len() - 1);
                    s.pages[idx].rank(e.level, e.degree)
                };
                prop_assert_eq!(e.rank, part(&sx) + part(&sy));
            }
        }
    }

    #[test]
    fn moment_curve_points_are_in_general_position(params in prop::collection::btree_set(-40i64..40, 2..7)) {
        // distinct parameters: Vandermonde determinant is nonzero
        let dim = params.len() - 1;
        let pts: Vec<Vec<BigRational>> = params.iter().map(|&t| moment_point(&rat(t, 3), dim)).collect();
        let refs: Vec<&Vec<BigRational>> = pts.iter().collect();
        prop_assert_eq!(affine_rank(&refs), dim);
    }
}

#[test]
fn fox_neuwirth_complexes_are_complexes() {
    for r in 1..=8 {
        // construction panics if d^2 != 0
        let fc = fox_neuwirth_complex(r).unwrap();
        assert_eq!(fc.len(), 1 << (r - 1));
        let betti = fc.betti(FieldKind::Rational);
        let nonzero: Vec<usize> = (0..betti.len()).filter(|&d| betti[d] > 0).collect();
        let expected = if r == 1 { vec![2] } else { vec![2 * r - 1, 2 * r] };
        assert_eq!(nonzero, expected, "r = {r}");
    }
}
