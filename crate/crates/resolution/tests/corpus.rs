use pqmaps_core::FieldKind;
use pqmaps_resolution::corpus::{corpus, CorpusParams};
use pqmaps_resolution::functor::{check_functoriality, mergeable_pairs};
use pqmaps_resolution::resolution::{build_resolution, check_resolution_equivalence, compare_embeddings, Mode};
use pqmaps_resolution::spectral::spectral_sequence;
use rayon::prelude::*;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 20;

#[test]
fn corpus_resolutions_are_equivalences() {
    let maps = corpus(CORPUS_SEED, CORPUS_SIZE, &CorpusParams::default());
    maps.par_iter().enumerate().for_each(|(i, map)| {
        let res = build_resolution(map, &Mode::Nondegenerate, None, i as u64).unwrap();
        for (_, size, counts) in res.fiber_profile() {
            // full-depth fibers are whole simplices on `size` vertices
            for (level, &c) in counts.iter().enumerate() {
                let expected = if level < size { binom(size, level + 1) } else { 0 };
                assert_eq!(c, expected, "map {i}");
            }
        }
        for field in [FieldKind::Rational, FieldKind::F2] {
            let eq = check_resolution_equivalence(&res, field);
            assert!(eq.holds, "map {i} over {field}: {eq:?}");
            let ss = spectral_sequence(&res.complex, field);
            assert!(ss.converged && ss.consistent, "map {i} over {field}");
        }
    });
}

#[test]
fn corpus_embeddings_agree() {
    let maps = corpus(CORPUS_SEED, CORPUS_SIZE, &CorpusParams::default());
    maps.par_iter().enumerate().for_each(|(i, map)| {
        for pair in 0..10u64 {
            let (a, b) = (1000 * i as u64 + pair, 7_000_000 + 31 * pair + i as u64);
            let cmp = compare_embeddings(map, a, b, None, FieldKind::Rational).unwrap();
            assert!(cmp.agree, "map {i}, seeds {a} {b}");
        }
    });
}

#[test]
fn corpus_induced_maps_preserve_filtration() {
    let maps = corpus(CORPUS_SEED, CORPUS_SIZE, &CorpusParams::default());
    let mut checked = 0;
    for (i, map) in maps.iter().enumerate() {
        if let Some(&(a, b)) = mergeable_pairs(map).first() {
            let report = check_functoriality(map, a, b, i as u64).unwrap();
            assert!(report.holds(), "map {i}: {report:?}");
            checked += 1;
        }
    }
    assert!(checked >= 5, "too few squares: {checked}");
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
