use surfkit::cellcomplex::CellComplex;
use surfkit::rewrite::{normalize, scramble_with_moves, NormalForm, SurfaceType};

fn forms() -> Vec<NormalForm> {
    let mut out = Vec::new();
    for p in 0..=4 {
        for q in 0..=3 {
            out.push(NormalForm::new(SurfaceType::TypeI, p, q).unwrap());
            if p >= 1 {
                out.push(NormalForm::new(SurfaceType::TypeII, p, q).unwrap());
            }
        }
    }
    out
}

fn round_trip(form: NormalForm, seed: u64, moves: usize) {
    let (k, _) = scramble_with_moves(&form.complex(), seed, moves).unwrap();
    let r = normalize(&k).unwrap_or_else(|e| panic!("{form} seed {seed}: {e}\n{k:?}"));
    assert_eq!(r.normal, form, "seed {seed}: {k:?}");
    assert_eq!(r.canonical_word, form.word());
}

#[test]
fn scrambled_canonical_complexes_normalize_back() {
    let mut seed = 0;
    for form in forms() {
        for moves in [1, 5, 20, 40, 60] {
            for _ in 0..4 {
                round_trip(form, seed, moves);
                seed += 1;
            }
        }
    }
}

#[test]
fn every_trace_step_replays() {
    for (i, form) in forms().into_iter().enumerate() {
        let (k, _) = scramble_with_moves(&form.complex(), 1000 + i as u64, 30).unwrap();
        let r = normalize(&k).unwrap();
        let mut cur: CellComplex = k.clone();
        for mv in &r.trace {
            assert_eq!(mv.before, cur);
            assert_eq!(mv.replay().unwrap(), mv.after);
            cur = mv.after.clone();
        }
        assert_eq!(cur, r.complex);
    }
}
