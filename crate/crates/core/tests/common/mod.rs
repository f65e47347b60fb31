use proptest::prelude::*;
use surfkit::cellcomplex::CellComplex;
use surfkit::edgeword::{parse_word, Word};

/// Random gluings: each edge occurs once or twice with random signs, the
/// occurrences shuffled and cut into faces. Disconnected draws are dropped.
pub fn arb_complex() -> impl Strategy<Value = CellComplex> {
    (1usize..12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec((any::<bool>(), any::<bool>(), any::<bool>()), n),
                any::<u64>(),
                1usize..4,
            )
        })
        .prop_filter_map("disconnected", |(edges, shuffle, nfaces)| {
            let mut occ: Vec<String> = Vec::new();
            for (i, (twice, s1, s2)) in edges.iter().enumerate() {
                let name = format!("e{i}");
                occ.push(if *s1 {
                    format!("{name}'")
                } else {
                    name.clone()
                });
                if *twice {
                    occ.push(if *s2 { format!("{name}'") } else { name });
                }
            }
            // deterministic Fisher-Yates from the drawn seed
            let mut state = shuffle | 1;
            for i in (1..occ.len()).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                occ.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let nfaces = nfaces.min(occ.len());
            let chunk = occ.len().div_ceil(nfaces);
            let faces: Vec<(String, Word)> = occ
                .chunks(chunk)
                .enumerate()
                .map(|(i, c)| (format!("F{i}"), parse_word(&c.join(" ")).unwrap()))
                .collect();
            CellComplex::build(faces).ok()
        })
}
