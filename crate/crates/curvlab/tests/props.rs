//! Property-based checks of the group oracles and table invariants.

use proptest::prelude::*;

use curvlab::cayley::{build_word_metric, BuildOptions};
use curvlab::group::{parse_group_spec, parse_word, GroupOracle, Preset};
use curvlab::WordMetricTable;

/// 3x3 upper-triangular integer matrices: the independent Heisenberg oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct UpperTri {
    x: i64,
    y: i64,
    z: i64,
}

impl UpperTri {
    const IDENTITY: UpperTri = UpperTri { x: 0, y: 0, z: 0 };

    fn mul(self, rhs: UpperTri) -> UpperTri {
        UpperTri {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
            z: self.z + rhs.z + self.x * rhs.y,
        }
    }

    fn letter(byte: u8) -> UpperTri {
        let (x, y, z) = match byte {
            b'a' => (1, 0, 0),
            b'A' => (-1, 0, 0),
            b'b' => (0, 1, 0),
            b'B' => (0, -1, 0),
            b'c' => (0, 0, 1),
            b'C' => (0, 0, -1),
            _ => panic!("not a heisenberg letter"),
        };
        UpperTri { x, y, z }
    }

    fn from_word(word: &str) -> UpperTri {
        if word == "1" {
            return UpperTri::IDENTITY;
        }
        word.bytes()
            .fold(UpperTri::IDENTITY, |acc, b| acc.mul(UpperTri::letter(b)))
    }
}

fn word_strategy(alphabet: &'static [u8], max_len: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec((0..alphabet.len(), proptest::bool::ANY), 0..max_len).prop_map(
        move |pairs| {
            pairs
                .into_iter()
                .map(|(i, inv)| {
                    let b = alphabet[i];
                    (if inv { b.to_ascii_uppercase() } else { b }) as char
                })
                .collect()
        },
    )
}

fn oracle(spec: &str) -> GroupOracle {
    parse_group_spec(spec).unwrap()
}

fn invert_word(word: &str) -> String {
    word.chars()
        .rev()
        .map(|c| {
            if c.is_ascii_uppercase() {
                c.to_ascii_lowercase()
            } else {
                c.to_ascii_uppercase()
            }
        })
        .collect()
}

proptest! {
    #[test]
    fn free_round_trip(word in word_strategy(b"ab", 24)) {
        let oracle = oracle("free:2");
        let combined = format!("{word}{}", invert_word(&word));
        prop_assert!(oracle.normalize_str(&combined).unwrap().is_identity());
    }

    #[test]
    fn abelian_round_trip(word in word_strategy(b"abc", 24)) {
        let oracle = oracle("abelian:3");
        let combined = format!("{word}{}", invert_word(&word));
        prop_assert!(oracle.normalize_str(&combined).unwrap().is_identity());
    }

    #[test]
    fn zxz2_round_trip(word in word_strategy(b"abt", 24)) {
        let oracle = oracle("zxz2");
        let combined = format!("{word}{}", invert_word(&word));
        prop_assert!(oracle.normalize_str(&combined).unwrap().is_identity());
    }

    #[test]
    fn heisenberg_round_trip(word in word_strategy(b"abc", 24)) {
        let oracle = oracle("heisenberg");
        let combined = format!("{word}{}", invert_word(&word));
        prop_assert!(oracle.normalize_str(&combined).unwrap().is_identity());
    }

    #[test]
    fn normalize_is_idempotent_everywhere(word in word_strategy(b"ab", 20), spec in prop_oneof![
        Just("free:2"), Just("abelian:2"), Just("zxz2"), Just("heisenberg")
    ]) {
        let oracle = oracle(spec);
        let once = oracle.normalize_str(&word).unwrap();
        let twice = oracle.normalize_str(&once.to_string()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn inverse_composes_to_identity_on_elements(word in word_strategy(b"abt", 20)) {
        let oracle = oracle("zxz2");
        let g = oracle.normalize_str(&word).unwrap();
        let g_inv = oracle.invert(&g);
        prop_assert!(oracle.multiply(&g, &g_inv).is_identity());
        prop_assert!(oracle.multiply(&g_inv, &g).is_identity());
    }

    #[test]
    fn multiplication_is_associative(
        u in word_strategy(b"abt", 12),
        v in word_strategy(b"abt", 12),
        w in word_strategy(b"abt", 12),
    ) {
        let oracle = oracle("zxz2");
        let (gu, gv, gw) = (
            oracle.normalize_str(&u).unwrap(),
            oracle.normalize_str(&v).unwrap(),
            oracle.normalize_str(&w).unwrap(),
        );
        prop_assert_eq!(
            oracle.multiply(&oracle.multiply(&gu, &gv), &gw),
            oracle.multiply(&gu, &oracle.multiply(&gv, &gw))
        );
    }

    /// Canonicity: inserting a relator or a cancelling pair anywhere does not
    /// change the normal form.
    #[test]
    fn canonicity_under_identity_insertion(
        word in word_strategy(b"ab", 16),
        cut in 0usize..17,
        which in 0usize..4,
        spec in prop_oneof![Just("free:2"), Just("abelian:2"), Just("zxz2"), Just("heisenberg")],
    ) {
        let oracle = oracle(spec);
        let identity_words: &[&str] = match spec {
            "free:2" => &["aA", "Aa", "bB", "Bb"],
            "abelian:2" => &["aA", "bB", "abAB", "baBA"],
            // ab = ba, so abAB spells the identity here too.
            "zxz2" => &["aA", "tT", "abAB", "baBA"],
            // c is the central commutator: abAB = c and c commutes.
            "heisenberg" => &["aA", "cC", "abABC", "caCA"],
            _ => unreachable!(),
        };
        let cut = cut.min(word.len());
        let inserted = format!("{}{}{}", &word[..cut], identity_words[which], &word[cut..]);
        prop_assert_eq!(
            oracle.normalize_str(&word).unwrap(),
            oracle.normalize_str(&inserted).unwrap()
        );
    }

    #[test]
    fn heisenberg_matches_matrix_oracle(word in word_strategy(b"abc", 20)) {
        let oracle = oracle("heisenberg");
        let elem = oracle.normalize_str(&word).unwrap();
        prop_assert_eq!(
            UpperTri::from_word(&word),
            UpperTri::from_word(&elem.to_string())
        );
    }

    /// Z * Z^2 normal-form shape: within an abelian syllable all a-letters
    /// precede all b-letters, runs are sign-uniform, and no inverse pair or
    /// empty syllable survives.
    #[test]
    fn zxz2_normal_form_shape(word in word_strategy(b"abt", 24)) {
        let oracle = oracle("zxz2");
        let nf = oracle.normalize_str(&word).unwrap().to_string();
        let nf = if nf == "1" { String::new() } else { nf };
        for pair in ["aA", "Aa", "bB", "Bb", "tT", "Tt"] {
            prop_assert!(!nf.contains(pair), "unreduced pair in {nf}");
        }
        // a-exponent first: a-letters never follow b-letters inside a syllable.
        for pattern in ["ba", "bA", "Ba", "BA"] {
            prop_assert!(!nf.contains(pattern), "b before a in {nf}");
        }
    }

    #[test]
    fn parse_word_rejects_non_letters(byte in 0u8..=255) {
        prop_assume!(!byte.is_ascii_alphabetic());
        let text = format!("a{}b", byte as char);
        prop_assert!(parse_word(&text).is_err());
    }
}

fn small_table(preset: Preset, radius: u32) -> WordMetricTable {
    let (oracle, gens) = preset.oracle_and_gens().unwrap();
    build_word_metric(&oracle, &gens, radius, &BuildOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// |g| = |g^-1| across the ball.
    #[test]
    fn length_is_inverse_invariant(seed in 0u64..1000) {
        let table = small_table(Preset::SGamma, 4);
        let ids = table.ball_ids(4);
        let id = ids[(seed as usize) % ids.len()];
        let g = table.element(id);
        let g_inv = table.oracle().invert(&g);
        prop_assert_eq!(
            table.word_length(&g).unwrap(),
            table.word_length(&g_inv).unwrap()
        );
    }

    /// Triangle inequality at generator scale: |sg| - |g| is in {-1, 0, +1}
    /// (the classifier would panic otherwise), and for the named presets
    /// the 0 case never occurs.
    #[test]
    fn one_letter_parity(seed in 0u64..1000) {
        for preset in [Preset::SAlpha, Preset::SBeta, Preset::SGamma, Preset::SNeg] {
            let table = small_table(preset, 3);
            let ids = table.ball_ids(2);
            let id = ids[(seed as usize) % ids.len()];
            let g = table.element(id);
            if g.is_identity() {
                continue;
            }
            for s in table.gens().members() {
                let delta = table.classify_left_mult(s, &g).unwrap();
                prop_assert_ne!(delta.value(), 0, "unexpected length-preserving letter");
            }
        }
    }
}
