//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p curvlab --test acceptance -- --nocapture`.
//!
//! All curvature comparisons are exact rational arithmetic with tolerance
//! zero. The shared tables are built once per process.

use std::sync::LazyLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use curvlab::cayley::{build_word_metric, load_table, save_table, BuildOptions};
use curvlab::curvature::{curvature_census, kappa, kappa_k};
use curvlab::density::{
    density_report, mediant_lower_bound, p_membership, q_membership, r_membership,
};
use curvlab::group::{parse_group_spec, GroupElement, Preset};
use curvlab::hyperbolicity::{four_point_delta, kappa_k_sign_scan, witness_defect, DeltaMode};
use curvlab::{Rational, WordMetricTable};

fn build_preset(preset: Preset, radius: u32) -> WordMetricTable {
    let (oracle, gens) = preset.oracle_and_gens().unwrap();
    build_word_metric(&oracle, &gens, radius, &BuildOptions::default()).unwrap()
}

fn build_std(spec: &str, radius: u32) -> WordMetricTable {
    let oracle = parse_group_spec(spec).unwrap();
    let gens = Preset::Std.instantiate(&oracle).unwrap();
    build_word_metric(&oracle, &gens, radius, &BuildOptions::default()).unwrap()
}

static SALPHA_R8: LazyLock<WordMetricTable> = LazyLock::new(|| build_preset(Preset::SAlpha, 8));
static SBETA_R9: LazyLock<WordMetricTable> = LazyLock::new(|| build_preset(Preset::SBeta, 9));
static SGAMMA_R11: LazyLock<WordMetricTable> = LazyLock::new(|| build_preset(Preset::SGamma, 11));
static SNEG_R10: LazyLock<WordMetricTable> = LazyLock::new(|| build_preset(Preset::SNeg, 10));
static AB2_R6: LazyLock<WordMetricTable> = LazyLock::new(|| build_std("abelian:2", 6));

fn pass(n: u32, what: &str) {
    println!("ACCEPTANCE {n:02} {what}: PASS");
}

/// 1. S_alpha exact law: kappa(g) = -1/|g| for every g in B_8 minus 1.
#[test]
fn criterion_01_salpha_exact_law() {
    let table = &*SALPHA_R8;
    assert_eq!(table.ball_size(8), 13_121);
    for &id in table.ball_ids(8).iter().skip(1) {
        let g = table.element(id);
        let n = table.id_length(id) as i64;
        assert_eq!(
            kappa(table, &g).unwrap(),
            Rational::new(-1, n),
            "kappa({g}) != -1/{n}"
        );
    }
    pass(1, "S_alpha kappa = -1/|g| on B_8");
}

/// 2. Abelian flatness: kappa_k = 0 on B_6 \ {1} of Z^2 for k in {1, 2, 3}.
#[test]
fn criterion_02_abelian_flatness() {
    let table = &*AB2_R6;
    for &id in table.ball_ids(6).iter().skip(1) {
        let g = table.element(id);
        for k in 1..=3 {
            assert_eq!(
                kappa_k(table, k, &g).unwrap(),
                Rational::from_integer(0),
                "kappa_{k}({g}) != 0"
            );
        }
    }
    pass(2, "Z^2 kappa_k = 0 on B_6 for k in 1..3");
}

/// 3. S_beta negativity on B_7, with the -2/(3|g|) bound outside
///    {ba, (ba)^-1} and the generating set itself.
#[test]
fn criterion_03_sbeta_negative() {
    let table = &*SBETA_R9;
    let oracle = table.oracle().clone();
    let ba = oracle.normalize_str("ba").unwrap();
    let ba_inv = oracle.normalize_str("BA").unwrap();
    let zero = Rational::from_integer(0);
    for &id in table.ball_ids(7).iter().skip(1) {
        let g = table.element(id);
        let n = table.id_length(id) as i64;
        let value = kappa(table, &g).unwrap();
        assert!(value < zero, "kappa({g}) = {value} not negative");
        let exempt = g == ba || g == ba_inv || table.gens().members().contains(&g);
        if !exempt {
            assert!(
                value <= Rational::new(-2, 3 * n),
                "kappa({g}) = {value} above -2/(3*{n})"
            );
        }
    }
    pass(3, "S_beta kappa < 0 on B_7 with the -2/(3|g|) bound");
}

/// 4. S_gamma: Q-members of lengths 7..9 have kappa = 0 (zero family) and
///    R-members of lengths 5..9 have kappa < 0 (negative family).
#[test]
fn criterion_04_sgamma_zero_and_negative_families() {
    let table = &*SGAMMA_R11;
    let zero = Rational::from_integer(0);
    let mut q_seen = 0u64;
    for n in 7..=9 {
        for &id in table.sphere_ids(n) {
            let g = table.element(id);
            if q_membership(table, &g).unwrap() {
                q_seen += 1;
                assert_eq!(kappa(table, &g).unwrap(), zero, "kappa({g}) != 0 on Q");
            }
        }
    }
    assert!(q_seen >= 2, "expected at least the two Q_7 points");
    let mut r_seen = 0u64;
    for n in 5..=9 {
        for &id in table.sphere_ids(n) {
            let g = table.element(id);
            if r_membership(table, &g).unwrap() {
                r_seen += 1;
                assert!(kappa(table, &g).unwrap() < zero, "kappa({g}) not < 0 on R");
            }
        }
    }
    assert!(r_seen >= 2, "expected at least a^5 and a^-5 in R_5");
    pass(4, "S_gamma Q-family kappa = 0 and R-family kappa < 0");
}

/// 5. S_gamma density identities: |Q_n| = |P_{n-6}|, |R_n| = |P_{n-2}|,
///    |P_n|/|S_n| >= 1/36, and zero-kappa count >= |Q_n| per sphere.
#[test]
fn criterion_05_sgamma_density_identities() {
    let table = &*SGAMMA_R11;
    let report = density_report(table, 9, 1).unwrap();
    for n in 7..=9u32 {
        assert_eq!(
            report.sphere_row(n).q_count,
            report.sphere_row(n - 6).p_count,
            "|Q_{n}| != |P_{}|",
            n - 6
        );
    }
    for n in 5..=9u32 {
        assert_eq!(
            report.sphere_row(n).r_count,
            report.sphere_row(n - 2).p_count,
            "|R_{n}| != |P_{}|",
            n - 2
        );
    }
    let bound = Rational::new(1, 36);
    for n in 3..=9u32 {
        let row = report.sphere_row(n);
        assert!(
            Rational::new(row.p_count as i64, row.sphere_size as i64) >= bound,
            "|P_{n}|/|S_{n}| below 1/36"
        );
    }
    for row in &report.per_sphere[1..] {
        assert!(
            row.zero >= row.q_count,
            "zero-kappa count below |Q_{}|",
            row.n
        );
        assert!(
            row.negative >= row.r_count,
            "negative-kappa count below |R_{}|",
            row.n
        );
    }
    // Lemma-style mediant consistency of the per-sphere zero fractions with
    // positive Q contributions (spheres 7..9 all have q_count > 0 here).
    let pairs: Vec<(i64, i64)> = (7..=9)
        .map(|n| {
            let row = report.sphere_row(n);
            (row.zero as i64, row.sphere_size as i64)
        })
        .collect();
    let min = mediant_lower_bound(&pairs).unwrap();
    let total_zero: i64 = pairs.iter().map(|p| p.0).sum();
    let total_size: i64 = pairs.iter().map(|p| p.1).sum();
    assert!(Rational::new(total_zero, total_size) >= min);
    pass(
        5,
        "S_gamma |Q_n| = |P_n-6|, |R_n| = |P_n-2|, |P_n|/|S_n| >= 1/36",
    );
}

/// 6. Z * Z^2 negativity: kappa(g) <= -2/(3|g|) < 0 on B_8 \ {1} of S_neg.
#[test]
fn criterion_06_zxz2_negative() {
    let table = &*SNEG_R10;
    for &id in table.ball_ids(8).iter().skip(1) {
        let g = table.element(id);
        let n = table.id_length(id) as i64;
        let value = kappa(table, &g).unwrap();
        assert!(
            value <= Rational::new(-2, 3 * n),
            "kappa({g}) = {value} above -2/(3*{n})"
        );
    }
    pass(6, "S_neg kappa <= -2/(3|g|) on B_8");
}

/// 7. Hyperbolicity baseline: delta = 0 exhaustively on B_3 of (F_2,
///    S_alpha); delta >= 1 on B_2 of Z^2 with a reproducible witness.
#[test]
fn criterion_07_four_point_delta_baseline() {
    let tree = four_point_delta(&SALPHA_R8, 3, DeltaMode::Exhaustive).unwrap();
    assert_eq!(tree.delta.doubled, 0, "free group ball not 0-hyperbolic");

    let flat = four_point_delta(&AB2_R6, 2, DeltaMode::Exhaustive).unwrap();
    assert!(flat.delta.doubled >= 2, "Z^2 ball delta below 1");
    let replay = witness_defect(&AB2_R6, &flat.witness).unwrap();
    assert_eq!(replay, flat.delta, "witness does not reproduce the defect");
    pass(
        7,
        "four-point delta: 0 on the tree ball, >= 1 on Z^2 with witness",
    );
}

/// 8. Large-radius negativity, empirically: for (F_2, S_alpha) the
///    kappa_k sign scan over (4k, 4k+2] reports no non-negative witnesses at
///    k = 1, 2, 3, using the reduced-length fast path beyond the table radius.
#[test]
fn criterion_08_salpha_sign_scan() {
    let table = &*SALPHA_R8;
    for k in 1..=3u32 {
        let report = kappa_k_sign_scan(table, k, 4 * k, 4 * k + 2).unwrap();
        let expected: u64 = (4 * k + 1..=4 * k + 2).map(|n| 4 * 3u64.pow(n - 1)).sum();
        assert_eq!(report.scanned, expected, "k = {k} scan incomplete");
        assert_eq!(report.negative, report.scanned, "k = {k} not all negative");
        assert!(
            report.witnesses.is_empty(),
            "k = {k} has non-negative witnesses"
        );
    }
    pass(8, "S_alpha kappa_k < 0 on (4k, 4k+2] for k in 1..3");
}

/// 9. Structural lemma suite on B_8 of (F_2, S_gamma): parity, the
///    first-letter dichotomy, and the double-a exclusion implications.
#[test]
fn criterion_09_sgamma_structural_lemmas() {
    let table = &*SGAMMA_R11;
    let gens = table.gens().clone();
    let oracle = table.oracle().clone();

    let member_index = |name: &str| gens.position(&oracle.normalize_str(name).unwrap()).unwrap();
    let ia = member_index("a");
    let ia_inv = member_index("A");
    let ib = member_index("b");
    let ib_inv = member_index("B");

    let starts_of = |g: &GroupElement| -> Vec<usize> {
        table
            .start_letters(g)
            .unwrap()
            .iter()
            .map(|s| gens.position(s).unwrap())
            .collect()
    };

    let mut checked = 0u64;
    for n in 1..=8u32 {
        for &id in table.sphere_ids(n) {
            let g = table.element(id);

            // Parity: one-letter multiplication never preserves length.
            for s in gens.members() {
                assert_ne!(
                    table.classify_left_mult(s, &g).unwrap().value(),
                    0,
                    "length-preserving letter at {g}"
                );
            }

            // First-letter dichotomy: all start letters in one class, all
            // end letters in one class.
            let starts = starts_of(&g);
            let start_tags: Vec<u8> = starts
                .iter()
                .map(|&i| gens.partition_tag(i).unwrap())
                .collect();
            assert!(
                start_tags.windows(2).all(|w| w[0] == w[1]),
                "mixed start classes at {g}: {start_tags:?}"
            );
            let ends: Vec<usize> = table
                .end_letters(&g)
                .unwrap()
                .iter()
                .map(|s| gens.position(s).unwrap())
                .collect();
            let end_tags: Vec<u8> = ends
                .iter()
                .map(|&i| gens.partition_tag(i).unwrap())
                .collect();
            assert!(
                end_tags.windows(2).all(|w| w[0] == w[1]),
                "mixed end classes at {g}: {end_tags:?}"
            );

            // Double-a exclusions. For (f, f_inv_letter, excluded):
            //   a  in starts(g), a  in starts(a^-1 g)  => b^-1 not in starts(g)
            //   a^-1 in starts(g), a^-1 in starts(a g) => b   not in starts(g)
            for (f, excluded) in [(ia, ib_inv), (ia_inv, ib)] {
                if starts.contains(&f) {
                    let f_inv = gens.member(gens.inverse_of(f));
                    let rem = oracle.multiply(f_inv, &g);
                    if rem.is_identity() {
                        continue;
                    }
                    let rem_starts = starts_of(&rem);
                    if rem_starts.contains(&f) {
                        assert!(
                            !starts.contains(&excluded),
                            "double-a exclusion fails at {g}"
                        );
                    }
                }
            }

            // Triple-prefix exclusions:
            //   b in starts, a in starts(b^-1 g), a in starts(a^-1 b^-1 g)
            //     => a^-1 not in starts(g)
            //   b^-1 in starts, a^-1 in starts(b g), a^-1 in starts(a b g)
            //     => a not in starts(g)
            for (first, second, excluded) in [(ib, ia, ia_inv), (ib_inv, ia_inv, ia)] {
                if starts.contains(&first) {
                    let first_inv = gens.member(gens.inverse_of(first));
                    let rem1 = oracle.multiply(first_inv, &g);
                    if rem1.is_identity() {
                        continue;
                    }
                    let rem1_starts = starts_of(&rem1);
                    if rem1_starts.contains(&second) {
                        let second_inv = gens.member(gens.inverse_of(second));
                        let rem2 = oracle.multiply(second_inv, &rem1);
                        if rem2.is_identity() {
                            continue;
                        }
                        let rem2_starts = starts_of(&rem2);
                        if rem2_starts.contains(&second) {
                            assert!(
                                !starts.contains(&excluded),
                                "b-double-a exclusion fails at {g}"
                            );
                        }
                    }
                }
            }
            checked += 1;
        }
    }
    assert_eq!(checked, table.ball_size(8) - 1);
    pass(9, "S_gamma parity, dichotomy, and exclusion lemmas on B_8");
}

/// 10. Infrastructure: save/load round-trip, thread-count determinism, and
///     the oracle self-checks on 10^4 random words.
#[test]
fn criterion_10_infrastructure() {
    // Save/load round-trip identity on an S_gamma radius-6 table.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sgamma-r6.tbl");
    let table = build_preset(Preset::SGamma, 6);
    save_table(&table, &path).unwrap();
    let loaded = load_table(&path).unwrap();
    assert_eq!(
        loaded.canonical_serialization(),
        table.canonical_serialization()
    );

    // Determinism across 1 and 4 worker threads, byte-identical.
    let (oracle, gens) = Preset::SGamma.oracle_and_gens().unwrap();
    let one = build_word_metric(
        &oracle,
        &gens,
        6,
        &BuildOptions {
            threads: 1,
            ..BuildOptions::default()
        },
    )
    .unwrap();
    let four = build_word_metric(
        &oracle,
        &gens,
        6,
        &BuildOptions {
            threads: 4,
            ..BuildOptions::default()
        },
    )
    .unwrap();
    assert_eq!(
        one.canonical_serialization(),
        four.canonical_serialization()
    );
    assert_eq!(
        one.canonical_serialization(),
        table.canonical_serialization()
    );

    // Oracle round-trip on 10^4 random words across all four groups.
    let specs = ["free:2", "abelian:3", "zxz2", "heisenberg"];
    let alphabets: [&[u8]; 4] = [b"ab", b"abc", b"abt", b"abc"];
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (spec, alphabet) in specs.iter().zip(alphabets) {
        let oracle = parse_group_spec(spec).unwrap();
        for _ in 0..2_500 {
            let len = rng.random_range(0..24);
            let word: String = (0..len)
                .map(|_| {
                    let b = alphabet[rng.random_range(0..alphabet.len())];
                    let b = if rng.random_bool(0.5) {
                        b.to_ascii_uppercase()
                    } else {
                        b
                    };
                    b as char
                })
                .collect();
            let g = oracle.normalize_str(&word).unwrap();
            let g_inv = oracle.invert(&g);
            assert!(oracle.multiply(&g, &g_inv).is_identity(), "{spec}: {word}");
            let renorm = oracle.normalize_str(&g.to_string()).unwrap();
            assert_eq!(g, renorm, "{spec}: normalize not idempotent on {word}");
        }
    }

    // Heisenberg versus the 3x3 upper-triangular matrix representation on
    // 10^4 random words (independent cross-check).
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    struct UpperTri {
        x: i64,
        y: i64,
        z: i64,
    }
    impl UpperTri {
        const ONE: UpperTri = UpperTri { x: 0, y: 0, z: 0 };
        fn mul(self, r: UpperTri) -> UpperTri {
            UpperTri {
                x: self.x + r.x,
                y: self.y + r.y,
                z: self.z + r.z + self.x * r.y,
            }
        }
        fn from_word(word: &str) -> UpperTri {
            if word == "1" {
                return UpperTri::ONE;
            }
            word.bytes().fold(UpperTri::ONE, |acc, b| {
                let (x, y, z) = match b {
                    b'a' => (1, 0, 0),
                    b'A' => (-1, 0, 0),
                    b'b' => (0, 1, 0),
                    b'B' => (0, -1, 0),
                    b'c' => (0, 0, 1),
                    b'C' => (0, 0, -1),
                    _ => unreachable!(),
                };
                acc.mul(UpperTri { x, y, z })
            })
        }
    }
    let heis = parse_group_spec("heisenberg").unwrap();
    for _ in 0..10_000 {
        let len = rng.random_range(0..20);
        let word: String = (0..len)
            .map(|_| {
                let b = b"abc"[rng.random_range(0..3)];
                let b = if rng.random_bool(0.5) {
                    b.to_ascii_uppercase()
                } else {
                    b
                };
                b as char
            })
            .collect();
        let elem = heis.normalize_str(&word).unwrap();
        assert_eq!(
            UpperTri::from_word(&word),
            UpperTri::from_word(&elem.to_string()),
            "matrix mismatch on {word}"
        );
    }
    pass(
        10,
        "persistence round-trip, determinism, oracle cross-checks",
    );
}

/// Census spot check riding on the big table.
#[test]
fn census_example_sgamma_sphere_7() {
    let report = curvature_census(&SGAMMA_R11, 7, 1).unwrap();
    assert!(report.zero >= 2, "Q_7 contributes at least two zeros");
    assert_eq!(
        report.negative + report.zero + report.positive,
        report.sphere_size
    );
    // Identity excluded: spot-check p_membership examples on this table.
    let oracle = SGAMMA_R11.oracle().clone();
    assert!(p_membership(&SGAMMA_R11, &oracle.normalize_str("a").unwrap()).unwrap());
    assert!(p_membership(&SGAMMA_R11, &oracle.normalize_str("aa").unwrap()).unwrap());
    assert!(!p_membership(&SGAMMA_R11, &oracle.normalize_str("b").unwrap()).unwrap());
}
