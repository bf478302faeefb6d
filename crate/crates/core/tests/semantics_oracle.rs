mod common;

use arglayer_core::grounded::{check_complete, grounded, lengths};
use arglayer_core::semantics::{enumerate, Semantics};
use arglayer_core::{Framework, Label, Length};
use common::*;

#[test]
fn grounded_matches_least_complete_labelling() {
    for (k, f) in corpus(11, 150, 10, 0.5).iter().enumerate() {
        let g = grounded(f);
        assert_eq!(g.labelling, brute_grounded(f), "framework #{k}");
        assert_eq!(
            g.labelling,
            characteristic_grounded(f, &vec![true; f.attack_count()]),
            "framework #{k}"
        );
        check_complete(f, &g.labelling).unwrap();
        assert_eq!(g.undec, g.labelling.undec_set());
    }
}

#[test]
fn length_recurrence_and_parity() {
    for f in corpus(12, 150, 12, 0.5) {
        let g = grounded(&f);
        for x in 0..f.len() {
            let len = g.length(x);
            match g.label(x) {
                Label::Undec => assert_eq!(len, Length::Infinite),
                Label::In => {
                    let n = len.finite().unwrap();
                    assert_eq!(n % 2, 0);
                    let expect = f
                        .attackers(x)
                        .map(|y| g.length(y).finite().unwrap() + 1)
                        .max()
                        .unwrap_or(0);
                    assert_eq!(n, expect);
                }
                Label::Out => {
                    let n = len.finite().unwrap();
                    assert_eq!(n % 2, 1);
                    let expect = f
                        .attackers(x)
                        .filter(|&y| g.label(y) == Label::In)
                        .map(|y| g.length(y).finite().unwrap() + 1)
                        .min()
                        .unwrap();
                    assert_eq!(n, expect);
                }
            }
            if let Some(n) = len.finite() {
                assert!((n as usize) < f.len().max(1));
                assert_eq!(n == 0, f.incoming(x).is_empty());
            }
        }
        assert_eq!(lengths(&f, &g.labelling).unwrap(), g.lengths);
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for (k, f) in corpus(13, 120, 9, 0.5).iter().enumerate() {
        let complete = enumerate(f, Semantics::Complete);
        let stable = enumerate(f, Semantics::Stable);
        let preferred = enumerate(f, Semantics::Preferred);
        assert_eq!(
            sorted(complete.solutions.clone()),
            sorted(brute_complete(f)),
            "#{k}"
        );
        assert_eq!(
            sorted(stable.solutions.clone()),
            sorted(brute_stable(f)),
            "#{k}"
        );
        assert_eq!(
            sorted(preferred.solutions.clone()),
            sorted(brute_preferred(f)),
            "#{k}"
        );

        for s in &stable.solutions {
            assert!(s.is_total());
            assert!(preferred.solutions.contains(s));
        }
        for p in &preferred.solutions {
            assert!(complete.solutions.contains(p));
        }
        // grounded is below every complete labelling
        let (gi, go) = to_masks(&grounded(f).labelling);
        for c in &complete.solutions {
            let (ci, co) = to_masks(c);
            assert_eq!(gi & !ci, 0);
            assert_eq!(go & !co, 0);
        }
        // deterministic, lexicographic by IN-set
        assert_eq!(enumerate(f, Semantics::Complete), complete);
        let keys: Vec<Vec<usize>> = complete.solutions.iter().map(|l| l.in_set()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn grounded_iteration_is_bounded() {
    // a long chain needs one round per IN argument
    let names: Vec<String> = (0..40).map(|i| format!("x{i}")).collect();
    let attacks: Vec<(&str, &str)> = names
        .windows(2)
        .map(|w| (w[0].as_str(), w[1].as_str()))
        .collect();
    let f = Framework::from_names(names.iter().map(String::as_str), attacks).unwrap();
    let g = grounded(&f);
    for x in 0..40 {
        assert_eq!(g.length(x), Length::Finite(x as u32));
    }
}
