//! Independent oracles used by the integration and acceptance tests.
//!
//! Nothing here calls into the engine's semantic code: labellings are found
//! by exhaustive enumeration over bitmasks, and the grounded extension by
//! iterating the characteristic function on argument sets.
#![allow(dead_code)]

use arglayer_core::{Annotation, Format, Framework, FrameworkBuilder, Label, Labelling};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random framework with `n` arguments named `a0..`, each ordered pair
/// (self-attacks included) present with probability `density`.
pub fn random_framework(rng: &mut impl Rng, n: usize, density: f64) -> Framework {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    let mut attacks = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if rng.gen_bool(density) {
                attacks.push((names[s].as_str(), names[t].as_str()));
            }
        }
    }
    Framework::from_names(names.iter().map(String::as_str), attacks).unwrap()
}

/// `count` frameworks with `|V| <= max_n` and density in `[0, max_density]`.
pub fn corpus(seed: u64, count: usize, max_n: usize, max_density: f64) -> Vec<Framework> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_n);
            let density = rng.gen_range(0.0..=max_density);
            random_framework(&mut rng, n, density)
        })
        .collect()
}

/// Attacker bitmask per argument (frameworks up to 64 arguments).
pub fn attacker_masks(f: &Framework, active: &[bool]) -> Vec<u64> {
    let mut masks = vec![0u64; f.len()];
    for (e, &(s, t)) in f.edges().iter().enumerate() {
        if active[e] {
            masks[t] |= 1 << s;
        }
    }
    masks
}

/// `(in, out)` bitmasks of a labelling.
pub fn to_masks(l: &Labelling) -> (u64, u64) {
    let mut i = 0;
    let mut o = 0;
    for (x, lab) in l.labels().iter().enumerate() {
        match lab {
            Label::In => i |= 1 << x,
            Label::Out => o |= 1 << x,
            Label::Undec => {}
        }
    }
    (i, o)
}

pub fn from_masks(n: usize, i: u64, o: u64) -> Labelling {
    Labelling::new(
        (0..n)
            .map(|x| {
                if i >> x & 1 == 1 {
                    Label::In
                } else if o >> x & 1 == 1 {
                    Label::Out
                } else {
                    Label::Undec
                }
            })
            .collect(),
    )
}

fn is_complete(att: &[u64], i: u64, o: u64) -> bool {
    (0..att.len()).all(|x| {
        let a = att[x];
        let all_out = a & !o == 0;
        let some_in = a & i != 0;
        match (i >> x & 1, o >> x & 1) {
            (1, _) => all_out,
            (_, 1) => some_in,
            _ => !all_out && !some_in,
        }
    })
}

/// All complete labellings by enumerating the 3^n label assignments.
pub fn brute_complete(f: &Framework) -> Vec<Labelling> {
    let n = f.len();
    assert!(n <= 16);
    let att = attacker_masks(f, &vec![true; f.attack_count()]);
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let (mut i, mut o) = (0u64, 0u64);
        for x in 0..n {
            match c % 3 {
                0 => i |= 1 << x,
                1 => o |= 1 << x,
                _ => {}
            }
            c /= 3;
        }
        if is_complete(&att, i, o) {
            out.push(from_masks(n, i, o));
        }
    }
    out
}

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// The complete labelling whose IN-set is contained in every other's.
pub fn brute_grounded(f: &Framework) -> Labelling {
    let all = brute_complete(f);
    let masks: Vec<(u64, u64)> = all.iter().map(to_masks).collect();
    let least: Vec<usize> = (0..all.len())
        .filter(|&k| masks.iter().all(|m| subset(masks[k].0, m.0)))
        .collect();
    assert_eq!(least.len(), 1, "grounded labelling must be unique");
    all[least[0]].clone()
}

pub fn brute_stable(f: &Framework) -> Vec<Labelling> {
    brute_complete(f)
        .into_iter()
        .filter(|l| l.is_total())
        .collect()
}

pub fn brute_preferred(f: &Framework) -> Vec<Labelling> {
    let all = brute_complete(f);
    let masks: Vec<u64> = all.iter().map(|l| to_masks(l).0).collect();
    all.iter()
        .enumerate()
        .filter(|(k, _)| {
            !masks
                .iter()
                .any(|&m| m != masks[*k] && subset(masks[*k], m))
        })
        .map(|(_, l)| l.clone())
        .collect()
}

/// Sorted copy for order-insensitive comparison.
pub fn sorted(mut ls: Vec<Labelling>) -> Vec<Vec<Label>> {
    let mut v: Vec<Vec<Label>> = ls.drain(..).map(|l| l.labels().to_vec()).collect();
    v.sort_by_key(|l| format!("{l:?}"));
    v
}

/// Grounded labelling from the characteristic function
/// `F(S) = { x : every attacker of x is attacked by S }`, iterated from the
/// empty set; OUT = attacked by the least fixpoint.
pub fn characteristic_grounded(f: &Framework, active: &[bool]) -> Labelling {
    let n = f.len();
    let att = attacker_masks(f, active);
    let attacked_by = |s: u64| -> u64 {
        (0..n)
            .filter(|&x| att[x] & s != 0)
            .fold(0u64, |m, x| m | 1 << x)
    };
    let mut s = 0u64;
    loop {
        let defeated = attacked_by(s);
        let next = (0..n)
            .filter(|&x| subset(att[x], defeated))
            .fold(0u64, |m, x| m | 1 << x);
        if next == s {
            break;
        }
        s = next;
    }
    from_masks(n, s, attacked_by(s))
}

/// All ⊆-minimal subsets of `candidates` whose suspension makes the
/// characteristic-function grounded labelling total and equal to `target`.
pub fn brute_critical_sets(
    f: &Framework,
    candidates: &[usize],
    target: &Labelling,
) -> Vec<Vec<usize>> {
    assert!(candidates.len() <= 20);
    let mut resolving: Vec<u32> = Vec::new();
    for bits in 0u32..(1 << candidates.len()) {
        let mut active = vec![true; f.attack_count()];
        for (k, &e) in candidates.iter().enumerate() {
            if bits >> k & 1 == 1 {
                active[e] = false;
            }
        }
        let g = characteristic_grounded(f, &active);
        if g.is_total() && g == *target {
            resolving.push(bits);
        }
    }
    let minimal: Vec<u32> = resolving
        .iter()
        .copied()
        .filter(|&b| !resolving.iter().any(|&o| o != b && o & !b == 0))
        .collect();
    let mut out: Vec<Vec<usize>> = minimal
        .into_iter()
        .map(|b| {
            (0..candidates.len())
                .filter(|k| b >> k & 1 == 1)
                .map(|k| candidates[k])
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

// ---------------------------------------------------------------------------
// Fixtures and goldens

pub const FIXTURES: &[&str] = &[
    "chain.apx",
    "mutual.tgf",
    "cycle3.apx",
    "cycle4.apx",
    "f4.json",
];

/// `crates/core/tests`, also when this module is included from another crate.
pub fn core_tests_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests")
}

pub fn fixture_dir() -> std::path::PathBuf {
    core_tests_dir().join("fixtures")
}

pub fn golden_dir() -> std::path::PathBuf {
    core_tests_dir().join("goldens")
}

pub fn load_fixture(file: &str) -> Framework {
    let path = fixture_dir().join(file);
    let text = std::fs::read_to_string(&path).unwrap();
    let format = Format::from_extension(&path).unwrap();
    arglayer_core::formats::parse(&text, format).unwrap()
}

/// `(golden file name, rendered bytes)` for every view of a fixture: the
/// base view, and solution 0 with its first critical set when one exists.
pub fn render_fixture(file: &str) -> Vec<(String, String)> {
    use arglayer_core::layout::{export_dot, export_layout_json, View};
    use arglayer_core::{grounded::grounded, semantics, CancelToken, CandidateMode, SearchBounds};

    let stem = file.split('.').next().unwrap();
    let f = load_fixture(file);
    let mut out = Vec::new();
    let base = View::base(&f);
    out.push((format!("{stem}.dot"), export_dot(&f, &base)));
    out.push((format!("{stem}.layout.json"), export_layout_json(&f, &base)));

    let stable = semantics::enumerate(&f, semantics::Semantics::Stable);
    if let Some(target) = stable.solutions.first() {
        let g = grounded(&f);
        let search = arglayer_core::critical_attack_sets(
            &f,
            &g,
            target,
            CandidateMode::Failing,
            SearchBounds::default(),
            &CancelToken::new(),
        )
        .unwrap();
        if let Some(delta) = search.sets.first() {
            let view = View::resolution(&f, &g, target, delta).unwrap();
            out.push((format!("{stem}.s0d0.dot"), export_dot(&f, &view)));
            out.push((
                format!("{stem}.s0d0.layout.json"),
                export_layout_json(&f, &view),
            ));
        }
    }
    out
}

/// What a format is expected to keep of the annotations.
pub fn expected_after(f: &Framework, format: Format) -> Framework {
    let mut b = FrameworkBuilder::new();
    for a in f.arguments() {
        let ann = match format {
            Format::Json => a.annotation.clone(),
            Format::Apx => None,
            Format::Tgf => a
                .annotation
                .as_ref()
                .filter(|ann| !ann.text.is_empty())
                .map(|ann| Annotation {
                    text: ann.text.clone(),
                    url: None,
                }),
        };
        b.add_argument(a.id.clone(), ann).unwrap();
    }
    for att in f.attacks() {
        b.add_attack(&att.source, &att.target).unwrap();
    }
    b.build()
}
