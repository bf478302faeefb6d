//! Byte-exact DOT and layout-JSON goldens for the fixture set.
//!
//! Regenerate with `UPDATE_GOLDENS=1 cargo test -p arglayer-core --test goldens`.

mod common;

use common::*;

#[test]
fn fixtures_match_goldens() {
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    if update {
        std::fs::create_dir_all(golden_dir()).unwrap();
    }
    for file in FIXTURES {
        for (name, rendered) in render_fixture(file) {
            let path = golden_dir().join(&name);
            if update {
                std::fs::write(&path, &rendered).unwrap();
                continue;
            }
            let expected = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(rendered, expected, "golden {name} differs");
        }
    }
}

#[test]
fn renderings_are_stable_across_runs() {
    for file in FIXTURES {
        assert_eq!(render_fixture(file), render_fixture(file));
    }
}

#[test]
fn corpus_round_trips() {
    use arglayer_core::formats::{parse, serialize};
    use arglayer_core::Format;

    let dir = fixture_dir().join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 50);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let f = parse(&text, Format::from_extension(&path).unwrap()).unwrap();
        // JSON keeps everything
        assert_eq!(
            parse(&serialize(&f, Format::Json), Format::Json).unwrap(),
            f
        );
        for format in [Format::Apx, Format::Tgf] {
            let back = parse(&serialize(&f, format), format).unwrap();
            assert_eq!(back.len(), f.len());
            assert_eq!(back.edges(), f.edges());
            for (a, b) in f.arguments().iter().zip(back.arguments()) {
                assert_eq!(a.id, b.id);
            }
        }
    }
}
