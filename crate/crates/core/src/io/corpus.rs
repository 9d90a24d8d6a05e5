//! Built-in fixture quivers.

use crate::error::{Result, TauqError};
use crate::io::format::parse_quiver;
use crate::quiver::TranslationQuiver;

const FIXTURES: &[(&str, &str)] = &[
    ("EX421", include_str!("../../corpus/ex421.tq")),
    ("EX451", include_str!("../../corpus/ex451.tq")),
    ("EX452", include_str!("../../corpus/ex452.tq")),
    ("EX453", include_str!("../../corpus/ex453.tq")),
    ("EX454", include_str!("../../corpus/ex454.tq")),
    ("EX542", include_str!("../../corpus/ex542.tq")),
    ("A2", include_str!("../../corpus/a2.tq")),
    ("PT1", include_str!("../../corpus/pt1.tq")),
    ("LOOP2", include_str!("../../corpus/loop2.tq")),
    ("BADC", include_str!("../../corpus/badc.tq")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

/// Source text of a fixture, as accepted by [`parse_quiver`].
pub fn text(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, t)| *t)
        .ok_or_else(|| TauqError::UnknownFixture(name.to_owned()))
}

pub fn load(name: &str) -> Result<TranslationQuiver> {
    Ok(parse_quiver(text(name)?)?.lower()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads_and_validates() {
        for name in names() {
            let q = load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(q.name(), name);
        }
    }

    #[test]
    fn fixture_sizes() {
        let sizes: Vec<(usize, usize)> = ["EX421", "EX451", "EX452", "EX453", "EX454", "EX542"]
            .iter()
            .map(|n| {
                let q = load(n).unwrap();
                (q.len(), q.arrows().count())
            })
            .collect();
        assert_eq!(
            sizes,
            [(19, 32), (38, 64), (26, 40), (20, 34), (25, 37), (18, 25)]
        );
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(load("nope"), Err(TauqError::UnknownFixture(_))));
    }
}
