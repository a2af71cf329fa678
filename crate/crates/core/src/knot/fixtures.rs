use super::braid::{parse_braid, BraidWord};
use crate::error::{Error, Result};

const TABLE: &str = include_str!("../../data/fixtures.braid");

/// A named knot from the built-in table.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub braid: BraidWord,
}

/// Parse a fixture table in the `name = braid word` format.
pub fn parse_fixture_table(text: &str) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, word) = line
            .split_once('=')
            .ok_or_else(|| Error::Syntax(format!("fixture line {}: missing '='", lineno + 1)))?;
        out.push(Fixture { name: name.trim().to_string(), braid: parse_braid(word)? });
    }
    Ok(out)
}

/// The built-in table: unknot, trefoil, figure-eight, 5_2, 6_1, T(2,7).
pub fn fixtures() -> Vec<Fixture> {
    parse_fixture_table(TABLE).expect("built-in fixture table is valid")
}

/// Look up a fixture by name. A few common aliases are accepted.
pub fn fixture(name: &str) -> Result<Fixture> {
    let key = match name.to_ascii_lowercase().as_str() {
        "3_1" | "trefoil" => "trefoil",
        "4_1" | "figure8" | "figure-eight" | "figure_eight" => "figure-eight",
        "0_1" | "unknot" => "unknot",
        "7_1" | "t(2,7)" | "t27" => "T(2,7)",
        _ => name,
    }
    .to_string();
    fixtures().into_iter().find(|f| f.name == key).ok_or(Error::UnknownFixture(name.to_string()))
}
