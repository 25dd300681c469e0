//! The JSON game file: `{"n": 3, "v": {"1": 40, "1,2": 110, ...}}`.
//!
//! Coalition keys are ascending comma-separated 1-based player ids. Every nonempty
//! coalition must appear exactly once; the empty coalition is implied and must not.

use std::fmt;
use std::fmt::Write as _;

use coopgame::game::MAX_PLAYERS;
use coopgame::{Coalition, Game};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameFileError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid game file at line {line}, column {column}: {message}")]
    Invalid {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing coalition \"{0}\"")]
    MissingCoalition(String),
    #[error("coalition \"{key}\" names player {player} but n = {n}")]
    PlayerOutOfRange {
        key: String,
        player: usize,
        n: usize,
    },
    #[error("{0}")]
    Game(#[from] coopgame::Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(deserialize_with = "player_count")]
    n: usize,
    v: Worths,
}

struct Worths(Vec<(String, Coalition, i64)>);

fn player_count<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
    let num = serde_json::Number::deserialize(d)?;
    let text = num.to_string();
    if !is_integer_literal(&text) {
        return Err(de::Error::custom(format!(
            "n must be an integer, got {text}"
        )));
    }
    match num.as_u64() {
        Some(n) if (1..=MAX_PLAYERS as u64).contains(&n) => Ok(n as usize),
        _ => Err(de::Error::custom(format!(
            "n = {text} is outside 1..={MAX_PLAYERS}"
        ))),
    }
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parses a coalition key such as `"1,3"` into a mask. Ids must be strictly ascending.
pub fn parse_coalition_key(key: &str) -> Result<Coalition, String> {
    if key.is_empty() || key == "∅" {
        return Err(format!(
            "coalition key \"{key}\" is not allowed; the empty coalition is implied"
        ));
    }
    let mut mask = 0u32;
    let mut prev = 0usize;
    for part in key.split(',') {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed coalition key \"{key}\""));
        }
        let id: usize = part
            .parse()
            .map_err(|_| format!("malformed coalition key \"{key}\""))?;
        if id == 0 || id > MAX_PLAYERS {
            return Err(format!(
                "coalition key \"{key}\" has player id {id} outside 1..={MAX_PLAYERS}"
            ));
        }
        if id <= prev {
            return Err(format!(
                "coalition key \"{key}\" must list player ids in strictly ascending order"
            ));
        }
        prev = id;
        mask |= 1 << (id - 1);
    }
    Ok(Coalition(mask))
}

impl<'de> Deserialize<'de> for Worths {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct WorthVisitor;

        impl<'de> Visitor<'de> for WorthVisitor {
            type Value = Worths;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping coalition keys to integer worths")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Worths, A::Error> {
                let mut seen = std::collections::HashSet::new();
                let mut out = Vec::new();
                while let Some(key) = map.next_key::<String>()? {
                    let s = parse_coalition_key(&key).map_err(de::Error::custom)?;
                    if !seen.insert(s) {
                        return Err(de::Error::custom(format!("duplicate coalition \"{key}\"")));
                    }
                    let num: serde_json::Number = map.next_value()?;
                    let text = num.to_string();
                    if !is_integer_literal(&text) {
                        return Err(de::Error::custom(format!(
                            "worth of coalition \"{key}\" is not an integer: {text}"
                        )));
                    }
                    let worth = num.as_i64().ok_or_else(|| {
                        de::Error::custom(format!(
                            "worth of coalition \"{key}\" is outside the 64-bit range: {text}"
                        ))
                    })?;
                    out.push((key, s, worth));
                }
                Ok(Worths(out))
            }
        }

        d.deserialize_map(WorthVisitor)
    }
}

pub fn parse_game(text: &str) -> Result<Game, GameFileError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| {
        let (line, column) = (e.line(), e.column());
        // strip serde_json's own position suffix
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(at) => full[..at].to_string(),
            None => full,
        };
        if e.is_data() {
            GameFileError::Invalid {
                line,
                column,
                message,
            }
        } else {
            GameFileError::Syntax {
                line,
                column,
                message,
            }
        }
    })?;
    let n = raw.n;
    let mut worth = vec![None; 1 << n];
    worth[0] = Some(0);
    for (key, s, w) in raw.v.0 {
        if let Some(top) = s.members().last().filter(|&i| i >= n) {
            return Err(GameFileError::PlayerOutOfRange {
                key,
                player: top + 1,
                n,
            });
        }
        worth[s.0 as usize] = Some(w);
    }
    let mut table = Vec::with_capacity(worth.len());
    for (mask, w) in worth.into_iter().enumerate() {
        match w {
            Some(w) => table.push(w),
            None => {
                return Err(GameFileError::MissingCoalition(
                    Coalition(mask as u32).key(),
                ))
            }
        }
    }
    Ok(Game::new(n, table)?)
}

/// Renders `g` in the game file format, coalitions in ascending mask order.
pub fn write_game(g: &Game) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{\n  \"n\": {},\n  \"v\": {{", g.n());
    let last = (1usize << g.n()) - 1;
    for mask in 1..=last {
        let s = Coalition(mask as u32);
        let sep = if mask == last { "" } else { "," };
        let _ = writeln!(out, "    \"{}\": {}{}", s.key(), g.worth(s), sep);
    }
    out.push_str("  }\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use coopgame::fixtures::convex_210;

    #[test]
    fn round_trip() {
        let g = convex_210();
        assert_eq!(parse_game(&write_game(&g)).unwrap(), g);
    }

    #[test]
    fn keys() {
        assert_eq!(parse_coalition_key("1,3"), Ok(Coalition(0b101)));
        assert!(parse_coalition_key("2,1").is_err());
        assert!(parse_coalition_key("1,1").is_err());
        assert!(parse_coalition_key("0").is_err());
        assert!(parse_coalition_key(" 1").is_err());
        assert!(parse_coalition_key("∅").is_err());
        assert!(parse_coalition_key("1,,2").is_err());
    }

    #[test]
    fn missing_coalition_is_named() {
        let text = r#"{"n": 3, "v": {"1": 0, "2": 0, "3": 0, "1,2": 1, "2,3": 1, "1,2,3": 2}}"#;
        assert_eq!(
            parse_game(text),
            Err(GameFileError::MissingCoalition("1,3".into()))
        );
    }

    #[test]
    fn duplicate_and_type_errors() {
        let dup = r#"{"n": 1, "v": {"1": 0, "1": 2}}"#;
        match parse_game(dup) {
            Err(GameFileError::Invalid { line, message, .. }) => {
                assert_eq!(line, 1);
                assert!(message.contains("duplicate coalition \"1\""), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let frac = r#"{"n": 1, "v": {"1": 1.5}}"#;
        assert!(matches!(
            parse_game(frac),
            Err(GameFileError::Invalid { .. })
        ));
        let big = r#"{"n": 1, "v": {"1": 9223372036854775808}}"#;
        match parse_game(big) {
            Err(GameFileError::Invalid { message, .. }) => assert!(message.contains("64-bit")),
            other => panic!("{other:?}"),
        }
        let wide = r#"{"n": 17, "v": {}}"#;
        assert!(matches!(
            parse_game(wide),
            Err(GameFileError::Invalid { .. })
        ));
    }

    #[test]
    fn syntax_error_position() {
        let text = "{\"n\": 1,\n \"v\": {\"1\" 3}}";
        match parse_game(text) {
            Err(GameFileError::Syntax { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 1);
            }
            other => panic!("{other:?}"),
        }
    }
}
