//! Representability limits and the `key = integer` limits file.

use std::str::FromStr;

/// Bounds that decide when a composite is too large to represent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_int_digits: u32,
    pub max_frac_digits: u32,
    pub max_word_len: usize,
    pub max_collection: usize,
    pub max_depth: usize,
    pub max_ident_len: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_int_digits: 30,
            max_frac_digits: 10,
            max_word_len: 1024,
            max_collection: 10_000,
            max_depth: 32,
            max_ident_len: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LimitsError {
    #[error("line {line}: expected `key = integer`")]
    Malformed { line: usize },
    #[error("line {line}: unknown limit `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: limit `{key}` must be a positive integer")]
    NotPositive { line: usize, key: String },
}

impl FromStr for Limits {
    type Err = LimitsError;

    /// Parses a limits file; absent keys keep their defaults, `#` starts a comment.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut limits = Limits::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(LimitsError::Malformed { line })?;
            let key = key.trim();
            let value: u64 = value.trim().parse().map_err(|_| LimitsError::Malformed { line })?;
            if value == 0 || value > u32::MAX as u64 {
                return Err(LimitsError::NotPositive { line, key: key.to_string() });
            }
            match key {
                "max_int_digits" => limits.max_int_digits = value as u32,
                "max_frac_digits" => limits.max_frac_digits = value as u32,
                "max_word_len" => limits.max_word_len = value as usize,
                "max_collection" => limits.max_collection = value as usize,
                "max_depth" => limits.max_depth = value as usize,
                "max_ident_len" => limits.max_ident_len = value as usize,
                _ => return Err(LimitsError::UnknownKey { line, key: key.to_string() }),
            }
        }
        Ok(limits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides_and_keeps_defaults() {
        let l: Limits = "# tight\nmax_int_digits = 4\n\nmax_word_len=8 # short words\n".parse().unwrap();
        assert_eq!(l.max_int_digits, 4);
        assert_eq!(l.max_word_len, 8);
        assert_eq!(l.max_frac_digits, Limits::default().max_frac_digits);
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!("max_depth".parse::<Limits>(), Err(LimitsError::Malformed { line: 1 }));
        assert!(matches!("speed = 3".parse::<Limits>(), Err(LimitsError::UnknownKey { .. })));
        assert!(matches!("max_depth = 0".parse::<Limits>(), Err(LimitsError::NotPositive { .. })));
    }
}
