//! Argument grammars that clap does not cover.

use tamestrat_core::descriptor::{CliqueChoice, CliqueSelection};

use crate::commands::CliError;

fn usage(msg: String) -> CliError {
    CliError { kind: "Usage".into(), message: msg, code: 2 }
}

/// `3` means three homogeneous cliques; a comma list (or `ranks=...`) gives
/// clique ranks, with `rank:taken` for a partial clique.
pub fn cliques(s: &str) -> Result<CliqueSelection, CliError> {
    let t = s.trim();
    if let Ok(n) = t.parse::<usize>() {
        return Ok(CliqueSelection::homogeneous(n));
    }
    let list = t.strip_prefix("ranks=").unwrap_or(t);
    let list = list.trim_matches(|c| c == '[' || c == ']');
    let mut choices = Vec::new();
    for item in list.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let bad = || usage(format!("bad clique `{item}` in `{s}`"));
        let choice = match item.split_once(':') {
            Some((r, k)) => CliqueChoice { rank: r.parse().map_err(|_| bad())?, taken: k.parse().map_err(|_| bad())? },
            None => CliqueChoice::full(item.parse().map_err(|_| bad())?),
        };
        choices.push(choice);
    }
    Ok(CliqueSelection::new(choices))
}

/// Comma-separated integers.
pub fn int_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("expected integers, got `{s}`"))))
        .collect()
}

pub fn usize_list(s: &str, len: usize) -> Result<Vec<usize>, CliError> {
    let v = int_list(s)?;
    if v.len() != len || v.iter().any(|x| *x < 0) {
        return Err(usage(format!("expected {len} non-negative integers, got `{s}`")));
    }
    Ok(v.into_iter().map(|x| x as usize).collect())
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) if balanced(inner) => inner.trim(),
        _ => t,
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// Splits `num/den` at the first top-level `/` that is not a rational
/// coefficient (digits on both sides). Without a bar the denominator is `1`.
pub fn fraction(s: &str) -> (String, String) {
    let chars: Vec<char> = s.chars().collect();
    let mut depth = 0i32;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                let before = i > 0 && chars[i - 1].is_ascii_digit();
                let after = chars.get(i + 1).is_some_and(|c| c.is_ascii_digit());
                if !(before && after) {
                    let num: String = chars[..i].iter().collect();
                    let den: String = chars[i + 1..].iter().collect();
                    return (strip_parens(&num).to_string(), strip_parens(&den).to_string());
                }
            }
            _ => {}
        }
    }
    (strip_parens(s).to_string(), "1".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_grammar() {
        assert_eq!(cliques("3").unwrap(), CliqueSelection::homogeneous(3));
        assert_eq!(cliques("2,2,2").unwrap().s(), 3);
        assert_eq!(cliques("ranks=5").unwrap().choices, vec![CliqueChoice::full(5)]);
        assert_eq!(cliques("2:1").unwrap().partial_cliques().count(), 1);
        assert!(cliques("two").is_err());
    }

    #[test]
    fn fraction_grammar() {
        assert_eq!(fraction("x+1/x^2+x"), ("x+1".into(), "x^2+x".into()));
        assert_eq!(fraction("(x+1)/(x^2+x)"), ("x+1".into(), "x^2+x".into()));
        assert_eq!(fraction("1/2*x/(x+1)"), ("1/2*x".into(), "x+1".into()));
        assert_eq!(fraction("x^2"), ("x^2".into(), "1".into()));
    }
}
