//! Parsing of command-line values and input files.

use std::fs;
use std::path::Path;

use chainbound::ring::{parse_polynomials, ExponentVector, Polynomial};

use crate::failure::Failure;

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Groups non-comment lines into blocks separated by blank lines.
pub fn blocks(text: &str) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = Vec::new();
    let mut current = Vec::new();
    for raw in text.lines() {
        if raw.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        let line = strip_comment(raw);
        if !line.is_empty() {
            current.push(line.to_string());
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

/// Parses every source into one common ring, returning the ring size.
pub fn polynomials_in_common_ring(sources: &[String]) -> Result<Vec<Polynomial>, Failure> {
    parse_polynomials(sources, 1).map_err(|e| Failure::Usage(format!("invalid polynomial: {e}")))
}

/// One polynomial per line; blank lines are ignored.
pub fn polynomial_file(path: &Path) -> Result<Vec<String>, Failure> {
    let lines: Vec<String> = blocks(&read(path)?).into_iter().flatten().collect();
    if lines.is_empty() {
        return Err(Failure::Usage(format!("{} contains no polynomials", path.display())));
    }
    Ok(lines)
}

/// Chain stages separated by blank lines.
pub fn chain_file(path: &Path) -> Result<Vec<Vec<String>>, Failure> {
    let stages = blocks(&read(path)?);
    if stages.is_empty() {
        return Err(Failure::Usage(format!("{} contains no stages", path.display())));
    }
    Ok(stages)
}

/// `p1;p2;...` with empty entries rejected.
pub fn semicolon_list(s: &str, what: &str) -> Result<Vec<String>, Failure> {
    let items: Vec<String> = s.split(';').map(|p| p.trim().to_string()).collect();
    if items.iter().any(String::is_empty) {
        return Err(Failure::Usage(format!("empty entry in {what} list {s:?}")));
    }
    Ok(items)
}

/// `(a,b);(c,d);...`; an empty string is the empty sequence.
pub fn exponent_sequence(s: &str) -> Result<Vec<ExponentVector>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    semicolon_list(s, "exponent vector")?
        .iter()
        .map(|e| e.parse().map_err(|err| Failure::Usage(format!("invalid exponent vector {e:?}: {err}"))))
        .collect()
}

/// `a,b,...` of naturals.
pub fn natural_list(s: &str) -> Result<Vec<u64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("invalid natural number {v:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_skip_comments_and_split_on_blank_lines() {
        let text = "# header\nx1^2\n\n\nx1^2   # again\nx1*x2\n# only a comment\n\n";
        assert_eq!(
            blocks(text),
            vec![vec!["x1^2".to_string()], vec!["x1^2".to_string(), "x1*x2".to_string()]]
        );
    }

    #[test]
    fn comment_only_lines_do_not_split_stages() {
        assert_eq!(blocks("x1\n# note\nx2\n"), vec![vec!["x1".to_string(), "x2".to_string()]]);
    }

    #[test]
    fn sequences_and_lists() {
        assert_eq!(exponent_sequence("(1,0); (0,1)").unwrap().len(), 2);
        assert!(exponent_sequence("").unwrap().is_empty());
        assert!(exponent_sequence("(1,0);;(0,1)").is_err());
        assert_eq!(natural_list("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(natural_list("1,-2").is_err());
    }
}
