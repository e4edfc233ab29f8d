//! Corpus files: one `name: code` entry per line, `#` for comment lines.
//! Tags may follow the code after a `#`.

use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub code: String,
    pub tags: Vec<String>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        LinkDiagram::parse(&self.code)
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Corpus(format!("line {}: expected `name: code`", lineno + 1)))?;
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(Error::Corpus(format!("line {}: empty name", lineno + 1)));
        }
        if entries.iter().any(|e| e.name == name) {
            return Err(Error::Corpus(format!("duplicate entry name `{name}`")));
        }
        let (code, tags) = match rest.split_once('#') {
            Some((code, tags)) => (
                code.trim().to_string(),
                tags.split(',')
                    .map(|t| t.trim().to_string())
                    .filter(|t| !t.is_empty())
                    .collect(),
            ),
            None => (rest.trim().to_string(), Vec::new()),
        };
        LinkDiagram::parse(&code)
            .map_err(|e| Error::Corpus(format!("entry `{name}`: {e}")))?;
        entries.push(CorpusEntry { name, code, tags });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names_codes_and_tags() {
        let text = "\
# sample corpus
unknot: ()
paper-kl: O A1 O A2 / A1 A2 # two-component, minimal
";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].name, "unknot");
        assert_eq!(entries[1].tags, ["two-component", "minimal"]);
        assert!(entries[1].diagram().is_ok());
    }

    #[test]
    fn rejects_duplicates_and_bad_codes() {
        assert!(matches!(
            parse_corpus("a: 1 1\na: 2 2"),
            Err(Error::Corpus(_))
        ));
        assert!(matches!(parse_corpus("a: 1 1 1"), Err(Error::Corpus(_))));
    }
}
