//! Design files: `{"name": ..., "n": ..., "blocks": [[a,b,c,d], ...]}`.
//!
//! Blocks are written sorted, one per line, and the file ends with a newline.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use super::{Design, DesignError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub name: String,
    pub n: usize,
    pub blocks: Vec<[usize; 4]>,
}

impl Design {
    pub fn from_json(text: &str) -> Result<Design, DesignError> {
        let file: DesignFile = serde_json::from_str(text).map_err(|e| DesignError::Format(e.to_string()))?;
        Design::new(file.name, file.n, file.blocks)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let name = serde_json::to_string(self.name()).expect("strings serialize");
        let _ = write!(out, "{{\n  \"name\": {name},\n  \"n\": {},\n  \"blocks\": [", self.n());
        for (i, b) in self.blocks().iter().enumerate() {
            let sep = if i == 0 { "\n" } else { ",\n" };
            let _ = write!(out, "{sep}    [{}, {}, {}, {}]", b[0], b[1], b[2], b[3]);
        }
        if !self.blocks().is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }
}

pub fn read_design(path: &Path) -> Result<Design, DesignError> {
    let text = std::fs::read_to_string(path)?;
    Design::from_json(&text)
}

pub fn write_design(d: &Design, path: &Path) -> Result<(), DesignError> {
    std::fs::write(path, d.to_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::boolean_design;

    #[test]
    fn layout() {
        let d = boolean_design(2).unwrap();
        assert_eq!(
            d.to_json(),
            "{\n  \"name\": \"boolean(m=2)\",\n  \"n\": 4,\n  \"blocks\": [\n    [0, 1, 2, 3]\n  ]\n}\n"
        );
        assert_eq!(Design::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(Design::from_json("{\"n\": 4}"), Err(DesignError::Format(_))));
        assert!(matches!(
            Design::from_json(r#"{"name":"x","n":4,"blocks":[[0,1,2]]}"#),
            Err(DesignError::Format(_))
        ));
        assert!(matches!(
            Design::from_json(r#"{"name":"x","n":5,"blocks":[[0,1,2,3],[3,2,1,0]]}"#),
            Err(DesignError::DuplicateBlock(_))
        ));
    }
}
