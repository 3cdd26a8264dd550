//! JSON code description: `{"q", "m", "modulus"?, "n", "k", "generators"}`.

use std::path::Path;

use gabidulin::code::CodeSpec;
use gabidulin::field::{Elem, Field};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub q: u32,
    pub m: usize,
    /// Ascending coefficients over GF(q), length m + 1, monic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<u64>,
}

impl CodeSpecFile {
    pub fn read(path: &Path) -> Result<CodeSpecFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<CodeSpecFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad spec file: {e}")))
    }

    pub fn build(&self) -> Result<CodeSpec, CliError> {
        let field = Field::new(self.q, self.m, self.modulus.as_deref())
            .map_err(|e| CliError::Invariant(e.to_string()))?;
        if self.generators.len() != self.n {
            return Err(CliError::Invariant(format!(
                "n = {} but {} generators given",
                self.n,
                self.generators.len()
            )));
        }
        let gens = self
            .generators
            .iter()
            .map(|&g| field.element(g))
            .collect::<Result<Vec<Elem>, _>>()
            .map_err(|e| CliError::Invariant(e.to_string()))?;
        CodeSpec::new(field, self.k, gens).map_err(|e| CliError::Invariant(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_spec_parses() {
        let s = CodeSpecFile::parse(
            r#"{"q":2,"m":3,"modulus":[1,1,0,1],"n":3,"k":2,"generators":[1,2,4]}"#,
        )
        .unwrap();
        let code = s.build().unwrap();
        assert_eq!((code.n(), code.k()), (3, 2));
    }

    #[test]
    fn modulus_is_optional() {
        let s = CodeSpecFile::parse(r#"{"q":3,"m":2,"n":2,"k":1,"generators":[1,3]}"#).unwrap();
        assert!(s.build().is_ok());
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            CodeSpecFile::parse(r#"{"q":2,"m":3}"#),
            Err(CliError::Usage(_))
        ));
        let dependent =
            CodeSpecFile::parse(r#"{"q":2,"m":3,"n":2,"k":1,"generators":[3,3]}"#).unwrap();
        assert!(matches!(dependent.build(), Err(CliError::Invariant(_))));
        let reducible = CodeSpecFile::parse(
            r#"{"q":2,"m":3,"modulus":[1,0,0,1],"n":1,"k":1,"generators":[1]}"#,
        )
        .unwrap();
        assert!(matches!(reducible.build(), Err(CliError::Invariant(_))));
    }
}
