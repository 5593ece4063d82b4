//! Serializable records emitted by the command-line tool.

use qsync_core::cyclic::CyclicCode;
use qsync_core::poly::Poly;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDistance {
    pub value: u64,
    /// False when `value` is only a lower bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub generator: String,
    pub generator_hex: String,
    pub dual_generator: String,
    pub dual_containing: bool,
    pub min_distance: Option<MinDistance>,
}

impl CodeRecord {
    pub fn new(label: impl Into<String>, code: &CyclicCode, min_distance: Option<MinDistance>) -> CodeRecord {
        // For the whole space this is x^n + 1, i.e. the zero code.
        let dual = code.check_polynomial().reciprocal();
        CodeRecord {
            label: label.into(),
            n: code.length(),
            k: code.dimension(),
            generator: code.generator().to_string(),
            generator_hex: code.generator().to_hex(),
            dual_generator: dual.to_string(),
            dual_containing: code.is_dual_containing(),
            min_distance,
        }
    }

    /// Decodes both generator forms; `None` if either fails or they disagree.
    pub fn generator_poly(&self) -> Option<Poly> {
        let text: Poly = self.generator.parse().ok()?;
        let hex = Poly::from_hex(&self.generator_hex).ok()?;
        (text == hex).then_some(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub rep: u64,
    pub coset: Vec<u64>,
    pub degree: usize,
    pub poly: String,
    pub hex: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_space_record() {
        let r = CodeRecord::new("all", &CyclicCode::whole_space(7), None);
        assert_eq!((r.k, r.generator.as_str(), r.generator_hex.as_str()), (7, "1", "1"));
        assert_eq!(r.dual_generator, "x^7+1");
        assert!(r.dual_containing);
    }

    #[test]
    fn generator_forms_must_agree() {
        let code = CyclicCode::new(7, "x^3+x+1".parse().unwrap()).unwrap();
        let mut r = CodeRecord::new("h", &code, None);
        assert_eq!(r.generator_hex, "b");
        assert_eq!(r.generator_poly(), Some(Poly::from_u64(0b1011)));
        assert_eq!(r.dual_generator, "x^4+x^3+x^2+1");
        r.generator_hex = "d".into();
        assert_eq!(r.generator_poly(), None);
    }
}
