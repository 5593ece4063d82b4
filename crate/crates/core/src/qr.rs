//! The four binary quadratic residue codes of prime length `p ≡ ±1 (mod 8)`.
//!
//! With `α` a primitive `p`-th root of unity,
//! `g_R = ∏_{i ∈ QR} (x - α^i)`, `g_NR = ∏_{i ∈ QNR} (x - α^i)`, and the
//! barred generators carry the extra factor `x + 1`. Which of `g_R`/`g_NR` a
//! given polynomial is depends on the choice of `α`; [`QrFamily::labeling_of`]
//! resolves that for callers holding an externally published generator.

use serde::Serialize;

use crate::arith::{self, ResidueClasses};
use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QrLabel {
    Residue,
    NonResidue,
}

#[derive(Debug, Clone)]
pub struct QrFamily {
    p: u64,
    field: FieldCtx,
    alpha: FieldElem,
    residues: ResidueClasses,
    residue: CyclicCode,
    nonresidue: CyclicCode,
    residue_bar: CyclicCode,
    nonresidue_bar: CyclicCode,
}

/// Outcome of the duality checks; every flag holds for `p ≡ -1 (mod 8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub p: u64,
    /// `dual(⟨g_R⟩) = ⟨ḡ_R⟩`
    pub residue_dual_is_bar: bool,
    /// `dual(⟨g_NR⟩) = ⟨ḡ_NR⟩`
    pub nonresidue_dual_is_bar: bool,
    pub residue_dual_containing: bool,
    pub nonresidue_dual_containing: bool,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.residue_dual_is_bar
            && self.nonresidue_dual_is_bar
            && self.residue_dual_containing
            && self.nonresidue_dual_containing
    }
}

impl QrFamily {
    /// Builds the family over the canonical field and root of unity.
    pub fn build(p: u64) -> Result<QrFamily> {
        let residues = arith::quadratic_residues(p)?;
        let field = FieldCtx::build(p)?;
        let alpha = field.primitive_root_of_unity();
        QrFamily::assemble(residues, field, alpha)
    }

    /// Builds the family from a caller-chosen primitive `p`-th root of unity.
    pub fn with_root(field: FieldCtx, alpha: FieldElem) -> Result<QrFamily> {
        let p = field.root_order();
        let residues = arith::quadratic_residues(p)?;
        if !field.is_primitive_root_of_unity(&alpha) {
            return Err(Error::NotARootOfUnity { p });
        }
        QrFamily::assemble(residues, field, alpha)
    }

    fn assemble(residues: ResidueClasses, field: FieldCtx, alpha: FieldElem) -> Result<QrFamily> {
        let p = residues.p;
        let n = p as usize;
        let g_r = field.product_of_roots(&alpha, &residues.qr)?;
        let g_nr = field.product_of_roots(&alpha, &residues.qnr)?;
        let x_plus_one = Poly::from_u64(0b11);
        if &(&x_plus_one * &g_r) * &g_nr != Poly::x_n_minus_one(n) {
            return Err(Error::Invariant(format!(
                "(x+1) g_R g_NR != x^{p} - 1"
            )));
        }
        let residue_bar = CyclicCode::new(n, &x_plus_one * &g_r)?;
        let nonresidue_bar = CyclicCode::new(n, &x_plus_one * &g_nr)?;
        Ok(QrFamily {
            p,
            residue: CyclicCode::new(n, g_r)?,
            nonresidue: CyclicCode::new(n, g_nr)?,
            residue_bar,
            nonresidue_bar,
            field,
            alpha,
            residues,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    pub fn residues(&self) -> &ResidueClasses {
        &self.residues
    }

    /// `⟨g_R⟩`, dimension `(p+1)/2`.
    pub fn residue_code(&self) -> &CyclicCode {
        &self.residue
    }

    /// `⟨g_NR⟩`, dimension `(p+1)/2`.
    pub fn nonresidue_code(&self) -> &CyclicCode {
        &self.nonresidue
    }

    /// `⟨(x+1) g_R⟩`, dimension `(p-1)/2`.
    pub fn residue_bar_code(&self) -> &CyclicCode {
        &self.residue_bar
    }

    /// `⟨(x+1) g_NR⟩`, dimension `(p-1)/2`.
    pub fn nonresidue_bar_code(&self) -> &CyclicCode {
        &self.nonresidue_bar
    }

    pub fn code(&self, label: QrLabel) -> &CyclicCode {
        match label {
            QrLabel::Residue => &self.residue,
            QrLabel::NonResidue => &self.nonresidue,
        }
    }

    pub fn bar_code(&self, label: QrLabel) -> &CyclicCode {
        match label {
            QrLabel::Residue => &self.residue_bar,
            QrLabel::NonResidue => &self.nonresidue_bar,
        }
    }

    /// Which of `g_R`, `g_NR` equals `expected` under this family's root of unity.
    pub fn labeling_of(&self, expected: &Poly) -> Option<QrLabel> {
        if self.residue.generator() == expected {
            Some(QrLabel::Residue)
        } else if self.nonresidue.generator() == expected {
            Some(QrLabel::NonResidue)
        } else {
            None
        }
    }

    /// `{g_R, g_NR}` sorted by packed value, independent of the root choice.
    pub fn generator_pair(&self) -> [Poly; 2] {
        let mut pair = [
            self.residue.generator().clone(),
            self.nonresidue.generator().clone(),
        ];
        pair.sort();
        pair
    }

    /// Dual and dual-containment relations among the four codes. Refuses
    /// `p ≡ 1 (mod 8)`, where the larger codes are not dual-containing.
    pub fn duality_report(&self) -> Result<DualityReport> {
        if self.p % 8 != 7 {
            return Err(Error::DualityPrecondition { p: self.p });
        }
        Ok(DualityReport {
            p: self.p,
            residue_dual_is_bar: self.residue.dual() == self.residue_bar,
            nonresidue_dual_is_bar: self.nonresidue.dual() == self.nonresidue_bar,
            residue_dual_containing: self.residue.is_dual_containing(),
            nonresidue_dual_containing: self.nonresidue.is_dual_containing(),
        })
    }
}

/// Square-root lower bound on the minimum distance of a QR code of length `p`:
/// the least `d` with `d² ≥ p`, tightened to `d² - d + 1 ≥ p` when `p ≡ 3 (mod 4)`.
pub fn square_root_bound(p: u64) -> u64 {
    let mut d = 1u64;
    if p % 4 == 3 {
        while d * d - d + 1 < p {
            d += 1;
        }
    } else {
        while d * d < p {
            d += 1;
        }
    }
    d
}
