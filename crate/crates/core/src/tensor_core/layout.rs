use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};

/// Photon-number cutoff of a truncated mode; the mode has dimension `cutoff + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeCutoff(u32);

impl ModeCutoff {
    pub fn new(cutoff: u32) -> Result<Self> {
        if cutoff == 0 {
            return Err(SynthError::invalid("mode cutoff must be at least 1"));
        }
        Ok(ModeCutoff(cutoff))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for ModeCutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Position of a tensor factor inside a [`HilbertLayout`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorAddress(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorKind {
    Qubit,
    Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub dim: usize,
}

impl Factor {
    pub fn qubit() -> Self {
        Factor { kind: FactorKind::Qubit, dim: 2 }
    }

    pub fn mode(cutoff: ModeCutoff) -> Self {
        Factor { kind: FactorKind::Mode, dim: cutoff.dim() }
    }

    /// Cutoff of a mode factor, `None` for qubits.
    pub fn cutoff(&self) -> Option<ModeCutoff> {
        match self.kind {
            FactorKind::Mode => Some(ModeCutoff((self.dim - 1) as u32)),
            FactorKind::Qubit => None,
        }
    }
}

/// Ordered tensor factors. Basis indices are mixed-radix with the leftmost
/// factor most significant, so `|q⟩⊗|n⟩` sits at `q·(Λ+1) + n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertLayout {
    factors: Vec<Factor>,
}

impl HilbertLayout {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(SynthError::InvalidLayout("a layout needs at least one factor".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            let ok = match f.kind {
                FactorKind::Qubit => f.dim == 2,
                FactorKind::Mode => f.dim >= 2,
            };
            if !ok {
                return Err(SynthError::InvalidLayout(format!(
                    "factor {i} of kind {:?} has dimension {}",
                    f.kind, f.dim
                )));
            }
        }
        Ok(HilbertLayout { factors })
    }

    pub fn qubit() -> Self {
        HilbertLayout { factors: vec![Factor::qubit()] }
    }

    pub fn mode(cutoff: ModeCutoff) -> Self {
        HilbertLayout { factors: vec![Factor::mode(cutoff)] }
    }

    /// `[qubit, mode Λ]`, the home of single-mode block encodings.
    pub fn qubit_mode(cutoff: ModeCutoff) -> Self {
        HilbertLayout { factors: vec![Factor::qubit(), Factor::mode(cutoff)] }
    }

    /// `[qubit, mode Λ₁, mode Λ₂]`.
    pub fn qubit_two_modes(first: ModeCutoff, second: ModeCutoff) -> Self {
        HilbertLayout {
            factors: vec![Factor::qubit(), Factor::mode(first), Factor::mode(second)],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn factor(&self, at: FactorAddress) -> Result<&Factor> {
        self.factors.get(at.0).ok_or_else(|| SynthError::FactorAddress {
            index: at.0,
            reason: format!("layout has {} factors", self.factors.len()),
        })
    }

    pub fn concat(&self, other: &HilbertLayout) -> HilbertLayout {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        HilbertLayout { factors }
    }

    /// The layout with the first factor removed, if any factor remains.
    pub fn tail(&self) -> Option<HilbertLayout> {
        (self.factors.len() > 1).then(|| HilbertLayout { factors: self.factors[1..].to_vec() })
    }

    /// Stride of each factor in the flattened index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.factors[i + 1].dim;
        }
        strides
    }

    /// Flattened index of a product basis state given per-factor levels.
    pub fn index_of(&self, levels: &[usize]) -> Result<usize> {
        if levels.len() != self.factors.len() {
            return Err(SynthError::invalid(format!(
                "expected {} levels, got {}",
                self.factors.len(),
                levels.len()
            )));
        }
        let mut index = 0;
        for (level, factor) in levels.iter().zip(&self.factors) {
            if *level >= factor.dim {
                return Err(SynthError::invalid(format!(
                    "level {level} out of range for factor of dimension {}",
                    factor.dim
                )));
            }
            index = index * factor.dim + level;
        }
        Ok(index)
    }

    /// Per-factor levels of a flattened index.
    pub fn levels_of(&self, mut index: usize) -> Vec<usize> {
        let mut levels = vec![0; self.factors.len()];
        for (slot, factor) in levels.iter_mut().zip(&self.factors).rev() {
            *slot = index % factor.dim;
            index /= factor.dim;
        }
        levels
    }
}

impl fmt::Display for HilbertLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match factor.kind {
                FactorKind::Qubit => write!(f, "qubit")?,
                FactorKind::Mode => write!(f, "mode Λ={}", factor.dim - 1)?,
            }
        }
        write!(f, "]")
    }
}
