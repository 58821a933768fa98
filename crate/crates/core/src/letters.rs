//! The letters game: wavelengths as letters, splitters as `A → AA`,
//! crossings as `AB → BA`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spec::{check_at_least, Wavelength};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LetterOp {
    /// Duplicate the letter at this position in place.
    Split(usize),
    /// Exchange the letters at this position and the next one.
    Swap(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterSequence {
    initial: Vec<Wavelength>,
    letters: Vec<Wavelength>,
    ops: Vec<LetterOp>,
}

impl LetterSequence {
    /// `1, 2, …, m` with an empty log.
    pub fn initial(m: u32) -> Self {
        let letters: Vec<Wavelength> = (1..=m).map(Wavelength).collect();
        Self::from_letters(letters)
    }

    pub fn from_letters(letters: Vec<Wavelength>) -> Self {
        Self {
            initial: letters.clone(),
            letters,
            ops: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[Wavelength] {
        &self.letters
    }

    pub fn initial_letters(&self) -> &[Wavelength] {
        &self.initial
    }

    pub fn ops(&self) -> &[LetterOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn split(&mut self, position: usize) -> Result<()> {
        let w = *self
            .letters
            .get(position)
            .ok_or(Error::PositionOutOfRange {
                position,
                len: self.letters.len(),
            })?;
        self.letters.insert(position + 1, w);
        self.ops.push(LetterOp::Split(position));
        Ok(())
    }

    /// Only legal between different letters.
    pub fn swap(&mut self, position: usize) -> Result<()> {
        if position + 1 >= self.letters.len() {
            return Err(Error::PositionOutOfRange {
                position: position + 1,
                len: self.letters.len(),
            });
        }
        let (a, b) = (self.letters[position], self.letters[position + 1]);
        if a == b {
            return Err(Error::IllegalSwap {
                position,
                wavelength: a.0,
            });
        }
        self.letters.swap(position, position + 1);
        self.ops.push(LetterOp::Swap(position));
        Ok(())
    }

    pub fn apply(&mut self, op: LetterOp) -> Result<()> {
        match op {
            LetterOp::Split(p) => self.split(p),
            LetterOp::Swap(p) => self.swap(p),
        }
    }

    /// Replays the op log from the initial letters.
    pub fn replay(&self) -> Result<Vec<Wavelength>> {
        let mut fresh = Self::from_letters(self.initial.clone());
        for &op in &self.ops {
            fresh.apply(op)?;
        }
        Ok(fresh.letters)
    }

    pub fn split_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, LetterOp::Split(_)))
            .count()
    }

    pub fn swap_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, LetterOp::Swap(_)))
            .count()
    }
}

/// `(1, 2, …, m)` repeated `n` times, empty log.
pub fn target_sequence(m: u32, n: u32) -> Result<LetterSequence> {
    check_at_least("m", m, 1)?;
    check_at_least("n", n, 1)?;
    Ok(LetterSequence::from_letters(target_letters(m, n)))
}

pub(crate) fn target_letters(m: u32, n: u32) -> Vec<Wavelength> {
    (0..n).flat_map(|_| (1..=m).map(Wavelength)).collect()
}
