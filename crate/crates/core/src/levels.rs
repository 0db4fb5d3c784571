//! The ordinal-indexed family `T^n_{α,i}` of tree indices, `α < ε₀`.
//!
//! ```text
//! T^n_{0,i}       = i
//! T^n_{ω^γ,i}     = T^{n+1}_{γ,i}                          (γ > 0)
//! T^n_{β+1,i}     = i ·^n ⊔_{j<k} T^n_{β,j}
//! T^n_{β+ω^γ,i}   = T^n_{ω^γ,i} ·^n ⊔_{j<k} T^n_{β,j}      (γ > 0, β a positive multiple of ω^γ)
//! ```
//!
//! The products are the graded `·^n`; with the plain product the parameter
//! `n` would never influence the result and `T^0_{ω,i}` would coincide with
//! `T^0_{1,i}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::iterated::{self, Alphabet, Color, IForest};
use crate::ordinal::OrdinalCNF;

/// Builds `T^n_{α,i}` over `k` colors. Intermediate results are minimized,
/// so the returned forest is minimal.
pub fn build_t(alpha: &OrdinalCNF, color: Color, n: usize, k: Alphabet) -> Result<IForest> {
    let colors = k.finite().ok_or(Error::InfiniteAlphabet)?;
    k.check(color)?;
    let mut builder = Builder {
        colors,
        memo: HashMap::new(),
    };
    builder.build(alpha, color, n)
}

struct Builder {
    colors: u32,
    memo: HashMap<(OrdinalCNF, Color, usize), IForest>,
}

impl Builder {
    fn build(&mut self, alpha: &OrdinalCNF, color: Color, n: usize) -> Result<IForest> {
        let key = (alpha.clone(), color, n);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let value = if alpha.is_zero() {
            IForest::color(color)
        } else {
            let (beta, gamma) = alpha.peel_last()?;
            if beta.is_zero() && !gamma.is_zero() {
                self.build(&gamma, color, n + 1)?
            } else {
                let head = if gamma.is_zero() {
                    IForest::color(color)
                } else {
                    self.build(&OrdinalCNF::omega_pow(gamma), color, n)?
                };
                let tail = self.all_colors(&beta, n)?;
                iterated::dot_p(&head, &tail, n)
            }
        };
        let value = iterated::iminimize(&value);
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    // ⊔_{j<k} T^n_{β,j}
    fn all_colors(&mut self, beta: &OrdinalCNF, n: usize) -> Result<IForest> {
        let mut parts = Vec::with_capacity(self.colors as usize);
        for j in 0..self.colors {
            parts.push(self.build(beta, j, n)?);
        }
        Ok(iterated::join_all(&parts))
    }
}
