use serde::{Deserialize, Serialize};

use crate::exactring::{Monomial, SparsePoly, Var};

use super::{extend, SomosSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// `α = 0`: `τ_n = β^{k_n}`.
    AlphaZero,
    /// `β = 0`: `τ_n = α^{l_n}`.
    BetaZero,
}

/// Exponents of the monomial solutions of unit-initial Somos-4, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateExponents {
    pub which: Degeneracy,
    pub exponents: Vec<i64>,
}

impl DegenerateExponents {
    pub fn at(&self, n: usize) -> i64 {
        self.exponents[n - 1]
    }
}

/// `k_{n+2} = 2k_n − k_{n−2} + 1` or `l_{n+2} = l_{n+1} + l_{n−1} − l_{n−2} + 1`,
/// starting from zeros at indices 1..4.
pub fn degenerate_exponents(which: Degeneracy, count: usize) -> DegenerateExponents {
    let mut e = vec![0i64; count.min(4)];
    while e.len() < count {
        let m = e.len(); // computing index m+1 = n+2, so n = m-1
        let v = match which {
            Degeneracy::AlphaZero => 2 * e[m - 2] - e[m - 4] + 1,
            Degeneracy::BetaZero => e[m - 1] + e[m - 3] - e[m - 4] + 1,
        };
        e.push(v);
    }
    DegenerateExponents {
        which,
        exponents: e,
    }
}

/// Indices `n ≤ n_max` where symbolic extension with the vanishing parameter
/// disagrees with the monomial solution.
pub fn verify_degenerate(which: Degeneracy, n_max: usize) -> Vec<usize> {
    let (alpha, beta, var) = match which {
        Degeneracy::AlphaZero => (SparsePoly::zero(), SparsePoly::var(Var::Beta), Var::Beta),
        Degeneracy::BetaZero => (SparsePoly::var(Var::Alpha), SparsePoly::zero(), Var::Alpha),
    };
    let spec = SomosSpec::unit(4, alpha, beta);
    let exps = degenerate_exponents(which, n_max);
    let w = match extend(&spec, 1, n_max as i64) {
        Ok(w) => w,
        Err(f) => return ((f.partial.hi().max(0) as usize + 1)..=n_max).collect(),
    };
    (1..=n_max)
        .filter(|&n| {
            let e = exps.at(n);
            e < 0
                || *w.at(n as i64)
                    != SparsePoly::monomial(Monomial::var_pow(var, e as u32), 1.into())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_exponents() {
        let k = degenerate_exponents(Degeneracy::AlphaZero, 8);
        assert_eq!(k.exponents, vec![0, 0, 0, 0, 1, 1, 3, 3]);
        let l = degenerate_exponents(Degeneracy::BetaZero, 6);
        assert_eq!(l.at(5), 1);
        assert_eq!(&l.exponents[..4], &[0, 0, 0, 0]);
    }

    #[test]
    fn monomial_solutions_match_the_engine() {
        assert!(verify_degenerate(Degeneracy::AlphaZero, 20).is_empty());
        assert!(verify_degenerate(Degeneracy::BetaZero, 20).is_empty());
    }
}
