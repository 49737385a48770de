//! Numerical semigroups: gaps, conductor, dimension counts and the
//! order (Feng-Rao) bound for duals of one-point codes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::gcd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    /// membership for 0..conductor
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() || gens.iter().fold(0, |a, &b| gcd(a, b)) != 1 {
            return Err(Error::NotNumerical(generators.to_vec()));
        }
        if gens[0] == 1 {
            return Ok(NumericalSemigroup { generators: vec![1], conductor: 0, member: vec![] });
        }
        // grow membership until a run of length min-generator appears
        let a = gens[0] as usize;
        let mut member = vec![true];
        let mut run = 1usize;
        let mut s = 1usize;
        while run < a {
            let m = gens.iter().any(|&g| g as usize <= s && member[s - g as usize]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
            s += 1;
        }
        let conductor = member.len() - run;
        member.truncate(conductor);
        // drop redundant generators
        let mut minimal = Vec::new();
        for &g in &gens {
            let gu = g as usize;
            let redundant = (1..gu).any(|t| {
                let is = |x: usize| x >= conductor || member[x];
                is(t) && is(gu - t) && t != 0 && gu - t != 0
            });
            if !redundant {
                minimal.push(g);
            }
        }
        Ok(NumericalSemigroup { generators: minimal, conductor: conductor as u64, member })
    }

    /// Minimal generating set.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, s: u64) -> bool {
        s >= self.conductor || self.member[s as usize]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&s| !self.contains(s)).collect()
    }

    pub fn genus(&self) -> u64 {
        self.member.iter().filter(|&&m| !m).count() as u64
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn is_symmetric(&self) -> bool {
        self.conductor == 2 * self.genus()
    }

    /// Second smallest element (rho_2), the smallest nonzero element.
    pub fn rho2(&self) -> u64 {
        self.generators[0]
    }

    /// Elements in increasing order; `rho(1) = 0`.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0..).filter(move |&s| self.contains(s))
    }

    /// The i-th element, 1-based.
    pub fn rho(&self, i: usize) -> u64 {
        assert!(i >= 1);
        self.elements().nth(i - 1).unwrap()
    }

    /// #{s in S : s <= m}, i.e. the dimension of L(mQ).
    pub fn ell(&self, m: i64) -> u64 {
        if m < 0 {
            return 0;
        }
        let m = m as u64;
        if m >= self.conductor {
            m + 1 - self.genus()
        } else {
            (0..=m).filter(|&s| self.contains(s)).count() as u64
        }
    }

    /// `S \ (n + S)`, sorted; has exactly n elements.
    pub fn m_set(&self, n: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(n as usize);
        let mut s = 0;
        while (out.len() as u64) < n {
            if self.contains(s) && !(s >= n && self.contains(s - n)) {
                out.push(s);
            }
            s += 1;
        }
        out
    }

    /// #{t in S : s - t in S}.
    pub fn nu(&self, s: u64) -> u64 {
        if s + 1 >= 2 * self.conductor.max(1) && self.conductor > 0 {
            return s + 1 - 2 * self.genus();
        }
        (0..=s).filter(|&t| self.contains(t) && self.contains(s - t)).count() as u64
    }

    /// nu at the r-th element (1-based): #{(i,j) : rho_i + rho_j = rho_r}.
    pub fn nu_at(&self, r: usize) -> u64 {
        self.nu(self.rho(r))
    }

    pub fn report(&self) -> SemigroupReport {
        SemigroupReport { generators: self.generators.clone(), genus: self.genus(), gaps: self.gaps() }
    }

    /// Order bound on the minimum distance of C(mQ)^perp:
    /// min nu(s) over s in S with s > m.
    pub fn order_bound(&self, m: i64) -> u64 {
        let start = (m + 1).max(0) as u64;
        let stop = start.max(2 * self.conductor.max(1) - 1);
        (start..=stop).filter(|&s| self.contains(s)).map(|s| self.nu(s)).min().unwrap()
    }
}

/// JSON form `{"generators":[...], "genus":g, "gaps":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupReport {
    pub generators: Vec<u64>,
    pub genus: u64,
    pub gaps: Vec<u64>,
}
