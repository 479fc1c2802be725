use std::fmt;

use super::hnf::hermite_rows;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A dense matrix over `F_p[x]`. A matrix may have zero rows (the empty
/// presentation of the zero module) but always knows its width.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    p: u32,
    cols: usize,
    entries: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn new(p: u32, cols: usize, entries: Vec<Vec<Poly>>) -> Result<Self> {
        for row in &entries {
            if row.len() != cols {
                return Err(Error::domain(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|e| e.modulus() != p) {
                return Err(Error::ModulusMismatch {
                    left: p,
                    right: bad.modulus(),
                });
            }
        }
        Ok(PolyMatrix { p, cols, entries })
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::one(p) } else { Poly::zero(p) })
                    .collect()
            })
            .collect();
        PolyMatrix {
            p,
            cols: n,
            entries,
        }
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            p,
            cols,
            entries: vec![vec![Poly::zero(p); cols]; rows],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }
}

/// Hermite normal form over `F_p[x]`: monic pivots, entries above a pivot
/// reduced modulo it, zero rows removed. Returns the form and its rank.
pub fn hermite_normal_form(m: &PolyMatrix) -> (PolyMatrix, usize) {
    let e = hermite_rows(m.entries.clone(), m.cols);
    let rank = e.rank();
    (
        PolyMatrix {
            p: m.p,
            cols: m.cols,
            entries: e.rows,
        },
        rank,
    )
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
