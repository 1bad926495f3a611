//! Per-group cache of the objects every check needs: the character table,
//! the normal subgroups, and lazily built G-character tables and tables of
//! each normal subgroup.

use std::sync::OnceLock;

use crate::chartab::{character_table_capped, CharacterTable};
use crate::clifford::{self, CliffordRow, GCharTable, NormalTable};
use crate::error::{CliffordError, TheoremError};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::subgroup::{normal_subgroups_capped, Subgroup};

#[derive(Debug)]
pub struct GroupAnalysis {
    table: CharacterTable,
    normals: Vec<Subgroup>,
    g_tables: Vec<OnceLock<Result<GCharTable, CliffordError>>>,
    n_tables: Vec<OnceLock<Result<NormalTable, CliffordError>>>,
    rows: Vec<OnceLock<Result<Vec<CliffordRow>, CliffordError>>>,
}

impl GroupAnalysis {
    pub fn new(g: &FiniteGroup) -> Result<Self, TheoremError> {
        Self::with_cap(g, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(g: &FiniteGroup, cap: usize) -> Result<Self, TheoremError> {
        let table = character_table_capped(g, cap)?;
        let normals = normal_subgroups_capped(g, cap)?;
        let m = normals.len();
        Ok(GroupAnalysis {
            table,
            normals,
            g_tables: (0..m).map(|_| OnceLock::new()).collect(),
            n_tables: (0..m).map(|_| OnceLock::new()).collect(),
            rows: (0..m).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.table.group()
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// Normal subgroups ascending by (order, elements); indices are stable.
    pub fn normals(&self) -> &[Subgroup] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &Subgroup {
        &self.normals[i]
    }

    pub fn index_of(&self, n: &Subgroup) -> Option<usize> {
        self.normals.iter().position(|m| m == n)
    }

    pub fn whole_index(&self) -> usize {
        self.normals.len() - 1
    }

    pub fn g_table(&self, i: usize) -> Result<&GCharTable, CliffordError> {
        self.g_tables[i]
            .get_or_init(|| clifford::build_g_char_table(&self.table, &self.normals[i]))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn normal_table(&self, i: usize) -> Result<&NormalTable, CliffordError> {
        self.n_tables[i]
            .get_or_init(|| clifford::normal_table(self.group(), &self.normals[i]))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Clifford data aligned to the Δ rows of [`Self::g_table`], checked
    /// against the table path.
    pub fn clifford_rows(&self, i: usize) -> Result<&[CliffordRow], CliffordError> {
        self.rows[i]
            .get_or_init(|| {
                let gt = self.g_table(i)?;
                let rows = clifford::clifford_oracle(&self.table, gt, self.normal_table(i)?)?;
                clifford::check_against_oracle(gt, &rows)?;
                Ok(rows)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }
}
