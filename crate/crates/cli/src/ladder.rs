//! The genus ladder: for each `m`, the Severi data of the curves sought on
//! the quadric and the arithmetic genus of their image on the Enriques
//! surface.

use std::collections::BTreeSet;

use enriques_core::lattice::{cy_class, genus_and_congruence};
use enriques_core::severi::{dedieu_dim, dedieu_side_condition, AlphaSeq, SeveriSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderRow {
    pub m: u32,
    /// Arithmetic genus of `(2m-2) e + 2 f`.
    pub k: i64,
    pub alpha: AlphaSeq,
    pub dim: i64,
    pub side: i64,
}

pub fn ladder_row(m: u32) -> LadderRow {
    let spec = SeveriSpec::ladder(m);
    let (k, _) = genus_and_congruence(&cy_class(m as i64).expect("m >= 1")).expect("nonnegative square");
    LadderRow { m, k, alpha: spec.alpha().clone(), dim: dedieu_dim(&spec), side: dedieu_side_condition(&spec) }
}

pub fn ladder_rows(m_max: u32) -> Vec<LadderRow> {
    (1..=m_max).map(ladder_row).collect()
}

/// Whether the genera of `rows` are exactly the `k = 1 mod 4` with
/// `1 <= k <= max k`.
pub fn ladder_covers_residue_class(rows: &[LadderRow]) -> bool {
    let ks: BTreeSet<i64> = rows.iter().map(|r| r.k).collect();
    let Some(&top) = ks.iter().next_back() else { return false };
    let want: BTreeSet<i64> = (1..=top).filter(|k| k % 4 == 1).collect();
    ks.len() == rows.len() && ks == want
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let r = ladder_row(1);
        assert_eq!((r.k, r.alpha.as_slice(), r.dim, r.side), (1, &[2u32, 1][..], 0, 1));
        let r = ladder_row(2);
        assert_eq!((r.k, r.alpha.as_slice(), r.dim, r.side), (5, &[2u32, 3][..], 0, 1));
        assert_eq!(ladder_row(26).k, 101);
    }

    #[test]
    fn coverage_detects_gaps() {
        let rows = ladder_rows(30);
        assert!(ladder_covers_residue_class(&rows));
        let gapped: Vec<_> = rows.iter().filter(|r| r.m != 7).cloned().collect();
        assert!(!ladder_covers_residue_class(&gapped));
        assert!(!ladder_covers_residue_class(&[]));
    }
}
