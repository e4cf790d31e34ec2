use super::formula::{
    corollary_bounds, decompose, separation_formula, sobol_distance, witness_pair, BoundCheck,
    Kind, MDecomposition,
};
use crate::digital::{prefix, GeneratorPair};
use crate::dyadic::Dyadic;
use crate::error::{domain, Result};
use crate::geometry::{separation, Norm};

/// Largest `m` for which an exhaustive separation may be requested.
pub const EXHAUSTIVE_CEILING: u32 = 20;
/// Exhaustive cut-off used when only the formula side is requested above it.
pub const FORMULA_ONLY_EXHAUSTIVE_MAX: u32 = 14;

/// Closed form against exhaustive search for one `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub decomposition: MDecomposition,
    pub q_formula: Dyadic,
    pub q_exhaustive: Option<Dyadic>,
    /// The closed-form witness for general `m`, else the searched one.
    pub witness: Option<(u64, u64)>,
    pub formula_matches: Option<bool>,
    /// Whether the closed-form witness sits at distance `2 q_formula`.
    pub witness_ok: Option<bool>,
    pub bounds: BoundCheck,
}

impl VerifyRow {
    pub fn m(&self) -> u32 {
        self.decomposition.m
    }

    pub fn pass(&self) -> bool {
        self.formula_matches.unwrap_or(true) && self.witness_ok.unwrap_or(true) && self.bounds.all_hold()
    }
}

/// Verifies `m` against [`separation_formula`].
pub fn verify_m(m: u32, exhaustive: bool) -> Result<VerifyRow> {
    verify_m_with(m, exhaustive, &separation_formula)
}

/// Verifies `m` against an arbitrary candidate formula; the corollary bounds
/// are checked against the exhaustive value when there is one.
pub fn verify_m_with(
    m: u32,
    exhaustive: bool,
    formula: &dyn Fn(u32) -> Result<Dyadic>,
) -> Result<VerifyRow> {
    if exhaustive && m > EXHAUSTIVE_CEILING {
        return domain(format!(
            "exhaustive separation requested for m = {m} (ceiling {EXHAUSTIVE_CEILING})"
        ));
    }
    let decomposition = decompose(m)?;
    let q_formula = formula(m)?;
    let searched = if exhaustive {
        let ps = prefix(&GeneratorPair::sobol(m)?, 1usize << m)?;
        Some(separation(&ps, Norm::LInf)?)
    } else {
        None
    };
    let q_exhaustive = searched.map(|r| r.radius().value());
    let (witness, witness_ok) = match witness_pair(m)? {
        Some((p, q)) => {
            let ok = sobol_distance(p, q, m)? == q_formula.mul_pow2(1);
            (Some((p, q)), Some(ok))
        }
        None => (searched.map(|r| (r.witness.0 as u64, r.witness.1 as u64)), None),
    };
    debug_assert!(witness.is_some() || decomposition.kind != Kind::General);
    let bounds = corollary_bounds(m)?.check(&q_exhaustive.unwrap_or(q_formula));
    Ok(VerifyRow {
        decomposition,
        q_formula,
        formula_matches: q_exhaustive.map(|q| q == q_formula),
        q_exhaustive,
        witness,
        witness_ok,
        bounds,
    })
}

/// Rows for `m = 1..=m_max`, exhaustive up to `exhaustive_max`.
pub fn verify_range(
    m_max: u32,
    exhaustive_max: u32,
    formula: &dyn Fn(u32) -> Result<Dyadic>,
) -> Result<Vec<VerifyRow>> {
    (1..=m_max)
        .map(|m| verify_m_with(m, m <= exhaustive_max, formula))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_passes() {
        let rows = verify_range(10, 10, &separation_formula).unwrap();
        assert!(rows.iter().all(VerifyRow::pass));
        assert_eq!(rows[5].witness, Some((34, 60)));
        assert_eq!(rows[7].witness_ok, None);
        assert!(rows[7].witness.is_some());
    }

    #[test]
    fn formula_only_rows() {
        let row = verify_m(24, false).unwrap();
        assert!(row.pass());
        assert_eq!(row.q_exhaustive, None);
        assert_eq!(row.witness_ok, Some(true));
        assert!(verify_m(21, true).is_err());
    }

    #[test]
    fn injected_fault_is_caught() {
        let wrong = |m: u32| separation_formula(m).map(|q| q.mul_pow2(1));
        let rows = verify_range(8, 8, &wrong).unwrap();
        assert!(rows.iter().any(|r| !r.pass()));
        assert!(rows.iter().all(|r| r.formula_matches == Some(false)));
    }
}
