//! Reproduction table: every closed-form value the library is expected to
//! produce, recomputed and compared.

use fermispin::bell::chsh_for_density;
use fermispin::entanglement::{negativity_measure_with, witness_at};
use fermispin::rho::{singlet_dimension, total_spin_commutator, Axis};
use fermispin::{
    build_rho_pairing, build_rho_slater_oracle, build_singlet_projector, chsh_value_full,
    chsh_value_reduced, enumerate_matchings, overlap, pair_correlation, pairing_state,
    partial_trace, ppt_separability_pair, sylvester_witness, two_spin_reduced_analytic,
    von_neumann_entropy, Bipartition, Builder, ExactDensityMatrix, Limits, ParentSize, Rational,
    SubsystemMask,
};
use serde::Serialize;
use serde_json::Value;

use crate::cache::MatrixCache;
use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub id: String,
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

struct Table(Vec<Row>);

impl Table {
    fn push(
        &mut self,
        id: &str,
        quantity: &str,
        expected: impl ToString,
        computed: impl ToString,
        pass: bool,
    ) {
        self.0.push(Row {
            id: id.into(),
            quantity: quantity.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        });
    }

    fn exact(&mut self, id: &str, quantity: &str, expected: Rational, computed: Rational) {
        self.push(id, quantity, expected, computed, expected == computed);
    }

    fn close(&mut self, id: &str, quantity: &str, expected: f64, computed: f64, tol: f64) {
        let pass = (expected - computed).abs() <= tol;
        self.push(
            id,
            quantity,
            format!("{expected:.15}"),
            format!("{computed:.15}"),
            pass,
        );
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

pub fn rows(cache: &MatrixCache, limits: &Limits) -> fermispin::Result<Vec<Row>> {
    let mut t = Table(Vec::new());
    let rho = |n: usize| -> fermispin::Result<ExactDensityMatrix> {
        cache
            .get_or_build(Builder::Pairing, n, limits)
            .map(|(m, _)| m)
    };

    // 1. overlaps of the three N=4 pairing states
    let states: Vec<_> = enumerate_matchings(4)?.iter().map(pairing_state).collect();
    t.exact(
        "1a",
        "overlap (0,1)(2,3)·(0,2)(1,3)",
        r(1, 2),
        overlap(&states[0], &states[1])?,
    );
    t.exact(
        "1b",
        "overlap (0,1)(2,3)·(0,3)(1,2)",
        r(-1, 2),
        overlap(&states[0], &states[2])?,
    );
    t.exact(
        "1c",
        "overlap (0,2)(1,3)·(0,3)(1,2)",
        r(1, 2),
        overlap(&states[1], &states[2])?,
    );

    // 2. three constructions of rho^4
    let rho4 = rho(4)?;
    let slater = build_rho_slater_oracle(4)?;
    t.push(
        "2a",
        "rho^4 pairing = Slater",
        "equal",
        if *rho4 == *slater { "equal" } else { "differ" },
        *rho4 == *slater,
    );
    let p0 = build_singlet_projector(4)?.maximally_mixed()?;
    t.close(
        "2b",
        "max |rho^4 - P0/d0|",
        0.0,
        rho4.max_abs_diff(&p0),
        1e-12,
    );
    t.push(
        "2c",
        "singlet dimension d0(4)",
        2,
        singlet_dimension(4),
        singlet_dimension(4) == 2,
    );

    // 3. entropies
    t.close(
        "3a",
        "S(rho^4)",
        2f64.ln(),
        von_neumann_entropy(&rho4)?,
        1e-9,
    );
    let rho6 = rho(6)?;
    t.close(
        "3b",
        "S(rho^6)",
        5f64.ln(),
        von_neumann_entropy(&rho6)?,
        1e-9,
    );

    // 4. reduced pair state
    let w4 = two_spin_reduced_analytic(ParentSize::Finite(4))?;
    t.exact("4a", "pair singlet weight, N=4", r(1, 2), w4.singlet);
    t.exact("4b", "pair triplet weight, N=4", r(1, 6), w4.triplet_each);
    let pair = partial_trace(&rho4, &SubsystemMask::new(&[0, 3], 4)?)?;
    let same = *pair == *w4.to_density_matrix();
    t.push(
        "4c",
        "trace of rho^4 to spins 0,3 = closed form",
        "equal",
        if same { "equal" } else { "differ" },
        same,
    );
    let w2 = two_spin_reduced_analytic(ParentSize::Finite(2))?;
    t.exact("4d", "pair singlet weight, N=2", r(1, 1), w2.singlet);

    // 5. correlation law
    t.exact(
        "5a",
        "pair correlation, N=4",
        r(-1, 3),
        pair_correlation(ParentSize::Finite(4))?,
    );
    t.exact(
        "5b",
        "pair correlation, N=10^6",
        r(-1, 999_999),
        pair_correlation(ParentSize::Finite(1_000_000))?,
    );
    t.exact(
        "5c",
        "pair correlation, N -> infinity",
        r(0, 1),
        pair_correlation(ParentSize::Infinite)?,
    );

    // 6. negativity of the 2|2 split
    let bp22 = Bipartition::new(&[0, 1], 4)?;
    let neg = negativity_measure_with(&rho4, &bp22, limits)?;
    let expected_spectrum = [
        0.5,
        1. / 6.,
        1. / 6.,
        1. / 6.,
        1. / 6.,
        1. / 6.,
        1. / 6.,
        -1. / 6.,
        -1. / 6.,
        -1. / 6.,
    ];
    let mut nonzero: Vec<f64> = neg
        .eigenvalues
        .iter()
        .copied()
        .filter(|x| x.abs() > 1e-10)
        .collect();
    nonzero.sort_by(|a, b| b.total_cmp(a));
    let spectrum_ok = nonzero.len() == expected_spectrum.len()
        && nonzero
            .iter()
            .zip(&expected_spectrum)
            .all(|(a, b)| (a - b).abs() <= 1e-10);
    t.push(
        "6a",
        "PT spectrum of rho^4, split 0,1|2,3",
        fmt_list(&expected_spectrum),
        fmt_list(&nonzero),
        spectrum_ok,
    );
    t.close(
        "6b",
        "negativity E, split 0,1|2,3",
        1.0,
        neg.negativity,
        1e-10,
    );

    // 7. pair-state PPT test
    let ppt2 = ppt_separability_pair(ParentSize::Finite(2))?;
    t.exact(
        "7a",
        "min PT eigenvalue of pair state, N=2",
        r(-1, 2),
        ppt2.min_eigenvalue,
    );
    let ppt4 = ppt_separability_pair(ParentSize::Finite(4))?;
    t.push("7b", "pair state PPT, N=4", true, ppt4.is_ppt, ppt4.is_ppt);
    let ppt6 = ppt_separability_pair(ParentSize::Finite(6))?;
    t.push("7c", "pair state PPT, N=6", true, ppt6.is_ppt, ppt6.is_ppt);

    // 8. witness for the six-spin 3|3 split, at the ↑↑↑↓↓↓ / ↓↓↓↑↑↑ element
    let bp33 = Bipartition::new(&[0, 1, 2], 6)?;
    match witness_at(&rho6, &bp33, 0b000111, 0b111000) {
        Some(w) => {
            t.exact(
                "8a",
                "coherence ↑↑↑↓↓↓ / ↓↓↓↑↑↑ in rho^6",
                r(-1, 20),
                w.source_value,
            );
            t.exact(
                "8b",
                "principal minor from that coherence, 3|3",
                r(-1, 400),
                w.minor,
            );
        }
        None => t.push("8a", "witness at ↑↑↑↓↓↓ / ↓↓↓↑↑↑, 3|3", true, false, false),
    }
    let scan = sylvester_witness(&rho6, &bp33)?;
    let negative = scan
        .as_ref()
        .is_some_and(|w| w.minor < Rational::from_integer(0));
    t.push(
        "8c",
        "full scan finds a negative minor, N=6 3|3",
        true,
        scan.map(|w| w.minor.to_string())
            .unwrap_or_else(|| "none".into()),
        negative,
    );

    // 9. CHSH
    let full = chsh_value_full(4)?;
    t.close(
        "9a",
        "CHSH full, N=4",
        2.0 * std::f64::consts::SQRT_2,
        full.value,
        1e-10,
    );
    let reduced = chsh_value_reduced(1_000_000)?;
    t.exact(
        "9b",
        "CHSH reduced / sqrt2, N=10^6",
        r(2, 1),
        reduced.value_over_sqrt2,
    );
    let product = ExactDensityMatrix::maximally_mixed(4)?;
    t.close(
        "9c",
        "CHSH of maximally mixed product state",
        0.0,
        chsh_for_density(&product, 0)?.value,
        1e-12,
    );
    let sep = chsh_for_density(&w4.to_density_matrix(), 0)?;
    t.push(
        "9d",
        "CHSH of N=4 pair state <= 2",
        "<= 2",
        format!("{:.15}", sep.value),
        sep.value <= 2.0,
    );

    // 10. structure of rho^6
    let commutes = [Axis::X, Axis::Y, Axis::Z]
        .iter()
        .map(|&a| total_spin_commutator(&rho6, a).map(|c| c.is_zero()))
        .collect::<fermispin::Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    t.push(
        "10a",
        "rho^6 commutes with total spin",
        true,
        commutes,
        commutes,
    );
    let sz = rho6.supported_in_sz_zero();
    t.push("10b", "rho^6 supported in Sz = 0", true, sz, sz);

    // 11. cache round trip
    let fresh = build_rho_pairing(4)?;
    let cached = rho(4)?;
    let same = fresh == cached;
    t.push(
        "11",
        "cached rho^4 = fresh build",
        "equal",
        if same { "equal" } else { "differ" },
        same,
    );

    Ok(t.0)
}

pub fn run(cache: &MatrixCache, limits: &Limits) -> Result<Value, CliError> {
    let rows = rows(cache, limits)?;
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(serde_json::json!({
        "rows": rows,
        "passed": rows.iter().filter(|r| r.pass).count(),
        "total": rows.len(),
        "all_pass": all_pass,
    }))
}
