//! Assembling a [`CartanReport`] and the oracle verification records.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{integer_p_part, ExactRational};
use crate::cartan::{
    comackey_is_nonsingular, comackey_rank, comackey_size, det_comackey, det_comackey_forms,
    det_mackey_cartan, det_mackey_cartan_via_brauer, is_p_nilpotent, nonsingularity_criteria,
    p_nilpotency_criteria, pair_factor, rank_counts, AnalysisContext,
};
use crate::error::Result;
use crate::formulas::{scal_k_f, scal_k_f_oracle, sscal_k_f, sscal_k_f_oracle_with};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub r_order: u64,
    pub s_order: u64,
    pub centralizer_order: u64,
    pub centralizer_p_part: u64,
    pub factor: ExactRational,
    pub cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComackeySummary {
    pub rank: u64,
    pub size: u64,
    pub nonsingular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<ExactRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// One oracle-agreement check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub label: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    fn new(
        check: &str,
        label: impl Into<String>,
        passed: bool,
        detail: impl FnOnce() -> String,
    ) -> Self {
        CheckRecord {
            check: check.to_string(),
            label: label.into(),
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: (!passed).then(detail),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Everything computed for one `(G, p)`. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanReport {
    pub group: String,
    pub order: u64,
    pub degree: usize,
    pub prime: u64,
    pub pairs: Vec<PairRow>,
    pub det_mackey: ExactRational,
    pub comackey: ComackeySummary,
    pub p_nilpotent: bool,
    pub sylow_cyclic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<CheckRecord>>,
}

impl CartanReport {
    /// False iff some verification record failed.
    pub fn verified(&self) -> bool {
        self.verification.iter().flatten().all(CheckRecord::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group        {}", self.group);
        let _ = writeln!(s, "order        {}", self.order);
        let _ = writeln!(s, "degree       {}", self.degree);
        let _ = writeln!(s, "prime        {}", self.prime);
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:>4} {:>7} {:>7} {:>9} {:>7} {:>14} {:>6}",
            "#", "|R|", "|s|", "|C|", "|C|_p", "factor", "cyclic"
        );
        for (i, row) in self.pairs.iter().enumerate() {
            let _ = writeln!(
                s,
                "{:>4} {:>7} {:>7} {:>9} {:>7} {:>14} {:>6}",
                i,
                row.r_order,
                row.s_order,
                row.centralizer_order,
                row.centralizer_p_part,
                row.factor.to_string(),
                if row.cyclic { "yes" } else { "no" }
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "det_mackey   {}", self.det_mackey);
        let _ = writeln!(s, "rank         {}", self.comackey.rank);
        let _ = writeln!(s, "size         {}", self.comackey.size);
        let _ = writeln!(s, "nonsingular  {}", self.comackey.nonsingular);
        if let Some(det) = &self.comackey.det {
            let _ = writeln!(s, "det_comackey {det}");
        }
        let _ = writeln!(s, "p_nilpotent  {}", self.p_nilpotent);
        let _ = writeln!(s, "sylow_cyclic {}", self.sylow_cyclic);
        if let Some(records) = &self.verification {
            let _ = writeln!(s);
            for r in records {
                let _ = writeln!(s, "{}", check_line(r));
            }
        }
        s
    }
}

pub fn check_line(r: &CheckRecord) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    match &r.detail {
        Some(d) => format!("{} {} {} ({})", r.check, r.label, status, d),
        None => format!("{} {} {}", r.check, r.label, status),
    }
}

/// Full analysis of `(G, p)`. With `verify`, every closed form is recomputed
/// along its second route and the comparisons are attached as records;
/// disagreements show up as failed records rather than errors.
pub fn analyze(group: &FiniteGroup, p: u64, verify: bool) -> Result<CartanReport> {
    analyze_named("G", group, p, verify)
}

pub fn analyze_named(
    name: &str,
    group: &FiniteGroup,
    p: u64,
    verify: bool,
) -> Result<CartanReport> {
    let ctx = AnalysisContext::new(group, p)?;
    let mut rows = Vec::with_capacity(ctx.pairs.len());
    for pair in &ctx.pairs {
        let c = pair.centralizer_order();
        rows.push(PairRow {
            r_order: pair.r().order(),
            s_order: pair.s_bar().order(),
            centralizer_order: c,
            centralizer_p_part: integer_p_part(c, p),
            factor: pair_factor(pair)?,
            cyclic: pair.is_cyclic(),
        });
    }
    let det_mackey = det_mackey_cartan(&ctx)?;
    let sylow_cyclic = ctx.sylow().representative.is_cyclic();
    let size = comackey_size(&ctx);

    if !verify {
        let rank = comackey_rank(&ctx)?;
        let nonsingular = comackey_is_nonsingular(&ctx)?;
        let det = if nonsingular {
            Some(det_comackey(&ctx)?)
        } else {
            None
        };
        return Ok(CartanReport {
            group: name.to_string(),
            order: group.order(),
            degree: group.degree(),
            prime: p,
            pairs: rows,
            det_mackey,
            comackey: ComackeySummary {
                rank,
                size,
                nonsingular,
                det,
            },
            p_nilpotent: is_p_nilpotent(group, p)?,
            sylow_cyclic,
            verification: None,
        });
    }

    let mut records = Vec::new();
    for (i, pair) in ctx.pairs.iter().enumerate() {
        let label = format!("{name}#{i}:{}", pair.label());
        let closed = scal_k_f(pair);
        let oracle = scal_k_f_oracle(pair)?;
        records.push(CheckRecord::new(
            "scal_k_F",
            label.clone(),
            closed == oracle,
            || format!("closed {closed} vs moebius {oracle}"),
        ));
        let closed = sscal_k_f(pair)?;
        let oracle = sscal_k_f_oracle_with(pair, &ctx.class_quotients)?;
        records.push(CheckRecord::new(
            "sscal_k_F",
            label,
            closed == oracle,
            || format!("closed {closed} vs brauer {oracle}"),
        ));
    }
    let via_brauer = det_mackey_cartan_via_brauer(&ctx)?;
    let factor_product = ExactRational::product(rows.iter().map(|r| &r.factor));
    records.push(CheckRecord::new(
        "det_mackey_paths",
        name,
        det_mackey == via_brauer && det_mackey == factor_product,
        || format!("closed {det_mackey}, brauer {via_brauer}, factor product {factor_product}"),
    ));

    let counts = rank_counts(&ctx)?;
    records.push(CheckRecord::new(
        "comackey_rank_counts",
        name,
        counts.agree(),
        || format!("{counts:?}"),
    ));
    let nil = p_nilpotency_criteria(group, p)?;
    records.push(CheckRecord::new(
        "p_nilpotent_criteria",
        name,
        nil.frobenius == nil.p_prime_closure,
        || format!("{nil:?}"),
    ));
    let ns = nonsingularity_criteria(&ctx)?;
    records.push(CheckRecord::new(
        "nonsingular_criteria",
        name,
        ns.full_rank == ns.nilpotent_cyclic_sylow,
        || format!("{ns:?}"),
    ));
    let nonsingular = ns.full_rank;
    let det = if nonsingular {
        let forms = det_comackey_forms(&ctx)?;
        records.push(CheckRecord::new(
            "det_comackey_forms",
            name,
            forms.agree(),
            || format!("{forms:?}"),
        ));
        let remark = forms
            .product_form
            .factor_as_p_minus_one_times_p(p)
            .is_some();
        records.push(CheckRecord::new("det_comackey_shape", name, remark, || {
            format!("{} is not (p-1)^a p^m", forms.product_form)
        }));
        Some(forms.product_form)
    } else {
        None
    };

    Ok(CartanReport {
        group: name.to_string(),
        order: group.order(),
        degree: group.degree(),
        prime: p,
        pairs: rows,
        det_mackey,
        comackey: ComackeySummary {
            rank: counts.cyclic_pairs,
            size,
            nonsingular,
            det,
        },
        p_nilpotent: nil.frobenius,
        sylow_cyclic,
        verification: Some(records),
    })
}
