//! Auditor for a previously published table of candidate triples. The rows
//! are embedded verbatim, errors included; the auditor's job is transparent
//! reporting, never silent correction. The one permitted reinterpretation
//! (reading the 17^4 row with a negative offset) is labeled sign-corrected.

use crate::abc::{make_triple, quality};
use crate::arith::FactorConfig;
use crate::error::Result;
use crate::krep::dirichlet_coeffs;
use crate::serial::{json_str, sig6};

/// One table row as printed: lhs_base^lhs_exp + offset = rhs.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub row_id: u8,
    pub lhs_base: u128,
    pub lhs_exp: u32,
    /// Net signed offset (sums like "+ 1 + 4" are evaluated).
    pub offset: i128,
    pub offset_text: &'static str,
    pub rhs: u128,
    pub rhs_text: &'static str,
    pub printed_gamma: f64,
    pub printed_genus: u8,
}

impl TableRow {
    pub fn expression(&self) -> String {
        format!(
            "{}^{} {} = {}",
            self.lhs_base, self.lhs_exp, self.offset_text, self.rhs_text
        )
    }
}

/// The 19 published rows, transcribed verbatim.
pub fn published_rows() -> Vec<TableRow> {
    fn pw(b: u128, e: u32) -> u128 {
        b.pow(e)
    }
    let row = |row_id,
               lhs_base,
               lhs_exp,
               offset,
               offset_text,
               rhs,
               rhs_text,
               printed_gamma,
               printed_genus| TableRow {
        row_id,
        lhs_base,
        lhs_exp,
        offset,
        offset_text,
        rhs,
        rhs_text,
        printed_gamma,
        printed_genus,
    };
    vec![
        row(1, 2, 8, 1 - 4, "+ 1 - 4", pw(5, 3), "5^3", 1.426, 1),
        row(
            2,
            2,
            10,
            1 + 4,
            "+ 1 + 4",
            3 * pw(7, 3),
            "3 * 7^3",
            1.296,
            1,
        ),
        row(3, 2, 11, 1 + 138, "+ 1 + 138", pw(3, 7), "3^7", 1.33, 2),
        row(
            4,
            2,
            12,
            1 + 102,
            "+ 1 + 102",
            3 * pw(11, 3),
            "3 * 11^3",
            0.94,
            2,
        ),
        row(5, 2, 14, 1 + 422, "+ 1 + 422", pw(7, 5), "7^5", 1.117, 2),
        row(
            6,
            2,
            15,
            1 + 36,
            "+ 1 + 36",
            pw(3, 8) * 5,
            "3^8 * 5",
            1.482,
            1,
        ),
        row(
            7,
            2,
            16,
            1 + 88,
            "+ 1 + 88",
            3 * pw(5, 5) * 7,
            "3 * 5^5 * 7",
            1.27,
            1,
        ),
        row(
            8,
            8,
            6,
            (25 * 41) as i128,
            "+ 5^2 * 41",
            pw(3, 6) * pw(19, 2),
            "3^6 * 19^2",
            1.240709,
            1,
        ),
        row(
            9,
            3,
            14,
            (pw(5, 4) * 7) as i128,
            "+ 5^4 * 7",
            pw(2, 4) * pw(547, 2),
            "2^4 * 547^2",
            1.320123,
            1,
        ),
        row(
            10,
            3,
            20,
            -((7 * 16871) as i128),
            "- 7 * 16871",
            pw(2, 6) * pw(11, 4) * pw(61, 2),
            "2^6 * 11^4 * 61^2",
            1.099722,
            1,
        ),
        row(
            11,
            5,
            4,
            -((7 * 7) as i128),
            "- 7^2",
            pw(2, 6) * pw(3, 2),
            "2^6 * 3^2",
            1.1887,
            1,
        ),
        row(
            12,
            7,
            8,
            -4801,
            "- 4801",
            pw(2, 10) * pw(3, 2) * pw(5, 4),
            "2^10 * 3^2 * 5^4",
            1.126071,
            1,
        ),
        row(
            13,
            11,
            6,
            2663,
            "+ 2663",
            pw(2, 4) * pw(3, 4) * pw(37, 2),
            "2^4 * 3^4 * 37^2",
            0.917203,
            1,
        ),
        row(
            14,
            13,
            8,
            -((239 * 239) as i128),
            "- 239^2",
            pw(2, 8) * pw(3, 2) * pw(5, 2) * pw(7, 2) * pw(17, 2),
            "2^8 * 3^2 * 5^2 * 7^2 * 17^2",
            1.26494,
            1,
        ),
        row(15, 17, 3, 128, "+ 2^7", pw(71, 2), "71^2", 1.094533, 1),
        row(
            16,
            17,
            4,
            577,
            "+ 577",
            pw(2, 10) * pw(3, 4),
            "2^10 * 3^4",
            1.03124,
            1,
        ),
        row(
            17,
            17,
            8,
            -((pw(7, 3) * 487) as i128),
            "- 7^3 * 487",
            pw(2, 12) * pw(3, 4) * pw(5, 2) * pw(29, 2),
            "2^12 * 3^4 * 5^2 * 29^2",
            1.277956,
            1,
        ),
        row(
            18,
            19,
            6,
            (3 * 17 * 269) as i128,
            "+ 3 * 17 * 269",
            pw(2, 4) * pw(5, 2) * pw(7, 6),
            "2^4 * 5^2 * 7^6",
            1.056668,
            1,
        ),
        row(
            19,
            23,
            6,
            (5 * 31 * 157) as i128,
            "+ 5 * 31 * 157",
            pw(2, 6) * pw(3, 4) * pw(13, 4),
            "2^6 * 3^4 * 13^4",
            1.069422,
            1,
        ),
    ]
}

/// The record triple printed alongside the table, audited as row 0.
const RECORD_PRINTED_GAMMA: f64 = 1.62991;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditFlag {
    IdentityMismatch,
    GammaMismatch,
    SignCorrected,
}

impl AuditFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            AuditFlag::IdentityMismatch => "identity-mismatch",
            AuditFlag::GammaMismatch => "gamma-mismatch",
            AuditFlag::SignCorrected => "sign-corrected",
        }
    }
}

/// Audit verdict for one row. `identity_holds` reflects the row exactly as
/// printed; a delta is present iff the identity holds as printed or under
/// the documented sign correction.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditResult {
    pub row_id: u8,
    pub expression: String,
    pub identity_holds: bool,
    pub computed_gamma: Option<f64>,
    pub printed_gamma: f64,
    pub delta: Option<f64>,
    pub flags: Vec<AuditFlag>,
}

impl AuditResult {
    pub fn has_flag(&self, f: AuditFlag) -> bool {
        self.flags.contains(&f)
    }

    pub fn to_jsonl(&self) -> String {
        let fmt_opt = |v: Option<f64>| v.map_or("null".to_string(), sig6);
        let flags: Vec<String> = self
            .flags
            .iter()
            .map(|f| format!("\"{}\"", f.as_str()))
            .collect();
        format!(
            r#"{{"row":{},"expr":{},"identity_holds":{},"printed_gamma":{},"computed_gamma":{},"delta":{},"flags":[{}]}}"#,
            self.row_id,
            json_str(&self.expression),
            self.identity_holds,
            sig6(self.printed_gamma),
            fmt_opt(self.computed_gamma),
            fmt_opt(self.delta),
            flags.join(","),
        )
    }
}

const GAMMA_TOLERANCE: f64 = 0.002;

fn audit_one(row: &TableRow, cfg: &FactorConfig) -> Result<AuditResult> {
    let lhs = row.lhs_base.pow(row.lhs_exp);
    let holds_with = |offset: i128| -> bool {
        if offset >= 0 {
            lhs.checked_add(offset as u128) == Some(row.rhs)
        } else {
            lhs.checked_sub(offset.unsigned_abs()) == Some(row.rhs)
        }
    };
    let identity_holds = holds_with(row.offset);
    let mut flags = Vec::new();
    let mut offset = row.offset;
    let mut usable = identity_holds;
    if !identity_holds {
        // the 17^4 row audits cleanly when its offset is read negative
        if row.row_id == 16 && holds_with(-row.offset) {
            offset = -row.offset;
            usable = true;
            flags.push(AuditFlag::SignCorrected);
        } else {
            flags.push(AuditFlag::IdentityMismatch);
        }
    }
    let (computed_gamma, delta) = if usable {
        let (x, y) = if offset >= 0 {
            (offset as u128, lhs)
        } else {
            (offset.unsigned_abs(), row.rhs)
        };
        let t = make_triple(x, y, format!("table row {}", row.row_id))?;
        let report = quality(&t, cfg)?;
        let delta = report.gamma - row.printed_gamma;
        if delta.abs() > GAMMA_TOLERANCE {
            flags.push(AuditFlag::GammaMismatch);
        }
        (Some(report.gamma), Some(delta))
    } else {
        (None, None)
    };
    Ok(AuditResult {
        row_id: row.row_id,
        expression: row.expression(),
        identity_holds,
        computed_gamma,
        printed_gamma: row.printed_gamma,
        delta,
        flags,
    })
}

/// Evaluate all 19 printed identities in exact integers, recompute gamma
/// where they hold, and report the deltas. The record triple audits as
/// row 0. Failures are data, not errors.
pub fn audit_table(cfg: &FactorConfig) -> Vec<AuditResult> {
    let mut out = Vec::with_capacity(20);

    // record triple: 2 + 109 * 3^10 = 23^5
    let parts: (u128, u128) = (2, 109 * 3u128.pow(10));
    let record = make_triple(parts.0, parts.1, "record triple").expect("coprime by inspection");
    let report = quality(&record, cfg).expect("small smooth parts");
    let delta = report.gamma - RECORD_PRINTED_GAMMA;
    out.push(AuditResult {
        row_id: 0,
        expression: "2 + 109 * 3^10 = 23^5".to_string(),
        identity_holds: parts.0 + parts.1 == 23u128.pow(5),
        computed_gamma: Some(report.gamma),
        printed_gamma: RECORD_PRINTED_GAMMA,
        delta: Some(delta),
        flags: if delta.abs() > GAMMA_TOLERANCE {
            vec![AuditFlag::GammaMismatch]
        } else {
            vec![]
        },
    });

    for row in published_rows() {
        out.push(audit_one(&row, cfg).expect("table values are small and coprime"));
    }
    out
}

/// One coefficient of the published series display compared against the
/// computed remainder sequence. `printed` lists the accepted readings
/// (the 13th term is printed with an ambiguous sign).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesAuditEntry {
    pub n: u64,
    pub printed: Vec<i128>,
    pub printed_text: &'static str,
    pub computed: i128,
    pub matches: bool,
}

impl SeriesAuditEntry {
    pub fn to_jsonl(&self) -> String {
        format!(
            r#"{{"series_n":{},"printed":{},"computed":{},"match":{}}}"#,
            self.n,
            json_str(self.printed_text),
            self.computed,
            self.matches,
        )
    }
}

/// Compare the printed series coefficients (n = 1..14, zero terms implicit)
/// against the computed b_n. Expected outcome: n = 2..12 match exactly,
/// n = 1 differs by the b_1 = 0 convention, n = 13 and 14 differ as printed.
pub fn audit_series() -> Vec<SeriesAuditEntry> {
    let printed: [(&'static str, &[i128]); 14] = [
        ("1", &[1]),
        ("+1", &[1]),
        ("-1", &[-1]),
        ("(absent)", &[0]),
        ("+1", &[1]),
        ("+2", &[2]),
        ("-2", &[-2]),
        ("-1", &[-1]),
        ("(absent)", &[0]),
        ("+1", &[1]),
        ("+2", &[2]),
        ("+3", &[3]),
        ("±4", &[4, -4]),
        ("-3", &[-3]),
    ];
    let computed = dirichlet_coeffs(14);
    printed
        .iter()
        .enumerate()
        .map(|(i, &(text, accepted))| {
            let n = (i + 1) as u64;
            let c = computed[i];
            SeriesAuditEntry {
                n,
                printed: accepted.to_vec(),
                printed_text: text,
                computed: c,
                matches: accepted.contains(&c),
            }
        })
        .collect()
}
