use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Fixed CSV header; JSON rows carry the same keys in the same order.
pub const CSV_COLUMNS: [&str; 10] = [
    "instance",
    "n",
    "opt",
    "algorithm",
    "cost",
    "ratio",
    "advice_bits",
    "flags",
    "runtime_ms",
    "error",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowFlag {
    /// The algorithm raised its advice-inconsistent flag.
    Inconsistent,
    GuaranteeViolated,
    /// More advice read than the declared budget.
    OverBudget,
    /// The optimum could not be certified within the node budget.
    OptUnknown,
    InvalidPacking,
}

impl RowFlag {
    pub fn name(self) -> &'static str {
        match self {
            RowFlag::Inconsistent => "inconsistent",
            RowFlag::GuaranteeViolated => "guarantee-violated",
            RowFlag::OverBudget => "over-budget",
            RowFlag::OptUnknown => "opt-unknown",
            RowFlag::InvalidPacking => "invalid-packing",
        }
    }

    /// Flags that make the CLI exit with status 1.
    pub fn is_violation(self) -> bool {
        matches!(
            self,
            RowFlag::GuaranteeViolated | RowFlag::OverBudget | RowFlag::InvalidPacking
        )
    }
}

impl fmt::Display for RowFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One (instance, algorithm) cell of the matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub n: usize,
    pub opt: Option<usize>,
    pub algorithm: String,
    pub cost: Option<usize>,
    /// `cost/opt`, blank when the optimum is unknown.
    pub ratio: Option<f64>,
    pub advice_bits: Option<u64>,
    /// `;`-separated flag names.
    pub flags: String,
    /// Blank unless timing was requested, so reports stay byte-identical.
    pub runtime_ms: Option<f64>,
    pub error: String,
}

impl ReportRow {
    pub fn flag_list(&self) -> Vec<&str> {
        self.flags.split(';').filter(|f| !f.is_empty()).collect()
    }

    pub fn has_flag(&self, flag: RowFlag) -> bool {
        self.flag_list().contains(&flag.name())
    }

    pub fn is_violation(&self) -> bool {
        [
            RowFlag::GuaranteeViolated,
            RowFlag::OverBudget,
            RowFlag::InvalidPacking,
        ]
        .into_iter()
        .any(|f| self.has_flag(f))
    }
}

pub(crate) fn join_flags(flags: &mut Vec<RowFlag>) -> String {
    flags.sort_unstable();
    flags.dedup();
    flags.iter().map(|f| f.name()).collect::<Vec<_>>().join(";")
}

/// The tape an advice algorithm was given, serialized as `len:hex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TapeRecord {
    pub instance: String,
    pub algorithm: String,
    pub tape: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MatrixReport {
    pub rows: Vec<ReportRow>,
    pub tapes: Vec<TapeRecord>,
}

impl MatrixReport {
    pub fn any_violation(&self) -> bool {
        self.rows.iter().any(ReportRow::is_violation)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            writer.serialize(row).map_err(csv_error)?;
        }
        if self.rows.is_empty() {
            writer.write_record(CSV_COLUMNS).map_err(csv_error)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Harness(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Rows as a JSON array.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }

    pub fn tapes_json(&self) -> String {
        serde_json::to_string_pretty(&self.tapes).expect("tapes serialize")
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Harness(format!("csv: {e}"))
}
