//! Run records and their CSV/JSON renderings.

use serde::Serialize;

/// One iteration order of a solve.
#[derive(Debug, Clone, Serialize)]
pub struct OrderRecord {
    pub order: usize,
    pub delta: f64,
    pub energy: f64,
    pub residual: f64,
}

/// Complete outcome of a single-α solve.
///
/// JSON serialization keeps full f64 precision; the CSV rendering rounds to
/// six decimals.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub alpha: f64,
    pub lambda: f64,
    pub e_lambda: f64,
    pub orders: Vec<OrderRecord>,
    pub residuals: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<String>,
    pub near_threshold: bool,
    pub evaluations: usize,
    pub wall_time_s: f64,
}

impl RunRecord {
    pub fn delta(&self, order: usize) -> Option<f64> {
        self.orders
            .iter()
            .find(|o| o.order == order)
            .map(|o| o.delta)
    }

    pub fn energy(&self, order: usize) -> Option<f64> {
        self.orders
            .iter()
            .find(|o| o.order == order)
            .map(|o| o.energy)
    }

    pub fn to_table_row(&self) -> TableRow {
        TableRow {
            alpha: self.alpha,
            lambda: self.lambda,
            e_lambda: self.e_lambda,
            delta_1: self.delta(1),
            e_1: self.energy(1),
            delta_2: self.delta(2),
            e_2: self.energy(2),
            e_exact: self.e_oracle,
        }
    }
}

/// Benchmark-table row: α, λ, E_λ, Δ₁, E₁, Δ₂, E₂ and the oracle energy.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub alpha: f64,
    pub lambda: f64,
    pub e_lambda: f64,
    pub delta_1: Option<f64>,
    pub e_1: Option<f64>,
    pub delta_2: Option<f64>,
    pub e_2: Option<f64>,
    pub e_exact: Option<f64>,
}

pub const CSV_HEADER: &str = "alpha,lambda,E_lambda,delta_1,E_1,delta_2,E_2,E_exact";

fn csv_cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

impl TableRow {
    /// Six-decimal CSV row matching [`CSV_HEADER`].
    pub fn to_csv(&self) -> String {
        format!(
            "{:.6},{:.6},{:.6},{},{},{},{},{}",
            self.alpha,
            self.lambda,
            self.e_lambda,
            csv_cell(self.delta_1),
            csv_cell(self.e_1),
            csv_cell(self.delta_2),
            csv_cell(self.e_2),
            csv_cell(self.e_exact),
        )
    }
}

pub fn csv_document(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}
