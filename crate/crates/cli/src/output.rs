use std::fmt::Write as _;

use qubit_monotones::monotones::InvariantReport;
use qubit_monotones::state::format_f64;

pub const CSV_HEADER: [&str; 10] = [
    "partition",
    "n",
    "L",
    "l",
    "d_value",
    "e_value",
    "aux_name",
    "aux_re",
    "aux_im",
    "rank_deficient",
];

/// Which monotone columns carry values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Columns {
    pub d: bool,
    pub e: bool,
}

fn json_number(x: Option<f64>) -> String {
    x.map_or_else(|| "null".to_string(), format_f64)
}

fn json_string(s: &str) -> String {
    // labels and aux names are plain ASCII digits, commas and letters
    format!("\"{s}\"")
}

pub fn to_json(num_qubits: usize, reports: &[InvariantReport], cols: Columns) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"n_qubits\": {num_qubits},");
    let _ = writeln!(out, "  \"records\": [");
    for (i, r) in reports.iter().enumerate() {
        let aux_name = r.aux.map_or("null".to_string(), |a| json_string(a.name.as_str()));
        let fields = [
            format!("\"partition\": {}", json_string(&r.label())),
            format!("\"n\": {}", r.n()),
            format!("\"L\": {}", r.big_l()),
            format!("\"l\": {}", r.small_l()),
            format!("\"d_value\": {}", json_number(cols.d.then_some(r.d_value))),
            format!("\"e_value\": {}", json_number(cols.e.then_some(r.e_value))),
            format!("\"aux_name\": {aux_name}"),
            format!("\"aux_re\": {}", json_number(r.aux.map(|a| a.value.re))),
            format!("\"aux_im\": {}", json_number(r.aux.map(|a| a.value.im))),
            format!("\"rank_deficient\": {}", r.rank_deficient),
        ];
        let sep = if i + 1 == reports.len() { "" } else { "," };
        let _ = writeln!(out, "    {{{}}}{sep}", fields.join(", "));
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

pub fn to_csv(reports: &[InvariantReport], cols: Columns) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER)?;
    let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
    for r in reports {
        writer.write_record([
            r.label(),
            r.n().to_string(),
            r.big_l().to_string(),
            r.small_l().to_string(),
            opt(cols.d.then_some(r.d_value)),
            opt(cols.e.then_some(r.e_value)),
            r.aux.map(|a| a.name.as_str().to_string()).unwrap_or_default(),
            opt(r.aux.map(|a| a.value.re)),
            opt(r.aux.map(|a| a.value.im)),
            r.rank_deficient.to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
