//! RFC 4180 table export.

use crate::error::Result;
use crate::export::table::{select_rows, AssetFilter, Column, TableSpec};
use crate::model::Asset;
use crate::schema::Schema;

/// CSV with a header row, CRLF line endings, and quoting only where a cell
/// contains a comma, quote, CR or LF.
pub fn to_csv(assets: &[Asset], spec: &TableSpec, schema: &Schema) -> Result<String> {
    to_csv_filtered(assets, spec, &AssetFilter::default(), schema)
}

pub fn to_csv_filtered(assets: &[Asset], spec: &TableSpec, filter: &AssetFilter, schema: &Schema) -> Result<String> {
    let columns = spec.columns(schema)?;
    let rows = select_rows(assets, spec, filter, schema)?;
    let mut out = String::new();

    let mut header = Vec::new();
    for col in &columns {
        header.push(col.name().to_owned());
        if spec.with_explanations && matches!(col, Column::Field(_)) {
            header.push(format!("{}_explanation", col.name()));
        }
    }
    write_record(&mut out, header.iter().map(String::as_str));

    for asset in rows {
        let mut cells = Vec::with_capacity(header.len());
        for col in &columns {
            cells.push(col.cell(asset));
            if spec.with_explanations && matches!(col, Column::Field(_)) {
                let explanation = col.field_value(asset).and_then(|fv| fv.explanation()).unwrap_or_default();
                cells.push(explanation.to_owned());
            }
        }
        write_record(&mut out, cells.iter().map(String::as_str));
    }
    Ok(out)
}

fn write_record<'a>(out: &mut String, cells: impl Iterator<Item = &'a str>) {
    for (i, cell) in cells.enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_cell(out, cell);
    }
    out.push_str("\r\n");
}

fn write_cell(out: &mut String, cell: &str) {
    if cell.contains([',', '"', '\r', '\n']) {
        out.push('"');
        out.push_str(&cell.replace('"', "\"\""));
        out.push('"');
    } else {
        out.push_str(cell);
    }
}
