// Regenerates the classification table over the default grid and prints one
// line per row with the algebras that realized it.

use std::collections::BTreeMap;

use sublorentz::{table_report, Grid};

fn main() {
    let report = table_report(&Grid::default());
    let mut rows: BTreeMap<_, Vec<String>> = BTreeMap::new();
    for record in &report.records {
        let algebras = rows.entry(record.expected.id).or_default();
        let name = record.realized_algebra.map_or("-".into(), |c| c.to_string());
        if !algebras.contains(&name) && algebras.len() < 4 {
            algebras.push(name);
        }
    }
    for (id, algebras) in &rows {
        println!("{:<75} {}", id.condition(), algebras.join(", "));
    }
    println!(
        "{} records, {} mismatches, {} skipped",
        report.records.len(),
        report.mismatches(),
        report.skipped.len()
    );
    for note in &report.footnotes {
        println!("note: {note}");
    }
}
