use super::OrbitSpaceCase;

/// Column layout of the emitted CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableLayout {
    /// `#, Ext ∠'s, Int ∠'s, Tiling?, Tile, No. Tiles`
    WithTileCount,
    /// Same without the tile-count column (the flat table).
    WithoutTileCount,
}

const HEADER: [&str; 6] = ["#", "Ext ∠'s", "Int ∠'s", "Tiling?", "Tile", "No. Tiles"];

fn row(case: &OrbitSpaceCase) -> [String; 6] {
    let join = |parts: Vec<String>| parts.join(", ");
    let ext = join(case.boundary.iter().map(|s| s.to_string()).collect());
    let int = join(case.cones.iter().map(|s| s.to_string()).collect());
    let (flag, tile, count) = match &case.tiling {
        Some(t) => ("Yes", t.tile.to_string(), t.tile_count.to_string()),
        None => ("No", String::new(), String::new()),
    };
    [
        case.case_id.to_string(),
        ext,
        int,
        flag.to_string(),
        tile,
        count,
    ]
}

/// Renders the classification table as CSV (header plus one row per record).
pub fn cases_to_csv(cases: &[OrbitSpaceCase], layout: TableLayout) -> String {
    let width = match layout {
        TableLayout::WithTileCount => 6,
        TableLayout::WithoutTileCount => 5,
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&HEADER[..width]).expect("writing to memory");
    for case in cases {
        w.write_record(&row(case)[..width])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// Pretty JSON array of case objects.
pub fn cases_to_json(cases: &[OrbitSpaceCase]) -> String {
    serde_json::to_string_pretty(cases).expect("case records serialize")
}
