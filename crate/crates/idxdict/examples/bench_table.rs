//! Build a size-comparison report, mixing measured rows with externally
//! supplied baseline sizes.
//!
//! Run with `cargo run --example bench_table`.

use idxdict::cli::{BenchReport, BenchRow};
use idxdict::{compress, Dictionary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus: [(&str, &[u8]); 3] = [
        (
            "letter.txt",
            b"Distinguished colleagues gathered yesterday evening, celebrating \
              remarkable achievements throughout the organization, applauding \
              exceptional dedication, exceptional perseverance, exceptional results.\n",
        ),
        (
            "note.txt",
            b"Yesterday the organization celebrated remarkable dedication; \
              colleagues applauded exceptional achievements, celebrating \
              perseverance throughout.\n",
        ),
        (
            "list.txt",
            b"celebrations, preparations, achievements, organizations, \
              recommendations, congratulations\n",
        ),
    ];

    let mut dict = Dictionary::with_id(0xB47B1E);
    let mut report = BenchReport::default();
    for (name, text) in corpus {
        let container = compress(text, &mut dict)?;
        report
            .rows
            .push(BenchRow::new(name, text.len() as u64, container.byte_len() as u64)?);
    }

    // Rows for sizes measured elsewhere; percent and ratio are recomputed
    // from the raw sizes either way.
    let original = report.rows[0].original_size;
    for (label, size) in [("gzip -9", 148u64), ("plain copy", original)] {
        report.rows.push(BenchRow::new(label, original, size)?);
    }

    print!("{}", report.render());
    println!(
        "\nshared dictionary holds {} entries after the corpus",
        dict.seq()
    );
    Ok(())
}
