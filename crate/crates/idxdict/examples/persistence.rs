//! Save a dictionary, reload it, and see corrupt files get refused.
//!
//! Run with `cargo run --example persistence`.

use idxdict::{compress, decompress, Dictionary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("words.dict");

    let text: &[u8] = b"They listen, laugh, and care about you.\n";
    let mut dict = Dictionary::with_id(0x5AFE);
    let container = compress(text, &mut dict)?;

    // Saves are write-then-rename, so a crash mid-save can never leave a
    // torn file behind.
    dict.save(&path)?;
    println!("saved {} entries to {}", dict.seq(), path.display());

    let reloaded = Dictionary::load(&path)?;
    assert_eq!(reloaded, dict);
    println!("reloaded dictionary is structurally equal");

    // A container decodes under the reloaded state like it did in memory.
    assert_eq!(decompress(&container, &reloaded)?, text);
    println!("container decoded identically under the reloaded dictionary");

    // Loading validates every entry and the append-only layout.
    let corrupt = dir.path().join("torn.dict");
    std::fs::write(
        &corrupt,
        "IDXDICT v1\nid 0000000000005afe\nseq 2\n[MAIN]\n1 3 0 abc\n1 3 2 abd\n[SHORT]\n[SPECIAL]\n",
    )?;
    match Dictionary::load(&corrupt) {
        Err(e) => println!("corrupt file rejected: {e}"),
        Ok(_) => unreachable!("a position gap must not load"),
    }
    Ok(())
}
