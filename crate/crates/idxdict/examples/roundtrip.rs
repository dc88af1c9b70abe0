//! Compress a text, restore it, and watch the dictionary pay off on the
//! second pass.
//!
//! Run with `cargo run --example roundtrip`.

use idxdict::{compress, decompress, metrics, Dictionary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text: &[u8] = b"Wonderful friendships deserve wonderful celebrations,\n\
                        wonderful celebrations deserve thoughtful preparations,\n\
                        thoughtful preparations deserve dedicated companions,\n\
                        dedicated companions deserve wonderful friendships.\n";

    let mut dict = Dictionary::with_id(0x0EC0DE);
    let container = compress(text, &mut dict)?;
    let m = metrics(text.len() as u64, container.byte_len() as u64)?;
    println!("first pass (empty dictionary):");
    println!("  {} bytes -> {} bytes", text.len(), container.byte_len());
    println!("  ratio {:.4}, saved {:.2}%", m.compression_ratio, m.compressed_percent);
    println!("  dictionary learned {} words", dict.seq());

    let restored = decompress(&container, &dict)?;
    assert_eq!(restored, text);
    println!("  restored {} bytes, identical to the input", restored.len());

    // Same text again: every word is already stored, so the dictionary does
    // not grow, and the container is the same size with no new entries.
    let seq_before = dict.seq();
    let again = compress(text, &mut dict)?;
    assert_eq!(dict.seq(), seq_before);
    println!("\nsecond pass (warm dictionary):");
    println!("  {} bytes -> {} bytes", text.len(), again.byte_len());
    println!("  new dictionary entries: {}", dict.seq() - seq_before);

    // A different text built from the shared vocabulary compresses without
    // adding anything.
    let other: &[u8] = b"Dedicated friendships deserve thoughtful celebrations.\n";
    let container = compress(other, &mut dict)?;
    let m = metrics(other.len() as u64, container.byte_len() as u64)?;
    println!("\nrelated text against the same dictionary:");
    println!("  {} bytes -> {} bytes (ratio {:.4})", other.len(), container.byte_len(), m.compression_ratio);
    println!("  new dictionary entries: {}", dict.seq() - seq_before);
    assert_eq!(decompress(&container, &dict)?, other);
    Ok(())
}
