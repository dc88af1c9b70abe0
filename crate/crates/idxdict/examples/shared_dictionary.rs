//! One centralized dictionary serving many compression jobs.
//!
//! Containers never embed words; they reference the shared dictionary by id
//! and record the sequence number they need. Because entries are
//! append-only, a container compressed early keeps decoding under every
//! later dictionary state.
//!
//! Run with `cargo run --example shared_dictionary`.

use std::sync::{Arc, RwLock};
use std::thread;

use idxdict::{compress, decompress, CompressedContainer, Dictionary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let texts: [&[u8]; 4] = [
        b"Friends are far, friends are near.\n",
        b"They listen, laugh, and care.\n",
        b"Your true friends are always around.\n",
        b"When they always show up, friends are sincere.\n",
    ];

    let dict = Arc::new(RwLock::new(Dictionary::with_id(0x0C0112AB)));

    // Writers take the lock exclusively: inserts are serialized, and no
    // reader ever sees a half-applied one.
    let containers: Vec<CompressedContainer> = thread::scope(|scope| {
        let handles: Vec<_> = texts
            .iter()
            .map(|text| {
                let dict = Arc::clone(&dict);
                scope.spawn(move || {
                    let mut guard = dict.write().unwrap();
                    compress(text, &mut guard).unwrap()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    {
        let guard = dict.read().unwrap();
        println!("dictionary holds {} entries after all jobs", guard.seq());
        for (text, container) in texts.iter().zip(&containers) {
            println!(
                "  {:>2} frames, needs seq >= {:>2}: {:?}...",
                container.frame_count,
                container.required_seq,
                String::from_utf8_lossy(&text[..18])
            );
        }
    }

    // Readers decode concurrently under the final state; even the first
    // container, compressed when the dictionary was nearly empty, decodes
    // exactly because its entries never moved.
    thread::scope(|scope| {
        for (text, container) in texts.iter().zip(&containers) {
            let dict = Arc::clone(&dict);
            scope.spawn(move || {
                let guard = dict.read().unwrap();
                assert_eq!(decompress(container, &guard).unwrap(), *text);
            });
        }
    });
    println!("all containers decoded identically under the grown dictionary");
    Ok(())
}
