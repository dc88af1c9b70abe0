//! A walk through the three dictionary parts and their addressing scheme.
//!
//! Run with `cargo run --example dictionary_tour`.

use idxdict::Dictionary;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut dict = Dictionary::with_id(0x700A);

    // Words of three or more letters live in the main part, addressed by
    // (initial letter, length, position). Everything is stored lowercase;
    // the codec carries the original casing separately.
    let (ic, pos) = dict.find_or_insert_main("bulk")?;
    println!("main:    \"bulk\" -> initial {ic}, length 4, position {pos}");
    let (ic, pos) = dict.find_or_insert_main("bank")?;
    println!("main:    \"bank\" -> initial {ic}, length 4, position {pos}");
    let (ic, pos) = dict.find_or_insert_main("beam")?;
    println!("main:    \"beam\" -> initial {ic}, length 4, position {pos}");
    println!("         lookup (2, 4, 2) = {:?}", dict.lookup_main(2, 4, 2)?);

    // One- and two-letter words get a flat list of their own.
    let pos = dict.find_or_insert_short("an")?;
    println!("short:   \"an\" -> position {pos}");

    // Anything with a non-letter byte is stored verbatim, bucketed by length.
    let pos = dict.find_or_insert_special(b"a12")?;
    println!("special: \"a12\" -> length 3, position {pos}");
    let pos = dict.find_or_insert_special(b", ")?;
    println!("special: \", \" -> length 2, position {pos}");

    // Re-inserting returns the existing address and changes nothing.
    let seq = dict.seq();
    let (_, pos) = dict.find_or_insert_main("beam")?;
    assert_eq!((pos, dict.seq()), (2, seq));
    println!("\nre-inserting \"beam\" found position {pos} again (seq still {seq})");

    let stats = dict.stats();
    println!(
        "\nstats: seq {}, {} main / {} short / {} special entries",
        stats.seq, stats.main_entries, stats.short_entries, stats.special_entries
    );
    for (ic, nc, count) in &stats.main_buckets {
        println!("  main bucket {}/{nc}: {count} entries", (b'a' + ic - 1) as char);
    }

    println!("\nfile format:");
    let mut encoded = Vec::new();
    dict.write_to(&mut encoded)?;
    print!("{}", String::from_utf8(encoded)?);
    Ok(())
}
