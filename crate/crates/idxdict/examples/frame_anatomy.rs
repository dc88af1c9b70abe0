//! The bit layout of every frame class, spelled out on a small input.
//!
//! Run with `cargo run --example frame_anatomy`.

use idxdict::bitstream::BitWriter;
use idxdict::codec::{encode_token, frame_to_bits, CompressedContainer, Frame};
use idxdict::tokenizer::{tokenize, Token};
use idxdict::Dictionary;

fn describe(token: &Token) -> String {
    match token {
        Token::SpaceRun(n) => format!("{n} space(s)"),
        Token::NewlineRun(n) => format!("{n} newline(s)"),
        Token::AlphaWord(w) => format!("word {w:?}"),
        Token::SpecialWord(w) => format!("special {:?}", String::from_utf8_lossy(w)),
    }
}

fn fields(frame: &Frame) -> String {
    match frame {
        Frame::Spaces { count } => format!("f=00 nc={count}"),
        Frame::Newlines { count } => format!("f=01 nc={count}"),
        Frame::Special { len, pos } => format!("f=10 nc={len} pos={pos}"),
        Frame::ShortWord { case, pos } => format!(
            "f=11 nc={} cs={:0width$b} pos={pos}",
            case.len(),
            case.bits(),
            width = case.len() as usize
        ),
        Frame::MainWord { case, initial, pos } => format!(
            "f=11 nc={} cs={:0width$b} ic={initial} pos={pos}",
            case.len(),
            case.bits(),
            width = case.len() as usize
        ),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input: &[u8] = b"They are near,\nso I stay.";
    println!("input: {:?}\n", String::from_utf8_lossy(input));

    let mut dict = Dictionary::with_id(0xF4A3);
    let mut writer = BitWriter::new();
    let mut total_bits = 0;
    println!("{:<22} {:<34} width", "token", "frame fields");
    for token in tokenize(input) {
        let frame = encode_token(&token, &mut dict)?;
        frame_to_bits(&frame, &mut writer)?;
        total_bits += frame.bit_width();
        println!("{:<22} {:<34} {:>2} bits", describe(&token), fields(&frame), frame.bit_width());
    }

    let payload = writer.finish();
    println!(
        "\n{} payload bits, zero-padded to {} bytes:",
        total_bits,
        payload.len()
    );
    let hex: Vec<String> = payload.iter().map(|b| format!("{b:02x}")).collect();
    println!("  {}", hex.join(" "));

    let container = CompressedContainer {
        dict_id: dict.id(),
        required_seq: dict.seq(),
        frame_count: tokenize(input).len() as u32,
        payload,
    };
    println!(
        "\ncontainer: {}-byte header + payload = {} bytes for a {}-byte input",
        CompressedContainer::HEADER_LEN,
        container.byte_len(),
        input.len()
    );
    println!(
        "header fields: id {:016x}, required seq {}, {} frames",
        container.dict_id, container.required_seq, container.frame_count
    );
    Ok(())
}
