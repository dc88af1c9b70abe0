//! Frame encoding and the compressed container.
//!
//! Each token becomes one frame, serialized as fixed-width fields in the
//! order flag, count, case mask, initial index, position:
//!
//! | class         | flag | fields            | width in bits |
//! |---------------|------|-------------------|---------------|
//! | space run     | 00   | nc                | 6             |
//! | newline run   | 01   | nc                | 6             |
//! | special word  | 10   | nc, pos           | 14            |
//! | short word    | 11   | nc, cs, pos       | 14 + nc       |
//! | main word     | 11   | nc, cs, ic, pos   | 19 + nc       |
//!
//! `nc` is 4 bits (1..=15; 0 is invalid everywhere, so zeroed padding can
//! never parse as a frame), `cs` is one bit per character, `ic` is 5 bits
//! (1..=26), `pos` is 8 bits. A flag-11 frame is a short word when nc <= 2
//! and a main word otherwise, which is how the decoder knows whether an
//! `ic` field follows.
//!
//! Frames are packed MSB-first with no separators into the container
//! payload. The container header carries the dictionary id and the
//! dictionary sequence number observed after compression; any dictionary
//! with the same id and an equal or later sequence number can decode it,
//! because dictionary positions are append-only.

use std::iter;

use thiserror::Error;

use crate::bitstream::{BitReader, BitWriter, BitstreamError};
use crate::dictionary::{normalize, Dictionary, DictionaryError, SHORT_MAX_LEN};
use crate::tokenizer::{tokenize, Token, MAX_TOKEN_LEN};

/// Errors from frame coding, container parsing, and (de)compression.
#[derive(Debug, Error)]
pub enum CodecError {
    /// A dictionary bucket hit its 256-entry cap; the input cannot be
    /// compressed under the 8-bit position format.
    #[error("dictionary full: {0}")]
    DictionaryFull(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("truncated stream: needed {needed} bits, {available} remain")]
    TruncatedStream { needed: usize, available: usize },
    /// The container was compressed against a different dictionary.
    #[error("dictionary mismatch: container requires id {expected:016x}, got {actual:016x}")]
    DictionaryMismatch { expected: u64, actual: u64 },
    /// The dictionary predates the container's compression.
    #[error("dictionary too old: container requires seq >= {required}, got {actual}")]
    DictionaryTooOld { required: u64, actual: u64 },
    #[error("no dictionary entry at {0}")]
    PositionUnknown(String),
    /// Payload bits remain after the last frame, or padding is nonzero.
    #[error("trailing garbage: {0}")]
    TrailingGarbage(String),
    #[error("case mask of {mask} bits does not fit word {word:?}")]
    LengthMismatch { word: String, mask: usize },
    #[error("corrupt container: {0}")]
    CorruptContainer(String),
    /// Metrics are undefined for a zero-byte original.
    #[error("original size is zero")]
    ZeroOriginal,
    #[error("invalid token: {0}")]
    InvalidToken(String),
}

impl From<BitstreamError> for CodecError {
    fn from(e: BitstreamError) -> Self {
        match e {
            BitstreamError::TruncatedStream { requested, available } => {
                CodecError::TruncatedStream { needed: requested as usize, available }
            }
            BitstreamError::ValueOverflow { .. } => CodecError::InvalidFrame(e.to_string()),
        }
    }
}

impl From<DictionaryError> for CodecError {
    fn from(e: DictionaryError) -> Self {
        match e {
            DictionaryError::BucketFull(which) => CodecError::DictionaryFull(which),
            DictionaryError::PositionUnknown(at) => CodecError::PositionUnknown(at),
            other => CodecError::InvalidToken(other.to_string()),
        }
    }
}

/// Per-character case bits for an alphabetic word: bit i (from the most
/// significant end) is 1 when character i is uppercase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseMask {
    bits: u16,
    len: u8,
}

impl CaseMask {
    /// Wraps raw mask bits for a word of `len` characters.
    pub fn new(bits: u16, len: u8) -> Result<Self, CodecError> {
        if len == 0 || len as usize > MAX_TOKEN_LEN {
            return Err(CodecError::InvalidFrame(format!(
                "case mask length {len} outside 1..=15"
            )));
        }
        if bits >> len != 0 {
            return Err(CodecError::InvalidFrame(format!(
                "case mask {bits:#b} wider than {len} bits"
            )));
        }
        Ok(Self { bits, len })
    }

    /// Reads the mask off a word: `ThiS` has mask `1001`.
    pub fn from_word(word: &str) -> Result<Self, CodecError> {
        if word.is_empty()
            || word.len() > MAX_TOKEN_LEN
            || !word.bytes().all(|b| b.is_ascii_alphabetic())
        {
            return Err(CodecError::InvalidToken(format!(
                "case mask needs 1..=15 letters, got {word:?}"
            )));
        }
        let mut bits = 0u16;
        for b in word.bytes() {
            bits = (bits << 1) | u16::from(b.is_ascii_uppercase());
        }
        Ok(Self { bits, len: word.len() as u8 })
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    /// Mask length in bits; equals the word's character count.
    ///
    /// A mask covers at least one character, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u8 {
        self.len
    }

    /// Whether character `i` (0-based from the front) is uppercase.
    pub fn is_set(&self, i: u8) -> bool {
        debug_assert!(i < self.len);
        (self.bits >> (self.len - 1 - i)) & 1 == 1
    }
}

/// Recases a lowercase word: character i becomes uppercase where mask bit i
/// is 1, lowercase where it is 0.
pub fn apply_case(word: &str, mask: &CaseMask) -> Result<String, CodecError> {
    if word.len() != mask.len() as usize {
        return Err(CodecError::LengthMismatch {
            word: word.to_string(),
            mask: mask.len() as usize,
        });
    }
    Ok(word
        .bytes()
        .enumerate()
        .map(|(i, b)| {
            if mask.is_set(i as u8) {
                b.to_ascii_uppercase() as char
            } else {
                b.to_ascii_lowercase() as char
            }
        })
        .collect())
}

/// One encoded unit of the payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Spaces { count: u8 },
    Newlines { count: u8 },
    Special { len: u8, pos: u8 },
    ShortWord { case: CaseMask, pos: u8 },
    MainWord { case: CaseMask, initial: u8, pos: u8 },
}

impl Frame {
    /// The 2-bit class flag.
    pub fn flag(&self) -> u8 {
        match self {
            Frame::Spaces { .. } => 0b00,
            Frame::Newlines { .. } => 0b01,
            Frame::Special { .. } => 0b10,
            Frame::ShortWord { .. } | Frame::MainWord { .. } => 0b11,
        }
    }

    /// The 4-bit count field: run length, byte length, or word length.
    pub fn char_count(&self) -> u8 {
        match self {
            Frame::Spaces { count } | Frame::Newlines { count } => *count,
            Frame::Special { len, .. } => *len,
            Frame::ShortWord { case, .. } | Frame::MainWord { case, .. } => case.len(),
        }
    }

    /// Serialized width in bits.
    pub fn bit_width(&self) -> u32 {
        match self {
            Frame::Spaces { .. } | Frame::Newlines { .. } => 6,
            Frame::Special { .. } => 14,
            Frame::ShortWord { case, .. } => 14 + case.len() as u32,
            Frame::MainWord { case, .. } => 19 + case.len() as u32,
        }
    }

    fn validate(&self) -> Result<(), CodecError> {
        let nc = self.char_count();
        if nc == 0 || nc as usize > MAX_TOKEN_LEN {
            return Err(CodecError::InvalidFrame(format!(
                "count {nc} outside 1..=15"
            )));
        }
        match self {
            Frame::ShortWord { case, .. } if case.len() as usize > SHORT_MAX_LEN => {
                Err(CodecError::InvalidFrame(format!(
                    "short word of {} characters",
                    case.len()
                )))
            }
            Frame::MainWord { case, .. } if (case.len() as usize) <= SHORT_MAX_LEN => {
                Err(CodecError::InvalidFrame(format!(
                    "main word of {} characters",
                    case.len()
                )))
            }
            Frame::MainWord { initial, .. } if !(1..=26).contains(initial) => Err(
                CodecError::InvalidFrame(format!("initial index {initial} outside 1..=26")),
            ),
            _ => Ok(()),
        }
    }
}

/// Serializes a frame as flag, count, then the class's remaining fields.
pub fn frame_to_bits(frame: &Frame, writer: &mut BitWriter) -> Result<(), CodecError> {
    frame.validate()?;
    writer.write_bits(frame.flag() as u32, 2)?;
    writer.write_bits(frame.char_count() as u32, 4)?;
    match frame {
        Frame::Spaces { .. } | Frame::Newlines { .. } => {}
        Frame::Special { pos, .. } => writer.write_bits(*pos as u32, 8)?,
        Frame::ShortWord { case, pos } => {
            writer.write_bits(case.bits() as u32, case.len() as u32)?;
            writer.write_bits(*pos as u32, 8)?;
        }
        Frame::MainWord { case, initial, pos } => {
            writer.write_bits(case.bits() as u32, case.len() as u32)?;
            writer.write_bits(*initial as u32, 5)?;
            writer.write_bits(*pos as u32, 8)?;
        }
    }
    Ok(())
}

/// Reads one frame; the flag and count determine which fields follow.
pub fn bits_to_frame(reader: &mut BitReader) -> Result<Frame, CodecError> {
    let flag = reader.read_bits(2)?;
    let nc = reader.read_bits(4)? as u8;
    if nc == 0 {
        return Err(CodecError::InvalidFrame("count 0 is reserved".to_string()));
    }
    match flag {
        0b00 => Ok(Frame::Spaces { count: nc }),
        0b01 => Ok(Frame::Newlines { count: nc }),
        0b10 => {
            let pos = reader.read_bits(8)? as u8;
            Ok(Frame::Special { len: nc, pos })
        }
        _ => {
            let case = CaseMask::new(reader.read_bits(nc as u32)? as u16, nc)?;
            if nc as usize <= SHORT_MAX_LEN {
                let pos = reader.read_bits(8)? as u8;
                Ok(Frame::ShortWord { case, pos })
            } else {
                let initial = reader.read_bits(5)? as u8;
                if !(1..=26).contains(&initial) {
                    return Err(CodecError::InvalidFrame(format!(
                        "initial index {initial} outside 1..=26"
                    )));
                }
                let pos = reader.read_bits(8)? as u8;
                Ok(Frame::MainWord { case, initial, pos })
            }
        }
    }
}

/// Encodes one token, inserting its word into the dictionary on a miss.
pub fn encode_token(token: &Token, dict: &mut Dictionary) -> Result<Frame, CodecError> {
    let frame = match token {
        Token::SpaceRun(count) => Frame::Spaces { count: *count },
        Token::NewlineRun(count) => Frame::Newlines { count: *count },
        Token::SpecialWord(word) => {
            let pos = dict.find_or_insert_special(word)?;
            Frame::Special { len: word.len() as u8, pos }
        }
        Token::AlphaWord(word) => {
            let case = CaseMask::from_word(word)?;
            let lower = normalize(word)?;
            if lower.len() <= SHORT_MAX_LEN {
                let pos = dict.find_or_insert_short(&lower)?;
                Frame::ShortWord { case, pos }
            } else {
                let (initial, pos) = dict.find_or_insert_main(&lower)?;
                Frame::MainWord { case, initial, pos }
            }
        }
    };
    frame.validate()?;
    Ok(frame)
}

/// A compressed stream plus the header needed to decode it later.
///
/// Byte layout: magic `IDXD`, version `0x01`, then `dict_id`,
/// `required_seq`, and `frame_count` as little-endian integers (25 header
/// bytes total), then the payload. The payload holds exactly `frame_count`
/// frames; the final partial byte, if any, is zero-padded. Decoding needs a
/// dictionary with id `dict_id` and seq >= `required_seq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedContainer {
    pub dict_id: u64,
    pub required_seq: u64,
    pub frame_count: u32,
    pub payload: Vec<u8>,
}

impl CompressedContainer {
    pub const MAGIC: [u8; 4] = *b"IDXD";
    pub const VERSION: u8 = 0x01;
    pub const HEADER_LEN: usize = 25;

    /// Total serialized size in bytes.
    pub fn byte_len(&self) -> usize {
        Self::HEADER_LEN + self.payload.len()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.byte_len());
        out.extend_from_slice(&Self::MAGIC);
        out.push(Self::VERSION);
        out.extend_from_slice(&self.dict_id.to_le_bytes());
        out.extend_from_slice(&self.required_seq.to_le_bytes());
        out.extend_from_slice(&self.frame_count.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(data: &[u8]) -> Result<Self, CodecError> {
        if data.len() < Self::HEADER_LEN {
            return Err(CodecError::CorruptContainer(format!(
                "{} bytes is shorter than the {}-byte header",
                data.len(),
                Self::HEADER_LEN
            )));
        }
        if data[..4] != Self::MAGIC {
            return Err(CodecError::CorruptContainer("bad magic".to_string()));
        }
        if data[4] != Self::VERSION {
            return Err(CodecError::CorruptContainer(format!(
                "unsupported version {}",
                data[4]
            )));
        }
        let word = |at: usize| u64::from_le_bytes(data[at..at + 8].try_into().expect("8 bytes"));
        Ok(Self {
            dict_id: word(5),
            required_seq: word(13),
            frame_count: u32::from_le_bytes(data[21..25].try_into().expect("4 bytes")),
            payload: data[Self::HEADER_LEN..].to_vec(),
        })
    }
}

/// Compresses `input` against `dict`, growing it on lookup misses.
pub fn compress(input: &[u8], dict: &mut Dictionary) -> Result<CompressedContainer, CodecError> {
    let mut writer = BitWriter::new();
    let mut frame_count: u32 = 0;
    for token in tokenize(input) {
        let frame = encode_token(&token, dict)?;
        frame_to_bits(&frame, &mut writer)?;
        frame_count = frame_count
            .checked_add(1)
            .ok_or_else(|| CodecError::CorruptContainer("frame count overflow".to_string()))?;
    }
    Ok(CompressedContainer {
        dict_id: dict.id(),
        required_seq: dict.seq(),
        frame_count,
        payload: writer.finish(),
    })
}

/// Decodes a container back to the original bytes.
///
/// The dictionary must share the container's id and have seq >=
/// `required_seq`; growth after compression never affects decoding.
pub fn decompress(
    container: &CompressedContainer,
    dict: &Dictionary,
) -> Result<Vec<u8>, CodecError> {
    if container.dict_id != dict.id() {
        return Err(CodecError::DictionaryMismatch {
            expected: container.dict_id,
            actual: dict.id(),
        });
    }
    if dict.seq() < container.required_seq {
        return Err(CodecError::DictionaryTooOld {
            required: container.required_seq,
            actual: dict.seq(),
        });
    }
    let mut reader = BitReader::new(&container.payload);
    let mut out = Vec::new();
    for _ in 0..container.frame_count {
        match bits_to_frame(&mut reader)? {
            Frame::Spaces { count } => out.extend(iter::repeat_n(b' ', count as usize)),
            Frame::Newlines { count } => out.extend(iter::repeat_n(b'\n', count as usize)),
            Frame::Special { len, pos } => {
                out.extend_from_slice(dict.lookup_special(len, pos)?);
            }
            Frame::ShortWord { case, pos } => {
                let word = dict.lookup_short(pos)?;
                out.extend_from_slice(apply_case(word, &case)?.as_bytes());
            }
            Frame::MainWord { case, initial, pos } => {
                let word = dict.lookup_main(initial, case.len(), pos)?;
                out.extend_from_slice(apply_case(word, &case)?.as_bytes());
            }
        }
    }
    let rest = reader.remaining_bits();
    if rest >= 8 {
        return Err(CodecError::TrailingGarbage(format!(
            "{rest} bits beyond the final frame"
        )));
    }
    if rest > 0 && reader.read_bits(rest as u32)? != 0 {
        return Err(CodecError::TrailingGarbage("nonzero padding".to_string()));
    }
    Ok(out)
}

/// Size comparison of a compressed output against its original.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    /// Percentage of the original saved: `(1 - ratio) * 100`.
    pub compressed_percent: f64,
    /// `compressed_size / original_size`; below 1 means the output shrank.
    pub compression_ratio: f64,
}

/// Computes size metrics; the original size must be nonzero.
pub fn metrics(original_size: u64, compressed_size: u64) -> Result<Metrics, CodecError> {
    if original_size == 0 {
        return Err(CodecError::ZeroOriginal);
    }
    let ratio = compressed_size as f64 / original_size as f64;
    Ok(Metrics {
        compressed_percent: (1.0 - ratio) * 100.0,
        compression_ratio: ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pack(frame: &Frame) -> Vec<u8> {
        let mut w = BitWriter::new();
        frame_to_bits(frame, &mut w).unwrap();
        w.finish()
    }

    #[test]
    fn space_run_packs_flag_then_count() {
        assert_eq!(pack(&Frame::Spaces { count: 3 }), vec![0b0000_1100]);
        assert_eq!(pack(&Frame::Spaces { count: 1 }), vec![0b0000_0100]);
    }

    #[test]
    fn single_letter_word_is_fifteen_bits() {
        let frame = Frame::ShortWord { case: CaseMask::new(0, 1).unwrap(), pos: 0 };
        assert_eq!(frame.bit_width(), 15);
        // 11 0001 0 00000000 + one pad bit
        assert_eq!(pack(&frame), vec![0b1100_0100, 0b0000_0000]);
        let mut r = BitReader::new(&[0b1100_0100, 0b0000_0000]);
        assert_eq!(bits_to_frame(&mut r).unwrap(), frame);
    }

    #[test]
    fn count_zero_is_invalid() {
        let mut r = BitReader::new(&[0b0000_0000]);
        assert!(matches!(
            bits_to_frame(&mut r),
            Err(CodecError::InvalidFrame(_))
        ));
    }

    #[test]
    fn initial_index_out_of_range_is_invalid() {
        // 11 0011 000 11011 ... ic=27
        let mut w = BitWriter::new();
        w.write_bits(0b11, 2).unwrap();
        w.write_bits(3, 4).unwrap();
        w.write_bits(0, 3).unwrap();
        w.write_bits(27, 5).unwrap();
        w.write_bits(0, 8).unwrap();
        let bytes = w.finish();
        let mut r = BitReader::new(&bytes);
        assert!(matches!(
            bits_to_frame(&mut r),
            Err(CodecError::InvalidFrame(_))
        ));
    }

    #[test]
    fn case_mask_reads_uppercase_positions() {
        assert_eq!(CaseMask::from_word("ThiS").unwrap().bits(), 0b1001);
        assert_eq!(CaseMask::from_word("This").unwrap().bits(), 0b1000);
        assert_eq!(CaseMask::from_word("this").unwrap().bits(), 0b0000);
        let mask = CaseMask::from_word("ThiS").unwrap();
        assert!(mask.is_set(0));
        assert!(!mask.is_set(1));
        assert!(mask.is_set(3));
    }

    #[test]
    fn apply_case_recases() {
        assert_eq!(
            apply_case("this", &CaseMask::new(0b1001, 4).unwrap()).unwrap(),
            "ThiS"
        );
        assert_eq!(
            apply_case("any", &CaseMask::new(0b000, 3).unwrap()).unwrap(),
            "any"
        );
        assert_eq!(
            apply_case("ab", &CaseMask::new(0b11, 2).unwrap()).unwrap(),
            "AB"
        );
        assert!(matches!(
            apply_case("word", &CaseMask::new(0, 3).unwrap()),
            Err(CodecError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn encode_word_against_preloaded_dictionary() {
        let mut d = Dictionary::with_id(7);
        d.find_or_insert_main("this").unwrap();
        let frame = encode_token(&Token::AlphaWord("This".into()), &mut d).unwrap();
        assert_eq!(
            frame,
            Frame::MainWord {
                case: CaseMask::new(0b1000, 4).unwrap(),
                initial: 20,
                pos: 0
            }
        );
        assert_eq!(frame.bit_width(), 23);
        assert_eq!(d.seq(), 1);
    }

    #[test]
    fn special_frame_has_no_case_field() {
        let mut d = Dictionary::with_id(7);
        let frame = encode_token(&Token::SpecialWord(b", ".to_vec()), &mut d).unwrap();
        assert_eq!(frame, Frame::Special { len: 2, pos: 0 });
        assert_eq!(frame.bit_width(), 14);
    }

    #[test]
    fn empty_input_compresses_to_empty_container() {
        let mut d = Dictionary::with_id(7);
        let c = compress(b"", &mut d).unwrap();
        assert_eq!(c.frame_count, 0);
        assert!(c.payload.is_empty());
        assert_eq!(decompress(&c, &d).unwrap(), b"");
    }

    #[test]
    fn three_words_and_two_spaces() {
        let mut d = Dictionary::with_id(7);
        let c = compress(b"a a a", &mut d).unwrap();
        assert_eq!(c.frame_count, 5);
        // 15 + 6 + 15 + 6 + 15 bits = 57, padded to 8 bytes.
        assert_eq!(c.payload.len(), 8);
        assert_eq!(c.required_seq, 1);
        assert_eq!(d.seq(), 1);
        assert_eq!(decompress(&c, &d).unwrap(), b"a a a");
    }

    #[test]
    fn round_trips_examples() {
        for input in [
            &b"friends are"[..],
            b"near,\n",
            b"far, friends",
            b"$=2@ x",
            b"Tabs\tand CRLF\r\nsurvive,   as do high bytes \xC3\xA9.",
        ] {
            let mut d = Dictionary::with_id(9);
            let c = compress(input, &mut d).unwrap();
            assert_eq!(decompress(&c, &d).unwrap(), input);
        }
    }

    #[test]
    fn growth_after_compression_does_not_disturb_decoding() {
        let mut d = Dictionary::with_id(5);
        let c = compress(b"near, far, wherever you are", &mut d).unwrap();
        for w in ["another", "batch", "inserted", "afterwards"] {
            d.find_or_insert_main(w).unwrap();
        }
        d.find_or_insert_special(b"?!").unwrap();
        assert!(d.seq() > c.required_seq);
        assert_eq!(decompress(&c, &d).unwrap(), b"near, far, wherever you are");
    }

    #[test]
    fn wrong_dictionary_is_rejected() {
        let mut d = Dictionary::with_id(1);
        let c = compress(b"hello", &mut d).unwrap();
        let other = Dictionary::with_id(2);
        assert!(matches!(
            decompress(&c, &other),
            Err(CodecError::DictionaryMismatch { expected: 1, actual: 2 })
        ));
    }

    #[test]
    fn stale_dictionary_is_rejected() {
        let mut d = Dictionary::with_id(1);
        let stale = d.clone();
        let c = compress(b"hello", &mut d).unwrap();
        assert!(matches!(
            decompress(&c, &stale),
            Err(CodecError::DictionaryTooOld { required: 1, actual: 0 })
        ));
    }

    #[test]
    fn extra_payload_bytes_are_trailing_garbage() {
        let mut d = Dictionary::with_id(1);
        let mut c = compress(b"hello world", &mut d).unwrap();
        c.payload.push(0x00);
        assert!(matches!(
            decompress(&c, &d),
            Err(CodecError::TrailingGarbage(_))
        ));
    }

    #[test]
    fn nonzero_padding_is_trailing_garbage() {
        let mut d = Dictionary::with_id(1);
        // 57 payload bits leave 7 padding bits in the final byte.
        let mut c = compress(b"a a a", &mut d).unwrap();
        *c.payload.last_mut().unwrap() |= 1;
        assert!(matches!(
            decompress(&c, &d),
            Err(CodecError::TrailingGarbage(_))
        ));
    }

    #[test]
    fn truncated_payload_is_detected() {
        let mut d = Dictionary::with_id(1);
        let mut c = compress(b"something longer than one frame", &mut d).unwrap();
        c.payload.truncate(1);
        assert!(matches!(
            decompress(&c, &d),
            Err(CodecError::TruncatedStream { .. })
        ));
    }

    #[test]
    fn compression_is_deterministic() {
        let base = Dictionary::with_id(3);
        let input = b"same input, same state, same bits";
        let mut d1 = base.clone();
        let mut d2 = base.clone();
        let c1 = compress(input, &mut d1).unwrap();
        let c2 = compress(input, &mut d2).unwrap();
        assert_eq!(c1.to_bytes(), c2.to_bytes());
        assert_eq!(d1, d2);
    }

    #[test]
    fn container_bytes_round_trip() {
        let mut d = Dictionary::with_id(0xABCD);
        let c = compress(b"some text to store", &mut d).unwrap();
        let bytes = c.to_bytes();
        assert_eq!(bytes.len(), c.byte_len());
        assert_eq!(&bytes[..4], b"IDXD");
        assert_eq!(bytes[4], 1);
        assert_eq!(CompressedContainer::from_bytes(&bytes).unwrap(), c);
    }

    #[test]
    fn container_rejects_malformed_headers() {
        assert!(matches!(
            CompressedContainer::from_bytes(b"IDXD"),
            Err(CodecError::CorruptContainer(_))
        ));
        let mut d = Dictionary::with_id(1);
        let mut bytes = compress(b"x", &mut d).unwrap().to_bytes();
        bytes[0] = b'Z';
        assert!(matches!(
            CompressedContainer::from_bytes(&bytes),
            Err(CodecError::CorruptContainer(_))
        ));
        bytes[0] = b'I';
        bytes[4] = 9;
        assert!(matches!(
            CompressedContainer::from_bytes(&bytes),
            Err(CodecError::CorruptContainer(_))
        ));
    }

    #[test]
    fn metrics_match_reference_rows() {
        let m = metrics(574, 298).unwrap();
        assert!((m.compression_ratio - 0.5191).abs() < 0.005);
        assert!((m.compressed_percent - 48.08).abs() < 0.01);
        let m = metrics(574, 274).unwrap();
        assert!((m.compression_ratio - 0.4773).abs() < 0.005);
        assert!((m.compressed_percent - 52.26).abs() < 0.01);
        let m = metrics(100, 100).unwrap();
        assert_eq!(m.compression_ratio, 1.0);
        assert_eq!(m.compressed_percent, 0.0);
        assert!(matches!(metrics(0, 10), Err(CodecError::ZeroOriginal)));
    }

    #[test]
    fn payload_width_matches_frame_accounting() {
        let mut d = Dictionary::with_id(11);
        let input = b"The quick, brown fox; it jumps over 13 lazy dogs.\n";
        let mut bits = 0u32;
        for token in tokenize(input) {
            bits += encode_token(&token, &mut d).unwrap().bit_width();
        }
        let mut d2 = Dictionary::with_id(11);
        let c = compress(input, &mut d2).unwrap();
        assert_eq!(c.payload.len(), bits.div_ceil(8) as usize);
    }

    proptest! {
        #[test]
        fn round_trip_random_bytes(input in proptest::collection::vec(any::<u8>(), 0..800)) {
            let mut d = Dictionary::with_id(42);
            let c = compress(&input, &mut d).unwrap();
            prop_assert_eq!(decompress(&c, &d).unwrap(), input);
        }

        #[test]
        fn round_trip_prose(input in "[ \na-zA-Z.,';:0-9-]{0,300}") {
            let mut d = Dictionary::with_id(43);
            let c = compress(input.as_bytes(), &mut d).unwrap();
            prop_assert_eq!(decompress(&c, &d).unwrap(), input.as_bytes());
        }

        #[test]
        fn case_mask_round_trips_words(word in "[a-zA-Z]{1,15}") {
            let mask = CaseMask::from_word(&word).unwrap();
            let lower = word.to_ascii_lowercase();
            prop_assert_eq!(apply_case(&lower, &mask).unwrap(), word);
        }
    }
}
