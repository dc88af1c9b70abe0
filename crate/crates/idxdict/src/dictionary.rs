//! The shared, append-only, three-part word dictionary.
//!
//! Words are stored once and addressed by small fixed-width indices:
//!
//! * **main** — alphabetic words of 3..=15 letters, lowercased, bucketed by
//!   (initial letter, length). A word's address is `(ic, nc, pos)` where
//!   `ic` is the 1-based letter index of its first character, `nc` its
//!   length, and `pos` its slot in the bucket.
//! * **short** — alphabetic words of 1 or 2 letters, lowercased, in one flat
//!   list addressed by `pos` alone.
//! * **special** — words containing at least one non-letter byte, stored
//!   verbatim (case and all) and bucketed by byte length.
//!
//! Every bucket is append-only and capped at 256 entries so a position
//! always fits the 8-bit on-wire field. Once assigned, an address never
//! changes; this is what lets a container compressed against an older
//! dictionary state decode under any newer state with the same id.
//!
//! A miss during `find_or_insert_*` appends the word at the end of its
//! bucket, so the dictionary organizes itself as inputs are compressed.
//! `seq` counts total inserts and acts as the compatibility watermark
//! recorded in compressed containers.
//!
//! # Concurrency
//!
//! Lookups take `&self` and inserts take `&mut self`, so the borrow checker
//! enforces the reader/writer contract; share a dictionary across threads
//! with `RwLock` (readers never observe a partial insert because inserts
//! are exclusive).

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

/// Shortest word the main dictionary accepts.
pub const MAIN_MIN_LEN: usize = 3;
/// Longest word any part accepts (the count field is 4 bits).
pub const MAX_WORD_LEN: usize = 15;
/// Longest word the short dictionary accepts.
pub const SHORT_MAX_LEN: usize = 2;
/// Entries per bucket (positions are an 8-bit field).
pub const BUCKET_CAP: usize = 256;

const ALPHABET: usize = 26;
const MAIN_LEN_SPAN: usize = MAX_WORD_LEN - MAIN_MIN_LEN + 1;
const FILE_MAGIC: &str = "IDXDICT v1";

/// Errors from dictionary operations and persistence.
#[derive(Debug, Error)]
pub enum DictionaryError {
    /// The word contains a byte outside `a-z` (or `A-Z` where accepted).
    #[error("word {0:?} is not alphabetic")]
    NotAlphabetic(String),
    /// The word length does not fit the targeted dictionary part.
    #[error("word length {len} outside [{min}, {max}]")]
    LengthOutOfRange { len: usize, min: usize, max: usize },
    /// The word does not qualify for the special dictionary.
    #[error("not a special word: {0}")]
    InvalidSpecialWord(&'static str),
    /// The destination bucket already holds 256 entries.
    #[error("dictionary bucket full: {0}")]
    BucketFull(String),
    /// No entry exists at the given indices.
    #[error("no dictionary entry at {0}")]
    PositionUnknown(String),
    /// The dictionary file violates the format or an invariant.
    #[error("corrupt dictionary file, line {line}: {reason}")]
    CorruptFile { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn corrupt(line: usize, reason: impl Into<String>) -> DictionaryError {
    DictionaryError::CorruptFile {
        line,
        reason: reason.into(),
    }
}

/// Lowercases an alphabetic word.
pub fn normalize(word: &str) -> Result<String, DictionaryError> {
    if !word.bytes().all(|b| b.is_ascii_alphabetic()) {
        return Err(DictionaryError::NotAlphabetic(word.to_string()));
    }
    Ok(word.to_ascii_lowercase())
}

/// Entry counts and bucket occupancy for one dictionary state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictionaryStats {
    pub id: u64,
    pub seq: u64,
    pub main_entries: usize,
    pub short_entries: usize,
    pub special_entries: usize,
    /// Occupied main buckets as `(ic, nc, entry count)`.
    pub main_buckets: Vec<(u8, u8, usize)>,
    /// Occupied special buckets as `(nc, entry count)`.
    pub special_buckets: Vec<(u8, usize)>,
}

/// The centralized three-part dictionary.
///
/// See the [module docs](self) for the storage layout and the append-only
/// guarantees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    id: u64,
    seq: u64,
    /// `ALPHABET * MAIN_LEN_SPAN` buckets, indexed by [`main_index`].
    main: Vec<Vec<String>>,
    short: Vec<String>,
    /// One bucket per byte length 1..=15.
    special: Vec<Vec<Vec<u8>>>,
}

fn main_index(ic: u8, nc: u8) -> usize {
    (ic as usize - 1) * MAIN_LEN_SPAN + (nc as usize - MAIN_MIN_LEN)
}

impl Default for Dictionary {
    fn default() -> Self {
        Self::new()
    }
}

impl Dictionary {
    /// Creates an empty dictionary with a fresh random identity.
    pub fn new() -> Self {
        Self::with_id(rand::random())
    }

    /// Creates an empty dictionary with a caller-chosen identity.
    pub fn with_id(id: u64) -> Self {
        Self {
            id,
            seq: 0,
            main: vec![Vec::new(); ALPHABET * MAIN_LEN_SPAN],
            short: Vec::new(),
            special: vec![Vec::new(); MAX_WORD_LEN],
        }
    }

    /// 64-bit identity assigned at creation; containers record it.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Total successful inserts; equals the entry count across all parts.
    pub fn seq(&self) -> u64 {
        self.seq
    }

    /// Returns the address of `word` in the main dictionary, inserting it at
    /// the end of its bucket if absent. `word` must be 3..=15 lowercase
    /// letters.
    pub fn find_or_insert_main(&mut self, word: &str) -> Result<(u8, u8), DictionaryError> {
        let len = word.len();
        if !(MAIN_MIN_LEN..=MAX_WORD_LEN).contains(&len) {
            return Err(DictionaryError::LengthOutOfRange {
                len,
                min: MAIN_MIN_LEN,
                max: MAX_WORD_LEN,
            });
        }
        if !word.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(DictionaryError::NotAlphabetic(word.to_string()));
        }
        let ic = word.as_bytes()[0] - b'a' + 1;
        let nc = len as u8;
        let bucket = &mut self.main[main_index(ic, nc)];
        if let Some(pos) = bucket.iter().position(|w| w == word) {
            return Ok((ic, pos as u8));
        }
        if bucket.len() >= BUCKET_CAP {
            return Err(DictionaryError::BucketFull(format!("main ic={ic} nc={nc}")));
        }
        let pos = bucket.len() as u8;
        bucket.push(word.to_string());
        self.seq += 1;
        Ok((ic, pos))
    }

    /// Returns the flat-list position of `word` in the short dictionary,
    /// inserting if absent. `word` must be 1 or 2 lowercase letters.
    pub fn find_or_insert_short(&mut self, word: &str) -> Result<u8, DictionaryError> {
        let len = word.len();
        if !(1..=SHORT_MAX_LEN).contains(&len) {
            return Err(DictionaryError::LengthOutOfRange {
                len,
                min: 1,
                max: SHORT_MAX_LEN,
            });
        }
        if !word.bytes().all(|b| b.is_ascii_lowercase()) {
            return Err(DictionaryError::NotAlphabetic(word.to_string()));
        }
        if let Some(pos) = self.short.iter().position(|w| w == word) {
            return Ok(pos as u8);
        }
        if self.short.len() >= BUCKET_CAP {
            return Err(DictionaryError::BucketFull("short".to_string()));
        }
        let pos = self.short.len() as u8;
        self.short.push(word.to_string());
        self.seq += 1;
        Ok(pos)
    }

    /// Returns the in-bucket position of `word` in the special dictionary,
    /// inserting if absent. The word is stored verbatim.
    pub fn find_or_insert_special(&mut self, word: &[u8]) -> Result<u8, DictionaryError> {
        validate_special(word)?;
        let nc = word.len();
        let bucket = &mut self.special[nc - 1];
        if let Some(pos) = bucket.iter().position(|w| w == word) {
            return Ok(pos as u8);
        }
        if bucket.len() >= BUCKET_CAP {
            return Err(DictionaryError::BucketFull(format!("special nc={nc}")));
        }
        let pos = bucket.len() as u8;
        bucket.push(word.to_vec());
        self.seq += 1;
        Ok(pos)
    }

    /// Word stored at main address `(ic, nc, pos)`.
    pub fn lookup_main(&self, ic: u8, nc: u8, pos: u8) -> Result<&str, DictionaryError> {
        let unknown = || DictionaryError::PositionUnknown(format!("main ic={ic} nc={nc} pos={pos}"));
        if !(1..=ALPHABET as u8).contains(&ic)
            || !(MAIN_MIN_LEN as u8..=MAX_WORD_LEN as u8).contains(&nc)
        {
            return Err(unknown());
        }
        self.main[main_index(ic, nc)]
            .get(pos as usize)
            .map(String::as_str)
            .ok_or_else(unknown)
    }

    /// Word stored at short-list position `pos`.
    pub fn lookup_short(&self, pos: u8) -> Result<&str, DictionaryError> {
        self.short
            .get(pos as usize)
            .map(String::as_str)
            .ok_or_else(|| DictionaryError::PositionUnknown(format!("short pos={pos}")))
    }

    /// Word stored at special address `(nc, pos)`.
    pub fn lookup_special(&self, nc: u8, pos: u8) -> Result<&[u8], DictionaryError> {
        let unknown = || DictionaryError::PositionUnknown(format!("special nc={nc} pos={pos}"));
        if !(1..=MAX_WORD_LEN as u8).contains(&nc) {
            return Err(unknown());
        }
        self.special[nc as usize - 1]
            .get(pos as usize)
            .map(Vec::as_slice)
            .ok_or_else(unknown)
    }

    /// Entry counts and occupied-bucket sizes.
    pub fn stats(&self) -> DictionaryStats {
        let mut main_buckets = Vec::new();
        let mut main_entries = 0;
        for ic in 1..=ALPHABET as u8 {
            for nc in MAIN_MIN_LEN as u8..=MAX_WORD_LEN as u8 {
                let len = self.main[main_index(ic, nc)].len();
                if len > 0 {
                    main_buckets.push((ic, nc, len));
                    main_entries += len;
                }
            }
        }
        let mut special_buckets = Vec::new();
        let mut special_entries = 0;
        for nc in 1..=MAX_WORD_LEN as u8 {
            let len = self.special[nc as usize - 1].len();
            if len > 0 {
                special_buckets.push((nc, len));
                special_entries += len;
            }
        }
        DictionaryStats {
            id: self.id,
            seq: self.seq,
            main_entries,
            short_entries: self.short.len(),
            special_entries,
            main_buckets,
            special_buckets,
        }
    }

    /// Serializes the dictionary in the `IDXDICT v1` text format.
    ///
    /// ```text
    /// IDXDICT v1
    /// id <16 lowercase hex digits>
    /// seq <decimal>
    /// [MAIN]
    /// <ic> <nc> <pos> <word>
    /// [SHORT]
    /// <pos> <word>
    /// [SPECIAL]
    /// <nc> <pos> <escaped-word>
    /// ```
    ///
    /// Sections list entries in ascending index order with no gaps; special
    /// words escape `%` and every byte outside `0x21..=0x7E` as `%XX`.
    pub fn write_to(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{FILE_MAGIC}")?;
        writeln!(out, "id {:016x}", self.id)?;
        writeln!(out, "seq {}", self.seq)?;
        writeln!(out, "[MAIN]")?;
        for ic in 1..=ALPHABET as u8 {
            for nc in MAIN_MIN_LEN as u8..=MAX_WORD_LEN as u8 {
                for (pos, word) in self.main[main_index(ic, nc)].iter().enumerate() {
                    writeln!(out, "{ic} {nc} {pos} {word}")?;
                }
            }
        }
        writeln!(out, "[SHORT]")?;
        for (pos, word) in self.short.iter().enumerate() {
            writeln!(out, "{pos} {word}")?;
        }
        writeln!(out, "[SPECIAL]")?;
        for nc in 1..=MAX_WORD_LEN {
            for (pos, word) in self.special[nc - 1].iter().enumerate() {
                writeln!(out, "{nc} {pos} {}", escape(word))?;
            }
        }
        Ok(())
    }

    /// Parses a dictionary from the `IDXDICT v1` text format, validating
    /// every entry and the append-only layout (ascending indices, no
    /// position gaps or duplicates, `seq` equal to the entry count).
    pub fn read_from(reader: impl BufRead) -> Result<Self, DictionaryError> {
        let mut lines = reader.lines().enumerate();
        let mut next = || -> Result<Option<(usize, String)>, DictionaryError> {
            match lines.next() {
                Some((i, Ok(line))) => Ok(Some((i + 1, line))),
                Some((_, Err(e))) => Err(e.into()),
                None => Ok(None),
            }
        };
        let expect = |got: Option<(usize, String)>, want: &str| -> Result<usize, DictionaryError> {
            match got {
                Some((n, line)) if line == want => Ok(n),
                Some((n, line)) => Err(corrupt(n, format!("expected {want:?}, found {line:?}"))),
                None => Err(corrupt(0, format!("missing {want:?} line"))),
            }
        };

        expect(next()?, FILE_MAGIC)?;

        let (n, line) = next()?.ok_or_else(|| corrupt(0, "missing id line"))?;
        let hex = line
            .strip_prefix("id ")
            .ok_or_else(|| corrupt(n, "expected id line"))?;
        if hex.len() != 16 || !hex.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
            return Err(corrupt(n, "id must be 16 lowercase hex digits"));
        }
        let id = u64::from_str_radix(hex, 16).expect("validated hex");

        let (n, line) = next()?.ok_or_else(|| corrupt(0, "missing seq line"))?;
        let seq: u64 = line
            .strip_prefix("seq ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| corrupt(n, "expected seq line"))?;

        expect(next()?, "[MAIN]")?;

        let mut dict = Dictionary::with_id(id);
        let mut entries = 0u64;

        // [MAIN] until [SHORT]
        let mut last_key = (0u8, 0u8);
        let short_line = loop {
            let (n, line) = next()?.ok_or_else(|| corrupt(0, "missing [SHORT] section"))?;
            if line == "[SHORT]" {
                break n;
            }
            let mut fields = line.split(' ');
            let (ic, nc, pos, word) = match (fields.next(), fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), Some(c), Some(d), None) => (a, b, c, d),
                _ => return Err(corrupt(n, "main entry must be `<ic> <nc> <pos> <word>`")),
            };
            let ic: u8 = ic.parse().map_err(|_| corrupt(n, "bad main index"))?;
            let nc: u8 = nc.parse().map_err(|_| corrupt(n, "bad sub index"))?;
            let pos: usize = pos.parse().map_err(|_| corrupt(n, "bad position"))?;
            if !(1..=ALPHABET as u8).contains(&ic) {
                return Err(corrupt(n, format!("main index {ic} outside 1..=26")));
            }
            if !(MAIN_MIN_LEN as u8..=MAX_WORD_LEN as u8).contains(&nc) {
                return Err(corrupt(n, format!("sub index {nc} outside 3..=15")));
            }
            if (ic, nc) < last_key {
                return Err(corrupt(n, "main entries out of ascending order"));
            }
            last_key = (ic, nc);
            if word.len() != nc as usize || !word.bytes().all(|b| b.is_ascii_lowercase()) {
                return Err(corrupt(n, format!("word {word:?} does not match its indices")));
            }
            if word.as_bytes()[0] - b'a' + 1 != ic {
                return Err(corrupt(n, format!("word {word:?} does not start with letter {ic}")));
            }
            let bucket = &mut dict.main[main_index(ic, nc)];
            if bucket.iter().any(|w| w == word) {
                return Err(corrupt(n, format!("duplicate word {word:?} in bucket")));
            }
            if pos != bucket.len() {
                return Err(corrupt(
                    n,
                    format!("position {pos} leaves a gap or duplicate (expected {})", bucket.len()),
                ));
            }
            if bucket.len() >= BUCKET_CAP {
                return Err(corrupt(n, "bucket exceeds 256 entries"));
            }
            bucket.push(word.to_string());
            entries += 1;
        };
        let _ = short_line;

        // [SHORT] until [SPECIAL]
        loop {
            let (n, line) = next()?.ok_or_else(|| corrupt(0, "missing [SPECIAL] section"))?;
            if line == "[SPECIAL]" {
                break;
            }
            let mut fields = line.split(' ');
            let (pos, word) = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(corrupt(n, "short entry must be `<pos> <word>`")),
            };
            let pos: usize = pos.parse().map_err(|_| corrupt(n, "bad position"))?;
            if word.is_empty()
                || word.len() > SHORT_MAX_LEN
                || !word.bytes().all(|b| b.is_ascii_lowercase())
            {
                return Err(corrupt(n, format!("invalid short word {word:?}")));
            }
            if dict.short.iter().any(|w| w == word) {
                return Err(corrupt(n, format!("duplicate word {word:?} in short list")));
            }
            if pos != dict.short.len() {
                return Err(corrupt(
                    n,
                    format!("position {pos} leaves a gap or duplicate (expected {})", dict.short.len()),
                ));
            }
            if dict.short.len() >= BUCKET_CAP {
                return Err(corrupt(n, "short list exceeds 256 entries"));
            }
            dict.short.push(word.to_string());
            entries += 1;
        }

        // [SPECIAL] until EOF
        let mut last_nc = 0u8;
        while let Some((n, line)) = next()? {
            let mut fields = line.split(' ');
            let (nc, pos, escaped) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), Some(c), None) => (a, b, c),
                _ => return Err(corrupt(n, "special entry must be `<nc> <pos> <escaped-word>`")),
            };
            let nc: u8 = nc.parse().map_err(|_| corrupt(n, "bad sub index"))?;
            let pos: usize = pos.parse().map_err(|_| corrupt(n, "bad position"))?;
            if !(1..=MAX_WORD_LEN as u8).contains(&nc) {
                return Err(corrupt(n, format!("sub index {nc} outside 1..=15")));
            }
            if nc < last_nc {
                return Err(corrupt(n, "special entries out of ascending order"));
            }
            last_nc = nc;
            let word = unescape(escaped).map_err(|reason| corrupt(n, reason))?;
            if word.len() != nc as usize {
                return Err(corrupt(n, format!("word length {} does not match index {nc}", word.len())));
            }
            if let Err(e) = validate_special(&word) {
                return Err(corrupt(n, format!("invalid special word: {e}")));
            }
            let bucket = &mut dict.special[nc as usize - 1];
            if bucket.contains(&word) {
                return Err(corrupt(n, "duplicate word in bucket"));
            }
            if pos != bucket.len() {
                return Err(corrupt(
                    n,
                    format!("position {pos} leaves a gap or duplicate (expected {})", bucket.len()),
                ));
            }
            if bucket.len() >= BUCKET_CAP {
                return Err(corrupt(n, "bucket exceeds 256 entries"));
            }
            bucket.push(word);
            entries += 1;
        }

        if entries != seq {
            return Err(corrupt(
                0,
                format!("seq {seq} does not match entry count {entries}"),
            ));
        }
        dict.seq = seq;
        Ok(dict)
    }

    /// Atomically writes the dictionary to `path` (temp file + rename, so an
    /// interrupted save leaves the previous file intact).
    pub fn save(&self, path: &Path) -> Result<(), DictionaryError> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let tmp = tempfile::NamedTempFile::new_in(dir)?;
        let mut writer = BufWriter::new(tmp);
        self.write_to(&mut writer)?;
        let tmp = writer
            .into_inner()
            .map_err(|e| DictionaryError::Io(e.into_error()))?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| DictionaryError::Io(e.error))?;
        Ok(())
    }

    /// Loads a dictionary from `path`.
    pub fn load(path: &Path) -> Result<Self, DictionaryError> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn validate_special(word: &[u8]) -> Result<(), DictionaryError> {
    let len = word.len();
    if !(1..=MAX_WORD_LEN).contains(&len) {
        return Err(DictionaryError::LengthOutOfRange {
            len,
            min: 1,
            max: MAX_WORD_LEN,
        });
    }
    if word.iter().all(|b| b.is_ascii_alphabetic()) {
        return Err(DictionaryError::InvalidSpecialWord(
            "contains no non-letter byte",
        ));
    }
    if word.contains(&b'\n') {
        return Err(DictionaryError::InvalidSpecialWord("contains a newline"));
    }
    if word[..len - 1].contains(&b' ') || word[0] == b' ' {
        return Err(DictionaryError::InvalidSpecialWord(
            "space is only allowed trailing a punctuation pair",
        ));
    }
    Ok(())
}

fn escape(word: &[u8]) -> String {
    let mut out = String::with_capacity(word.len());
    for &b in word {
        if (0x21..=0x7E).contains(&b) && b != b'%' {
            out.push(b as char);
        } else {
            let _ = write!(out, "%{b:02X}");
        }
    }
    out
}

fn unescape(text: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::with_capacity(text.len());
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'%' => {
                let hex = bytes
                    .get(i + 1..i + 3)
                    .and_then(|h| std::str::from_utf8(h).ok())
                    .and_then(|h| u8::from_str_radix(h, 16).ok())
                    .ok_or_else(|| format!("bad escape in {text:?}"))?;
                out.push(hex);
                i += 3;
            }
            b @ 0x21..=0x7E => {
                out.push(b);
                i += 1;
            }
            b => return Err(format!("unescaped byte 0x{b:02X} in {text:?}")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize("Bulk").unwrap(), "bulk");
        assert_eq!(normalize("any").unwrap(), "any");
        assert_eq!(normalize("THIS").unwrap(), "this");
        assert!(matches!(
            normalize("a1b"),
            Err(DictionaryError::NotAlphabetic(_))
        ));
    }

    #[test]
    fn insert_into_preloaded_bucket_yields_next_position() {
        // 51 existing entries in bucket (1, 3): the next free slot is 51.
        let mut d = Dictionary::with_id(7);
        for i in 0..51u32 {
            let w = format!("a{}{}", (b'a' + (i / 26) as u8) as char, (b'a' + (i % 26) as u8) as char);
            assert_ne!(w, "any");
            d.find_or_insert_main(&w).unwrap();
        }
        assert_eq!(d.find_or_insert_main("any").unwrap(), (1, 51));
        assert_eq!(d.seq(), 52);
    }

    #[test]
    fn first_insert_lands_at_position_zero() {
        let mut d = Dictionary::with_id(7);
        assert_eq!(d.find_or_insert_main("bulk").unwrap(), (2, 0));
        assert_eq!(d.lookup_main(2, 4, 0).unwrap(), "bulk");
    }

    #[test]
    fn reinsert_is_idempotent() {
        let mut d = Dictionary::with_id(7);
        let first = d.find_or_insert_main("any").unwrap();
        let seq = d.seq();
        assert_eq!(d.find_or_insert_main("any").unwrap(), first);
        assert_eq!(d.seq(), seq);
    }

    #[test]
    fn short_list_appends_sequentially() {
        let mut d = Dictionary::with_id(7);
        assert_eq!(d.find_or_insert_short("a").unwrap(), 0);
        assert_eq!(d.find_or_insert_short("an").unwrap(), 1);
        assert_eq!(d.find_or_insert_short("an").unwrap(), 1);
        assert_eq!(d.seq(), 2);
        assert_eq!(d.lookup_short(1).unwrap(), "an");
    }

    #[test]
    fn special_words_bucket_by_length() {
        let mut d = Dictionary::with_id(7);
        let p = d.find_or_insert_special(b"a12").unwrap();
        assert_eq!(d.lookup_special(3, p).unwrap(), b"a12");
        let p = d.find_or_insert_special(b"$=2@").unwrap();
        assert_eq!(d.lookup_special(4, p).unwrap(), b"$=2@");
        let p = d.find_or_insert_special(b", ").unwrap();
        assert_eq!(d.lookup_special(2, p).unwrap(), b", ");
        assert_eq!(d.seq(), 3);
    }

    #[test]
    fn special_rejects_malformed_words() {
        let mut d = Dictionary::with_id(7);
        assert!(matches!(
            d.find_or_insert_special(b"abc"),
            Err(DictionaryError::InvalidSpecialWord(_))
        ));
        assert!(matches!(
            d.find_or_insert_special(b"a\nb"),
            Err(DictionaryError::InvalidSpecialWord(_))
        ));
        assert!(matches!(
            d.find_or_insert_special(b"a b"),
            Err(DictionaryError::InvalidSpecialWord(_))
        ));
        assert!(matches!(
            d.find_or_insert_special(b" "),
            Err(DictionaryError::InvalidSpecialWord(_))
        ));
    }

    #[test]
    fn lookup_misses() {
        let d = Dictionary::with_id(7);
        assert!(matches!(
            d.lookup_main(1, 3, 255),
            Err(DictionaryError::PositionUnknown(_))
        ));
        assert!(matches!(
            d.lookup_main(0, 3, 0),
            Err(DictionaryError::PositionUnknown(_))
        ));
        assert!(matches!(
            d.lookup_special(5, 0),
            Err(DictionaryError::PositionUnknown(_))
        ));
        assert!(matches!(
            d.lookup_short(0),
            Err(DictionaryError::PositionUnknown(_))
        ));
    }

    #[test]
    fn bucket_overflow_errors() {
        let mut d = Dictionary::with_id(7);
        // 26*26 = 676 candidates for bucket (1, 3); the 257th insert fails.
        let mut inserted = 0;
        for i in 0..676u32 {
            let w = format!("a{}{}", (b'a' + (i / 26) as u8) as char, (b'a' + (i % 26) as u8) as char);
            match d.find_or_insert_main(&w) {
                Ok(_) => inserted += 1,
                Err(DictionaryError::BucketFull(_)) => break,
                Err(e) => panic!("unexpected error: {e}"),
            }
        }
        assert_eq!(inserted, 256);
    }

    #[test]
    fn append_only_stability() {
        let mut d = Dictionary::with_id(7);
        let words = ["friends", "near", "far", "always", "there"];
        let mut recorded = Vec::new();
        for w in words {
            recorded.push((w, d.find_or_insert_main(w).unwrap()));
        }
        for extra in ["travel", "several", "miles", "anytime", "sincere"] {
            d.find_or_insert_main(extra).unwrap();
        }
        for (w, (ic, pos)) in recorded {
            assert_eq!(d.lookup_main(ic, w.len() as u8, pos).unwrap(), w);
        }
    }

    #[test]
    fn stats_consistency() {
        let mut d = Dictionary::with_id(7);
        let s = d.stats();
        assert_eq!((s.seq, s.main_entries, s.short_entries, s.special_entries), (0, 0, 0, 0));

        d.find_or_insert_main("beam").unwrap();
        d.find_or_insert_short("an").unwrap();
        d.find_or_insert_special(b", ").unwrap();
        let s = d.stats();
        assert_eq!(s.seq, 3);
        assert_eq!(s.main_entries + s.short_entries + s.special_entries, 3);
        assert_eq!(s.main_buckets, vec![(2, 4, 1)]);
        assert_eq!(s.special_buckets, vec![(2, 1)]);
    }

    #[test]
    fn save_load_roundtrip() {
        let mut d = Dictionary::with_id(0xDEADBEEF);
        d.find_or_insert_main("friends").unwrap();
        d.find_or_insert_main("beam").unwrap();
        d.find_or_insert_short("an").unwrap();
        d.find_or_insert_special(b", ").unwrap();
        d.find_or_insert_special(b"$=2@").unwrap();
        d.find_or_insert_special(&[0x80, 0xFF]).unwrap();

        let mut buf = Vec::new();
        d.write_to(&mut buf).unwrap();
        let loaded = Dictionary::read_from(Cursor::new(&buf)).unwrap();
        assert_eq!(loaded, d);
    }

    #[test]
    fn empty_file_roundtrip() {
        let d = Dictionary::with_id(1);
        let mut buf = Vec::new();
        d.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "IDXDICT v1\nid 0000000000000001\nseq 0\n[MAIN]\n[SHORT]\n[SPECIAL]\n"
        );
        let loaded = Dictionary::read_from(Cursor::new(&buf)).unwrap();
        assert_eq!(loaded, d);
        assert_eq!(loaded.seq(), 0);
    }

    #[test]
    fn escape_covers_percent_and_nonprintable() {
        assert_eq!(escape(b", "), ",%20");
        assert_eq!(escape(b"100%"), "100%25");
        assert_eq!(escape(&[0x80]), "%80");
        assert_eq!(unescape(",%20").unwrap(), b", ");
        assert_eq!(unescape("100%25").unwrap(), b"100%");
        assert!(unescape("%2").is_err());
        assert!(unescape("a b").is_err());
    }

    #[test]
    fn load_rejects_bad_magic() {
        let text = "NOTDICT v1\nid 0000000000000001\nseq 0\n[MAIN]\n[SHORT]\n[SPECIAL]\n";
        assert!(matches!(
            Dictionary::read_from(Cursor::new(text)),
            Err(DictionaryError::CorruptFile { line: 1, .. })
        ));
    }

    #[test]
    fn load_rejects_duplicate_position() {
        let text = "IDXDICT v1\nid 0000000000000001\nseq 2\n[MAIN]\n1 3 0 abc\n1 3 0 abd\n[SHORT]\n[SPECIAL]\n";
        assert!(matches!(
            Dictionary::read_from(Cursor::new(text)),
            Err(DictionaryError::CorruptFile { line: 6, .. })
        ));
    }

    #[test]
    fn load_rejects_position_gap() {
        let text = "IDXDICT v1\nid 0000000000000001\nseq 2\n[MAIN]\n1 3 0 abc\n1 3 2 abd\n[SHORT]\n[SPECIAL]\n";
        assert!(matches!(
            Dictionary::read_from(Cursor::new(text)),
            Err(DictionaryError::CorruptFile { line: 6, .. })
        ));
    }

    #[test]
    fn load_rejects_seq_mismatch() {
        let text = "IDXDICT v1\nid 0000000000000001\nseq 5\n[MAIN]\n1 3 0 abc\n[SHORT]\n[SPECIAL]\n";
        assert!(matches!(
            Dictionary::read_from(Cursor::new(text)),
            Err(DictionaryError::CorruptFile { .. })
        ));
    }

    #[test]
    fn load_rejects_word_index_mismatch() {
        // word "xyz" filed under main index 1 ("a")
        let text = "IDXDICT v1\nid 0000000000000001\nseq 1\n[MAIN]\n1 3 0 xyz\n[SHORT]\n[SPECIAL]\n";
        assert!(matches!(
            Dictionary::read_from(Cursor::new(text)),
            Err(DictionaryError::CorruptFile { line: 5, .. })
        ));
    }

    #[test]
    fn load_rejects_out_of_order_buckets() {
        let text = "IDXDICT v1\nid 0000000000000001\nseq 2\n[MAIN]\n2 4 0 beam\n1 3 0 abc\n[SHORT]\n[SPECIAL]\n";
        assert!(matches!(
            Dictionary::read_from(Cursor::new(text)),
            Err(DictionaryError::CorruptFile { line: 6, .. })
        ));
    }
}
