//! Lossless word-level text compression backed by a shared, append-only
//! dictionary.
//!
//! Instead of carrying its own dictionary, each compressed file references
//! a centralized one by id: words are stored there once, and the compressed
//! stream is a sequence of small fixed-width frames addressing them. The
//! dictionary grows on its own as inputs are compressed (a missed word is
//! appended to its bucket), and because positions never move, any container
//! remains decodable under every later dictionary state with the same id.
//!
//! ```
//! use idxdict::{compress, decompress, Dictionary};
//!
//! let mut dict = Dictionary::new();
//! let container = compress(b"near, far, wherever you are", &mut dict)?;
//! assert_eq!(
//!     decompress(&container, &dict)?,
//!     b"near, far, wherever you are"
//! );
//!
//! // The dictionary organized itself; later growth never breaks decoding.
//! dict.find_or_insert_main("unrelated")?;
//! assert_eq!(
//!     decompress(&container, &dict)?,
//!     b"near, far, wherever you are"
//! );
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The modules layer bottom-up: [`bitstream`] packs MSB-first bit fields,
//! [`tokenizer`] classifies input bytes, [`dictionary`] stores words,
//! [`codec`] turns tokens into frames and containers, and [`cli`] wraps it
//! all in a command-line tool. The `examples/` directory walks each
//! capability.

pub mod bitstream;
pub mod cli;
pub mod codec;
pub mod dictionary;
pub mod tokenizer;

pub use codec::{
    compress, decompress, metrics, CodecError, CompressedContainer, Metrics,
};
pub use dictionary::{Dictionary, DictionaryError, DictionaryStats};
pub use tokenizer::{detokenize, tokenize, Token};
