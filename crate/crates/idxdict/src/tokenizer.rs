//! Splits an input byte stream into the four token classes the codec
//! encodes: space runs, newline runs, alphabetic words, and special words.
//!
//! Tokenization is byte-oriented and total: any input (including binary)
//! produces a token sequence whose expansions concatenate back to the input
//! exactly. Letters are ASCII `A-Z`/`a-z` only; every other byte that is not
//! a space or `\n` counts as special, so tabs, `\r`, digits, punctuation,
//! and bytes >= 0x80 all round-trip.

use thiserror::Error;

/// Upper bound on any token's length; the on-wire count field is 4 bits.
pub const MAX_TOKEN_LEN: usize = 15;

/// One classified slice of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    /// `count` consecutive 0x20 bytes, 1..=15.
    SpaceRun(u8),
    /// `count` consecutive 0x0A bytes, 1..=15.
    NewlineRun(u8),
    /// 1..=15 ASCII letters, case preserved.
    AlphaWord(String),
    /// 1..=15 bytes with at least one non-letter; no newline, and a space
    /// only as the final byte of a detached-punctuation pair.
    SpecialWord(Vec<u8>),
}

/// A token violating its class invariants, found during expansion.
#[derive(Debug, Error)]
#[error("malformed token: {0}")]
pub struct MalformedToken(pub String);

fn is_letter(b: u8) -> bool {
    b.is_ascii_alphabetic()
}

fn push_alpha_chunks(tokens: &mut Vec<Token>, letters: &[u8]) {
    for chunk in letters.chunks(MAX_TOKEN_LEN) {
        tokens.push(Token::AlphaWord(
            String::from_utf8(chunk.to_vec()).expect("ASCII letters"),
        ));
    }
}

/// Partitions `input` into tokens.
///
/// * Maximal runs of spaces or of newlines become [`Token::SpaceRun`] /
///   [`Token::NewlineRun`], split at 15.
/// * A maximal run of any other bytes becomes [`Token::AlphaWord`] chunks if
///   it is all letters.
/// * A run of letters with exactly one trailing non-letter (`"friends,"`)
///   splits into the word and a detached punctuation token; when the next
///   input byte is a space it is absorbed, so `"far, "` yields
///   `AlphaWord("far")` then `SpecialWord(", ")`.
/// * Anything else splits into 15-byte chunks, each classified on its own
///   content (a mixed run can strand a chunk of pure letters, which must
///   become an `AlphaWord` to stay expressible).
pub fn tokenize(input: &[u8]) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < input.len() {
        let b = input[i];
        if b == b' ' || b == b'\n' {
            let end = i + input[i..].iter().take_while(|&&x| x == b).count();
            let mut remaining = end - i;
            while remaining > 0 {
                let take = remaining.min(MAX_TOKEN_LEN) as u8;
                tokens.push(if b == b' ' {
                    Token::SpaceRun(take)
                } else {
                    Token::NewlineRun(take)
                });
                remaining -= take as usize;
            }
            i = end;
            continue;
        }

        let end = i + input[i..]
            .iter()
            .take_while(|&&x| x != b' ' && x != b'\n')
            .count();
        let run = &input[i..end];
        i = end;

        if run.iter().copied().all(is_letter) {
            push_alpha_chunks(&mut tokens, run);
        } else if run.len() >= 2
            && run[..run.len() - 1].iter().copied().all(is_letter)
            && !is_letter(run[run.len() - 1])
        {
            // Word with one trailing punctuation byte: detach it, and let it
            // absorb a single following space into a two-byte token.
            push_alpha_chunks(&mut tokens, &run[..run.len() - 1]);
            let c = run[run.len() - 1];
            if input.get(i) == Some(&b' ') {
                i += 1;
                tokens.push(Token::SpecialWord(vec![c, b' ']));
            } else {
                tokens.push(Token::SpecialWord(vec![c]));
            }
        } else {
            for chunk in run.chunks(MAX_TOKEN_LEN) {
                if chunk.iter().copied().all(is_letter) {
                    push_alpha_chunks(&mut tokens, chunk);
                } else {
                    tokens.push(Token::SpecialWord(chunk.to_vec()));
                }
            }
        }
    }
    tokens
}

/// Expands tokens back into bytes; inverse of [`tokenize`].
pub fn detokenize(tokens: &[Token]) -> Result<Vec<u8>, MalformedToken> {
    let mut out = Vec::new();
    for token in tokens {
        match token {
            Token::SpaceRun(n) | Token::NewlineRun(n) => {
                if !(1..=MAX_TOKEN_LEN as u8).contains(n) {
                    return Err(MalformedToken(format!("run length {n} outside 1..=15")));
                }
                let byte = if matches!(token, Token::SpaceRun(_)) { b' ' } else { b'\n' };
                out.extend(std::iter::repeat_n(byte, *n as usize));
            }
            Token::AlphaWord(w) => {
                if w.is_empty() || w.len() > MAX_TOKEN_LEN || !w.bytes().all(is_letter) {
                    return Err(MalformedToken(format!("invalid alpha word {w:?}")));
                }
                out.extend_from_slice(w.as_bytes());
            }
            Token::SpecialWord(w) => {
                let len = w.len();
                if len == 0 || len > MAX_TOKEN_LEN {
                    return Err(MalformedToken(format!("special word of {len} bytes")));
                }
                if w.contains(&b'\n') {
                    return Err(MalformedToken("special word contains a newline".into()));
                }
                if w[..len - 1].contains(&b' ') || (len == 1 && w[0] == b' ') {
                    return Err(MalformedToken(
                        "space is only valid trailing a punctuation pair".into(),
                    ));
                }
                out.extend_from_slice(w);
            }
        }
    }
    Ok(out)
}
