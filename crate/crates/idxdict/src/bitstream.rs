//! MSB-first bit-level serialization over byte buffers.
//!
//! Values are packed most-significant-bit first, so a frame written as
//! `flag(2) count(4) ...` reads back with the same widths in the same order.
//! `finish` zero-pads the final byte; padding is never data — the container's
//! frame count decides where the stream ends.

use thiserror::Error;

/// Errors from bit-level reads and writes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitstreamError {
    /// The value does not fit in the requested width.
    #[error("value {value} does not fit in {width} bits")]
    ValueOverflow { value: u32, width: u32 },
    /// Fewer bits remain than were requested.
    #[error("truncated stream: requested {requested} bits, {available} remain")]
    TruncatedStream { requested: u32, available: usize },
}

/// Accumulates values into a byte buffer, MSB-first.
#[derive(Debug, Default)]
pub struct BitWriter {
    buf: Vec<u8>,
    cur: u8,
    filled: u32, // bits occupied in `cur`, 0..8
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total bits written so far.
    pub fn bits_written(&self) -> usize {
        self.buf.len() * 8 + self.filled as usize
    }

    /// Appends the low `width` bits of `value`, MSB-first.
    ///
    /// `width` must be in 1..=32.
    pub fn write_bits(&mut self, value: u32, width: u32) -> Result<(), BitstreamError> {
        assert!((1..=32).contains(&width), "width {width} outside 1..=32");
        if width < 32 && (value >> width) != 0 {
            return Err(BitstreamError::ValueOverflow { value, width });
        }
        for i in (0..width).rev() {
            let bit = ((value >> i) & 1) as u8;
            self.cur = (self.cur << 1) | bit;
            self.filled += 1;
            if self.filled == 8 {
                self.buf.push(self.cur);
                self.cur = 0;
                self.filled = 0;
            }
        }
        Ok(())
    }

    /// Zero-pads to a byte boundary and returns the buffer.
    pub fn finish(mut self) -> Vec<u8> {
        if self.filled > 0 {
            self.buf.push(self.cur << (8 - self.filled));
        }
        self.buf
    }
}

/// Reads values back out of a byte slice, MSB-first.
#[derive(Debug)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: usize, // bit index
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    /// Bits not yet consumed.
    pub fn remaining_bits(&self) -> usize {
        self.data.len() * 8 - self.pos
    }

    /// Reads the next `width` bits, MSB-first.
    ///
    /// `width` must be in 1..=32.
    pub fn read_bits(&mut self, width: u32) -> Result<u32, BitstreamError> {
        assert!((1..=32).contains(&width), "width {width} outside 1..=32");
        if self.remaining_bits() < width as usize {
            return Err(BitstreamError::TruncatedStream {
                requested: width,
                available: self.remaining_bits(),
            });
        }
        let mut acc = 0u32;
        for _ in 0..width {
            let byte = self.data[self.pos / 8];
            let bit = (byte >> (7 - self.pos % 8)) & 1;
            acc = (acc << 1) | bit as u32;
            self.pos += 1;
        }
        Ok(acc)
    }
}
