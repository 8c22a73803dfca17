//! Binary Netpbm graymap (P5), maxval at most 255.

use std::fs;
use std::path::Path;

use super::GrayImage;
use crate::error::{Error, PgmErrorKind, Result};

fn err(offset: usize, kind: PgmErrorKind) -> Error {
    Error::Pgm { offset, kind }
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    // Skips whitespace and `#` comments running to end of line.
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_space();
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u32))
                .ok_or_else(|| err(start, PgmErrorKind::BadHeader))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(if self.pos >= self.bytes.len() {
                err(self.pos, PgmErrorKind::TruncatedHeader)
            } else {
                err(self.pos, PgmErrorKind::BadHeader)
            });
        }
        Ok(value)
    }
}

/// Parses a binary PGM. Bytes after the declared payload are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(err(0, PgmErrorKind::BadMagic));
    }
    let mut h = Header { bytes, pos: 2 };
    match bytes.get(2) {
        Some(b) if b.is_ascii_whitespace() || *b == b'#' => {}
        Some(_) => return Err(err(2, PgmErrorKind::BadMagic)),
        None => return Err(err(2, PgmErrorKind::TruncatedHeader)),
    }

    let width = h.number()? as usize;
    let height = h.number()? as usize;
    if width == 0 || height == 0 {
        return Err(err(h.pos, PgmErrorKind::ZeroDimension));
    }
    let maxval_at = h.pos;
    let maxval = h.number()?;
    if maxval == 0 || maxval > 255 {
        return Err(err(maxval_at, PgmErrorKind::BadMaxval(maxval)));
    }
    // exactly one whitespace byte separates the header from the payload
    match bytes.get(h.pos) {
        Some(b) if b.is_ascii_whitespace() => h.pos += 1,
        Some(_) => return Err(err(h.pos, PgmErrorKind::BadHeader)),
        None => return Err(err(h.pos, PgmErrorKind::TruncatedHeader)),
    }

    let start = h.pos;
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| err(start, PgmErrorKind::BadHeader))?;
    let available = bytes.len() - start;
    if available < expected {
        return Err(err(bytes.len(), PgmErrorKind::TruncatedPayload { expected, found: available }));
    }
    let payload = &bytes[start..start + expected];
    let maxval = maxval as u8;
    if let Some(i) = payload.iter().position(|&v| v > maxval) {
        return Err(err(start + i, PgmErrorKind::SampleOutOfRange { value: payload[i], maxval }));
    }
    GrayImage::with_maxval(width, height, maxval, payload.to_vec())
}

/// Serializes as `P5\n<w> <h>\n<maxval>\n` followed by the samples.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", img.width(), img.height(), img.maxval()).into_bytes();
    out.extend_from_slice(img.samples());
    out
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage> {
    read_pgm(&fs::read(path)?)
}

pub fn write_pgm_file(path: impl AsRef<Path>, img: &GrayImage) -> Result<()> {
    fs::write(path, write_pgm(img))?;
    Ok(())
}
