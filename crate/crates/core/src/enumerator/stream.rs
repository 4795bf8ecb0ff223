//! Serialized diff streams.
//!
//! Text: the empty set is the line `S`; every other diff is
//! `d <pop> <push>` (or `d <pop>` when nothing is pushed), one per line,
//! `\n`-terminated, decimal without padding.
//!
//! Binary: each diff is two unsigned LEB128 varints, `pop` then
//! `push + 1` (`0` when nothing is pushed). The empty set is `0x00 0x00`.

use std::io::{self, Write};
use std::ops::ControlFlow;

use super::{Sink, SolutionDiff};
use crate::error::StreamError;

pub fn write_text<W: Write>(out: &mut W, d: SolutionDiff) -> io::Result<()> {
    match (d.pop, d.push) {
        (0, None) => out.write_all(b"S\n"),
        (pop, None) => writeln!(out, "d {pop}"),
        (pop, Some(v)) => writeln!(out, "d {pop} {v}"),
    }
}

pub fn parse_text(text: &str) -> Result<Vec<SolutionDiff>, StreamError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let bad = |msg: &str| StreamError::Parse { line: idx + 1, msg: msg.to_string() };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad("expected an integer"));
        let d = match toks.as_slice() {
            ["S"] => SolutionDiff::EMPTY,
            ["d", pop] => SolutionDiff { pop: num(pop)?, push: None },
            ["d", pop, v] => SolutionDiff { pop: num(pop)?, push: Some(num(v)?) },
            _ => return Err(bad("expected `S` or `d <pop> <push>`")),
        };
        out.push(d);
    }
    Ok(out)
}

fn put_varint(out: &mut Vec<u8>, mut x: u64) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn get_varint(bytes: &[u8], at: &mut usize) -> Result<u64, StreamError> {
    let mut x = 0u64;
    for shift in (0..64).step_by(7) {
        let b = *bytes.get(*at).ok_or(StreamError::Truncated)?;
        *at += 1;
        x |= u64::from(b & 0x7f) << shift;
        if b & 0x80 == 0 {
            return Ok(x);
        }
    }
    Err(StreamError::Truncated)
}

pub fn encode_binary(out: &mut Vec<u8>, d: SolutionDiff) {
    put_varint(out, d.pop as u64);
    put_varint(out, d.push.map_or(0, |v| v as u64 + 1));
}

pub fn decode_binary(bytes: &[u8]) -> Result<Vec<SolutionDiff>, StreamError> {
    let mut at = 0;
    let mut out = Vec::new();
    while at < bytes.len() {
        let pop = get_varint(bytes, &mut at)? as usize;
        let push = get_varint(bytes, &mut at)?;
        out.push(SolutionDiff { pop, push: push.checked_sub(1).map(|v| v as usize) });
    }
    Ok(out)
}

/// Writes the text format, stopping after `limit` diffs if set.
pub struct TextSink<W: Write> {
    pub out: W,
    pub limit: Option<u64>,
    pub written: u64,
    pub error: Option<io::Error>,
}

impl<W: Write> TextSink<W> {
    pub fn new(out: W, limit: Option<u64>) -> Self {
        TextSink { out, limit, written: 0, error: None }
    }
}

impl<W: Write> Sink for TextSink<W> {
    fn emit(&mut self, d: SolutionDiff) -> ControlFlow<()> {
        if let Err(e) = write_text(&mut self.out, d) {
            self.error = Some(e);
            return ControlFlow::Break(());
        }
        self.written += 1;
        match self.limit {
            Some(l) if self.written >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

/// Writes the binary format, buffering one diff at a time.
pub struct BinarySink<W: Write> {
    pub out: W,
    pub limit: Option<u64>,
    pub written: u64,
    pub error: Option<io::Error>,
    buf: Vec<u8>,
}

impl<W: Write> BinarySink<W> {
    pub fn new(out: W, limit: Option<u64>) -> Self {
        BinarySink { out, limit, written: 0, error: None, buf: Vec::with_capacity(20) }
    }
}

impl<W: Write> Sink for BinarySink<W> {
    fn emit(&mut self, d: SolutionDiff) -> ControlFlow<()> {
        self.buf.clear();
        encode_binary(&mut self.buf, d);
        if let Err(e) = self.out.write_all(&self.buf) {
            self.error = Some(e);
            return ControlFlow::Break(());
        }
        self.written += 1;
        match self.limit {
            Some(l) if self.written >= l => ControlFlow::Break(()),
            _ => ControlFlow::Continue(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_bytes() {
        let mut out = Vec::new();
        for d in [SolutionDiff::EMPTY, SolutionDiff { pop: 0, push: Some(0) }, SolutionDiff { pop: 1, push: Some(1) }] {
            write_text(&mut out, d).unwrap();
        }
        assert_eq!(out, b"S\nd 0 0\nd 1 1\n");
        assert!(parse_text("x").is_err());
        assert!(parse_text("d a 1").is_err());
    }

    #[test]
    fn binary_bytes() {
        let mut out = Vec::new();
        encode_binary(&mut out, SolutionDiff::EMPTY);
        encode_binary(&mut out, SolutionDiff { pop: 1, push: Some(200) });
        assert_eq!(out, vec![0x00, 0x00, 0x01, 0xc9, 0x01]);
        assert_eq!(decode_binary(&[0x01, 0x80]), Err(StreamError::Truncated));
    }

    fn diff_strategy() -> impl Strategy<Value = SolutionDiff> {
        (0usize..1 << 20, proptest::option::of(0usize..1 << 40)).prop_map(|(pop, push)| SolutionDiff { pop, push })
    }

    proptest! {
        #[test]
        fn formats_roundtrip(ds in proptest::collection::vec(diff_strategy(), 0..50)) {
            let mut text = Vec::new();
            let mut bin = Vec::new();
            for &d in &ds {
                write_text(&mut text, d).unwrap();
                encode_binary(&mut bin, d);
            }
            prop_assert_eq!(parse_text(std::str::from_utf8(&text).unwrap()).unwrap(), ds.clone());
            prop_assert_eq!(decode_binary(&bin).unwrap(), ds);
        }
    }
}
