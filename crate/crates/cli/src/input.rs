//! Reading symbols from a file or standard input.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tokens {
    /// Every byte is a symbol.
    Bytes,
    /// Every line (without its terminator) is a symbol.
    Lines,
}

pub fn open(path: &str) -> Result<Box<dyn BufRead>> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(Path::new(path)).with_context(|| format!("opening {path}"))?;
    Ok(Box::new(BufReader::new(file)))
}

/// Symbols of the input. Lines are numbered by first appearance.
pub struct Symbols {
    reader: Box<dyn BufRead>,
    tokens: Tokens,
    ids: HashMap<Vec<u8>, u32>,
    line: Vec<u8>,
    bytes: io::Bytes<Box<dyn BufRead>>,
}

impl Symbols {
    pub fn new(reader: Box<dyn BufRead>, tokens: Tokens) -> Symbols {
        // The byte iterator owns its own handle; `reader` is used for lines.
        let (reader, bytes): (Box<dyn BufRead>, _) = match tokens {
            Tokens::Bytes => (Box::new(io::empty()), reader.bytes()),
            Tokens::Lines => (reader, (Box::new(io::empty()) as Box<dyn BufRead>).bytes()),
        };
        Symbols {
            reader,
            tokens,
            ids: HashMap::new(),
            line: Vec::new(),
            bytes,
        }
    }

    pub fn next_symbol(&mut self) -> Result<Option<u32>> {
        match self.tokens {
            Tokens::Bytes => Ok(self.bytes.next().transpose()?.map(u32::from)),
            Tokens::Lines => {
                self.line.clear();
                if self.reader.read_until(b'\n', &mut self.line)? == 0 {
                    return Ok(None);
                }
                if self.line.last() == Some(&b'\n') {
                    self.line.pop();
                    if self.line.last() == Some(&b'\r') {
                        self.line.pop();
                    }
                }
                let next = self.ids.len() as u32;
                Ok(Some(*self.ids.entry(self.line.clone()).or_insert(next)))
            }
        }
    }

    pub fn collect_all(mut self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        while let Some(s) = self.next_symbol()? {
            out.push(s);
        }
        Ok(out)
    }
}
