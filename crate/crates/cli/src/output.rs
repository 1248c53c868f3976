use std::io::{self, Write};

use sha2::{Digest, Sha256};

/// Output that is hashed as it is written.
pub struct Sink {
    inner: Box<dyn Write>,
    hasher: Sha256,
}

impl Sink {
    pub fn stdout() -> Sink {
        Sink::new(Box::new(io::stdout().lock()))
    }

    pub fn discard() -> Sink {
        Sink::new(Box::new(io::sink()))
    }

    fn new(inner: Box<dyn Write>) -> Sink {
        Sink {
            inner,
            hasher: Sha256::new(),
        }
    }

    pub fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }

    pub fn json(&mut self, value: &serde_json::Value) -> io::Result<()> {
        let text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
        writeln!(self, "{text}")
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
