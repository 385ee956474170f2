//! Little-endian binary sections behind a one-line text magic.

use crate::error::{Error, Result};

pub(crate) struct Encoder {
    buf: Vec<u8>,
}

impl Encoder {
    pub fn new(magic: &str) -> Self {
        let mut buf = magic.as_bytes().to_vec();
        buf.push(b'\n');
        Encoder { buf }
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn f64(&mut self, v: f64) {
        self.u64(v.to_bits());
    }

    pub fn u32s(&mut self, values: &[u32]) {
        self.u64(values.len() as u64);
        self.buf.reserve(values.len() * 4);
        for v in values {
            self.buf.extend_from_slice(&v.to_le_bytes());
        }
    }

    pub fn i32s(&mut self, values: &[i32]) {
        self.u64(values.len() as u64);
        self.buf.reserve(values.len() * 4);
        for v in values {
            self.buf.extend_from_slice(&v.to_le_bytes());
        }
    }

    pub fn u64s(&mut self, values: &[u64]) {
        self.u64(values.len() as u64);
        for &v in values {
            self.u64(v);
        }
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

pub(crate) struct Decoder<'a> {
    data: &'a [u8],
    pos: usize,
}

fn truncated() -> Error {
    Error::Format("unexpected end of data".into())
}

impl<'a> Decoder<'a> {
    pub fn new(data: &'a [u8], magic: &str) -> Result<Self> {
        let line_end = data
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::Format("missing header line".into()))?;
        let found = String::from_utf8_lossy(&data[..line_end]);
        if found != magic {
            return Err(Error::Format(format!("expected header `{magic}`, found `{found}`")));
        }
        Ok(Decoder {
            data,
            pos: line_end + 1,
        })
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.data.len()).ok_or_else(truncated)?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_bits(self.u64()?))
    }

    fn len(&mut self, width: usize) -> Result<usize> {
        let len = self.u64()?;
        let remaining = (self.data.len() - self.pos) as u64;
        if len.checked_mul(width as u64).map_or(true, |b| b > remaining) {
            return Err(truncated());
        }
        Ok(len as usize)
    }

    pub fn u32s(&mut self) -> Result<Vec<u32>> {
        let len = self.len(4)?;
        let bytes = self.take(len * 4)?;
        Ok(bytes.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
    }

    pub fn i32s(&mut self) -> Result<Vec<i32>> {
        let len = self.len(4)?;
        let bytes = self.take(len * 4)?;
        Ok(bytes.chunks_exact(4).map(|c| i32::from_le_bytes(c.try_into().unwrap())).collect())
    }

    pub fn u64s(&mut self) -> Result<Vec<u64>> {
        let len = self.len(8)?;
        let bytes = self.take(len * 8)?;
        Ok(bytes.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect())
    }

    pub fn finish(self) -> Result<()> {
        if self.pos != self.data.len() {
            return Err(Error::Format(format!("{} trailing bytes", self.data.len() - self.pos)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut e = Encoder::new("test v1");
        e.u64(7);
        e.f64(0.25);
        e.u32s(&[1, 2, u32::MAX]);
        e.i32s(&[-3, 4]);
        e.u64s(&[9]);
        let bytes = e.finish();
        assert!(bytes.starts_with(b"test v1\n"));
        let mut d = Decoder::new(&bytes, "test v1").unwrap();
        assert_eq!(d.u64().unwrap(), 7);
        assert_eq!(d.f64().unwrap(), 0.25);
        assert_eq!(d.u32s().unwrap(), vec![1, 2, u32::MAX]);
        assert_eq!(d.i32s().unwrap(), vec![-3, 4]);
        assert_eq!(d.u64s().unwrap(), vec![9]);
        d.finish().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Decoder::new(b"other v1\n", "test v1").is_err());
        let mut e = Encoder::new("test v1");
        e.u32s(&[1, 2, 3]);
        let mut bytes = e.finish();
        bytes.truncate(bytes.len() - 2);
        let mut d = Decoder::new(&bytes, "test v1").unwrap();
        assert!(d.u32s().is_err());
        let mut huge = b"test v1\n".to_vec();
        huge.extend_from_slice(&u64::MAX.to_le_bytes());
        assert!(Decoder::new(&huge, "test v1").unwrap().u32s().is_err());
    }
}
