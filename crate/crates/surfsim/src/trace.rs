//! Hand-trace CSV ingestion: header `t,lx,ly,lz,rx,ry,rz`, SI units,
//! strictly monotone time.

use std::path::Path;

use crate::error::{Error, Result};
use crate::math::Vec3;
use crate::paddle::HandSample;

const TRACE_HEADER: [&str; 7] = ["t", "lx", "ly", "lz", "rx", "ry", "rz"];

pub fn read_trace<R: std::io::Read>(input: R) -> Result<Vec<HandSample>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    {
        let headers = reader.headers()?;
        let got: Vec<&str> = headers.iter().map(str::trim).collect();
        if got != TRACE_HEADER {
            return Err(Error::Trace(format!(
                "expected header {}, got {}",
                TRACE_HEADER.join(","),
                got.join(",")
            )));
        }
    }
    let mut samples: Vec<HandSample> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let f = |i: usize| -> Result<f64> {
            record
                .get(i)
                .ok_or_else(|| Error::Trace(format!("row {line}: missing column {i}")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Trace(format!("row {line}: {e}")))
        };
        let sample = HandSample {
            t: f(0)?,
            left_pos: Vec3::new(f(1)?, f(2)?, f(3)?),
            right_pos: Vec3::new(f(4)?, f(5)?, f(6)?),
        };
        if !sample.t.is_finite() || !sample.left_pos.is_finite() || !sample.right_pos.is_finite() {
            return Err(Error::Trace(format!("row {line}: non-finite value")));
        }
        if let Some(prev) = samples.last() {
            if sample.t <= prev.t {
                return Err(Error::Trace(format!(
                    "row {line}: t must be strictly increasing ({} after {})",
                    sample.t, prev.t
                )));
            }
        }
        samples.push(sample);
    }
    Ok(samples)
}

pub fn load_trace<P: AsRef<Path>>(path: P) -> Result<Vec<HandSample>> {
    read_trace(std::fs::File::open(path)?)
}

pub fn write_trace<W: std::io::Write>(out: W, samples: &[HandSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for s in samples {
        w.write_record([
            format!("{}", s.t),
            format!("{}", s.left_pos.x),
            format!("{}", s.left_pos.y),
            format!("{}", s.left_pos.z),
            format!("{}", s.right_pos.x),
            format!("{}", s.right_pos.y),
            format!("{}", s.right_pos.z),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_trace<P: AsRef<Path>>(path: P, samples: &[HandSample]) -> Result<()> {
    write_trace(
        std::io::BufWriter::new(std::fs::File::create(path)?),
        samples,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paddle::StrokePattern;

    #[test]
    fn round_trip_preserves_samples() {
        let samples = StrokePattern::default().generate(2.0, 0.01);
        let mut buf = Vec::new();
        write_trace(&mut buf, &samples).unwrap();
        let back = read_trace(buf.as_slice()).unwrap();
        assert_eq!(back, samples);
    }

    #[test]
    fn wrong_header_rejected() {
        let text = "time,lx,ly,lz,rx,ry,rz\n0,0,0,0,0,0,0\n";
        assert!(read_trace(text.as_bytes()).is_err());
    }

    #[test]
    fn non_monotone_time_rejected() {
        let text = "t,lx,ly,lz,rx,ry,rz\n0.0,0,0,0,0,0,0\n0.0,0,0,0,0,0,0\n";
        let err = read_trace(text.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"));
    }
}
