//! Fixed binary layout for platform command frames.
//!
//! One record is exactly 56 bytes: seven little-endian f64 values in the
//! order t, surge, sway, heave, pitch, roll, yaw. Frame files carry an
//! 8-byte magic+version header before the records; UDP datagrams carry one
//! bare record each.

use crate::cueing::PlatformFrame;
use crate::error::{Error, Result};

/// Bytes per encoded frame.
pub const FRAME_RECORD_BYTES: usize = 56;

/// Magic + version header written at the start of frame files.
pub const FRAME_FILE_HEADER: [u8; 8] = *b"SURFFRM1";

const FIELD_NAMES: [&str; 7] = ["t", "surge", "sway", "heave", "pitch", "roll", "yaw"];

/// Encodes a frame into its 56-byte record. Rejects non-finite fields.
pub fn encode_frame(frame: &PlatformFrame) -> Result<[u8; FRAME_RECORD_BYTES]> {
    let values = [
        frame.t,
        frame.surge,
        frame.sway,
        frame.heave,
        frame.pitch,
        frame.roll,
        frame.yaw,
    ];
    for (value, name) in values.iter().zip(FIELD_NAMES) {
        if !value.is_finite() {
            return Err(Error::NonFiniteFrameField { field: name });
        }
    }
    let mut out = [0u8; FRAME_RECORD_BYTES];
    for (i, value) in values.iter().enumerate() {
        out[i * 8..(i + 1) * 8].copy_from_slice(&value.to_le_bytes());
    }
    Ok(out)
}

/// Decodes one 56-byte record. Bitwise inverse of [`encode_frame`].
pub fn decode_frame(bytes: &[u8]) -> Result<PlatformFrame> {
    if bytes.len() < FRAME_RECORD_BYTES {
        return Err(Error::ShortFrameBuffer {
            expected: FRAME_RECORD_BYTES,
            got: bytes.len(),
        });
    }
    let mut values = [0.0f64; 7];
    for (i, value) in values.iter_mut().enumerate() {
        let mut raw = [0u8; 8];
        raw.copy_from_slice(&bytes[i * 8..(i + 1) * 8]);
        *value = f64::from_le_bytes(raw);
    }
    for (value, name) in values.iter().zip(FIELD_NAMES) {
        if !value.is_finite() {
            return Err(Error::NonFiniteFrameField { field: name });
        }
    }
    Ok(PlatformFrame {
        t: values[0],
        surge: values[1],
        sway: values[2],
        heave: values[3],
        pitch: values[4],
        roll: values[5],
        yaw: values[6],
    })
}

/// Reads every record from a frame file, checking the header.
pub fn read_frame_file(bytes: &[u8]) -> Result<Vec<PlatformFrame>> {
    if bytes.len() < FRAME_FILE_HEADER.len() || bytes[..8] != FRAME_FILE_HEADER {
        return Err(Error::LogFormat(
            "frame file is missing the SURFFRM1 header".into(),
        ));
    }
    let body = &bytes[FRAME_FILE_HEADER.len()..];
    if !body.len().is_multiple_of(FRAME_RECORD_BYTES) {
        return Err(Error::LogFormat(format!(
            "frame file body of {} bytes is not a multiple of {FRAME_RECORD_BYTES}",
            body.len()
        )));
    }
    body.chunks(FRAME_RECORD_BYTES).map(decode_frame).collect()
}
