//! Fixed-cadence frame streaming to a file or UDP sink.
//!
//! The producer paces frames at the command rate and pushes them into a
//! bounded queue; a sink thread drains it. On overflow the oldest frame is
//! dropped and counted — a stale command is worse than a missing one for a
//! motion platform — so the newest frame always survives.

use std::io::Write;
use std::net::UdpSocket;
use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crossbeam::queue::ArrayQueue;

use crate::cueing::PlatformFrame;
use crate::error::{Error, Result};
use crate::frame_codec::{encode_frame, FRAME_FILE_HEADER};

/// Destination for encoded frames.
pub trait FrameSink: Send {
    fn send(&mut self, frame: &PlatformFrame) -> Result<()>;
    /// Flushes buffered bytes; default is a no-op.
    fn finish(&mut self) -> Result<()> {
        Ok(())
    }
}

/// Binary frame file with the SURFFRM1 header.
pub struct FileSink {
    writer: std::io::BufWriter<std::fs::File>,
}

impl FileSink {
    pub fn create<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::create(path)?;
        let mut writer = std::io::BufWriter::new(file);
        writer.write_all(&FRAME_FILE_HEADER)?;
        Ok(Self { writer })
    }
}

impl FrameSink for FileSink {
    fn send(&mut self, frame: &PlatformFrame) -> Result<()> {
        self.writer.write_all(&encode_frame(frame)?)?;
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        self.writer.flush()?;
        Ok(())
    }
}

/// One 56-byte datagram per frame to a pre-connected peer.
pub struct UdpSink {
    socket: UdpSocket,
}

impl UdpSink {
    pub fn connect(addr: &str) -> Result<Self> {
        let socket = UdpSocket::bind("0.0.0.0:0")?;
        socket.connect(addr)?;
        Ok(Self { socket })
    }
}

impl FrameSink for UdpSink {
    fn send(&mut self, frame: &PlatformFrame) -> Result<()> {
        self.socket.send(&encode_frame(frame)?)?;
        Ok(())
    }
}

/// Outcome of a streaming run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StreamStats {
    /// Frames the sink accepted.
    pub sent: u64,
    /// Frames displaced from the queue before the sink could take them.
    pub dropped: u64,
}

/// Streams `frames` to `sink` at `rate_hz`.
///
/// The calling thread paces the source; the sink runs on its own thread
/// behind a bounded queue of `capacity` frames. Returns the counts, or the
/// first sink error once the queue has been drained.
pub fn stream_frames<I>(
    frames: I,
    rate_hz: f64,
    mut sink: Box<dyn FrameSink>,
    capacity: usize,
) -> Result<StreamStats>
where
    I: IntoIterator<Item = PlatformFrame>,
{
    if !(rate_hz > 0.0) {
        return Err(Error::Config(format!(
            "stream rate must be > 0 Hz, got {rate_hz}"
        )));
    }
    if capacity == 0 {
        return Err(Error::Config("stream queue capacity must be > 0".into()));
    }

    let queue = Arc::new(ArrayQueue::<PlatformFrame>::new(capacity));
    let done = Arc::new(AtomicBool::new(false));
    let period = Duration::from_secs_f64(1.0 / rate_hz);

    let consumer = {
        let queue = Arc::clone(&queue);
        let done = Arc::clone(&done);
        std::thread::spawn(move || -> (u64, Result<()>) {
            let mut sent = 0u64;
            loop {
                match queue.pop() {
                    Some(frame) => {
                        if let Err(e) = sink.send(&frame) {
                            return (sent, Err(e));
                        }
                        sent += 1;
                    }
                    None => {
                        if done.load(Ordering::Acquire) {
                            break;
                        }
                        std::thread::sleep(Duration::from_micros(200));
                    }
                }
            }
            let flushed = sink.finish();
            (sent, flushed)
        })
    };

    let mut dropped = 0u64;
    let mut deadline = Instant::now();
    for frame in frames {
        if queue.force_push(frame).is_some() {
            dropped += 1;
        }
        deadline += period;
        let now = Instant::now();
        if deadline > now {
            std::thread::sleep(deadline - now);
        }
    }
    done.store(true, Ordering::Release);

    let (sent, outcome) = consumer.join().expect("sink thread panicked");
    outcome?;
    Ok(StreamStats { sent, dropped })
}
