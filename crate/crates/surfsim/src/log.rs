//! Fixed-rate simulation log and its CSV form.
//!
//! The CSV layout is versioned by a leading `# surfsim-log v1` comment
//! line, then a header row. Floats are written in Rust's shortest
//! round-trip form, so identical runs produce byte-identical files and
//! parsing back recovers the exact bit patterns.

use std::io::Write;
use std::path::Path;

use crate::cueing::PlatformFrame;
use crate::error::{Error, Result};
use crate::math::{Quat, Vec3};

pub const LOG_VERSION_LINE: &str = "# surfsim-log v1";

/// Board kinematics snapshot carried in every log row.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BodyKinematics {
    pub position: Vec3,
    pub orientation: Quat,
    pub linear_velocity: Vec3,
    pub angular_velocity: Vec3,
}

/// Which wrench sources were active when a row was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WrenchSources {
    pub hydro: bool,
    pub paddle: bool,
    pub scripted: bool,
}

impl WrenchSources {
    fn encode(&self) -> String {
        let mut parts = Vec::new();
        if self.hydro {
            parts.push("hydro");
        }
        if self.paddle {
            parts.push("paddle");
        }
        if self.scripted {
            parts.push("scripted");
        }
        if parts.is_empty() {
            "none".to_string()
        } else {
            parts.join(";")
        }
    }

    fn decode(s: &str) -> Result<Self> {
        let mut out = Self::default();
        if s == "none" {
            return Ok(out);
        }
        for part in s.split(';') {
            match part {
                "hydro" => out.hydro = true,
                "paddle" => out.paddle = true,
                "scripted" => out.scripted = true,
                other => {
                    return Err(Error::LogFormat(format!("unknown wrench source '{other}'")));
                }
            }
        }
        Ok(out)
    }
}

/// One fixed-rate record of the full pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRow {
    pub t: f64,
    pub body: BodyKinematics,
    /// Body-frame finite-difference accelerations.
    pub raw_lin_accel: Vec3,
    pub raw_ang_accel: Vec3,
    /// EMA outputs.
    pub filtered_lin_accel: Vec3,
    pub filtered_ang_accel: Vec3,
    pub filtered_lin_vel: Vec3,
    /// Mapped command before envelope clamping.
    pub raw_frame: PlatformFrame,
    /// Envelope-legal command sent to the platform.
    pub frame: PlatformFrame,
    /// Pose the platform model reports.
    pub achieved: PlatformFrame,
    pub sources: WrenchSources,
}

/// Time-ordered rows at a fixed timestep.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationLog {
    pub dt: f64,
    pub rows: Vec<LogRow>,
}

const COLUMNS: [&str; 48] = [
    "t",
    "pos_x",
    "pos_y",
    "pos_z",
    "quat_w",
    "quat_x",
    "quat_y",
    "quat_z",
    "vel_x",
    "vel_y",
    "vel_z",
    "angvel_x",
    "angvel_y",
    "angvel_z",
    "accel_x",
    "accel_y",
    "accel_z",
    "angaccel_x",
    "angaccel_y",
    "angaccel_z",
    "faccel_x",
    "faccel_y",
    "faccel_z",
    "fangaccel_x",
    "fangaccel_y",
    "fangaccel_z",
    "fvel_x",
    "fvel_y",
    "fvel_z",
    "raw_surge",
    "raw_sway",
    "raw_heave",
    "raw_pitch",
    "raw_roll",
    "raw_yaw",
    "cmd_surge",
    "cmd_sway",
    "cmd_heave",
    "cmd_pitch",
    "cmd_roll",
    "cmd_yaw",
    "ach_surge",
    "ach_sway",
    "ach_heave",
    "ach_pitch",
    "ach_roll",
    "ach_yaw",
    "sources",
];

impl SimulationLog {
    pub fn duration(&self) -> f64 {
        self.rows.last().map(|r| r.t).unwrap_or(0.0)
    }

    /// Commanded (post-clamp) frames.
    pub fn commanded_frames(&self) -> Vec<PlatformFrame> {
        self.rows.iter().map(|r| r.frame).collect()
    }

    /// Achieved-pose frames from the platform model.
    pub fn achieved_frames(&self) -> Vec<PlatformFrame> {
        self.rows.iter().map(|r| r.achieved).collect()
    }

    /// Rows with `t` in `[start, end)`.
    pub fn window(&self, start: f64, end: f64) -> impl Iterator<Item = &LogRow> {
        self.rows.iter().filter(move |r| r.t >= start && r.t < end)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{LOG_VERSION_LINE} dt={}", self.dt)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        for r in &self.rows {
            let b = &r.body;
            let fields: Vec<String> = [
                r.t,
                b.position.x,
                b.position.y,
                b.position.z,
                b.orientation.w,
                b.orientation.x,
                b.orientation.y,
                b.orientation.z,
                b.linear_velocity.x,
                b.linear_velocity.y,
                b.linear_velocity.z,
                b.angular_velocity.x,
                b.angular_velocity.y,
                b.angular_velocity.z,
                r.raw_lin_accel.x,
                r.raw_lin_accel.y,
                r.raw_lin_accel.z,
                r.raw_ang_accel.x,
                r.raw_ang_accel.y,
                r.raw_ang_accel.z,
                r.filtered_lin_accel.x,
                r.filtered_lin_accel.y,
                r.filtered_lin_accel.z,
                r.filtered_ang_accel.x,
                r.filtered_ang_accel.y,
                r.filtered_ang_accel.z,
                r.filtered_lin_vel.x,
                r.filtered_lin_vel.y,
                r.filtered_lin_vel.z,
                r.raw_frame.surge,
                r.raw_frame.sway,
                r.raw_frame.heave,
                r.raw_frame.pitch,
                r.raw_frame.roll,
                r.raw_frame.yaw,
                r.frame.surge,
                r.frame.sway,
                r.frame.heave,
                r.frame.pitch,
                r.frame.roll,
                r.frame.yaw,
                r.achieved.surge,
                r.achieved.sway,
                r.achieved.heave,
                r.achieved.pitch,
                r.achieved.roll,
                r.achieved.yaw,
            ]
            .iter()
            .map(|v| format!("{v}"))
            .chain(std::iter::once(r.sources.encode()))
            .collect();
            w.write_record(&fields)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut content = String::new();
        let mut reader = std::io::BufReader::new(input);
        std::io::Read::read_to_string(&mut reader, &mut content)?;
        let version_line = content.lines().next().unwrap_or_default();
        if !version_line.starts_with(LOG_VERSION_LINE) {
            return Err(Error::LogFormat(format!(
                "expected version line '{LOG_VERSION_LINE} ...', got '{version_line}'"
            )));
        }
        let dt = version_line
            .split("dt=")
            .nth(1)
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| Error::LogFormat("version line is missing dt".into()))?;

        let mut r = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(content.as_bytes());
        {
            let headers = r.headers()?;
            if headers.len() != COLUMNS.len() {
                return Err(Error::LogFormat(format!(
                    "expected {} columns, got {}",
                    COLUMNS.len(),
                    headers.len()
                )));
            }
        }
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record?;
            let f = |i: usize| -> Result<f64> {
                record
                    .get(i)
                    .ok_or_else(|| Error::LogFormat(format!("missing column {i}")))?
                    .parse::<f64>()
                    .map_err(|e| Error::LogFormat(format!("column {i}: {e}")))
            };
            let v3 = |i: usize| -> Result<Vec3> { Ok(Vec3::new(f(i)?, f(i + 1)?, f(i + 2)?)) };
            let t = f(0)?;
            let frame_at = |i: usize| -> Result<PlatformFrame> {
                Ok(PlatformFrame {
                    t,
                    surge: f(i)?,
                    sway: f(i + 1)?,
                    heave: f(i + 2)?,
                    pitch: f(i + 3)?,
                    roll: f(i + 4)?,
                    yaw: f(i + 5)?,
                })
            };
            rows.push(LogRow {
                t,
                body: BodyKinematics {
                    position: v3(1)?,
                    orientation: Quat {
                        w: f(4)?,
                        x: f(5)?,
                        y: f(6)?,
                        z: f(7)?,
                    },
                    linear_velocity: v3(8)?,
                    angular_velocity: v3(11)?,
                },
                raw_lin_accel: v3(14)?,
                raw_ang_accel: v3(17)?,
                filtered_lin_accel: v3(20)?,
                filtered_ang_accel: v3(23)?,
                filtered_lin_vel: v3(26)?,
                raw_frame: frame_at(29)?,
                frame: frame_at(35)?,
                achieved: frame_at(41)?,
                sources: WrenchSources::decode(record.get(47).unwrap_or("none"))?,
            });
        }
        Ok(Self { dt, rows })
    }

    pub fn load_csv<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_log() -> SimulationLog {
        let rows = (0..25)
            .map(|k| {
                let t = k as f64 * 0.01;
                LogRow {
                    t,
                    body: BodyKinematics {
                        position: Vec3::new(0.1 * t, -0.003, 1.5 * t),
                        orientation: Quat::from_axis_angle(Vec3::Y, 0.01 * t),
                        linear_velocity: Vec3::new(0.0, 0.0, 1.5),
                        angular_velocity: Vec3::new(0.0, 0.01, 0.0),
                    },
                    raw_lin_accel: Vec3::new(0.0, 0.0, 3.0),
                    raw_ang_accel: Vec3::ZERO,
                    filtered_lin_accel: Vec3::new(0.0, 0.0, 2.4),
                    filtered_ang_accel: Vec3::ZERO,
                    filtered_lin_vel: Vec3::new(0.0, 0.001, 1.4),
                    raw_frame: PlatformFrame {
                        t,
                        surge: 0.048,
                        ..Default::default()
                    },
                    frame: PlatformFrame {
                        t,
                        surge: 0.048,
                        ..Default::default()
                    },
                    achieved: PlatformFrame {
                        t,
                        surge: 0.04,
                        ..Default::default()
                    },
                    sources: WrenchSources {
                        hydro: true,
                        paddle: false,
                        scripted: true,
                    },
                }
            })
            .collect();
        SimulationLog { dt: 0.01, rows }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let log = sample_log();
        let mut buf = Vec::new();
        log.write_csv(&mut buf).unwrap();
        let parsed = SimulationLog::read_csv(buf.as_slice()).unwrap();
        assert_eq!(parsed, log);
    }

    #[test]
    fn csv_bytes_are_deterministic() {
        let log = sample_log();
        let mut a = Vec::new();
        let mut b = Vec::new();
        log.write_csv(&mut a).unwrap();
        log.write_csv(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_version_line_rejected() {
        let log = sample_log();
        let mut buf = Vec::new();
        log.write_csv(&mut buf).unwrap();
        let stripped: Vec<u8> = buf
            .split(|&b| b == b'\n')
            .skip(1)
            .collect::<Vec<_>>()
            .join(&b'\n');
        assert!(SimulationLog::read_csv(stripped.as_slice()).is_err());
    }

    #[test]
    fn sources_encoding_round_trips() {
        for (h, p, s) in [
            (false, false, false),
            (true, false, true),
            (true, true, true),
        ] {
            let src = WrenchSources {
                hydro: h,
                paddle: p,
                scripted: s,
            };
            assert_eq!(WrenchSources::decode(&src.encode()).unwrap(), src);
        }
        assert!(WrenchSources::decode("waves").is_err());
    }
}
