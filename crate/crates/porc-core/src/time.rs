//! Integer timestamps with an explicit precision unit.
//!
//! Timestamps are stored as milliseconds since the Unix epoch. Exact integer
//! equality at the log's declared precision is what defines event sets, so no
//! floating-point time is used anywhere.

use std::fmt;

use chrono::{DateTime, NaiveDateTime, TimeZone, Utc};

/// Granularity of a timestamp, ordered from finest to coarsest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Precision {
    Millisecond,
    Second,
    Minute,
    Hour,
    Day,
}

impl Precision {
    /// Length of one unit in milliseconds.
    pub fn unit_millis(self) -> i64 {
        match self {
            Precision::Millisecond => 1,
            Precision::Second => 1_000,
            Precision::Minute => 60_000,
            Precision::Hour => 3_600_000,
            Precision::Day => 86_400_000,
        }
    }

    pub fn parse(s: &str) -> Option<Precision> {
        match s {
            "ms" | "millisecond" | "milliseconds" => Some(Precision::Millisecond),
            "s" | "second" | "seconds" => Some(Precision::Second),
            "m" | "min" | "minute" | "minutes" => Some(Precision::Minute),
            "h" | "hour" | "hours" => Some(Precision::Hour),
            "d" | "day" | "days" => Some(Precision::Day),
            _ => None,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Precision::Millisecond => "millisecond",
            Precision::Second => "second",
            Precision::Minute => "minute",
            Precision::Hour => "hour",
            Precision::Day => "day",
        };
        f.write_str(s)
    }
}

/// An instant, stored as milliseconds since the Unix epoch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(pub i64);

impl Timestamp {
    pub fn from_millis(millis: i64) -> Timestamp {
        Timestamp(millis)
    }

    pub fn millis(self) -> i64 {
        self.0
    }

    /// Truncates the instant to the given unit (towards negative infinity).
    pub fn truncate(self, unit: Precision) -> Timestamp {
        let u = unit.unit_millis();
        Timestamp(self.0 - self.0.rem_euclid(u))
    }

    /// The finest unit at which this value carries information, i.e. the
    /// coarsest unit `u` with `self.truncate(u) == self`.
    pub fn granularity(self) -> Precision {
        for unit in [
            Precision::Day,
            Precision::Hour,
            Precision::Minute,
            Precision::Second,
        ] {
            if self.0.rem_euclid(unit.unit_millis()) == 0 {
                return unit;
            }
        }
        Precision::Millisecond
    }

    pub fn parse(s: &str, format: &str) -> Option<Timestamp> {
        // Try a full datetime first, then fall back to time-of-day-only
        // formats (used by compact fixtures like "13:00").
        if let Ok(dt) = DateTime::parse_from_str(s, format) {
            return Some(Timestamp(dt.timestamp_millis()));
        }
        if let Ok(dt) = NaiveDateTime::parse_from_str(s, format) {
            return Some(Timestamp(dt.and_utc().timestamp_millis()));
        }
        if let Ok(t) = chrono::NaiveTime::parse_from_str(s, format) {
            let date = chrono::NaiveDate::from_ymd_opt(1970, 1, 1).unwrap();
            return Some(Timestamp(date.and_time(t).and_utc().timestamp_millis()));
        }
        None
    }

    /// Canonical textual form, RFC 3339 with millisecond resolution.
    pub fn to_rfc3339(self) -> String {
        let dt = Utc.timestamp_millis_opt(self.0).unwrap();
        dt.to_rfc3339_opts(chrono::SecondsFormat::Millis, false)
    }

    /// Parses common ISO-8601/RFC-3339 forms (as found in XES files).
    pub fn parse_iso(s: &str) -> Option<Timestamp> {
        if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
            return Some(Timestamp(dt.timestamp_millis()));
        }
        for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"] {
            if let Ok(dt) = NaiveDateTime::parse_from_str(s, fmt) {
                return Some(Timestamp(dt.and_utc().timestamp_millis()));
            }
        }
        None
    }
}
