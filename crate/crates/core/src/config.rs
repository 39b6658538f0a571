//! Scenario files: parsing, canonical serialization, validation and
//! parameter sweeps.
//!
//! A scenario is a UTF-8 `key = value` file. `#` starts a comment, lists
//! are comma separated and group-scoped keys use `Group<N>.<field>` with
//! groups numbered from 1. Sizes accept decimal `k`/`M`/`G` suffixes;
//! buffers and payloads are bytes, interface speeds are bits per second.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::routing::RouterKind;

pub const DEFAULT_TIME_STEP: f64 = 0.5;
pub const DEFAULT_REPORT_INTERVAL: f64 = 300.0;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_GROUP_BUFFER: u64 = 5_000_000;
pub const DEFAULT_GROUP_TTL: f64 = 300.0;
pub const DEFAULT_GROUP_SPEED: (f64, f64) = (0.5, 1.5);

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing mandatory key `{0}`")]
    Missing(&'static str),
    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),
    #[error("bad value `{value}` for sweep axis `{axis}`: {message}")]
    SweepValue {
        axis: String,
        value: String,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TtlUnit {
    #[default]
    Minutes,
    Seconds,
}

impl TtlUnit {
    pub fn to_seconds(self, ttl: f64) -> f64 {
        match self {
            TtlUnit::Minutes => ttl * 60.0,
            TtlUnit::Seconds => ttl,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceSpec {
    /// Bits per second.
    pub transmit_speed: f64,
    /// Meters.
    pub transmit_range: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub name: String,
    pub count: u32,
    pub interfaces: Vec<String>,
    pub ok_maps: Vec<String>,
    pub speed_min: f64,
    pub speed_max: f64,
    /// Bytes.
    pub buffer_size: u64,
    /// In [`Scenario::ttl_unit`] units (minutes by default).
    pub msg_ttl: f64,
    /// Free-form `Group<N>.router.<key>` entries, carried through verbatim.
    pub router_params: BTreeMap<String, String>,
}

impl GroupSpec {
    fn with_defaults(n: usize) -> Self {
        GroupSpec {
            name: format!("Group{n}"),
            count: 1,
            interfaces: Vec::new(),
            ok_maps: Vec::new(),
            speed_min: DEFAULT_GROUP_SPEED.0,
            speed_max: DEFAULT_GROUP_SPEED.1,
            buffer_size: DEFAULT_GROUP_BUFFER,
            msg_ttl: DEFAULT_GROUP_TTL,
            router_params: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrafficSpec {
    pub source_groups: Vec<String>,
    pub dest_group: String,
    pub interval_min: f64,
    pub interval_max: f64,
    pub size_min: u64,
    pub size_max: u64,
    pub name_prefix: String,
}

impl Default for TrafficSpec {
    fn default() -> Self {
        TrafficSpec {
            source_groups: Vec::new(),
            dest_group: String::new(),
            interval_min: 60.0,
            interval_max: 120.0,
            size_min: 500_000,
            size_max: 1_000_000,
            name_prefix: "SOS".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub end_time: f64,
    pub world_width: f64,
    pub world_height: f64,
    pub warmup: f64,
    pub time_step: f64,
    pub seed: u64,
    pub report_interval: f64,
    /// Directory that `ok_maps` entries are resolved against.
    pub map_dir: PathBuf,
    pub ttl_unit: TtlUnit,
    pub interfaces: BTreeMap<String, InterfaceSpec>,
    pub groups: Vec<GroupSpec>,
    pub traffic: Option<TrafficSpec>,
    pub router: RouterKind,
}

/// Result of [`parse_scenario`]: the scenario plus non-fatal warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub scenario: Scenario,
    pub warnings: Vec<String>,
}

/// One failed invariant, reported as data by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub field: String,
    pub message: String,
}

impl Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.subject, self.field, self.message)
    }
}

/// Parses a decimal size such as `500k`, `5M` or `1000000`.
pub fn parse_size(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.chars().last() {
        Some('k') | Some('K') => (&s[..s.len() - 1], 1e3),
        Some('M') => (&s[..s.len() - 1], 1e6),
        Some('G') => (&s[..s.len() - 1], 1e9),
        _ => (s, 1.0),
    };
    let v: f64 = digits.trim().parse().map_err(|_| format!("invalid size `{s}`"))?;
    let bytes = v * mult;
    if !bytes.is_finite() || bytes < 0.0 || bytes.fract() != 0.0 {
        return Err(format!("size `{s}` is not a whole non-negative quantity"));
    }
    Ok(bytes as u64)
}

/// Formats bytes with the largest exact decimal suffix (`50M`, `500k`).
pub fn format_size(bytes: u64) -> String {
    for (div, suffix) in [(1_000_000_000, "G"), (1_000_000, "M"), (1_000, "k")] {
        if bytes >= div && bytes.is_multiple_of(div) {
            return format!("{}{}", bytes / div, suffix);
        }
    }
    bytes.to_string()
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("invalid number `{}`", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number `{}`", s.trim()))
    }
}

fn parse_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(str::to_string)
        .collect()
}

fn parse_pair<T>(s: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<(T, T), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => Ok((f(a)?, f(b)?)),
        _ => Err(format!("expected two comma-separated values, got `{}`", s.trim())),
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("invalid boolean `{other}`")),
    }
}

fn parse_router(s: &str) -> Result<RouterKind, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "epidemic" => Ok(RouterKind::Epidemic),
        "snw" | "sprayandwait" | "spray_and_wait" => Ok(RouterKind::default_spray()),
        other => Err(format!("unknown router `{other}` (expected epidemic or snw)")),
    }
}

#[derive(Default)]
struct SprayKeys {
    copies: Option<u32>,
    binary: Option<bool>,
}

/// Parses scenario text. Unknown keys produce warnings; malformed lines and
/// missing mandatory keys are errors.
pub fn parse_scenario(text: &str) -> Result<Parsed, ConfigError> {
    let mut warnings = Vec::new();
    let mut end_time = None;
    let mut world = None;
    let mut name = "scenario".to_string();
    let mut warmup = 0.0;
    let mut time_step = DEFAULT_TIME_STEP;
    let mut seed = DEFAULT_SEED;
    let mut report_interval = DEFAULT_REPORT_INTERVAL;
    let mut map_dir = PathBuf::from(".");
    let mut ttl_unit = TtlUnit::Minutes;
    let mut router = RouterKind::Epidemic;
    let mut spray = SprayKeys::default();
    let mut interfaces: BTreeMap<String, (Option<f64>, Option<f64>, usize)> = BTreeMap::new();
    let mut groups: BTreeMap<usize, (GroupSpec, usize)> = BTreeMap::new();
    let mut traffic: Option<TrafficSpec> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Parse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let err = |message: String| ConfigError::Parse { line, message };

        if let Some(rest) = key.strip_prefix("Group") {
            let Some((num, field)) = rest.split_once('.') else {
                return Err(err(format!("group key `{key}` lacks a field")));
            };
            let n: usize = num
                .parse()
                .ok()
                .filter(|n| *n >= 1)
                .ok_or_else(|| err(format!("invalid group number in `{key}`")))?;
            let (g, _) = groups.entry(n).or_insert_with(|| (GroupSpec::with_defaults(n), line));
            match field {
                "name" => g.name = value.to_string(),
                "count" | "nrofHosts" => {
                    g.count = value.parse().map_err(|_| err(format!("invalid count `{value}`")))?
                }
                "interfaces" => g.interfaces = parse_list(value),
                "okMaps" | "ok_maps" => g.ok_maps = parse_list(value),
                "speed" => (g.speed_min, g.speed_max) = parse_pair(value, parse_f64).map_err(err)?,
                "bufferSize" | "buffer_size" => g.buffer_size = parse_size(value).map_err(err)?,
                "msgTtl" | "msg_ttl" => g.msg_ttl = parse_f64(value).map_err(err)?,
                f if f.starts_with("router.") => {
                    g.router_params
                        .insert(f["router.".len()..].to_string(), value.to_string());
                }
                other => warnings.push(format!("line {line}: unknown group field `{other}` ignored")),
            }
            continue;
        }
        if let Some(rest) = key.strip_prefix("interface.") {
            let Some((iname, field)) = rest.rsplit_once('.') else {
                return Err(err(format!("interface key `{key}` lacks a field")));
            };
            let entry = interfaces.entry(iname.to_string()).or_insert((None, None, line));
            match field {
                "speed" => entry.0 = Some(parse_size(value).map_err(err)? as f64),
                "range" => entry.1 = Some(parse_f64(value).map_err(err)?),
                other => warnings.push(format!("line {line}: unknown interface field `{other}` ignored")),
            }
            continue;
        }
        if let Some(field) = key.strip_prefix("traffic.") {
            let t = traffic.get_or_insert_with(TrafficSpec::default);
            match field {
                "sources" => t.source_groups = parse_list(value),
                "dest" => t.dest_group = value.to_string(),
                "interval" => (t.interval_min, t.interval_max) = parse_pair(value, parse_f64).map_err(err)?,
                "size" => (t.size_min, t.size_max) = parse_pair(value, parse_size).map_err(err)?,
                "prefix" => t.name_prefix = value.to_string(),
                other => warnings.push(format!("line {line}: unknown traffic field `{other}` ignored")),
            }
            continue;
        }
        match key {
            "name" => name = value.to_string(),
            "end_time" => end_time = Some(parse_f64(value).map_err(err)?),
            "world" => world = Some(parse_pair(value, parse_f64).map_err(err)?),
            "warmup" => warmup = parse_f64(value).map_err(err)?,
            "time_step" => time_step = parse_f64(value).map_err(err)?,
            "seed" => seed = value.parse().map_err(|_| err(format!("invalid seed `{value}`")))?,
            "report_interval" => report_interval = parse_f64(value).map_err(err)?,
            "map_dir" => map_dir = PathBuf::from(value),
            "ttl_unit" => {
                ttl_unit = match value {
                    "minutes" => TtlUnit::Minutes,
                    "seconds" => TtlUnit::Seconds,
                    other => return Err(err(format!("ttl_unit must be minutes or seconds, got `{other}`"))),
                }
            }
            "router" => router = parse_router(value).map_err(err)?,
            "snw.copies" => {
                spray.copies = Some(
                    value
                        .parse()
                        .map_err(|_| err(format!("invalid copy count `{value}`")))?,
                )
            }
            "snw.binary" => spray.binary = Some(parse_bool(value).map_err(err)?),
            other => warnings.push(format!("line {line}: unknown key `{other}` ignored")),
        }
    }

    if let RouterKind::SprayAndWait { copies, binary } = &mut router {
        if let Some(c) = spray.copies {
            *copies = c;
        }
        if let Some(b) = spray.binary {
            *binary = b;
        }
    } else if spray.copies.is_some() || spray.binary.is_some() {
        warnings.push("snw.* keys ignored: router is not snw".to_string());
    }

    let end_time = end_time.ok_or(ConfigError::Missing("end_time"))?;
    let (world_width, world_height) = world.ok_or(ConfigError::Missing("world"))?;
    if groups.is_empty() {
        return Err(ConfigError::Missing("Group1"));
    }
    for (expected, (n, (_, line))) in (1..).zip(groups.iter()) {
        if *n != expected {
            return Err(ConfigError::Parse {
                line: *line,
                message: format!("groups must be numbered 1..N without gaps; found Group{n}, expected Group{expected}"),
            });
        }
    }
    let mut ifaces = BTreeMap::new();
    for (iname, (speed, range, line)) in interfaces {
        let (Some(transmit_speed), Some(transmit_range)) = (speed, range) else {
            return Err(ConfigError::Parse {
                line,
                message: format!("interface `{iname}` needs both speed and range"),
            });
        };
        ifaces.insert(
            iname,
            InterfaceSpec {
                transmit_speed,
                transmit_range,
            },
        );
    }

    Ok(Parsed {
        scenario: Scenario {
            name,
            end_time,
            world_width,
            world_height,
            warmup,
            time_step,
            seed,
            report_interval,
            map_dir,
            ttl_unit,
            interfaces: ifaces,
            groups: groups.into_values().map(|(g, _)| g).collect(),
            traffic,
            router,
        },
        warnings,
    })
}

/// Reads and parses a scenario file; a relative `map_dir` is resolved
/// against the file's directory.
pub fn load_scenario(path: &Path) -> Result<Parsed, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut parsed = parse_scenario(&text)?;
    if parsed.scenario.map_dir.is_relative() {
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        parsed.scenario.map_dir = base.join(&parsed.scenario.map_dir);
    }
    Ok(parsed)
}

/// Checks every scenario invariant. Empty iff the scenario is runnable.
pub fn validate(s: &Scenario) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut v = |subject: &str, field: &str, message: String| {
        out.push(Violation {
            subject: subject.to_string(),
            field: field.to_string(),
            message,
        })
    };
    if !(s.end_time > 0.0) {
        v("scenario", "end_time", format!("must be > 0, got {}", s.end_time));
    }
    if !(s.time_step > 0.0) {
        v("scenario", "time_step", format!("must be > 0, got {}", s.time_step));
    }
    if !(s.warmup >= 0.0) {
        v("scenario", "warmup", format!("must be >= 0, got {}", s.warmup));
    }
    if !(s.report_interval > 0.0) {
        v(
            "scenario",
            "report_interval",
            format!("must be > 0, got {}", s.report_interval),
        );
    }
    if !(s.world_width > 0.0 && s.world_height > 0.0) {
        v(
            "scenario",
            "world",
            format!("dimensions must be > 0, got {}x{}", s.world_width, s.world_height),
        );
    }
    if let RouterKind::SprayAndWait { copies, .. } = s.router {
        if copies < 1 {
            v("router", "snw.copies", "must be >= 1".to_string());
        }
    }
    for (name, i) in &s.interfaces {
        let subject = format!("interface {name}");
        if !(i.transmit_speed > 0.0) {
            v(&subject, "speed", format!("must be > 0, got {}", i.transmit_speed));
        }
        if !(i.transmit_range > 0.0) {
            v(&subject, "range", format!("must be > 0, got {}", i.transmit_range));
        }
    }
    if s.groups.is_empty() {
        v("scenario", "groups", "at least one group is required".to_string());
    }
    for (idx, g) in s.groups.iter().enumerate() {
        let subject = format!("Group{} ({})", idx + 1, g.name);
        if s.groups[..idx].iter().any(|o| o.name == g.name) {
            v(&subject, "name", "duplicate group name".to_string());
        }
        if g.count == 0 {
            v(&subject, "count", "must be > 0".to_string());
        }
        if !(g.speed_min >= 0.0) {
            v(&subject, "speed", format!("minimum must be >= 0, got {}", g.speed_min));
        }
        if !(g.speed_min <= g.speed_max) {
            v(
                &subject,
                "speed",
                format!("min {} exceeds max {}", g.speed_min, g.speed_max),
            );
        }
        if g.buffer_size == 0 {
            v(&subject, "bufferSize", "must be > 0".to_string());
        }
        if !(g.msg_ttl > 0.0) {
            v(&subject, "msgTtl", format!("must be > 0, got {}", g.msg_ttl));
        }
        for iface in &g.interfaces {
            if !s.interfaces.contains_key(iface) {
                v(&subject, "interfaces", format!("undeclared interface `{iface}`"));
            }
        }
        if g.ok_maps.is_empty() {
            v(&subject, "okMaps", "at least one map file is required".to_string());
        }
        for m in &g.ok_maps {
            let p = s.map_dir.join(m);
            if !p.is_file() {
                v(&subject, "okMaps", format!("map file {} not found", p.display()));
            }
        }
    }
    if let Some(t) = &s.traffic {
        let known = |n: &str| s.groups.iter().any(|g| g.name == n);
        if t.source_groups.is_empty() {
            v(
                "traffic",
                "sources",
                "at least one source group is required".to_string(),
            );
        }
        for src in &t.source_groups {
            if !known(src) {
                v("traffic", "sources", format!("unknown group `{src}`"));
            }
            if *src == t.dest_group {
                v(
                    "traffic",
                    "sources",
                    format!("group `{src}` is both source and destination"),
                );
            }
        }
        if !known(&t.dest_group) {
            v("traffic", "dest", format!("unknown group `{}`", t.dest_group));
        }
        if !(t.interval_min > 0.0 && t.interval_min <= t.interval_max) {
            v(
                "traffic",
                "interval",
                format!("need 0 < min <= max, got {},{}", t.interval_min, t.interval_max),
            );
        }
        if !(t.size_min > 0 && t.size_min <= t.size_max) {
            v(
                "traffic",
                "size",
                format!("need 0 < min <= max, got {},{}", t.size_min, t.size_max),
            );
        }
    }
    out
}

/// A field that [`expand_sweep`] can vary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepAxis {
    BufferSize(usize),
    Router,
    Seed,
}

impl Scenario {
    pub fn group_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.name == name)
    }

    pub fn total_hosts(&self) -> u32 {
        self.groups.iter().map(|g| g.count).sum()
    }

    /// Node id ranges per group, laid out in group order from 0.
    pub fn layout(&self) -> NodeLayout {
        let mut start = 0u32;
        let ranges = self
            .groups
            .iter()
            .map(|g| {
                let r = start..start + g.count;
                start += g.count;
                r
            })
            .collect();
        NodeLayout { ranges }
    }

    pub fn ttl_seconds(&self, group: usize) -> f64 {
        self.ttl_unit.to_seconds(self.groups[group].msg_ttl)
    }

    /// Resolves a sweep axis name: `router`, `seed`, `Group<N>.bufferSize`
    /// or `<GroupName>.buffer_size`.
    pub fn sweep_axis(&self, axis: &str) -> Result<SweepAxis, ConfigError> {
        match axis {
            "router" => return Ok(SweepAxis::Router),
            "seed" => return Ok(SweepAxis::Seed),
            _ => {}
        }
        let unknown = || ConfigError::UnknownAxis(axis.to_string());
        let (group, field) = axis.split_once('.').ok_or_else(unknown)?;
        if !matches!(field, "bufferSize" | "buffer_size") {
            return Err(unknown());
        }
        let idx = group
            .strip_prefix("Group")
            .and_then(|n| n.parse::<usize>().ok())
            .and_then(|n| n.checked_sub(1))
            .filter(|i| *i < self.groups.len())
            .or_else(|| self.group_index(group))
            .ok_or_else(unknown)?;
        Ok(SweepAxis::BufferSize(idx))
    }

    /// Canonical text form; parses back to an equal scenario.
    pub fn to_scen_string(&self) -> String {
        self.to_string()
    }
}

impl Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "end_time = {}", self.end_time);
        let _ = writeln!(out, "world = {}, {}", self.world_width, self.world_height);
        let _ = writeln!(out, "warmup = {}", self.warmup);
        let _ = writeln!(out, "time_step = {}", self.time_step);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "report_interval = {}", self.report_interval);
        let _ = writeln!(out, "map_dir = {}", self.map_dir.display());
        let unit = match self.ttl_unit {
            TtlUnit::Minutes => "minutes",
            TtlUnit::Seconds => "seconds",
        };
        let _ = writeln!(out, "ttl_unit = {unit}");
        match self.router {
            RouterKind::Epidemic => {
                let _ = writeln!(out, "router = epidemic");
            }
            RouterKind::SprayAndWait { copies, binary } => {
                let _ = writeln!(out, "router = snw\nsnw.copies = {copies}\nsnw.binary = {binary}");
            }
        }
        for (name, i) in &self.interfaces {
            let _ = writeln!(out, "interface.{name}.speed = {}", i.transmit_speed);
            let _ = writeln!(out, "interface.{name}.range = {}", i.transmit_range);
        }
        for (idx, g) in self.groups.iter().enumerate() {
            let n = idx + 1;
            let _ = writeln!(out, "Group{n}.name = {}", g.name);
            let _ = writeln!(out, "Group{n}.count = {}", g.count);
            let _ = writeln!(out, "Group{n}.interfaces = {}", g.interfaces.join(", "));
            let _ = writeln!(out, "Group{n}.okMaps = {}", g.ok_maps.join(", "));
            let _ = writeln!(out, "Group{n}.speed = {}, {}", g.speed_min, g.speed_max);
            let _ = writeln!(out, "Group{n}.bufferSize = {}", g.buffer_size);
            let _ = writeln!(out, "Group{n}.msgTtl = {}", g.msg_ttl);
            for (k, v) in &g.router_params {
                let _ = writeln!(out, "Group{n}.router.{k} = {v}");
            }
        }
        if let Some(t) = &self.traffic {
            let _ = writeln!(out, "traffic.sources = {}", t.source_groups.join(", "));
            let _ = writeln!(out, "traffic.dest = {}", t.dest_group);
            let _ = writeln!(out, "traffic.interval = {}, {}", t.interval_min, t.interval_max);
            let _ = writeln!(out, "traffic.size = {}, {}", t.size_min, t.size_max);
            let _ = writeln!(out, "traffic.prefix = {}", t.name_prefix);
        }
        f.write_str(&out)
    }
}

/// Group-to-node-id mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLayout {
    ranges: Vec<Range<u32>>,
}

impl NodeLayout {
    pub fn range(&self, group: usize) -> Range<u32> {
        self.ranges[group].clone()
    }

    pub fn group_of(&self, node: u32) -> usize {
        self.ranges
            .iter()
            .position(|r| r.contains(&node))
            .expect("node id outside layout")
    }

    pub fn node_count(&self) -> u32 {
        self.ranges.last().map_or(0, |r| r.end)
    }
}

/// One scenario per value of `axis`, otherwise identical to `s`.
pub fn expand_sweep(s: &Scenario, axis: &str, values: &[String]) -> Result<Vec<Scenario>, ConfigError> {
    let resolved = s.sweep_axis(axis)?;
    values
        .iter()
        .map(|value| {
            let bad = |message: String| ConfigError::SweepValue {
                axis: axis.to_string(),
                value: value.clone(),
                message,
            };
            let mut out = s.clone();
            match resolved {
                SweepAxis::BufferSize(g) => out.groups[g].buffer_size = parse_size(value).map_err(bad)?,
                SweepAxis::Seed => out.seed = value.trim().parse().map_err(|_| bad("not an integer".to_string()))?,
                SweepAxis::Router => {
                    let r = parse_router(value).map_err(bad)?;
                    // keep a configured copy count when sweeping back to snw
                    out.router = match (r, s.router) {
                        (RouterKind::SprayAndWait { .. }, prev @ RouterKind::SprayAndWait { .. }) => prev,
                        (r, _) => r,
                    };
                }
            }
            Ok(out)
        })
        .collect()
}
