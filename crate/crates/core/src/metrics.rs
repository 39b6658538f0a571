//! Run statistics: counters, samples, summaries and CSV reports.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use crate::buffer::MsgId;
use crate::Scalar;

/// Raw counters and samples collected during one run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsAccumulator {
    pub created: u64,
    /// Transfers begun, including ones later aborted.
    pub started: u64,
    /// Transfers completed.
    pub relayed: u64,
    pub aborted: u64,
    /// Unique messages that reached their destination.
    pub delivered: u64,
    /// Evictions plus expiries.
    pub dropped: u64,
    pub evicted: u64,
    pub expired: u64,
    /// Completed transfers the receiver could not store.
    pub rejected: u64,
    pub latency_samples: Vec<f64>,
    pub hop_samples: Vec<u32>,
    pub buffer_time_samples: Vec<f64>,
    pub creation_times: Vec<f64>,
    pub delivery_times: Vec<f64>,
    pub end_time: f64,
    delivered_ids: HashSet<MsgId>,
}

impl MetricsAccumulator {
    pub fn new(end_time: f64) -> Self {
        MetricsAccumulator {
            end_time,
            ..Default::default()
        }
    }

    pub fn record_created(&mut self, at: f64) {
        self.created += 1;
        self.creation_times.push(at);
    }

    pub fn record_started(&mut self) {
        self.started += 1;
    }

    pub fn record_aborted(&mut self) {
        self.aborted += 1;
    }

    pub fn record_relayed(&mut self) {
        self.relayed += 1;
    }

    pub fn record_rejected(&mut self) {
        self.rejected += 1;
    }

    /// Records an arrival at the destination. Only the first arrival of a
    /// message id counts; returns whether this was it.
    pub fn record_arrival(&mut self, id: MsgId, now: f64, created_at: f64, hops: u32) -> bool {
        if !self.delivered_ids.insert(id) {
            return false;
        }
        self.delivered += 1;
        self.latency_samples.push(now - created_at);
        self.hop_samples.push(hops);
        self.delivery_times.push(now);
        true
    }

    pub fn is_delivered(&self, id: MsgId) -> bool {
        self.delivered_ids.contains(&id)
    }

    /// A copy left a buffer by eviction or expiry after `residence` seconds.
    pub fn record_drop(&mut self, residence: f64, expired: bool) {
        self.dropped += 1;
        if expired {
            self.expired += 1;
        } else {
            self.evicted += 1;
        }
        self.buffer_time_samples.push(residence);
    }
}

/// Arithmetic mean; NaN for no samples.
pub fn mean(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        f64::NAN
    } else {
        samples.iter().sum::<f64>() / samples.len() as f64
    }
}

/// Median; mean of the two middle order statistics for even counts, NaN
/// for no samples.
pub fn median<T: Scalar>(samples: &[T]) -> T {
    if samples.is_empty() {
        return T::nan();
    }
    let mut v = samples.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / T::lit(2.0)
    }
}

pub fn delivery_probability(delivered: u64, created: u64) -> f64 {
    if created == 0 {
        0.0
    } else {
        delivered as f64 / created as f64
    }
}

/// Relays spent per delivery beyond the delivering hop; NaN with no deliveries.
pub fn overhead_ratio(relayed: u64, delivered: u64) -> f64 {
    if delivered == 0 {
        f64::NAN
    } else {
        (relayed as f64 - delivered as f64) / delivered as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub created: u64,
    pub started: u64,
    pub relayed: u64,
    pub aborted: u64,
    pub delivered: u64,
    pub dropped: u64,
    pub evicted: u64,
    pub expired: u64,
    pub delivery_prob: f64,
    pub overhead_ratio: f64,
    pub latency_avg: f64,
    pub latency_median: f64,
    pub hopcount_avg: f64,
    pub hopcount_max: u32,
    pub buffertime_avg: f64,
}

pub fn summary(acc: &MetricsAccumulator) -> Summary {
    let hops: Vec<f64> = acc.hop_samples.iter().map(|&h| f64::from(h)).collect();
    Summary {
        created: acc.created,
        started: acc.started,
        relayed: acc.relayed,
        aborted: acc.aborted,
        delivered: acc.delivered,
        dropped: acc.dropped,
        evicted: acc.evicted,
        expired: acc.expired,
        delivery_prob: delivery_probability(acc.delivered, acc.created),
        overhead_ratio: overhead_ratio(acc.relayed, acc.delivered),
        latency_avg: mean(&acc.latency_samples),
        latency_median: median(&acc.latency_samples),
        hopcount_avg: mean(&hops),
        hopcount_max: acc.hop_samples.iter().copied().max().unwrap_or(0),
        buffertime_avg: mean(&acc.buffer_time_samples),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimelineRow {
    pub time: f64,
    pub created: u64,
    pub delivered: u64,
    pub rate: f64,
}

/// Cumulative delivery rate at `0, interval, 2·interval, …` plus a final
/// row at the end time.
pub fn timeseries(acc: &MetricsAccumulator, interval: f64) -> Vec<TimelineRow> {
    assert!(interval > 0.0, "interval must be positive");
    let mut created = acc.creation_times.clone();
    let mut delivered = acc.delivery_times.clone();
    created.sort_by(f64::total_cmp);
    delivered.sort_by(f64::total_cmp);
    let row = |t: f64| {
        let c = created.partition_point(|&x| x <= t) as u64;
        let d = delivered.partition_point(|&x| x <= t) as u64;
        TimelineRow {
            time: t,
            created: c,
            delivered: d,
            rate: delivery_probability(d, c),
        }
    };
    let mut rows = Vec::new();
    let mut k = 0u64;
    loop {
        let t = k as f64 * interval;
        if t >= acc.end_time {
            break;
        }
        rows.push(row(t));
        k += 1;
    }
    rows.push(row(acc.end_time.max(0.0)));
    rows
}

/// Deliveries per hop count.
pub fn hop_histogram(acc: &MetricsAccumulator) -> BTreeMap<u32, u64> {
    let mut h = BTreeMap::new();
    for &hops in &acc.hop_samples {
        *h.entry(hops).or_insert(0) += 1;
    }
    h
}

/// Identifies one run in `summary.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLabel {
    pub scenario: String,
    pub router: String,
    /// Destination-group buffer size in bytes.
    pub buffer: u64,
    pub seed: u64,
}

pub const SUMMARY_HEADER: &str = "scenario,router,buffer,seed,created,started,relayed,aborted,delivered,\
dropped,evicted,expired,delivery_prob,overhead_ratio,latency_avg,latency_median,hopcount_avg,hopcount_max,buffertime_avg";

fn f4(v: f64) -> String {
    format!("{v:.4}")
}

pub fn summary_row(label: &RunLabel, s: &Summary) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        label.scenario,
        label.router,
        label.buffer,
        label.seed,
        s.created,
        s.started,
        s.relayed,
        s.aborted,
        s.delivered,
        s.dropped,
        s.evicted,
        s.expired,
        f4(s.delivery_prob),
        f4(s.overhead_ratio),
        f4(s.latency_avg),
        f4(s.latency_median),
        f4(s.hopcount_avg),
        s.hopcount_max,
        f4(s.buffertime_avg),
    )
}

pub fn summary_csv<'a>(rows: impl IntoIterator<Item = (&'a RunLabel, &'a Summary)>) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for (l, s) in rows {
        out.push_str(&summary_row(l, s));
        out.push('\n');
    }
    out
}

pub fn timeline_csv(rows: &[TimelineRow]) -> String {
    let mut out = String::from("time,created,delivered,delivery_rate\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", f4(r.time), r.created, r.delivered, f4(r.rate));
    }
    out
}

pub fn hops_csv(hist: &BTreeMap<u32, u64>) -> String {
    let mut out = String::from("hops,count\n");
    for (h, c) in hist {
        let _ = writeln!(out, "{h},{c}");
    }
    out
}

/// Parses the rows of a `timeline.csv` back into `(time, rate)` points.
pub fn parse_timeline_csv(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty timeline file")?;
    let cols: Vec<&str> = header.split(',').collect();
    let t_idx = cols.iter().position(|c| *c == "time").ok_or("missing `time` column")?;
    let r_idx = cols
        .iter()
        .position(|c| *c == "delivery_rate")
        .ok_or("missing `delivery_rate` column")?;
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let f: Vec<&str> = l.split(',').collect();
            let get = |idx: usize| -> Result<f64, String> {
                f.get(idx)
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| format!("row {}: bad value", i + 2))
            };
            Ok((get(t_idx)?, get(r_idx)?))
        })
        .collect()
}
