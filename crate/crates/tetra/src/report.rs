//! Check reports: named pass/fail flags plus replayable violations.

use crate::ratmat::{Mat, Rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Violations kept per flag; further ones are only counted.
pub const MAX_VIOLATIONS_PER_FLAG: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub flag: String,
    /// Basis indices (one per tensor strand) where the identity fails.
    pub tuple: Vec<usize>,
    pub diff: Vec<Rat>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub flags: BTreeMap<String, bool>,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub omitted: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.flags.values().all(|&v| v)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.get(name).copied()
    }

    pub fn failed_flags(&self) -> Vec<String> {
        self.flags.iter().filter(|(_, &v)| !v).map(|(k, _)| k.clone()).collect()
    }

    /// Records a flag; an existing failure is never overwritten by a pass.
    pub fn set(&mut self, name: &str, ok: bool) {
        let e = self.flags.entry(name.to_string()).or_insert(true);
        *e = *e && ok;
    }

    pub fn violate(&mut self, name: &str, tuple: Vec<usize>, diff: Vec<Rat>) {
        self.set(name, false);
        let kept = self.violations.iter().filter(|v| v.flag == name).count();
        if kept < MAX_VIOLATIONS_PER_FLAG {
            self.violations.push(Violation { flag: name.to_string(), tuple, diff });
        } else {
            *self.omitted.entry(name.to_string()).or_insert(0) += 1;
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Compares two matrices column by column; each differing column is a
    /// violation whose tuple is the column index decoded with `radix`.
    pub fn compare(&mut self, name: &str, lhs: &Mat, rhs: &Mat, radix: &[usize]) -> bool {
        if lhs.shape() != rhs.shape() {
            self.set(name, false);
            self.note(format!("{name}: shape {:?} vs {:?}", lhs.shape(), rhs.shape()));
            return false;
        }
        self.zero(name, &(lhs - rhs), radix)
    }

    /// Each nonzero column of `m` is a violation.
    pub fn zero(&mut self, name: &str, m: &Mat, radix: &[usize]) -> bool {
        if m.is_zero() {
            self.set(name, true);
            return true;
        }
        let t = m.transpose();
        for j in 0..t.rows() {
            if t.row(j).next().is_some() {
                self.violate(name, decode(j, radix), t.row_dense(j));
            }
        }
        false
    }

    /// Merges another report, prefixing its flag names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.flags {
            self.set(&format!("{prefix}{k}"), v);
        }
        for mut v in other.violations {
            v.flag = format!("{prefix}{}", v.flag);
            self.violations.push(v);
        }
        for (k, v) in other.omitted {
            *self.omitted.entry(format!("{prefix}{k}")).or_insert(0) += v;
        }
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Mixed-radix decoding, most significant digit first.
pub fn decode(mut idx: usize, radix: &[usize]) -> Vec<usize> {
    if radix.is_empty() {
        return vec![idx];
    }
    let mut out = vec![0; radix.len()];
    for k in (0..radix.len()).rev() {
        let r = radix[k].max(1);
        out[k] = idx % r;
        idx /= r;
    }
    out
}
