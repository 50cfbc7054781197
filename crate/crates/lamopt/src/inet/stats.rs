//! Interaction counters. `total` counts rule firings (amb dispatches
//! included); indirections are tracked separately and are not interactions.

use super::rules::StatCategory;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub total: u64,
    pub indirections: u64,
    pub beta: u64,
    pub fan: u64,
    pub oracle: u64,
    pub waiting: u64,
    pub waiting_vs_oracle: u64,
    pub readback: u64,
    pub amb: u64,
    pub erase: u64,
    pub other: u64,
    /// Firings with a bracket or croissant on at least one side. Not part of
    /// the canonical JSON document.
    #[serde(skip)]
    pub oracle_related: u64,
    /// As above, with fans also counted as oracle nodes.
    #[serde(skip)]
    pub oracle_related_with_fan: u64,
}

impl Stats {
    pub fn record(
        &mut self,
        category: StatCategory,
        vs_oracle: bool,
        oracle_related: bool,
        oracle_related_with_fan: bool,
    ) {
        self.total += 1;
        match category {
            StatCategory::Beta => self.beta += 1,
            StatCategory::Fan => self.fan += 1,
            StatCategory::Oracle => self.oracle += 1,
            StatCategory::Waiting => self.waiting += 1,
            StatCategory::Readback => self.readback += 1,
            StatCategory::Amb => self.amb += 1,
            StatCategory::Erase => self.erase += 1,
            StatCategory::Other => self.other += 1,
        }
        if vs_oracle {
            self.waiting_vs_oracle += 1;
        }
        if oracle_related {
            self.oracle_related += 1;
        }
        if oracle_related_with_fan {
            self.oracle_related_with_fan += 1;
        }
    }

    /// Sum of the partitioning categories; equals `total` by construction.
    pub fn category_sum(&self) -> u64 {
        self.beta
            + self.fan
            + self.oracle
            + self.waiting
            + self.readback
            + self.amb
            + self.erase
            + self.other
    }

    /// The stable JSON document:
    /// `{"total":…,"indirections":…,"beta":…,…,"other":…}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_is_stable() {
        let mut s = Stats::default();
        s.record(StatCategory::Beta, false, false, false);
        s.record(StatCategory::Waiting, true, true, true);
        s.indirections = 7;
        assert_eq!(
            s.to_json(),
            "{\"total\":2,\"indirections\":7,\"beta\":1,\"fan\":0,\"oracle\":0,\
             \"waiting\":1,\"waiting_vs_oracle\":1,\"readback\":0,\"amb\":0,\
             \"erase\":0,\"other\":0}"
        );
        assert_eq!(s.category_sum(), s.total);
    }
}
