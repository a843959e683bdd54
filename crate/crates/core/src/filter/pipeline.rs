use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use super::rules::{check, normalize_nfkc};
use super::{DedupSet, FilterConfig, FilterDecision, Rule};
use crate::error::{Error, Result};
use crate::segment::Bisegment;

/// The enabled pipeline rules, in evaluation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rule>", into = "Vec<Rule>")]
pub struct RuleOrder(Vec<Rule>);

impl RuleOrder {
    pub fn new(rules: Vec<Rule>) -> Result<Self> {
        for (i, r) in rules.iter().enumerate() {
            if *r == Rule::Ocr {
                return Err(Error::UnknownRule(String::from("ocr")));
            }
            if rules[..i].contains(r) {
                return Err(Error::DuplicateRule(*r));
            }
        }
        Ok(RuleOrder(rules))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.0
    }

    pub fn contains(&self, rule: Rule) -> bool {
        self.0.contains(&rule)
    }
}

impl Default for RuleOrder {
    /// length, ratio, brackets, symbols, dedup.
    fn default() -> Self {
        RuleOrder(alloc::vec![
            Rule::Length,
            Rule::Ratio,
            Rule::Brackets,
            Rule::Symbols,
            Rule::Dedup,
        ])
    }
}

impl TryFrom<Vec<Rule>> for RuleOrder {
    type Error = Error;

    fn try_from(value: Vec<Rule>) -> Result<Self> {
        RuleOrder::new(value)
    }
}

impl From<RuleOrder> for Vec<Rule> {
    fn from(value: RuleOrder) -> Self {
        value.0
    }
}

impl FromStr for RuleOrder {
    type Err = Error;

    /// Comma-separated rule names, e.g. `length,ratio,dedup`.
    fn from_str(s: &str) -> Result<Self> {
        let rules = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(Rule::from_str)
            .collect::<Result<Vec<_>>>()?;
        RuleOrder::new(rules)
    }
}

impl fmt::Display for RuleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(r.name())?;
        }
        Ok(())
    }
}

/// Aggregate accounting of a pipeline run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterReport {
    pub input: u64,
    pub kept: u64,
    rejected: [u64; Rule::PIPELINE.len()],
    enabled: [bool; Rule::PIPELINE.len()],
}

impl FilterReport {
    pub fn new(order: &RuleOrder) -> Self {
        let mut enabled = [false; Rule::PIPELINE.len()];
        for r in order.rules() {
            enabled[r.index()] = true;
        }
        FilterReport {
            input: 0,
            kept: 0,
            rejected: [0; Rule::PIPELINE.len()],
            enabled,
        }
    }

    pub fn rejected(&self, rule: Rule) -> u64 {
        self.rejected.get(rule.index()).copied().unwrap_or(0)
    }

    pub fn total_rejected(&self) -> u64 {
        self.rejected.iter().sum()
    }

    /// Enabled rules with their rejection counts, in canonical rule order.
    pub fn per_rule(&self) -> impl Iterator<Item = (Rule, u64)> + '_ {
        Rule::PIPELINE
            .iter()
            .filter(|r| self.enabled[r.index()])
            .map(|r| (*r, self.rejected[r.index()]))
    }

    /// kept / input, with 0/0 defined as 1.
    pub fn retention(&self) -> f64 {
        if self.input == 0 {
            1.0
        } else {
            self.kept as f64 / self.input as f64
        }
    }

    fn record(&mut self, decision: &FilterDecision) {
        self.input += 1;
        match decision.rule() {
            None => self.kept += 1,
            Some(rule) => self.rejected[rule.index()] += 1,
        }
    }
}

struct RejectedCounts<'a>(&'a FilterReport);

impl Serialize for RejectedCounts<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for (rule, count) in self.0.per_rule() {
            map.serialize_entry(rule.name(), &count)?;
        }
        map.end()
    }
}

impl Serialize for FilterReport {
    /// `{input, kept, retention, rejected: {rule: count}}` in that key order.
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FilterReport", 4)?;
        s.serialize_field("input", &self.input)?;
        s.serialize_field("kept", &self.kept)?;
        s.serialize_field("retention", &self.retention())?;
        s.serialize_field("rejected", &RejectedCounts(self))?;
        s.end()
    }
}

/// Result of the pure rules for one bisegment, split around the dedup
/// position so that the stateful stage can be applied afterwards in input
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Screening {
    before_dedup: Option<FilterDecision>,
    after_dedup: Option<FilterDecision>,
}

/// Ordered filter pipeline with first-rejecting-rule attribution.
///
/// [`Pipeline::screen`] only reads `&self` and can run on many bisegments
/// in parallel; [`Pipeline::admit`] must then be called in input order.
#[derive(Debug, Clone)]
pub struct Pipeline {
    config: FilterConfig,
    order: RuleOrder,
    dedup_at: Option<usize>,
    seen: DedupSet,
    report: FilterReport,
}

impl Pipeline {
    pub fn new(config: FilterConfig, order: RuleOrder) -> Result<Self> {
        config.validate()?;
        let dedup_at = order.rules().iter().position(|r| *r == Rule::Dedup);
        let report = FilterReport::new(&order);
        Ok(Pipeline {
            config,
            order,
            dedup_at,
            seen: DedupSet::new(),
            report,
        })
    }

    pub fn config(&self) -> &FilterConfig {
        &self.config
    }

    pub fn order(&self) -> &RuleOrder {
        &self.order
    }

    /// Applies the optional normalization pre-stage.
    pub fn prepare(&self, bi: Bisegment) -> Bisegment {
        if self.config.nfkc {
            normalize_nfkc(bi)
        } else {
            bi
        }
    }

    fn first_reject(&self, rules: &[Rule], bi: &Bisegment) -> Option<FilterDecision> {
        rules
            .iter()
            .map(|r| check(*r, bi, &self.config))
            .find(|d| !d.is_keep())
    }

    pub fn screen(&self, bi: &Bisegment) -> Screening {
        let rules = self.order.rules();
        match self.dedup_at {
            Some(at) => {
                let before_dedup = self.first_reject(&rules[..at], bi);
                let after_dedup = if before_dedup.is_some() {
                    None
                } else {
                    self.first_reject(&rules[at + 1..], bi)
                };
                Screening {
                    before_dedup,
                    after_dedup,
                }
            }
            None => Screening {
                before_dedup: self.first_reject(rules, bi),
                after_dedup: None,
            },
        }
    }

    /// Applies dedup (when enabled) and records the decision.
    pub fn admit(&mut self, bi: &Bisegment, screening: Screening) -> FilterDecision {
        let decision = if let Some(d) = screening.before_dedup {
            d
        } else if self.dedup_at.is_some() && !self.seen.insert(bi) {
            FilterDecision::reject(Rule::Dedup, "repeated pair")
        } else if let Some(d) = screening.after_dedup {
            d
        } else {
            FilterDecision::Keep
        };
        self.report.record(&decision);
        decision
    }

    pub fn process(&mut self, bi: &Bisegment) -> FilterDecision {
        let screening = self.screen(bi);
        self.admit(bi, screening)
    }

    /// Lazily filters `input`, yielding kept bisegments in input order.
    pub fn filter<I: IntoIterator<Item = Bisegment>>(&mut self, input: I) -> Filtered<'_, I::IntoIter> {
        Filtered {
            pipeline: self,
            inner: input.into_iter(),
        }
    }

    pub fn report(&self) -> &FilterReport {
        &self.report
    }

    pub fn into_report(self) -> FilterReport {
        self.report
    }
}

pub struct Filtered<'a, I> {
    pipeline: &'a mut Pipeline,
    inner: I,
}

impl<I: Iterator<Item = Bisegment>> Iterator for Filtered<'_, I> {
    type Item = Bisegment;

    fn next(&mut self) -> Option<Bisegment> {
        for bi in self.inner.by_ref() {
            let bi = self.pipeline.prepare(bi);
            if self.pipeline.process(&bi).is_keep() {
                return Some(bi);
            }
        }
        None
    }
}

/// Runs the whole pipeline sequentially and collects the kept bisegments.
pub fn run_pipeline<I: IntoIterator<Item = Bisegment>>(
    input: I,
    config: &FilterConfig,
    order: &RuleOrder,
) -> Result<(Vec<Bisegment>, FilterReport)> {
    let mut pipeline = Pipeline::new(config.clone(), order.clone())?;
    let kept = pipeline.filter(input).collect();
    Ok((kept, pipeline.into_report()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::{Lang, Segment};
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use alloc::vec;

    fn bi(src: &str, tgt: &str) -> Bisegment {
        Bisegment::new(
            Segment::new(src, Lang::new("ja").unwrap()),
            Segment::new(tgt, Lang::new("fr").unwrap()),
            Arc::from("t"),
            1,
        )
        .unwrap()
    }

    #[test]
    fn empty_stream_has_full_retention() {
        let (kept, report) = run_pipeline(Vec::new(), &FilterConfig::default(), &RuleOrder::default()).unwrap();
        assert!(kept.is_empty());
        assert_eq!(report.retention(), 1.0);
    }

    #[test]
    fn rule_order_parsing() {
        let o: RuleOrder = "length, ratio,dedup".parse().unwrap();
        assert_eq!(o.rules(), &[Rule::Length, Rule::Ratio, Rule::Dedup]);
        assert_eq!(o.to_string(), "length,ratio,dedup");
        assert_eq!("length,length".parse::<RuleOrder>(), Err(Error::DuplicateRule(Rule::Length)));
        assert!(matches!("length,bogus".parse::<RuleOrder>(), Err(Error::UnknownRule(_))));
        assert!(matches!("ocr".parse::<RuleOrder>(), Err(Error::UnknownRule(_))));
    }

    #[test]
    fn first_rejecting_rule_is_charged() {
        // violates both length (empty target) and ratio
        let input = vec![bi("abc", "")];
        let (_, r) = run_pipeline(input.clone(), &FilterConfig::default(), &RuleOrder::default()).unwrap();
        assert_eq!(r.rejected(Rule::Length), 1);
        let order: RuleOrder = "ratio,length,brackets,symbols,dedup".parse().unwrap();
        let (_, r) = run_pipeline(input, &FilterConfig::default(), &order).unwrap();
        assert_eq!(r.rejected(Rule::Ratio), 1);
        assert_eq!(r.rejected(Rule::Length), 0);
    }

    #[test]
    fn dedup_first_sees_rejected_copies() {
        let input = vec![bi("a (", "x"), bi("a (", "x")];
        let order: RuleOrder = "dedup,brackets".parse().unwrap();
        let (kept, r) = run_pipeline(input, &FilterConfig::default(), &order).unwrap();
        assert!(kept.is_empty());
        assert_eq!(r.rejected(Rule::Brackets), 1);
        assert_eq!(r.rejected(Rule::Dedup), 1);
    }

    #[test]
    fn report_json_shape() {
        let (_, r) = run_pipeline(vec![bi("a", "b"), bi("a", "b")], &FilterConfig::default(), &RuleOrder::default()).unwrap();
        let names: Vec<_> = r.per_rule().map(|(rule, _)| rule.to_string()).collect();
        assert_eq!(names, ["length", "ratio", "brackets", "symbols", "dedup"]);
        assert_eq!(r.rejected(Rule::Dedup), 1);
        assert_eq!(r.retention(), 0.5);
    }
}
