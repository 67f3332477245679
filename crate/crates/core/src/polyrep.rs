//! Information needs with five textual representations, and evidence
//! extraction turning each representation into an opinion.
//!
//! A [`Topic`] is an abstract information need. Each of its five
//! representations is an [`Observer`] whose opinion about the need is derived
//! from positive and negative evidence found in the representation text.
//!
//! The default [`LexicalExtractor`] counts content tokens as positive evidence
//! and ambiguous tokens (more than one sense in a lexicon) as negative
//! evidence. Anything implementing [`EvidenceExtractor`] can replace it.
//!
//! Topic files are UTF-8 text. Each section starts at column 0 with
//! `Representation <i>:` (`i` in 1..=5) and runs to the next header. A line
//! `Topic: <id>` starts a new topic, so one file can hold a batch:
//!
//! ```text
//! Topic: 001
//! Representation 1: I am looking for information about ...
//! Representation 5: Manipulation, nano spheres, peptides, immobilisation.
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::opinion::{EvidenceCount, Opinion, OpinionError};

pub const REPRESENTATION_COUNT: usize = 5;

const SECTION_PREFIX: &str = "Representation ";
const TOPIC_PREFIX: &str = "Topic:";

#[derive(Debug, Error)]
pub enum PolyrepError {
    #[error("malformed topic `{topic}` (line {line}): {reason}")]
    MalformedTopic { topic: String, line: usize, reason: String },
    #[error("representation index {0} is outside 1..=5")]
    InvalidRepresentation(usize),
    #[error("lexicon `{}` unavailable: {reason}", path.display())]
    LexiconUnavailable { path: PathBuf, reason: String },
    #[error("stopword list `{}` unavailable: {reason}", path.display())]
    StopwordsUnavailable { path: PathBuf, reason: String },
    #[error("extractor config `{}` unreadable: {reason}", path.display())]
    ConfigUnavailable { path: PathBuf, reason: String },
    #[error(transparent)]
    Opinion(#[from] OpinionError),
}

/// Index of a representation, 1 to 5:
/// (1) what the user is looking for, (2) why, (3) background knowledge,
/// (4) ideal answer, (5) keywords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepIndex(u8);

impl RepIndex {
    pub const KEYWORDS: RepIndex = RepIndex(5);

    pub fn new(index: usize) -> Result<Self, PolyrepError> {
        if (1..=REPRESENTATION_COUNT).contains(&index) {
            Ok(RepIndex(index as u8))
        } else {
            Err(PolyrepError::InvalidRepresentation(index))
        }
    }

    pub fn all() -> impl Iterator<Item = RepIndex> {
        (1..=REPRESENTATION_COUNT as u8).map(RepIndex)
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> &'static str {
        match self.0 {
            1 => "looking for",
            2 => "why",
            3 => "background",
            4 => "ideal answer",
            _ => "keywords",
        }
    }
}

impl fmt::Display for RepIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An information need and its five whitespace-normalized representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topic {
    id: String,
    representations: [String; REPRESENTATION_COUNT],
}

impl Topic {
    /// Builds a topic from raw representation texts. Representation 5 must
    /// contain at least one keyword.
    pub fn new(id: impl Into<String>, representations: [&str; REPRESENTATION_COUNT]) -> Result<Self, PolyrepError> {
        let id = normalize_whitespace(&id.into());
        let topic = Topic { representations: representations.map(normalize_whitespace), id };
        if topic.id.is_empty() {
            return Err(PolyrepError::MalformedTopic {
                topic: String::new(),
                line: 0,
                reason: "empty topic id".into(),
            });
        }
        if topic.keywords().is_empty() {
            return Err(PolyrepError::MalformedTopic {
                topic: topic.id.clone(),
                line: 0,
                reason: "Representation 5 holds no keywords".into(),
            });
        }
        Ok(topic)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn representation(&self, index: RepIndex) -> &str {
        &self.representations[index.get() - 1]
    }

    /// Representation 5 split on commas, lowercased, with surrounding
    /// punctuation stripped.
    pub fn keywords(&self) -> Vec<String> {
        split_keywords(self.representation(RepIndex::KEYWORDS))
    }

    /// The observer standing for one representation of this topic.
    pub fn observer(&self, index: RepIndex) -> Observer {
        Observer {
            id: format!("rep{index}@{}", self.id),
            topic: self.id.clone(),
            representation_index: index,
        }
    }

    /// Writes the topic in the sectioned text format.
    pub fn serialize(&self) -> String {
        let mut out = format!("{TOPIC_PREFIX} {}\n", self.id);
        for idx in RepIndex::all() {
            let text = self.representation(idx);
            if text.is_empty() {
                out.push_str(&format!("{SECTION_PREFIX}{idx}:\n"));
            } else {
                out.push_str(&format!("{SECTION_PREFIX}{idx}: {text}\n"));
            }
        }
        out
    }
}

/// A concrete representation of an information need, acting as the owner of
/// an opinion about that need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observer {
    pub id: String,
    pub topic: String,
    pub representation_index: RepIndex,
}

fn normalize_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn split_keywords(text: &str) -> Vec<String> {
    text.split(',')
        .map(|k| {
            k.trim_matches(|c: char| c.is_whitespace() || c.is_ascii_punctuation())
                .to_lowercase()
        })
        .filter(|k| !k.is_empty())
        .collect()
}

/// Lowercased alphanumeric runs.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

enum Line<'a> {
    Topic(&'a str),
    Section(usize, &'a str),
    Text(&'a str),
}

fn classify(line: &str) -> Result<Line<'_>, String> {
    if let Some(rest) = line.strip_prefix(TOPIC_PREFIX) {
        return Ok(Line::Topic(rest.trim()));
    }
    if let Some(rest) = line.strip_prefix(SECTION_PREFIX) {
        if let Some((num, body)) = rest.split_once(':') {
            if !num.is_empty() && num.bytes().all(|b| b.is_ascii_digit()) {
                return match num.parse::<usize>() {
                    Ok(i) if (1..=REPRESENTATION_COUNT).contains(&i) => Ok(Line::Section(i, body)),
                    _ => Err(format!("unknown section `Representation {num}`")),
                };
            }
        }
    }
    Ok(Line::Text(line))
}

struct TopicDraft {
    id: String,
    header_line: usize,
    sections: [Option<String>; REPRESENTATION_COUNT],
    current: Option<usize>,
}

impl TopicDraft {
    fn new(id: String, header_line: usize) -> Self {
        Self { id, header_line, sections: Default::default(), current: None }
    }

    fn malformed(&self, line: usize, reason: impl Into<String>) -> PolyrepError {
        PolyrepError::MalformedTopic { topic: self.id.clone(), line, reason: reason.into() }
    }

    fn finish(self) -> Result<Topic, PolyrepError> {
        if let Some(missing) = self.sections.iter().position(Option::is_none) {
            return Err(self.malformed(
                self.header_line,
                format!("missing section `Representation {}`", missing + 1),
            ));
        }
        let texts = self.sections.each_ref().map(|s| s.as_deref().unwrap_or_default());
        Topic::new(self.id.clone(), texts).map_err(|e| match e {
            PolyrepError::MalformedTopic { reason, .. } => self.malformed(self.header_line, reason),
            other => other,
        })
    }
}

/// Parses every topic in `text`. Topics without a `Topic:` header take
/// `default_id`. Blank input yields no topics.
pub fn parse_topics(text: &str, default_id: &str) -> Result<Vec<Topic>, PolyrepError> {
    let mut topics = Vec::new();
    let mut draft: Option<TopicDraft> = None;

    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let classified = classify(line).map_err(|reason| PolyrepError::MalformedTopic {
            topic: draft.as_ref().map_or_else(|| default_id.to_string(), |d| d.id.clone()),
            line: line_no,
            reason,
        })?;
        match classified {
            Line::Topic(id) => {
                if let Some(done) = draft.take() {
                    topics.push(done.finish()?);
                }
                if id.is_empty() {
                    return Err(PolyrepError::MalformedTopic {
                        topic: String::new(),
                        line: line_no,
                        reason: "empty topic id".into(),
                    });
                }
                draft = Some(TopicDraft::new(id.to_string(), line_no));
            }
            Line::Section(i, body) => {
                let d = draft.get_or_insert_with(|| TopicDraft::new(default_id.to_string(), line_no));
                if d.sections[i - 1].is_some() {
                    return Err(d.malformed(line_no, format!("duplicated section `Representation {i}`")));
                }
                d.sections[i - 1] = Some(body.to_string());
                d.current = Some(i - 1);
            }
            Line::Text(body) => {
                if body.trim().is_empty() {
                    continue;
                }
                match draft.as_mut().and_then(|d| d.current.map(|c| (d, c))) {
                    Some((d, c)) => {
                        let section = d.sections[c].get_or_insert_with(String::new);
                        section.push('\n');
                        section.push_str(body);
                    }
                    None => {
                        return Err(PolyrepError::MalformedTopic {
                            topic: draft.as_ref().map_or_else(|| default_id.to_string(), |d| d.id.clone()),
                            line: line_no,
                            reason: "text outside any `Representation <i>:` section".into(),
                        })
                    }
                }
            }
        }
    }
    if let Some(done) = draft {
        topics.push(done.finish()?);
    }
    Ok(topics)
}

/// Parses text holding exactly one topic.
pub fn parse_topic(text: &str) -> Result<Topic, PolyrepError> {
    let mut topics = parse_topics(text, "topic")?;
    match topics.len() {
        1 => Ok(topics.pop().expect("one topic")),
        0 => Err(PolyrepError::MalformedTopic {
            topic: "topic".into(),
            line: 1,
            reason: "missing section `Representation 1`".into(),
        }),
        n => Err(PolyrepError::MalformedTopic {
            topic: topics[1].id.clone(),
            line: 0,
            reason: format!("expected one topic, found {n}"),
        }),
    }
}

/// Term → number of senses. Terms with more than one sense are ambiguous.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    senses: HashMap<String, u32>,
}

impl Lexicon {
    pub fn from_entries<S: AsRef<str>>(entries: impl IntoIterator<Item = (S, u32)>) -> Self {
        Self {
            senses: entries.into_iter().map(|(t, n)| (t.as_ref().to_lowercase(), n)).collect(),
        }
    }

    /// Parses `term<TAB>sense_count` lines. Blank lines and lines starting
    /// with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut senses = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (term, count) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: expected `term<TAB>sense_count`", n + 1))?;
            let count: u32 = count
                .trim()
                .parse()
                .map_err(|_| format!("line {}: sense count `{}` is not an integer", n + 1, count.trim()))?;
            senses.insert(term.trim().to_lowercase(), count);
        }
        Ok(Self { senses })
    }

    pub fn load(path: &Path) -> Result<Self, PolyrepError> {
        let unavailable = |reason: String| PolyrepError::LexiconUnavailable { path: path.to_path_buf(), reason };
        let text = fs::read_to_string(path).map_err(|e| unavailable(e.to_string()))?;
        Self::parse(&text).map_err(unavailable)
    }

    pub fn senses(&self, term: &str) -> Option<u32> {
        self.senses.get(term).copied()
    }

    pub fn is_ambiguous(&self, term: &str) -> bool {
        self.senses(term).is_some_and(|n| n > 1)
    }
}

/// Terms dropped before counting evidence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn from_terms<S: AsRef<str>>(terms: impl IntoIterator<Item = S>) -> Self {
        Self(terms.into_iter().map(|t| t.as_ref().trim().to_lowercase()).filter(|t| !t.is_empty()).collect())
    }

    pub fn load(path: &Path) -> Result<Self, PolyrepError> {
        let text = fs::read_to_string(path).map_err(|e| PolyrepError::StopwordsUnavailable {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })?;
        Ok(Self::from_terms(text.lines().filter(|l| !l.starts_with('#'))))
    }

    pub fn contains(&self, term: &str) -> bool {
        self.0.contains(term)
    }
}

/// Resource paths for the lexical extractor.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourcePaths {
    pub lexicon: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
}

/// Extractor configuration: default resources plus optional per-representation
/// overrides. Fields set in an override replace the defaults for that
/// representation.
///
/// In TOML form:
///
/// ```toml
/// lexicon = "lexicon.tsv"
/// stopwords = "stopwords.txt"
///
/// [representation.5]
/// stopwords = "keyword-stopwords.txt"
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractorConfig {
    #[serde(flatten)]
    pub defaults: ResourcePaths,
    #[serde(default)]
    pub representation: BTreeMap<String, ResourcePaths>,
}

impl ExtractorConfig {
    pub fn with_lexicon(mut self, path: impl Into<PathBuf>) -> Self {
        self.defaults.lexicon = Some(path.into());
        self
    }

    pub fn with_stopwords(mut self, path: impl Into<PathBuf>) -> Self {
        self.defaults.stopwords = Some(path.into());
        self
    }

    /// Reads a TOML config. Relative resource paths are resolved against the
    /// config file's directory.
    pub fn from_file(path: &Path) -> Result<Self, PolyrepError> {
        let unreadable = |reason: String| PolyrepError::ConfigUnavailable { path: path.to_path_buf(), reason };
        let text = fs::read_to_string(path).map_err(|e| unreadable(e.to_string()))?;
        let mut cfg: ExtractorConfig = toml::from_str(&text).map_err(|e| unreadable(e.to_string()))?;
        for key in cfg.representation.keys() {
            key.parse::<usize>()
                .ok()
                .and_then(|i| RepIndex::new(i).ok())
                .ok_or_else(|| unreadable(format!("unknown representation `{key}`")))?;
        }
        let base = path.parent().unwrap_or(Path::new(""));
        cfg.defaults.resolve_against(base);
        for r in cfg.representation.values_mut() {
            r.resolve_against(base);
        }
        Ok(cfg)
    }

    /// Loads every referenced resource once.
    pub fn load(&self) -> Result<LexicalExtractor, PolyrepError> {
        let defaults = Resources::load(&self.defaults, &Resources::default())?;
        let mut overrides = BTreeMap::new();
        for (key, paths) in &self.representation {
            let idx = key
                .parse::<usize>()
                .map_err(|_| PolyrepError::InvalidRepresentation(0))
                .and_then(RepIndex::new)?;
            overrides.insert(idx, Resources::load(paths, &defaults)?);
        }
        Ok(LexicalExtractor { defaults, overrides })
    }
}

impl ResourcePaths {
    fn resolve_against(&mut self, base: &Path) {
        for p in [&mut self.lexicon, &mut self.stopwords].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Resources {
    lexicon: Arc<Lexicon>,
    stopwords: Arc<Stopwords>,
}

impl Resources {
    fn load(paths: &ResourcePaths, fallback: &Resources) -> Result<Self, PolyrepError> {
        Ok(Self {
            lexicon: match &paths.lexicon {
                Some(p) => Arc::new(Lexicon::load(p)?),
                None => fallback.lexicon.clone(),
            },
            stopwords: match &paths.stopwords {
                Some(p) => Arc::new(Stopwords::load(p)?),
                None => fallback.stopwords.clone(),
            },
        })
    }
}

/// Source of evidence about an information need from one of its
/// representations.
pub trait EvidenceExtractor: Send + Sync {
    fn extract(&self, topic: &Topic, index: RepIndex) -> EvidenceCount;
}

/// Counts content tokens as positive evidence and ambiguous content tokens as
/// negative evidence (one unit each).
#[derive(Debug, Clone, Default)]
pub struct LexicalExtractor {
    defaults: Resources,
    overrides: BTreeMap<RepIndex, Resources>,
}

impl LexicalExtractor {
    pub fn new(lexicon: Lexicon, stopwords: Stopwords) -> Self {
        Self {
            defaults: Resources { lexicon: Arc::new(lexicon), stopwords: Arc::new(stopwords) },
            overrides: BTreeMap::new(),
        }
    }

    fn resources(&self, index: RepIndex) -> &Resources {
        self.overrides.get(&index).unwrap_or(&self.defaults)
    }

    /// Evidence in free text, using the default resources.
    pub fn text_evidence(&self, text: &str) -> EvidenceCount {
        count_tokens(tokenize(text), &self.defaults)
    }
}

fn count_tokens(tokens: impl Iterator<Item = String>, res: &Resources) -> EvidenceCount {
    let (mut positive, mut negative) = (0u32, 0u32);
    for token in tokens.filter(|t| !res.stopwords.contains(t)) {
        positive += 1;
        if res.lexicon.is_ambiguous(&token) {
            negative += 1;
        }
    }
    EvidenceCount::new(positive as f64, negative as f64).expect("counts are non-negative")
}

impl EvidenceExtractor for LexicalExtractor {
    fn extract(&self, topic: &Topic, index: RepIndex) -> EvidenceCount {
        let res = self.resources(index);
        if index == RepIndex::KEYWORDS {
            let keywords = topic.keywords();
            count_tokens(keywords.iter().flat_map(|k| tokenize(k)), res)
        } else {
            count_tokens(tokenize(topic.representation(index)), res)
        }
    }
}

/// Evidence behind one representation of a topic.
pub fn extract_evidence(topic: &Topic, index: RepIndex, extractor: &dyn EvidenceExtractor) -> EvidenceCount {
    extractor.extract(topic, index)
}

/// The opinion a representation holds about its information need. Owner is
/// `rep<i>@<topic-id>`, proposition the topic id.
pub fn representation_opinion(
    topic: &Topic,
    index: RepIndex,
    extractor: &dyn EvidenceExtractor,
    base_rate: f64,
) -> Result<Opinion, PolyrepError> {
    let evidence = extractor.extract(topic, index);
    Ok(Opinion::from_evidence(topic.observer(index).id, topic.id(), evidence, base_rate)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG3: &str = include_str!("../tests/fixtures/topic_001.txt");

    fn rep(i: usize) -> RepIndex {
        RepIndex::new(i).unwrap()
    }

    fn keywords_topic(keywords: &str) -> Topic {
        Topic::new("t", ["", "", "", "", keywords]).unwrap()
    }

    #[test]
    fn parses_sample_topic() {
        let t = parse_topic(FIG3).unwrap();
        assert_eq!(t.id(), "001");
        assert_eq!(t.keywords(), ["manipulation", "nano spheres", "peptides", "immobilisation"]);
        assert!(t.representation(rep(1)).starts_with("I am looking for information about manipulation"));
        assert!(t.representation(rep(2)).ends_with("are interesting."));
    }

    #[test]
    fn missing_section_is_named() {
        let text = "Representation 1: a\nRepresentation 2: b\nRepresentation 3: c\nRepresentation 5: k\n";
        match parse_topic(text) {
            Err(PolyrepError::MalformedTopic { reason, .. }) => assert!(reason.contains("Representation 4"), "{reason}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicated_section_is_named() {
        let text = "Representation 1: a\nRepresentation 1: b\n";
        match parse_topic(text) {
            Err(PolyrepError::MalformedTopic { reason, line, .. }) => {
                assert!(reason.contains("duplicated section `Representation 1`"));
                assert_eq!(line, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn section_order_does_not_matter() {
        let canonical = "Representation 1: a\nRepresentation 2: b\nRepresentation 3: c\nRepresentation 4: d\nRepresentation 5: k1, k2\n";
        let shuffled = "Representation 4: d\nRepresentation 2: b\nRepresentation 5: k1,\n  k2\nRepresentation 1: a\nRepresentation 3:   c\n";
        assert_eq!(parse_topic(canonical).unwrap(), parse_topic(shuffled).unwrap());
    }

    #[test]
    fn rejects_stray_text_and_unknown_sections() {
        assert!(parse_topic("preamble\nRepresentation 1: a\n").is_err());
        assert!(parse_topic("Representation 6: a\n").is_err());
        let empty_keywords = "Representation 1: a\nRepresentation 2: b\nRepresentation 3: c\nRepresentation 4: d\nRepresentation 5: , .\n";
        assert!(parse_topic(empty_keywords).is_err());
    }

    #[test]
    fn batches_and_blank_input() {
        assert!(parse_topics("  \n\n", "x").unwrap().is_empty());
        let two = format!("{FIG3}\nTopic: 002\n{}", FIG3.replace("Topic: 001\n", ""));
        let topics = parse_topics(&two, "x").unwrap();
        assert_eq!(topics.iter().map(Topic::id).collect::<Vec<_>>(), ["001", "002"]);
    }

    #[test]
    fn serialize_round_trip() {
        let t = parse_topic(FIG3).unwrap();
        assert_eq!(parse_topic(&t.serialize()).unwrap(), t);
        let sparse = Topic::new("s", ["", "why", "", "", "k"]).unwrap();
        assert_eq!(parse_topic(&sparse.serialize()).unwrap(), sparse);
    }

    #[test]
    fn health_bill_us() {
        let ex = LexicalExtractor::new(Lexicon::from_entries([("bill", 4)]), Stopwords::default());
        let t = keywords_topic("health bill US");
        let ev = extract_evidence(&t, RepIndex::KEYWORDS, &ex);
        assert_eq!((ev.positive(), ev.negative()), (3.0, 1.0));
        let o = representation_opinion(&t, RepIndex::KEYWORDS, &ex, 0.5).unwrap();
        assert!((o.belief() - 0.5).abs() < 1e-12);
        assert!((o.disbelief() - 1.0 / 6.0).abs() < 1e-12);
        assert!((o.uncertainty() - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(o.owner(), "rep5@t");
        assert_eq!(o.proposition(), "t");
    }

    #[test]
    fn empty_text_gives_no_evidence() {
        let ex = LexicalExtractor::default();
        let t = keywords_topic("k");
        let ev = extract_evidence(&t, rep(1), &ex);
        assert_eq!((ev.positive(), ev.negative()), (0.0, 0.0));
        let o = representation_opinion(&t, rep(1), &ex, 0.5).unwrap();
        assert_eq!(o.components(), (0.0, 0.0, 1.0, 0.5));
    }

    #[test]
    fn keywords_without_lexicon() {
        let ex = LexicalExtractor::default();
        let ev = extract_evidence(&keywords_topic("peptides, immobilisation"), RepIndex::KEYWORDS, &ex);
        assert_eq!((ev.positive(), ev.negative()), (2.0, 0.0));
    }

    #[test]
    fn sample_keywords_opinion() {
        let t = parse_topic(FIG3).unwrap();
        // Independent count: split the keyword field on commas, then on spaces.
        let k = "Manipulation, nano spheres, peptides, immobilisation."
            .split(',')
            .flat_map(|kw| kw.split_whitespace())
            .count() as f64;
        assert_eq!(k, 5.0);
        let o = representation_opinion(&t, RepIndex::KEYWORDS, &LexicalExtractor::default(), 0.5).unwrap();
        assert!((o.belief() - k / (k + 2.0)).abs() < 1e-15);
        assert_eq!(o.disbelief(), 0.0);
    }

    #[test]
    fn stopwords_are_dropped() {
        let ex = LexicalExtractor::new(Lexicon::default(), Stopwords::from_terms(["the", "of"]));
        let ev = ex.text_evidence("The strength of the chain");
        assert_eq!(ev.positive(), 2.0);
    }

    #[test]
    fn lexicon_parsing() {
        let lex = Lexicon::parse("# comment\nbill\t4\nhealth\t1\n\n").unwrap();
        assert!(lex.is_ambiguous("bill"));
        assert!(!lex.is_ambiguous("health"));
        assert!(!lex.is_ambiguous("unknown"));
        assert!(Lexicon::parse("bill 4\n").is_err());
        assert!(Lexicon::parse("bill\tmany\n").is_err());
    }

    #[test]
    fn missing_lexicon_is_reported() {
        let cfg = ExtractorConfig::default().with_lexicon("/nonexistent/lexicon.tsv");
        assert!(matches!(cfg.load(), Err(PolyrepError::LexiconUnavailable { .. })));
        assert!(ExtractorConfig::default().load().is_ok());
    }

    #[test]
    fn representation_override() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("lex.tsv"), "bill\t3\n").unwrap();
        std::fs::write(dir.path().join("stop.txt"), "health\n").unwrap();
        std::fs::write(
            dir.path().join("extractor.toml"),
            "lexicon = \"lex.tsv\"\n[representation.5]\nstopwords = \"stop.txt\"\n",
        )
        .unwrap();
        let ex = ExtractorConfig::from_file(&dir.path().join("extractor.toml")).unwrap().load().unwrap();
        let t = Topic::new("t", ["health bill", "", "", "", "health bill"]).unwrap();
        let r1 = ex.extract(&t, rep(1));
        let r5 = ex.extract(&t, RepIndex::KEYWORDS);
        assert_eq!((r1.positive(), r1.negative()), (2.0, 1.0));
        assert_eq!((r5.positive(), r5.negative()), (1.0, 1.0));
    }

    #[test]
    fn rep_index_bounds() {
        assert!(RepIndex::new(0).is_err());
        assert!(RepIndex::new(6).is_err());
        assert_eq!(RepIndex::all().count(), 5);
    }
}
