//! VR-experience tabular data: loading, cleaning, summary statistics,
//! encoding and stratified splitting.
//!
//! The expected CSV has a header row naming (case-insensitively) the columns
//! `Age, Gender, VRHeadset, Duration, MotionSickness, ImmersionLevel`. Extra
//! columns such as a user id are ignored. Every cell must be present: rows are
//! never imputed.

pub mod stats;

use std::collections::HashSet;
use std::fmt;
use std::io;
use std::path::Path;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::FeatureMatrix;
pub use stats::ColumnStats;

/// Class label meaning the user could not immerse.
pub const LABEL_NOT_IMMERSED: u8 = 1;
/// Class label meaning the user was well immersed.
pub const LABEL_IMMERSED: u8 = 2;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("input is empty (no header row)")]
    Empty,
    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error("line {line}, column `{column}`: cannot parse {value:?}: {reason}")]
    Parse {
        line: u64,
        column: &'static str,
        value: String,
        reason: String,
    },
    #[error("line {line}, column `{column}`: value {value:?} out of range")]
    OutOfRange {
        line: u64,
        column: &'static str,
        value: String,
    },
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("dataset is empty")]
    NoRecords,
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("class {label} has {count} member(s); stratification needs at least 2")]
    ClassTooSmall { label: u8, count: usize },
}

impl DatasetError {
    /// True for errors caused by malformed content rather than the environment.
    pub fn is_schema(&self) -> bool {
        !matches!(self, DatasetError::Io(_))
            && !matches!(self, DatasetError::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gender {
    Female,
    Male,
    Other,
}

impl Gender {
    pub const ALL: [Gender; 3] = [Gender::Female, Gender::Male, Gender::Other];

    pub fn name(self) -> &'static str {
        match self {
            Gender::Female => "Female",
            Gender::Male => "Male",
            Gender::Other => "Other",
        }
    }

    /// Integer code 1..=3 in alphabetical order of the category name.
    pub fn code(self) -> u8 {
        self as u8 + 1
    }

    pub fn parse(s: &str) -> Option<Self> {
        let key = normalize(s);
        Self::ALL.into_iter().find(|g| normalize(g.name()) == key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Headset {
    HtcVive,
    OculusRift,
    PlayStationVr,
}

impl Headset {
    pub const ALL: [Headset; 3] = [Headset::HtcVive, Headset::OculusRift, Headset::PlayStationVr];

    pub fn name(self) -> &'static str {
        match self {
            Headset::HtcVive => "HTC Vive",
            Headset::OculusRift => "Oculus Rift",
            Headset::PlayStationVr => "PlayStation VR",
        }
    }

    /// Integer code 1..=3 in alphabetical order of the headset name.
    pub fn code(self) -> u8 {
        self as u8 + 1
    }

    pub fn parse(s: &str) -> Option<Self> {
        let key = normalize(s);
        Self::ALL.into_iter().find(|h| normalize(h.name()) == key)
    }
}

/// One participant session.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub age: u32,
    pub gender: Gender,
    pub headset: Headset,
    /// Minutes.
    pub duration: f64,
    /// Score in 1..=10.
    pub motion_sickness: u8,
    /// 1 = unable to immerse, 2 = well immersed.
    pub immersion: u8,
}

impl Record {
    /// Checks the range invariants. Returns the name of the first offending column.
    pub fn check(&self) -> Result<(), Column> {
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(Column::Duration);
        }
        if !(1..=10).contains(&self.motion_sickness) {
            return Err(Column::MotionSickness);
        }
        if self.immersion != LABEL_NOT_IMMERSED && self.immersion != LABEL_IMMERSED {
            return Err(Column::Immersion);
        }
        Ok(())
    }

    /// Encoded feature vector `[age, gender, headset, duration, motion_sickness]`.
    pub fn features(&self) -> [f64; 5] {
        [
            f64::from(self.age),
            f64::from(self.gender.code()),
            f64::from(self.headset.code()),
            self.duration,
            f64::from(self.motion_sickness),
        ]
    }

    fn key(&self) -> (u32, Gender, Headset, u64, u8, u8) {
        (
            self.age,
            self.gender,
            self.headset,
            self.duration.to_bits(),
            self.motion_sickness,
            self.immersion,
        )
    }
}

/// Columns of the schema, in file order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Column {
    Age,
    Gender,
    Headset,
    Duration,
    MotionSickness,
    Immersion,
}

impl Column {
    pub const ALL: [Column; 6] = [
        Column::Age,
        Column::Gender,
        Column::Headset,
        Column::Duration,
        Column::MotionSickness,
        Column::Immersion,
    ];

    /// The five model inputs, in encoded-vector order.
    pub const FEATURES: [Column; 5] = [
        Column::Age,
        Column::Gender,
        Column::Headset,
        Column::Duration,
        Column::MotionSickness,
    ];

    /// Continuous or ordinal columns subject to outlier screening.
    pub const NUMERIC: [Column; 3] = [Column::Age, Column::Duration, Column::MotionSickness];

    pub fn name(self) -> &'static str {
        match self {
            Column::Age => "Age",
            Column::Gender => "Gender",
            Column::Headset => "VRHeadset",
            Column::Duration => "Duration",
            Column::MotionSickness => "MotionSickness",
            Column::Immersion => "ImmersionLevel",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            Column::Age => &["age"],
            Column::Gender => &["gender", "sex"],
            Column::Headset => &["vrheadset", "headset", "vrheadsettype"],
            Column::Duration => &["duration", "durationminutes", "durationmin"],
            Column::MotionSickness => &["motionsickness", "motionsicknessscore"],
            Column::Immersion => &["immersionlevel", "immersion"],
        }
    }

    /// Case-, space- and underscore-insensitive lookup.
    pub fn from_name(name: &str) -> Option<Self> {
        let key = normalize(name);
        Self::ALL
            .into_iter()
            .find(|c| c.aliases().iter().any(|a| *a == key))
    }

    /// Encoded numeric value of this column for a record.
    pub fn value(self, r: &Record) -> f64 {
        match self {
            Column::Age => f64::from(r.age),
            Column::Gender => f64::from(r.gender.code()),
            Column::Headset => f64::from(r.headset.code()),
            Column::Duration => r.duration,
            Column::MotionSickness => f64::from(r.motion_sickness),
            Column::Immersion => f64::from(r.immersion),
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
        .flat_map(char::to_lowercase)
        .collect()
}

/// An ordered collection of records.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Dataset {
    pub records: Vec<Record>,
    pub column_names: Vec<String>,
}

impl Dataset {
    pub fn new(records: Vec<Record>) -> Self {
        Self {
            records,
            column_names: Column::ALL.iter().map(|c| c.name().to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn labels(&self) -> Vec<u8> {
        self.records.iter().map(|r| r.immersion).collect()
    }

    fn with_records(&self, records: Vec<Record>) -> Self {
        Self {
            records,
            column_names: self.column_names.clone(),
        }
    }

    fn select(&self, indices: &[usize]) -> Self {
        self.with_records(indices.iter().map(|&i| self.records[i]).collect())
    }
}

/// Reads a dataset from a CSV file.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset, DatasetError> {
    let file = std::fs::File::open(path)?;
    read_csv(file)
}

/// Reads a dataset from any CSV source.
pub fn read_csv<R: io::Read>(reader: R) -> Result<Dataset, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(DatasetError::Empty);
    }

    let mut positions = [usize::MAX; 6];
    for (i, h) in headers.iter().enumerate() {
        match Column::from_name(h) {
            Some(c) => {
                let slot = &mut positions[c as usize];
                if *slot == usize::MAX {
                    *slot = i;
                }
            }
            None => log::warn!("ignoring extra column `{h}`"),
        }
    }
    for c in Column::ALL {
        if positions[c as usize] == usize::MAX {
            return Err(DatasetError::MissingColumn(c.name()));
        }
    }

    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let cell = |c: Column| row.get(positions[c as usize]).unwrap_or("");
        let record = Record {
            age: parse_integer(cell(Column::Age), line, Column::Age)?,
            gender: Gender::parse(cell(Column::Gender))
                .ok_or_else(|| unknown_category(line, Column::Gender, cell(Column::Gender)))?,
            headset: Headset::parse(cell(Column::Headset))
                .ok_or_else(|| unknown_category(line, Column::Headset, cell(Column::Headset)))?,
            duration: parse_real(cell(Column::Duration), line, Column::Duration)?,
            motion_sickness: parse_integer(cell(Column::MotionSickness), line, Column::MotionSickness)?,
            immersion: parse_integer(cell(Column::Immersion), line, Column::Immersion)?,
        };
        if let Err(col) = record.check() {
            return Err(DatasetError::OutOfRange {
                line,
                column: col.name(),
                value: cell(col).to_string(),
            });
        }
        records.push(record);
    }

    Ok(Dataset {
        records,
        column_names: headers.iter().map(str::to_string).collect(),
    })
}

fn unknown_category(line: u64, column: Column, value: &str) -> DatasetError {
    DatasetError::Parse {
        line,
        column: column.name(),
        value: value.to_string(),
        reason: "unknown category".into(),
    }
}

fn parse_real(s: &str, line: u64, column: Column) -> Result<f64, DatasetError> {
    let err = |reason: &str| DatasetError::Parse {
        line,
        column: column.name(),
        value: s.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("missing value"));
    }
    let v: f64 = s.parse().map_err(|_| err("not a number"))?;
    if !v.is_finite() {
        return Err(err("not finite"));
    }
    Ok(v)
}

fn parse_integer<T: TryFrom<i64>>(s: &str, line: u64, column: Column) -> Result<T, DatasetError> {
    let v = parse_real(s, line, column)?;
    if v.fract() != 0.0 {
        return Err(DatasetError::Parse {
            line,
            column: column.name(),
            value: s.to_string(),
            reason: "expected an integer".into(),
        });
    }
    let out_of_range = || DatasetError::OutOfRange {
        line,
        column: column.name(),
        value: s.to_string(),
    };
    if v.abs() > 1e15 {
        return Err(out_of_range());
    }
    T::try_from(v as i64).map_err(|_| out_of_range())
}

/// Writes records with the canonical header.
pub fn write_csv<W: io::Write>(d: &Dataset, writer: W) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(Column::ALL.iter().map(|c| c.name()))?;
    for r in &d.records {
        w.write_record([
            r.age.to_string(),
            r.gender.name().to_string(),
            r.headset.name().to_string(),
            r.duration.to_string(),
            r.motion_sickness.to_string(),
            r.immersion.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Drops exact full-row duplicates, keeping first occurrences in order.
pub fn deduplicate(d: &Dataset) -> Dataset {
    let mut seen = HashSet::with_capacity(d.len());
    d.with_records(
        d.records
            .iter()
            .filter(|r| seen.insert(r.key()))
            .copied()
            .collect(),
    )
}

/// Per-column `(mean, std)` thresholds used by [`remove_outliers_3sigma`].
pub fn sigma_thresholds(d: &Dataset, columns: &[Column]) -> Vec<(Column, f64, f64)> {
    columns
        .iter()
        .map(|&c| {
            let values: Vec<f64> = d.records.iter().map(|r| c.value(r)).collect();
            let m = stats::mean(&values).unwrap_or(0.0);
            let s = stats::sample_std(&values).unwrap_or(0.0);
            (c, m, s)
        })
        .collect()
}

/// Single-pass 3-sigma filter: thresholds come from the input and are not recomputed.
///
/// A row is dropped when any listed column deviates from its mean by more than
/// three (sample) standard deviations. Zero-variance columns drop nothing.
pub fn remove_outliers_3sigma(d: &Dataset, columns: &[Column]) -> Dataset {
    let thresholds = sigma_thresholds(d, columns);
    d.with_records(
        d.records
            .iter()
            .filter(|r| {
                thresholds
                    .iter()
                    .all(|&(c, m, s)| s == 0.0 || (c.value(r) - m).abs() <= 3.0 * s)
            })
            .copied()
            .collect(),
    )
}

/// Summary statistics for every column (categoricals use their integer codes).
pub fn describe(d: &Dataset) -> Result<IndexMap<String, ColumnStats>, DatasetError> {
    if d.is_empty() {
        return Err(DatasetError::NoRecords);
    }
    let mut out = IndexMap::new();
    for c in Column::ALL {
        let values: Vec<f64> = d.records.iter().map(|r| c.value(r)).collect();
        let s = ColumnStats::from_values(&values).expect("non-empty column");
        out.insert(c.name().to_string(), s);
    }
    Ok(out)
}

/// `describe` output as JSON with six significant digits per statistic.
pub fn describe_json(d: &Dataset) -> Result<String, DatasetError> {
    let rounded: IndexMap<String, ColumnStats> = describe(d)?
        .into_iter()
        .map(|(k, v)| (k, v.rounded(6)))
        .collect();
    Ok(serde_json::to_string_pretty(&rounded).expect("stats serialize"))
}

/// Feature matrix (see [`Record::features`]) and label vector.
pub fn encode(d: &Dataset) -> (FeatureMatrix, Vec<u8>) {
    let mut x = FeatureMatrix::empty(Column::FEATURES.len());
    for r in &d.records {
        x.push_row(&r.features());
    }
    (x, d.labels())
}

/// Names of the encoded feature columns.
pub fn feature_names() -> Vec<&'static str> {
    Column::FEATURES.iter().map(|c| c.name()).collect()
}

/// Stratified partition of row indices.
///
/// The training side receives `round(fraction * n)` rows in total, apportioned
/// across the classes by largest remainder, so each class contributes
/// `floor` or `ceil` of `fraction * class_count` (remainder ties go to the
/// lower label). Each class is shuffled with `rng` (class 1 first, then
/// class 2). Both returned index lists are sorted ascending, so the original
/// row order is kept inside each partition.
pub fn stratified_indices<R: rand::Rng>(
    labels: &[u8],
    train_fraction: f64,
    rng: &mut R,
) -> Result<(Vec<usize>, Vec<usize>), DatasetError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DatasetError::InvalidFraction(train_fraction));
    }
    let classes = [LABEL_NOT_IMMERSED, LABEL_IMMERSED];
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(2);
    for label in classes {
        let m: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label).collect();
        if m.len() < 2 {
            return Err(DatasetError::ClassTooSmall {
                label,
                count: m.len(),
            });
        }
        members.push(m);
    }

    let total: usize = members.iter().map(Vec::len).sum();
    let target = (train_fraction * total as f64).round() as usize;
    let quotas: Vec<f64> = members.iter().map(|m| train_fraction * m.len() as f64).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| (quotas[b] - quotas[b].floor()).total_cmp(&(quotas[a] - quotas[a].floor())));
    let mut missing = target.saturating_sub(counts.iter().sum());
    for &c in order.iter().cycle().take(2 * classes.len()) {
        if missing == 0 {
            break;
        }
        if counts[c] < members[c].len() {
            counts[c] += 1;
            missing -= 1;
        }
    }

    let mut train = Vec::new();
    let mut test = Vec::new();
    for (m, n_train) in members.iter_mut().zip(counts) {
        m.shuffle(rng);
        train.extend_from_slice(&m[..n_train]);
        test.extend_from_slice(&m[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Seeded stratified train/test split of a dataset.
pub fn stratified_split(
    d: &Dataset,
    train_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset), DatasetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (train, test) = stratified_indices(&d.labels(), train_fraction, &mut rng)?;
    Ok((d.select(&train), d.select(&test)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(age: u32, g: Gender, h: Headset, dur: f64, ms: u8, im: u8) -> Record {
        Record {
            age,
            gender: g,
            headset: h,
            duration: dur,
            motion_sickness: ms,
            immersion: im,
        }
    }

    const HEADER: &str = "Age,Gender,VRHeadset,Duration,MotionSickness,ImmersionLevel\n";

    #[test]
    fn parses_table_row() {
        let d = read_csv(format!("{HEADER}40,Male,HTC Vive,13.59,8,2\n").as_bytes()).unwrap();
        assert_eq!(
            d.records,
            vec![rec(40, Gender::Male, Headset::HtcVive, 13.59, 8, 2)]
        );
    }

    #[test]
    fn header_only_is_empty_dataset() {
        let d = read_csv(HEADER.as_bytes()).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn empty_input_is_distinct_error() {
        assert!(matches!(read_csv("".as_bytes()), Err(DatasetError::Empty)));
    }

    #[test]
    fn motion_sickness_range() {
        let err = read_csv(format!("{HEADER}40,Male,HTC Vive,13.59,11,2\n").as_bytes()).unwrap_err();
        match err {
            DatasetError::OutOfRange { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, "MotionSickness");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn missing_column_named() {
        let err = read_csv("Age,Gender,VRHeadset,Duration,ImmersionLevel\n".as_bytes()).unwrap_err();
        assert!(matches!(err, DatasetError::MissingColumn("MotionSickness")));
    }

    #[test]
    fn header_case_and_extra_columns() {
        let csv = "UserID,age,GENDER,VR Headset,duration,Motion_Sickness,immersionlevel\n7,27,Male,PlayStation VR,16.54,4,2\n";
        let d = read_csv(csv.as_bytes()).unwrap();
        assert_eq!(
            d.records[0],
            rec(27, Gender::Male, Headset::PlayStationVr, 16.54, 4, 2)
        );
    }

    #[test]
    fn bad_cells() {
        let missing = read_csv(format!("{HEADER}40,Male,HTC Vive,,8,2\n").as_bytes()).unwrap_err();
        assert!(matches!(missing, DatasetError::Parse { column: "Duration", .. }));
        let category = read_csv(format!("{HEADER}40,Robot,HTC Vive,3,8,2\n").as_bytes()).unwrap_err();
        assert!(matches!(category, DatasetError::Parse { column: "Gender", ref value, .. } if value == "Robot"));
        let label = read_csv(format!("{HEADER}40,Male,HTC Vive,3,8,3\n").as_bytes()).unwrap_err();
        assert!(matches!(label, DatasetError::OutOfRange { column: "ImmersionLevel", .. }));
        let locale = read_csv(format!("{HEADER}40,Male,HTC Vive,\"13,59\",8,2\n").as_bytes()).unwrap_err();
        assert!(matches!(locale, DatasetError::Parse { column: "Duration", .. }));
    }

    #[test]
    fn dedupe_keeps_first() {
        let r1 = rec(40, Gender::Male, Headset::HtcVive, 13.59, 8, 2);
        let r2 = rec(43, Gender::Female, Headset::HtcVive, 19.95, 2, 2);
        let d = Dataset::new(vec![r1, r2, r1]);
        assert_eq!(deduplicate(&d).records, vec![r1, r2]);
        let distinct = Dataset::new(vec![r1, r2]);
        assert_eq!(deduplicate(&distinct), distinct);
    }

    fn with_durations(values: &[f64]) -> Dataset {
        Dataset::new(
            values
                .iter()
                .map(|&v| rec(30, Gender::Male, Headset::HtcVive, v, 5, 1))
                .collect(),
        )
    }

    #[test]
    fn three_sigma() {
        let flat = with_durations(&[5.0, 5.0, 5.0, 5.0]);
        assert_eq!(remove_outliers_3sigma(&flat, &[Column::Duration]), flat);

        // mean = 1055/11 = 95.909..., sample sd = 298.57..., |1000 - mean| = 904.09 > 895.7
        let mut values: Vec<f64> = (1..=10).map(f64::from).collect();
        values.push(1000.0);
        let d = with_durations(&values);
        let out = remove_outliers_3sigma(&d, &[Column::Duration]);
        assert_eq!(out.len(), 10);
        assert!(out.records.iter().all(|r| r.duration <= 10.0));

        let tame = with_durations(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(remove_outliers_3sigma(&tame, &[Column::Duration]), tame);
    }

    #[test]
    fn encoding_order() {
        let r = rec(43, Gender::Female, Headset::HtcVive, 19.95, 2, 2);
        assert_eq!(r.features(), [43.0, 1.0, 1.0, 19.95, 2.0]);
        let r = rec(46, Gender::Other, Headset::OculusRift, 28.28, 7, 2);
        assert_eq!(r.features(), [46.0, 3.0, 2.0, 28.28, 7.0]);
        let a = rec(30, Gender::Male, Headset::PlayStationVr, 10.0, 1, 1).features();
        let b = rec(30, Gender::Other, Headset::PlayStationVr, 10.0, 1, 1).features();
        let diffs: Vec<usize> = (0..5).filter(|&i| a[i] != b[i]).collect();
        assert_eq!(diffs, vec![1]);
        assert_eq!((a[1], b[1]), (2.0, 3.0));
        assert_eq!(a[2], 3.0);
    }

    #[test]
    fn describe_requires_rows() {
        assert!(matches!(describe(&Dataset::default()), Err(DatasetError::NoRecords)));
    }

    fn labelled(n1: usize, n2: usize) -> Dataset {
        let mut v = Vec::new();
        for i in 0..n1 {
            v.push(rec(20 + (i % 40) as u32, Gender::Male, Headset::HtcVive, 1.0 + i as f64, 3, 1));
        }
        for i in 0..n2 {
            v.push(rec(20 + (i % 40) as u32, Gender::Female, Headset::OculusRift, 1.0 + i as f64, 3, 2));
        }
        Dataset::new(v)
    }

    #[test]
    fn split_counts() {
        let d = labelled(400, 600);
        let (train, test) = stratified_split(&d, 0.7, 11).unwrap();
        assert_eq!(train.len(), 700);
        assert_eq!(test.len(), 300);
        assert_eq!(train.records.iter().filter(|r| r.immersion == 1).count(), 280);
        assert_eq!(train.records.iter().filter(|r| r.immersion == 2).count(), 420);

        let (a, b) = stratified_split(&labelled(5, 5), 0.5, 3).unwrap();
        assert_eq!((a.len(), b.len()), (5, 5));
        assert_eq!(a.records.iter().filter(|r| r.immersion == 1).count(), 3);
        assert_eq!(a.records.iter().filter(|r| r.immersion == 2).count(), 2);
    }

    #[test]
    fn split_deterministic_and_errors() {
        let d = labelled(30, 20);
        assert_eq!(stratified_split(&d, 0.7, 5).unwrap(), stratified_split(&d, 0.7, 5).unwrap());
        assert!(matches!(
            stratified_split(&labelled(1, 10), 0.7, 5),
            Err(DatasetError::ClassTooSmall { label: 1, count: 1 })
        ));
        assert!(matches!(stratified_split(&d, 1.0, 5), Err(DatasetError::InvalidFraction(_))));
    }
}
