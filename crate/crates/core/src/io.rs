//! Dataset CSV ingestion and serialization.
//!
//! Columns, in order: `id,gender,age,study_year,PH,SEH,BPL,BKL,HB,SSH,SEB,TT,AL,EFL,SCH`.
//! `gender` is `M` or `F`; `age` and `study_year` may be blank.

use std::collections::HashSet;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::DatasetError;
use crate::model::{validate_record, AnthropometricRecord, Gender, Measure, PopulationDataset};

pub const DEMOGRAPHIC_COLUMNS: [&str; 4] = ["id", "gender", "age", "study_year"];

/// Full header row in canonical order.
pub fn header() -> Vec<&'static str> {
    DEMOGRAPHIC_COLUMNS
        .iter()
        .copied()
        .chain(Measure::ALL.iter().map(|m| m.acronym()))
        .collect()
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<PopulationDataset, DatasetError> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(DatasetError::NotFound(path.to_path_buf()));
    }
    let file = File::open(path)?;
    read_dataset(file, path.display().to_string())
}

pub fn read_dataset<R: Read>(reader: R, source: impl Into<String>) -> Result<PopulationDataset, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| -> Result<usize, DatasetError> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| DatasetError::MissingColumn(name.to_string()))
    };
    let id_col = column("id")?;
    let gender_col = column("gender")?;
    let age_col = column("age")?;
    let year_col = column("study_year")?;
    let mut measure_cols = [0usize; 11];
    for m in Measure::ALL {
        measure_cols[m.index()] = column(m.acronym())?;
    }

    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut violations = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let cell = |i: usize| row.get(i).unwrap_or("");
        let row_err = |message: String| DatasetError::Row { line, message };

        let id = cell(id_col).to_string();
        let gender = Gender::from_code(cell(gender_col)).ok_or_else(|| {
            row_err(format!("gender {:?} is not M or F", cell(gender_col)))
        })?;
        let age = parse_optional_int(cell(age_col)).map_err(|_| {
            row_err(format!("age {:?} is not an integer", cell(age_col)))
        })?;
        let study_year = parse_optional_int(cell(year_col)).map_err(|_| {
            row_err(format!("study_year {:?} is not an integer", cell(year_col)))
        })?;
        let mut measures = [0.0; 11];
        for m in Measure::ALL {
            let raw = cell(measure_cols[m.index()]);
            measures[m.index()] = raw
                .parse::<f64>()
                .map_err(|_| row_err(format!("{m} value {raw:?} is not a number")))?;
        }

        let mut record = AnthropometricRecord::new(id, gender, measures);
        record.age = age;
        record.study_year = study_year;
        for v in validate_record(&record) {
            violations.push(format!("line {line}: {v}"));
        }
        if !seen.insert(record.id.clone()) {
            return Err(DatasetError::DuplicateId {
                line,
                id: record.id,
            });
        }
        records.push(record);
    }
    if !violations.is_empty() {
        return Err(DatasetError::Validation { violations });
    }
    PopulationDataset::new(records, source)
        .map_err(|violations| DatasetError::Validation { violations })
}

fn parse_optional_int(s: &str) -> Result<Option<i32>, std::num::ParseIntError> {
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

/// Writes the dataset in the canonical schema; floats use shortest round-trip form.
pub fn write_dataset<W: Write>(d: &PopulationDataset, writer: W) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header())?;
    for r in d.records() {
        let mut row: Vec<String> = vec![
            r.id.clone(),
            r.gender.code().to_string(),
            r.age.map(|a| a.to_string()).unwrap_or_default(),
            r.study_year.map(|y| y.to_string()).unwrap_or_default(),
        ];
        row.extend(r.measures().iter().map(|v| v.to_string()));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_dataset(d: &PopulationDataset, path: impl AsRef<Path>) -> Result<(), DatasetError> {
    let file = File::create(path)?;
    write_dataset(d, file)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "id,gender,age,study_year,PH,SEH,BPL,BKL,HB,SSH,SEB,TT,AL,EFL,SCH\n";

    #[test]
    fn two_row_file_parses() {
        let text = format!(
            "{HEADER}s1,M,21,2,444,235,454,521,350,512,447,156,364,450,511\n\
             s2,F,,,415.1,231.3,447.2,509,366.2,488,422.9,145.1,342.4,406.9,493.6\n"
        );
        let d = read_dataset(text.as_bytes(), "mem").unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.records()[1].gender, Gender::Female);
        assert_eq!(d.records()[1].age, None);
        assert_eq!(d.records()[1].get(Measure::PH), 415.1);
    }

    #[test]
    fn negative_measure_is_validation_error() {
        let text = format!("{HEADER}s1,M,21,2,444,235,454,521,-5,512,447,156,364,450,511\n");
        match read_dataset(text.as_bytes(), "mem").unwrap_err() {
            DatasetError::Validation { violations } => {
                assert_eq!(violations, vec!["line 2: HB must be > 0".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_column_is_named() {
        let text = HEADER.replace(",SCH", "") + "s1,M,21,2,444,235,454,521,350,512,447,156,364,450\n";
        match read_dataset(text.as_bytes(), "mem").unwrap_err() {
            DatasetError::MissingColumn(c) => assert_eq!(c, "SCH"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_cell_reports_line() {
        let text = format!(
            "{HEADER}s1,M,21,2,444,235,454,521,350,512,447,156,364,450,511\n\
             s2,M,21,2,444,235,454,abc,350,512,447,156,364,450,511\n"
        );
        match read_dataset(text.as_bytes(), "mem").unwrap_err() {
            DatasetError::Row { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("BKL"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_not_found() {
        assert!(matches!(
            load_dataset("/definitely/not/here.csv").unwrap_err(),
            DatasetError::NotFound(_)
        ));
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let row = "s1,M,21,2,444,235,454,521,350,512,447,156,364,450,511\n";
        let text = format!("{HEADER}{row}{row}");
        assert!(matches!(
            read_dataset(text.as_bytes(), "mem").unwrap_err(),
            DatasetError::DuplicateId { line: 3, .. }
        ));
    }
}
