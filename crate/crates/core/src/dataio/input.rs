use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl ColumnRef {
    /// Digits select by 0-based index, anything else by header name.
    pub fn parse(text: &str) -> ColumnRef {
        match text.parse::<usize>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(text.to_string()),
        }
    }
}

/// Where and how to read one numeric column. `value_column = None` picks the
/// last column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSpec {
    pub path: PathBuf,
    pub value_column: Option<ColumnRef>,
    pub header: bool,
    pub delimiter: u8,
}

impl CsvSpec {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            value_column: None,
            header: true,
            delimiter: b',',
        }
    }

    pub fn column(mut self, column: ColumnRef) -> Self {
        self.value_column = Some(column);
        self
    }

    pub fn header(mut self, header: bool) -> Self {
        self.header = header;
        self
    }

    pub fn delimiter(mut self, delimiter: u8) -> Self {
        self.delimiter = delimiter;
        self
    }
}

/// Reads the selected column in row order. Other columns, dates included,
/// are ignored.
pub fn read_series(spec: &CsvSpec) -> Result<TimeSeries> {
    if !spec.path.is_file() {
        return Err(Error::FileNotFound(spec.path.clone()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(spec.header)
        .delimiter(spec.delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(&spec.path)?;

    let mut label = None;
    let mut index = match &spec.value_column {
        Some(ColumnRef::Index(i)) => Some(*i),
        Some(ColumnRef::Name(name)) => {
            if !spec.header {
                return Err(Error::MissingColumn(name.clone()));
            }
            let headers = reader.headers()?;
            let i = headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.clone()))?;
            Some(i)
        }
        None => None,
    };
    if spec.header {
        let headers = reader.headers()?.clone();
        let i = *index.get_or_insert(headers.len().saturating_sub(1));
        label = headers.get(i).map(str::to_string);
    }

    let mut values = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let i = index.unwrap_or(record.len() - 1);
        let field = record.get(i).ok_or_else(|| Error::Parse {
            path: spec.path.clone(),
            line,
            value: String::new(),
        })?;
        let v: f64 = field.parse().map_err(|_| Error::Parse {
            path: spec.path.clone(),
            line,
            value: field.to_string(),
        })?;
        if !v.is_finite() {
            return Err(Error::NonFiniteValue {
                path: spec.path.clone(),
                line,
                value: field.to_string(),
            });
        }
        values.push(v);
    }
    let series = TimeSeries::new(values)?;
    Ok(match label {
        Some(l) => series.with_label(l),
        None => series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn headerless_single_column() {
        let f = file("1.0\n2.0\n3.0\n\n\n");
        let s = read_series(&CsvSpec::new(f.path()).header(false)).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn named_column() {
        let f = file("date,close\n2023-01-01,10.5\n2023-01-02,11\n");
        let spec = CsvSpec::new(f.path()).column(ColumnRef::parse("close"));
        let s = read_series(&spec).unwrap();
        assert_eq!(s.values(), &[10.5, 11.0]);
        assert_eq!(s.label(), Some("close"));
        let by_index = read_series(&CsvSpec::new(f.path()).column(ColumnRef::Index(1))).unwrap();
        assert_eq!(by_index, s);
        let last = read_series(&CsvSpec::new(f.path())).unwrap();
        assert_eq!(last.values(), s.values());
    }

    #[test]
    fn parse_error_reports_line() {
        let f = file("x\n1\n2\nabc\n4\n");
        match read_series(&CsvSpec::new(f.path())) {
            Err(Error::Parse { line, value, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(value, "abc");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_finite_and_missing() {
        let f = file("x\n1\ninf\n");
        assert!(matches!(
            read_series(&CsvSpec::new(f.path())),
            Err(Error::NonFiniteValue { line: 3, .. })
        ));
        assert!(matches!(
            read_series(&CsvSpec::new("/definitely/not/here.csv")),
            Err(Error::FileNotFound(_))
        ));
        let g = file("a,b\n1,2\n");
        assert!(matches!(
            read_series(&CsvSpec::new(g.path()).column(ColumnRef::parse("c"))),
            Err(Error::MissingColumn(_))
        ));
        let empty = file("a\n");
        assert!(matches!(
            read_series(&CsvSpec::new(empty.path())),
            Err(Error::EmptySeries)
        ));
    }

    #[test]
    fn semicolon_delimiter() {
        let f = file("a;b\n1;-2.5e-3\n");
        let s = read_series(&CsvSpec::new(f.path()).delimiter(b';')).unwrap();
        assert_eq!(s.values(), &[-2.5e-3]);
    }
}
