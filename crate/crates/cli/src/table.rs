//! CSV emission. Every file starts with a schema line, numbers are written
//! with 17 significant digits so they round-trip exactly.

pub const SCHEMA_LINE: &str = "# schema=1";

pub fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        let buf = format!("{SCHEMA_LINE}\n").into_bytes();
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(buf);
        writer.write_record(columns).expect("in-memory write");
        Table { writer }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.writer.write_record(cells).expect("in-memory write");
    }

    pub fn into_string(self) -> String {
        let bytes = self.writer.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("UTF-8 cells")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 7.63e-2, 1e-300, 0.0, 1.0] {
            assert_eq!(number(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(number(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn layout() {
        let mut t = Table::new(&["a", "b"]);
        t.row(&["1".into(), "2".into()]);
        assert_eq!(t.into_string(), "# schema=1\na,b\n1,2\n");
    }

    #[test]
    #[should_panic]
    fn rows_must_match_the_header() {
        let mut t = Table::new(&["a", "b"]);
        t.row(&["1".into()]);
    }
}
