//! Plain-text and CSV rendering of result tables.

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<const N: usize>(&mut self, row: [String; N]) {
        debug_assert_eq!(N, self.header.len());
        self.rows.push(row.to_vec());
    }

    pub fn render(&self, csv: bool) -> String {
        if csv {
            self.csv()
        } else {
            self.aligned()
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 fields")
    }

    /// Left-aligned columns separated by two spaces, header underlined.
    fn aligned(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (k, (c, w)) in cells.iter().zip(&width).enumerate() {
                if k + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.extend(std::iter::repeat_n(' ', w - c.chars().count() + 2));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_loadings() {
        let mut t = Table::new(["index", "loading"]);
        t.push(["0".into(), "0@0,1@1".into()]);
        assert_eq!(t.render(true), "index,loading\n0,\"0@0,1@1\"\n");
    }

    #[test]
    fn aligned_columns() {
        let mut t = Table::new(["a", "bb"]);
        t.push(["long".into(), "x".into()]);
        assert_eq!(t.render(false), "a     bb\n----  --\nlong  x\n");
    }
}
