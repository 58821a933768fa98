use std::fmt::Write;

/// Nine significant digits, `.` as decimal separator. Fixed notation for
/// magnitudes in `[1e-4, 1e9)`, scientific otherwise.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let exp: i32 = sci[sci.find('e').expect("scientific format has an exponent") + 1..]
        .parse()
        .expect("exponent is an integer");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// Whole numbers without decimals, anything else through [`sig9`].
pub fn count(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        sig9(x)
    }
}

/// Comma-separated rows with a header line.
#[derive(Debug, Clone, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut out = String::new();
        out.push_str(&header.join(","));
        out.push('\n');
        Self { out }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.out.push_str(&cells.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Left-aligned text columns, padded to the widest cell.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            write!(s, "{cell:<w$}").expect("writing to a String");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut out, header.to_vec());
    for row in rows {
        line(&mut out, row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digits() {
        assert_eq!(sig9(0.950604), "0.950604000");
        assert_eq!(sig9(1.0), "1.00000000");
        assert_eq!(sig9(499.8612345678), "499.861235");
        assert_eq!(sig9(-0.22), "-0.220000000");
        assert_eq!(sig9(0.0), "0.00000000");
        assert_eq!(sig9(1.5e-7), "1.50000000e-7");
        assert_eq!(sig9(9.9999999999), "10.0000000");
        assert_eq!(sig9(123456789.0), "123456789");
        assert_eq!(sig9(1.0e12), "1.00000000e12");
    }

    #[test]
    fn whole_counts() {
        assert_eq!(count(18.0), "18");
        assert_eq!(count(1.5), "1.50000000");
    }

    #[test]
    fn csv_lines() {
        let mut c = Csv::new(&["n", "t"]);
        c.row(&["1".into(), sig9(0.5)]);
        assert_eq!(c.finish(), "n,t\n1,0.500000000\n");
    }

    #[test]
    fn padded_table() {
        let t = text_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
