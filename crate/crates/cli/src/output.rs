use std::collections::BTreeSet;

use su11poly::kernels::CheckReport;

use crate::CliError;

/// Renders a header and records as CSV text.
pub fn csv_string<I>(header: &[&str], records: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Numeric(format!("csv output: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in records {
        w.write_record(&r).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Numeric(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}

/// Shortest round-trip form, switching to exponent notation far from unity.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// `re` when the imaginary part is zero, otherwise `re+imi` or `re-imi`.
pub fn complex_text(v: [f64; 2]) -> String {
    let [re, im] = v;
    if im == 0.0 {
        num(re)
    } else if im.is_sign_negative() {
        format!("{}-{}i", num(re), num(-im))
    } else {
        format!("{}+{}i", num(re), num(im))
    }
}

/// One row per report; parameter columns are the union of all keys.
pub fn report_csv(reports: &[CheckReport]) -> Result<String, CliError> {
    let keys: BTreeSet<&str> = reports
        .iter()
        .flat_map(|r| r.params.iter().map(|(k, _)| k))
        .collect();
    let mut header = vec!["identity".to_string()];
    header.extend(keys.iter().map(|k| format!("param_{k}")));
    header.extend(
        [
            "lhs_re",
            "lhs_im",
            "rhs_re",
            "rhs_im",
            "abs_residual",
            "rel_residual",
            "terms",
            "tail_bound",
            "tol",
            "pass",
            "error",
        ]
        .map(String::from),
    );
    let records = reports.iter().map(|r| {
        let mut row = vec![r.identity.clone()];
        for k in &keys {
            row.push(
                r.params
                    .iter()
                    .find(|(p, _)| p == k)
                    .map(|(_, v)| num(v))
                    .unwrap_or_default(),
            );
        }
        row.extend([
            num(r.lhs[0]),
            num(r.lhs[1]),
            num(r.rhs[0]),
            num(r.rhs[1]),
            num(r.abs_residual),
            num(r.rel_residual),
            r.terms.to_string(),
            num(r.tail_bound),
            num(r.tol),
            r.pass.to_string(),
            r.error.clone().unwrap_or_default(),
        ]);
        row
    });
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv_string(&header, records)
}

pub fn report_text(r: &CheckReport) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    match &r.error {
        Some(e) => format!(
            "{verdict} {} {}: error: {e}\n",
            r.identity,
            params.join(" ")
        ),
        None => format!(
            "{verdict} {} {}: lhs={} rhs={} rel={:e} terms={}\n",
            r.identity,
            params.join(" "),
            complex_text(r.lhs),
            complex_text(r.rhs),
            r.rel_residual,
            r.terms
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex_text([1.5, 0.0]), "1.5");
        assert_eq!(complex_text([1.5, -2.0]), "1.5-2i");
        assert_eq!(complex_text([0.0, 2.5e-12]), "0+2.5e-12i");
        assert_eq!(num(3e20), "3e20");
    }

    #[test]
    fn csv_quotes_fields() {
        let s = csv_string(&["a", "b"], [vec!["x,y".to_string(), "z".to_string()]]).unwrap();
        assert_eq!(s, "a,b\n\"x,y\",z\n");
    }
}
