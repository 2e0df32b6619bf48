use std::io::{Read, Write};
use std::path::Path;

use super::sweep::ResultRow;
use crate::analytic::ModelPoint;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "phi_max,t_cav_ms,alpha_sq,n_traj,f_corr,f_corr_se,f_uncorr,f_uncorr_se,syn_mm,syn_pm,syn_mp,syn_pp,seed";

pub const ANALYTIC_HEADER: &str = "phi_max,f_nofb_ave,f_fb_ave";

fn csv_err(path: &Path, source: csv::Error) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// Header line plus one line per row; floats in shortest round-trip form.
pub fn write_rows<W: Write, T: serde::Serialize>(out: W, rows: &[T]) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: Read>(input: R) -> std::result::Result<Vec<ResultRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

fn create(path: &Path) -> Result<std::fs::File> {
    std::fs::File::create(path).map_err(|e| Error::io(path, e))
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Config("no rows to write".into()));
    }
    write_rows(create(path)?, rows).map_err(|e| csv_err(path, e))
}

pub fn load_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_rows(f).map_err(|e| csv_err(path, e))
}

pub fn emit_analytic_csv(points: &[ModelPoint], path: &Path) -> Result<()> {
    write_rows(create(path)?, points).map_err(|e| csv_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ResultRow {
        ResultRow {
            phi_max: 0.1 + 0.2,
            t_cav_ms: f64::INFINITY,
            alpha_sq: 0.7,
            n_traj: 1000,
            f_corr: Some(0.9123456789012345),
            f_corr_se: Some(1e-17),
            f_uncorr: 1.0 / 3.0,
            f_uncorr_se: 0.0,
            syn_mm: 1,
            syn_pm: 2,
            syn_mp: 3,
            syn_pp: 994,
            seed: u64::MAX,
        }
    }

    #[test]
    fn header_and_row_count() {
        let mut buf = Vec::new();
        write_rows(&mut buf, &[row()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
    }

    #[test]
    fn round_trip_is_lossless() {
        let mut missing = row();
        missing.f_corr = None;
        missing.f_corr_se = None;
        let rows = vec![row(), missing];
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows).unwrap();
        let back = read_rows(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
        for (a, b) in back.iter().zip(&rows) {
            assert_eq!(a.phi_max.to_bits(), b.phi_max.to_bits());
            assert_eq!(a.f_uncorr.to_bits(), b.f_uncorr.to_bits());
        }
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = emit_csv(&[row()], Path::new("/nonexistent/dir/out.csv")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.csv"));
    }
}
