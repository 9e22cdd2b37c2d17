use proptest::prelude::*;
use tsecon::ingest::{read_csv, summary_stats, write_csv, DatasetSchema};
use tsecon::timeseries::{align, diff, log_transform, Frame, Period, Series};

fn start() -> Period {
    Period::new(2001, 4).unwrap()
}

fn finite_values(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e6..1e6f64, 3..max_len)
}

proptest! {
    #[test]
    fn cumulative_sum_restores_integer_series_bitwise(v in prop::collection::vec(-1_000_000i64..1_000_000, 2..60)) {
        let s = Series::new("y", start(), v.iter().map(|&x| x as f64).collect()).unwrap();
        let d = diff(&s, 1).unwrap();
        let mut rebuilt = vec![s.values()[0]];
        for dv in d.values() {
            rebuilt.push(rebuilt.last().unwrap() + dv);
        }
        prop_assert_eq!(rebuilt.as_slice(), s.values());
    }

    #[test]
    fn cumulative_sum_restores_real_series(v in finite_values(60)) {
        let s = Series::new("y", start(), v).unwrap();
        let d = diff(&s, 1).unwrap();
        let mut acc = s.values()[0];
        let scale = s.values().iter().fold(1.0f64, |a, x| a.max(x.abs()));
        for (i, dv) in d.values().iter().enumerate() {
            acc += dv;
            prop_assert!((acc - s.values()[i + 1]).abs() <= 1e-12 * scale * (i + 1) as f64);
        }
    }

    #[test]
    fn second_difference_composes(v in finite_values(40)) {
        let s = Series::new("y", start(), v).unwrap();
        let twice = diff(&diff(&s, 1).unwrap(), 1).unwrap();
        let direct = diff(&s, 2).unwrap();
        prop_assert_eq!(twice.values(), direct.values());
        prop_assert_eq!(twice.start(), direct.start());
    }

    #[test]
    fn log_inverts_exp(v in prop::collection::vec(-50.0..50.0f64, 1..40)) {
        let s = Series::new("y", start(), v.iter().map(|x| x.exp()).collect()).unwrap();
        let l = log_transform(&s).unwrap();
        for (a, b) in l.values().iter().zip(&v) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn align_is_idempotent(offsets in prop::collection::vec((0i64..8, 5usize..20), 1..5)) {
        let cols: Vec<Series> = offsets
            .iter()
            .enumerate()
            .map(|(i, (off, len))| {
                Series::new(format!("c{i}"), start().advance(*off), (0..*len).map(|x| x as f64).collect()).unwrap()
            })
            .collect();
        if let Ok(f) = align(cols) {
            let again = align(f.columns().to_vec()).unwrap();
            prop_assert_eq!(again, f);
        }
    }

    #[test]
    fn csv_round_trip_is_exact(rows in prop::collection::vec(prop::collection::vec(-1e12..1e12f64, 3), 1..30)) {
        let cols: Vec<Series> = (0..3)
            .map(|j| Series::new(format!("v{j}"), start(), rows.iter().map(|r| r[j]).collect()).unwrap())
            .collect();
        let frame = Frame::new(cols).unwrap();
        let mut buf = Vec::new();
        write_csv(&frame, "period", &mut buf).unwrap();
        let schema = DatasetSchema {
            period_column: "period".into(),
            variable_columns: vec!["v0".into(), "v1".into(), "v2".into()],
            log_columns: vec![],
        };
        let back = read_csv(buf.as_slice(), &schema).unwrap();
        prop_assert_eq!(back, frame);
    }

    #[test]
    fn summary_agrees_with_direct_fold(v in finite_values(100)) {
        let frame = Frame::new(vec![Series::new("y", start(), v.clone()).unwrap()]).unwrap();
        let row = &summary_stats(&frame).unwrap()[0];
        prop_assert_eq!(row.minimum, v.iter().copied().fold(f64::INFINITY, f64::min));
        prop_assert_eq!(row.maximum, v.iter().copied().fold(f64::NEG_INFINITY, f64::max));
        let naive = v.iter().sum::<f64>() / v.len() as f64;
        let scale = v.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        prop_assert!((row.mean - naive).abs() <= 1e-12 * scale);
        prop_assert!(row.minimum <= row.mean && row.mean <= row.maximum);
        prop_assert_eq!(row.count, v.len());
    }
}

#[test]
fn loading_is_deterministic_and_uses_lf_output() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/synthetic_quarterly.csv");
    let schema = DatasetSchema::default();
    let a = tsecon::ingest::load_csv(path, &schema).unwrap();
    let b = tsecon::ingest::load_csv(path, &schema).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 80);
    assert_eq!(a.start(), start());
    assert_eq!(a.end(), Period::new(2021, 3).unwrap());
    let mut out = Vec::new();
    write_csv(&a, "period", &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.starts_with("period,REER,USLR,M2,CPI,WIR\n2001Q4,"));
}
