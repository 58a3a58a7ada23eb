use cstre::io::{reports_from_json, reports_to_csv, reports_to_json};
use cstre::qlinalg::Partition;
use cstre::separability::*;
use cstre::states::Family;

fn short_cfg() -> SweepConfig {
    SweepConfig::default().with_schedule(vec![1.0, 2.0, 5.0, 20.0, 100.0])
}

fn w3_rows() -> Vec<TableRow> {
    TableRow::for_family(Family::W, 3)
}

#[test]
fn thresholds_tighten_with_q() {
    let cfg = short_cfg();
    for family in [Family::W, Family::Ghz] {
        for n in [3, 4] {
            for cut in Partition::all_prefixes(n) {
                for c in [Criterion::Cstre, Criterion::Ar] {
                    let r = limit_threshold(family, &cut, c, &cfg).unwrap();
                    for w in r.samples.windows(2) {
                        assert!(
                            w[1].x_star <= w[0].x_star + cfg.bisection_tol,
                            "{family}{n} {cut} {c}: {:?}",
                            r.samples
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn ppt_lies_below_every_entropic_threshold() {
    let cfg = short_cfg();
    for row in default_table_rows() {
        let ppt = ppt_threshold(row.family, &row.partition, &cfg).unwrap().x_star;
        for c in [Criterion::Cstre, Criterion::Ar, Criterion::Vn] {
            let r = limit_threshold(row.family, &row.partition, c, &cfg).unwrap();
            assert!(ppt <= r.x_star + 1e-3, "{} {c}: {ppt} > {}", row.partition, r.x_star);
        }
    }
}

#[test]
fn q_one_matches_von_neumann() {
    let cfg = short_cfg();
    for row in w3_rows() {
        let vn = limit_threshold(row.family, &row.partition, Criterion::Vn, &cfg).unwrap();
        let cs = limit_threshold(row.family, &row.partition, Criterion::Cstre, &cfg).unwrap();
        let ar = limit_threshold(row.family, &row.partition, Criterion::Ar, &cfg).unwrap();
        assert_eq!(cs.samples[0].q, 1.0);
        assert!((cs.samples[0].x_star - vn.x_star).abs() <= cfg.bisection_tol);
        assert!((ar.samples[0].x_star - vn.x_star).abs() <= cfg.bisection_tol);
    }
}

#[test]
fn nesting_holds_at_large_q() {
    let cfg = SweepConfig::default();
    for (family, n, cut) in [(Family::W, 3, "A:BC"), (Family::Ghz, 3, "AB:C"), (Family::W, 4, "ABC:D")] {
        let p = Partition::parse(cut, n).unwrap();
        let r = nesting_check(family, &p, &[100.0, 12800.0], &cfg).unwrap();
        assert_eq!(r.q, 12800.0);
        assert!(r.pass, "{r:?}");
        assert!(r.ppt <= r.cstre + cfg.limit_tol && r.cstre <= r.ar + cfg.limit_tol);
    }
}

#[test]
fn nesting_rejects_empty_q_list() {
    let p = Partition::parse("A:BC", 3).unwrap();
    assert!(matches!(
        nesting_check(Family::W, &p, &[], &SweepConfig::default()),
        Err(SepError::BadConfig(_))
    ));
}

#[test]
fn table_is_deterministic() {
    let cfg = short_cfg();
    let a = criteria_table(&w3_rows(), &Criterion::ALL, &cfg).unwrap();
    let b = criteria_table(&w3_rows(), &Criterion::ALL, &cfg).unwrap();
    assert_eq!(reports_to_json(&a).unwrap(), reports_to_json(&b).unwrap());
}

#[test]
fn table_follows_row_and_criterion_order() {
    let rows = w3_rows();
    let crits = [Criterion::Ppt, Criterion::Cstre];
    let t = criteria_table(&rows, &crits, &short_cfg()).unwrap();
    assert_eq!(t.len(), rows.len() * crits.len());
    for (i, r) in t.iter().enumerate() {
        assert_eq!(r.partition, rows[i / 2].partition);
        assert_eq!(r.criterion, crits[i % 2]);
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    let t = criteria_table(&w3_rows(), &Criterion::ALL, &short_cfg()).unwrap();
    let text = reports_to_json(&t).unwrap();
    let back = reports_from_json(&text).unwrap();
    assert_eq!(back, t);
    assert_eq!(reports_to_json(&back).unwrap(), text);
}

#[test]
fn csv_has_sample_and_summary_rows() {
    let cfg = short_cfg();
    let t = criteria_table(&w3_rows(), &[Criterion::Cstre, Criterion::Ppt], &cfg).unwrap();
    let csv = reports_to_csv(&t).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "family,n_qubits,partition,criterion,kind,q,x_star,converged");
    let samples = lines.iter().filter(|l| l.contains(",sample,")).count();
    let summaries = lines.iter().filter(|l| l.contains(",summary,")).count();
    assert_eq!(summaries, t.len());
    assert_eq!(samples, t.iter().map(|r| r.samples.len()).sum::<usize>());
    assert!(lines.iter().all(|l| l.split(',').count() == 8));
    assert!(!csv.contains('\r'));
}

#[test]
fn short_schedule_reports_non_convergence() {
    let cfg = SweepConfig::default().with_schedule(vec![2.0, 5.0]);
    let p = Partition::parse("A:BC", 3).unwrap();
    let r = limit_threshold(Family::W, &p, Criterion::Cstre, &cfg).unwrap();
    assert!(!r.converged);
    assert_eq!(r.q_at_convergence, None);
    assert_eq!(r.x_star, r.samples[1].x_star);
}

#[test]
fn curve_crosses_zero_near_threshold() {
    let p = Partition::parse("A:BC", 3).unwrap();
    let cfg = short_cfg();
    let x = zero_crossing_x(Family::W, &p, Criterion::Cstre, 2.0, &cfg).unwrap();
    let pts = curve_data(Family::W, &p, Criterion::Cstre, 2.0, &[x - 1e-3, x + 1e-3]).unwrap();
    assert!(pts[0].value.unwrap() > 0.0);
    assert!(pts[1].value.unwrap() < 0.0);
}

#[test]
fn isospectral_verdict_separates_the_pair() {
    let r = isospectral_verdict().unwrap();
    assert!(r.entangled_detected && r.separable_consistent);
    assert_eq!(r.rows.len(), ISOSPECTRAL_QS.len());
    // q = 1 cannot tell the two states apart
    assert!((r.q_one.entangled - r.q_one.separable).abs() < 1e-10);
}
