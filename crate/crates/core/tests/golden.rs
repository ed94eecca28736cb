use braided_weyl::hecke::BraidMatrix;
use braided_weyl::linalg::Matrix;
use braided_weyl::pbw::check_local_confluence;
use braided_weyl::verify::{self, Context, Status};
use braided_weyl::{bundled, RelationTable, Scalar};

#[test]
fn bundled_tables_match_generation() {
    for id in bundled::TABLE_IDS {
        let fresh = bundled::generate(id).unwrap();
        assert_eq!(bundled::table(id).unwrap(), fresh, "{id}");
        assert_eq!(bundled::table_json(id).unwrap(), fresh.to_json(), "{id}: data file is stale");
    }
}

#[test]
fn json_round_trip() {
    for id in bundled::TABLE_IDS {
        let t = bundled::table(id).unwrap();
        assert_eq!(RelationTable::from_json(&t.to_json()).unwrap(), t, "{id}");
    }
}

#[test]
fn confluent_at_degree_three() {
    for id in bundled::TABLE_IDS {
        let t = bundled::table(id).unwrap();
        let reports = check_local_confluence(&t, 3);
        assert!(reports.is_empty(), "{id}: {}", reports[0].render(&t));
    }
}

#[test]
fn standard_braid_matrix() {
    let r = BraidMatrix::standard();
    let q = Scalar::q();
    let qq = q.clone() - Scalar::from(1) / q.clone();
    let (o, z) = (Scalar::from(1), Scalar::from(0));
    let printed = Matrix::from_rows(vec![
        vec![q.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), qq, o.clone(), z.clone()],
        vec![z.clone(), o, z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z, q],
    ]);
    assert_eq!(r.entries(), &printed);
    assert!(r.check_qybe());
    assert!(r.check_hecke());
    assert_eq!(BraidMatrix::from_json(&r.to_json()).unwrap().entries(), r.entries());

    let flip = BraidMatrix::flip(2);
    assert!(flip.check_qybe());
    assert!(flip.check_hecke());
    assert_eq!(flip.entries().mul(flip.entries()), Matrix::identity(4));
}

#[test]
fn verify_reports_no_failures() {
    let checks = verify::run(&Context::bundled().unwrap(), &[]);
    let failed: Vec<String> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.to_string()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    let discrepancies = checks.iter().filter(|c| c.status == Status::Discrepancy).count();
    assert_eq!(discrepancies, 4);
}
