//! Classification tables for representations with a real, complex or
//! quaternionic structure, instantiated at small rank.

use serde::Serialize;

use super::{irreducible, Character, RootDatum, RootKind, Weight, WeightError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    /// `(Lambda^4 m)^h = 0`.
    Real,
    /// `Lambda^2 m` irreducible.
    Complex,
    /// `Lambda^2_0 m` irreducible.
    Quaternionic,
}

impl Table {
    pub const ALL: [Table; 3] = [Table::Real, Table::Complex, Table::Quaternionic];

    pub fn parse(s: &str) -> Option<Table> {
        match s {
            "real" => Some(Table::Real),
            "complex" => Some(Table::Complex),
            "quaternionic" => Some(Table::Quaternionic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: Table,
    pub symbol: &'static str,
    pub algebra: &'static str,
    pub module: &'static str,
    pub kind: Option<RootKind>,
    pub rank: usize,
    /// Highest weight in doubled coordinates.
    pub highest: Vec<i16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowOutcome {
    pub row: TableRow,
    pub status: RowStatus,
    pub dim: Option<i64>,
    /// Trivial multiplicity for the real table, otherwise the sum of
    /// squared multiplicities.
    pub value: Option<i64>,
}

const fn row(
    table: Table,
    symbol: &'static str,
    algebra: &'static str,
    module: &'static str,
    kind: Option<RootKind>,
    rank: usize,
    highest: &'static [i16],
) -> (Table, &'static str, &'static str, &'static str, Option<RootKind>, usize, &'static [i16]) {
    (table, symbol, algebra, module, kind, rank, highest)
}

use RootKind::{A, B, C, D};
use Table::{Complex, Quaternionic, Real};

#[allow(clippy::type_complexity)]
const ROWS: &[(Table, &str, &str, &str, Option<RootKind>, usize, &[i16])] = &[
    row(Real, "II", "su(3)", "su(3)", Some(A), 2, &[2, 0, -2]),
    row(Real, "BD I", "so(5)", "R^5", Some(B), 2, &[2, 0]),
    row(Real, "A I", "so(3)", "Sym^2_0 R^3", Some(B), 1, &[4]),
    row(Real, "A II", "sp(3)", "Lambda^2_0 H^3", Some(C), 3, &[2, 2, 0]),
    row(Real, "F II", "spin(9)", "Sigma9", Some(B), 4, &[1, 1, 1, 1]),
    row(Real, "E I", "sp(4)", "Lambda^4_0 H^4", Some(C), 4, &[2, 2, 2, 2]),
    row(Real, "E IV", "F4", "V26", None, 4, &[]),
    row(Real, "E V", "su(8)", "Lambda^4 C^8", Some(A), 7, &[2, 2, 2, 2, 0, 0, 0, 0]),
    row(Real, "E VIII", "spin(16)", "Sigma16+", Some(D), 8, &[1, 1, 1, 1, 1, 1, 1, 1]),
    row(Complex, "A III", "su(3)", "C^3", Some(A), 2, &[2, 0, 0]),
    row(Complex, "D III", "su(5)", "Lambda^2 C^5", Some(A), 4, &[2, 2, 0, 0, 0]),
    row(Complex, "C I", "su(3)", "Sym^2 C^3", Some(A), 2, &[4, 0, 0]),
    row(Complex, "BD I", "so(5)", "R^5 (x) C", Some(B), 2, &[2, 0]),
    row(Complex, "BD I", "so(7)", "R^7 (x) C", Some(B), 3, &[2, 0, 0]),
    row(Complex, "E III", "spin(10)", "Sigma10", Some(D), 5, &[1, 1, 1, 1, 1]),
    row(Complex, "E VII", "E6", "V27", None, 6, &[]),
    row(Quaternionic, "C II", "sp(2)", "H^2", Some(C), 2, &[2, 0]),
    row(Quaternionic, "F I", "sp(3)", "Lambda^3_0 H^3", Some(C), 3, &[2, 2, 2]),
    row(Quaternionic, "G I", "sp(1)", "Sym^3 H", Some(C), 1, &[6]),
    row(Quaternionic, "E II", "su(6)", "Lambda^3 C^6", Some(A), 5, &[2, 2, 2, 0, 0, 0]),
    row(Quaternionic, "E VI", "spin(12)", "Sigma12+", Some(D), 6, &[1, 1, 1, 1, 1, 1]),
    row(Quaternionic, "E IX", "E7", "V56", None, 7, &[]),
];

pub fn table_rows(table: Table) -> Vec<TableRow> {
    ROWS.iter()
        .filter(|r| r.0 == table)
        .map(|&(table, symbol, algebra, module, kind, rank, highest)| TableRow {
            table,
            symbol,
            algebra,
            module,
            kind,
            rank,
            highest: highest.to_vec(),
        })
        .collect()
}

fn evaluate(row: &TableRow, kind: RootKind) -> Result<(i64, i64, bool), WeightError> {
    let datum = RootDatum::new(kind, row.rank);
    let m = irreducible(&datum, &datum.normalize(&Weight::doubled(&row.highest)));
    let dim = m.dim();
    match row.table {
        Table::Real => {
            let t = m.ext_power(4)?.trivial_multiplicity()?;
            Ok((dim, t, t == 0))
        }
        Table::Complex => {
            let n = m.ext_power(2)?.irreducibility_norm()?;
            Ok((dim, n, n == 1))
        }
        Table::Quaternionic => {
            let l2 = m.ext_power(2)?;
            if l2.trivial_multiplicity()? < 1 {
                return Ok((dim, 0, false));
            }
            let n = l2.sub(&Character::one(&datum)).irreducibility_norm()?;
            Ok((dim, n, n == 1))
        }
    }
}

pub fn verify_row(row: &TableRow) -> Result<RowOutcome, WeightError> {
    let Some(kind) = row.kind else {
        return Ok(RowOutcome { row: row.clone(), status: RowStatus::Skipped, dim: None, value: None });
    };
    let (dim, value, ok) = evaluate(row, kind)?;
    Ok(RowOutcome {
        row: row.clone(),
        status: if ok { RowStatus::Pass } else { RowStatus::Fail },
        dim: Some(dim),
        value: Some(value),
    })
}

pub fn verify_table(table: Table) -> Result<Vec<RowOutcome>, WeightError> {
    table_rows(table).iter().map(verify_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_dimensions() {
        let expect = [
            ("su(3)", "su(3)", 8),
            ("so(3)", "Sym^2_0 R^3", 5),
            ("sp(3)", "Lambda^2_0 H^3", 14),
            ("sp(4)", "Lambda^4_0 H^4", 42),
            ("su(8)", "Lambda^4 C^8", 70),
            ("sp(3)", "Lambda^3_0 H^3", 14),
            ("su(6)", "Lambda^3 C^6", 20),
            ("spin(12)", "Sigma12+", 32),
        ];
        for t in Table::ALL {
            for r in table_rows(t) {
                if let Some(&(_, _, d)) = expect.iter().find(|e| e.0 == r.algebra && e.1 == r.module) {
                    let datum = RootDatum::new(r.kind.unwrap(), r.rank);
                    let w = datum.normalize(&Weight::doubled(&r.highest));
                    assert_eq!(datum.weyl_dimension(&w).to_i64(), Some(d), "{}", r.module);
                }
            }
        }
    }

    #[test]
    fn small_rows() {
        for t in Table::ALL {
            for r in table_rows(t) {
                if r.rank > 5 || r.kind.is_none() || (t == Table::Real && r.rank > 3) {
                    continue;
                }
                assert_eq!(verify_row(&r).unwrap().status, RowStatus::Pass, "{} {}", r.algebra, r.module);
            }
        }
    }

    #[test]
    fn exceptional_rows_are_skipped() {
        let r = table_rows(Table::Complex).into_iter().find(|r| r.algebra == "E6").unwrap();
        assert_eq!(verify_row(&r).unwrap().status, RowStatus::Skipped);
    }

    #[test]
    fn non_examples_fail() {
        // su(4) on Sym^3 C^4: Lambda^2 is reducible
        let r = TableRow {
            table: Table::Complex,
            symbol: "-",
            algebra: "su(4)",
            module: "Sym^3 C^4",
            kind: Some(RootKind::A),
            rank: 3,
            highest: vec![6, 0, 0, 0],
        };
        assert_eq!(verify_row(&r).unwrap().status, RowStatus::Fail);
        // so(7) on R^7: not quaternionic
        let r = TableRow { table: Table::Quaternionic, kind: Some(RootKind::B), rank: 3, highest: vec![2, 0, 0], ..r };
        assert_eq!(verify_row(&r).unwrap().status, RowStatus::Fail);
    }
}
