use super::report::{Report, Status};
use super::entry;
use crate::algcore::Identity;
use crate::cohomology::{self, b2, h2, Flavor, SkewForm, U1};
use crate::exactfield::FieldSpec;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug)]
pub enum AnnExpectation {
    Whole,
    /// 1-based basis indices.
    Coords(&'static [usize]),
    /// The printed value names another algebra.
    Misprinted { printed: &'static str },
}

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub name: &'static str,
    /// Generators of `H²_M`.
    pub h2m: &'static [&'static str],
    /// Classes added in `H²_BL`.
    pub h2bl_extra: &'static [&'static str],
    pub ann: AnnExpectation,
    pub u1_nonempty: bool,
}

use AnnExpectation::{Coords, Misprinted, Whole};

const fn row(name: &'static str, h2m: &'static [&'static str], ann: AnnExpectation) -> TableRow {
    TableRow {
        name,
        h2m,
        h2bl_extra: &[],
        ann,
        u1_nonempty: false,
    }
}

pub const TABLE_ROWS: &[TableRow] = &[
    row("L_1_1", &[], Whole),
    row("L_2_1", &["D12"], Whole),
    row("L_3_1", &["D12", "D13", "D23"], Misprinted { printed: "L_2_1" }),
    row("L_3_2", &["D13", "D23"], Misprinted { printed: "L_2_1" }),
    row("L_4_1", &["D12", "D13", "D14", "D23", "D24", "D34"], Whole),
    row("L_4_2", &["D13", "D14", "D23", "D24", "D34"], Coords(&[3, 4])),
    row("L_4_3", &["D14", "D23"], Coords(&[4])),
    row(
        "L_5_1",
        &["D12", "D13", "D14", "D23", "D24", "D34", "D15", "D25", "D35", "D45"],
        Whole,
    ),
    row(
        "L_5_2",
        &["D13", "D14", "D23", "D24", "D34", "D15", "D25", "D35", "D45"],
        Coords(&[3, 4, 5]),
    ),
    row("L_5_3", &["D14", "D23", "D15", "D25", "D35"], Coords(&[4, 5])),
    row(
        "L_5_4",
        &["D13", "D14", "D23", "D24", "D34", "D15", "D25", "D35", "D45"],
        Coords(&[5]),
    ),
    row("L_5_5", &["D13", "D14", "D23", "D34", "D15"], Coords(&[5])),
    row("L_5_6", &["D14", "D15 - D24", "D25 - D34"], Coords(&[5])),
    row("L_5_7", &["D15", "D23", "D25 - D34"], Coords(&[5])),
    TableRow {
        name: "L_5_8",
        h2m: &["D14", "D15", "D23", "D24", "D34", "D25", "D35"],
        h2bl_extra: &["D45"],
        ann: Coords(&[4, 5]),
        u1_nonempty: true,
    },
    row("L_5_9", &["D14", "D15 + D24", "D25"], Coords(&[4, 5])),
    TableRow {
        name: "M_5_1",
        h2m: &["D13", "D14", "D23", "D24"],
        h2bl_extra: &["D45"],
        ann: Coords(&[5]),
        u1_nonempty: true,
    },
];

pub fn table_row(name: &str) -> Option<&'static TableRow> {
    TABLE_ROWS.iter().find(|r| r.name == name)
}

fn show_span(s: &Subspace) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let unit = s
        .basis()
        .iter()
        .all(|v| v.iter().filter(|x| !x.is_zero()).count() == 1 && v.iter().all(|x| x.is_zero() || x.is_one()));
    if unit {
        let idx: Vec<String> = s.pivots().iter().map(|p| format!("e{}", p + 1)).collect();
        format!("<{}>", idx.join(","))
    } else {
        s.to_string()
    }
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

/// A form obtained from `g` by flipping the signs of some of its terms that
/// satisfies `ok`.
fn sign_variant(g: &SkewForm, ok: impl Fn(&SkewForm) -> bool) -> Option<SkewForm> {
    let support: Vec<usize> = (0..g.coeffs().len()).filter(|&k| !g.coeffs()[k].is_zero()).collect();
    if support.len() > 12 {
        return None;
    }
    // bit 0 stays clear: the first term keeps its sign
    for mask in (2u32..(1 << support.len())).step_by(2) {
        let mut c = g.coeffs().to_vec();
        for (b, &k) in support.iter().enumerate() {
            if mask & (1 << b) != 0 {
                c[k] = -&c[k];
            }
        }
        let v = SkewForm::from_coeffs(g.field(), g.dim(), c).expect("same shape");
        if ok(&v) {
            return Some(v);
        }
    }
    None
}

/// Re-derives every row of the tables over `field`.
pub fn verify_tables(field: FieldSpec, seed: u64) -> Report {
    let mut r = Report::new("tables");
    for row in TABLE_ROWS {
        verify_row(&mut r, row, field, seed);
    }
    r
}

fn verify_row(r: &mut Report, row: &TableRow, field: FieldSpec, seed: u64) {
    let e = entry(row.name).expect("table rows are catalog entries");
    let a = e.build(field, None).expect("parameter-free");
    let n = a.dim();
    let id = |s: &str| format!("tables/{}/{s}", row.name);

    let ann = a.annihilator();
    match row.ann {
        Whole => {
            r.check(id("ann"), show_span(&Subspace::full(field, n)), show_span(&ann));
        }
        Coords(c) => {
            let want = Subspace::coordinate(field, n, &c.iter().map(|k| k - 1).collect::<Vec<_>>());
            r.check(id("ann"), show_span(&want), show_span(&ann));
        }
        Misprinted { printed } => {
            // a value naming L_2_1 would be a 2-dimensional abelian ideal
            let status = if ann.dim() == 2 { Status::Pass } else { Status::Discrepancy };
            r.push(
                id("ann"),
                format!("{printed} (as printed)"),
                format!("{} (dim {})", show_span(&ann), ann.dim()),
                status,
            );
        }
    }

    let bdim = b2(&a).dim();
    let sq = a.power_filtration().term(2).dim();
    r.check(id("dim_b2_eq_dim_a2"), sq, bdim);

    let parse = |s: &&str| SkewForm::parse(field, n, s).expect("table generators parse");
    let z2bl = h2(&a, Flavor::BinaryLie, seed);
    let fix = |g: SkewForm, r: &mut Report| -> SkewForm {
        if z2bl.is_cocycle(&g) {
            return g;
        }
        match sign_variant(&g, |x| z2bl.is_cocycle(x)) {
            Some(c) => {
                r.push(
                    id(&format!("printed_generator/{g}")),
                    format!("{g} (as printed)"),
                    format!("not a cocycle; {c} is"),
                    Status::Discrepancy,
                );
                c
            }
            None => g,
        }
    };
    let gm: Vec<SkewForm> = row.h2m.iter().map(parse).map(|g| fix(g, r)).collect();
    let extra: Vec<SkewForm> = row.h2bl_extra.iter().map(parse).map(|g| fix(g, r)).collect();
    for flavor in [Flavor::Malcev, Flavor::BinaryLie] {
        let space = match flavor {
            Flavor::BinaryLie => z2bl.clone(),
            Flavor::Malcev => h2(&a, flavor, seed),
        };
        let gens: Vec<SkewForm> = match flavor {
            Flavor::Malcev => gm.clone(),
            Flavor::BinaryLie => gm.iter().chain(&extra).cloned().collect(),
        };
        let fl = flavor.name();
        let outside: Vec<String> = gens.iter().filter(|g| !space.is_cocycle(g)).map(|g| g.to_string()).collect();
        r.check(id(&format!("h2{fl}/generators_are_cocycles")), "none", list(&outside));
        if outside.is_empty() {
            let indep = space.classes_independent(&gens).expect("cocycles");
            r.check_bool(id(&format!("h2{fl}/generators_independent")), indep, indep);
        }
        r.check(id(&format!("h2{fl}/dim")), gens.len(), space.h2_dim());
        r.check_bool(id(&format!("z2{fl}/guard")), space.guard_passed, space.guard_passed);
    }

    let zm = cohomology::z2(&a, Flavor::Malcev);
    let zb = cohomology::z2(&a, Flavor::BinaryLie);
    let sub = zb.contains_subspace(&zm).unwrap_or(false);
    r.check_bool(id("z2m_in_z2bl"), sub, sub);
    for x in &extra {
        match cohomology::is_in_h2m(&a, x) {
            Ok(inside) => r.check(id(&format!("{x}_outside_h2m")), true, !inside),
            Err(err) => r.check(id(&format!("{x}_outside_h2m")), true, err),
        };
    }

    let u1 = cohomology::u1(&a, seed);
    let computed = match &u1 {
        Ok(U1::Empty) => "empty (H2_M = H2_BL)".to_string(),
        Ok(U1::Nonempty { witness }) => format!("nonempty, witness <[{witness}]>"),
        Ok(U1::Undecided { tries }) => format!("undecided after {tries} samples"),
        Err(err) => err.to_string(),
    };
    let ok = matches!(&u1, Ok(x) if x.is_nonempty() == row.u1_nonempty && !matches!(x, U1::Undecided { .. }));
    let expected = if row.u1_nonempty { "nonempty" } else { "empty" };
    r.push(id("u1"), expected, computed, if ok { Status::Pass } else { Status::Fail });

    if n <= 4 {
        let eq = matches!(u1, Ok(U1::Empty));
        r.check_bool(id("lemma/h2bl_eq_h2m"), eq, eq);
    }
    if n == 5 {
        let m = a.check_identity(Identity::Malcev, seed).holds();
        r.check_bool(id("lemma/malcev"), m, m);
    }
}
