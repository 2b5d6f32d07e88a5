//! The worked examples: the knot `10_145` and the pretzel with a non-cyclic cover.

use std::fmt::Write;

use definite_bounds::algebra::{format_rational, rat, ExactRational};
use definite_bounds::dinv::{correction_table, CorrectionTable, SeifertData};
use definite_bounds::links::{genus_obstruction, GenusReport, LinkDescriptor};
use definite_bounds::obstruction::{check_bound_with, ObstructionReport, SearchOptions};
use definite_bounds::qforms::{
    enumerate_definite_forms, enumerate_rank2_reduced, sq_table_auto, QuadraticForm,
};
use definite_bounds::Result;

/// `10_145 = M(1;3/1,3/1,5/2)`.
pub const KNOT_10_145: &str = "M(1;3/1,3/1,5/2)";
/// The pretzel knot whose cover has `H_1 = Z/5+Z/5`.
pub const PRETZEL: &str = "M(1;5/2,5/2,5/2)";

fn list(v: &[ExactRational]) -> String {
    format!(
        "[{}]",
        v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    )
}

fn sorted_sq(form: &QuadraticForm) -> Vec<ExactRational> {
    let mut v = sq_table_auto(form).sq;
    v.sort();
    v
}

pub struct SmallExample {
    /// Correction terms of the cover with the orientation that is searched.
    pub table: CorrectionTable,
    pub forms: Vec<(QuadraticForm, Vec<ExactRational>)>,
    pub bound: ObstructionReport,
    pub genus: GenusReport,
}

/// The reversed cover `-Y(-1;(3,1),(3,1),(5,2))`, its rank-2 candidate forms and the verdict.
pub fn small_example(opts: SearchOptions) -> Result<SmallExample> {
    let y = SeifertData::new(-1, vec![(3, 1), (3, 1), (5, 2)])?;
    let table = correction_table(&y)?.negated();
    let forms = enumerate_rank2_reduced(3).into_iter().map(|f| {
        let s = sorted_sq(&f);
        (f, s)
    });
    let bound = check_bound_with(&table, 2, opts)?;
    let genus = genus_obstruction(&KNOT_10_145.parse::<LinkDescriptor>()?, opts)?;
    Ok(SmallExample {
        table,
        forms: forms.collect(),
        bound,
        genus,
    })
}

pub struct PretzelExample {
    pub table: CorrectionTable,
    /// Correction terms at spin structures.
    pub spin_values: Vec<ExactRational>,
    pub unimodular: Vec<QuadraticForm>,
    /// Forms of rank 4 and determinant 25 presenting `Z/5+Z/5`, with their `sq` values.
    pub forms: Vec<(QuadraticForm, Vec<ExactRational>)>,
    pub genus: GenusReport,
}

impl PretzelExample {
    /// Number of correction terms that are `>= 0`.
    pub fn nonnegative_terms(&self) -> usize {
        self.table.d.iter().filter(|v| **v >= rat(0, 1)).count()
    }

    /// Per form, the number of classes with `sq + 4 >= 0`.
    pub fn large_classes(&self) -> Vec<usize> {
        self.forms
            .iter()
            .map(|(_, sq)| sq.iter().filter(|s| *s + rat(4, 1) >= rat(0, 1)).count())
            .collect()
    }
}

pub fn pretzel_example(opts: SearchOptions) -> Result<PretzelExample> {
    let d: LinkDescriptor = PRETZEL.parse()?;
    let table = correction_table(&d.double_cover()?)?.negated();
    let spin_values = table.spin.iter().map(|s| table.d_of(s).clone()).collect();
    let unimodular = enumerate_definite_forms(4, 1, None)?;
    let forms = enumerate_definite_forms(4, 25, Some(&table.group))?
        .into_iter()
        .map(|f| {
            let s = sorted_sq(&f);
            (f, s)
        })
        .collect();
    let genus = genus_obstruction(&d, opts)?;
    Ok(PretzelExample {
        table,
        spin_values,
        unimodular,
        forms,
        genus,
    })
}

fn verdict(r: &ObstructionReport) -> &'static str {
    if r.obstructed {
        "obstructed"
    } else {
        "not obstructed"
    }
}

fn genus_line(d: &str, g: &GenusReport) -> String {
    format!(
        "{d}  mu={}  sigma={}  cover={}  b={}  {}",
        g.mu,
        g.sigma,
        g.orientation_used,
        g.b,
        g.conclusion()
    )
}

pub fn render_small(x: &SmallExample) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "correction terms of -Y(-1;(3,1),(3,1),(5,2)): {}",
        list(&x.table.sorted_values())
    )
    .unwrap();
    writeln!(out, "reduced rank-2 forms of determinant 3:").unwrap();
    for (f, sq) in &x.forms {
        writeln!(out, "  {:?}  sq {}", f.q.rows(), list(sq)).unwrap();
    }
    writeln!(out, "check_bound(b=2): {}", verdict(&x.bound)).unwrap();
    writeln!(out, "{}", genus_line(KNOT_10_145, &x.genus)).unwrap();
    out
}

pub fn render_pretzel(x: &PretzelExample) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "correction terms of the searched cover of {PRETZEL}: {}",
        list(&x.table.sorted_values())
    )
    .unwrap();
    writeln!(out, "value at the spin structure: {}", list(&x.spin_values)).unwrap();
    writeln!(out, "correction terms >= 0: {}", x.nonnegative_terms()).unwrap();
    writeln!(out, "rank-4 unimodular classes: {}", x.unimodular.len()).unwrap();
    writeln!(
        out,
        "rank-4 determinant-25 classes presenting Z/5+Z/5: {}",
        x.forms.len()
    )
    .unwrap();
    for ((f, _), n) in x.forms.iter().zip(x.large_classes()) {
        writeln!(out, "  {:?}  classes with sq+4 >= 0: {n}", f.q.rows()).unwrap();
    }
    writeln!(out, "{}", genus_line(PRETZEL, &x.genus)).unwrap();
    out
}
