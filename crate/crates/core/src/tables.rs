//! Reference weight tables for small irreducible sets and paths, and their
//! regeneration from exact counts.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_factored, UniPoly};
use crate::paths::{CentredCatalanSet, MotzkinPath};
use crate::weights::{WeightError, WeightStore};

/// One reference row: key and weight in the notation of
/// [`UniPoly::factored`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub label: &'static str,
    pub key: &'static str,
    pub weight: &'static str,
}

const fn row(label: &'static str, key: &'static str, weight: &'static str) -> ReferenceRow {
    ReferenceRow { label, key, weight }
}

/// Irreducible sets up to reflection, in table order.
pub const SET_TABLE: [ReferenceRow; 13] = [
    row("", "{0,1}", "1"),
    row("", "{-1,0,1}", "(l+1)"),
    row("", "{-1,0,1,2}", "(1/2)(l+1)(l+4)"),
    row("", "{-2,-1,0,1,2}", "(1/12)(l+1)(l+2)(l+6)(l+7)"),
    row("", "{-3,-1,0,1,2}", "(1/6)(l+1)(l+6)(2l+7)"),
    row("", "{-1,0,1,2,3}", "(1/6)(l+1)(l+5)(l+6)"),
    row("", "{-2,-1,0,1,2,3}", "(1/144)(l+1)(l+2)(l+7)(l^3+23l^2+168l+360)"),
    row("", "{-2,-1,0,1,2,4}", "(1/24)(l+1)(l+2)(l+6)(l+7)(l+8)"),
    row("", "{-3,-1,0,1,2,3}", "(1/24)(l+1)(l^4+25l^3+226l^2+864l+1176)"),
    row("", "{-1,0,1,2,3,4}", "(1/24)(l+1)(l+6)(l+7)(l+8)"),
    row("", "{-2,-1,0,1,3,4}", "(1/24)(l+1)(l+6)(3l^2+37l+92)"),
    row("", "{-3,-1,0,1,2,4}", "(1/24)(l+1)(l+6)(5l^2+55l+132)"),
    row("", "{-4,-1,0,1,2,3}", "(1/24)(l+1)(l+6)(l+8)(3l+13)"),
];

/// Irreducible paths of length at most 5. The table identifies them only
/// by picture; the keys are the unique irreducible paths whose length and
/// weight fit each row.
pub const MOTZKIN_TABLE: [ReferenceRow; 9] = [
    row("m1", "F", "2"),
    row("m2", "UD", "(l+1)"),
    row("m3", "UFD", "(l+1)(l+4)"),
    row("m4", "UUDD", "(1/12)(l+1)(l+2)(l+6)(l+7)"),
    row("m5", "UFFD", "(l+1)(l+4)(l+6)"),
    row("m6", "UUFDD", "(1/72)(l+1)(l+2)(l+7)(l^3+23l^2+168l+360)"),
    row("m7", "UUDFD", "(1/12)(l+1)(l+2)(l+6)(l+7)(l+8)"),
    row("m8", "UFUDD", "(1/12)(l+1)(l^4+25l^3+226l^2+864l+1176)"),
    row("m9", "UFFFD", "(l+1)(l+4)(l+6)(l+8)"),
];

impl ReferenceRow {
    pub fn polynomial(&self) -> UniPoly {
        parse_factored(self.weight).expect("reference rows are well formed")
    }
}

/// A regenerated row next to its reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableLine {
    pub label: String,
    pub key: String,
    pub computed: String,
    pub expected: String,
    pub matches: bool,
}

fn line(r: &ReferenceRow, w: &UniPoly) -> TableLine {
    let computed = w.factored();
    TableLine {
        label: r.label.to_string(),
        key: r.key.to_string(),
        matches: computed == r.weight && *w == r.polynomial(),
        computed,
        expected: r.weight.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub sets: Vec<TableLine>,
    pub paths: Vec<TableLine>,
}

impl Tables {
    pub fn all_match(&self) -> bool {
        self.sets.iter().chain(&self.paths).all(|l| l.matches)
    }

    pub fn markdown(&self) -> String {
        let mut out = String::from("| S | w_l(S) |\n|---|---|\n");
        for l in &self.sets {
            out.push_str(&format!("| {} | {} |\n", l.key, l.computed));
        }
        out.push_str("\n| | M | w_l(M) |\n|---|---|---|\n");
        for l in &self.paths {
            out.push_str(&format!("| {} | {} | {} |\n", l.label, l.key, l.computed));
        }
        out
    }
}

/// Recomputes both tables with the store's method.
pub fn regenerate(store: &WeightStore) -> Result<Tables, WeightError> {
    let set_keys: Vec<CentredCatalanSet> = SET_TABLE.iter().map(|r| r.key.parse().expect("valid key")).collect();
    store.precompute(&set_keys)?;
    let sets = SET_TABLE
        .iter()
        .zip(&set_keys)
        .map(|(r, s)| store.set_weight(s).map(|w| line(r, &w)))
        .collect::<Result<_, _>>()?;
    let paths = MOTZKIN_TABLE
        .iter()
        .map(|r| {
            let m: MotzkinPath = r.key.parse().expect("valid key");
            store.motzkin_weight(&m).map(|w| line(r, &w))
        })
        .collect::<Result<_, _>>()?;
    Ok(Tables { sets, paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::weights::Method;

    #[test]
    fn reference_rows_parse() {
        for r in SET_TABLE.iter().chain(&MOTZKIN_TABLE) {
            assert_eq!(r.polynomial().factored(), r.weight, "{}", r.key);
        }
    }

    #[test]
    fn operator_route_reproduces_tables() {
        let t = regenerate(&WeightStore::new(Method::Operator, Limits::default())).unwrap();
        let bad: Vec<_> = t.sets.iter().chain(&t.paths).filter(|l| !l.matches).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(t.markdown().contains("| m9 | UFFFD | (l+1)(l+4)(l+6)(l+8) |"));
    }
}
