//! Tabular datasets for the figures, case studies and self-checking
//! reproduction bundles. Serialization lives in the CLI crate; here every
//! cell keeps its exact value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::Result;
use crate::exact::{ExactInt, ExactRatio};
use crate::flopmodel::{
    crossover_power, f1_limit, f2_limit, memory_units_closed, memory_units_recurrence, naive_flops,
    one_step_limit, one_step_ratio, r_limit, ratio_f1, ratio_f2, ratio_r, strassen_flops,
};
use crate::params::{
    average_limit, best_pow2_cutoff, ceil_log2, expected_ratio_partial, interval_stats,
    is_best_case_order, optimal_params, rho, strassen_params, worst_case_bound, worst_case_check,
    ParamChoice, Strategy,
};

/// Significant digits of every decimal rendering.
pub const DECIMAL_DIGITS: u32 = 17;

/// Bytes per unit of memory (one `f64`).
pub const BYTES_PER_UNIT: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Empty,
    Int(ExactInt),
    Ratio(ExactRatio),
    /// Rendered with `digits` significant digits, rounded half-to-even.
    Decimal {
        value: ExactRatio,
        digits: u32,
    },
    Text(String),
    Check(bool),
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Cell::Int(v.into())
    }

    pub fn decimal(value: &ExactRatio) -> Self {
        Cell::Decimal {
            value: value.clone(),
            digits: DECIMAL_DIGITS,
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Empty => String::new(),
            Cell::Int(v) => v.to_string(),
            Cell::Ratio(r) => r.to_string(),
            Cell::Decimal { value, digits } => value.to_decimal(*digits),
            Cell::Text(s) => s.clone(),
            Cell::Check(true) => "pass".to_string(),
            Cell::Check(false) => "fail".to_string(),
        }
    }

    /// Exact value carried by the cell, if any.
    pub fn exact(&self) -> Option<ExactRatio> {
        match self {
            Cell::Int(v) => Some(ExactRatio::from_integer(v.clone())),
            Cell::Ratio(r) => Some(r.clone()),
            _ => None,
        }
    }
}

/// One labelled row; columns keep insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub columns: Vec<(String, Cell)>,
}

impl TableRow {
    pub fn new(label: impl Into<String>) -> Self {
        TableRow {
            label: label.into(),
            columns: Vec::new(),
        }
    }

    pub fn with(mut self, name: &str, cell: Cell) -> Self {
        self.columns.push((name.to_string(), cell));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Cell> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

/// A named set of rows. The header is `label` followed by every column
/// name in order of first appearance; absent cells render empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn new(name: impl Into<String>, rows: Vec<TableRow>) -> Self {
        Table {
            name: name.into(),
            rows,
        }
    }

    pub fn columns(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for row in &self.rows {
            for (name, _) in &row.columns {
                if !names.contains(name) {
                    names.push(name.clone());
                }
            }
        }
        names
    }

    /// Rendered cells, one vector per row, aligned with `label` + [`Table::columns`].
    pub fn rendered_rows(&self) -> Vec<Vec<String>> {
        let columns = self.columns();
        self.rows
            .iter()
            .map(|row| {
                let mut out = Vec::with_capacity(columns.len() + 1);
                out.push(row.label.clone());
                out.extend(
                    columns
                        .iter()
                        .map(|c| row.get(c).map(Cell::render).unwrap_or_default()),
                );
                out
            })
            .collect()
    }

    pub fn checks(&self) -> impl Iterator<Item = (&TableRow, bool)> {
        self.rows.iter().filter_map(|row| match row.get("check") {
            Some(Cell::Check(ok)) => Some((row, *ok)),
            _ => None,
        })
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks().all(|(_, ok)| ok)
    }
}

/// A claim row: `claim`, `expected`, `computed`, optional `tolerance`, and
/// a pass/fail `check`.
fn check(
    label: &str,
    expected: Cell,
    computed: Cell,
    tolerance: Option<&ExactRatio>,
    ok: bool,
) -> TableRow {
    TableRow::new(label)
        .with("expected", expected)
        .with("computed", computed)
        .with(
            "tolerance",
            tolerance.map_or(Cell::Empty, |t| Cell::Ratio(t.clone())),
        )
        .with("check", Cell::Check(ok))
}

fn exact_check(label: &str, expected: ExactRatio, computed: ExactRatio) -> TableRow {
    let ok = expected == computed;
    check(
        label,
        Cell::Ratio(expected),
        Cell::Ratio(computed),
        None,
        ok,
    )
}

fn within_check(
    label: &str,
    expected: ExactRatio,
    computed: ExactRatio,
    tol: &ExactRatio,
) -> TableRow {
    let ok = computed.within(&expected, tol);
    check(
        label,
        Cell::Ratio(expected),
        Cell::Ratio(computed),
        Some(tol),
        ok,
    )
}

fn int_check(label: &str, expected: impl Into<BigInt>, computed: impl Into<BigInt>) -> TableRow {
    let (e, c) = (expected.into(), computed.into());
    let ok = e == c;
    check(label, Cell::Int(e), Cell::Int(c), None, ok)
}

fn flag_check(label: &str, ok: bool) -> TableRow {
    check(
        label,
        Cell::text("true"),
        Cell::text(if ok { "true" } else { "false" }),
        None,
        ok,
    )
}

/// `(j, F_S(2^j, 10 - j))` for `j = 0..=10`: every power-of-two cutoff on
/// order 1024.
pub fn figure1_data() -> Vec<(u32, ExactInt)> {
    (0..=10)
        .map(|j| (j, strassen_flops(1 << j, 10 - j).unwrap()))
        .collect()
}

/// `(p, f1(p), f2(p))` for `p = 4..=p_max`.
pub fn figure2_data(p_max: u32) -> Result<Vec<(u32, ExactRatio, ExactRatio)>> {
    if p_max < 4 {
        return Err(crate::error::domain(
            "figure2_data",
            "p_max must be at least 4",
        ));
    }
    (4..=p_max)
        .map(|p| Ok((p, ratio_f1(p)?, ratio_f2(p)?)))
        .collect()
}

fn argmin<T: Ord>(values: impl IntoIterator<Item = (u32, T)>) -> Option<u32> {
    values
        .into_iter()
        .fold(None, |best: Option<(u32, T)>, (i, v)| match best {
            Some((_, ref b)) if *b <= v => best,
            _ => Some((i, v)),
        })
        .map(|(i, _)| i)
}

fn choice_columns(row: TableRow, choice: &ParamChoice) -> TableRow {
    let bytes = &choice.predicted_memory * BYTES_PER_UNIT;
    row.with("m", Cell::int(choice.m))
        .with("k", Cell::int(choice.k))
        .with("n_tilde", Cell::int(choice.n_tilde))
        .with("d", Cell::int(choice.d))
        .with("flops", Cell::Int(choice.predicted_flops.clone()))
        .with("memory_units", Cell::Int(choice.predicted_memory.clone()))
        .with("memory_bytes", Cell::Int(bytes))
}

/// One row describing a single strategy applied to order `n`.
pub fn strategy_row(n: u64, strategy: Strategy) -> Result<TableRow> {
    let choice = strategy.choose(n)?;
    let optimal = optimal_params(n)?;
    let ratio = ExactRatio::new(choice.predicted_flops.clone(), optimal.predicted_flops)?;
    Ok(choice_columns(
        TableRow::new(strategy.to_string())
            .with("strategy", Cell::text(strategy.to_string()))
            .with("n", Cell::int(n)),
        &choice,
    )
    .with("ratio_to_optimal", Cell::Ratio(ratio.clone()))
    .with("ratio_to_optimal_decimal", Cell::decimal(&ratio)))
}

/// Strategies compared by [`case_report`] for order `n`.
pub fn case_strategies(n: u64) -> Vec<Strategy> {
    let mut out = Vec::new();
    if n >= 16 {
        out.push(Strategy::StrassenOriginal);
    }
    if n.is_power_of_two() {
        let p = n.trailing_zeros();
        if p >= 4 {
            out.push(Strategy::Explicit { m: 16, k: p - 4 });
        }
        if p >= 3 {
            out.push(Strategy::PowTwoCutoff(3));
        }
    } else if ceil_log2(n) >= 3 {
        // pad to the next power of two and cut off at 8
        out.push(Strategy::Explicit {
            m: 8,
            k: ceil_log2(n) - 3,
        });
    }
    if optimal_params(n).is_ok_and(|c| c.k > 0) {
        out.push(Strategy::OptimalSearch);
    }
    out.push(Strategy::NaiveOnly);
    out
}

/// Every applicable strategy for order `n` with its cost and padding.
pub fn case_report(n: u64) -> Result<Table> {
    let rows = case_strategies(n)
        .into_iter()
        .map(|s| strategy_row(n, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table::new(format!("case n={n}"), rows))
}

/// `(k, E_k, |E_k - 49/48|)` for `k = 0..=depth`.
pub fn average_case_report(depth: u32) -> Table {
    let limit = average_limit();
    let rows = (0..=depth)
        .map(|k| {
            let e = expected_ratio_partial(k);
            let dev = e.abs_diff(&limit);
            TableRow::new(format!("k={k}"))
                .with("k", Cell::int(k))
                .with("expected_ratio", Cell::Ratio(e.clone()))
                .with("expected_ratio_decimal", Cell::decimal(&e))
                .with("deviation", Cell::Ratio(dev.clone()))
                .with("deviation_decimal", Cell::decimal(&dev))
        })
        .collect();
    Table::new("average", rows)
}

/// Power-of-two cutoffs on order 1024, the crossover power, the memory
/// rule and the one-step ratio.
pub fn bundle_figure1() -> Table {
    let data = figure1_data();
    let best = argmin(data.iter().map(|(j, f)| (*j, f.clone()))).unwrap();
    let mut rows: Vec<TableRow> = data
        .iter()
        .map(|(j, flops)| {
            TableRow::new(format!("j={j}"))
                .with("j", Cell::int(*j))
                .with("m", Cell::int(1u64 << j))
                .with("k", Cell::int(10 - j))
                .with("flops", Cell::Int(flops.clone()))
                .with("argmin", Cell::text(if *j == best { "*" } else { "" }))
        })
        .collect();

    rows.push(int_check("argmin_j F_S(2^j,10-j)", 3, best));
    rows.push(int_check(
        "F_S(2^10,0) = F_N(1024)",
        naive_flops(1024).unwrap(),
        data[10].1.clone(),
    ));
    for p in 4..=24 {
        rows.push(int_check(
            &format!("best_pow2_cutoff({p})"),
            3,
            best_pow2_cutoff(p).unwrap(),
        ));
    }
    rows.push(int_check("crossover_power", 10, crossover_power()));
    let recurrence_ok = (0..=20).all(|p| memory_units_closed(p) == memory_units_recurrence(p));
    rows.push(flag_check(
        "memory closed form = recurrence, p=0..20",
        recurrence_ok,
    ));
    let bytes = memory_units_closed(10) * BYTES_PER_UNIT;
    rows.push(int_check(
        "memory bytes at 2^10",
        12758009176u64,
        bytes.clone(),
    ));
    let gb = ExactRatio::new(bytes, 1_000_000_000u64).unwrap();
    rows.push(within_check(
        "memory gigabytes at 2^10",
        ExactRatio::new(1276, 100).unwrap(),
        gb,
        &ExactRatio::new(5, 1000).unwrap(),
    ));
    rows.push(within_check(
        "one_step_ratio(2^20) -> 7/8",
        one_step_limit(),
        one_step_ratio(1 << 20).unwrap(),
        &ExactRatio::pow10_neg(5),
    ));
    Table::new("figure1", rows)
}

/// `f1`, `f2` at `n = 2^p`, their printed values, limits and monotonicity.
pub fn bundle_figure2(p_max: u32) -> Result<Table> {
    let data = figure2_data(p_max)?;
    let mut rows: Vec<TableRow> = data
        .iter()
        .map(|(p, f1, f2)| {
            TableRow::new(format!("p={p}"))
                .with("p", Cell::int(*p))
                .with("f1", Cell::Ratio(f1.clone()))
                .with("f1_decimal", Cell::decimal(f1))
                .with("f2", Cell::Ratio(f2.clone()))
                .with("f2_decimal", Cell::decimal(f2))
        })
        .collect();
    let tol = ExactRatio::pow10_neg(8);
    rows.push(exact_check(
        "f1(4)",
        ExactRatio::new(3179, 2624)?,
        ratio_f1(4)?,
    ));
    rows.push(exact_check(
        "f2(4)",
        ExactRatio::new(124, 123)?,
        ratio_f2(4)?,
    ));
    rows.push(within_check(
        "f1(40) -> 3757/3136",
        f1_limit(),
        ratio_f1(40)?,
        &tol,
    ));
    rows.push(within_check(
        "f2(40) -> 148/147",
        f2_limit(),
        ratio_f2(40)?,
        &tol,
    ));
    let decreasing = data.windows(2).all(|w| w[1].1 < w[0].1 && w[1].2 < w[0].2);
    rows.push(flag_check("f1, f2 strictly decreasing", decreasing));
    Ok(Table::new("figure2", rows))
}

/// Exhaustive padding scan of Strassen's rule over `16..=n_max`.
pub fn bundle_worst(n_max: u64) -> Result<Table> {
    let overall = worst_case_check(16, n_max)?;
    let mut rows = Vec::new();
    let mut alpha = 4u32;
    while (1u64 << alpha) <= n_max {
        let lo = 1u64 << alpha;
        let hi = ((1u64 << (alpha + 1)) - 1).min(n_max);
        let scan = worst_case_check(lo, hi)?;
        rows.push(
            TableRow::new(format!("alpha={alpha}"))
                .with("alpha", Cell::int(alpha))
                .with("n_lo", Cell::int(lo))
                .with("n_hi", Cell::int(hi))
                .with("max_ratio", Cell::Ratio(scan.max_ratio.clone()))
                .with("max_ratio_decimal", Cell::decimal(&scan.max_ratio))
                .with("argmax", Cell::text(join(&scan.argmax)))
                .with("min_d", Cell::int(scan.min_d))
                .with("min_d_count", Cell::int(scan.argmin_d.len() as u64)),
        );
        alpha += 1;
    }
    rows.push(exact_check(
        "max n_tilde/n",
        worst_case_bound(),
        overall.max_ratio.clone(),
    ));
    let powers: Vec<u64> = (4..64)
        .map(|p| 1u64 << p)
        .take_while(|&n| n <= n_max)
        .collect();
    rows.push(check(
        "argmax n_tilde/n = powers of two",
        Cell::text(join(&powers)),
        Cell::text(join(&overall.argmax)),
        None,
        powers == overall.argmax,
    ));
    rows.push(flag_check(
        "n+1 <= n_tilde <= 17n/16 for all n",
        overall.bounds_hold,
    ));
    rows.push(flag_check(
        "n_tilde = 17n/16 iff n is a power of two",
        overall.upper_equality_at_powers_of_two,
    ));
    rows.push(flag_check("m in 17..=32 for all n", overall.m_in_range));
    Ok(Table::new("worst", rows))
}

/// Best case `n = 2^p - 1` for `p = 5..=p_max`, `r(p)`, and the unit
/// padding scan over `16..=n_max`.
pub fn bundle_best(p_max: u32, n_max: u64) -> Result<Table> {
    if p_max < 5 {
        return Err(crate::error::domain(
            "bundle_best",
            "p_max must be at least 5",
        ));
    }
    let mut rows = Vec::new();
    let mut previous: Option<ExactRatio> = None;
    let mut decreasing = true;
    let mut unit_padding = true;
    for p in 5..=p_max {
        let n = (1u64 << p) - 1;
        let choice = strassen_params(n)?;
        let r = ratio_r(p)?;
        if let Some(prev) = &previous {
            decreasing &= r < *prev;
        }
        unit_padding &= choice.d == 1;
        rows.push(
            choice_columns(
                TableRow::new(format!("p={p}"))
                    .with("p", Cell::int(p))
                    .with("n", Cell::int(n)),
                &choice,
            )
            .with("flops_cutoff8", Cell::Int(strassen_flops(8, p - 3)?))
            .with("r", Cell::Ratio(r.clone()))
            .with("r_decimal", Cell::decimal(&r)),
        );
        previous = Some(r);
    }
    rows.push(exact_check("r(5)", ExactRatio::new(336, 311)?, ratio_r(5)?));
    rows.push(within_check(
        "r(40) -> 11776/10976",
        r_limit(),
        ratio_r(40)?,
        &ExactRatio::pow10_neg(8),
    ));
    rows.push(flag_check("r strictly decreasing", decreasing));
    rows.push(flag_check("d = 1 at n = 2^p - 1", unit_padding));
    let scan = worst_case_check(16, n_max)?;
    rows.push(int_check("min d over scan", 1u32, scan.min_d));
    rows.push(flag_check(
        "d = 1 iff n = 2^p l - 1, l in 16..=31",
        scan.unit_padding_at_best_case_orders
            && scan.argmin_d.iter().all(|&n| is_best_case_order(n)),
    ));
    Ok(Table::new("best", rows))
}

/// Partial averages `E_k`, interval enumerations for `alpha = 4..=alpha_max`
/// and the `49/48` limit.
pub fn bundle_average(depth: u32, alpha_max: u32) -> Result<Table> {
    let mut rows = average_case_report(depth).rows;
    rows.push(exact_check(
        "E_0 = rho(4)",
        ExactRatio::new(49, 47)?,
        expected_ratio_partial(0),
    ));
    let third = ExactRatio::new(1, 3)?;
    let two_thirds = ExactRatio::new(2, 3)?;
    rows.push(exact_check(
        "E_1 = rho(4)/3 + 2 rho(5)/3",
        third * rho(4)? + two_thirds * rho(5)?,
        expected_ratio_partial(1),
    ));
    for alpha in 4..=alpha_max {
        let stats = interval_stats(alpha, None)?;
        let expected =
            ExactRatio::from_integer(49) * ExactRatio::new(BigInt::from(1u32) << alpha, 32)?;
        rows.push(exact_check(
            &format!("mean n_tilde over I^{alpha} = 49*2^{}", alpha as i64 - 5),
            expected,
            stats.mean_n_tilde.clone(),
        ));
        rows.push(exact_check(
            &format!("rho({alpha}) enumeration"),
            rho(alpha)?,
            stats.rho,
        ));
    }
    rows.push(within_check(
        &format!("E_{depth} -> 49/48"),
        average_limit(),
        expected_ratio_partial(depth),
        &ExactRatio::pow10_neg(6),
    ));
    Ok(Table::new("average", rows))
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_rows() {
        let data = figure1_data();
        assert_eq!(data.len(), 11);
        assert_eq!(data[10].1, BigInt::from(2146435072u64));
        assert_eq!(data[3].1, BigInt::from(1100550336u64));
        assert_eq!(argmin(data.into_iter()), Some(3));
    }

    #[test]
    fn figure2_rows() {
        let data = figure2_data(20).unwrap();
        assert_eq!(data[0].1, ExactRatio::new(3179, 2624).unwrap());
        assert_eq!(data[0].2, ExactRatio::new(124, 123).unwrap());
        let last = data.last().unwrap();
        assert_eq!(last.0, 20);
        assert!(last.1.within(&f1_limit(), &ExactRatio::pow10_neg(4)));
        assert!(last.2.within(&f2_limit(), &ExactRatio::pow10_neg(4)));
        assert!(data.windows(2).all(|w| w[1].1 < w[0].1 && w[1].2 < w[0].2));
        assert!(figure2_data(3).is_err());
    }

    #[test]
    fn case_report_1024() {
        let table = case_report(1024).unwrap();
        let pick = |label: &str| {
            let row = table.rows.iter().find(|r| r.label == label).unwrap();
            (
                row.get("m").unwrap().render(),
                row.get("k").unwrap().render(),
            )
        };
        assert_eq!(pick("strassen"), ("17".into(), "6".into()));
        assert_eq!(pick("explicit:16,6"), ("16".into(), "6".into()));
        assert_eq!(pick("pow2cut:3"), ("8".into(), "7".into()));
        assert_eq!(pick("naive"), ("1024".into(), "0".into()));
        let ratio = |label: &str| {
            table
                .rows
                .iter()
                .find(|r| r.label == label)
                .unwrap()
                .get("ratio_to_optimal")
                .unwrap()
                .exact()
                .unwrap()
        };
        assert_eq!(ratio("strassen"), ratio_f1(10).unwrap());
        assert_eq!(ratio("explicit:16,6"), ratio_f2(10).unwrap());
        assert_eq!(ratio("pow2cut:3"), ExactRatio::one());
    }

    #[test]
    fn case_report_small_and_best_case() {
        let one = case_report(1).unwrap();
        assert_eq!(one.rows.len(), 1);
        assert_eq!(one.rows[0].label, "naive");
        assert_eq!(one.rows[0].get("flops").unwrap().render(), "1");

        let t = case_report(1023).unwrap();
        let strassen = t.rows.iter().find(|r| r.label == "strassen").unwrap();
        assert_eq!(
            strassen.get("flops").unwrap().exact().unwrap(),
            ExactRatio::from_integer(strassen_flops(32, 5).unwrap())
        );
        let padded = t.rows.iter().find(|r| r.label == "explicit:8,7").unwrap();
        assert_eq!(
            padded.get("flops").unwrap().exact().unwrap(),
            ExactRatio::from_integer(strassen_flops(8, 7).unwrap())
        );
    }

    #[test]
    fn average_rows() {
        let t = average_case_report(30);
        assert_eq!(t.rows.len(), 31);
        assert_eq!(t.rows[0].get("expected_ratio").unwrap().render(), "49/47");
        let e1 = ExactRatio::new(1, 3).unwrap() * ExactRatio::new(49, 47).unwrap()
            + ExactRatio::new(2, 3).unwrap() * ExactRatio::new(98, 95).unwrap();
        assert_eq!(
            t.rows[1].get("expected_ratio").unwrap().exact().unwrap(),
            e1
        );
        let devs: Vec<ExactRatio> = t
            .rows
            .iter()
            .map(|r| r.get("deviation").unwrap().exact().unwrap())
            .collect();
        // strictly decreasing from some point on
        let k0 = (0..devs.len() - 1)
            .rev()
            .find(|&i| devs[i + 1] >= devs[i])
            .map_or(0, |i| i + 1);
        assert!(k0 < 10, "k0 = {k0}");
    }

    #[test]
    fn bundles_pass() {
        for table in [
            bundle_figure1(),
            bundle_figure2(20).unwrap(),
            bundle_worst(4096).unwrap(),
            bundle_best(20, 4096).unwrap(),
            bundle_average(30, 12).unwrap(),
        ] {
            assert!(table.checks().count() > 0);
            for (row, ok) in table.checks() {
                assert!(ok, "{}: {}", table.name, row.label);
            }
        }
    }

    #[test]
    fn header_is_union_of_columns() {
        let t = Table::new(
            "t",
            alloc::vec![
                TableRow::new("a").with("x", Cell::int(1)),
                TableRow::new("b").with("check", Cell::Check(false)),
            ],
        );
        assert_eq!(t.columns(), ["x", "check"]);
        assert_eq!(t.rendered_rows()[1], ["b", "", "fail"]);
        assert!(!t.all_checks_pass());
    }
}
