//! Subcommand implementations.

use std::process::ExitCode;

use plurivol::catalog::{
    compare_table, embedded_known_typos, embedded_reference, enumerate_classes,
    nabla_table as build_table, parse_reference,
};
use plurivol::filters::FilterSet;
use plurivol::rational::parse_rational;
use plurivol::reid::{basket_correction, plurigenus, volume_from_plurigenus, ReducedNablaVector};
use plurivol::search::{admissible_cases, solve_cases, SolutionRecord, PLURIGENUS_TABLE_MAX_M};
use serde_json::{json, Value};

use crate::output;
use crate::parse::parse_basket;
use crate::{CatalogArgs, Format, NablaTableArgs, PlurigeneraArgs, SearchArgs, VerifyArgs};

pub enum CliError {
    /// Bad flags or malformed values: exit 2.
    Usage(String),
    /// The command ran but reported a mismatch or failure: exit 1.
    Failed(String),
}

type CliResult = Result<ExitCode, CliError>;

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn check_r_max(r_max: u32) -> Result<(), CliError> {
    if r_max < 2 {
        return Err(usage(format!("--r-max must be at least 2, got {r_max}")));
    }
    Ok(())
}

pub fn catalog(args: &CatalogArgs) -> CliResult {
    check_r_max(args.r_max)?;
    let classes = enumerate_classes(args.r_max);
    match args.format {
        Format::Csv => {
            println!("row,r,a,b");
            for (i, q) in classes.iter().enumerate() {
                println!(
                    "{},{},{},{}",
                    i + 1,
                    q.index(),
                    q.weight(),
                    q.inverse_weight()
                );
            }
        }
        Format::Json => {
            let rows: Vec<Value> = classes
                .iter()
                .enumerate()
                .map(|(i, q)| {
                    json!({"row": i + 1, "r": q.index(), "a": q.weight(), "b": q.inverse_weight()})
                })
                .collect();
            println!("{}", Value::Array(rows));
        }
    }
    eprintln!("{} classes with r <= {}", classes.len(), args.r_max);
    Ok(ExitCode::SUCCESS)
}

pub fn nabla_table(args: &NablaTableArgs) -> CliResult {
    check_r_max(args.r_max)?;
    let table = build_table(args.r_max);

    if !args.compare {
        match args.format {
            Format::Csv => {
                println!("{}", output::TABLE_CSV_HEADER);
                for entry in &table {
                    println!("{}", output::table_csv_row(entry));
                }
            }
            Format::Json => {
                let rows: Vec<Value> = table.iter().map(output::table_json_row).collect();
                println!("{}", Value::Array(rows));
            }
        }
        eprintln!("{} rows", table.len());
        return Ok(ExitCode::SUCCESS);
    }

    let reference = match &args.reference {
        None => embedded_reference(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let (rows, issues) = parse_reference(&text);
            for issue in &issues {
                eprintln!("{}: {issue}", path.display());
            }
            rows
        }
    };
    let diffs = compare_table(&table, &reference, &embedded_known_typos());
    match args.format {
        Format::Csv => {
            println!("{}", output::DIFF_CSV_HEADER);
            for diff in &diffs {
                println!("{}", output::diff_csv_row(diff));
            }
        }
        Format::Json => {
            let rows: Vec<Value> = diffs.iter().map(output::diff_json_row).collect();
            println!("{}", Value::Array(rows));
        }
    }
    let known = diffs.iter().filter(|d| d.known_typo).count();
    eprintln!(
        "{} differing cells ({} flagged as known typos) across {} rows",
        diffs.len(),
        known,
        table.len()
    );
    if diffs.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn parse_p12_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("--p12 entries must be integers, got `{part}`")))
        })
        .collect()
}

fn emit_records(records: &[&SolutionRecord], format: Format) {
    match format {
        Format::Csv => {
            println!("{}", output::SOLUTION_CSV_HEADER);
            for record in records {
                println!("{}", output::solution_csv_row(record));
            }
        }
        Format::Json => {
            let rows: Vec<Value> = records.iter().map(|r| output::solution_json(r)).collect();
            println!("{}", Value::Array(rows));
        }
    }
}

pub fn search(args: &SearchArgs) -> CliResult {
    check_r_max(args.r_max)?;
    if args.threads == 0 {
        return Err(usage("--threads must be at least 1"));
    }
    let filters = FilterSet::from_names(&args.filters).map_err(|e| usage(e.to_string()))?;
    let catalog = build_table(args.r_max);

    if let Some(target_text) = &args.target {
        return search_explicit_target(args, target_text, &filters, &catalog);
    }

    let p12_values = parse_p12_list(&args.p12)?;
    let cases = admissible_cases(args.chi, &p12_values).map_err(|e| usage(e.to_string()))?;
    let records = solve_cases(&cases, &catalog, &filters, args.threads)
        .map_err(|e| CliError::Failed(e.to_string()))?;

    let selected: Vec<&SolutionRecord> = if args.all {
        records.iter().collect()
    } else if args.min {
        let best = records
            .iter()
            .filter(|r| r.survives)
            .min_by(|x, y| x.k3.cmp(&y.k3).then_with(|| x.basket.cmp(&y.basket)));
        match best {
            Some(record) => vec![record],
            None => {
                return Err(CliError::Failed(
                    "no record survives the enabled filters".into(),
                ))
            }
        }
    } else {
        records.iter().filter(|r| r.survives).collect()
    };

    emit_records(&selected, args.format);
    eprintln!(
        "{} cases, {} baskets enumerated, {} surviving, {} emitted",
        cases.len(),
        records.len(),
        records.iter().filter(|r| r.survives).count(),
        selected.len()
    );
    Ok(ExitCode::SUCCESS)
}

/// `--target a,b,c,d`: enumerate one explicit reduced target. The volume
/// is still solved from `P_2 = 0` with the given chi; no case profile is
/// attached.
fn search_explicit_target(
    args: &SearchArgs,
    target_text: &str,
    filters: &FilterSet,
    catalog: &[plurivol::catalog::CatalogEntry],
) -> CliResult {
    let components: Vec<i64> = target_text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("--target entries must be integers, got `{part}`")))
        })
        .collect::<Result<_, _>>()?;
    let components: [i64; 4] = components
        .try_into()
        .map_err(|_| usage("--target needs exactly four components"))?;
    let target = ReducedNablaVector::from_integers(components);
    let baskets =
        plurivol::search::enumerate_baskets(&target, catalog).map_err(|e| usage(e.to_string()))?;

    let mut rows_csv = Vec::new();
    let mut rows_json = Vec::new();
    for basket in &baskets {
        let k3 = volume_from_plurigenus(args.chi, basket, 2, 0);
        let l2 = basket_correction(basket, 2);
        let plurigenera: Vec<_> = (2..=PLURIGENUS_TABLE_MAX_M)
            .map(|m| (m, plurigenus(args.chi, &k3, basket, m)))
            .collect();
        let verdicts = filters.evaluate(args.chi, basket, &k3, &plurigenera);
        let survives = verdicts.iter().all(|v| v.passed);
        match args.format {
            Format::Csv => rows_csv.push(format!(
                "{},{},{},{}",
                basket,
                output::rational_csv(&k3),
                survives,
                verdicts
                    .iter()
                    .filter(|v| !v.passed)
                    .map(|v| v.name.as_str())
                    .collect::<Vec<_>>()
                    .join(";")
            )),
            Format::Json => rows_json.push(json!({
                "target": components.to_vec(),
                "basket": basket
                    .entries()
                    .iter()
                    .map(|(q, m)| json!({"r": q.index(), "a": q.weight(), "mult": m}))
                    .collect::<Vec<_>>(),
                "k3": output::rational_json(&k3),
                "l2": output::rational_json(&l2),
                "survives": survives,
                "filter_verdicts": output::verdicts_json(&verdicts),
            })),
        }
    }
    match args.format {
        Format::Csv => {
            println!("basket,k3,survives,failed_filters");
            for row in rows_csv {
                println!("{row}");
            }
        }
        Format::Json => println!("{}", Value::Array(rows_json)),
    }
    eprintln!(
        "target {:?}: {} baskets enumerated",
        components,
        baskets.len()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn plurigenera(args: &PlurigeneraArgs) -> CliResult {
    let basket = parse_basket(&args.basket).map_err(|e| usage(format!("--basket {e}")))?;
    if args.max_m < 2 {
        return Err(usage("--max-m must be at least 2"));
    }
    let k3 = volume_from_plurigenus(args.chi, &basket, 2, args.p2);
    let l2 = basket_correction(&basket, 2);
    let table: Vec<_> = (2..=args.max_m)
        .map(|m| (m, plurigenus(args.chi, &k3, &basket, m)))
        .collect();
    match args.format {
        Format::Csv => {
            println!("key,value");
            println!("k3,{}", output::rational_csv(&k3));
            println!("l2,{}", output::rational_csv(&l2));
            for (m, p) in &table {
                println!("P{m},{}", output::rational_csv(p));
            }
        }
        Format::Json => {
            let mut plurigenera = serde_json::Map::new();
            for (m, p) in &table {
                plurigenera.insert(m.to_string(), Value::String(p.to_string()));
            }
            println!(
                "{}",
                json!({
                    "k3": output::rational_json(&k3),
                    "l2": output::rational_json(&l2),
                    "plurigenera": Value::Object(plurigenera),
                })
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    let basket = parse_basket(&args.basket).map_err(|e| usage(format!("--basket {e}")))?;
    let expected_k3 = parse_rational(&args.k3)
        .map_err(|_| usage(format!("--k3 `{}` is not a rational", args.k3)))?;
    let filters = FilterSet::from_names(&args.filters).map_err(|e| usage(e.to_string()))?;

    let k3 = volume_from_plurigenus(args.chi, &basket, 2, args.p2);
    let plurigenera: Vec<_> = (2..=PLURIGENUS_TABLE_MAX_M)
        .map(|m| (m, plurigenus(args.chi, &k3, &basket, m)))
        .collect();
    let p12 = plurigenera
        .iter()
        .find(|&&(m, _)| m == 12)
        .map(|(_, p)| p.clone())
        .expect("table covers m = 12");
    let verdicts = filters.evaluate(args.chi, &basket, &k3, &plurigenera);

    let k3_matches = k3 == expected_k3;
    let p12_matches = p12 == plurivol::rational::integer(args.p12);
    let matched = k3_matches && p12_matches;

    match args.format {
        Format::Csv => {
            println!("key,value");
            println!("basket,{basket}");
            println!("k3_computed,{}", output::rational_csv(&k3));
            println!("k3_expected,{}", output::rational_csv(&expected_k3));
            println!("p12_computed,{}", output::rational_csv(&p12));
            println!("p12_expected,{}", args.p12);
            println!("match,{matched}");
            for v in &verdicts {
                println!(
                    "filter_{},{}",
                    v.name,
                    if v.passed { "pass" } else { "fail" }
                );
            }
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "basket": basket
                        .entries()
                        .iter()
                        .map(|(q, m)| json!({"r": q.index(), "a": q.weight(), "mult": m}))
                        .collect::<Vec<_>>(),
                    "k3_computed": output::rational_json(&k3),
                    "k3_expected": output::rational_json(&expected_k3),
                    "p12_computed": Value::String(p12.to_string()),
                    "p12_expected": args.p12,
                    "match": matched,
                    "filter_verdicts": output::verdicts_json(&verdicts),
                })
            );
        }
    }
    if matched {
        eprintln!("verified: K^3 = {k3} and P_12 = {p12}");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("mismatch: computed K^3 = {k3}, P_12 = {p12}");
        Ok(ExitCode::from(1))
    }
}
