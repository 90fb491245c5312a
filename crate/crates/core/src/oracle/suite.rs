use rayon::prelude::*;

use super::checks::*;
use super::{Result, VerificationReport};
use crate::group::{alternating, cyclic, symmetric, Atom, Caps, GroupExpr, PermGroup};
use crate::socle::{builtin_table, is_prime, parse_socle_spec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Groups of order at most 64, plus `S3` and the small `C_p^n`.
    Quick,
    /// Adds `A5`, `S3 x A5`, the `A5^2` complement count and `C_p^n` up to
    /// order 256.
    Full,
}

type Job = Box<dyn Fn(&Caps) -> Result<VerificationReport> + Send + Sync>;

/// Runs every job of the suite, in parallel, returning reports in a fixed
/// order. A job that errors (a cap, say) becomes a failed report.
pub fn run_suite(suite: Suite, caps: &Caps) -> Vec<VerificationReport> {
    let jobs = jobs(suite);
    jobs.par_iter()
        .map(|(subject, job)| job(caps).unwrap_or_else(|e| VerificationReport::errored(subject.clone(), e)))
        .collect()
}

/// Every product of `C_n (n >= 2)`, `S_n (n >= 3)` and `A_n (n >= 3)` of
/// order at most `max_order`, each factor list nondecreasing.
pub fn product_corpus(max_order: usize) -> Vec<GroupExpr> {
    let mut atoms: Vec<Atom> = (2..=max_order).map(Atom::Cyclic).collect();
    for n in 3.. {
        let s = Atom::Symmetric(n);
        if s.order().is_none_or(|o| o / 2 > max_order) {
            break;
        }
        atoms.push(s);
        atoms.push(Atom::Alternating(n));
    }
    atoms.retain(|a| a.order().is_some_and(|o| o <= max_order));
    let mut out = Vec::new();
    extend_corpus(&atoms, 0, 1, max_order, &mut Vec::new(), &mut out);
    out
}

fn extend_corpus(
    atoms: &[Atom],
    from: usize,
    order: usize,
    max_order: usize,
    current: &mut Vec<(Atom, u32)>,
    out: &mut Vec<GroupExpr>,
) {
    for (i, &atom) in atoms.iter().enumerate().skip(from) {
        let o = atom.order().expect("filtered");
        if order * o > max_order {
            continue;
        }
        match current.last_mut() {
            Some((last, e)) if *last == atom => *e += 1,
            _ => current.push((atom, 1)),
        }
        out.push(GroupExpr { factors: current.clone() });
        extend_corpus(atoms, i, order * o, max_order, current, out);
        match current.last_mut() {
            Some((_, e)) if *e > 1 => *e -= 1,
            _ => {
                current.pop();
            }
        }
    }
}

/// `(p, n)` with `p^n <= limit`, `n >= 1`.
pub fn prime_powers(limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut n = 1;
        while q <= limit {
            out.push((p, n));
            q *= p;
            n += 1;
        }
    }
    out
}

fn named(group: PermGroup, name: &str) -> PermGroup {
    group.with_name(name)
}

fn socle_job(text: String) -> (String, Job) {
    let subject = format!("socle {text}");
    let job: Job = Box::new(move |caps: &Caps| {
        let spec = parse_socle_spec(&text, &builtin_table())?;
        verify_socle_formula(&spec, caps)
    });
    (subject, job)
}

fn jobs(suite: Suite) -> Vec<(String, Job)> {
    let full = suite == Suite::Full;
    let mut jobs: Vec<(String, Job)> = Vec::new();
    let mut push = |subject: &str, job: Job| jobs.push((subject.to_owned(), job));

    push("S3", Box::new(|c| verify_known_value(&named(symmetric(3), "S3"), 3, Some(6), c)));
    push("C6", Box::new(|c| verify_known_value(&named(cyclic(6), "C6"), 1, Some(4), c)));
    if full {
        push("A5", Box::new(|c| verify_known_value(&named(alternating(5), "A5"), -60, Some(59), c)));
    }

    push("C2xC3 multiplicative", Box::new(|c| verify_mumult(&cyclic(2), &cyclic(3), 1, c)));
    if full {
        push("C2xA5 multiplicative", Box::new(|c| verify_mumult(&cyclic(2), &named(alternating(5), "A5"), 60, c)));
        push("S3xA5 multiplicative", Box::new(|c| {
            verify_mumult(&named(symmetric(3), "S3"), &named(alternating(5), "A5"), -180, c)
        }));
    }

    let pairs: [(&str, fn() -> PermGroup, &str, fn() -> PermGroup); 4] = [
        ("C3", || cyclic(3), "C3", || cyclic(3)),
        ("C2", || cyclic(2), "C2", || cyclic(2)),
        ("C2", || cyclic(2), "S3", || symmetric(3)),
        ("S3", || symmetric(3), "C3", || cyclic(3)),
    ];
    for (hn, h, kn, k) in pairs {
        push(
            &format!("complements of {hn} in {hn}x{kn}"),
            Box::new(move |c| verify_complement_classification(&named(h(), hn), &named(k(), kn), c)),
        );
    }
    if full {
        push("complements of S3 in S3xA5", Box::new(|c| {
            verify_complement_classification(&named(symmetric(3), "S3"), &named(alternating(5), "A5"), c)
        }));
    }

    for expr in product_corpus(24) {
        let name = expr.to_string();
        push(&format!("crapo {name}"), Box::new(move |c| {
            verify_crapo_all_elements(&expr.build(c.max_order)?, c)
        }));
    }
    if full {
        push("crapo A5", Box::new(|c| verify_crapo_all_elements(&named(alternating(5), "A5"), c)));
    }

    let mut specs = vec!["C2*C3".to_owned(), "C2^2*C3".to_owned()];
    let limit = if full { 256 } else { 64 };
    // C2^8 has over 400000 subgroups, past the default subgroup cap
    specs.extend(prime_powers(limit).into_iter().filter(|&pn| pn != (2, 8)).map(|(p, n)| {
        if n == 1 { format!("C{p}") } else { format!("C{p}^{n}") }
    }));
    if full {
        specs.push("A5".into());
        specs.push("C2*A5".into());
    }
    for text in specs {
        jobs.push(socle_job(text));
    }

    let max_n = if full { 100 } else { 64 };
    jobs.push((format!("cyclic C1..C{max_n}"), Box::new(move |c| verify_cyclic_bridge(max_n, c))));
    if full {
        jobs.push(("A5^2 from complements of the first factor".into(), Box::new(verify_dirprod_constructive)));
    }
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_sorted_products() {
        let names: Vec<String> = product_corpus(8).iter().map(ToString::to_string).collect();
        assert_eq!(
            names,
            ["C2", "C2^2", "C2^3", "C2*C3", "C2*C4", "C2*A3", "C3", "C4", "C5", "C6", "C7", "C8", "S3", "A3"]
        );
        assert!(product_corpus(24).iter().any(|e| e.to_string() == "S4"));
        assert!(product_corpus(24).iter().any(|e| e.to_string() == "A4"));
    }

    #[test]
    fn prime_power_list() {
        assert_eq!(prime_powers(9), [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]);
    }

    #[test]
    fn quick_suite_passes() {
        let reports = run_suite(Suite::Quick, &Caps::default());
        let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
