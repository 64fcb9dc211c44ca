//! Acceptance suite: one PASS/FAIL line per criterion, then a combined assertion.
//!
//! Run with `cargo test --release -p sharpcert --test acceptance -- --nocapture` to see the
//! lines; optional items print SKIP unless enabled and their input data is present.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sharpcert::bitset::PointSet;
use sharpcert::certify::{run_case, Case, CaseOptions, Mode, VerificationReport};
use sharpcert::designs::{
    golay_witt_design, is_automorphism, mclaughlin_graph, srg_check, steiner_violations, symmetric_design_refutation,
    Design, RefutationOutcome,
};
use sharpcert::geometry::{
    elliptic_quadric, nonsingular_lines, quadratic_form, symplectic_generators, Action, SymplecticSpace,
};
use sharpcert::gf::Field;
use sharpcert::linsys::{
    build_full_system, build_h_system, lemma_down_check, local_global_check, solve_integer, solve_mod_p,
    solve_nonneg_integer, EqLabel, ExactSystem, Status, Witness, DEFAULT_BRANCH_BUDGET,
};
use sharpcert::perm::{
    enumerate, induced_action, orbits_on_pairs, read_group_file, standard, sylow_subgroup, GroupEnumeration, GroupSpec,
    Permutation, DEFAULT_ENUMERATION_CAP,
};
use sharpcert::search::{find_sharp_set, verify_sharp_set, SearchOutcome, DEFAULT_NODE_BUDGET};

type Verdict = Result<String, String>;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:.1?}, limit {limit:?}"))
}

fn group(spec: GroupSpec) -> GroupEnumeration {
    enumerate(&spec, DEFAULT_ENUMERATION_CAP).expect("enumerable group")
}

fn subgroup(name: &str, n: usize, gens: &[&[&[u32]]]) -> GroupEnumeration {
    let perms = gens
        .iter()
        .map(|cycles| Permutation::from_cycles(n, cycles).unwrap())
        .collect();
    group(GroupSpec::new(name, n, perms).unwrap())
}

fn load_group(file: &str) -> Option<GroupSpec> {
    read_group_file(&data_dir().join("groups").join(file)).ok().map(|r| r.expect("bundled group file parses"))
}

fn spectrum_total(r: &VerificationReport) -> u64 {
    r.spectrum.values().sum()
}

fn support_within(r: &VerificationReport, allowed: &[usize]) -> Result<(), String> {
    let support = r.support();
    ensure(
        support.iter().all(|s| allowed.contains(s)),
        format!("{}: support {support:?} not within {allowed:?}", r.case),
    )
}

fn cross_checks_agree(r: &VerificationReport) -> Result<(), String> {
    match r.cross_checks.iter().find(|c| !c.agrees) {
        Some(c) => Err(format!("{}: cross-check `{}` disagrees ({})", r.case, c.label, c.detail)),
        None => Ok(()),
    }
}

fn witt_design() -> Verdict {
    let start = Instant::now();
    let w = golay_witt_design();
    ensure(w.v == 23 && w.k == 7 && w.blocks.len() == 253, format!("{} blocks", w.blocks.len()))?;
    let mut covered: BTreeMap<[usize; 4], u32> = BTreeMap::new();
    for b in &w.blocks {
        let p: Vec<usize> = b.iter().collect();
        ensure(p.len() == 7, "block of wrong size")?;
        for i in 0..7 {
            for j in i + 1..7 {
                for k in j + 1..7 {
                    for l in k + 1..7 {
                        *covered.entry([p[i], p[j], p[k], p[l]]).or_default() += 1;
                    }
                }
            }
        }
    }
    ensure(covered.len() == 8855, format!("{} distinct 4-subsets covered", covered.len()))?;
    ensure(covered.values().all(|&c| c == 1), "some 4-subset covered twice")?;
    ensure(steiner_violations(&w, 4) == 0, "library Steiner check disagrees")?;
    let mut sizes = BTreeSet::new();
    for (i, a) in w.blocks.iter().enumerate() {
        for b in &w.blocks[i + 1..] {
            sizes.insert(a.iter().filter(|&x| b.contains(x)).count());
        }
    }
    ensure(sizes.iter().all(|s| [1, 3].contains(s)), format!("intersections {sizes:?}"))?;
    within(start, Duration::from_secs(10), "construction")?;
    Ok(format!("253 blocks, 8855 4-subsets once each, intersections {sizes:?}, {:.1?}", start.elapsed()))
}

fn m22_certificate() -> Verdict {
    let start = Instant::now();
    let family = run_case(&Case::M22, &CaseOptions::default()).map_err(|e| e.to_string())?;
    ensure(family.mode == Mode::Family, "family run did not use family mode")?;
    ensure(
        (family.b_size, family.c_size, family.p) == (7, 15, 2),
        format!("|B|={} |C|={} p={}", family.b_size, family.c_size, family.p),
    )?;
    ensure(spectrum_total(&family) == 176, format!("{} family members", spectrum_total(&family)))?;
    support_within(&family, &[0, 4, 6])?;
    ensure(family.is_refuted(), "family mode not refuted")?;

    let Some(spec) = load_group("m22.grp") else {
        return Err("data/groups/m22.grp missing".into());
    };
    let opts = CaseOptions {
        m22_generators: Some(spec),
        enumerate_group: true,
        ..Default::default()
    };
    let full = run_case(&Case::M22, &opts).map_err(|e| e.to_string())?;
    ensure(full.mode == Mode::Enumerated, "generator run did not enumerate")?;
    ensure(spectrum_total(&full) == 443_520, format!("{} elements scanned", spectrum_total(&full)))?;
    support_within(&full, &[0, 4, 6])?;
    ensure(full.is_refuted(), "enumerated mode not refuted")?;
    cross_checks_agree(&full)?;
    within(start, Duration::from_secs(120), "M22 runs")?;
    Ok(format!(
        "family {:?}, enumerated {:?}, {:.1?}",
        family.spectrum,
        full.spectrum,
        start.elapsed()
    ))
}

fn mclaughlin() -> Verdict {
    let start = Instant::now();
    let w = golay_witt_design();
    let g = mclaughlin_graph(&w);
    let srg = srg_check(&g, (275, 112, 30, 56));
    ensure(srg.passed, format!("{srg:?}"))?;
    let mut non_edges = 0;
    for i in 0..275 {
        for j in i + 1..275 {
            if g.adjacent(i, j) {
                continue;
            }
            non_edges += 1;
            let common = (0..275).filter(|&k| g.adjacent(i, k) && g.adjacent(j, k)).count();
            ensure(common == 56, format!("pair ({i},{j}) has {common} common neighbours"))?;
        }
    }
    ensure(non_edges == 22_275, format!("{non_edges} non-adjacent pairs"))?;
    let r = run_case(&Case::McLaughlin, &CaseOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.p == 3 && r.is_refuted(), format!("p={} conclusion {:?}", r.p, r.conclusion))?;
    ensure(spectrum_total(&r) == 22_275, "family is not all common neighbourhoods")?;
    support_within(&r, &[0, 3, 6, 12])?;
    cross_checks_agree(&r)?;
    within(start, Duration::from_secs(60), "McLaughlin checks")?;
    Ok(format!("SRG(275,112,30,56), 22275 pairs of 56, spectrum {:?}, {:.1?}", r.spectrum, start.elapsed()))
}

fn symplectic() -> Verdict {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (n, m) in [(2usize, 1u32), (3, 1), (2, 2)] {
        let space = SymplecticSpace::new(n, Field::new(m).unwrap()).unwrap();
        let q = space.q();
        let f = space.field();
        let quadric = elliptic_quadric(&space);
        let formula = (q.pow(2 * n as u32 - 1) - 1) / (q - 1) - q.pow(n as u32 - 1);
        ensure(
            quadric.points.count() as u64 == formula,
            format!("(n,q)=({n},{q}): |E|={} formula {formula}", quadric.points.count()),
        )?;
        let size = space.vector_point_count() as u32;
        for x in 1..=size {
            for y in 1..=size {
                let polar = f.add(
                    f.add(quadratic_form(&space, quadric.delta, x ^ y), quadratic_form(&space, quadric.delta, x)),
                    quadratic_form(&space, quadric.delta, y),
                );
                ensure(polar == space.symplectic_form(x, y), "quadric does not polarize to the form")?;
            }
        }
        for line in nonsingular_lines(&space) {
            let meet = line.points.iter().filter(|&p| quadric.points.contains(p)).count();
            ensure(meet == 0 || meet == 2, format!("nonsingular line meets E in {meet} points"))?;
        }
        for action in [Action::Projective, Action::Vector] {
            let r = run_case(&Case::Sp { n, m, action }, &CaseOptions::default()).map_err(|e| e.to_string())?;
            ensure(r.p == 2 && r.is_refuted(), format!("{} not refuted", r.case))?;
            if action == Action::Vector {
                support_within(&r, &[0, 2 * (q as usize - 1)])?;
            }
            cross_checks_agree(&r)?;
        }
        summary.push(format!("({n},{q}) |E|={formula}"));
    }
    let opts = CaseOptions {
        enumerate_group: true,
        ..Default::default()
    };
    let r = run_case(&Case::Sp { n: 2, m: 1, action: Action::Projective }, &opts).map_err(|e| e.to_string())?;
    ensure(r.mode == Mode::Enumerated && spectrum_total(&r) == 720, "Sp(4,2) not scanned over 720 elements")?;
    ensure(r.is_refuted(), "enumerated Sp(4,2) not refuted")?;
    cross_checks_agree(&r)?;
    within(start, Duration::from_secs(60), "symplectic cases")?;
    Ok(format!("{}, Sp(4,2) enumerated {:?}, {:.1?}", summary.join(" "), r.spectrum, start.elapsed()))
}

fn inversions(g: &Permutation) -> usize {
    let im = g.images();
    (0..im.len())
        .flat_map(|i| (i + 1..im.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| im[i] > im[j])
        .count()
}

fn cycle_parity(g: &Permutation) -> usize {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = g.apply(x);
            }
        }
    }
    (n - cycles) % 2
}

fn alternating() -> Verdict {
    let mut summary = Vec::new();
    for n in [6, 7] {
        let a = group(standard::alternating(n));
        let mut oracle: BTreeMap<usize, u64> = BTreeMap::new();
        for g in a.elements() {
            *oracle.entry(inversions(g)).or_default() += 1;
        }
        ensure(oracle.keys().all(|k| k % 2 == 0), "odd inversion count in A_n")?;
        let r = run_case(&Case::Alt { n }, &CaseOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.b_size == n * (n - 1) / 2 && r.b_size % 2 == 1, format!("|B| = {}", r.b_size))?;
        ensure(spectrum_total(&r) as usize == a.order(), "not every element scanned")?;
        ensure(r.spectrum == oracle, format!("A{n} spectrum differs from inversion histogram"))?;
        ensure(r.is_refuted(), format!("A{n} not refuted"))?;
        cross_checks_agree(&r)?;
        summary.push(format!("A{n}: {} elements, |B|={}", a.order(), r.b_size));
    }
    let s6 = group(standard::symmetric(6));
    ensure(
        s6.elements().iter().all(|g| inversions(g) % 2 == cycle_parity(g)),
        "inversion parity disagrees with cycle parity on S6",
    )?;
    ensure(
        s6.elements().iter().all(|g| inversions(g) == g.inversions()),
        "library inversion count disagrees",
    )?;
    Ok(format!("{}, S6 parity consistent", summary.join(", ")))
}

fn all_ones(system: &ExactSystem, w: &Witness) -> bool {
    w.as_i64().is_some_and(|v| v.iter().all(|&x| x == 1)) && system.check_witness(w)
}

fn solver_coherence() -> Verdict {
    let a6 = group(standard::alternating(6));
    let (_, a6_pairs) = induced_action(&a6, 2).unwrap();
    let sys = build_full_system(&a6_pairs);
    ensure(sys.equation_count() == 900 && sys.variable_count() == 360, "A6 system shape")?;
    ensure(solve_mod_p(&sys, 2).unwrap().status == Status::Infeasible, "A6 on pairs solvable mod 2")?;

    let space = SymplecticSpace::new(2, Field::new(1).unwrap()).unwrap();
    let sp = group(symplectic_generators(&space, Action::Projective));
    ensure(sp.order() == 720 && sp.degree() == 15, "Sp(4,2) on 15 points")?;
    ensure(
        solve_mod_p(&build_full_system(&sp), 2).unwrap().status == Status::Infeasible,
        "Sp(4,2) solvable mod 2",
    )?;

    for spec in [standard::cyclic(5), standard::cyclic(6)] {
        let g = group(spec);
        let sys = build_full_system(&g);
        for p in [2, 3, 5, 7] {
            let out = solve_mod_p(&sys, p).unwrap();
            let w = out.witness.as_ref().ok_or(format!("{} unsolvable mod {p}", g.name()))?;
            ensure(all_ones(&sys, w), format!("{} witness mod {p} is not all-ones", g.name()))?;
        }
    }
    Ok("A6^(2) and Sp(4,2) infeasible mod 2; C5, C6 all-ones mod 2,3,5,7".into())
}

fn integer_solvers() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = [0usize; 2];
    for i in 0..100 {
        let a = common::random_matrix(&mut rng, 5, 8, -3, 3);
        let b: Vec<i64> = if i % 2 == 0 {
            let x0: Vec<i64> = (0..8).map(|_| rng.gen_range(-3..=3)).collect();
            common::apply(&a, &x0)
        } else {
            (0..5).map(|_| rng.gen_range(-8..=8)).collect()
        };
        let sys = ExactSystem::from_rows(a.clone(), b.clone());
        let out = solve_integer(&sys);
        let brute = common::bounded_integer_solution(&a, &b, 10);
        ensure(
            out.is_solvable() == brute.is_some(),
            format!("instance {i}: solver {:?}, bounded search {}", out.status, brute.is_some()),
        )?;
        if let Some(w) = &out.witness {
            ensure(sys.check_witness(w), format!("instance {i}: witness fails"))?;
        }
        counts[usize::from(out.is_solvable())] += 1;
    }

    let mut nn = [0usize; 2];
    for i in 0..50 {
        let mut a = vec![(0..8).map(|_| rng.gen_range(1..=3)).collect::<Vec<i64>>()];
        a.extend(common::random_matrix(&mut rng, 2, 8, -2, 2));
        let b: Vec<i64> = if i % 2 == 0 {
            let x0: Vec<i64> = (0..8).map(|_| rng.gen_range(0..=2)).collect();
            common::apply(&a, &x0)
        } else {
            vec![rng.gen_range(4..=14), rng.gen_range(-6..=6), rng.gen_range(-6..=6)]
        };
        let sys = ExactSystem::from_rows(a.clone(), b.clone());
        let out = solve_nonneg_integer(&sys, DEFAULT_BRANCH_BUDGET);
        ensure(out.status != Status::UnknownBudget, format!("nonneg instance {i}: budget exhausted"))?;
        let brute = common::nonneg_solution_exhaustive(&a, &b);
        ensure(
            out.is_solvable() == brute.is_some(),
            format!("nonneg instance {i}: solver {:?}, enumeration {}", out.status, brute.is_some()),
        )?;
        if let Some(w) = &out.witness {
            ensure(sys.check_witness(w), format!("nonneg instance {i}: witness fails"))?;
            ensure(w.as_i64().unwrap().iter().all(|&x| x >= 0), "negative entry in nonneg witness")?;
        }
        nn[usize::from(out.is_solvable())] += 1;
    }
    Ok(format!(
        "Z: {} solvable / {} infeasible of 100; Z>=0: {} / {} of 50",
        counts[1], counts[0], nn[1], nn[0]
    ))
}

/// `a_i(g)` straight from the definition, indexed by orbit number.
fn orbit_counts(orbit_of: &dyn Fn(usize, usize) -> usize, orbits: usize, g: &Permutation) -> Vec<i64> {
    let mut out = vec![0; orbits];
    for w in 0..g.degree() {
        out[orbit_of(w, g.apply(w))] += 1;
    }
    out
}

fn h_system_checks(g: &GroupEnumeration, h: &GroupEnumeration) -> Result<usize, String> {
    let n = g.degree();
    let orbits = orbits_on_pairs(h);
    let lookup = |a: usize, b: usize| orbits.orbit_of(a, b);
    let sizes: Vec<usize> = orbits.orbits().iter().map(|o| o.len()).collect();
    ensure(sizes.iter().sum::<usize>() == n * n, "orbits do not partition the cells")?;
    for x in g.elements() {
        let ax = orbit_counts(&lookup, orbits.len(), x);
        ensure(ax.iter().sum::<i64>() == n as i64, "sum of a_i(g) is not n")?;
        for y in h.elements() {
            let conj = y.inverse().then(x).then(y);
            ensure(
                orbit_counts(&lookup, orbits.len(), &conj) == ax,
                format!("a_i not constant on an {}-class", h.name()),
            )?;
        }
    }
    let sys = build_h_system(g, h).map_err(|e| e.to_string())?;
    ensure(sys.equation_count() == orbits.len(), "equation count is not the orbit count")?;
    let class_total: usize = sys.vars.iter().map(|v| v.class_size).sum();
    ensure(class_total == g.order(), "class sizes do not sum to |G|")?;
    for (j, var) in sys.vars.iter().enumerate() {
        let expected = orbit_counts(&lookup, orbits.len(), &g.elements()[var.element]);
        for (row, label) in sys.eqs.iter().enumerate() {
            let EqLabel::Orbit { index, size } = *label else {
                return Err("collapsed system without orbit labels".into());
            };
            ensure(sys.rows[row][j] == expected[index], "coefficient differs from a_i(g)")?;
            ensure(sys.rhs[row] == size as i64 && size == sizes[index], "right side is not the orbit size")?;
        }
    }
    Ok(orbits.len())
}

fn h_systems() -> Verdict {
    let s3 = group(standard::symmetric(3));
    let s4 = group(standard::symmetric(4));
    let a4 = group(standard::alternating(4));
    let triv = |n| group(standard::trivial(n));
    let s3_c2 = subgroup("<(01)>", 3, &[&[&[0, 1]]]);
    let s3_c3 = subgroup("<(012)>", 3, &[&[&[0, 1, 2]]]);
    let k_small = subgroup("<(01)(23)>", 4, &[&[&[0, 1], &[2, 3]]]);
    let v4 = subgroup("V4", 4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
    let c3 = subgroup("<(012)>", 4, &[&[&[0, 1, 2]]]);
    let d8 = sylow_subgroup(&s4, 2).map_err(|e| e.to_string())?;

    let mut orbit_counts = Vec::new();
    for (g, subs) in [
        (&s3, vec![&s3_c2, &s3_c3]),
        (&s4, vec![&k_small, &v4, &c3, &d8]),
        (&a4, vec![&k_small, &v4, &c3]),
    ] {
        for h in subs {
            orbit_counts.push(h_system_checks(g, h)?);
        }
    }

    let chains = [
        (&s3, triv(3), s3_c3.clone()),
        (&s4, triv(4), k_small.clone()),
        (&s4, k_small.clone(), v4.clone()),
        (&s4, v4.clone(), d8.clone()),
        (&a4, k_small.clone(), v4.clone()),
        (&a4, triv(4), c3.clone()),
    ];
    for (g, u, v) in &chains {
        let r = lemma_down_check(g, u, v).map_err(|e| e.to_string())?;
        ensure(!r.violation, format!("downward implication fails for {} <= {}", u.name(), v.name()))?;
    }

    let s4_c3 = sylow_subgroup(&s4, 3).map_err(|e| e.to_string())?;
    let a4_c3 = sylow_subgroup(&a4, 3).map_err(|e| e.to_string())?;
    for (g, subs) in [
        (&s3, vec![(2, &s3_c3), (3, &s3_c2)]),
        (&s4, vec![(2, &s4_c3), (3, &d8)]),
        (&a4, vec![(2, &a4_c3), (3, &v4)]),
    ] {
        let r = local_global_check(g, &subs).map_err(|e| e.to_string())?;
        ensure(
            !r.equivalence_violation && !r.lifting_violation,
            format!("local-global violation on {}: {r:?}", g.name()),
        )?;
    }
    Ok(format!(
        "9 (G, H) pairs with orbit counts {orbit_counts:?}, {} nested chains, 3 local-global runs",
        chains.len()
    ))
}

/// Optional: the collapsed-system protocol on M12 acting on ordered pairs, `H` a Sylow
/// 2-subgroup. Runs only with `SHARPCERT_M12=1` and the generator file present.
fn m12_protocol() -> Result<Verdict, &'static str> {
    if std::env::var("SHARPCERT_M12").map_or(true, |v| v != "1") {
        return Err("set SHARPCERT_M12=1 to run (several minutes)");
    }
    let spec = load_group("m12.grp").ok_or("data/groups/m12.grp absent")?;
    Ok((|| {
        let start = Instant::now();
        let m12 = group(spec);
        ensure(m12.order() == 95_040, "M12 order")?;
        let (_, g) = induced_action(&m12, 2).map_err(|e| e.to_string())?;
        let h = sylow_subgroup(&g, 2).map_err(|e| e.to_string())?;
        ensure(h.order() == 64, format!("Sylow 2-subgroup of order {}", h.order()))?;
        let sys = build_h_system(&g, &h).map_err(|e| e.to_string())?;
        let out = solve_integer(&sys);
        if let Some(w) = &out.witness {
            ensure(sys.check_witness(w), "M12 witness fails")?;
        }
        within(start, Duration::from_secs(600), "M12 protocol")?;
        Ok(format!(
            "132 cells, |H| = 64: {} equations, {} unknowns, integral {:?}, {:.1?}",
            sys.equation_count(),
            sys.variable_count(),
            out.status,
            start.elapsed()
        ))
    })())
}

fn fano() -> Design {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let blocks = lines.iter().map(|l| PointSet::from_points(7, l.iter().copied())).collect();
    Design::new("fano", 7, 3, blocks).unwrap()
}

fn pairs_covered_once(set: &[&Permutation], n: usize) -> bool {
    let mut hits = BTreeMap::new();
    for g in set {
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    *hits.entry((a, b, g.apply(a), g.apply(b))).or_insert(0) += 1;
                }
            }
        }
    }
    hits.len() == (n * (n - 1)).pow(2) && hits.values().all(|&c| c == 1)
}

fn sharp_search() -> Verdict {
    let s5 = group(standard::symmetric(5));
    let out = find_sharp_set(&s5, 2, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    let set = out.found().ok_or(format!("no sharply 2-transitive set in S5: {out:?}"))?;
    ensure(set.elements.len() == 20, format!("set of size {}", set.elements.len()))?;
    ensure(verify_sharp_set(&s5, &set.elements, 2).unwrap(), "verify_sharp_set rejects the witness")?;
    let members: Vec<&Permutation> = set.elements.iter().map(|&i| &s5.elements()[i]).collect();
    ensure(pairs_covered_once(&members, 5), "independent pair count rejects the witness")?;

    let spec = load_group("fano_stab.grp").ok_or("data/groups/fano_stab.grp missing")?;
    let stab = group(spec);
    ensure(stab.order() == 24 && stab.degree() == 6, "Fano stabilizer shape")?;
    let plane = fano();
    for g in stab.elements() {
        let lifted = Permutation::new(std::iter::once(0).chain(g.images().iter().map(|&x| x + 1)).collect()).unwrap();
        ensure(is_automorphism(&plane, &lifted), "stabilizer element is not a Fano automorphism")?;
    }
    let out = find_sharp_set(&stab, 1, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    let SearchOutcome::ExhaustiveNone { nodes } = out else {
        return Err(format!("Fano stabilizer search: {out:?}"));
    };
    Ok(format!("S5: 20-element sharply 2-transitive set; Fano stabilizer: none ({nodes} nodes)"))
}

fn symmetric_designs() -> Verdict {
    for (v, k, l) in [(7, 3, 1), (11, 5, 2)] {
        let t = symmetric_design_refutation(v, k, l).map_err(|e| e.to_string())?;
        let RefutationOutcome::RefutedNonIntegral { step } = t.outcome else {
            return Err(format!("({v},{k},{l}): {:?}", t.outcome));
        };
        let s = &t.steps[step - 1];
        ensure(!s.holds && s.detail.contains("not an integer"), format!("({v},{k},{l}) step {s:?}"))?;
        let d = k - l;
        ensure(k % d != 0 || (v - k) % d != 0, format!("({v},{k},{l}) is integral by hand"))?;
    }
    let t = symmetric_design_refutation(4, 3, 2).map_err(|e| e.to_string())?;
    ensure(t.outcome == RefutationOutcome::TrivialDesign, format!("(4,3,2): {:?}", t.outcome))?;
    for (v, k, l) in [(7, 3, 2), (11, 5, 1), (8, 3, 1), (7, 7, 1)] {
        ensure(symmetric_design_refutation(v, k, l).is_err(), format!("({v},{k},{l}) accepted"))?;
    }
    let t = symmetric_design_refutation(16, 6, 2).map_err(|e| e.to_string())?;
    ensure(t.outcome != RefutationOutcome::TrivialDesign, "(16,6,2) treated as trivial")?;
    Ok("(7,3,1) and (11,5,2) non-integral, (4,3,2) trivial, 4 invalid parameter sets rejected".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("Witt design S(4,7,23)", witt_design),
        ("M22 certificate", m22_certificate),
        ("McLaughlin graph certificate", mclaughlin),
        ("symplectic certificates", symplectic),
        ("alternating groups on ordered pairs", alternating),
        ("solver and certificate coherence", solver_coherence),
        ("integer solvers against brute force", integer_solvers),
        ("collapsed systems and subgroup lemmas", h_systems),
        ("sharp-set search oracle", sharp_search),
        ("symmetric-design checker", symmetric_designs),
    ];
    let line = |text: String| {
        let _ = writeln!(std::io::stderr().lock(), "{text}");
    };
    line(String::new());
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        match &verdict {
            Ok(detail) => line(format!("PASS {:>2} {name}: {detail} [{elapsed:.1?}]", i + 1)),
            Err(why) => {
                line(format!("FAIL {:>2} {name}: {why} [{elapsed:.1?}]", i + 1));
                failed.push(i + 1);
            }
        }
    }
    match m12_protocol() {
        Err(why) => line(format!("SKIP  - M12 collapsed-system protocol (optional): {why}")),
        Ok(Ok(detail)) => line(format!("PASS  - M12 collapsed-system protocol (optional): {detail}")),
        Ok(Err(why)) => line(format!("FAIL  - M12 collapsed-system protocol (optional): {why}")),
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
