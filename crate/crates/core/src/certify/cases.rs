use std::collections::HashMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    verify_certificate_enumerated, verify_certificate_family, verify_certificate_induced, Certificate, CertifyError,
    Closure, Conclusion, CrossCheck, FamilyDescriptor, Mode, VerificationReport,
};
use crate::bitset::PointSet;
use crate::designs::{
    common_neighborhood, golay_witt_design, is_automorphism, mclaughlin_graph, random_automorphism, srg_check, Design,
    Graph, VertexKind, MCL_SPECIAL_POINT,
};
use crate::geometry::{
    elliptic_quadric, nonsingular_lines, symplectic_generators, Action, QuadricData, SymplecticSpace,
};
use crate::gf::Field;
use crate::linsys::{build_full_system, solve_mod_p};
use crate::perm::{enumerate, standard, Arrangements, GroupEnumeration, GroupSpec, Permutation, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Case {
    /// `Sp(2n, 2^m)` on projective points or nonzero vectors.
    Sp { n: usize, m: u32, action: Action },
    M22,
    McLaughlin,
    /// `A_n` on ordered pairs of distinct points.
    Alt { n: usize },
    M23,
}

#[derive(Debug, Clone)]
pub struct CaseOptions {
    /// Generators of M22 on the 22 points of W23 other than the special point.
    pub m22_generators: Option<GroupSpec>,
    /// W23 as loaded from a file; built from the Golay code otherwise.
    pub w23: Option<Design>,
    /// Also scan every element of the group when it can be enumerated.
    pub enumerate_group: bool,
    pub cap: usize,
    /// Full-system infeasibility over `F_p` for enumerated runs whose system is small.
    pub solver_cross_check: bool,
    pub seed: u64,
    /// Irreducible polynomial (as a bitmask) for `GF(2^m)` in the Sp case; the least one otherwise.
    pub field_modulus: Option<u32>,
}

impl Default for CaseOptions {
    fn default() -> Self {
        Self {
            m22_generators: None,
            w23: None,
            enumerate_group: false,
            cap: DEFAULT_ENUMERATION_CAP,
            solver_cross_check: true,
            seed: 0,
            field_modulus: None,
        }
    }
}

const SOLVER_CROSS_CHECK_LIMIT: usize = 5_000_000;

pub fn run_case(case: &Case, opts: &CaseOptions) -> Result<VerificationReport, CertifyError> {
    let start = Instant::now();
    let mut report = match *case {
        Case::Sp { n, m, action } => sp_case(n, m, action, opts)?,
        Case::M22 => m22_case(opts)?,
        Case::McLaughlin => mclaughlin_case(opts)?,
        Case::Alt { n } => alt_case(n, opts)?,
        Case::M23 => m23_case(opts)?,
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn w23(opts: &CaseOptions) -> Design {
    opts.w23.clone().unwrap_or_else(golay_witt_design)
}

/// Solvability of the full system over `F_p`, skipped for large systems.
fn solver_cross_check(group: &GroupEnumeration, p: u64) -> Result<Option<CrossCheck>, CertifyError> {
    let n = group.degree();
    if group.order() * n * n > SOLVER_CROSS_CHECK_LIMIT {
        return Ok(None);
    }
    let out = solve_mod_p(&build_full_system(group), p)?;
    Ok(Some(CrossCheck {
        label: format!("full system infeasible over F_{p}"),
        agrees: !out.is_solvable(),
        detail: format!("{} equations, {} unknowns: {:?}", n * n, group.order(), out.status),
    }))
}

fn modes_agree(enumerated: &VerificationReport, family: &VerificationReport) -> CrossCheck {
    let agrees = enumerated.support() == family.support() && enumerated.conclusion == family.conclusion;
    CrossCheck {
        label: "enumerated and family modes agree".into(),
        agrees,
        detail: format!(
            "supports {:?} and {:?}, conclusions {:?} and {:?}",
            enumerated.support(),
            family.support(),
            enumerated.conclusion,
            family.conclusion
        ),
    }
}

fn sp_case(n: usize, m: u32, action: Action, opts: &CaseOptions) -> Result<VerificationReport, CertifyError> {
    let field = match opts.field_modulus {
        Some(modulus) => Field::with_modulus(m, modulus)?,
        None => Field::new(m)?,
    };
    let space = SymplecticSpace::new(n, field)?;
    let q = space.q();
    let quadric: QuadricData = elliptic_quadric(&space);
    let lines = nonsingular_lines(&space);
    let (b, family): (PointSet, Vec<PointSet>) = match action {
        Action::Projective => (quadric.points.clone(), lines.iter().map(|l| l.points.clone()).collect()),
        Action::Vector => (
            quadric.vectors.clone(),
            lines.iter().map(|l| space.vector_lift(&l.points)).collect(),
        ),
    };
    let c = family[0].clone();
    let label = match action {
        Action::Projective => "projective",
        Action::Vector => "vector",
    };
    let case = format!("sp({},{q})-{label}", 2 * n);
    let cert = Certificate::new(
        b,
        c,
        2,
        FamilyDescriptor::Named {
            name: format!("nonsingular lines ({label})"),
            rule: "all lines <u, v> with <u, v> != 0".into(),
        },
    )?;

    let mut generators: Vec<Permutation> = symplectic_generators(&space, action).generators;
    let frobenius = space.point_permutation(action, space.frobenius());
    generators.push(frobenius.clone());
    let mut report = verify_certificate_family(&case, &family, &cert, Closure::Generators(&generators))?;
    report.assumptions.push(
        "field automorphisms act on points through coordinatewise Frobenius; closure checked for symplectic \
         transvections and that map"
            .into(),
    );

    let expected = crate::geometry::QuadricData::expected_size(n as u32, q);
    let projective_size = quadric.points.count() as u64;
    report.cross_checks.push(CrossCheck {
        label: "quadric size formula".into(),
        agrees: projective_size == expected,
        detail: format!("|E| = {projective_size}, formula {expected}"),
    });
    if action == Action::Vector {
        report.cross_checks.push(CrossCheck {
            label: "vector lift sizes".into(),
            agrees: cert.b.count() as u64 == (q - 1) * projective_size && cert.c.count() as u64 == (q - 1) * (q + 1),
            detail: format!("|E'| = {}, |l'| = {}", cert.b.count(), cert.c.count()),
        });
    }
    report.notes.push(format!("{} nonsingular lines", lines.len()));

    if opts.enumerate_group {
        let mut spec = symplectic_generators(&space, action);
        if m > 1 {
            spec.generators.push(frobenius);
            spec.declared_order = spec.declared_order.map(|o| o * m as u64);
        }
        let group = enumerate(&spec, opts.cap)?;
        group.check_declared_order(&spec)?;
        let cert_g = Certificate {
            family: FamilyDescriptor::EnumeratedGroup {
                name: spec.name.clone(),
                order: group.order(),
            },
            ..cert.clone()
        };
        let mut enumerated = verify_certificate_enumerated(&group, &cert_g)?;
        enumerated.case = case.clone();
        enumerated.cross_checks.push(modes_agree(&enumerated, &report));
        if opts.solver_cross_check {
            enumerated.cross_checks.extend(solver_cross_check(&group, 2)?);
        }
        enumerated.cross_checks.extend(report.cross_checks.clone());
        enumerated.assumptions = report.assumptions.clone();
        enumerated.notes.extend(report.notes.clone());
        return Ok(enumerated);
    }
    Ok(report)
}

/// The 22 points other than the special point, with blocks avoiding it.
fn m22_objects(w23: &Design) -> (Vec<PointSet>, Vec<PointSet>) {
    let q = MCL_SPECIAL_POINT;
    let avoiding: Vec<PointSet> = w23
        .blocks_avoiding(q)
        .into_iter()
        .map(|b| PointSet::from_points(22, b.iter()))
        .collect();
    let complements = avoiding.iter().map(|b| b.complement()).collect();
    (avoiding, complements)
}

/// Extends a permutation of the 22 points by fixing the special point.
fn extend_fixing_special(g: &Permutation) -> Permutation {
    let mut images = g.images().to_vec();
    images.push(MCL_SPECIAL_POINT as u32);
    Permutation::new(images).expect("extension by a fixed point")
}

fn m22_generators_check(spec: &GroupSpec, w23: &Design) -> CrossCheck {
    let ok = spec.degree == 22
        && spec
            .generators
            .iter()
            .all(|g| is_automorphism(w23, &extend_fixing_special(g)));
    CrossCheck {
        label: "M22 generators are W23 automorphisms fixing the special point".into(),
        agrees: ok,
        detail: format!("{} generators of degree {}", spec.generators.len(), spec.degree),
    }
}

fn m22_case(opts: &CaseOptions) -> Result<VerificationReport, CertifyError> {
    let w23 = w23(opts);
    let (avoiding, family) = m22_objects(&w23);
    let b = avoiding[0].clone();
    let c = b.complement();
    let cert = Certificate::new(
        b,
        c,
        2,
        FamilyDescriptor::Named {
            name: "complements of blocks avoiding the special point".into(),
            rule: "22 points minus a block of W23 avoiding point 22".into(),
        },
    )?;
    let mut report = match &opts.m22_generators {
        Some(spec) => {
            let check = m22_generators_check(spec, &w23);
            let mut r = verify_certificate_family("m22", &family, &cert, Closure::Generators(&spec.generators))?;
            if !check.agrees {
                r.conclusion = Conclusion::Inconclusive;
            }
            r.cross_checks.insert(0, check);
            r
        }
        None => verify_certificate_family(
            "m22",
            &family,
            &cert,
            Closure::Assumed(
                "M22 is the stabilizer of point 22 in Aut(W23), so it permutes the blocks avoiding that point",
            ),
        )?,
    };
    report.notes.push(format!("{} blocks avoid the special point", avoiding.len()));

    if let Some(spec) = &opts.m22_generators {
        if spec.declared_order.is_none_or(|o| o as usize <= opts.cap) {
            let group = enumerate(spec, opts.cap)?;
            group.check_declared_order(spec)?;
            let cert_g = Certificate {
                family: FamilyDescriptor::EnumeratedGroup {
                    name: spec.name.clone(),
                    order: group.order(),
                },
                ..cert.clone()
            };
            let mut enumerated = verify_certificate_enumerated(&group, &cert_g)?;
            enumerated.case = "m22".into();
            enumerated.cross_checks.push(CrossCheck {
                label: "group order is |M22|".into(),
                agrees: group.order() == 443_520,
                detail: format!("enumerated {} elements", group.order()),
            });
            enumerated.cross_checks.push(modes_agree(&enumerated, &report));
            enumerated.cross_checks.extend(report.cross_checks.clone());
            enumerated.notes.extend(report.notes.clone());
            if enumerated.cross_checks.iter().any(|c| !c.agrees) {
                enumerated.conclusion = Conclusion::Inconclusive;
            }
            return Ok(enumerated);
        }
    } else if opts.enumerate_group {
        return Err(CertifyError::MissingData("M22 generator file for enumerated mode".into()));
    }
    Ok(report)
}

/// Permutation of graph vertices induced by a W23 automorphism fixing the special point.
fn induced_on_vertices(graph: &Graph, g: &Permutation) -> Option<Permutation> {
    let kinds = graph.kinds.as_ref()?;
    let index: HashMap<&VertexKind, usize> = kinds.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let images: Option<Vec<u32>> = kinds
        .iter()
        .map(|k| {
            let image = match k {
                VertexKind::Point(p) => VertexKind::Point(g.apply(*p)),
                VertexKind::BlockThrough(b) => VertexKind::BlockThrough(b.map(|x| g.apply(x))),
                VertexKind::BlockAvoiding(b) => VertexKind::BlockAvoiding(b.map(|x| g.apply(x))),
            };
            index.get(&image).map(|&i| i as u32)
        })
        .collect();
    Permutation::new(images?).ok()
}

fn mclaughlin_case(opts: &CaseOptions) -> Result<VerificationReport, CertifyError> {
    let w23 = w23(opts);
    let graph = mclaughlin_graph(&w23);
    let srg = srg_check(&graph, (275, 112, 30, 56));
    let b = graph.vertices_where(|k| matches!(k, VertexKind::Point(_)));
    let pairs: Vec<(usize, usize)> = graph.non_edges().collect();
    let family: Vec<PointSet> = pairs
        .par_iter()
        .map(|&(i, j)| common_neighborhood(&graph, i, j))
        .collect();
    let c = family[0].clone();
    let cert = Certificate::new(
        b,
        c,
        3,
        FamilyDescriptor::Named {
            name: "common neighbourhoods of non-adjacent pairs".into(),
            rule: "N(i) ∩ N(j) for every non-adjacent pair i < j".into(),
        },
    )?;
    let mut report = verify_certificate_family(
        "mclaughlin",
        &family,
        &cert,
        Closure::Assumed(
            "the group is identified with Aut(Γ); graph automorphisms map the common neighbourhood of a \
             non-adjacent pair to that of the image pair",
        ),
    )?;
    report.cross_checks.push(CrossCheck {
        label: "strongly regular with parameters (275, 112, 30, 56)".into(),
        agrees: srg.passed,
        detail: format!(
            "{} adjacent and {} non-adjacent pairs checked{}",
            srg.adjacent_pairs,
            srg.non_adjacent_pairs,
            srg.first_violation.as_deref().map(|v| format!("; {v}")).unwrap_or_default()
        ),
    });
    let sizes_ok = family.iter().all(|f| f.count() == 56);
    report.cross_checks.push(CrossCheck {
        label: "every common neighbourhood has 56 vertices".into(),
        agrees: sizes_ok,
        detail: format!("{} non-adjacent pairs", pairs.len()),
    });
    let (through, avoiding) = (
        w23.blocks_through(MCL_SPECIAL_POINT).len(),
        w23.blocks_avoiding(MCL_SPECIAL_POINT).len(),
    );
    report.cross_checks.push(CrossCheck {
        label: "vertex count".into(),
        agrees: 22 + through + avoiding == graph.vertex_count() && (through, avoiding) == (77, 176),
        detail: format!(
            "22 points + {through} blocks through the special point + {avoiding} blocks avoiding it = {}",
            graph.vertex_count()
        ),
    });
    if let Some(spec) = &opts.m22_generators {
        let induced: Option<Vec<Permutation>> = spec
            .generators
            .iter()
            .map(|g| induced_on_vertices(&graph, &extend_fixing_special(g)))
            .collect();
        let (ok, detail) = match induced {
            Some(gens) => {
                let preserves = gens.iter().all(|g| {
                    graph.adjacency.iter().enumerate().all(|(i, row)| {
                        row.iter().all(|j| graph.adjacent(g.apply(i), g.apply(j)))
                    })
                });
                let closed = crate::geometry::family_closed_under(&family, &gens);
                (preserves && closed, format!("adjacency preserved: {preserves}, family closed: {closed}"))
            }
            None => (false, "a generator does not act on the vertices".into()),
        };
        report.cross_checks.push(CrossCheck {
            label: "M22 subgroup acts on Γ and preserves the family".into(),
            agrees: ok,
            detail,
        });
    }
    if !srg.passed || !sizes_ok {
        report.conclusion = Conclusion::Inconclusive;
    }
    Ok(report)
}

/// For every `g` in `S_n`, the number of pairs `x < y` with `x^g > y^g` has the parity of `g`.
pub fn alternating_parity_consistency(n: usize) -> Result<bool, CertifyError> {
    let sym = enumerate(&standard::symmetric(n), DEFAULT_ENUMERATION_CAP)?;
    Ok(sym
        .elements()
        .par_iter()
        .all(|g| (g.inversions() % 2) as u8 == g.parity().bit()))
}

fn alt_case(n: usize, opts: &CaseOptions) -> Result<VerificationReport, CertifyError> {
    if n < 2 {
        return Err(CertifyError::BadCase(format!("n = {n} is below 2")));
    }
    let size = n * (n - 1) / 2;
    let case = format!("alt({n})");
    if !matches!(n % 4, 2 | 3) {
        return Ok(VerificationReport {
            case,
            mode: Mode::Gate,
            b_size: size,
            c_size: size,
            p: 2,
            domain_size: n * (n - 1),
            family: None,
            spectrum: Default::default(),
            side_condition: false,
            conclusion: Conclusion::HypothesisNotMet,
            assumptions: Vec::new(),
            notes: vec![format!("n = {n} is not 2 or 3 mod 4, so n(n-1)/2 = {size} is even")],
            cross_checks: Vec::new(),
            components: Vec::new(),
            elapsed_ms: 0,
        });
    }
    let group = enumerate(&standard::alternating(n), opts.cap)?;
    let arr = Arrangements::new(n, 2)?;
    let b = PointSet::from_points(arr.len(), (0..arr.len()).filter(|&i| arr.cell(i)[0] < arr.cell(i)[1]));
    let c = PointSet::from_points(arr.len(), (0..arr.len()).filter(|&i| arr.cell(i)[0] > arr.cell(i)[1]));
    let cert = Certificate::new(
        b,
        c,
        2,
        FamilyDescriptor::EnumeratedGroup {
            name: group.name().into(),
            order: group.order(),
        },
    )?;
    let mut report = verify_certificate_induced(&group, &arr, &cert)?;
    report.case = case;
    if opts.solver_cross_check && group.order() * arr.len() * arr.len() <= SOLVER_CROSS_CHECK_LIMIT {
        let (_, induced) = crate::perm::induced_action(&group, 2)?;
        report.cross_checks.extend(solver_cross_check(&induced, 2)?);
    }
    Ok(report)
}

fn m23_case(opts: &CaseOptions) -> Result<VerificationReport, CertifyError> {
    let m22 = m22_case(opts)?;
    let w23 = w23(opts);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sampled: Vec<Permutation> = (0..4)
        .filter_map(|_| random_automorphism(&w23, 4, &[], &mut rng, 1_000_000))
        .collect();
    let even = !sampled.is_empty() && sampled.iter().all(|g| g.parity().bit() == 0);
    let mut report = VerificationReport {
        case: "m23".into(),
        mode: Mode::Reduction,
        b_size: m22.b_size,
        c_size: m22.c_size,
        p: m22.p,
        domain_size: 23,
        family: None,
        spectrum: m22.spectrum.clone(),
        side_condition: m22.side_condition,
        conclusion: if m22.is_refuted() {
            Conclusion::Refuted
        } else {
            Conclusion::Inconclusive
        },
        assumptions: vec![
            "a sharply 2-transitive set in M23 contains 22 elements fixing a given point, and these form a \
             sharply transitive set of the point stabilizer M22 on the remaining 22 points"
                .into(),
            "independently, M23 lies in A23 and 23 is 3 mod 4, so the alternating-group argument applies".into(),
        ],
        notes: vec!["spectrum and set sizes are those of the M22 component".into()],
        cross_checks: vec![CrossCheck {
            label: "sampled automorphisms of W23 are even permutations".into(),
            agrees: even,
            detail: format!("{} random automorphisms", sampled.len()),
        }],
        components: vec![m22],
        elapsed_ms: 0,
    };
    if !even {
        report.notes.push("parity route not supported by the sampled automorphisms".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alt_gate() {
        let r = run_case(&Case::Alt { n: 5 }, &CaseOptions::default()).unwrap();
        assert_eq!(r.conclusion, Conclusion::HypothesisNotMet);
        let r = run_case(&Case::Alt { n: 6 }, &CaseOptions::default()).unwrap();
        assert!(r.is_refuted());
        assert_eq!(r.b_size, 15);
        assert!(r.cross_checks.iter().all(|c| c.agrees));
    }

    #[test]
    fn parity() {
        for n in 2..=6 {
            assert!(alternating_parity_consistency(n).unwrap());
        }
    }

    #[test]
    fn sp_small() {
        let opts = CaseOptions {
            enumerate_group: true,
            ..Default::default()
        };
        let r = run_case(&Case::Sp { n: 2, m: 1, action: Action::Projective }, &opts).unwrap();
        assert_eq!(r.mode, Mode::Enumerated);
        assert!(r.is_refuted(), "{r:?}");
        assert!(r.cross_checks.iter().all(|c| c.agrees), "{:?}", r.cross_checks);
        assert_eq!(r.support(), vec![0, 2]);
    }

    #[test]
    fn m22_family_without_generators() {
        let r = run_case(&Case::M22, &CaseOptions::default()).unwrap();
        assert_eq!(r.mode, Mode::Family);
        assert!(r.is_refuted());
        assert_eq!((r.b_size, r.c_size), (7, 15));
        assert_eq!(r.support(), vec![0, 4, 6]);
        assert!(!r.assumptions.is_empty());
        let e = run_case(
            &Case::M22,
            &CaseOptions {
                enumerate_group: true,
                ..Default::default()
            },
        );
        assert!(matches!(e, Err(CertifyError::MissingData(_))));
    }
}
