//! Regenerates the bundled group and design files.
//!
//! Usage: `cargo run --release -p sharpcert --example gen_data [DATA_DIR]`

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sharpcert::bitset::PointSet;
use sharpcert::designs::{golay_witt_design, random_automorphism, Design, MCL_SPECIAL_POINT};
use sharpcert::perm::{enumerate, standard, write_group_file, GroupSpec, Permutation, DEFAULT_ENUMERATION_CAP};

/// Restricts permutations fixing the points outside `keep` to `keep`, relabelled in order.
fn restrict(g: &Permutation, keep: &[usize]) -> Permutation {
    let pos = |x: usize| keep.iter().position(|&k| k == x).expect("kept points are invariant") as u32;
    Permutation::new(keep.iter().map(|&x| pos(g.apply(x))).collect()).unwrap()
}

/// Random design automorphisms fixing `fixed` until they generate a group of the given order.
fn stabilizer(design: &Design, t: usize, fixed: &[usize], keep: &[usize], order: u64, name: &str) -> GroupSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    loop {
        let gens: Vec<Permutation> = (0..2)
            .map(|_| random_automorphism(design, t, fixed, &mut rng, 1_000_000).expect("automorphism"))
            .map(|g| restrict(&g, keep))
            .collect();
        let spec = GroupSpec::new(name, keep.len(), gens).unwrap();
        if enumerate(&spec, DEFAULT_ENUMERATION_CAP).is_ok_and(|e| e.order() as u64 == order) {
            return spec.with_order(order);
        }
    }
}

fn fano() -> Design {
    let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
    let blocks = lines.iter().map(|l| PointSet::from_points(7, l.iter().copied())).collect();
    Design::new("fano", 7, 3, blocks).unwrap()
}

fn m12() -> Option<GroupSpec> {
    let cycles = |c: &[&[u32]]| {
        let shifted: Vec<Vec<u32>> = c.iter().map(|cy| cy.iter().map(|x| x - 1).collect()).collect();
        let refs: Vec<&[u32]> = shifted.iter().map(|v| v.as_slice()).collect();
        Permutation::from_cycles(12, &refs).unwrap()
    };
    let gens = vec![
        cycles(&[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]),
        cycles(&[&[3, 7, 11, 8], &[4, 10, 5, 6]]),
        cycles(&[&[1, 12], &[2, 11], &[3, 6], &[4, 8], &[5, 9], &[7, 10]]),
    ];
    let spec = GroupSpec::new("M12", 12, gens).unwrap().with_order(95040);
    let e = enumerate(&spec, DEFAULT_ENUMERATION_CAP).ok()?;
    (e.order() == 95040).then_some(spec)
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    let groups = Path::new(&dir).join("groups");
    let designs = Path::new(&dir).join("designs");
    fs::create_dir_all(&groups).unwrap();
    fs::create_dir_all(&designs).unwrap();
    let write = |file: &str, spec: &GroupSpec| {
        let e = enumerate(spec, DEFAULT_ENUMERATION_CAP).unwrap();
        e.check_declared_order(spec).unwrap();
        fs::write(groups.join(file), write_group_file(spec)).unwrap();
        println!("{file}: order {}", e.order());
    };

    let with_order = |spec: GroupSpec| {
        let order = enumerate(&spec, DEFAULT_ENUMERATION_CAP).unwrap().order() as u64;
        spec.with_order(order)
    };
    write("c3.grp", &with_order(standard::cyclic(3)));
    write("c5.grp", &with_order(standard::cyclic(5)));
    write("c6.grp", &with_order(standard::cyclic(6)));
    for n in 3..=6 {
        write(&format!("s{n}.grp"), &with_order(standard::symmetric(n)));
    }
    for n in [4, 5, 6, 7] {
        write(&format!("a{n}.grp"), &with_order(standard::alternating(n)));
    }

    let keep: Vec<usize> = (1..7).collect();
    write("fano_stab.grp", &stabilizer(&fano(), 2, &[0], &keep, 24, "fano-point-stabilizer"));

    let w23 = golay_witt_design();
    let keep: Vec<usize> = (0..23).filter(|&x| x != MCL_SPECIAL_POINT).collect();
    write("m22.grp", &stabilizer(&w23, 4, &[MCL_SPECIAL_POINT], &keep, 443_520, "M22"));
    match m12() {
        Some(spec) => write("m12.grp", &spec),
        None => println!("m12.grp: generators do not give order 95040, not written"),
    }

    fs::write(designs.join("w23.dsn"), w23.to_file()).unwrap();
    println!("w23.dsn: {} blocks", w23.blocks.len());
}
