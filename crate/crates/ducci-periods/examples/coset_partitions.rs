// Doubling cosets modulo n and the subset-sum partition counts they carry.
// Each coset a<2> yields #P_{a,n}, the number of subsets of its residues in
// [1, n] whose sum stays below the order t. Every such count is a lower
// bound for the period P(n).

use ducci_periods::partitions::{
    best_coset, coset_set, partition_count, partition_enumerate, unit_coset_representatives,
};

fn main() {
    let n = 37;
    let set = coset_set(1, n).unwrap();
    println!("coset 1<2> mod {} has {} members:", n, set.members.len());
    for m in &set.members {
        print!(" {}@{}", m.residue, m.dlog);
    }
    println!();
    println!("#P_{{1,{}}} = {}", n, partition_count(1, n).unwrap());

    // n = 73 splits the units into several orbits; counts differ per coset.
    let n = 73;
    println!("\ncoset representatives mod {}:", n);
    for a in unit_coset_representatives(n).unwrap() {
        println!("  a = {:2}  count {}", a, partition_count(a, n).unwrap());
    }
    let (a, count) = best_coset(n).unwrap();
    println!("best coset: a = {} with {}", a, count);

    // Small enough to list: the qualifying subsets for n = 13, ordered by
    // their exponent Q = sum of 2^dlog over the chosen residues.
    println!("\nall partitions for a = 1, n = 13:");
    for v in partition_enumerate(1, 13, 1_000).unwrap() {
        println!("  sum {:2}  Q {:5}  parts {:?}", v.sum, v.q, v.parts);
    }
}
