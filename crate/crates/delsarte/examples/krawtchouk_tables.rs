// Exact Krawtchouk tables, the reciprocity identity, and certified roots.

use delsarte::krawtchouk::{
    first_root_lower_bound, kraw_roots_upto, reciprocity_holds, KrawtchoukTable,
};

fn main() {
    let n = 12;
    let table = KrawtchoukTable::new(n);

    println!("K_s(i) for n = {n}, s ≤ 4:");
    print!("{:>4}", "i");
    for s in 0..=4 {
        print!("{:>8}", format!("K_{s}"));
    }
    println!();
    for i in 0..=n {
        print!("{i:>4}");
        for s in 0..=4 {
            print!("{:>8}", table.get(s, i).to_string());
        }
        println!();
    }

    let mut checked = 0u32;
    for i in 0..=n {
        for j in 0..=n {
            assert!(reciprocity_holds(n, i, j));
            checked += 1;
        }
    }
    println!("\nreciprocity C(n,j)K_i(j) = C(n,i)K_j(i): {checked} pairs, all exact");

    // roots are real, distinct, inside (0, n), and interlace level by level
    println!("\ncertified roots, m ≤ 6:");
    let lists = kraw_roots_upto(n, 6).unwrap();
    for list in &lists {
        let shown: Vec<String> = list.roots.iter().map(|x| format!("{x:.4}")).collect();
        println!("  m = {}: [{}]", list.degree, shown.join(", "));
    }
    for w in lists.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        for k in 0..a.roots.len() {
            assert!(b.roots[k] < a.roots[k] && a.roots[k] < b.roots[k + 1]);
        }
    }
    println!("  interlacing verified across consecutive degrees");

    println!("\nfirst root x_1(m) against the n/2 - sqrt(m(n-m+2)) floor:");
    let n = 60;
    for m in [2usize, 6, 12, 20, 30] {
        let x1 = kraw_roots_upto(n, m).unwrap().last().unwrap().roots[0];
        let floor = first_root_lower_bound(n, m);
        println!("  n = {n}, m = {m:>2}: x_1 = {x1:>9.4}, floor = {floor:>9.4}");
    }
}
