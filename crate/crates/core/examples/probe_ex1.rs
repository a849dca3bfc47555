// scratch probe; deleted before finalizing
use aqc_core::groebner::{normal_form, BuchbergerConfig};
use aqc_core::poly::Polynomial;
use aqc_core::quadratize::{build_pair_ideal, rewriting_basis, toric_reduce, QuadratizeOptions};
use aqc_core::ring::Ring;

fn main() {
    let r = Ring::new(vec!["y1", "y2", "y3", "y4", "y5"]);
    let f = Polynomial::parse(
        &r,
        "y1*y2*y3 + y1*y3*y4 + y1*y3*y5 + y2*y3*y5 + y3*y4*y5",
    )
    .unwrap();
    let t0 = std::time::Instant::now();
    let sys = build_pair_ideal(&f).unwrap();
    println!("pairs: {:?}", sys.pairs);
    println!("gens: {}", sys.ideal.generators.len());
    let gb = rewriting_basis(&sys, &BuchbergerConfig::default()).unwrap();
    println!("basis size: {} in {:?}", gb.elements.len(), t0.elapsed());
    let f_mixed = f.multilinearized().into_ring(&sys.ring).unwrap();
    let nf = normal_form(&f_mixed, &gb).unwrap();
    println!("NF(f) = {}", nf.to_text());
    for g in &gb.elements {
        let t = g.to_text();
        if t.contains("x14") || t.contains("x13") && g.num_terms() == 2 {
            println!("  basis elt: {t}");
        }
    }
    let t1 = std::time::Instant::now();
    let red = toric_reduce(&f, &QuadratizeOptions::default()).unwrap();
    println!(
        "toric_reduce: aux={} minimal={} quad={} in {:?}",
        red.aux_count,
        red.minimal,
        red.quadratic.to_text(),
        t1.elapsed()
    );
    println!("substitutions: {:?}", red.substitutions);
}
