use dioquad::{DioTuple, Rat};

fn main() {
    let elems: Vec<Rat> = [1, 3, 8, 120].iter().map(|&n| Rat::from(n)).collect();
    let tuple = DioTuple::new(elems).expect("valid quadruple");
    println!("pair certificates: {}", tuple.certificates().len());

    let bundle = dioquad::diophantine::induced_curve(&tuple).expect("nonsingular");
    let curve = bundle.curve();
    println!("p1={} p2={} j={}", curve.p1(), curve.p2(), curve.j_invariant());
    println!("torsion: {}", dioquad::torsion::torsion_group(curve));

    let q = bundle.point_q();
    println!(
        "Q={} halves to {} points",
        q,
        dioquad::torsion::halve_point(curve, q).len()
    );

    let p = bundle.point_p();
    let sum = curve.add(p, q);
    let cand = &bundle.quintuple_candidates(std::slice::from_ref(&sum))[0];
    match cand {
        Some(c) => println!("P+Q={} -> X={} extension={}", sum, c.x, c.is_extension),
        None => println!("P+Q={} -> no candidate", sum),
    }
    println!("torsion order bound: {}", dioquad::torsion::torsion_order_bound(curve, 10));
}
