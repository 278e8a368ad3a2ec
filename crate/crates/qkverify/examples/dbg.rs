use qkverify::algebra::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
fn main() {
    for n in [2usize, 3, 4] {
        let s = standard_structure(n).unwrap();
        let r = model_curvature(&s, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut lambdas = vec![];
        for _ in 0..8 {
            let psi = random_two_form(4 * n, &mut rng);
            let d = decompose(&psi, &s);
            let q = q_of_r(&r, &d.s2e, &s).unwrap();
            let lam = q.inner(&d.s2e) / d.s2e.inner(&d.s2e);
            let dev = q.sub(&d.s2e.scale(lam)).norm() / d.s2e.norm();
            lambdas.push((lam, dev));
        }
        println!("n={} lambdas: {:?}", n, lambdas.iter().map(|(l,_)| format!("{:.12}", l)).collect::<Vec<_>>());
        println!("    scalar-action deviations: {:?}", lambdas.iter().map(|(_,d)| format!("{:.2e}", d)).collect::<Vec<_>>());
    }
}
