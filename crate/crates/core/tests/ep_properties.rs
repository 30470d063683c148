mod common;

use common::quad::truncated_moments_oracle;
use epmgp::experiments::generators::{gen_gaussian, gen_poly_region, gen_rect_region, unit_vector};
use epmgp::rng::{Purpose, Stream};
use epmgp::*;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn problem(seed: u64, n: usize, m: usize, rect: bool) -> (GaussianDist, PolyhedralRegion) {
    let g = gen_gaussian(n, &mut Stream::new(seed, Purpose::Gaussian, 0)).unwrap();
    let mut rng = Stream::new(seed, Purpose::Region, 0);
    let r = if rect {
        gen_rect_region(&g, 1.0, &mut rng).unwrap()
    } else {
        gen_poly_region(&g, m, 1.0, &mut rng).unwrap()
    };
    (g, r)
}

/// Mass of `N(mean, var)` on `(l, u)` by adaptive quadrature.
fn interval_mass(mean: f64, var: f64, l: f64, u: f64) -> f64 {
    truncated_moments_oracle(mean, var, l, u).0
}

/// `log Z` of the EP approximation rebuilt from the converged sites alone:
/// each site is `Z̃ᵢ N(cᵢᵀx; μ̃ᵢ, σ̃ᵢ²)` with `Z̃ᵢ` fixed by matching the
/// cavity mass, and the product integrates against the prior in closed form.
fn log_z_from_sites(prior: &GaussianDist, region: &PolyhedralRegion, state: &EpState) -> f64 {
    let cons = region.constraints();
    let m = cons.len();
    let c = DMatrix::from_fn(prior.dim(), m, |i, j| cons[j].direction()[i]);
    let mut site_mean = DVector::zeros(m);
    let mut site_var = DVector::zeros(m);
    let mut log_scale = 0.0;
    for (i, con) in cons.iter().enumerate() {
        let s = &state.sites[i];
        let d = con.direction();
        let var = d.dot(&(&state.sigma * d));
        let mean = d.dot(&state.mu);
        let tau_cav = 1.0 / var - s.tau;
        let nu_cav = mean / var - s.nu;
        let (cm, cv) = (nu_cav / tau_cav, 1.0 / tau_cav);
        let (sm, sv) = (s.nu / s.tau, 1.0 / s.tau);
        let z_hat = interval_mass(cm, cv, con.lower(), con.upper());
        let overlap = -0.5 * ((2.0 * std::f64::consts::PI * (cv + sv)).ln() + (cm - sm).powi(2) / (cv + sv));
        log_scale += z_hat.ln() - overlap;
        site_mean[i] = sm;
        site_var[i] = sv;
    }
    let cov = c.transpose() * prior.cov() * &c + DMatrix::from_diagonal(&site_var);
    let chol = cov.clone().cholesky().expect("positive definite");
    let r = site_mean - c.transpose() * prior.mean();
    let quad = r.dot(&chol.solve(&r));
    let log_det = 2.0 * chol.l().diagonal().iter().map(|x| x.ln()).sum::<f64>();
    log_scale - 0.5 * (m as f64 * (2.0 * std::f64::consts::PI).ln() + log_det + quad)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn single_constraint_is_exact(seed in any::<u64>(), n in 1usize..=10) {
        let g = gen_gaussian(n, &mut Stream::new(seed, Purpose::Gaussian, 0)).unwrap();
        let region = gen_poly_region(&g, 1, 1.0, &mut Stream::new(seed, Purpose::Region, 0)).unwrap();
        let con = &region.constraints()[0];
        let c = con.direction();
        let exact = interval_mass(c.dot(g.mean()), c.dot(&(g.cov() * c)), con.lower(), con.upper()).ln();
        let ep = run_epmgp(&g, &region, &EpConfig::default()).unwrap();
        prop_assert!((ep.log_z - exact).abs() < 1e-10, "{} vs {}", ep.log_z, exact);
    }

    // Far in the tail the site parameters grow like (bound/σ)² and the
    // log partition keeps only relative precision.
    #[test]
    fn single_constraint_in_deep_tail(seed in any::<u64>(), n in 1usize..=10) {
        let g = gen_gaussian(n, &mut Stream::new(seed, Purpose::Gaussian, 0)).unwrap();
        let mut rng = Stream::new(seed, Purpose::Region, 0);
        let c = unit_vector(n, &mut rng);
        let a = 3.0 * rng.normal();
        let b = a + 3.0 * rng.uniform() + 1e-3;
        let region = PolyhedralRegion::new(vec![BoxConstraint::new(c.clone(), a, b).unwrap()]).unwrap();
        let exact = interval_mass(c.dot(g.mean()), c.dot(&(g.cov() * &c)), a, b).ln();
        let ep = run_epmgp(&g, &region, &EpConfig::default()).unwrap();
        prop_assert!((ep.log_z - exact).abs() < 1e-12 * exact.abs().max(100.0), "{} vs {}", ep.log_z, exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diagonal_boxes_factorize(
        vars in prop::collection::vec(0.05f64..5.0, 1..=8),
        seed in any::<u64>(),
    ) {
        let n = vars.len();
        let mut rng = Stream::new(seed, Purpose::Region, 0);
        let mean: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let lower: Vec<f64> = (0..n).map(|_| 2.0 * rng.normal()).collect();
        let upper: Vec<f64> = lower.iter().map(|l| l + 0.1 + 3.0 * rng.uniform()).collect();
        let g = GaussianDist::new(DVector::from_vec(mean.clone()), DMatrix::from_diagonal(&DVector::from_vec(vars.clone()))).unwrap();
        let region = PolyhedralRegion::hyperrectangle(&lower, &upper).unwrap();
        let exact: f64 = (0..n).map(|i| interval_mass(mean[i], vars[i], lower[i], upper[i]).ln()).sum();
        let ep = run_epmgp(&g, &region, &EpConfig::default()).unwrap();
        prop_assert!((ep.log_z - exact).abs() < 1e-9, "{} vs {}", ep.log_z, exact);
    }

    #[test]
    fn whitening_leaves_log_z_unchanged(seed in any::<u64>(), n in 2usize..=8, extra in 0usize..4) {
        let (g, r) = problem(seed, n, n + extra, false);
        let (wg, wr) = whiten(&g, &r).unwrap();
        let cfg = EpConfig { max_sweeps: 1000, ..EpConfig::default() };
        let a = run_epmgp(&g, &r, &cfg).unwrap();
        let b = run_epmgp(&wg, &wr, &cfg).unwrap();
        prop_assume!(a.converged && b.converged);
        prop_assert!((a.log_z - b.log_z).abs() < 1e-8, "{} vs {}", a.log_z, b.log_z);
    }

    #[test]
    fn independent_blocks_add(seed in any::<u64>(), n1 in 1usize..=4, n2 in 1usize..=4) {
        let (g1, r1) = problem(seed, n1, n1 + 1, false);
        let (g2, r2) = problem(seed ^ 0x5555, n2, n2, true);
        let n = n1 + n2;
        let mut cov = DMatrix::zeros(n, n);
        cov.view_mut((0, 0), (n1, n1)).copy_from(g1.cov());
        cov.view_mut((n1, n1), (n2, n2)).copy_from(g2.cov());
        let g = GaussianDist::new(DVector::zeros(n), cov).unwrap();
        let embed = |con: &BoxConstraint, offset: usize| {
            let d = DVector::from_fn(n, |i, _| {
                if i >= offset && i < offset + con.dim() { con.direction()[i - offset] } else { 0.0 }
            });
            BoxConstraint::new(d, con.lower(), con.upper()).unwrap()
        };
        let mut cs: Vec<_> = r1.constraints().iter().map(|c| embed(c, 0)).collect();
        cs.extend(r2.constraints().iter().map(|c| embed(c, n1)));
        let joint = PolyhedralRegion::new(cs).unwrap();
        let cfg = EpConfig { max_sweeps: 1000, ..EpConfig::default() };
        let a = run_epmgp(&g1, &r1, &cfg).unwrap();
        let b = run_epmgp(&g2, &r2, &cfg).unwrap();
        let ab = run_epmgp(&g, &joint, &cfg).unwrap();
        prop_assume!(a.converged && b.converged && ab.converged);
        prop_assert!((ab.log_z - a.log_z - b.log_z).abs() < 1e-9);
    }

    #[test]
    fn damping_keeps_the_fixed_point(seed in any::<u64>(), n in 2usize..=8) {
        let (g, r) = problem(seed, n, n, seed % 2 == 0);
        let full = run_epmgp(&g, &r, &EpConfig { max_sweeps: 2000, ..EpConfig::default() }).unwrap();
        let half = run_epmgp(&g, &r, &EpConfig { max_sweeps: 2000, damping: 0.5, ..EpConfig::default() }).unwrap();
        prop_assume!(full.converged && half.converged);
        prop_assert!((full.log_z - half.log_z).abs() < 1e-6, "{} vs {}", full.log_z, half.log_z);
    }

    #[test]
    fn constraint_order_does_not_matter(seed in any::<u64>(), n in 2usize..=6, extra in 0usize..3) {
        let m = n + extra;
        let (g, r) = problem(seed, n, m, false);
        let mut order: Vec<usize> = (0..m).collect();
        order.rotate_left(1 + (seed as usize) % m);
        order.reverse();
        let cfg = EpConfig { max_sweeps: 2000, ..EpConfig::default() };
        let a = run_epmgp(&g, &r, &cfg).unwrap();
        let b = run_epmgp(&g, &r.permuted(&order), &cfg).unwrap();
        prop_assume!(a.converged && b.converged);
        prop_assert!((a.log_z - b.log_z).abs() < 1e-8, "{} vs {}", a.log_z, b.log_z);
    }

    #[test]
    fn log_z_matches_site_product(seed in any::<u64>(), n in 1usize..=10, rect in any::<bool>()) {
        let (g, r) = problem(seed, n, n, rect);
        let cfg = EpConfig { tol: 1e-12, max_sweeps: 2000, ..EpConfig::default() };
        let ep = run_epmgp(&g, &r, &cfg).unwrap();
        prop_assume!(ep.converged);
        let rebuilt = log_z_from_sites(&g, &r, &ep);
        prop_assert!((ep.log_z - rebuilt).abs() < 1e-10, "{} vs {}", ep.log_z, rebuilt);
    }

    #[test]
    fn site_precisions_are_nonnegative(seed in any::<u64>(), n in 1usize..=10, extra in 0usize..6) {
        let (g, r) = problem(seed, n, n + extra, extra == 0);
        let ep = run_epmgp(&g, &r, &EpConfig::default()).unwrap();
        for s in &ep.sites {
            prop_assert!(s.tau >= 0.0, "tau = {}", s.tau);
        }
    }
}
