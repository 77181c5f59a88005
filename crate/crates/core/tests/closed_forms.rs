use parkfn::closed_forms::*;
use parkfn::exactalg::{int, Polynomial, Var};
use parkfn::oracle::{gf_over, gf_over_prob, tree_gf, Domain, Exec};
use parkfn::parking::Stat;
use parkfn::trees::TreeStat;

fn pf(n: usize, w: &[(Var, Stat)]) -> Polynomial {
    gf_over(&Domain::Pf { n }, w, Exec::Parallel).unwrap()
}

#[test]
fn single_statistics_over_pf() {
    for n in 1..=6 {
        assert_eq!(pf(n, &[(Var::Q, Stat::Lucky)]), lucky_gf(n), "lucky n={n}");
        assert_eq!(pf(n, &[(Var::Q, Stat::Rep)]), rep_gf(n), "rep n={n}");
        assert_eq!(pf(n, &[(Var::Y, Stat::One)]), ones_gf(n), "one n={n}");
        assert_eq!(pf(n, &[(Var::X, Stat::Unl)]), unl_pf_mn_gf(n, n), "unl n={n}");
    }
}

#[test]
fn rk_products_deterministic_and_probabilistic() {
    for (m, r, k) in [(1, 2, 3), (2, 1, 1), (2, 2, 2), (3, 1, 2), (3, 2, 1), (4, 1, 1)] {
        let dom = Domain::Rk { m, r, k };
        let ur = [(Var::X, Stat::Unl), (Var::Y, Stat::Rep)];
        let ul = [(Var::X, Stat::Unl), (Var::Y, Stat::Lel)];
        let det = gf_over(&dom, &ur, Exec::Sequential).unwrap();
        let prob = gf_over_prob(&dom, &ur, Exec::Parallel).unwrap();
        assert_eq!(det, rk_unl_rep_gf(m, r, k));
        assert_eq!(prob, rk_unl_rep_gf(m, r, k));
        assert_eq!(gf_over_prob(&dom, &ul, Exec::Parallel).unwrap(), rk_unl_lel_gf(m, r, k));
        for s in 1..=m {
            let got = gf_over(&dom, &[(Var::Y, Stat::SameAs(s))], Exec::Parallel).unwrap();
            assert_eq!(got, rk_same_as_gf(m, r, k), "s={s}");
        }
    }
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    assert_eq!(rk_unl_lel_gf(2, 1, 1), &y * &(&x * &y + Polynomial::from_int(2)));
}

#[test]
fn master_family_n_up_to_5() {
    for n in 2..=5 {
        let m = pf(n, &[(Var::X, Stat::Lel), (Var::Y, Stat::One), (Var::Z, Stat::Unl)]);
        assert_eq!(m, master_gf(n));
        let c = pf(n, &[(Var::X, Stat::Lel), (Var::Y, Stat::Nlel), (Var::Z, Stat::Unl)]);
        assert_eq!(c, contrast_gf(n));
        let r = pf(n, &[(Var::X, Stat::Nlel), (Var::Y, Stat::One), (Var::Z, Stat::Unl)]);
        assert_eq!(r, correspondence_gf(n));
    }
    assert_eq!(pf(1, &[(Var::X, Stat::Lel), (Var::Y, Stat::One), (Var::Z, Stat::Unl)]), master_gf(1));
}

#[test]
fn tree_product() {
    for n in 0..=5 {
        let t = tree_gf(n, &[(Var::X, TreeStat::Nld), (Var::Y, TreeStat::Deg0)]);
        assert_eq!(t, tree_nld_deg0_gf(n));
    }
}

#[test]
fn prime_parking() {
    for n in 2..=6 {
        let dom = Domain::Ppf { n };
        let ur = gf_over(&dom, &[(Var::X, Stat::Unl), (Var::Y, Stat::Rep)], Exec::Parallel).unwrap();
        assert_eq!(ur, ppf_unl_rep_gf(n));
        let lo = gf_over(&dom, &[(Var::X, Stat::Lel), (Var::Y, Stat::One)], Exec::Parallel).unwrap();
        assert_eq!(lo, ppf_lel_one_gf(n));
        let same = gf_over(&dom, &[(Var::Y, Stat::SameAs(n))], Exec::Parallel).unwrap();
        assert_eq!(same, ppf_same_as_gf(n));
    }
    // The four prime parking functions of length 3.
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let xy = &x * &y;
    assert_eq!(ppf_unl_rep_gf(3), &xy * &xy + &x * &xy + xy.clone() + x.clone());
}

#[test]
fn unit_interval() {
    for n in 0..=6 {
        let got = gf_over(&Domain::Upf { n }, &[(Var::Y, Stat::Dis)], Exec::Parallel).unwrap();
        assert_eq!(got, upf_closed(n));
    }
    assert_eq!(upf_closed(2), Polynomial::var(Var::Y) + Polynomial::from_int(2));
    assert_eq!(upf_closed(5).subst_values(&[(Var::Y, int(1))]), Polynomial::from_int(541));
}
