//! Identity-verification suites. Each suite runs a family of exact checks
//! against an object and reports one line per identity; a failing line
//! names the identity and the witnessing flag.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use trinc::incidence::{
    atom_lower_cut, coatom_upper_cut, crosscut_sum, hall_sum, mobius, weisner_sum, IncFn2,
};
use trinc::invariants::{
    check_positive_coeffs, check_root_at_one, eval_at_minus_one, j_char_poly, j_mobius_poly,
    m_decomposition, RankedLattice,
};
use trinc::matroid::subspace_lattice;
use trinc::poset::Poset;
use trinc::qseries::{john_identity_sum, m_subspace_decomposed, m_subspace_formula};
use trinc::trincidence::{
    addhom_check, almosthom_check, dia_tensor_check, double_crosscut_sum, hall_gen_sum, j_fast,
    j_recursive, left_distributivity_check, otherside_sum_with, random_incfn2, random_incfn3,
    structure_witnesses, tri_tensor_check, weisner_gen_sum_with, DoubleCrossCut, IncFn3,
};
use trinc::Result;

pub struct CheckLine {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(lines: &mut Vec<CheckLine>, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
    lines.push(CheckLine {
        name: name.into(),
        ok,
        detail: detail.into(),
    });
}

fn eq_check<T: PartialEq + std::fmt::Debug>(
    lines: &mut Vec<CheckLine>,
    name: impl Into<String>,
    lhs: T,
    rhs: T,
) {
    let ok = lhs == rhs;
    let detail = if ok {
        String::new()
    } else {
        format!("lhs = {lhs:?}, rhs = {rhs:?}")
    };
    lines.push(CheckLine {
        name: name.into(),
        ok,
        detail,
    });
}

pub fn classical_suite(p: &Arc<Poset>) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let mu = mobius(p);
    let zeta: IncFn2 = IncFn2::zeta(p);
    let delta: IncFn2 = IncFn2::delta(p);
    eq_check(
        &mut lines,
        "zeta * mu = delta",
        zeta.convolve(&mu)? == delta,
        true,
    );
    eq_check(
        &mut lines,
        "mu * zeta = delta",
        mu.convolve(&zeta)? == delta,
        true,
    );

    let mut hall_ok = true;
    let mut witness = String::new();
    for (x, y) in p.flags2() {
        if &hall_sum(p, x, y)? != mu.value(x, y)? {
            hall_ok = false;
            witness = format!("at ({x},{y})");
            break;
        }
    }
    check(
        &mut lines,
        "alternating chain sums = mu on every flag",
        hall_ok,
        witness,
    );

    if p.is_lattice() {
        let mut cuts_ok = true;
        let mut witness = String::new();
        'outer: for (x, y) in p.flags2() {
            for cut in [atom_lower_cut(p, x, y)?, coatom_upper_cut(p, x, y)?] {
                if &crosscut_sum(p, &cut)? != mu.value(x, y)? {
                    cuts_ok = false;
                    witness = format!("at ({x},{y})");
                    break 'outer;
                }
            }
        }
        check(
            &mut lines,
            "atom/coatom cross-cut sums = mu on every interval",
            cuts_ok,
            witness,
        );

        let top = p.top().expect("lattice");
        let mut weisner_ok = true;
        let mut witness = String::new();
        for a in (0..p.size()).filter(|&a| a != top) {
            if !weisner_sum(p, a)?.is_zero() {
                weisner_ok = false;
                witness = format!("at a = {a}");
                break;
            }
        }
        check(
            &mut lines,
            "Weisner sums vanish for every a below the top",
            weisner_ok,
            witness,
        );
    }

    // product factorization against the 2-chain
    let b1 = Arc::new(Poset::chain(2));
    let prod = Arc::new(p.product(&b1));
    eq_check(
        &mut lines,
        "mu_P x mu_Q = mu_{PxQ} (Q the 2-chain)",
        IncFn2::tensor(&mu, &mobius(&b1)) == mobius(&prod),
        true,
    );
    Ok(lines)
}

pub fn j_axioms_suite(p: &Arc<Poset>) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let j = j_fast(p);
    let zeta: IncFn3 = IncFn3::zeta(p);
    let delta: IncFn3 = IncFn3::delta(p);
    eq_check(
        &mut lines,
        "zeta3 |> J = delta3",
        zeta.tri_mul(&j)? == delta,
        true,
    );
    eq_check(
        &mut lines,
        "J |> zeta3 = delta3",
        j.tri_mul(&zeta)? == delta,
        true,
    );
    eq_check(
        &mut lines,
        "recursive J = mu <> mu",
        j_recursive(p) == j,
        true,
    );
    Ok(lines)
}

pub fn generalized_suite(p: &Arc<Poset>) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let mu = mobius(p);
    let j = j_fast(p);

    let mut hall_ok = true;
    let mut otherside_ok = true;
    let mut witness_h = String::new();
    let mut witness_o = String::new();
    for (x, y, z) in p.flags3() {
        if hall_ok && &hall_gen_sum(p, x, y, z)? != j.value(x, y, z)? {
            hall_ok = false;
            witness_h = format!("at ({x},{y},{z})");
        }
        let expect = if x == y && y == z {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        if otherside_ok && otherside_sum_with(&mu, &j, x, y, z)? != expect {
            otherside_ok = false;
            witness_o = format!("at ({x},{y},{z})");
        }
    }
    check(
        &mut lines,
        "generalized alternating chain sums = J on every flag",
        hall_ok,
        witness_h,
    );
    check(
        &mut lines,
        "sum J(x,a,a) J(b,b,z) = delta3 on every flag",
        otherside_ok,
        witness_o,
    );

    if p.is_lattice() {
        let mut cut_ok = true;
        let mut witness = String::new();
        for (x, y, z) in p.flags3() {
            let cut = DoubleCrossCut::lower_atoms(p, x, y, z)?;
            if &double_crosscut_sum(p, &cut)? != j.value(x, y, z)? {
                cut_ok = false;
                witness = format!("at ({x},{y},{z})");
                break;
            }
        }
        check(
            &mut lines,
            "double atom cross-cut sums = J on every triple",
            cut_ok,
            witness,
        );

        let bottom = p.bottom().expect("lattice");
        let mut weisner_ok = true;
        let mut witness = String::new();
        'w: for a in 0..p.size() {
            for b in 0..p.size() {
                if p.lt(bottom, a) && p.lt(a, b) && !weisner_gen_sum_with(&j, a, b)?.is_zero() {
                    weisner_ok = false;
                    witness = format!("at (a,b) = ({a},{b})");
                    break 'w;
                }
            }
        }
        check(
            &mut lines,
            "generalized Weisner sums vanish for every bottom < a < b",
            weisner_ok,
            witness,
        );
    }

    let b1 = Arc::new(Poset::chain(2));
    let prod = Arc::new(p.product(&b1));
    eq_check(
        &mut lines,
        "J_P x J_Q = J_{PxQ} (Q the 2-chain)",
        IncFn3::tensor(&j, &j_fast(&b1)) == j_fast(&prod),
        true,
    );

    // operation identities: the diamond lift against convolution / addition
    // / products, with deterministic pseudo-random operands
    let zeta2: IncFn2 = IncFn2::zeta(p);
    eq_check(
        &mut lines,
        "(zeta <> zeta) |> (mu <> mu) = (zeta * mu) <> (mu * zeta)",
        almosthom_check(&zeta2, &zeta2, &mu, &mu)?,
        true,
    );
    let (f2, g2) = (random_incfn2(p, 11), random_incfn2(p, 12));
    let (r2, s2) = (random_incfn2(p, 13), random_incfn2(p, 14));
    eq_check(
        &mut lines,
        "(f + g) <> (r + s) expands into the four diamonds",
        addhom_check(&f2, &g2, &r2, &s2)?,
        true,
    );
    let (rq, sq) = (random_incfn2(&b1, 15), random_incfn2(&b1, 16));
    eq_check(
        &mut lines,
        "(f <> g) x (r <> s) = (f x r) <> (g x s)",
        dia_tensor_check(&f2, &g2, &rq, &sq)?,
        true,
    );
    let (f3, g3) = (random_incfn3(p, 17), random_incfn3(p, 18));
    let (r3, s3) = (random_incfn3(&b1, 19), random_incfn3(&b1, 20));
    eq_check(
        &mut lines,
        "(f |> g) x (r |> s) = (f x r) |> (g x s)",
        tri_tensor_check(&f3, &g3, &r3, &s3)?,
        true,
    );
    Ok(lines)
}

pub fn polynomial_suite(l: &RankedLattice) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    if l.poset().size() >= 2 {
        eq_check(
            &mut lines,
            "J-Mobius polynomial vanishes at t = 1",
            check_root_at_one(l)?,
            true,
        );
    }
    if l.poset().is_lattice() {
        if l.poset().is_geometric()? {
            eq_check(
                &mut lines,
                "J-characteristic coefficients strictly positive (geometric)",
                check_positive_coeffs(l)?,
                true,
            );
        }
        eq_check(
            &mut lines,
            "interval decomposition = J-Mobius polynomial",
            m_decomposition(l)? == j_mobius_poly(l),
            true,
        );
        if l.poset().is_modular_lattice()? && l.poset().is_geometric()? {
            eq_check(
                &mut lines,
                "modular geometric lattice: J-Mobius polynomial vanishes at t = -1",
                eval_at_minus_one(l).is_zero(),
                true,
            );
        }
    }
    let b1 = RankedLattice::new(Arc::new(Poset::boolean(1)))?;
    let prod = l.product(&b1);
    eq_check(
        &mut lines,
        "J-characteristic multiplicative over the product with the 2-chain",
        j_char_poly(&prod) == &j_char_poly(l) * &j_char_poly(&b1),
        true,
    );
    eq_check(
        &mut lines,
        "J-Mobius multiplicative over the product with the 2-chain",
        j_mobius_poly(&prod) == &j_mobius_poly(l) * &j_mobius_poly(&b1),
        true,
    );
    Ok(lines)
}

pub fn structure_suite(p: &Arc<Poset>, randomized: u64) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    match structure_witnesses(p) {
        Ok(w) => {
            check(
                &mut lines,
                "witness: delta3 |> f != f |> delta3",
                w.non_commutative.lhs != w.non_commutative.rhs,
                format!(
                    "flag {:?}: {} vs {}",
                    w.non_commutative.flag, w.non_commutative.lhs, w.non_commutative.rhs
                ),
            );
            check(
                &mut lines,
                "witness: f |> delta3 != f (no right identity)",
                w.not_right_identity.lhs != w.not_right_identity.rhs,
                format!(
                    "flag {:?}: {} vs {}",
                    w.not_right_identity.flag, w.not_right_identity.lhs, w.not_right_identity.rhs
                ),
            );
            check(
                &mut lines,
                "witness: right distributivity fails",
                w.not_right_distributive.lhs != w.not_right_distributive.rhs,
                format!(
                    "flag {:?}: {} vs {}",
                    w.not_right_distributive.flag,
                    w.not_right_distributive.lhs,
                    w.not_right_distributive.rhs
                ),
            );
            match w.non_associative {
                Some(na) => check(
                    &mut lines,
                    "witness: associativity fails",
                    na.lhs != na.rhs,
                    format!("flag {:?}: {} vs {}", na.flag, na.lhs, na.rhs),
                ),
                None => check(
                    &mut lines,
                    "witness: associativity fails",
                    true,
                    "no witness required: no 3-element chain",
                ),
            }
        }
        Err(_) => {
            check(
                &mut lines,
                "structure witnesses",
                true,
                "no witness required: no comparable pair",
            );
        }
    }

    let delta: IncFn3 = IncFn3::delta(p);
    let mut dist_ok = true;
    let mut ident_ok = true;
    let mut count = 0u64;
    let mut seed = 0u64;
    while count < randomized {
        let f = random_incfn3(p, seed);
        let g = random_incfn3(p, seed + 1);
        let h = random_incfn3(p, seed + 2);
        dist_ok &= left_distributivity_check(&f, &g, &h)?;
        ident_ok &= delta.tri_mul(&f)? == f;
        ident_ok &= delta.tri_mul(&g)? == g;
        ident_ok &= delta.tri_mul(&h)? == h;
        count += 3;
        seed += 3;
    }
    check(
        &mut lines,
        format!("left distributivity on {count} randomized functions"),
        dist_ok,
        "",
    );
    check(
        &mut lines,
        format!("delta3 left identity on {count} randomized functions"),
        ident_ok,
        "",
    );
    Ok(lines)
}

pub fn qseries_suite(max_n: usize) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let john_max = max_n.max(12);
    let mut john_ok = true;
    let mut witness = String::new();
    for n in 1..=john_max {
        if !john_identity_sum(n)?.is_zero() {
            john_ok = false;
            witness = format!("at n = {n}");
            break;
        }
    }
    check(
        &mut lines,
        format!("alternating q-binomial sum vanishes for n <= {john_max}"),
        john_ok,
        witness,
    );

    let formula_max = max_n.min(5);
    let mut agree_ok = true;
    let mut root_ok = true;
    let mut witness_a = String::new();
    let mut witness_r = String::new();
    for n in 0..=formula_max {
        let direct = m_subspace_formula(n);
        let decomposed = m_subspace_decomposed(n);
        if direct != decomposed {
            agree_ok = false;
            witness_a = format!("at n = {n}");
        }
        if n >= 1
            && (!direct.eval_t_minus_one().is_zero() || !decomposed.eval_t_minus_one().is_zero())
        {
            root_ok = false;
            witness_r = format!("at n = {n}");
        }
    }
    check(
        &mut lines,
        format!("flag sum = rank decomposition for n <= {formula_max}"),
        agree_ok,
        witness_a,
    );
    check(
        &mut lines,
        format!("both vanish at t = -1 for n <= {formula_max}"),
        root_ok,
        witness_r,
    );

    let mut spec_ok = true;
    let mut witness = String::new();
    for (q, n) in [(2u64, 2u32), (2, 3), (3, 2), (2, 4)] {
        let l = subspace_lattice(q, n)?;
        if m_subspace_formula(n as usize).specialize(&BigInt::from(q)) != j_mobius_poly(&l) {
            spec_ok = false;
            witness = format!("at q = {q}, n = {n}");
            break;
        }
    }
    check(
        &mut lines,
        "specializations match direct subspace-lattice computation",
        spec_ok,
        witness,
    );
    Ok(lines)
}
