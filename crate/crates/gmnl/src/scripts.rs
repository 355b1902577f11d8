//! Shipped claim scripts: the subnetwork-equivalence chains behind the
//! four-cluster argument, the general caterpillar bound, and the qudit
//! cluster/GHZ arguments.
//!
//! Each generator encodes one proof's equivalence steps as claim data. The
//! same scripts ship as JSON files under `data/` (loadable through the CLI
//! with `--suite file PATH`); a test keeps the files in sync with the
//! generators.

use crate::error::{Error, Result};
use crate::inflation::{
    range1, range2, CaterpillarShape, Claim, ClaimScript, Expect, NetRef,
};

fn lbl(i: usize, j: usize) -> String {
    CaterpillarShape::label(i, j)
}

fn primed(label: &str) -> String {
    format!("{label}'")
}

/// The four-party chain: both branches into the J diagram, the prime
/// relabelings back to the base network, the inequivalence sanity checks,
/// and the cross-checks against the general families at L = 4.
pub fn appendix_b_script() -> ClaimScript {
    let f = NetRef::family;
    let set = |names: &[&str]| -> Vec<String> { names.iter().map(|s| s.to_string()).collect() };
    let eq = |name: &str, a: NetRef, sa: &[&str], b: NetRef, sb: &[&str]| {
        Claim::equivalent(name, a, set(sa), b, set(sb))
    };
    let mut claims = vec![
        eq("bcd_base_vs_split_c", f("fig2_I0"), &["B", "C", "D"], f("fig2_I1"), &["B", "C", "D"]),
        eq("ab_pair", f("fig2_I1"), &["A", "B"], f("fig2_I0"), &["A", "B"]),
        eq("cd_pair", f("fig2_I1"), &["C", "D"], f("fig2_I0"), &["C", "D"]),
        eq("acd_chain_split_d", f("fig2_I2"), &["A", "C", "D"], f("fig2_I1"), &["A", "C", "D"]),
        eq("acd_chain_to_j", f("fig2_J"), &["A", "C", "D"], f("fig2_I2"), &["A", "C", "D"]),
        eq("cd_pair_in_j", f("fig2_J"), &["C", "D"], f("fig2_I0"), &["C", "D"]),
        eq(
            "primed_block_chain_split_b",
            f("fig2_I5"),
            &["A'", "B'", "C"],
            f("fig2_I4"),
            &["A'", "B'", "C"],
        ),
        eq(
            "primed_block_to_j",
            f("fig2_J"),
            &["A'", "B'", "C"],
            f("fig2_I5"),
            &["A'", "B'", "C"],
        ),
        eq("cd_second_branch", f("fig2_I4"), &["C", "D"], f("fig2_I3"), &["C", "D"]),
        eq(
            "abd_second_branch",
            f("fig2_I4"),
            &["A'", "B'", "D"],
            f("fig2_I3"),
            &["A'", "B'", "D"],
        ),
        eq(
            "prime_relabel_abd",
            f("fig2_I3"),
            &["A'", "B'", "D"],
            f("fig2_I0"),
            &["A", "B", "D"],
        ),
        eq("prime_relabel_cd", f("fig2_I3"), &["C", "D"], f("fig2_I0"), &["C", "D"]),
        eq(
            "prime_relabel_full",
            f("fig2_I3"),
            &["A'", "B'", "C", "D"],
            f("fig2_I0"),
            &["A", "B", "C", "D"],
        ),
    ];
    // Sanity: the split genuinely changes the A-side structure.
    for (name, subset) in [
        ("sanity_acd_differs", vec!["A", "C", "D"]),
        ("sanity_ac_differs", vec!["A", "C"]),
    ] {
        claims.push(Claim {
            name: name.into(),
            net_a: f("fig2_I0"),
            subset_a: subset.iter().map(|s| s.to_string()).collect(),
            net_b: f("fig2_I1"),
            subset_b: subset.iter().map(|s| s.to_string()).collect(),
            expect: Expect::Inequivalent,
            relabel_b: None,
        });
    }
    // Cross-checks against the general formulas at L = 4 (label map
    // 1,0…4,0 → A…D applied to the formula networks).
    let map: std::collections::BTreeMap<String, String> =
        [("1,0", "A"), ("2,0", "B"), ("3,0", "C"), ("4,0", "D")]
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
    let legs4 = [0usize, 0, 0, 0];
    for (name, fig, family, subset_a) in [
        ("formula_cross_check_base", "fig2_I0", "O", vec!["A", "B", "C", "D"]),
        ("formula_cross_check_split", "fig2_I1", "I1", vec!["A", "B", "C", "D"]),
    ] {
        claims.push(Claim {
            name: name.into(),
            net_a: f(fig),
            subset_a: subset_a.iter().map(|s| s.to_string()).collect(),
            net_b: NetRef::caterpillar(family, 4, &legs4),
            subset_b: subset_a.iter().map(|s| s.to_string()).collect(),
            expect: Expect::Equivalent,
            relabel_b: Some(map.clone()),
        });
    }
    claims.push(Claim {
        name: "formula_cross_check_primed".into(),
        net_a: f("fig2_I3"),
        subset_a: set(&["A'", "B'", "C", "D"]),
        net_b: NetRef::caterpillar("O", 4, &legs4),
        subset_b: set(&["A", "B", "C", "D"]),
        expect: Expect::Equivalent,
        relabel_b: Some(map),
    });
    claims
}

/// Claims behind the caterpillar bound for one (L, legs) shape: the
/// correlator-set and guess-set transfers, the prime swap between the
/// second and third inflations, and the per-k leg chains through J_k^m.
pub fn appendix_c_script(l: usize, legs: &[usize]) -> Result<ClaimScript> {
    if l < 3 {
        return Err(Error::BadInflationParams(format!("spine length {l} < 3")));
    }
    CaterpillarShape::new(l, legs.to_vec())?; // validates the leg profile
    let n_at = |i: usize| -> usize {
        if i >= 1 && i <= l {
            legs[i - 1]
        } else {
            0
        }
    };
    // [S, ·] as an ordered label list.
    let block = |spine: &[usize]| -> Vec<String> {
        let mut out = Vec::new();
        for &i in spine {
            for j in 0..=n_at(i) {
                out.push(lbl(i, j));
            }
        }
        out
    };
    let o_ref = || NetRef::caterpillar("O", l, legs);
    let fam = |name: &str| NetRef::caterpillar(name, l, legs);
    let j_ref = |k: usize, m: usize| NetRef::j_family(l, legs, k, m);

    // Parties of T_k, optionally with [k+2, 0] replaced by the leg [k+2, v].
    let t_parties = |k: usize, variant: Option<usize>| -> Vec<String> {
        let mut out = Vec::new();
        if k >= 1 {
            out.push(lbl(k, 0));
        }
        out.push(lbl(k + 1, 0));
        for j in 1..=n_at(k + 1) {
            out.push(lbl(k + 1, j));
        }
        if k + 2 <= l {
            out.push(lbl(k + 2, variant.unwrap_or(0)));
        }
        out
    };

    let mut claims = Vec::new();
    let mut eq = |name: String, a: NetRef, sa: Vec<String>, b: NetRef, sb: Vec<String>| {
        claims.push(Claim::equivalent(&name, a, sa, b, sb));
    };

    // The leg chain transferring ⟨T_k⟩ from `from` down to the original
    // network via J_k^0, …, J_k^{n−1}.
    let t_chain = |eq: &mut dyn FnMut(String, NetRef, Vec<String>, NetRef, Vec<String>),
                       k: usize,
                       from: NetRef,
                       tag: &str| {
        let t0 = t_parties(k, None);
        eq(
            format!("{tag}_T{k}_into_chain"),
            from,
            t0.clone(),
            j_ref(k, 0),
            t0,
        );
        let n_k2 = if k + 2 <= l { n_at(k + 2) } else { 0 };
        for m in 0..n_k2 {
            let lower = if m == 0 { lbl(k + 2, 0) } else { lbl(k + 2, m) };
            let pair = vec![lower, lbl(k + 2, m + 1)];
            eq(
                format!("{tag}_T{k}_leg{}_pair", m + 1),
                j_ref(k, m),
                pair.clone(),
                o_ref(),
                pair,
            );
            let tv = t_parties(k, Some(m + 1));
            let next = if m + 1 < n_k2 { j_ref(k, m + 1) } else { o_ref() };
            eq(
                format!("{tag}_T{k}_leg{}_transfer", m + 1),
                j_ref(k, m),
                tv.clone(),
                next,
                tv,
            );
        }
    };

    // Tail block carrying the three-setting party: [L−2,0], [L−1,·], [L,0].
    let tail_block: Vec<String> = {
        let mut v = vec![lbl(l - 2, 0)];
        for j in 0..=n_at(l - 1) {
            v.push(lbl(l - 1, j));
        }
        v.push(lbl(l, 0));
        v
    };

    if l.is_multiple_of(2) {
        // Correlator set [(1, L−1)₂, ·] ∪ {[L,0]}.
        let mut corr = block(&range2(1, l - 1));
        corr.push(lbl(l, 0));
        eq("even_corr_set".into(), fam("I0"), corr.clone(), fam("I1"), corr);
        eq(
            "even_tail_block".into(),
            fam("I1"),
            tail_block.clone(),
            o_ref(),
            tail_block.clone(),
        );
        for k in range2(0, l.saturating_sub(4)) {
            t_chain(&mut eq, k, fam("I1"), "even");
        }
        // Guess set {[1,0]'} ∪ [(2, L)₂, ·] and the swap into I3.
        let mut guess = vec![primed(&lbl(1, 0))];
        guess.extend(block(&range2(2, l)));
        eq("even_guess_set".into(), fam("I0"), guess.clone(), fam("I2"), guess.clone());
        let mut swapped = vec![lbl(1, 0)];
        swapped.extend(block(&range2(2, l)));
        eq("even_head_swap".into(), fam("I2"), guess, fam("I3"), swapped);
        for k in range2(1, l - 1) {
            t_chain(&mut eq, k, fam("I3"), "even_swapped");
        }
    } else {
        // Correlator set [(2, L−1)₂, ·] ∪ {[1,0]'} ∪ {[L,0]}.
        let mut corr = vec![primed(&lbl(1, 0))];
        corr.extend(block(&range2(2, l - 1)));
        corr.push(lbl(l, 0));
        eq("odd_corr_set".into(), fam("I0"), corr.clone(), fam("I2"), corr.clone());
        let mut swapped = vec![lbl(1, 0)];
        swapped.extend(block(&range2(2, l - 1)));
        swapped.push(lbl(l, 0));
        eq("odd_head_swap".into(), fam("I2"), corr, fam("I3"), swapped);
        eq(
            "odd_tail_block".into(),
            fam("I3"),
            tail_block.clone(),
            o_ref(),
            tail_block.clone(),
        );
        for k in range2(1, l.saturating_sub(4)) {
            t_chain(&mut eq, k, fam("I3"), "odd_swapped");
        }
        // Guess set [(1, L)₂, ·].
        let guess = block(&range2(1, l));
        eq("odd_guess_set".into(), fam("I0"), guess.clone(), fam("I1"), guess);
        for k in range2(0, l - 1) {
            t_chain(&mut eq, k, fam("I1"), "odd");
        }
    }
    Ok(claims)
}

/// Claims behind the qudit cluster argument for one N (legless line,
/// labels "i,0"), plus the source-independence claims of the qudit GHZ
/// argument at the same N.
pub fn appendix_d_script(n: usize) -> Result<ClaimScript> {
    if n < 3 {
        return Err(Error::BadInflationParams(format!("need N ≥ 3, got {n}")));
    }
    let legs = vec![0usize; n];
    let o_ref = || NetRef::caterpillar("O", n, &legs);
    let fam = |name: &str| NetRef::caterpillar(name, n, &legs);
    // Triple {i, i+1, i+2} clipped to 1…N ("we ignore" the phantom ends).
    let triple = |i: usize| -> Vec<String> {
        [i, i + 1, i + 2]
            .into_iter()
            .filter(|&p| (1..=n).contains(&p))
            .map(|p| lbl(p, 0))
            .collect()
    };
    let mut claims = Vec::new();
    let mut eq = |name: String, a: NetRef, sa: Vec<String>, b: NetRef, sb: Vec<String>| {
        claims.push(Claim::equivalent(&name, a, sa, b, sb));
    };

    if n.is_multiple_of(2) {
        for i in range2(0, n - 2) {
            eq(format!("even_triple_{i}_O_I1"), o_ref(), triple(i), fam("I1"), triple(i));
        }
        let mut cglmp_side: Vec<String> = range2(1, n - 1).into_iter().map(|p| lbl(p, 0)).collect();
        cglmp_side.push(lbl(n, 0));
        eq("even_cglmp_side_I1_I0".into(), fam("I1"), cglmp_side.clone(), fam("I0"), cglmp_side);
        for i in range2(1, n - 1) {
            eq(format!("even_triple_{i}_O_I3"), o_ref(), triple(i), fam("I3"), triple(i));
        }
        for i in range2(1, n - 1) {
            // After swapping 1 ↔ 1', the same relations hold in I2.
            let swapped: Vec<String> = triple(i)
                .into_iter()
                .map(|p| if p == lbl(1, 0) { primed(&p) } else { p })
                .collect();
            eq(format!("even_triple_{i}_I2_O"), fam("I2"), swapped, o_ref(), triple(i));
        }
        let mut guess_side = vec![primed(&lbl(1, 0))];
        guess_side.extend(range2(2, n).into_iter().map(|p| lbl(p, 0)));
        eq("even_guess_side_I2_I0".into(), fam("I2"), guess_side.clone(), fam("I0"), guess_side);
    } else {
        for i in range2(1, n - 2) {
            eq(format!("odd_triple_{i}_O_I3"), o_ref(), triple(i), fam("I3"), triple(i));
        }
        for i in range2(1, n - 2) {
            let swapped: Vec<String> = triple(i)
                .into_iter()
                .map(|p| if p == lbl(1, 0) { primed(&p) } else { p })
                .collect();
            eq(format!("odd_triple_{i}_I2_O"), fam("I2"), swapped, o_ref(), triple(i));
        }
        let mut cglmp_side = vec![primed(&lbl(1, 0))];
        cglmp_side.extend(range2(2, n - 3).into_iter().map(|p| lbl(p, 0)));
        cglmp_side.push(lbl(n - 1, 0));
        cglmp_side.push(lbl(n, 0));
        eq("odd_cglmp_side_I2_I0".into(), fam("I2"), cglmp_side.clone(), fam("I0"), cglmp_side);
        for i in range2(0, n - 3) {
            eq(format!("odd_triple_{i}_O_I1"), o_ref(), triple(i), fam("I1"), triple(i));
        }
        let pair = vec![lbl(n - 1, 0), lbl(n, 0)];
        eq("odd_last_pair_O_I1".into(), o_ref(), pair.clone(), fam("I1"), pair);
        let guess_side: Vec<String> = range1(1, n)
            .into_iter()
            .filter(|p| p % 2 == 1)
            .map(|p| lbl(p, 0))
            .collect();
        eq("odd_guess_side_I1_I0".into(), fam("I1"), guess_side.clone(), fam("I0"), guess_side);
    }

    // GHZ argument: every neighbouring pair keeps the original incidence in
    // the tail-shifted inflation, while the two chain ends lose all common
    // sources — the pattern of parties 1 and N' across the doubled original.
    for j in range1(1, n - 1) {
        let pair = vec![j.to_string(), (j + 1).to_string()];
        eq(
            format!("ghz_pair_{j}_O_I1"),
            NetRef::ghz("ghz_O", n),
            pair.clone(),
            NetRef::ghz("ghz_I1", n),
            pair,
        );
    }
    eq(
        "ghz_ends_share_nothing".into(),
        NetRef::ghz("ghz_I1", n),
        vec!["1".into(), n.to_string()],
        NetRef::ghz("ghz_I0", n),
        vec!["1".into(), format!("{n}'")],
    );
    Ok(claims)
}

/// Built-in suites: the shipped JSON under `data/` parsed at compile time.
pub fn embedded_suite(name: &str) -> Result<ClaimScript> {
    let text = match name {
        "appendixB" => include_str!("../data/appendix_b.json"),
        "appendixC" => return combine(&["appendixC_l4", "appendixC_l5"]),
        "appendixC_l4" => include_str!("../data/appendix_c_l4.json"),
        "appendixC_l5" => include_str!("../data/appendix_c_l5.json"),
        "appendixD" => include_str!("../data/appendix_d.json"),
        other => return Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
    };
    crate::inflation::parse_claim_script(text)
}

fn combine(names: &[&str]) -> Result<ClaimScript> {
    let mut all = Vec::new();
    for n in names {
        all.extend(embedded_suite(n)?);
    }
    Ok(all)
}

/// The (L, legs) shapes whose chains ship as data files.
pub const SHIPPED_C_SHAPES: [(usize, [usize; 5]); 2] =
    [(4, [0, 1, 1, 0, 0]), (5, [0, 1, 0, 1, 0])];

/// The party counts whose qudit chains ship as data files (even and odd).
pub const SHIPPED_D_SIZES: [usize; 2] = [4, 5];
