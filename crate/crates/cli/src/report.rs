use conehom::cone::{ClassicalReport, KerXiReport, NaturalityReport, UcfReport};
use conehom::document::{element_doc, rational_matrix_doc, rational_string, to_json, Document};
use conehom::lattice::{IntMatrix, RatMatrix};
use conehom::limits::{
    Cor2Report, Cor3Report, Cor5Report, Lemma2Report, Lemma4Report, Lim1Certificate, Lim1Evidence, MilnorReport, Theorem3Report,
};
use conehom::qz::{MixedLattice, QZElement, QZGroup, QZMorphism};
use serde_json::{json, Value};

pub fn group(g: &QZGroup) -> Value {
    json!({ "canonical": g.canonical().to_string(), "summands": g.to_doc().summands })
}

pub fn morphism(f: &QZMorphism) -> Value {
    serde_json::to_value(f.to_doc()).expect("morphism documents serialize")
}

/// A matrix whose rows live in `codomain`.
pub fn matrix_in(codomain: &QZGroup, m: &RatMatrix) -> Value {
    json!(rational_matrix_doc(codomain, m))
}

pub fn int_matrix(m: &IntMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn rat_cols(cols: &[QZElement]) -> Value {
    json!(cols.iter().map(|c| c.iter().map(rational_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn lattice(l: &MixedLattice) -> Value {
    json!({ "dimension": l.dim, "divisible": rat_cols(&l.divisible), "lattice": rat_cols(&l.lattice) })
}

pub fn certificate(c: &Lim1Certificate) -> Value {
    let evidence = match &c.evidence {
        Lim1Evidence::Finite { levels } => json!({ "kind": "finite", "levels": levels }),
        Lim1Evidence::Stabilized { depth, stable_image } => {
            json!({ "kind": "stabilized", "depth": depth, "stable_image": lattice(stable_image) })
        }
        Lim1Evidence::IndexGrowth { rank_depth, free_coords, lattice, step, factor } => json!({
            "kind": "index-growth",
            "rank_depth": rank_depth,
            "free_coordinates": free_coords,
            "lattice": int_matrix(lattice),
            "step": int_matrix(step),
            "factor": factor.to_string(),
        }),
        Lim1Evidence::Transferred { reason, source } => json!({ "kind": "transferred", "reason": reason, "source": certificate(source) }),
        Lim1Evidence::Exhausted { bound } => json!({ "kind": "exhausted", "bound": bound }),
    };
    json!({ "verdict": format!("{:?}", c.verdict), "evidence": evidence })
}

pub fn ucf(r: &UcfReport) -> Value {
    json!({
        "degree": r.degree,
        "pass": r.all_pass(),
        "hbar": group(&r.hbar),
        "hom": group(&r.hom),
        "ext": group(&r.ext),
        "xi_bar": matrix_in(&r.hom, &r.xi_bar),
        "chi_bar": matrix_in(&r.hbar, &r.chi_bar),
        "xi_well_defined": r.xi_well_defined,
        "chi_well_defined": r.chi_well_defined,
        "composite_zero": r.composite_zero,
        "chi_bar_injective": r.chi_bar_injective,
        "xi_bar_surjective": r.xi_bar_surjective,
        "middle_exact": r.middle_exact,
        "extension_independent": r.extension_independent,
        "ext_routes_agree": r.ext_routes_agree,
        "hom_routes_agree": r.hom_routes_agree,
        "bookkeeping": r.bookkeeping,
        "kernel_witnesses": r.witnesses.iter().map(|w| json!({
            "class": element_doc(&r.hbar, &w.class),
            "preimage_in_hom_next": w.preimage.iter().map(rational_string).collect::<Vec<_>>(),
            "ok": w.ok,
        })).collect::<Vec<_>>(),
    })
}

pub fn classical(r: &ClassicalReport, alpha_star: Option<&QZMorphism>) -> Value {
    json!({
        "degree": r.degree,
        "pass": r.all_pass(),
        "classical": group(&r.classical),
        "hbar": group(&r.hbar),
        "classical_lattice_route": r.classical_lattice.as_ref().map(|g| g.to_string()),
        "routes_agree": r.routes_agree,
        "alpha_star": alpha_star.map(morphism),
        "alpha_star_iso": r.alpha_star_iso,
        "xi_triangle": r.xi_triangle,
        "chi_triangle": r.chi_triangle,
        "lift_independent": r.lift_independent,
    })
}

pub fn ker_xi(r: &KerXiReport, sigma: &QZMorphism, omega: &QZMorphism) -> Value {
    json!({
        "degree": r.degree,
        "pass": r.all_pass(),
        "middle": group(&r.middle),
        "ker_xi": group(&r.ker_xi),
        "sigma": morphism(sigma),
        "omega": morphism(omega),
        "sigma_injective": r.sigma_injective,
        "composite_zero": r.composite_zero,
        "exact_in_middle": r.exact_in_middle,
        "image_is_ker_xi": r.image_is_ker_xi,
    })
}

pub fn naturality(r: &NaturalityReport, on_homology: &QZMorphism) -> Value {
    json!({
        "degree": r.degree,
        "pass": r.all_pass(),
        "induced_on_hbar": morphism(on_homology),
        "cone_map_commutes": r.cone_map_commutes,
        "sigma_square": r.sigma_square,
        "omega_square": r.omega_square,
        "xi_square": r.xi_square,
        "chi_square": r.chi_square,
        "chi_bar_square": r.chi_bar_square,
    })
}

pub fn lemma2(r: &Lemma2Report) -> Value {
    json!({
        "pass": r.all_pass(),
        "mode": match r.mode { conehom::limits::SystemMode::Exact => json!("exact"), conehom::limits::SystemMode::Truncated(k) => json!({ "truncated": k }) },
        "chain_maps": r.chain_maps,
        "degrees": r.degrees.iter().map(|(n, ok)| json!({ "degree": n, "iso": ok })).collect::<Vec<_>>(),
    })
}

pub fn cor2(r: &Cor2Report) -> Value {
    json!({ "pass": r.all_pass(), "degree": r.degree, "first": certificate(&r.first), "second": certificate(&r.second), "rechecked": r.rechecked })
}

pub fn lemma4(r: &Lemma4Report) -> Value {
    json!({
        "pass": r.all_pass(),
        "degree": r.degree,
        "levels_exact": r.levels_exact,
        "middle": certificate(&r.middle),
        "ker_xi": certificate(&r.ker_xi),
        "direct": certificate(&r.direct),
    })
}

pub fn cor3(r: &Cor3Report) -> Value {
    json!({
        "pass": r.all_pass(),
        "degree": r.degree,
        "hom": certificate(&r.hom),
        "cycles": certificate(&r.cycles),
        "direct": certificate(&r.direct),
        "lemma4_zero": r.lemma4_zero,
        "consistent": r.consistent,
    })
}

pub fn theorem3(r: &Theorem3Report) -> Value {
    json!({
        "pass": r.all_pass(),
        "degree": r.degree,
        "index": r.index,
        "lim1_ext": certificate(&r.ext),
        "lim1_hom": certificate(&r.hom),
        "lim1_hbar": certificate(&r.hbar),
        "limits": r.limits.as_ref().map(|(e, h, m)| json!({ "ext": group(e), "hbar": group(h), "hom": group(m) })),
        "chi_injective": r.chi_injective,
        "xi_surjective": r.xi_surjective,
        "middle_exact": r.middle_exact,
        "split_consistent": r.split_consistent,
    })
}

pub fn milnor(r: &MilnorReport) -> Value {
    json!({
        "pass": r.exact(),
        "degree": r.degree,
        "lim1_next": certificate(&r.lim1),
        "colimit_homology": r.colimit_homology.as_ref().map(group),
        "limit": r.limit.as_ref().map(group),
        "pi_injective": r.pi_injective,
        "pi_surjective": r.pi_surjective,
        "lim2_vanishes": r.lim2_vanishes,
        "colimit_failure_degree": r.colimit_failure,
        "lim1_hom": r.hom_lim1.as_ref().map(certificate),
        "lim1_ext": r.ext_lim1.as_ref().map(certificate),
    })
}

pub fn cor5(r: &Cor5Report) -> Value {
    json!({
        "pass": r.all_pass(),
        "degree": r.degree,
        "colimit_homology": group(&r.colimit_homology),
        "limit": group(&r.limit),
        "iso": r.iso,
        "collapse": r.collapse,
    })
}

pub fn render(v: &Value) -> String {
    to_json(v)
}
