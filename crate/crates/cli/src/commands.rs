//! One runner per request command. Stages shared with the analysis
//! pipeline live here too.

use leviflat::algebra::gaussian::{format_complex, format_rational};
use leviflat::curves::intersect::intersection_points;
use leviflat::leviflat::{
    contains_variety, curve_invariance, flatness_certificate, hypersurface_tangency, levi_matrix, lion_singular_lines,
    singular_locus_system, web2_tangency, AffineForm, FlatnessEvidence, FlatnessVerdict, OneForm, QuadraticWeb,
    TangencyEvidence, TangencyReport, TangencyVerdict,
};
use leviflat::pencil::{
    pencil_foliation_form, pencil_from_family, verify_level_invariance, FamilyPencil, FoliationForm, Pencil,
};
use leviflat::segre::{
    complexify, complexify_real, degenerate_locus_system, is_segre_degenerate, segre_symmetry_check, segre_variety,
    ComplexifiedHypersurface,
};
use leviflat::leviflat::lion::RealValue;
use leviflat::{HomogeneousForm, Poly};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::input::FormKind;
use crate::report::{Tier, Verdict};
use crate::run::{table_json, text, texts, witness_json, AtStage, Run, StageError};

type Step = Result<(), StageError>;

fn need<'r>(run: &Run<'r>, stage: &'static str, name: &str) -> Result<&'r Poly, StageError> {
    run.req.poly(name).map_err(|e| StageError::input(stage, e.0))
}

fn form(p: &Poly, stage: &'static str) -> Result<HomogeneousForm, StageError> {
    HomogeneousForm::from_poly(p.clone()).at(stage)
}

pub fn intersect(run: &mut Run) -> Step {
    const STAGE: &str = "intersection";
    let f = form(need(run, STAGE, "F")?, STAGE)?;
    let g = form(need(run, STAGE, "G")?, STAGE)?;
    let set = intersection_points(&f, &g, &mut run.rng).at(STAGE)?;
    run.provenance.shears.push(set.shear());
    let truncation = run.req.options.truncation;
    let mut points = Vec::new();
    for i in 0..set.records.len() {
        let lm = set.verify(i, &mut run.rng, truncation).at("local multiplicity")?;
        run.provenance.shears.extend(lm.shears.iter().cloned());
        run.provenance.truncations.push(lm.truncation);
        points.push(json!({
            "point": set.records[i].point.describe(),
            "exact": set.records[i].point.as_rational().is_some(),
            "multiplicity": lm.value,
            "resultant_orders": lm.resultant_orders,
            "branch_orders": lm.branch_orders,
            "exact_branches": lm.exact_branches,
            "truncation": lm.truncation,
        }));
    }
    let bezout = f.degree() as u64 * g.degree() as u64;
    let total = set.total_multiplicity();
    if total != bezout {
        return Err(StageError::oracle(
            STAGE,
            format!("multiplicities sum to {total}, the degree product is {bezout}"),
        ));
    }
    run.push(
        STAGE,
        Verdict::Verified,
        Some(Tier::Exact),
        json!({
            "F": f.poly().to_string(),
            "G": g.poly().to_string(),
            "points": points,
            "total_multiplicity": total,
            "degree_product": bezout,
            "frames_drawn": set.attempts,
        }),
    );
    Ok(())
}

fn coords_json(c: &[leviflat::ExactComplex; 2]) -> Value {
    json!([format_complex(&c[0]), format_complex(&c[1])])
}

/// Records the pencil's first integral and foliation form; returns the form.
pub fn foliation_form_stage(run: &mut Run, pencil: &Pencil) -> Result<FoliationForm, StageError> {
    const STAGE: &str = "foliation";
    let omega = pencil_foliation_form(pencil).at(STAGE)?;
    let euler = omega.euler_contraction();
    if !euler.is_zero() {
        return Err(StageError::oracle(STAGE, "Euler contraction of the pencil form is not zero"));
    }
    run.push(
        STAGE,
        Verdict::Computed,
        Some(Tier::Exact),
        json!({
            "first_integral": pencil.first_integral(),
            "F": pencil.f().poly().to_string(),
            "G": pencil.g().poly().to_string(),
            "roster": omega.vars().to_vec(),
            "coefficients": texts(omega.coeffs()),
            "degree": omega.degree(),
            "euler_contraction": euler.to_string(),
        }),
    );
    Ok(omega)
}

pub fn pencil(run: &mut Run) -> Step {
    const STAGE: &str = "pencil";
    let family: Vec<HomogeneousForm> = run
        .req
        .family
        .iter()
        .map(|n| form(need(run, STAGE, n)?, STAGE))
        .collect::<Result<_, _>>()?;
    match pencil_from_family(&family).at(STAGE)? {
        FamilyPencil::NoPencil { witness } => {
            let names: Vec<&String> = witness.iter().map(|&i| &run.req.family[i]).collect();
            run.push(STAGE, Verdict::NoPencil, Some(Tier::Exact), json!({ "witness": names }));
            Ok(())
        }
        FamilyPencil::Pencil {
            pencil,
            generators,
            coords,
        } => {
            run.push(
                STAGE,
                Verdict::Pencil,
                Some(Tier::Exact),
                json!({
                    "generators": generators.map(|i| run.req.family[i].clone()),
                    "members": run.req.family.iter().zip(&coords)
                        .map(|(n, c)| json!({"name": n, "coordinates": coords_json(c)}))
                        .collect::<Vec<_>>(),
                }),
            );
            let omega = foliation_form_stage(run, &pencil)?;
            let mut members = Vec::new();
            for (name, c) in run.req.family.iter().zip(&coords) {
                let cert = verify_level_invariance(&pencil, &c[0], &c[1]).at("members")?;
                let report = curve_invariance(&OneForm::Projective(omega.clone()), pencil.member(&c[0], &c[1]).poly());
                let invariant = match report {
                    Ok(r) if r.verdict == TangencyVerdict::Invariant => Value::Bool(true),
                    Ok(_) => {
                        return Err(StageError::oracle("members", format!("member `{name}` is not invariant")));
                    }
                    // non-reduced members are outside the divisibility test
                    Err(leviflat::Error::NotSquarefree) => Value::String("not squarefree".into()),
                    Err(e) => return Err(StageError::core("members", e)),
                };
                members.push(json!({
                    "name": name,
                    "level_cofactor": cert.cofactor.to_string(),
                    "curve_invariant": invariant,
                }));
            }
            run.push("members", Verdict::Invariant, Some(Tier::Exact), json!({ "members": members }));
            Ok(())
        }
    }
}

/// Builds the complexified hypersurface from the request's pairing block.
pub fn hypersurface(run: &mut Run, phi: &Poly) -> Result<ComplexifiedHypersurface, StageError> {
    const STAGE: &str = "reality";
    let req = run.req;
    let h = if !req.real_pairs.is_empty() {
        let n = req.real_pairs.len();
        let (z, w): (Vec<String>, Vec<String>) = if req.conjugate_pairs.is_empty() {
            ((1..=n).map(|k| format!("z{k}")).collect(), (1..=n).map(|k| format!("w{k}")).collect())
        } else {
            req.conjugate_pairs.iter().cloned().unzip()
        };
        let real: Vec<(&str, &str)> = req.real_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let z: Vec<&str> = z.iter().map(String::as_str).collect();
        let w: Vec<&str> = w.iter().map(String::as_str).collect();
        complexify_real(phi, &real, &z, &w).at(STAGE)?
    } else if !req.conjugate_pairs.is_empty() {
        let pairs: Vec<(&str, &str)> = req.conjugate_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        complexify(phi, &pairs).at(STAGE)?
    } else {
        return Err(StageError::input(STAGE, "a real hypersurface needs `conjugate_pairs` or `real_pairs`"));
    };
    let cert = h.certificate();
    run.push(
        STAGE,
        Verdict::Real,
        Some(Tier::Exact),
        json!({
            "phi_c": text(h.phi_c()),
            "terms_checked": cert.terms_checked,
            "diagonal_terms": cert.diagonal_terms,
            "real_coordinates": h.real_vars().iter().map(|(a, b)| [a.clone(), b.clone()]).collect::<Vec<_>>(),
        }),
    );
    Ok(h)
}

fn phi_hypersurface(run: &mut Run) -> Result<ComplexifiedHypersurface, StageError> {
    let phi = need(run, "reality", "phi")?;
    hypersurface(run, phi)
}

pub fn degenerate_stage(run: &mut Run, h: &ComplexifiedHypersurface) {
    let sys = degenerate_locus_system(h);
    run.push(
        "segre degenerate system",
        Verdict::Computed,
        Some(Tier::Exact),
        json!({
            "roster": h.w_roster().to_vec(),
            "equations": texts(&sys),
        }),
    );
}

pub fn segre(run: &mut Run) -> Step {
    let h = phi_hypersurface(run)?;
    degenerate_stage(run, &h);
    const STAGE: &str = "segre varieties";
    let points: Vec<(&String, &Vec<leviflat::ExactComplex>)> = run.req.points.iter().collect();
    let mut varieties = Vec::new();
    for (name, q) in &points {
        let s = segre_variety(&h, q).at(STAGE)?;
        varieties.push(json!({
            "point": name,
            "polynomial": s.poly.to_string(),
            "degenerate": is_segre_degenerate(&h, q).at(STAGE)?,
            "on_hypersurface": h.value_at(q).at(STAGE)?.is_zero(),
        }));
    }
    run.push(STAGE, Verdict::Computed, Some(Tier::Exact), json!({ "varieties": varieties }));
    let mut pairs = 0usize;
    for (i, (pn, p)) in points.iter().enumerate() {
        for (qn, q) in &points[i..] {
            if !segre_symmetry_check(&h, p, q).at("segre symmetry")? {
                return Err(StageError::oracle(
                    "segre symmetry",
                    format!("membership of `{pn}` and `{qn}` is not symmetric"),
                ));
            }
            pairs += 1;
        }
    }
    run.push("segre symmetry", Verdict::Symmetric, Some(Tier::Exact), json!({ "pairs": pairs }));
    Ok(())
}

/// The Levi matrix and flatness stages. Returns the flatness verdict.
pub fn flatness_stages(run: &mut Run, h: &ComplexifiedHypersurface) -> Result<FlatnessVerdict, StageError> {
    let levi = levi_matrix(h);
    if !levi.is_hermitian() {
        return Err(StageError::oracle("levi matrix", "Levi matrix of a real input is not Hermitian"));
    }
    run.push(
        "levi matrix",
        Verdict::Computed,
        Some(Tier::Exact),
        json!({
            "entries": levi.entries.iter().map(|r| texts(r)).collect::<Vec<_>>(),
            "hermitian": true,
            "identically_zero": levi.is_zero(),
        }),
    );
    const STAGE: &str = "flatness";
    let cert = flatness_certificate(h, &run.sample_options(), &mut run.rng).at(STAGE)?;
    let verdict = match cert.verdict {
        FlatnessVerdict::ExactFlat => Verdict::ExactFlat,
        FlatnessVerdict::NumericallyFlat => Verdict::NumericallyFlat,
        FlatnessVerdict::NotFlat => Verdict::NotFlat,
    };
    let (tier, evidence) = match &cert.evidence {
        FlatnessEvidence::Cofactor(q) => (Tier::Exact, json!({ "cofactor": q.to_string() })),
        FlatnessEvidence::Samples(t) => {
            run.provenance.sample_lines += t.lines_tried;
            (Tier::Numeric, json!({ "samples": table_json(t) }))
        }
        FlatnessEvidence::Witness(w) => (Tier::Numeric, json!({ "witness": witness_json(w) })),
    };
    run.push(STAGE, verdict, Some(tier), evidence);
    if cert.verdict == FlatnessVerdict::NotFlat {
        run.rejected = true;
    }
    Ok(cert.verdict)
}

/// Singular-locus system, candidate containment and web checks.
pub fn locus_stages(run: &mut Run, h: &ComplexifiedHypersurface) -> Step {
    let sys = singular_locus_system(h);
    run.push(
        "singular locus system",
        Verdict::Computed,
        Some(Tier::Exact),
        json!({
            "roster": h.real_form().vars().to_vec(),
            "equations": texts(&sys.equations),
            "non_reduced": sys.non_reduced,
            "certainly_empty": sys.is_certainly_empty(),
        }),
    );
    if !run.req.candidate.is_empty() {
        const STAGE: &str = "singular locus candidate";
        let cand: Vec<Poly> = run
            .req
            .candidate
            .iter()
            .map(|n| need(run, STAGE, n).cloned())
            .collect::<Result<_, _>>()?;
        let inside = contains_variety(&sys.equations, &cand).at(STAGE)?;
        run.push(
            STAGE,
            if inside { Verdict::Contained } else { Verdict::NotContained },
            Some(Tier::Exact),
            json!({ "candidate": texts(&cand) }),
        );
    }
    if let Some(spec) = &run.req.web {
        const STAGE: &str = "web tangency";
        let coords = crate::input_roster(&spec.coordinates);
        let part = |n: &str| -> Result<Poly, StageError> { need(run, STAGE, n)?.with_vars(&coords).at(STAGE) };
        let web = QuadraticWeb::new(&part(&spec.a)?, &part(&spec.b)?, &part(&spec.c)?).at(STAGE)?;
        let mut leaves = Vec::new();
        let mut all = true;
        for name in &spec.leaves {
            let leaf = need(run, STAGE, name)?;
            let ok = web2_tangency(&web, leaf, &spec.coordinates[0]).at(STAGE)?;
            all &= ok;
            leaves.push(json!({ "leaf": name, "polynomial": leaf.to_string(), "tangent": ok }));
        }
        run.push(
            STAGE,
            if all { Verdict::WebTangent } else { Verdict::NotWebTangent },
            Some(Tier::Exact),
            json!({
                "web": [web.a.to_string(), web.b.to_string(), web.c.to_string()],
                "leaves": leaves,
            }),
        );
    }
    Ok(())
}

pub fn leviflat_cmd(run: &mut Run) -> Step {
    let h = phi_hypersurface(run)?;
    flatness_stages(run, &h)?;
    locus_stages(run, &h)
}

/// Records a tangency report under `stage`.
pub fn tangency_stage(run: &mut Run, stage: &str, r: &TangencyReport) {
    let verdict = match r.verdict {
        TangencyVerdict::Invariant => Verdict::Invariant,
        TangencyVerdict::NotInvariant => Verdict::NotInvariant,
    };
    let (tier, evidence) = match &r.evidence {
        TangencyEvidence::Cofactors(q) => (Tier::Exact, json!({ "cofactors": texts(q) })),
        TangencyEvidence::Residuals(q) => (Tier::Exact, json!({ "residuals": texts(q) })),
        TangencyEvidence::Samples(t) => {
            run.provenance.sample_lines += t.lines_tried;
            (Tier::Numeric, json!({ "samples": table_json(t) }))
        }
        TangencyEvidence::Witness(w) => (Tier::Numeric, json!({ "witness": witness_json(w) })),
    };
    let mut ev = json!({ "tau": texts(&r.tau) });
    if let (Value::Object(m), Value::Object(extra)) = (&mut ev, evidence) {
        m.extend(extra);
    }
    run.push(stage, verdict, Some(tier), ev);
}

/// Scope statement attached to hypersurface tangency verdicts.
pub const TANGENCY_SCOPE: &str = "regular points of the hypersurface away from the singular set of the form";

pub fn invariance(run: &mut Run) -> Step {
    const STAGE: &str = "form";
    let spec = run
        .req
        .form
        .clone()
        .ok_or_else(|| StageError::input(STAGE, "invariance request needs a `form` block"))?;
    let coeffs: Vec<Poly> = spec
        .coefficients
        .iter()
        .map(|n| need(run, STAGE, n).cloned())
        .collect::<Result<_, _>>()?;
    let one_form = match spec.kind {
        FormKind::Affine => OneForm::Affine(AffineForm::new(&coeffs).at(STAGE)?),
        FormKind::Projective => OneForm::Projective(FoliationForm::new(&coeffs).at(STAGE)?),
    };
    let has = |n: &str| run.req.polynomials.contains_key(n);
    if !has("P") && !has("phi") {
        return Err(StageError::input(STAGE, "invariance request needs a curve `P` or a hypersurface `phi`"));
    }
    if has("P") {
        let p = need(run, "curve invariance", "P")?;
        let r = curve_invariance(&one_form, p).at("curve invariance")?;
        tangency_stage(run, "curve invariance", &r);
    }
    if has("phi") {
        let h = phi_hypersurface(run)?;
        const T: &str = "hypersurface tangency";
        let affine = match &one_form {
            OneForm::Affine(a) => a.clone(),
            OneForm::Projective(w) => {
                let z = h.z_roster();
                let names: Vec<&str> = z.iter().map(String::as_str).collect();
                AffineForm::from_projective(w, &names).at(T)?
            }
        };
        let r = hypersurface_tangency(&affine, &h, &run.sample_options(), &mut run.rng).at(T)?;
        tangency_stage(run, T, &r);
        if let Some(Value::Object(m)) = run.stages.last_mut().map(|s| &mut s.evidence) {
            m.insert("scope".into(), Value::String(TANGENCY_SCOPE.into()));
        }
    }
    Ok(())
}

fn real_value(v: &RealValue) -> Value {
    if v.lo == v.hi {
        Value::String(format_rational(&v.lo))
    } else {
        json!({ "lo": format_rational(&v.lo), "hi": format_rational(&v.hi) })
    }
}

pub fn lion(run: &mut Run) -> Step {
    const STAGE: &str = "singular lines";
    let m = run
        .req
        .matrix
        .as_ref()
        .ok_or_else(|| StageError::input(STAGE, "lion request needs a `matrix`"))?;
    if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
        return Err(StageError::input(STAGE, "the matrix must be 2x2"));
    }
    let a: [[BigRational; 2]; 2] = [[m[0][0].clone(), m[0][1].clone()], [m[1][0].clone(), m[1][1].clone()]];
    let r = lion_singular_lines(&a).at(STAGE)?;
    let pair = |v: &[BigRational; 2]| json!([format_rational(&v[0]), format_rational(&v[1])]);
    run.push(
        STAGE,
        Verdict::Computed,
        Some(Tier::Exact),
        json!({
            "lines": r.lines.iter().map(|l| json!({
                "eigenvalue": real_value(&l.eigenvalue),
                "line_z1": real_value(&l.line),
                "eigenvector": l.eigenvector.as_ref().map(pair),
            })).collect::<Vec<_>>(),
            "parallel": r.parallel.as_ref().map(pair),
        }),
    );
    Ok(())
}
