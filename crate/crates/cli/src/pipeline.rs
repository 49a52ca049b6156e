//! The end-to-end analysis of a real hypersurface in `C^n`.
//!
//! Stages run in a fixed order on one seeded generator. A `NotFlat`
//! verdict halts the run; a family of Segre varieties without a pencil is
//! a completed analysis whose answer is the witness triple.
//!
//! The Segre stage evaluates `phi_C(z, conj q)` at rational centers `q` of
//! certified sample points rather than at the exact (algebraic) points. The
//! span of the Segre family does not depend on that choice: a holomorphic
//! polynomial in `q` vanishing on an open piece of the hypersurface vanishes
//! identically, so the span over any set of points of `C^n` containing a
//! small neighbourhood's worth of directions equals the span over the
//! hypersurface, and rank statements over random nearby points are generic.

use leviflat::algebra::gaussian::format_complex;
use leviflat::algebra::homogeneous::homogenize;
use leviflat::leviflat::sampling::sample_surface;
use leviflat::leviflat::{hypersurface_tangency, AffineForm, FlatnessVerdict};
use leviflat::pencil::{pencil_from_family, FamilyPencil};
use leviflat::segre::{segre_variety, ComplexifiedHypersurface};
use leviflat::{HomogeneousForm, Poly};
use serde_json::{json, Value};

use crate::commands::{
    degenerate_stage, flatness_stages, hypersurface, locus_stages, tangency_stage, TANGENCY_SCOPE,
};
use crate::report::{Tier, Verdict};
use crate::run::{AtStage, Run, StageError};

/// Segre varieties collected for the pencil search.
pub const SEGRE_SAMPLES: usize = 6;

struct Collected {
    points: Vec<Vec<leviflat::ExactComplex>>,
    forms: Vec<HomogeneousForm>,
}

fn homogenizing_name(h: &ComplexifiedHypersurface) -> String {
    let taken = h.vars();
    ["z0", "u0", "t0"]
        .iter()
        .find(|c| !taken.iter().any(|v| v == *c))
        .map_or_else(|| "hom0".to_string(), |c| c.to_string())
}

fn collect_segre(run: &mut Run, h: &ComplexifiedHypersurface, z0: &str) -> Result<Collected, StageError> {
    const STAGE: &str = "segre family";
    let wanted = run.req.options.samples.clamp(3, SEGRE_SAMPLES);
    let set = sample_surface(h, wanted, &mut run.rng).at(STAGE)?;
    run.provenance.sample_lines += set.lines_tried;
    let mut points = Vec::new();
    let mut polys: Vec<Poly> = Vec::new();
    let mut degenerate = 0usize;
    for p in &set.points {
        let q = p.z_center();
        let s = segre_variety(h, &q).at(STAGE)?;
        if s.degenerate || s.poly.is_constant() {
            degenerate += 1;
            continue;
        }
        points.push(q);
        polys.push(s.poly);
    }
    let degree = polys.iter().filter_map(|p| p.degree().finite()).max().unwrap_or(0);
    let forms = polys
        .iter()
        .map(|p| HomogeneousForm::new(homogenize(p, z0, degree)?, degree))
        .collect::<leviflat::Result<Vec<_>>>()
        .at(STAGE)?;
    run.push(
        STAGE,
        Verdict::Computed,
        Some(Tier::Exact),
        json!({
            "base_points": points.len(),
            "degenerate_skipped": degenerate,
            "lines_tried": set.lines_tried,
            "homogenizing_variable": z0,
            "degree": degree,
        }),
    );
    Ok(Collected { points, forms })
}

fn point_json(q: &[leviflat::ExactComplex]) -> Value {
    Value::Array(q.iter().map(|c| Value::String(format_complex(c))).collect())
}

pub fn analyze(run: &mut Run) -> Result<(), StageError> {
    let phi = run.req.poly("phi").map_err(|e| StageError::input("reality", e.0))?;
    let h = hypersurface(run, phi)?;
    if flatness_stages(run, &h)? == FlatnessVerdict::NotFlat {
        return Ok(());
    }
    locus_stages(run, &h)?;
    degenerate_stage(run, &h);

    let z0 = homogenizing_name(&h);
    let family = collect_segre(run, &h, &z0)?;
    const PENCIL: &str = "pencil";
    if family.forms.len() < 2 {
        return Err(StageError::rejected(PENCIL, "fewer than two nondegenerate Segre varieties were found"));
    }
    let pencil = match pencil_from_family(&family.forms).at(PENCIL)? {
        FamilyPencil::NoPencil { witness } => {
            run.push(
                PENCIL,
                Verdict::NoPencil,
                Some(Tier::Exact),
                json!({
                    "witness": witness.iter().map(|&i| json!({
                        "base_point": point_json(&family.points[i]),
                        "segre_polynomial": family.forms[i].poly().to_string(),
                    })).collect::<Vec<_>>(),
                }),
            );
            return Ok(());
        }
        FamilyPencil::Pencil {
            pencil,
            generators,
            coords,
        } => {
            run.push(
                PENCIL,
                Verdict::Pencil,
                Some(Tier::Exact),
                json!({
                    "generators": generators.map(|i| point_json(&family.points[i])),
                    "members": coords.len(),
                }),
            );
            pencil.canonical()
        }
    };
    let omega = crate::commands::foliation_form_stage(run, &pencil)?;

    const TANGENCY: &str = "tangency";
    if h.n() != 2 {
        run.push(
            TANGENCY,
            Verdict::Skipped,
            None,
            json!({ "reason": "hypersurface tangency is certified in C^2 only" }),
        );
        return Ok(());
    }
    let z = h.z_roster();
    let names: Vec<&str> = z.iter().map(String::as_str).collect();
    let chart = omega.coeffs()[0].vars().to_vec();
    let ordered: Vec<String> = std::iter::once(z0.clone()).chain(z.iter().cloned()).collect();
    if chart != ordered {
        return Err(StageError::oracle(TANGENCY, "pencil roster is not the homogenized chart roster"));
    }
    let affine = AffineForm::from_projective(&omega, &names).at(TANGENCY)?;
    let report = hypersurface_tangency(&affine, &h, &run.sample_options(), &mut run.rng).at(TANGENCY)?;
    tangency_stage(run, TANGENCY, &report);
    if let Some(Value::Object(m)) = run.stages.last_mut().map(|s| &mut s.evidence) {
        m.insert("affine_form".into(), json!(affine.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
        m.insert("scope".into(), Value::String(TANGENCY_SCOPE.into()));
    }
    Ok(())
}
