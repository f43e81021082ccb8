use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Value};

use gf2ramsey::colorings::{
    color_by_projection_family, color_independence, color_rwb, projection_family, ColorLabel,
    RWB_PATTERN,
};
use gf2ramsey::forms::{
    decompose, make_bounded, make_symplectic, radical, witt_extend, BilinearSpace, Isometry,
    IsometryType, NamedSpace, SpaceSpec,
};
use gf2ramsey::gf2::{gaussian_binomial, Subspace, SubspaceIter};
use gf2ramsey::par::Parallelism;
use gf2ramsey::ramsey::{
    arrow_decide, check_coloring, dim1_construct, encode_cnf, flat_instance, pram_construct,
    pram_instance, ramsey_degree_bounds, scan_b_copies, tuple_arrow_check, vector_ramsey_search,
    ArrowInstance, ArrowResult, Budget, CheckOutcome, CopyNotion, CopySpec, FlatVariant, Pattern,
    RamseyError, ScanSummary, Truncation, Verdict,
};

use crate::{
    Claim, ClaimStatus, CliError, CommandSpec, NamedColoring, PatternSpec, RunConfig, Section3Check,
};

type Outcome = (Vec<Claim>, Vec<String>);

/// Named generator images and the expected image span.
type NamedMap<'a> = (&'a [(&'a str, &'a str)], [&'a str; 5]);

pub fn dispatch(config: &RunConfig, out: Option<&Path>) -> Result<Outcome, CliError> {
    let ctx = Ctx {
        config,
        mode: config.parallelism(),
        budget: &config.budget,
    };
    let claims = match &config.command {
        CommandSpec::VerifySection2 { k } => ctx.verify_section2(*k)?,
        CommandSpec::VerifySection3 {
            which,
            k,
            m,
            colors,
            a0_dim,
            b0_dim,
        } => ctx.verify_section3(*which, *k, *m, *colors, *a0_dim, *b0_dim)?,
        CommandSpec::Arrow {
            space,
            c,
            pattern_a,
            pattern_b,
            colors,
            hint,
        } => {
            let space = space.build()?;
            vec![ctx.arrow(&space, c.as_ref(), pattern_a, pattern_b, *colors, *hint)?]
        }
        CommandSpec::Degree {
            spaces,
            pattern_a,
            pattern_b,
            colors,
            hint,
        } => vec![ctx.degree(spaces, pattern_a, pattern_b, *colors, *hint)?],
        CommandSpec::Tuples { m, t, k, n, colors } => ctx.tuples(*m, *t, *k, *n, *colors)?,
        CommandSpec::Vector {
            t,
            k,
            colors,
            max_n,
            variant,
        } => vec![ctx.vector(*t, *k, *colors, *max_n, *variant)?],
        CommandSpec::ExportCnf {
            space,
            c,
            pattern_a,
            pattern_b,
            colors,
            threshold,
        } => {
            let dir = out.ok_or_else(|| CliError::Config("export-cnf needs --out".into()))?;
            let space = space.build()?;
            return ctx.export_cnf(
                &space,
                c.as_ref(),
                pattern_a,
                pattern_b,
                *colors,
                *threshold,
                dir,
            );
        }
    };
    Ok((claims, Vec::new()))
}

struct Ctx<'a> {
    config: &'a RunConfig,
    mode: Parallelism,
    budget: &'a Budget,
}

fn claim(name: &str, status: ClaimStatus, truncation: Value, detail: Value) -> Claim {
    Claim {
        name: name.into(),
        status,
        truncation,
        detail,
    }
}

/// Runs `f`, turning a budget error into an `Unknown` claim.
fn or_unknown(
    name: &str,
    truncation: Value,
    f: impl FnOnce() -> Result<Claim, CliError>,
) -> Result<Claim, CliError> {
    match f() {
        Err(CliError::Budget(reason)) => Ok(claim(
            name,
            ClaimStatus::Unknown,
            truncation,
            json!({ "reason": reason }),
        )),
        other => other,
    }
}

fn pass_if(ok: bool) -> ClaimStatus {
    if ok {
        ClaimStatus::Pass
    } else {
        ClaimStatus::Fail
    }
}

fn verdict_status(res: &ArrowResult, expected: Verdict) -> ClaimStatus {
    match &res.verdict {
        Verdict::Unknown(_) => ClaimStatus::Unknown,
        v => pass_if(*v == expected),
    }
}

fn computed(res: &ArrowResult) -> ClaimStatus {
    match res.verdict {
        Verdict::Unknown(_) => ClaimStatus::Unknown,
        _ => ClaimStatus::Computed,
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn summary_value(s: &ScanSummary) -> Value {
    json!({
        "candidates": s.candidates,
        "b_copies": s.b_copies,
        "without_a_copies": s.without_a_copies,
        "a_incidences": s.a_incidences,
        "monochromatic": s.monochromatic,
        "first_monochromatic": s.first_monochromatic,
        "label_sets": s.label_sets.iter().map(|(k, v)| json!({ "labels": label_list(*k), "count": v })).collect::<Vec<_>>(),
    })
}

fn space_label(spec: &SpaceSpec) -> String {
    match spec {
        SpaceSpec::Named(NamedSpace::Symplectic { k }) => format!("symplectic:{k}"),
        SpaceSpec::Named(NamedSpace::Bounded { k, m }) => format!("bounded:{k},{m}"),
        other => serde_json::to_string(other).expect("serializable"),
    }
}

fn label_list(mask: u64) -> Vec<u32> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn split_spec<'a>(p: &'a PatternSpec) -> CopySpec<'a> {
    CopySpec::new(p.pattern, &p.notion)
}

fn rad_subspace(space: &BilinearSpace) -> Result<Subspace, CliError> {
    let n = space.dim();
    let mask = space.radical_mask();
    Ok(
        Subspace::from_rows(n, (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| 1u64 << i))
            .map_err(RamseyError::from)?,
    )
}

fn v1_subspace(space: &BilinearSpace) -> Result<Subspace, CliError> {
    let n = space.dim();
    let mask = space.hyperbolic_mask();
    Ok(
        Subspace::from_rows(n, (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| 1u64 << i))
            .map_err(RamseyError::from)?,
    )
}

/// Radical basis vectors, in coordinate order.
fn radical_coords(space: &BilinearSpace) -> Vec<u64> {
    let mask = space.radical_mask();
    (0..space.dim())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| 1u64 << i)
        .collect()
}

impl Ctx<'_> {
    fn instance(
        &self,
        space: &BilinearSpace,
        c: Option<&Subspace>,
        a: &PatternSpec,
        b: &PatternSpec,
        r: u32,
    ) -> Result<ArrowInstance, CliError> {
        let whole = space.whole();
        let c = c.unwrap_or(&whole);
        if c.ambient_dim() != space.dim() {
            return Err(CliError::Config(
                "C lives in a different ambient space".into(),
            ));
        }
        Ok(ArrowInstance::build(
            space,
            c,
            split_spec(a),
            split_spec(b),
            r,
            self.budget,
            self.mode,
        )?)
    }

    fn hint(
        &self,
        space: &BilinearSpace,
        inst: &ArrowInstance,
        hint: Option<NamedColoring>,
    ) -> Result<Vec<gf2ramsey::colorings::ColorAssignment>, CliError> {
        let Some(h) = hint else { return Ok(Vec::new()) };
        let coloring = match h {
            NamedColoring::Rwb => inst.color_with(|s| color_rwb(space, s, space.order()))?,
            NamedColoring::Independence => inst.color_with(|s| color_independence(space, s))?,
            NamedColoring::ProjectionFamily => {
                let Some(first) = inst.a_copies.first() else {
                    return Ok(Vec::new());
                };
                let family = projection_family(space, &decompose(space, first)?.a1)?;
                inst.color_with(|s| color_by_projection_family(space, s, &family))?
            }
        };
        Ok(vec![coloring])
    }

    fn verify_section2(&self, k: usize) -> Result<Vec<Claim>, CliError> {
        if k < 3 {
            return Err(CliError::Config(format!(
                "no W-copy exists: make_symplectic({k}) has dimension {} < 6",
                2 * k
            )));
        }
        let space = make_symplectic(k)?;
        let trunc = json!({ "space": space.spec(), "k": k });
        let mut claims = vec![self.structure_claim(&space)?];

        let iso = CopyNotion::Isometric;
        let a = CopySpec::new(Pattern::of_type(RWB_PATTERN), &iso);
        let b = CopySpec::new(Pattern::of_type(IsometryType { dim: 6, rad_dim: 0 }), &iso);
        claims.push(or_unknown(
            "lemma-not-monochromatic",
            trunc.clone(),
            || {
                let s = scan_b_copies(
                    &space,
                    &space.whole(),
                    a,
                    b,
                    |u| color_rwb(&space, u, space.order()),
                    self.budget,
                    self.mode,
                )?;
                let both = s.count_containing(&[ColorLabel::RED, ColorLabel::BLUE]);
                let ok = s.b_copies > 0
                    && s.monochromatic == 0
                    && s.without_a_copies == 0
                    && both == s.b_copies;
                Ok(claim(
                    "lemma-not-monochromatic",
                    pass_if(ok),
                    trunc.clone(),
                    json!({ "summary": summary_value(&s), "red_and_blue": both }),
                ))
            },
        )?);

        claims.push(or_unknown("theorem-arrow-fails", trunc.clone(), || {
            let inst =
                ArrowInstance::build(&space, &space.whole(), a, b, 3, self.budget, self.mode)?;
            let hint = inst.color_with(|u| color_rwb(&space, u, space.order()))?;
            let res = arrow_decide(
                &inst.graph,
                3,
                self.config.method,
                std::slice::from_ref(&hint),
                self.budget,
                self.mode,
            )?;
            let revalidated = match &res.witness {
                Some(w) => check_coloring(&inst.graph, w, self.mode)? == CheckOutcome::NoMonoCopy,
                None => false,
            };
            let hint_accepted =
                check_coloring(&inst.graph, &hint, self.mode)? == CheckOutcome::NoMonoCopy;
            let status = match verdict_status(&res, Verdict::Fails) {
                ClaimStatus::Pass if !revalidated || !hint_accepted => ClaimStatus::Fail,
                s => s,
            };
            Ok(claim(
                "theorem-arrow-fails",
                status,
                trunc.clone(),
                json!({
                    "verdict": res.verdict,
                    "stats": res.stats,
                    "witness_revalidated": revalidated,
                    "rwb_accepted": hint_accepted,
                }),
            ))
        })?);
        Ok(claims)
    }

    /// Radicals of the two named subspaces and the two named isometries,
    /// inside the first three hyperbolic pairs.
    fn structure_claim(&self, space: &BilinearSpace) -> Result<Claim, CliError> {
        let named = |e: &str| space.parse_named(e);
        let u = space.span_named(&["e1", "e2", "e3", "e*1+e*2", "e*3"])?;
        let w = space.span_named(&["e1", "e*1", "e2", "e*2", "e3", "e*3"])?;
        let rad_u_ok = radical(space, &u)
            == Subspace::from_rows(space.dim(), [named("e1+e2")?]).map_err(RamseyError::from)?;
        let rad_w_ok = radical(space, &w).dim() == 0;
        let maps: [NamedMap; 2] = [
            (
                &[
                    ("e1", "e3"),
                    ("e2", "e2"),
                    ("e3", "e1"),
                    ("e*1+e*2", "e*2+e*3"),
                    ("e*3", "e*1"),
                ],
                ["e1", "e2", "e3", "e*1", "e*2+e*3"],
            ),
            (
                &[
                    ("e1", "e1"),
                    ("e2", "e3"),
                    ("e3", "e2"),
                    ("e*1+e*2", "e*1+e*3"),
                    ("e*3", "e*2"),
                ],
                ["e1", "e2", "e3", "e*2", "e*1+e*3"],
            ),
        ];
        let mut map_results = Vec::new();
        for (pairs, target) in maps {
            let bits: Vec<(u64, u64)> = pairs
                .iter()
                .map(|(a, b)| Ok((named(a)?, named(b)?)))
                .collect::<Result<_, gf2ramsey::forms::FormError>>()?;
            let g = Isometry::from_pairs(space.dim(), &bits)?;
            let is_isometry = g.validate(space).is_ok();
            let image_ok = g.image() == space.span_named(&target)?;
            let extends = match witt_extend(space, &g) {
                Ok(full) => {
                    full.is_full()
                        && full.validate(space).is_ok()
                        && full.map_subspace(&w) == w
                        && u.rows().iter().all(|&x| full.apply(x) == g.apply(x))
                }
                Err(_) => false,
            };
            map_results.push(json!({
                "map": g,
                "isometry": is_isometry,
                "image_matches": image_ok,
                "witt_extends": extends,
            }));
        }
        let maps_ok = map_results.iter().all(|m| {
            m["isometry"] == Value::Bool(true)
                && m["image_matches"] == Value::Bool(true)
                && m["witt_extends"] == Value::Bool(true)
        });
        Ok(claim(
            "structure",
            pass_if(rad_u_ok && rad_w_ok && maps_ok),
            json!({ "space": space.spec() }),
            json!({
                "rad_u_is_e1_plus_e2": rad_u_ok,
                "rad_w_is_zero": rad_w_ok,
                "maps": map_results,
            }),
        ))
    }

    fn verify_section3(
        &self,
        which: Section3Check,
        k: usize,
        m: usize,
        colors: u32,
        a0_dim: Option<usize>,
        b0_dim: Option<usize>,
    ) -> Result<Vec<Claim>, CliError> {
        match which {
            Section3Check::Lemma => Ok(vec![self.s3_lemma(k, m)?]),
            Section3Check::Independence => self.s3_independence(k, m),
            Section3Check::Pram => {
                self.s3_pram(k, m, colors, a0_dim.unwrap_or(1), b0_dim.unwrap_or(2))
            }
            Section3Check::Dim1 => Ok(vec![self.s3_dim1(
                colors,
                a0_dim.unwrap_or(0),
                b0_dim.unwrap_or(1),
            )?]),
        }
    }

    fn check_total_subspaces(&self, n: usize) -> Result<(), CliError> {
        let mut total: u128 = 0;
        for d in 0..=n {
            total += gaussian_binomial(n, d).map_err(RamseyError::from)?;
        }
        if total > self.budget.max_copies as u128 {
            return Err(CliError::Budget(format!(
                "{total} subspaces exceed budget {}",
                self.budget.max_copies
            )));
        }
        Ok(())
    }

    /// Every A-orbit with nonzero projection against every B-type with a
    /// larger nondegenerate part, colored by projection family.
    fn s3_lemma(&self, k: usize, m: usize) -> Result<Claim, CliError> {
        let space = make_bounded(k, m)?;
        let n = space.dim();
        let trunc = json!({ "space": space.spec() });
        or_unknown("lemma-family-coloring", trunc.clone(), || {
            self.check_total_subspaces(n)?;
            let mut a_keys: Vec<(Pattern, Subspace)> = Vec::new();
            let mut b_types: BTreeSet<(usize, usize)> = BTreeSet::new();
            for d in 0..=n {
                for s in SubspaceIter::new(n, d).map_err(RamseyError::from)? {
                    let p = Pattern::of(&space, &s);
                    b_types.insert((p.dim, p.rad_dim));
                    let meet = p.rad_meet.expect("split space");
                    if p.dim > meet && !a_keys.iter().any(|(q, _)| *q == p) {
                        a_keys.push((p, s));
                    }
                }
            }
            let orbit = CopyNotion::AmbientOrbit;
            let iso = CopyNotion::Isometric;
            let mut pairs = Vec::new();
            let mut all_ok = true;
            for (ap, rep) in &a_keys {
                let a_index = ap.dim - ap.rad_meet.expect("split space");
                let family = projection_family(&space, &decompose(&space, rep)?.a1)?;
                for &(bd, br) in &b_types {
                    if bd - br <= a_index || bd <= ap.dim {
                        continue;
                    }
                    let a = CopySpec::new(*ap, &orbit);
                    let b = CopySpec::new(
                        Pattern::of_type(IsometryType {
                            dim: bd,
                            rad_dim: br,
                        }),
                        &iso,
                    );
                    let s = scan_b_copies(
                        &space,
                        &space.whole(),
                        a,
                        b,
                        |u| color_by_projection_family(&space, u, &family),
                        self.budget,
                        self.mode,
                    )?;
                    if s.b_copies == s.without_a_copies {
                        continue;
                    }
                    all_ok &= s.monochromatic == 0;
                    pairs.push(json!({
                        "a": ap,
                        "b": { "dim": bd, "rad_dim": br },
                        "colors": family.len(),
                        "summary": summary_value(&s),
                    }));
                }
            }
            Ok(claim(
                "lemma-family-coloring",
                pass_if(all_ok && !pairs.is_empty()),
                trunc.clone(),
                json!({ "pairs": pairs }),
            ))
        })
    }

    /// `A = A0 ⊕ A1` with `A1 = <e1..el>`, `B = R ⊕ A1` with
    /// `dim R ≥ 2 dim A`; B-copies split as `(B' ∩ Rad) ⊕ (B' ∩ V1)` with
    /// `B' ∩ V1 ≤ A1`.
    fn s3_independence(&self, k: usize, m: usize) -> Result<Vec<Claim>, CliError> {
        let space = make_bounded(k, m)?;
        let n = space.dim();
        let rad = rad_subspace(&space)?;
        let v1 = v1_subspace(&space)?;
        let trunc = json!({ "space": space.spec() });
        let mut cases = Vec::new();
        let mut loose = Vec::new();
        let mut all_ok = true;
        let orbit = CopyNotion::AmbientOrbit;
        let iso = CopyNotion::Isometric;
        for l in 1..=k {
            let names: Vec<String> = (1..=l).map(|i| format!("e{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let a1 = space.span_named(&refs)?;
            let mut a0 = 0;
            while 2 * (l + a0) <= m {
                let a_pat = Pattern {
                    dim: l + a0,
                    rad_dim: l + a0,
                    rad_meet: Some(a0),
                };
                for rb in 2 * (l + a0)..=m {
                    let bd = l + rb;
                    let b_pat = Pattern::of_type(IsometryType {
                        dim: bd,
                        rad_dim: bd,
                    });
                    let split = |b: &Subspace| {
                        let r = b.intersection(&rad);
                        let h = b.intersection(&v1);
                        r.dim() + h.dim() == b.dim() && h.is_subspace_of(&a1)
                    };
                    let projected = |b: &Subspace| {
                        let d = decompose(&space, b).expect("split space");
                        d.a1.is_subspace_of(&a1)
                    };
                    let case = json!({ "l": l, "dim_a0": a0, "dim_rad_b": rb, "ambient_dim": n });
                    let s = scan_b_copies(
                        &space,
                        &space.whole(),
                        CopySpec::new(a_pat, &orbit),
                        CopySpec::new(b_pat, &iso).with_filter(&split),
                        |u| color_independence(&space, u),
                        self.budget,
                        self.mode,
                    )?;
                    all_ok &= s.monochromatic == 0 && s.b_copies > s.without_a_copies;
                    cases.push(json!({ "case": case, "summary": summary_value(&s) }));
                    let p = scan_b_copies(
                        &space,
                        &space.whole(),
                        CopySpec::new(a_pat, &orbit),
                        CopySpec::new(b_pat, &iso).with_filter(&projected),
                        |u| color_independence(&space, u),
                        self.budget,
                        self.mode,
                    )?;
                    loose.push(json!({ "case": case, "summary": summary_value(&p) }));
                }
                a0 += 1;
            }
        }
        if cases.is_empty() {
            return Err(CliError::Config(format!(
                "m = {m} leaves no case with dim Rad(B) >= 2 dim A"
            )));
        }
        Ok(vec![
            claim(
                "independence-coloring",
                pass_if(all_ok),
                trunc.clone(),
                json!({ "cases": cases }),
            ),
            claim(
                "independence-projection-only",
                ClaimStatus::Exploration,
                trunc,
                json!({
                    "note": "B-copies only required to project into A1, without splitting",
                    "cases": loose,
                }),
            ),
        ])
    }

    fn s3_pram(
        &self,
        k: usize,
        m: usize,
        r: u32,
        a0_dim: usize,
        b0_dim: usize,
    ) -> Result<Vec<Claim>, CliError> {
        let space = make_bounded(k, m)?;
        let coords = radical_coords(&space);
        if a0_dim > b0_dim || b0_dim > coords.len() {
            return Err(CliError::Config(format!(
                "need dim A0 <= dim Rad(B) <= {}, got {a0_dim} and {b0_dim}",
                coords.len()
            )));
        }
        let n = space.dim();
        let a1 = space.span_named(&["e1"])?;
        let a0 =
            Subspace::from_rows(n, coords[..a0_dim].iter().copied()).map_err(RamseyError::from)?;
        let b = Subspace::from_rows(n, coords[..b0_dim].iter().copied())
            .map_err(RamseyError::from)?
            .sum(&a1);
        let trunc =
            json!({ "space": space.spec(), "dim_a0": a0_dim, "dim_rad_b": b0_dim, "colors": r });
        let p = match pram_construct(&space, &a0, &a1, &b, r, m + 1, self.budget, self.mode) {
            Ok(p) => p,
            Err(e @ RamseyError::Truncation { .. }) => {
                let reason = e.to_string();
                return Ok(vec![claim(
                    "pram-construction",
                    ClaimStatus::Unknown,
                    trunc,
                    json!({ "reason": reason }),
                )]);
            }
            Err(e) => return Err(e.into()),
        };
        let mut claims = vec![claim(
            "pram-construction",
            pass_if(p.c0.dim() == p.oracle_n && p.c == p.c0.sum(&p.a1)),
            trunc.clone(),
            json!({ "oracle_n": p.oracle_n, "c0": p.c0, "c": p.c }),
        )];
        claims.push(or_unknown("pram-monochromatic", trunc.clone(), || {
            let inst = pram_instance(&p, r, self.mode)?;
            let res = arrow_decide(
                &inst.graph,
                r,
                self.config.method,
                &[],
                self.budget,
                self.mode,
            )?;
            Ok(claim(
                "pram-monochromatic",
                verdict_status(&res, Verdict::Holds),
                trunc.clone(),
                json!({ "verdict": res.verdict, "witness": res.witness, "stats": res.stats }),
            ))
        })?);
        Ok(claims)
    }

    fn s3_dim1(&self, r: u32, t: usize, k: usize) -> Result<Claim, CliError> {
        let trunc = json!({ "dim_a0": t, "dim_b0": k, "colors": r });
        or_unknown("dim1-monochromatic", trunc.clone(), || {
            let d = dim1_construct(t, k, r, 5, self.budget, self.mode)?;
            let res = arrow_decide(
                &d.instance.graph,
                r,
                self.config.method,
                &[],
                self.budget,
                self.mode,
            )?;
            Ok(claim(
                "dim1-monochromatic",
                verdict_status(&res, Verdict::Holds),
                trunc.clone(),
                json!({
                    "oracle_n": d.oracle_n,
                    "c": d.c,
                    "a1": d.a1,
                    "verdict": res.verdict,
                    "stats": res.stats,
                }),
            ))
        })
    }

    fn arrow(
        &self,
        space: &BilinearSpace,
        c: Option<&Subspace>,
        a: &PatternSpec,
        b: &PatternSpec,
        r: u32,
        hint: Option<NamedColoring>,
    ) -> Result<Claim, CliError> {
        let trunc = json!({ "space": space.spec(), "c": c, "colors": r });
        or_unknown("arrow", trunc.clone(), || {
            let inst = self.instance(space, c, a, b, r)?;
            let hints = self.hint(space, &inst, hint)?;
            let res = arrow_decide(
                &inst.graph,
                r,
                self.config.method,
                &hints,
                self.budget,
                self.mode,
            )?;
            Ok(claim(
                "arrow",
                computed(&res),
                trunc.clone(),
                json!({ "verdict": res.verdict, "witness": res.witness, "stats": res.stats }),
            ))
        })
    }

    fn degree(
        &self,
        spaces: &[SpaceSpec],
        a: &PatternSpec,
        b: &PatternSpec,
        r: u32,
        hint: Option<NamedColoring>,
    ) -> Result<Claim, CliError> {
        let trunc = json!({ "spaces": spaces, "colors": r });
        or_unknown("degree", trunc.clone(), || {
            let mut truncations = Vec::new();
            for spec in spaces {
                let space = spec.build()?;
                let inst = self.instance(&space, None, a, b, r)?;
                let hints = self.hint(&space, &inst, hint)?;
                truncations.push(Truncation {
                    label: space_label(spec),
                    graph: inst.graph,
                    hints,
                });
            }
            let bounds = ramsey_degree_bounds(&truncations, r, self.budget)?;
            Ok(claim(
                "degree",
                ClaimStatus::Computed,
                trunc.clone(),
                to_value(&bounds),
            ))
        })
    }

    fn tuples(
        &self,
        m: usize,
        t: usize,
        k: usize,
        n: usize,
        r: u32,
    ) -> Result<Vec<Claim>, CliError> {
        let trunc = json!({ "m": m, "t": t, "k": k, "n": n, "colors": r });
        let mut claims = Vec::new();
        let res = tuple_arrow_check(m, t, k, r, n, self.config.method, self.budget, self.mode)?;
        let status = match res.verdict {
            Verdict::Unknown(_) => ClaimStatus::Unknown,
            _ if n >= 2 => ClaimStatus::Exploration,
            _ => ClaimStatus::Computed,
        };
        claims.push(claim(
            "tuples",
            status,
            trunc.clone(),
            json!({ "verdict": res.verdict, "witness": res.witness, "stats": res.stats }),
        ));
        if n == 1 {
            let g = flat_instance(m, t, k, FlatVariant::ProperAffine, self.mode)?;
            let affine = arrow_decide(&g, r, self.config.method, &[], self.budget, self.mode)?;
            let status = match (&res.verdict, &affine.verdict) {
                (Verdict::Unknown(_), _) | (_, Verdict::Unknown(_)) => ClaimStatus::Unknown,
                (x, y) => pass_if(x == y),
            };
            claims.push(claim(
                "tuples-match-affine",
                status,
                trunc,
                json!({ "tuples": res.verdict, "proper_affine": affine.verdict }),
            ));
        }
        Ok(claims)
    }

    fn vector(
        &self,
        t: usize,
        k: usize,
        r: u32,
        max_n: usize,
        variant: FlatVariant,
    ) -> Result<Claim, CliError> {
        let trunc = json!({ "t": t, "k": k, "colors": r, "max_n": max_n, "variant": variant });
        match vector_ramsey_search(
            t,
            k,
            r,
            max_n,
            variant,
            self.config.method,
            self.budget,
            self.mode,
        ) {
            Ok(out) => {
                let trace: Vec<Value> = out
                    .trace
                    .iter()
                    .map(|(n, res)| json!({ "n": n, "verdict": res.verdict, "stats": res.stats }))
                    .collect();
                let status = if out.least.is_some() {
                    ClaimStatus::Computed
                } else {
                    ClaimStatus::Unknown
                };
                Ok(claim(
                    "vector-ramsey",
                    status,
                    trunc,
                    json!({ "least_n": out.least, "monotone": out.monotone, "trace": trace }),
                ))
            }
            Err(RamseyError::NotFound(n)) => Ok(claim(
                "vector-ramsey",
                ClaimStatus::Computed,
                trunc,
                json!({ "least_n": Value::Null, "not_found_up_to": n }),
            )),
            Err(e) => Err(e.into()),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn export_cnf(
        &self,
        space: &BilinearSpace,
        c: Option<&Subspace>,
        a: &PatternSpec,
        b: &PatternSpec,
        r: u32,
        threshold: u32,
        dir: &Path,
    ) -> Result<Outcome, CliError> {
        let inst = self.instance(space, c, a, b, r)?;
        let f = encode_cnf(&inst.graph, r, threshold, self.budget.max_variables)?;
        std::fs::create_dir_all(dir)?;
        let cnf_name = "instance.cnf";
        let manifest_name = "instance.manifest.json";
        std::fs::write(dir.join(cnf_name), f.to_dimacs())?;
        let mut manifest = f.manifest_json();
        manifest["a_copies"] = to_value(&inst.a_copies);
        manifest["b_copies"] = to_value(&inst.b_copies);
        std::fs::write(
            dir.join(manifest_name),
            serde_json::to_string_pretty(&manifest).expect("serializable") + "\n",
        )?;
        let header = format!("p cnf {} {}", f.num_vars, f.clauses.len());
        let c = claim(
            "export-cnf",
            ClaimStatus::Computed,
            json!({ "space": space.spec(), "colors": r, "threshold": threshold }),
            json!({
                "header": header,
                "a_copies": inst.a_copies.len(),
                "b_copies": inst.b_copies.len(),
            }),
        );
        Ok((vec![c], vec![cnf_name.into(), manifest_name.into()]))
    }
}
