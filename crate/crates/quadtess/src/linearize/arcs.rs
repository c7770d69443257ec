//! Degenerating arcs: pullbacks of the q-th roots of the negative real axis under φ_f.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::koenigs::Koenigs;
use crate::angles::RationalAngle;
use crate::boettcher::landing_point;
use crate::dynamics::{cis, polish_periodic, CaseTag, DegenerationPair};
use crate::error::{Error, Result};
use crate::geom::{diameter, pull_back_curve};

const PIECE_POINTS: usize = 48;
const MAX_GENERATIONS: usize = 400_000;
const END_TOL: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct DegArc {
    /// arc index k: φ_f = t e^{iπ(2k+1)/q} on the arc
    pub index: usize,
    /// external angle whose ray lands at the endpoint, when identified
    pub angle: Option<RationalAngle>,
    /// traced points from α_0 outward, not including the endpoint
    pub points: Vec<C64>,
    /// polished repelling periodic point the arc accumulates on
    pub endpoint: C64,
    /// distance from the last traced point to the endpoint
    pub gap: f64,
    pub complete: bool,
}

impl DegArc {
    /// Traced points followed by the endpoint.
    pub fn polyline(&self) -> Vec<C64> {
        let mut v = self.points.clone();
        v.push(self.endpoint);
        v
    }
}

/// The q arcs at α_0 for a pair with 0 < r < 1. In Case B the single arc ends at α'_0.
pub fn degenerating_arcs(pair: &DegenerationPair) -> Result<Vec<DegArc>> {
    let f = pair.f;
    let l = pair.l;
    let q = pair.q as usize;
    let p = pair.p as usize % q.max(1);
    let kg = Koenigs::new(f, &pair.o_f.points)?;
    let r = kg.lambda.norm();
    let t0 = 0.5 * kg.local_value_radius() * r;
    let dir = |k: usize| cis(PI * (2 * k + 1) as f64 / q as f64);

    // first pieces: t in [t0, t0/r] straight from the local inverse, plus a short lead-in from α_0
    let mut pieces: Vec<Vec<C64>> = Vec::with_capacity(q);
    let mut arcs: Vec<Vec<C64>> = Vec::with_capacity(q);
    for k in 0..q {
        let mut lead = vec![kg.alpha];
        for j in (1..=8).rev() {
            let t = t0 * 0.5f64.powi(j);
            lead.push(kg.inverse_local(dir(k) * t).ok_or_else(|| Error::ContinuationStall("lead-in".into()))?);
        }
        let mut piece = Vec::with_capacity(PIECE_POINTS + 1);
        for i in 0..=PIECE_POINTS {
            let t = t0 * (-(i as f64) / PIECE_POINTS as f64 * r.ln()).exp();
            piece.push(kg.inverse_local(dir(k) * t).ok_or_else(|| Error::ContinuationStall("first piece".into()))?);
        }
        lead.extend_from_slice(&piece[..PIECE_POINTS]);
        arcs.push(lead);
        pieces.push(piece);
    }

    // generation g+1 of arc k is the f^l pullback of generation g of arc k+p
    let mut moves: Vec<Vec<f64>> = vec![Vec::new(); q];
    let mut done = vec![false; q];
    for _gen in 0..MAX_GENERATIONS {
        if done.iter().all(|&d| d) {
            break;
        }
        let mut next = Vec::with_capacity(q);
        for k in 0..q {
            let src = &pieces[(k + p) % q];
            let start = *pieces[k].last().unwrap();
            next.push(pull_back_curve(f.c, l, src, start, None));
        }
        for k in 0..q {
            if done[k] {
                continue;
            }
            let old_end = *pieces[k].last().unwrap();
            let new_end = *next[k].last().unwrap();
            let piece_diam = diameter(&next[k]);
            if piece_diam > 1e-5 {
                arcs[k].extend_from_slice(&next[k][..next[k].len() - 1]);
            } else {
                arcs[k].push(next[k][0]);
            }
            let mv = (new_end - old_end).norm();
            moves[k].push(mv);
            // remaining length estimate from the contraction ratio over a full rotation
            let n = moves[k].len();
            if n > 2 * q {
                let ratio = (moves[k][n - 1] / moves[k][n - 1 - q]).powf(1.0 / q as f64);
                if ratio < 1.0 {
                    let remaining = mv * ratio / (1.0 - ratio);
                    if remaining < END_TOL {
                        arcs[k].push(new_end);
                        done[k] = true;
                    }
                }
            }
        }
        pieces = next;
    }

    let period = match pair.case_tag {
        CaseTag::A => pair.rot.cycle[0].preperiod_period().1,
        CaseTag::B => pair.l_prime,
    };
    let landings: Vec<(RationalAngle, C64)> = pair
        .rot
        .cycle
        .iter()
        .filter_map(|a| landing_point(f, a).ok().map(|z| (a.clone(), z)))
        .collect();
    let mut out = Vec::with_capacity(q);
    for (k, pts) in arcs.into_iter().enumerate() {
        let last = *pts.last().unwrap();
        let endpoint = match polish_periodic(f, last, period) {
            Ok(z) if (z - last).norm() < 1e-4 => z,
            _ => last,
        };
        // label only when a single cycle ray lands there; in Case B all of them share α'_0
        let near: Vec<&(RationalAngle, C64)> = landings.iter().filter(|a| (a.1 - endpoint).norm() < 1e-3).collect();
        let angle = if near.len() == 1 && pair.case_tag == CaseTag::A { Some(near[0].0.clone()) } else { None };
        out.push(DegArc { index: k, angle, gap: (last - endpoint).norm(), points: pts, endpoint, complete: done[k] });
    }
    Ok(out)
}
