//! Combinatorial link diagrams (PD codes) and surface-diagram codes,
//! coloring enumeration for both theories, the translation bijection between
//! them, cycle chains and cocycle invariants.
//!
//! PD convention: each crossing is the 4-tuple of incident edge ids listed
//! counterclockwise from the incoming under-edge; edge ids are numbered
//! consecutively along each component's orientation. Crossing signs follow
//! the right-hand rule on (over, under) directions. A semi-arc's normal
//! points to the left of travel, so region constraints read
//! `C(right) * C(s) = C(left)`.

use crate::algebra::ShadowBiquandle;
use crate::chains::{AbelianGroupPresentation, ChainTheory, FormalChain, Gen, TheoryKind};
use crate::cocycles::CochainTable;
use crate::error::{Error, Result};
use crate::tribracket::HorizontalTribracket;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

/// Planar diagram code: one 4-tuple of edge identifiers per crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    pub crossings: Vec<[usize; 4]>,
}

impl PDCode {
    pub fn new(crossings: Vec<[usize; 4]>) -> Self {
        PDCode { crossings }
    }

    /// Standard 3-crossing trefoil diagram.
    pub fn trefoil() -> Self {
        PDCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]])
    }

    /// Standard 4-crossing figure-eight diagram.
    pub fn figure_eight() -> Self {
        PDCode::new(vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
    }

    /// One-crossing unknot (a single twist).
    pub fn kinked_unknot() -> Self {
        PDCode::new(vec![[1, 2, 2, 1]])
    }

    /// Trefoil with one extra twist on an edge (5 crossings... 4 crossings).
    pub fn trefoil_with_kink() -> Self {
        PDCode::new(vec![[1, 6, 2, 7], [5, 8, 6, 1], [7, 4, 8, 5], [2, 4, 3, 3]])
    }

    /// Trefoil with one edge poked over a neighboring edge (5 crossings).
    pub fn trefoil_with_r2() -> Self {
        PDCode::new(vec![
            [3, 6, 4, 7],
            [5, 10, 6, 1],
            [9, 4, 10, 5],
            [8, 2, 9, 1],
            [7, 2, 8, 3],
        ])
    }
}

/// Role data for one crossing. `u1`/`o1` are the under and over semi-arcs
/// adjacent to the source region (0-based edge indices), `u2`/`o2` their
/// counterparts across the crossing. `quad_*` are the four region ids:
/// source, across the under-strand, across the over-strand, opposite.
#[derive(Debug, Clone)]
pub struct CrossingInfo {
    pub ports: [usize; 4],
    pub sign: i8,
    pub u1: usize,
    pub o1: usize,
    pub u2: usize,
    pub o2: usize,
    pub region: usize,
    pub quad_x: usize,
    pub quad_y: usize,
    pub quad_z: usize,
    pub quad_w: usize,
}

/// A PD code resolved into semi-arcs, faces, orientations and crossing roles.
#[derive(Debug, Clone)]
pub struct DiagramStructure {
    pub n_crossings: usize,
    pub n_edges: usize,
    pub n_regions: usize,
    pub crossings: Vec<CrossingInfo>,
    pub edge_right: Vec<usize>,
    pub edge_left: Vec<usize>,
}

struct EndState {
    head: Vec<Option<(usize, usize)>>,
    tail: Vec<Option<(usize, usize)>>,
}

impl EndState {
    fn set_head(&mut self, e: usize, at: (usize, usize)) -> Result<()> {
        match self.head[e] {
            Some(prev) if prev != at => Err(Error::malformed(format!(
                "edge {e} has two head ends"
            ))),
            _ => {
                self.head[e] = Some(at);
                Ok(())
            }
        }
    }

    fn set_tail(&mut self, e: usize, at: (usize, usize)) -> Result<()> {
        match self.tail[e] {
            Some(prev) if prev != at => Err(Error::malformed(format!(
                "edge {e} has two tail ends"
            ))),
            _ => {
                self.tail[e] = Some(at);
                Ok(())
            }
        }
    }
}

/// Resolves a PD code into its full combinatorial structure: strand
/// directions, planar faces by corner traversal (verified by the Euler
/// count, which also rejects disconnected codes), crossing signs and roles.
pub fn build_structure(pd: &PDCode) -> Result<DiagramStructure> {
    let nc = pd.crossings.len();
    if nc == 0 {
        return Err(Error::malformed(
            "0-crossing diagrams are not supported; use a kinked unknot",
        ));
    }
    let ne = 2 * nc;
    let mut occurrences = vec![0usize; ne + 1];
    for c in &pd.crossings {
        for &e in c {
            if e == 0 || e > ne {
                return Err(Error::malformed(format!(
                    "edge id {e} outside 1..={ne}"
                )));
            }
            occurrences[e] += 1;
        }
    }
    for (e, &n) in occurrences.iter().enumerate().skip(1) {
        if n != 2 {
            return Err(Error::malformed(format!(
                "edge {e} appears {n} times, expected 2"
            )));
        }
    }

    // strand directions: under slots are determined; over pairs resolved by
    // propagation, falling back to consecutive numbering
    let mut ends = EndState {
        head: vec![None; ne + 1],
        tail: vec![None; ne + 1],
    };
    for (ci, c) in pd.crossings.iter().enumerate() {
        ends.set_head(c[0], (ci, 0))?;
        ends.set_tail(c[2], (ci, 2))?;
    }
    let mut over_in: Vec<Option<usize>> = vec![None; nc];
    let mut changed = true;
    while changed {
        changed = false;
        for (ci, c) in pd.crossings.iter().enumerate() {
            if over_in[ci].is_some() {
                continue;
            }
            let (e1, e3) = (c[1], c[3]);
            let elsewhere = |slot: &Option<(usize, usize)>, here: (usize, usize)| {
                slot.is_some_and(|at| at != here)
            };
            let pick = if e1 != e3 && elsewhere(&ends.head[e1], (ci, 1)) {
                Some(3)
            } else if e1 != e3 && elsewhere(&ends.head[e3], (ci, 3)) {
                Some(1)
            } else if e1 != e3 && elsewhere(&ends.tail[e1], (ci, 1)) {
                Some(1)
            } else if e1 != e3 && elsewhere(&ends.tail[e3], (ci, 3)) {
                Some(3)
            } else {
                None
            };
            if let Some(p) = pick {
                over_in[ci] = Some(p);
                ends.set_head(c[p], (ci, p))?;
                ends.set_tail(c[4 - p], (ci, 4 - p))?;
                changed = true;
            }
        }
    }
    for (ci, c) in pd.crossings.iter().enumerate() {
        if over_in[ci].is_some() {
            continue;
        }
        let (e1, e3) = (c[1], c[3]);
        let p = if e3 == e1 + 1 {
            1
        } else if e1 == e3 + 1 {
            3
        } else if e1 > e3 {
            1
        } else {
            3
        };
        over_in[ci] = Some(p);
        ends.set_head(c[p], (ci, p))?;
        ends.set_tail(c[4 - p], (ci, 4 - p))?;
    }
    let head: Vec<(usize, usize)> = (1..=ne)
        .map(|e| ends.head[e].ok_or_else(|| Error::malformed(format!("edge {e} has no head"))))
        .collect::<Result<_>>()?;
    let tail: Vec<(usize, usize)> = (1..=ne)
        .map(|e| ends.tail[e].ok_or_else(|| Error::malformed(format!("edge {e} has no tail"))))
        .collect::<Result<_>>()?;

    // faces as orbits of the corner-turn map on darts; the orbit of a dart
    // is the face on its left
    let port_edge = |ci: usize, p: usize| pd.crossings[ci][p];
    let outgoing = |ci: usize, p: usize| -> usize {
        let e = port_edge(ci, p);
        let fwd = tail[e - 1] == (ci, p);
        (e - 1) * 2 + usize::from(!fwd)
    };
    let dart_head = |d: usize| -> (usize, usize) {
        let e = d / 2;
        if d % 2 == 0 {
            head[e]
        } else {
            tail[e]
        }
    };
    let mut face_of = vec![usize::MAX; 2 * ne];
    let mut n_regions = 0usize;
    for d0 in 0..2 * ne {
        if face_of[d0] != usize::MAX {
            continue;
        }
        let fid = n_regions;
        n_regions += 1;
        let mut d = d0;
        while face_of[d] == usize::MAX {
            face_of[d] = fid;
            let (ci, p) = dart_head(d);
            d = outgoing(ci, (p + 3) % 4);
        }
    }
    if (nc as i64) - (ne as i64) + (n_regions as i64) != 2 {
        return Err(Error::malformed(format!(
            "euler count failed ({nc} - {ne} + {n_regions} != 2): \
             code is not a connected planar diagram"
        )));
    }
    let edge_left: Vec<usize> = (0..ne).map(|e| face_of[2 * e]).collect();
    let edge_right: Vec<usize> = (0..ne).map(|e| face_of[2 * e + 1]).collect();

    let mut crossings = Vec::with_capacity(nc);
    for (ci, c) in pd.crossings.iter().enumerate() {
        let positive = over_in[ci] == Some(3);
        let quad = |k: usize| face_of[outgoing(ci, k)];
        let e = |p: usize| c[p] - 1;
        let info = if positive {
            CrossingInfo {
                ports: *c,
                sign: 1,
                u1: e(0),
                o1: e(1),
                u2: e(2),
                o2: e(3),
                region: quad(0),
                quad_x: quad(0),
                quad_y: quad(3),
                quad_z: quad(1),
                quad_w: quad(2),
            }
        } else {
            CrossingInfo {
                ports: *c,
                sign: -1,
                u1: e(2),
                o1: e(1),
                u2: e(0),
                o2: e(3),
                region: quad(1),
                quad_x: quad(1),
                quad_y: quad(2),
                quad_z: quad(0),
                quad_w: quad(3),
            }
        };
        crossings.push(info);
    }
    Ok(DiagramStructure {
        n_crossings: nc,
        n_edges: ne,
        n_regions,
        crossings,
        edge_right,
        edge_left,
    })
}

/// A shadow coloring: one biquandle element per semi-arc, one carrier
/// element per region.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SBColoring {
    pub arcs: Vec<usize>,
    pub regions: Vec<usize>,
}

/// A local-biquandle coloring: one fiber pair per semi-arc. The region
/// values it came from are kept alongside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LBColoring {
    pub arcs: Vec<(usize, usize)>,
    pub regions: Vec<usize>,
}

fn assign(slots: &mut [Option<usize>], i: usize, v: usize) -> Option<bool> {
    match slots[i] {
        Some(w) if w == v => Some(false),
        Some(_) => None,
        None => {
            slots[i] = Some(v);
            Some(true)
        }
    }
}

fn propagate_arcs(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    arcs: &mut [Option<usize>],
) -> bool {
    let bq = sb.biquandle();
    loop {
        let mut changed = false;
        for cr in &ds.crossings {
            let (u1, o1, u2, o2) = (cr.u1, cr.o1, cr.u2, cr.o2);
            let step = match (arcs[u1], arcs[o1], arcs[u2], arcs[o2]) {
                (Some(a), Some(b), _, _) => {
                    let s1 = assign(arcs, u2, bq.under(a, b));
                    let s2 = assign(arcs, o2, bq.over(b, a));
                    match (s1, s2) {
                        (Some(x), Some(y)) => Some(x || y),
                        _ => None,
                    }
                }
                (None, Some(b), Some(c), _) => assign(arcs, u1, bq.under_inv(c, b)),
                (Some(a), None, _, Some(d)) => assign(arcs, o1, bq.over_inv(d, a)),
                (None, None, Some(c), Some(d)) => {
                    let (a, b) = bq.solve_s(d, c);
                    let s1 = assign(arcs, u1, a);
                    let s2 = assign(arcs, o1, b);
                    match (s1, s2) {
                        (Some(x), Some(y)) => Some(x || y),
                        _ => None,
                    }
                }
                _ => Some(false),
            };
            match step {
                Some(c) => changed |= c,
                None => return false,
            }
        }
        if !changed {
            return true;
        }
    }
}

fn arc_colorings_from(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    seed: Vec<Option<usize>>,
) -> Vec<Vec<usize>> {
    let m = sb.b_size();
    let mut out = Vec::new();
    let mut stack = vec![seed];
    while let Some(mut arcs) = stack.pop() {
        if !propagate_arcs(ds, sb, &mut arcs) {
            continue;
        }
        match arcs.iter().position(|a| a.is_none()) {
            None => out.push(arcs.into_iter().map(|a| a.unwrap()).collect()),
            Some(i) => {
                // colors pushed in reverse so the stack pops in order
                for color in (0..m).rev() {
                    let mut next = arcs.clone();
                    next[i] = Some(color);
                    stack.push(next);
                }
            }
        }
    }
    out
}

fn region_extensions(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    arcs: &[usize],
) -> Vec<Vec<usize>> {
    let bs = sb.bset();
    let mut out = Vec::new();
    'seed: for seed in 0..bs.size() {
        let mut regions = vec![usize::MAX; ds.n_regions];
        regions[0] = seed;
        // spanning-tree propagation over the region adjacency graph
        let mut frontier = vec![0usize];
        while let Some(r) = frontier.pop() {
            for e in 0..ds.n_edges {
                let (right, left) = (ds.edge_right[e], ds.edge_left[e]);
                if right == r && regions[left] == usize::MAX {
                    regions[left] = bs.act(regions[right], arcs[e]);
                    frontier.push(left);
                } else if left == r && regions[right] == usize::MAX {
                    regions[right] = bs.act_inv(regions[left], arcs[e]);
                    frontier.push(right);
                }
            }
        }
        if regions.iter().any(|&r| r == usize::MAX) {
            continue; // unreachable region: disconnected adjacency
        }
        // verify every adjacency, not only the tree edges
        for e in 0..ds.n_edges {
            if bs.act(regions[ds.edge_right[e]], arcs[e]) != regions[ds.edge_left[e]] {
                continue 'seed;
            }
        }
        out.push(regions);
    }
    out
}

fn run_partitioned<T: Send>(
    domain: usize,
    jobs: usize,
    f: impl Fn(usize) -> Vec<T> + Sync,
) -> Vec<T> {
    let jobs = jobs.max(1).min(domain.max(1));
    if jobs == 1 {
        return (0..domain).flat_map(f).collect();
    }
    let mut slots: Vec<Vec<T>> = Vec::new();
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    let mut part: Vec<(usize, Vec<T>)> = Vec::new();
                    let mut c = w;
                    while c < domain {
                        part.push((c, f(c)));
                        c += jobs;
                    }
                    part
                })
            })
            .collect();
        let mut gathered: Vec<(usize, Vec<T>)> = Vec::new();
        for h in handles {
            gathered.extend(h.join().expect("enumeration worker panicked"));
        }
        gathered.sort_by_key(|(c, _)| *c);
        slots = gathered.into_iter().map(|(_, v)| v).collect();
    });
    slots.into_iter().flatten().collect()
}

/// All shadow colorings: arc colorings by backtracking with crossing-relation
/// propagation, then every region seed propagated and verified. The result
/// is sorted, and independent of `jobs`.
pub fn enumerate_sb_colorings(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    jobs: usize,
) -> Vec<SBColoring> {
    let m = sb.b_size();
    let mut out = run_partitioned(m, jobs, |first| {
        let mut seed = vec![None; ds.n_edges];
        seed[0] = Some(first);
        let mut part = Vec::new();
        for arcs in arc_colorings_from(ds, sb, seed) {
            for regions in region_extensions(ds, sb, &arcs) {
                part.push(SBColoring {
                    arcs: arcs.clone(),
                    regions,
                });
            }
        }
        part
    });
    out.sort_unstable();
    out
}

fn propagate_regions(
    ds: &DiagramStructure,
    tri: &HorizontalTribracket,
    regions: &mut [Option<usize>],
) -> bool {
    loop {
        let mut changed = false;
        for cr in &ds.crossings {
            let (qx, qy, qz, qw) = (cr.quad_x, cr.quad_y, cr.quad_z, cr.quad_w);
            let step = match (regions[qx], regions[qy], regions[qz], regions[qw]) {
                (Some(x), Some(y), Some(z), _) => assign(regions, qw, tri.bracket(x, y, z)),
                (Some(x), Some(y), None, Some(w)) => {
                    assign(regions, qz, tri.solve_third(x, y, w))
                }
                (Some(x), None, Some(z), Some(w)) => {
                    assign(regions, qy, tri.solve_second(x, z, w))
                }
                (None, Some(y), Some(z), Some(w)) => {
                    assign(regions, qx, tri.solve_first(y, z, w))
                }
                _ => Some(false),
            };
            match step {
                Some(c) => changed |= c,
                None => return false,
            }
        }
        if !changed {
            return true;
        }
    }
}

/// All local-biquandle colorings, enumerated independently of the shadow
/// side: region colorings by backtracking under the bracket relation at
/// every crossing, semi-arc pairs read off as (right region, left region).
pub fn enumerate_lb_colorings(
    ds: &DiagramStructure,
    tri: &HorizontalTribracket,
    jobs: usize,
) -> Vec<LBColoring> {
    let k = tri.size();
    let mut out = run_partitioned(k, jobs, |first| {
        let mut part = Vec::new();
        let mut seed = vec![None; ds.n_regions];
        seed[0] = Some(first);
        let mut stack = vec![seed];
        while let Some(mut regions) = stack.pop() {
            if !propagate_regions(ds, tri, &mut regions) {
                continue;
            }
            match regions.iter().position(|r| r.is_none()) {
                None => {
                    let regions: Vec<usize> = regions.into_iter().map(|r| r.unwrap()).collect();
                    let arcs = (0..ds.n_edges)
                        .map(|e| (regions[ds.edge_right[e]], regions[ds.edge_left[e]]))
                        .collect();
                    part.push(LBColoring { arcs, regions });
                }
                Some(i) => {
                    for color in (0..k).rev() {
                        let mut next = regions.clone();
                        next[i] = Some(color);
                        stack.push(next);
                    }
                }
            }
        }
        part
    });
    out.sort_unstable();
    out
}

/// The translation bijection: each semi-arc receives the pair of its two
/// region colors (right first). The result is verified to satisfy the
/// local-biquandle crossing conditions.
pub fn translate_sb_to_lb(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    c: &SBColoring,
) -> Result<LBColoring> {
    verify_sb_coloring(ds, sb, c)?;
    let arcs: Vec<(usize, usize)> = (0..ds.n_edges)
        .map(|e| (c.regions[ds.edge_right[e]], c.regions[ds.edge_left[e]]))
        .collect();
    Ok(LBColoring {
        arcs,
        regions: c.regions.clone(),
    })
}

/// Inverse translation: region colors are reconstructed from the pairs
/// (with consistency checked across all semi-arcs) and each semi-arc gets
/// `x searrow y`.
pub fn translate_lb_to_sb(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    c: &LBColoring,
) -> Result<SBColoring> {
    if !sb.strongly_connected() {
        return Err(Error::contract(
            "translation needs a strongly connected shadow biquandle",
        ));
    }
    let bs = sb.bset();
    let mut regions = vec![usize::MAX; ds.n_regions];
    for e in 0..ds.n_edges {
        let (x, y) = c.arcs[e];
        for (region, v) in [(ds.edge_right[e], x), (ds.edge_left[e], y)] {
            if regions[region] == usize::MAX {
                regions[region] = v;
            } else if regions[region] != v {
                return Err(Error::contract(format!(
                    "inconsistent pair coloring at region {region}"
                )));
            }
        }
    }
    if regions.iter().any(|&r| r == usize::MAX) {
        return Err(Error::contract("pair coloring misses a region"));
    }
    let arcs: Vec<usize> = c
        .arcs
        .iter()
        .map(|&(x, y)| bs.searrow(x, y))
        .collect();
    let out = SBColoring { arcs, regions };
    verify_sb_coloring(ds, sb, &out)?;
    Ok(out)
}

/// Checks all crossing and region conditions of a shadow coloring.
pub fn verify_sb_coloring(
    ds: &DiagramStructure,
    sb: &ShadowBiquandle,
    c: &SBColoring,
) -> Result<()> {
    if c.arcs.len() != ds.n_edges || c.regions.len() != ds.n_regions {
        return Err(Error::contract("coloring size mismatch"));
    }
    let bq = sb.biquandle();
    let bs = sb.bset();
    for cr in &ds.crossings {
        if c.arcs[cr.u2] != bq.under(c.arcs[cr.u1], c.arcs[cr.o1])
            || c.arcs[cr.o2] != bq.over(c.arcs[cr.o1], c.arcs[cr.u1])
        {
            return Err(Error::contract("crossing relation violated"));
        }
    }
    for e in 0..ds.n_edges {
        if bs.act(c.regions[ds.edge_right[e]], c.arcs[e]) != c.regions[ds.edge_left[e]] {
            return Err(Error::contract("region relation violated"));
        }
    }
    Ok(())
}

/// Checks the local-biquandle conditions of a pair coloring.
pub fn verify_lb_coloring(
    ds: &DiagramStructure,
    tri: &HorizontalTribracket,
    c: &LBColoring,
) -> Result<()> {
    if c.arcs.len() != ds.n_edges {
        return Err(Error::contract("coloring size mismatch"));
    }
    for cr in &ds.crossings {
        let (x1, y) = c.arcs[cr.u1];
        let (x2, z) = c.arcs[cr.o1];
        if x1 != x2 {
            return Err(Error::contract("crossing bases differ"));
        }
        let w = tri.bracket(x1, y, z);
        if c.arcs[cr.u2] != (z, w) || c.arcs[cr.o2] != (y, w) {
            return Err(Error::contract("local crossing relation violated"));
        }
    }
    Ok(())
}

/// The degree-2 cycle of a shadow coloring: signed `(x, a, b)` over the
/// crossings, with degenerate weights dropped by the quotient.
pub fn chain_w_sb(
    ds: &DiagramStructure,
    c: &SBColoring,
    theory: &ChainTheory,
) -> Result<FormalChain> {
    if theory.kind() != TheoryKind::Sb {
        return Err(Error::contract("chain theory is not the SB complex"));
    }
    let mut w = FormalChain::zero(2);
    for cr in &ds.crossings {
        let g = Gen::new(c.regions[cr.region], vec![c.arcs[cr.u1], c.arcs[cr.o1]]);
        if g.is_degenerate() {
            continue;
        }
        let idx = theory
            .gen_index(&g)
            .ok_or_else(|| Error::contract("weight outside the complex basis"))?;
        w.add(idx, cr.sign as i64);
    }
    Ok(w)
}

/// The degree-2 cycle of a local-biquandle coloring: signed
/// `((x,y),(x,z))` over the crossings.
pub fn chain_w_lb(
    ds: &DiagramStructure,
    c: &LBColoring,
    theory: &ChainTheory,
) -> Result<FormalChain> {
    if theory.kind() != TheoryKind::Lb {
        return Err(Error::contract("chain theory is not the LB complex"));
    }
    let mut w = FormalChain::zero(2);
    for cr in &ds.crossings {
        let (x, y) = c.arcs[cr.u1];
        let (x2, z) = c.arcs[cr.o1];
        if x != x2 {
            return Err(Error::contract("crossing bases differ"));
        }
        let g = Gen::new(x, vec![y, z]);
        if g.is_degenerate() {
            continue;
        }
        let idx = theory
            .gen_index(&g)
            .ok_or_else(|| Error::contract("weight outside the complex basis"))?;
        w.add(idx, cr.sign as i64);
    }
    Ok(w)
}

/// Count, sorted cocycle-value multiset, and sorted homology-class multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub colorings: usize,
    pub phi: Vec<(u64, usize)>,
    pub classes: Vec<(Vec<i64>, usize)>,
}

fn collect_multisets(
    phi_values: Vec<u64>,
    class_values: Vec<Vec<i64>>,
) -> InvariantResult {
    let colorings = phi_values.len();
    let mut phi_map: BTreeMap<u64, usize> = BTreeMap::new();
    for v in phi_values {
        *phi_map.entry(v).or_insert(0) += 1;
    }
    let mut class_map: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for v in class_values {
        *class_map.entry(v).or_insert(0) += 1;
    }
    InvariantResult {
        colorings,
        phi: phi_map.into_iter().collect(),
        classes: class_map.into_iter().collect(),
    }
}

fn coords_to_i64(coords: Vec<num_bigint::BigInt>) -> Result<Vec<i64>> {
    coords
        .into_iter()
        .map(|c| {
            c.to_i64()
                .ok_or_else(|| Error::contract("class coordinate exceeds i64"))
        })
        .collect()
}

/// Full link-invariant computation on the shadow side: rejects non-cocycles,
/// then evaluates `theta(W)` and the homology class of `W` per coloring.
pub fn invariants_sb(
    ds: &DiagramStructure,
    theory: &ChainTheory,
    theta: &CochainTable,
    jobs: usize,
) -> Result<InvariantResult> {
    let sb = theory
        .sb_structure()
        .ok_or_else(|| Error::contract("SB invariants need an SB chain theory"))?;
    if !theory.is_cocycle(theta, 2, theta.modulus)? {
        return Err(Error::contract("cochain is not a 2-cocycle"));
    }
    let pres = theory.homology_z(2)?;
    let colorings = enumerate_sb_colorings(ds, sb, jobs);
    let mut phi = Vec::with_capacity(colorings.len());
    let mut classes = Vec::with_capacity(colorings.len());
    for c in &colorings {
        let w = chain_w_sb(ds, c, theory)?;
        phi.push(theory.evaluate(theta, &w)?);
        classes.push(coords_to_i64(theory.class_coords(&pres, &w)?)?);
    }
    Ok(collect_multisets(phi, classes))
}

/// Full link-invariant computation on the local side.
pub fn invariants_lb(
    ds: &DiagramStructure,
    theory: &ChainTheory,
    theta: &CochainTable,
    jobs: usize,
) -> Result<InvariantResult> {
    let tri = theory
        .lb_structure()
        .ok_or_else(|| Error::contract("LB invariants need an LB chain theory"))?;
    if !theory.is_cocycle(theta, 2, theta.modulus)? {
        return Err(Error::contract("cochain is not a 2-cocycle"));
    }
    let pres = theory.homology_z(2)?;
    let colorings = enumerate_lb_colorings(ds, tri, jobs);
    let mut phi = Vec::with_capacity(colorings.len());
    let mut classes = Vec::with_capacity(colorings.len());
    for c in &colorings {
        let w = chain_w_lb(ds, c, theory)?;
        phi.push(theory.evaluate(theta, &w)?);
        classes.push(coords_to_i64(theory.class_coords(&pres, &w)?)?);
    }
    Ok(collect_multisets(phi, classes))
}

pub mod surface {
    //! Surface-diagram codes: trusted combinatorial input. Sheets and
    //! regions are numbered; double-curve records carry the four semi-sheet
    //! roles, adjacency records orient each sheet's normal from its first
    //! region to its second, and triple-point records carry the sign and the
    //! (region, bottom, middle, top) roles.

    use super::*;

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct TriplePoint {
        pub sign: i8,
        pub region: usize,
        pub bottom: usize,
        pub middle: usize,
        pub top: usize,
    }

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct SurfaceCode {
        pub sheets: usize,
        pub regions: usize,
        pub double_curves: Vec<[usize; 4]>, // (u1, u2, o1, o2)
        pub adjacency: Vec<[usize; 3]>,     // (sheet, r1, r2)
        pub triple_points: Vec<TriplePoint>,
    }

    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
    pub struct SurfaceSBColoring {
        pub sheets: Vec<usize>,
        pub regions: Vec<usize>,
    }

    #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
    pub struct SurfaceLBColoring {
        pub pairs: Vec<(usize, usize)>,
        pub regions: Vec<usize>,
    }

    impl SurfaceCode {
        pub fn validate(&self) -> Result<()> {
            if self.sheets == 0 || self.regions == 0 {
                return Err(Error::malformed("surface code needs sheets and regions"));
            }
            for dc in &self.double_curves {
                if dc.iter().any(|&s| s >= self.sheets) {
                    return Err(Error::malformed("double curve references unknown sheet"));
                }
            }
            let mut covered = vec![false; self.sheets];
            let mut region_covered = vec![false; self.regions];
            for adj in &self.adjacency {
                if adj[0] >= self.sheets || adj[1] >= self.regions || adj[2] >= self.regions {
                    return Err(Error::malformed("adjacency record out of range"));
                }
                covered[adj[0]] = true;
                region_covered[adj[1]] = true;
                region_covered[adj[2]] = true;
            }
            if let Some(s) = covered.iter().position(|&c| !c) {
                return Err(Error::malformed(format!(
                    "sheet {s} has no adjacency record"
                )));
            }
            if let Some(r) = region_covered.iter().position(|&c| !c) {
                return Err(Error::malformed(format!(
                    "region {r} appears in no adjacency record"
                )));
            }
            for tp in &self.triple_points {
                if tp.sign != 1 && tp.sign != -1 {
                    return Err(Error::malformed("triple point sign must be +1 or -1"));
                }
                if tp.region >= self.regions
                    || tp.bottom >= self.sheets
                    || tp.middle >= self.sheets
                    || tp.top >= self.sheets
                {
                    return Err(Error::malformed("triple point role out of range"));
                }
            }
            Ok(())
        }

        /// First adjacency record of a sheet.
        fn record(&self, sheet: usize) -> [usize; 3] {
            *self
                .adjacency
                .iter()
                .find(|a| a[0] == sheet)
                .expect("validated code")
        }

        /// One sheet over two regions, no double curves or triple points.
        pub fn sphere() -> Self {
            SurfaceCode {
                sheets: 1,
                regions: 2,
                double_curves: vec![],
                adjacency: vec![[0, 0, 1]],
                triple_points: vec![],
            }
        }

        /// Shared scaffold of the synthetic triple-point codes: one double
        /// curve through four sheets plus a fifth sheet on the source
        /// region, so three sheets share the region needed by the
        /// triple-point records.
        fn scaffold(triple_points: Vec<TriplePoint>) -> Self {
            SurfaceCode {
                sheets: 5,
                regions: 4,
                double_curves: vec![[0, 2, 1, 3]],
                adjacency: vec![[0, 0, 1], [1, 0, 2], [2, 2, 3], [3, 1, 3], [4, 0, 3]],
                triple_points,
            }
        }

        /// Two triple points with identical roles and opposite signs: the
        /// cycle W vanishes identically, as for a trace of a move performed
        /// and undone.
        pub fn cancelling_pair() -> Self {
            Self::scaffold(vec![
                TriplePoint {
                    sign: 1,
                    region: 0,
                    bottom: 0,
                    middle: 1,
                    top: 4,
                },
                TriplePoint {
                    sign: -1,
                    region: 0,
                    bottom: 0,
                    middle: 1,
                    top: 4,
                },
            ])
        }

        /// Two triple points with swapped bottom/middle roles: W is a
        /// nonzero chain, exercising the degree-3 weight machinery. This
        /// code does not model a closed surface, so W need not be a cycle.
        pub fn twisted_pair() -> Self {
            Self::scaffold(vec![
                TriplePoint {
                    sign: 1,
                    region: 0,
                    bottom: 0,
                    middle: 1,
                    top: 4,
                },
                TriplePoint {
                    sign: -1,
                    region: 0,
                    bottom: 1,
                    middle: 0,
                    top: 4,
                },
            ])
        }
    }

    /// Constraint-satisfaction enumeration of shadow colorings over sheet
    /// and region variables.
    pub fn enumerate_surface_sb(
        sc: &SurfaceCode,
        sb: &ShadowBiquandle,
        jobs: usize,
    ) -> Result<Vec<SurfaceSBColoring>> {
        sc.validate()?;
        let bq = sb.biquandle();
        let bs = sb.bset();
        let n_vars = sc.sheets + sc.regions;
        let check = |vals: &[Option<usize>]| -> bool {
            for dc in &sc.double_curves {
                let [u1, u2, o1, o2] = *dc;
                if let (Some(a), Some(b), Some(c)) = (vals[u1], vals[o1], vals[u2]) {
                    if c != bq.under(a, b) {
                        return false;
                    }
                }
                if let (Some(a), Some(b), Some(d)) = (vals[u1], vals[o1], vals[o2]) {
                    if d != bq.over(b, a) {
                        return false;
                    }
                }
            }
            for adj in &sc.adjacency {
                let (s, r1, r2) = (adj[0], sc.sheets + adj[1], sc.sheets + adj[2]);
                if let (Some(a), Some(x), Some(y)) = (vals[s], vals[r1], vals[r2]) {
                    if bs.act(x, a) != y {
                        return false;
                    }
                }
            }
            true
        };
        let domain_of = |v: usize| if v < sc.sheets { sb.b_size() } else { sb.x_size() };
        let first_domain = domain_of(0);
        let mut out = run_partitioned(first_domain, jobs, |first| {
            let mut part = Vec::new();
            let mut vals: Vec<Option<usize>> = vec![None; n_vars];
            vals[0] = Some(first);
            if !check(&vals) {
                return part;
            }
            let mut stack = vec![(vals, 1usize)];
            while let Some((vals, next)) = stack.pop() {
                if next == n_vars {
                    part.push(SurfaceSBColoring {
                        sheets: vals[..sc.sheets].iter().map(|v| v.unwrap()).collect(),
                        regions: vals[sc.sheets..].iter().map(|v| v.unwrap()).collect(),
                    });
                    continue;
                }
                for color in (0..domain_of(next)).rev() {
                    let mut v2 = vals.clone();
                    v2[next] = Some(color);
                    if check(&v2) {
                        stack.push((v2, next + 1));
                    }
                }
            }
            part
        });
        out.sort_unstable();
        Ok(out)
    }

    /// Region-variable enumeration of local-biquandle colorings.
    pub fn enumerate_surface_lb(
        sc: &SurfaceCode,
        tri: &HorizontalTribracket,
        jobs: usize,
    ) -> Result<Vec<SurfaceLBColoring>> {
        sc.validate()?;
        // pair of a sheet under a region assignment
        let pair = |sc: &SurfaceCode, regions: &[Option<usize>], s: usize| {
            let rec = sc.record(s);
            match (regions[rec[1]], regions[rec[2]]) {
                (Some(x), Some(y)) => Some((x, y)),
                _ => None,
            }
        };
        let check = |regions: &[Option<usize>]| -> bool {
            // duplicate adjacency records for one sheet must agree
            for s in 0..sc.sheets {
                let rec0 = sc.record(s);
                for a in sc.adjacency.iter().filter(|a| a[0] == s) {
                    for (i, j) in [(a[1], rec0[1]), (a[2], rec0[2])] {
                        if let (Some(u), Some(v)) = (regions[i], regions[j]) {
                            if u != v {
                                return false;
                            }
                        }
                    }
                }
            }
            for dc in &sc.double_curves {
                let [u1, u2, o1, o2] = *dc;
                let (pu1, po1) = (pair(sc, regions, u1), pair(sc, regions, o1));
                if let (Some((x1, y)), Some((x2, z))) = (pu1, po1) {
                    if x1 != x2 {
                        return false;
                    }
                    let w = tri.bracket(x1, y, z);
                    if let Some((a, b)) = pair(sc, regions, u2) {
                        if (a, b) != (z, w) {
                            return false;
                        }
                    }
                    if let Some((a, b)) = pair(sc, regions, o2) {
                        if (a, b) != (y, w) {
                            return false;
                        }
                    }
                }
            }
            true
        };
        let k = tri.size();
        let mut out = run_partitioned(k, jobs, |first| {
            let mut part = Vec::new();
            let mut regions: Vec<Option<usize>> = vec![None; sc.regions];
            regions[0] = Some(first);
            if !check(&regions) {
                return part;
            }
            let mut stack = vec![(regions, 1usize)];
            while let Some((regions, next)) = stack.pop() {
                if next == sc.regions {
                    let regions: Vec<usize> =
                        regions.into_iter().map(|r| r.unwrap()).collect();
                    let pairs = (0..sc.sheets)
                        .map(|s| {
                            let rec = sc.record(s);
                            (regions[rec[1]], regions[rec[2]])
                        })
                        .collect();
                    part.push(SurfaceLBColoring { pairs, regions });
                    continue;
                }
                for color in (0..k).rev() {
                    let mut r2 = regions.clone();
                    r2[next] = Some(color);
                    if check(&r2) {
                        stack.push((r2, next + 1));
                    }
                }
            }
            part
        });
        out.sort_unstable();
        Ok(out)
    }

    /// Surface version of the translation bijection.
    pub fn translate_sb_to_lb(
        sc: &SurfaceCode,
        c: &SurfaceSBColoring,
    ) -> SurfaceLBColoring {
        let pairs = (0..sc.sheets)
            .map(|s| {
                let rec = sc.record(s);
                (c.regions[rec[1]], c.regions[rec[2]])
            })
            .collect();
        SurfaceLBColoring {
            pairs,
            regions: c.regions.clone(),
        }
    }

    /// Inverse surface translation: regions from pairs, sheets by searrow.
    pub fn translate_lb_to_sb(
        sc: &SurfaceCode,
        sb: &ShadowBiquandle,
        c: &SurfaceLBColoring,
    ) -> Result<SurfaceSBColoring> {
        if !sb.strongly_connected() {
            return Err(Error::contract(
                "translation needs a strongly connected shadow biquandle",
            ));
        }
        let bs = sb.bset();
        let mut regions = vec![usize::MAX; sc.regions];
        for s in 0..sc.sheets {
            let rec = sc.record(s);
            let (x, y) = c.pairs[s];
            for (region, v) in [(rec[1], x), (rec[2], y)] {
                if regions[region] == usize::MAX {
                    regions[region] = v;
                } else if regions[region] != v {
                    return Err(Error::contract("inconsistent pair coloring"));
                }
            }
        }
        if regions.iter().any(|&r| r == usize::MAX) {
            return Err(Error::contract("pair coloring misses a region"));
        }
        let sheets = c.pairs.iter().map(|&(x, y)| bs.searrow(x, y)).collect();
        Ok(SurfaceSBColoring { sheets, regions })
    }

    /// Degree-3 weight chain of a shadow surface coloring.
    pub fn chain_w_sb(
        sc: &SurfaceCode,
        c: &SurfaceSBColoring,
        theory: &ChainTheory,
    ) -> Result<FormalChain> {
        if theory.kind() != TheoryKind::Sb {
            return Err(Error::contract("chain theory is not the SB complex"));
        }
        let mut w = FormalChain::zero(3);
        for tp in &sc.triple_points {
            let g = Gen::new(
                c.regions[tp.region],
                vec![c.sheets[tp.bottom], c.sheets[tp.middle], c.sheets[tp.top]],
            );
            if g.is_degenerate() {
                continue;
            }
            let idx = theory
                .gen_index(&g)
                .ok_or_else(|| Error::contract("weight outside the complex basis"))?;
            w.add(idx, tp.sign as i64);
        }
        Ok(w)
    }

    /// Degree-3 weight chain of a local surface coloring. The three pairs at
    /// a triple point must share their base.
    pub fn chain_w_lb(
        sc: &SurfaceCode,
        c: &SurfaceLBColoring,
        theory: &ChainTheory,
    ) -> Result<FormalChain> {
        if theory.kind() != TheoryKind::Lb {
            return Err(Error::contract("chain theory is not the LB complex"));
        }
        let mut w = FormalChain::zero(3);
        for tp in &sc.triple_points {
            let (xb, y) = c.pairs[tp.bottom];
            let (xm, z) = c.pairs[tp.middle];
            let (xt, v) = c.pairs[tp.top];
            if xb != xm || xm != xt {
                return Err(Error::contract("triple point pairs have mixed bases"));
            }
            let g = Gen::new(xb, vec![y, z, v]);
            if g.is_degenerate() {
                continue;
            }
            let idx = theory
                .gen_index(&g)
                .ok_or_else(|| Error::contract("weight outside the complex basis"))?;
            w.add(idx, tp.sign as i64);
        }
        Ok(w)
    }

    /// Surface invariants on the shadow side (degree-3 cocycle).
    pub fn invariants_sb(
        sc: &SurfaceCode,
        theory: &ChainTheory,
        theta: &CochainTable,
        jobs: usize,
    ) -> Result<InvariantResult> {
        let sb = theory
            .sb_structure()
            .ok_or_else(|| Error::contract("SB invariants need an SB chain theory"))?;
        if !theory.is_cocycle(theta, 3, theta.modulus)? {
            return Err(Error::contract("cochain is not a 3-cocycle"));
        }
        let pres = theory.homology_z(3)?;
        let colorings = enumerate_surface_sb(sc, sb, jobs)?;
        let mut phi = Vec::new();
        let mut classes = Vec::new();
        for c in &colorings {
            let w = chain_w_sb(sc, c, theory)?;
            phi.push(theory.evaluate(theta, &w)?);
            classes.push(super::coords_to_i64(class_or_raw(theory, &pres, &w)?)?);
        }
        Ok(super::collect_multisets(phi, classes))
    }

    /// Surface invariants on the local side (degree-3 cocycle).
    pub fn invariants_lb(
        sc: &SurfaceCode,
        theory: &ChainTheory,
        theta: &CochainTable,
        jobs: usize,
    ) -> Result<InvariantResult> {
        let tri = theory
            .lb_structure()
            .ok_or_else(|| Error::contract("LB invariants need an LB chain theory"))?;
        if !theory.is_cocycle(theta, 3, theta.modulus)? {
            return Err(Error::contract("cochain is not a 3-cocycle"));
        }
        let pres = theory.homology_z(3)?;
        let colorings = enumerate_surface_lb(sc, tri, jobs)?;
        let mut phi = Vec::new();
        let mut classes = Vec::new();
        for c in &colorings {
            let w = chain_w_lb(sc, c, theory)?;
            phi.push(theory.evaluate(theta, &w)?);
            classes.push(super::coords_to_i64(class_or_raw(theory, &pres, &w)?)?);
        }
        Ok(super::collect_multisets(phi, classes))
    }

    /// Class coordinates when W is a cycle; the raw chain vector otherwise
    /// (synthetic non-closed codes produce weights outside the kernel).
    fn class_or_raw(
        theory: &ChainTheory,
        pres: &AbelianGroupPresentation,
        w: &FormalChain,
    ) -> Result<Vec<num_bigint::BigInt>> {
        if theory.boundary(w)?.is_zero() {
            theory.class_coords(pres, w)
        } else {
            let mut dense = vec![num_bigint::BigInt::from(0); theory.gen_count(w.degree)];
            for (i, c) in w.iter() {
                dense[i] = num_bigint::BigInt::from(c);
            }
            Ok(dense)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dihedral;
    use crate::cocycles::{mochizuki_2cocycle, transport_mu};
    use crate::tribracket::corresponding_tribracket;

    #[test]
    fn trefoil_structure() {
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        assert_eq!(ds.n_crossings, 3);
        assert_eq!(ds.n_edges, 6);
        assert_eq!(ds.n_regions, 5);
        assert!(ds.crossings.iter().all(|c| c.sign == -1));
        // all three source regions are the same face
        let r0 = ds.crossings[0].region;
        assert!(ds.crossings.iter().all(|c| c.region == r0));
    }

    #[test]
    fn kinked_unknot_structure() {
        let ds = build_structure(&PDCode::kinked_unknot()).unwrap();
        assert_eq!((ds.n_crossings, ds.n_edges, ds.n_regions), (1, 2, 3));
    }

    #[test]
    fn figure_eight_structure() {
        let ds = build_structure(&PDCode::figure_eight()).unwrap();
        assert_eq!((ds.n_crossings, ds.n_edges, ds.n_regions), (4, 8, 6));
        let writhe: i64 = ds.crossings.iter().map(|c| c.sign as i64).sum();
        assert_eq!(writhe, 0);
    }

    #[test]
    fn derived_diagrams_pass_euler_check() {
        assert_eq!(
            build_structure(&PDCode::trefoil_with_kink())
                .unwrap()
                .n_regions,
            6
        );
        assert_eq!(
            build_structure(&PDCode::trefoil_with_r2())
                .unwrap()
                .n_regions,
            7
        );
    }

    #[test]
    fn zero_crossing_rejected() {
        assert!(build_structure(&PDCode::new(vec![])).is_err());
    }

    #[test]
    fn bad_edge_multiplicity_rejected() {
        assert!(build_structure(&PDCode::new(vec![[1, 1, 2, 1]])).is_err());
    }

    #[test]
    fn disconnected_code_rejected() {
        // two disjoint kinks: valid arities, fails the euler count
        let pd = PDCode::new(vec![[1, 2, 2, 1], [3, 4, 4, 3]]);
        assert!(build_structure(&pd).is_err());
    }

    #[test]
    fn trefoil_coloring_counts() {
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        let sb = dihedral(3).unwrap();
        let cols = enumerate_sb_colorings(&ds, &sb, 1);
        assert_eq!(cols.len(), 27);
        for c in &cols {
            verify_sb_coloring(&ds, &sb, c).unwrap();
        }
        let tri = corresponding_tribracket(&sb).unwrap();
        let lb = enumerate_lb_colorings(&ds, &tri, 1);
        assert_eq!(lb.len(), 27);
        for c in &lb {
            verify_lb_coloring(&ds, &tri, c).unwrap();
        }
    }

    #[test]
    fn kinked_unknot_coloring_count() {
        let ds = build_structure(&PDCode::kinked_unknot()).unwrap();
        let sb = dihedral(3).unwrap();
        assert_eq!(enumerate_sb_colorings(&ds, &sb, 1).len(), 9);
    }

    #[test]
    fn figure_eight_counts() {
        let ds = build_structure(&PDCode::figure_eight()).unwrap();
        let sb3 = dihedral(3).unwrap();
        assert_eq!(enumerate_sb_colorings(&ds, &sb3, 1).len(), 9);
        let sb5 = dihedral(5).unwrap();
        assert_eq!(enumerate_sb_colorings(&ds, &sb5, 1).len(), 125);
        let tri5 = corresponding_tribracket(&sb5).unwrap();
        assert_eq!(enumerate_lb_colorings(&ds, &tri5, 1).len(), 125);
    }

    #[test]
    fn enumeration_independent_of_jobs() {
        let ds = build_structure(&PDCode::figure_eight()).unwrap();
        let sb = dihedral(5).unwrap();
        let serial = enumerate_sb_colorings(&ds, &sb, 1);
        let parallel = enumerate_sb_colorings(&ds, &sb, 4);
        assert_eq!(serial, parallel);
        let tri = corresponding_tribracket(&sb).unwrap();
        assert_eq!(
            enumerate_lb_colorings(&ds, &tri, 1),
            enumerate_lb_colorings(&ds, &tri, 3)
        );
    }

    #[test]
    fn translation_is_a_bijection() {
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        let sb = dihedral(3).unwrap();
        let tri = corresponding_tribracket(&sb).unwrap();
        let sb_cols = enumerate_sb_colorings(&ds, &sb, 1);
        let lb_cols = enumerate_lb_colorings(&ds, &tri, 1);
        let mut images: Vec<LBColoring> = sb_cols
            .iter()
            .map(|c| translate_sb_to_lb(&ds, &sb, c).unwrap())
            .collect();
        images.sort_unstable();
        assert_eq!(images, lb_cols);
        for c in &sb_cols {
            let there = translate_sb_to_lb(&ds, &sb, c).unwrap();
            verify_lb_coloring(&ds, &tri, &there).unwrap();
            let back = translate_lb_to_sb(&ds, &sb, &there).unwrap();
            assert_eq!(&back, c);
        }
    }

    #[test]
    fn chains_are_cycles_and_translate_through_mu() {
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        let sb = dihedral(3).unwrap();
        let tri = corresponding_tribracket(&sb).unwrap();
        let sbt = ChainTheory::sb(sb.clone(), 3).unwrap();
        let lbt = ChainTheory::lb(tri, 3).unwrap();
        for c in enumerate_sb_colorings(&ds, &sb, 1) {
            let w = chain_w_sb(&ds, &c, &sbt).unwrap();
            assert!(sbt.boundary(&w).unwrap().is_zero());
            let c2 = translate_sb_to_lb(&ds, &sb, &c).unwrap();
            let w2 = chain_w_lb(&ds, &c2, &lbt).unwrap();
            assert!(lbt.boundary(&w2).unwrap().is_zero());
            let pushed =
                crate::chains::map_chain(&sbt, &lbt, &w, |g| crate::chains::mu_gen(&sb, g))
                    .unwrap();
            assert_eq!(pushed, w2);
        }
    }

    #[test]
    fn trefoil_invariants_frozen() {
        // frozen by the standalone brute-force script
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        let sb = dihedral(3).unwrap();
        let theta = mochizuki_2cocycle(3).unwrap();
        let sbt = ChainTheory::sb(sb.clone(), 3).unwrap();
        let inv = invariants_sb(&ds, &sbt, &theta, 1).unwrap();
        assert_eq!(inv.colorings, 27);
        assert_eq!(inv.phi, vec![(0, 9), (1, 18)]);

        let tri = corresponding_tribracket(&sb).unwrap();
        let lbt = ChainTheory::lb(tri, 3).unwrap();
        let theta_lb = transport_mu(&theta, &sb).unwrap();
        let inv_lb = invariants_lb(&ds, &lbt, &theta_lb, 1).unwrap();
        assert_eq!(inv_lb.colorings, 27);
        assert_eq!(inv_lb.phi, inv.phi);
    }

    #[test]
    fn zero_cochain_gives_zero_phi() {
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        let sb = dihedral(3).unwrap();
        let sbt = ChainTheory::sb(sb, 3).unwrap();
        let zero = CochainTable::new(crate::cocycles::CochainTheory::Sb, 2, 3).unwrap();
        let inv = invariants_sb(&ds, &sbt, &zero, 1).unwrap();
        assert_eq!(inv.phi, vec![(0, 27)]);
    }

    #[test]
    fn non_cocycle_rejected() {
        let ds = build_structure(&PDCode::trefoil()).unwrap();
        let sb = dihedral(3).unwrap();
        let sbt = ChainTheory::sb(sb, 3).unwrap();
        let mut bad = CochainTable::new(crate::cocycles::CochainTheory::Sb, 2, 3).unwrap();
        bad.set(0, vec![0, 1], 1);
        assert!(!sbt.is_cocycle(&bad, 2, 3).unwrap());
        assert!(invariants_sb(&ds, &sbt, &bad, 1).is_err());
    }

    #[test]
    fn empirical_invariance_counts_and_phi() {
        let sb = dihedral(3).unwrap();
        let theta = mochizuki_2cocycle(3).unwrap();
        let sbt = ChainTheory::sb(sb.clone(), 3).unwrap();
        let mut results = Vec::new();
        for pd in [
            PDCode::trefoil(),
            PDCode::trefoil_with_kink(),
            PDCode::trefoil_with_r2(),
        ] {
            let ds = build_structure(&pd).unwrap();
            let inv = invariants_sb(&ds, &sbt, &theta, 1).unwrap();
            results.push((inv.colorings, inv.phi.clone()));
        }
        assert_eq!(results[0], results[1]);
        assert_eq!(results[0], results[2]);
    }

    mod surface_tests {
        use super::super::surface::*;
        use crate::algebra::{dihedral, ShadowBiquandle};
        use crate::chains::ChainTheory;
        use crate::cocycles::{mochizuki_3cocycle, transport_mu};
        use crate::tribracket::corresponding_tribracket;

        #[test]
        fn sphere_counts() {
            let sc = SurfaceCode::sphere();
            let sb = dihedral(3).unwrap();
            let cols = enumerate_surface_sb(&sc, &sb, 1).unwrap();
            assert_eq!(cols.len(), 9);
            let tri = corresponding_tribracket(&sb).unwrap();
            let lb = enumerate_surface_lb(&sc, &tri, 1).unwrap();
            assert_eq!(lb.len(), 9);
        }

        #[test]
        fn missing_adjacency_rejected() {
            let mut sc = SurfaceCode::sphere();
            sc.sheets = 2;
            assert!(sc.validate().is_err());
        }

        #[test]
        fn inconsistent_double_curve_empties_colorings() {
            // cyclic non-quandle biquandle: a *?* b = a + 1 mod 3; a curve
            // whose under sheet continues into itself forces a = a + 1
            let table: Vec<Vec<usize>> = (0..3).map(|a| vec![(a + 1) % 3; 3]).collect();
            let bq = crate::algebra::FiniteBiquandle::new(table.clone(), table.clone()).unwrap();
            let action: Vec<Vec<usize>> = (0..3).map(|x| vec![(x + 1) % 3; 3]).collect();
            let sb = ShadowBiquandle::new(bq, action).unwrap();
            let sc = SurfaceCode {
                sheets: 2,
                regions: 2,
                double_curves: vec![[0, 0, 1, 1]],
                adjacency: vec![[0, 0, 1], [1, 0, 1]],
                triple_points: vec![],
            };
            sc.validate().unwrap();
            let cols = enumerate_surface_sb(&sc, &sb, 1).unwrap();
            assert!(cols.is_empty());
        }

        #[test]
        fn zero_triple_points_give_zero_chain() {
            let sc = SurfaceCode::sphere();
            let sb = dihedral(3).unwrap();
            let sbt = ChainTheory::sb(sb.clone(), 4).unwrap();
            for c in enumerate_surface_sb(&sc, &sb, 1).unwrap() {
                let w = chain_w_sb(&sc, &c, &sbt).unwrap();
                assert!(w.is_zero());
            }
        }

        #[test]
        fn scaffold_counts_match_both_sides() {
            let sc = SurfaceCode::cancelling_pair();
            let sb = dihedral(3).unwrap();
            let tri = corresponding_tribracket(&sb).unwrap();
            let sb_cols = enumerate_surface_sb(&sc, &sb, 1).unwrap();
            let lb_cols = enumerate_surface_lb(&sc, &tri, 1).unwrap();
            assert_eq!(sb_cols.len(), 27);
            assert_eq!(lb_cols.len(), 27);
            let mut images: Vec<SurfaceLBColoring> = sb_cols
                .iter()
                .map(|c| translate_sb_to_lb(&sc, c))
                .collect();
            images.sort_unstable();
            assert_eq!(images, lb_cols);
            for c in &sb_cols {
                let there = translate_sb_to_lb(&sc, c);
                let back = translate_lb_to_sb(&sc, &sb, &there).unwrap();
                assert_eq!(&back, c);
            }
        }

        #[test]
        fn cancelling_pair_weights_vanish_and_push_through_mu() {
            let sc = SurfaceCode::cancelling_pair();
            let sb = dihedral(3).unwrap();
            let tri = corresponding_tribracket(&sb).unwrap();
            let sbt = ChainTheory::sb(sb.clone(), 4).unwrap();
            let lbt = ChainTheory::lb(tri, 4).unwrap();
            for c in enumerate_surface_sb(&sc, &sb, 1).unwrap() {
                let w = chain_w_sb(&sc, &c, &sbt).unwrap();
                assert!(w.is_zero());
                assert!(sbt.boundary(&w).unwrap().is_zero());
                let c2 = translate_sb_to_lb(&sc, &c);
                let w2 = chain_w_lb(&sc, &c2, &lbt).unwrap();
                assert!(w2.is_zero());
            }
        }

        #[test]
        fn twisted_pair_nonzero_weights_translate_through_mu() {
            let sc = SurfaceCode::twisted_pair();
            let sb = dihedral(3).unwrap();
            let tri = corresponding_tribracket(&sb).unwrap();
            let sbt = ChainTheory::sb(sb.clone(), 4).unwrap();
            let lbt = ChainTheory::lb(tri, 4).unwrap();
            let mut saw_nonzero = false;
            for c in enumerate_surface_sb(&sc, &sb, 1).unwrap() {
                let w = chain_w_sb(&sc, &c, &sbt).unwrap();
                saw_nonzero |= !w.is_zero();
                let c2 = translate_sb_to_lb(&sc, &c);
                let w2 = chain_w_lb(&sc, &c2, &lbt).unwrap();
                let pushed =
                    crate::chains::map_chain(&sbt, &lbt, &w, |g| crate::chains::mu_gen(&sb, g))
                        .unwrap();
                assert_eq!(pushed, w2);
            }
            assert!(saw_nonzero);
        }

        #[test]
        fn surface_phi_equality() {
            let sb = dihedral(3).unwrap();
            let tri = corresponding_tribracket(&sb).unwrap();
            let sbt = ChainTheory::sb(sb.clone(), 4).unwrap();
            let lbt = ChainTheory::lb(tri, 4).unwrap();
            let theta = mochizuki_3cocycle(3).unwrap();
            let theta_lb = transport_mu(&theta, &sb).unwrap();
            for sc in [
                SurfaceCode::sphere(),
                SurfaceCode::cancelling_pair(),
                SurfaceCode::twisted_pair(),
            ] {
                let inv_sb = invariants_sb(&sc, &sbt, &theta, 1).unwrap();
                let inv_lb = invariants_lb(&sc, &lbt, &theta_lb, 1).unwrap();
                assert_eq!(inv_sb.colorings, inv_lb.colorings);
                assert_eq!(inv_sb.phi, inv_lb.phi);
            }
        }
    }
}
