#!/usr/bin/env python3
"""Standalone brute-force cross-check for region-coloring cocycle invariants.

Everything here is computed from scratch (no shared code with the Rust
workspace): planar faces by dart traversal, colorings by exhaustive filtering,
invariants by direct evaluation. Used to freeze expected values for the test
suite and to sanity-check conventions against a hand-derived trefoil.
"""

from collections import Counter
from itertools import product

# ---------------------------------------------------------------------------
# dihedral quandle / shadow structure over Z_n


def dihedral_ops(n):
    under = lambda a, b: (2 * b - a) % n
    over = lambda a, b: a
    act = under  # X = Z_n, * = underline-*
    searrow = None
    if n % 2 == 1:
        inv2 = pow(2, -1, n) if n > 1 else 0
        searrow = lambda x, y: (inv2 * (x + y)) % n
    return under, over, act, searrow


def mochizuki(n):
    def theta(x, y, z):
        num = (2 * z - y) ** n + y**n - 2 * z**n
        assert num % n == 0
        return ((x - y) * (num // n)) % n

    return theta


# ---------------------------------------------------------------------------
# PD code -> combinatorial structure (independent implementation)
#
# Crossing tuple (e0,e1,e2,e3): counterclockwise from the incoming under-edge.
# e0 = under-in, e2 = under-out; e1/e3 carry the over strand.


def build(pd):
    nc = len(pd)
    edges = sorted({e for c in pd for e in c})
    ne = len(edges)
    assert edges == list(range(1, ne + 1))
    occ = {e: [] for e in edges}
    for ci, c in enumerate(pd):
        assert len(c) == 4
        for p, e in enumerate(c):
            occ[e].append((ci, p))
    for e in edges:
        assert len(occ[e]) == 2, f"edge {e} count"

    # head/tail slots: port 0 is a head, port 2 a tail; over ports resolved by
    # propagation, numeric consecutive rule as fallback.
    head, tail = {}, {}
    for ci, c in enumerate(pd):
        head.setdefault(c[0], (ci, 0))
        tail.setdefault(c[2], (ci, 2))
    over_in_port = [None] * nc
    changed = True
    while changed:
        changed = False
        for ci, c in enumerate(pd):
            if over_in_port[ci] is not None:
                continue
            e1, e3 = c[1], c[3]
            pick = None
            if e1 in head and head[e1] != (ci, 1):
                pick = 3  # e1's head is elsewhere, so here it is outgoing
            elif e3 in head and head[e3] != (ci, 3):
                pick = 1
            elif e1 in tail and tail[e1] != (ci, 1):
                pick = 1  # e1's tail is elsewhere, so here it is incoming
            elif e3 in tail and tail[e3] != (ci, 3):
                pick = 3
            if pick is not None:
                over_in_port[ci] = pick
                ein, eout = (e1, e3) if pick == 1 else (e3, e1)
                head[ein] = (ci, pick)
                tail[eout] = (ci, 4 - pick)
                changed = True
    for ci, c in enumerate(pd):
        if over_in_port[ci] is None:
            e1, e3 = c[1], c[3]
            if e3 == e1 + 1:
                over_in_port[ci] = 1
            elif e1 == e3 + 1:
                over_in_port[ci] = 3
            else:
                over_in_port[ci] = 1 if e1 > e3 else 3
            ein = c[over_in_port[ci]]
            head[ein] = (ci, over_in_port[ci])
            tail[c[4 - over_in_port[ci]]] = (ci, 4 - over_in_port[ci])

    # darts: (edge, True=forward). forward dart runs tail -> head.
    def outgoing(ci, p):
        e = pd[ci][p]
        return (e, tail[e] == (ci, p))

    def dart_head(d):
        e, fwd = d
        return head[e] if fwd else tail[e]

    darts = [(e, True) for e in edges] + [(e, False) for e in edges]
    face_of = {}
    faces = []
    for d0 in darts:
        if d0 in face_of:
            continue
        fid = len(faces)
        cyc = []
        d = d0
        while d not in face_of:
            face_of[d] = fid
            cyc.append(d)
            ci, p = dart_head(d)
            d = outgoing(ci, (p + 3) % 4)
        faces.append(cyc)
    nf = len(faces)
    assert nc - ne + nf == 2, f"euler check failed: {nc}-{ne}+{nf}"

    left = {e: face_of[(e, True)] for e in edges}
    right = {e: face_of[(e, False)] for e in edges}

    # quadrant k of a crossing = face left of the outgoing dart at port k
    def quad(ci, k):
        e, fwd = outgoing(ci, k)
        return face_of[(e, fwd)]

    crossings = []
    for ci, c in enumerate(pd):
        pos = over_in_port[ci] == 3
        sign = 1 if pos else -1
        if pos:
            u1, o1, u2, o2 = c[0], c[1], c[2], c[3]
            qx, qy, qz, qw = quad(ci, 0), quad(ci, 3), quad(ci, 1), quad(ci, 2)
        else:
            u1, o1, u2, o2 = c[2], c[1], c[0], c[3]
            qx, qy, qz, qw = quad(ci, 1), quad(ci, 2), quad(ci, 0), quad(ci, 3)
        crossings.append(dict(sign=sign, u1=u1, o1=o1, u2=u2, o2=o2,
                              qx=qx, qy=qy, qz=qz, qw=qw))
    return dict(ne=ne, nf=nf, left=left, right=right, crossings=crossings)


# ---------------------------------------------------------------------------
# exhaustive colorings


def sb_colorings(st, n):
    under, over, act, _ = dihedral_ops(n)
    out = []
    for arcs in product(range(n), repeat=st["ne"]):
        a = lambda e: arcs[e - 1]
        if any(a(c["u2"]) != under(a(c["u1"]), a(c["o1"])) or
               a(c["o2"]) != over(a(c["o1"]), a(c["u1"]))
               for c in st["crossings"]):
            continue
        for regs in product(range(n), repeat=st["nf"]):
            if all(act(regs[st["right"][e]], a(e)) == regs[st["left"][e]]
                   for e in range(1, st["ne"] + 1)):
                out.append((arcs, regs))
    return out


def lb_colorings(st, n):
    tri = lambda x, y, z: (x - y + z) % n
    out = []
    for regs in product(range(n), repeat=st["nf"]):
        if all(regs[c["qw"]] == tri(regs[c["qx"]], regs[c["qy"]], regs[c["qz"]])
               for c in st["crossings"]):
            out.append(regs)
    return out


def phi_sb(st, cols, n, theta):
    vals = []
    for arcs, regs in cols:
        a = lambda e: arcs[e - 1]
        s = 0
        for c in st["crossings"]:
            x, p, q = regs[c["qx"]], a(c["u1"]), a(c["o1"])
            if p != q:  # degenerate weights vanish
                s += c["sign"] * theta(x, p, q)
        vals.append(s % n)
    return Counter(vals)


def phi_lb(st, cols, n, theta):
    # transported cocycle: theta'((x,y),(x,z)) = theta(x, x\searrow y, x\searrow z)
    _, _, _, searrow = dihedral_ops(n)
    vals = []
    for regs in cols:
        s = 0
        for c in st["crossings"]:
            x, y, z = regs[c["qx"]], regs[c["qy"]], regs[c["qz"]]
            if y != z:
                s += c["sign"] * theta(x, searrow(x, y), searrow(x, z))
        vals.append(s % n)
    return Counter(vals)


# ---------------------------------------------------------------------------
# hand-derived trefoil structure, worked out directly from the standard
# diagram (three negative crossings, source region = the inner triangle for
# all three). Arc colors c1..c6; c5=c4, c1=c6, c3=c2; c6=2c4-c2 mod 3; free
# c2,c4; regions seeded from the inner triangle value x.


def trefoil_by_hand(n):
    theta = mochizuki(n)
    under, _, act, searrow = dihedral_ops(n)
    inv2 = pow(2, -1, n)
    vals = []
    count = 0
    for c2, c4, x in product(range(n), repeat=3):
        c6 = (2 * c4 - c2) % n
        count += 1
        s = 0
        for p, q in ((c2, c4), (c4, c6), (c6, c2)):
            if p != q:
                s -= theta(x, p, q)
        vals.append(s % n)
    return count, Counter(vals)


TREFOIL = [(1, 4, 2, 5), (3, 6, 4, 1), (5, 2, 6, 3)]
FIG8 = [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]
KINK_UNKNOT = [(1, 2, 2, 1)]
TREFOIL_KINK = [(1, 6, 2, 7), (5, 8, 6, 1), (7, 4, 8, 5), (2, 4, 3, 3)]
TREFOIL_R2 = [(3, 6, 4, 7), (5, 10, 6, 1), (9, 4, 10, 5), (8, 2, 9, 1), (7, 2, 8, 3)]


def report(name, pd, n):
    st = build(pd)
    theta = mochizuki(n)
    sb = sb_colorings(st, n)
    lb = lb_colorings(st, n)
    psb = phi_sb(st, sb, n, theta)
    plb = phi_lb(st, lb, n, theta)
    assert len(sb) == len(lb), (name, len(sb), len(lb))
    assert psb == plb, (name, psb, plb)
    print(f"{name} mod {n}: crossings={len(pd)} faces={st['nf']} "
          f"colorings={len(sb)} phi={sorted(psb.items())}")
    return len(sb), psb


if __name__ == "__main__":
    cnt, phi = trefoil_by_hand(3)
    print(f"trefoil by hand mod 3: colorings={cnt} phi={sorted(phi.items())}")
    c2, p2 = report("trefoil", TREFOIL, 3)
    assert (cnt, phi) == (c2, p2), "hand derivation disagrees with pipeline"
    report("kink unknot", KINK_UNKNOT, 3)
    ck, pk = report("trefoil+kink", TREFOIL_KINK, 3)
    cr, pr = report("trefoil+r2", TREFOIL_R2, 3)
    assert (c2, p2) == (ck, pk) == (cr, pr), "invariance failure"
    report("fig8", FIG8, 3)
    report("fig8", FIG8, 5)
    report("trefoil", TREFOIL, 5)
