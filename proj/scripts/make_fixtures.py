#!/usr/bin/env python3
"""Regenerate the bundled fixtures in fixtures/.

Run from the repository root:  python3 scripts/make_fixtures.py
"""
import json
import math
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def invert(a):
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def torus_page(k, tag=""):
    """Two interleaved bands; K = a + b has page framing 2k - 1."""
    s = f"F{tag}"
    surface = {
        "name": s,
        "bands": 2,
        "feet": [1, 2, 1, 2],
        "twists": [-1, -1],
        "crossings": [[1, 2, 2 * k + 1]],
    }
    curves = [
        {"name": f"a{tag}", "surface": s, "traversal": [1]},
        {"name": f"b{tag}", "surface": s, "traversal": [2]},
        {"name": f"K{tag}", "surface": s, "traversal": [1, 2]},
    ]
    return surface, curves


def fig1(k):
    surface, curves = torus_page(k)
    book = {"name": "book", "page": "F", "monodromy": [{"curve": "a", "sign": 1}, {"curve": "b", "sign": 1}]}
    return {"surfaces": [surface], "curves": curves, "open_books": [book]}


def gamma_words(m):
    """Traversal words of gamma_1 .. gamma_{m+2} over X_1 .. X_{m+2}."""
    words = [[2], [1, -2]]
    for i in range(3, m + 3):
        words.append([i - 1, -i])
    return words


def vec(word, n):
    v = [0] * n
    for x in word:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def planar_page(m, tag=""):
    """Planar page with m + 2 unlinked bands whose Seifert form is -I on the gammas."""
    n = m + 2
    cols = [vec(w, n) for w in gamma_words(m)]
    g = [[cols[j][i] for j in range(n)] for i in range(n)]
    ggt = [[sum(g[i][t] * g[j][t] for t in range(n)) for j in range(n)] for i in range(n)]
    v = [[-x for x in row] for row in invert(ggt)]
    assert all(x.denominator == 1 for row in v for x in row)
    v = [[int(x) for x in row] for row in v]
    # sanity: G^T V G = -I
    for a in range(n):
        for b in range(n):
            s = sum(cols[a][i] * v[i][j] * cols[b][j] for i in range(n) for j in range(n))
            assert s == -(a == b)
    s = f"P{tag}"
    feet = []
    for b in range(1, n + 1):
        feet += [b, b]
    crossings = [[i + 1, j + 1, 2 * v[i][j]] for i in range(n) for j in range(i + 1, n) if v[i][j] != 0]
    surface = {"name": s, "bands": n, "feet": feet, "twists": [v[i][i] for i in range(n)], "crossings": crossings}
    curves = [{"name": f"gamma{i + 1}{tag}", "surface": s, "traversal": w} for i, w in enumerate(gamma_words(m))]
    curves.append({"name": f"K{tag}", "surface": s, "traversal": [-2]})
    return surface, curves


def fig3(m):
    surface, curves = planar_page(m)
    n = m + 2
    book = {"name": "book", "page": "P",
            "monodromy": [{"curve": f"gamma{i}", "sign": 1} for i in range(1, n + 1)]}
    stein = {
        "name": "W",
        "one_handles": [f"X{i}" for i in range(1, n + 1)],
        "curves": [{"name": f"gamma{i + 1}", "word": w} for i, w in enumerate(gamma_words(m))]
        + [{"name": "K", "word": [-2]}],
        "distinguished": "K",
        "open_book": "book",
    }
    return {"surfaces": [surface], "curves": curves, "open_books": [book], "stein_problems": [stein]}


def hf_module(n):
    return {"name": f"hf_n{n}", "surgery_n": n,
            "contact_classes": {"count": n + 2, "distinct": True, "exclusion": True}}


def hf(n):
    return {"hf_modules": [hf_module(n)]}


def knot(name, topo, tb, rot, tags=None):
    d = {"name": name, "topo_type": topo, "tb": tb, "rot": rot}
    if tags:
        d["tags"] = tags
    return d


def thm13():
    surfaces, curves, knots, facts = [], [], [], []
    for k in (1, 2, 3):
        s, c = torus_page(k, f"_k{k}")
        surfaces.append(s)
        curves += c
        name = f"T_m(2,{2 * k + 1})"
        knots.append(knot(name, f"torus(2,{2 * k + 1})", 2 * k - 1, 0, ["max-tb representative"]))
        facts += [
            {"kind": "page-witness", "subject": name, "surface": f"F_k{k}", "curve": f"K_k{k}",
             "source": "genus-1 page through K with matching framing"},
            {"kind": "positive-tb", "subject": name, "source": "tb > 0 in a fillable structure"},
            {"kind": "classification-axiom", "subject": name, "family": "torus", "parameter": k},
        ]
    return {"surfaces": surfaces, "curves": curves, "facts": [{"name": "thm13", "knots": knots, "facts": facts}]}


def sname(a, b, base="L"):
    if a == 0 and b == 0:
        return base
    s = ""
    if a:
        s += f"S+^{a}"
    if b:
        s += f"S-^{b}"
    return f"{s}({base})"


def thm14(grid=8):
    surfaces, curves, knots, facts = [], [], [], []
    for m in (1, 2, 3):
        s, c = planar_page(m, f"_m{m}")
        surfaces.append(s)
        curves += c
        topo = f"twist(-{2 * m})"
        cls = lambda name: {"kind": "classification-axiom", "subject": name, "family": "twist", "parameter": m}
        km = f"K_{m}"
        knots.append(knot(km, topo, -1, 0, ["page curve K"]))
        facts.append({"kind": "page-witness", "subject": km, "surface": f"P_m{m}", "curve": f"K_m{m}",
                      "source": "planar page through K"})
        facts.append(cls(km))
        for j in range(1, math.ceil(m * m / 2) + 1):
            lj = f"L^({m},{j})"
            sm = f"S-({lj})"
            knots.append(knot(lj, topo, 1, 0, ["max-tb representative"]))
            knots.append(knot(sm, topo, 0, -1))
            facts += [
                {"kind": "positive-tb", "subject": lj},
                cls(lj),
                {"kind": "stabilization-of", "subject": sm, "parent": lj, "sign": -1},
                cls(sm),
                {"kind": "stabilization-of", "subject": km, "parent": sm, "sign": 1,
                 "source": "one stabilization of each sign reaches K"},
            ]
        base = f"L_{m}"
        for a in range(1, grid):
            for b in range(1, grid):
                if a + b > grid or (a, b) == (1, 1):
                    continue
                name = sname(a, b, base)
                knots.append(knot(name, topo, 1 - a - b, a - b))
                if a > 1:
                    parent, sign = (km if (a - 1, b) == (1, 1) else sname(a - 1, b, base)), 1
                else:
                    parent, sign = (km if (a, b - 1) == (1, 1) else sname(a, b - 1, base)), -1
                facts.append({"kind": "stabilization-of", "subject": name, "parent": parent, "sign": sign})
                facts.append(cls(name))
    return {"surfaces": surfaces, "curves": curves, "facts": [{"name": "thm14", "knots": knots, "facts": facts}]}


def thm15(depth=13):
    s1, c1 = torus_page(1, "_k1")
    s0, c0 = planar_page(1, "_m1")
    knots, facts = [], []
    cls = lambda name: {"kind": "classification-axiom", "subject": name, "family": "torus", "parameter": 1}
    knots.append(knot("L", "torus(2,3)", 1, 0, ["max-tb representative"]))
    facts += [
        {"kind": "page-witness", "subject": "L", "surface": "F_k1", "curve": "K_k1", "source": "genus-1 page"},
        {"kind": "positive-tb", "subject": "L"},
        cls("L"),
    ]
    for t in range(1, depth + 1):
        for a in range(t, -1, -1):
            b = t - a
            name = sname(a, b)
            knots.append(knot(name, "torus(2,3)", 1 - t, a - b))
            # stabilizations commute, so list every parent
            if a > 0:
                facts.append({"kind": "stabilization-of", "subject": name, "parent": sname(a - 1, b), "sign": 1})
            if b > 0:
                facts.append({"kind": "stabilization-of", "subject": name, "parent": sname(a, b - 1), "sign": -1})
            facts.append(cls(name))
            if a > b:
                facts.append({"kind": "orientation-mirror", "subject": name, "partner": sname(b, a),
                              "source": "reversing orientation swaps the stabilization signs"})
    facts.append({"kind": "page-witness", "subject": sname(1, 1), "surface": "P_m1", "curve": "K_m1",
                  "source": "the trefoil is the twist knot with m = 1"})
    hfs = []
    for n in range(7, min(12, depth - 1) + 1):
        hfs.append(hf_module(n))
        group = [sname(a, n + 1 - a) for a in range(n + 1, -1, -1)]
        facts.append({"kind": "nonplanar-surgery", "group": group, "hf_module": f"hf_n{n}",
                      "source": "surgery on some tb = -n representative is not planar"})
    return {
        "surfaces": [s1, s0],
        "curves": c1 + c0,
        "hf_modules": hfs,
        "facts": [{"name": "thm15", "knots": knots, "facts": facts}],
    }


def write(name, doc):
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    for k in (1, 2, 3):
        write(f"fig1_torus_k{k}", fig1(k))
    for m in range(1, 6):
        write(f"fig3_twist_m{m}", fig3(m))
    for n in range(7, 13):
        write(f"hf_trefoil_n{n}", hf(n))
    write("thm13_facts", thm13())
    write("thm14_facts", thm14())
    write("thm15_facts", thm15())


if __name__ == "__main__":
    main()
