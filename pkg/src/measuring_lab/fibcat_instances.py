"""Hand-built finite (op)fibration instances used by tests and the CLI demos.

Each builder returns a dict with the opfibred cell, the base adjunction and the
fibrewise adjunction table expected by synthesize_right_adjoint, or the data
for the fixed-base mate criterion.
"""

from __future__ import annotations

from .fibcat import (
    FibredCell,
    FiniteAdjunction,
    FiniteCategory,
    FiniteFunctor,
    IndexedCategory,
    NatTrans,
    TotalCategory,
    arrow_category,
    category_from_generators,
    grothendieck,
    identity_functor,
    terminal_category,
)


def _identity_adjunction(cat: FiniteCategory) -> FiniteAdjunction:
    idf = identity_functor(cat)
    ids = {x: cat.identity[x] for x in cat.objects}
    unit = NatTrans("id_unit", idf, idf, ids, validate=False)
    counit = NatTrans("id_counit", idf, idf, ids, validate=False)
    return FiniteAdjunction("id", idf, idf, unit, counit)


def _constant_indexed(base: FiniteCategory, fibre: FiniteCategory, variance):
    reindex = {m: identity_functor(fibre) for m in range(len(base.morphisms))}
    return IndexedCategory(f"const({fibre.name})", base, variance,
                           {x: fibre for x in base.objects}, reindex)


def walking_arrow_fibre(name="2f", a="p", b="q"):
    cat, labels = category_from_generators(name, [a, b], [("t", a, b)])
    return cat, labels["t"]


def identity_instance():
    """Everything trivial: terminal base, terminal fibres, identity cell."""
    base = terminal_category()
    fib = terminal_category("1f", "o")
    ic = _constant_indexed(base, fib, "covariant")
    total = grothendieck(ic)
    cell = FibredCell(identity_functor(total.cat), identity_functor(base),
                      total, total, "opfibred")
    baseadj = _identity_adjunction(base)
    fibrewise = {"*": FiniteAdjunction(
        "fw", cell.fibre_functor("*"), identity_functor(fib),
        NatTrans("u", identity_functor(fib), identity_functor(fib),
                 {"o": fib.identity["o"]}, validate=False),
        NatTrans("c", identity_functor(fib), identity_functor(fib),
                 {"o": fib.identity["o"]}, validate=False))}
    return {"cell": cell, "baseadj": baseadj, "fibrewise": fibrewise, "name": "identity"}


def reflective_instance():
    """Fixed terminal base; K collapses a walking arrow onto a point; R picks the
    terminal object (a right adjoint to the collapse)."""
    base = terminal_category()
    c0, _t = walking_arrow_fibre()
    d0 = terminal_category("1d", "s")
    u_ic = _constant_indexed(base, c0, "covariant")
    v_ic = _constant_indexed(base, d0, "covariant")
    u_total = grothendieck(u_ic)
    v_total = grothendieck(v_ic)
    # K: constant functor to s
    k_obj = {("*", x): ("*", "s") for x in c0.objects}
    k_mor = {m: v_total.cat.identity[("*", "s")] for m in range(len(u_total.cat.morphisms))}
    cell = FibredCell(FiniteFunctor("K", u_total.cat, v_total.cat, k_obj, k_mor),
                      identity_functor(base), u_total, v_total, "opfibred")
    baseadj = _identity_adjunction(base)
    # fibrewise: K0 : c0 -> 1 with right adjoint the terminal object q
    k0 = cell.fibre_functor("*")
    r0 = FiniteFunctor("R0", d0, c0, {"s": "q"}, {d0.identity["s"]: c0.identity["q"]})
    unit_components = {"p": c0.hom("p", "q")[0], "q": c0.identity["q"]}
    unit = NatTrans("unit", identity_functor(c0), k0.then(r0), unit_components)
    counit = NatTrans("counit", r0.then(k0), identity_functor(d0),
                      {"s": d0.identity["s"]})
    fibrewise = {"*": FiniteAdjunction("fw", k0, r0, unit, counit)}
    return {"cell": cell, "baseadj": baseadj, "fibrewise": fibrewise, "name": "reflective"}


def omega_failure_instance():
    """Base adjunction 1 <-> 2; the fibrewise right adjoints exist but the mate
    omega is not invertible, so the synthesized R is not cocartesian."""
    u_base = terminal_category()
    v_base, u_arrow = arrow_category()
    c0, _ = walking_arrow_fibre("c0", "a", "b")
    d0, _ = walking_arrow_fibre("d0", "c", "d")
    d1 = terminal_category("d1", "star")
    u_ic = _constant_indexed(u_base, c0, "covariant")
    # V: fibres d0 over 0, d1 over 1, pushforward collapses
    collapse = FiniteFunctor("collapse", d0, d1,
                             {"c": "star", "d": "star"},
                             {m: d1.identity["star"] for m in range(len(d0.morphisms))})
    v_reindex = {v_base.identity[0]: identity_functor(d0),
                 v_base.identity[1]: identity_functor(d1),
                 u_arrow: collapse}
    v_ic = IndexedCategory("V", v_base, "covariant", {0: d0, 1: d1}, v_reindex)
    u_total = grothendieck(u_ic)
    v_total = grothendieck(v_ic)
    # F : 1 -> 2 picks 0; G : 2 -> 1; F -| G with counit (id_0, u)
    f_fun = FiniteFunctor("F", u_base, v_base, {"*": 0},
                          {u_base.identity["*"]: v_base.identity[0]})
    g_fun = FiniteFunctor("G", v_base, u_base, {0: "*", 1: "*"},
                          {m: u_base.identity["*"] for m in range(len(v_base.morphisms))})
    unit = NatTrans("eta", identity_functor(u_base), f_fun.then(g_fun),
                    {"*": u_base.identity["*"]})
    counit = NatTrans("eps", g_fun.then(f_fun), identity_functor(v_base),
                      {0: v_base.identity[0], 1: u_arrow})
    baseadj = FiniteAdjunction("F-|G", f_fun, g_fun, unit, counit)
    # K : total(U) -> total(V), the iso c0 ~ d0 into the fibre over 0
    k_obj = {("*", "a"): (0, "c"), ("*", "b"): (0, "d")}
    k_mor = {}
    for i, (fm, (x, s), (y, t), phi) in enumerate(u_total.mor_data):
        src_pair = k_obj[(x, s)]
        tgt_pair = k_obj[(y, t)]
        fib_mor = d0.hom(src_pair[1], tgt_pair[1])[0]
        k_mor[i] = v_total.mor_index[(v_base.identity[0], src_pair, tgt_pair, fib_mor)]
    cell = FibredCell(FiniteFunctor("K", u_total.cat, v_total.cat, k_obj, k_mor),
                      f_fun, u_total, v_total, "opfibred")
    # fibrewise adjunctions
    k0 = cell.fibre_functor("*")  # c0 -> d0 iso
    r0 = FiniteFunctor("R0", d0, c0, {"c": "a", "d": "b"},
                       {i: c0.hom("a" if d0.src(i) == "c" else "b",
                                  "a" if d0.tgt(i) == "c" else "b")[0]
                        for i in range(len(d0.morphisms))})
    adj0 = FiniteAdjunction(
        "fw0", k0, r0,
        NatTrans("u0", identity_functor(c0), k0.then(r0),
                 {x: c0.identity[x] for x in c0.objects}),
        NatTrans("c0", r0.then(k0), identity_functor(d0),
                 {x: d0.identity[x] for x in d0.objects}))
    # over 1: (eps_1)_! K = collapse o k0 : c0 -> d1; right adjoint picks terminal b
    left1 = k0.then(collapse)
    r1 = FiniteFunctor("R1", d1, c0, {"star": "b"}, {d1.identity["star"]: c0.identity["b"]})
    adj1 = FiniteAdjunction(
        "fw1", left1, r1,
        NatTrans("u1", identity_functor(c0), left1.then(r1),
                 {"a": c0.hom("a", "b")[0], "b": c0.identity["b"]}),
        NatTrans("c1", r1.then(left1), identity_functor(d1),
                 {"star": d1.identity["star"]}))
    fibrewise = {0: adj0, 1: adj1}
    return {"cell": cell, "baseadj": baseadj, "fibrewise": fibrewise, "name": "omega-failure"}


def arrow_base_indexed_example(variance="contravariant"):
    """Base = the walking arrow, fibre(0) terminal, fibre(1) a walking arrow, with
    the collapsing reindex; the classic 3-object total category."""
    base, u_arrow = arrow_category()
    f0 = terminal_category("f0", "o")
    f1, _ = walking_arrow_fibre("f1", "a", "b")
    collapse = FiniteFunctor("collapse", f1, f0,
                             {"a": "o", "b": "o"},
                             {m: f0.identity["o"] for m in range(len(f1.morphisms))})
    expand = FiniteFunctor("pick_a", f0, f1, {"o": "a"}, {f0.identity["o"]: f1.identity["a"]})
    if variance == "contravariant":
        reindex = {base.identity[0]: identity_functor(f0),
                   base.identity[1]: identity_functor(f1),
                   u_arrow: collapse}
    else:
        reindex = {base.identity[0]: identity_functor(f0),
                   base.identity[1]: identity_functor(f1),
                   u_arrow: expand}
        reindex[u_arrow] = FiniteFunctor("to_a", f0, f1, {"o": "a"},
                                         {f0.identity["o"]: f1.identity["a"]})
    ic = IndexedCategory("arrow-example", base, variance, {0: f0, 1: f1}, reindex)
    return ic


def fixed_base_reflective_instance():
    """Fibred functor over the walking arrow with strict reindexing; the mate chi
    is invertible and the fibred left adjoint exists."""
    base, u_arrow = arrow_category()
    a_fib, _ = walking_arrow_fibre("af", "p", "q")
    b_fib = terminal_category("bf", "s")
    a_ic = _constant_indexed(base, a_fib, "contravariant")
    b_ic = _constant_indexed(base, b_fib, "contravariant")
    a_total = grothendieck(a_ic)
    b_total = grothendieck(b_ic)
    s_obj = {(x, a): (x, "s") for (x, a) in a_total.objects}
    s_mor = {}
    for i, (fm, (x, _a), (y, _b), _phi) in enumerate(a_total.mor_data):
        s_mor[i] = b_total.mor_index[(fm, (x, "s"), (y, "s"), b_fib.identity["s"])]
    cell = FibredCell(FiniteFunctor("S", a_total.cat, b_total.cat, s_obj, s_mor),
                      identity_functor(base), a_total, b_total, "fibred")
    fibrewise = {}
    for x in base.objects:
        s_x = cell.fibre_functor(x)
        l_x = FiniteFunctor(f"L{x}", b_fib, a_fib, {"s": "p"},
                            {b_fib.identity["s"]: a_fib.identity["p"]})
        unit = NatTrans(f"u{x}", identity_functor(b_fib), l_x.then(s_x),
                        {"s": b_fib.identity["s"]})
        counit = NatTrans(f"c{x}", s_x.then(l_x), identity_functor(a_fib),
                          {"p": a_fib.identity["p"], "q": a_fib.hom("p", "q")[0]})
        fibrewise[x] = FiniteAdjunction(f"fw{x}", l_x, s_x, unit, counit)
    return {"cell": cell, "fibrewise": fibrewise, "name": "fixed-base-reflective"}


def fixed_base_chi_failure_instance():
    """Same shape but the A-side reindexing collapses to the terminal object, so
    the mate chi : L_0 u* => u* L_1 is the non-invertible p -> q."""
    base, u_arrow = arrow_category()
    a0, _ = walking_arrow_fibre("a0", "p", "q")
    a1, _ = walking_arrow_fibre("a1", "p'", "q'")
    b_fib = terminal_category("bf", "s")
    to_q = FiniteFunctor("to_q", a1, a0, {"p'": "q", "q'": "q"},
                         {m: a0.identity["q"] for m in range(len(a1.morphisms))})
    a_ic = IndexedCategory("A", base, "contravariant", {0: a0, 1: a1},
                           {base.identity[0]: identity_functor(a0),
                            base.identity[1]: identity_functor(a1),
                            u_arrow: to_q})
    b_ic = _constant_indexed(base, b_fib, "contravariant")
    a_total = grothendieck(a_ic)
    b_total = grothendieck(b_ic)
    s_obj = {(x, a): (x, "s") for (x, a) in a_total.objects}
    s_mor = {}
    for i, (fm, (x, _a), (y, _b), _phi) in enumerate(a_total.mor_data):
        s_mor[i] = b_total.mor_index[(fm, (x, "s"), (y, "s"), b_fib.identity["s"])]
    cell = FibredCell(FiniteFunctor("S", a_total.cat, b_total.cat, s_obj, s_mor),
                      identity_functor(base), a_total, b_total, "fibred")
    fibrewise = {}
    for x, fib, init in ((0, a0, "p"), (1, a1, "p'")):
        s_x = cell.fibre_functor(x)
        l_x = FiniteFunctor(f"L{x}", b_fib, fib, {"s": init},
                            {b_fib.identity["s"]: fib.identity[init]})
        unit = NatTrans(f"u{x}", identity_functor(b_fib), l_x.then(s_x),
                        {"s": b_fib.identity["s"]})
        counit_components = {}
        for a in fib.objects:
            counit_components[a] = fib.identity[init] if a == init else fib.hom(init, a)[0]
        counit = NatTrans(f"c{x}", s_x.then(l_x), identity_functor(fib),
                          counit_components)
        fibrewise[x] = FiniteAdjunction(f"fw{x}", l_x, s_x, unit, counit)
    return {"cell": cell, "fibrewise": fibrewise, "name": "fixed-base-chi-failure"}


def standard_instances():
    return [identity_instance(), reflective_instance(), omega_failure_instance()]
