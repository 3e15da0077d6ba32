"""Differential testing: defunctionalized program generation, an independent
DFS oracle, and executable encodings of the translation theorems, the
algebraic laws, and the appendix lemmas.

Programs are drawn from a small AST over integer states and integer results:

    Ret(e) | Fail | Or(p, q) | GetBind(v, p) | Put(e, p)
    | MGetBind(v, p) | Update(e, p) | Seq(p, q)

with expressions e ::= const in [-3, 3] | var | e + e | e - e.  The integer
Undo instance is plus = +, minus = -.  Restore is never generated (the
translation theorems' precondition).  Reports are JSON-ready records:
{suite, seed, trials, failures: [{trialSeed, astText, lhs, rhs}]}.
"""

import random

from .core import (
    Leaf, bind, seq, get, put, fail, or_, mget, update, restore,
    tree_map, swap,
)
from .handlers import (
    Undo, INT_UNDO, h_nd, h_state, h_modify, h_ndf, h_nil,
    h_local, h_global, h_local_m, h_global_m, h_global_t, h_states,
)
from .translations import (
    local2global, nondet2state_s, nondet2state, run_nd, run_ndf,
    states2state, alpha, simulate, local2global_m, local2trail, untrail,
    push_stack, pop_s, push_s, append_s, ChoiceState, MARKER, left,
    simulate_t,
)
from .machines import simulate_f, simulate_tf
from .queens import q_plus, q_minus


# ---------------------------------------------------------------------------
# AST and expressions.
# ---------------------------------------------------------------------------

class Ret:
    def __init__(self, e):
        self.e = e


class AFail:
    pass


class AOr:
    def __init__(self, p, q):
        self.p = p
        self.q = q


class GetBind:
    def __init__(self, v, p):
        self.v = v
        self.p = p


class APut:
    def __init__(self, e, p):
        self.e = e
        self.p = p


class MGetBind:
    def __init__(self, v, p):
        self.v = v
        self.p = p


class AUpdate:
    def __init__(self, e, p):
        self.e = e
        self.p = p


class ASeq:
    def __init__(self, p, q):
        self.p = p
        self.q = q


def eval_expr(e, env):
    kind = e[0]
    if kind == "const":
        return e[1]
    if kind == "var":
        return env[e[1]]
    if kind == "add":
        return eval_expr(e[1], env) + eval_expr(e[2], env)
    if kind == "sub":
        return eval_expr(e[1], env) - eval_expr(e[2], env)
    raise ValueError("bad expression %r" % (e,))


def show_expr(e):
    kind = e[0]
    if kind == "const":
        return str(e[1])
    if kind == "var":
        return e[1]
    if kind == "add":
        return "(%s + %s)" % (show_expr(e[1]), show_expr(e[2]))
    if kind == "sub":
        return "(%s - %s)" % (show_expr(e[1]), show_expr(e[2]))
    raise ValueError("bad expression %r" % (e,))


def show_ast(p):
    if isinstance(p, Ret):
        return "ret %s" % show_expr(p.e)
    if isinstance(p, AFail):
        return "fail"
    if isinstance(p, AOr):
        return "(%s | %s)" % (show_ast(p.p), show_ast(p.q))
    if isinstance(p, GetBind):
        return "get >>= \\%s -> %s" % (p.v, show_ast(p.p))
    if isinstance(p, APut):
        return "put %s; %s" % (show_expr(p.e), show_ast(p.p))
    if isinstance(p, MGetBind):
        return "mget >>= \\%s -> %s" % (p.v, show_ast(p.p))
    if isinstance(p, AUpdate):
        return "update %s; %s" % (show_expr(p.e), show_ast(p.p))
    if isinstance(p, ASeq):
        return "(%s) >> (%s)" % (show_ast(p.p), show_ast(p.q))
    raise ValueError("bad ast %r" % (p,))


# ---------------------------------------------------------------------------
# Generation.
# ---------------------------------------------------------------------------

def _gen_expr(rng, vars_, depth=2):
    choices = ["const"] + (["var"] if vars_ else []) \
        + (["add", "sub"] if depth > 0 else [])
    kind = rng.choice(choices)
    if kind == "const":
        return ("const", rng.randint(-3, 3))
    if kind == "var":
        return ("var", rng.choice(vars_))
    return (kind, _gen_expr(rng, vars_, depth - 1),
            _gen_expr(rng, vars_, depth - 1))


def _gen_ast(rng, depth, families, vars_, counter):
    atoms = ["ret"] + (["fail"] if "nondet" in families else [])
    if depth <= 0:
        kind = rng.choice(atoms)
    else:
        kinds = ["ret", "seq"]
        if "nondet" in families:
            kinds += ["fail", "or", "or"]
        if "state" in families:
            kinds += ["get", "put", "put"]
        if "modify" in families:
            kinds += ["mget", "update", "update"]
        kind = rng.choice(kinds)
    if kind == "ret":
        return Ret(_gen_expr(rng, vars_))
    if kind == "fail":
        return AFail()
    if kind == "or":
        return AOr(_gen_ast(rng, depth - 1, families, vars_, counter),
                   _gen_ast(rng, depth - 1, families, vars_, counter))
    if kind == "seq":
        return ASeq(_gen_ast(rng, depth - 1, families, vars_, counter),
                    _gen_ast(rng, depth - 1, families, vars_, counter))
    if kind in ("get", "mget"):
        v = "v%d" % counter[0]
        counter[0] += 1
        body = _gen_ast(rng, depth - 1, families, vars_ + [v], counter)
        return GetBind(v, body) if kind == "get" else MGetBind(v, body)
    if kind == "put":
        return APut(_gen_expr(rng, vars_),
                    _gen_ast(rng, depth - 1, families, vars_, counter))
    if kind == "update":
        return AUpdate(_gen_expr(rng, vars_),
                       _gen_ast(rng, depth - 1, families, vars_, counter))
    raise AssertionError(kind)


def gen_program(seed, depth, families, free_vars=()):
    """Deterministically generate a depth-bounded program using only the
    requested families; free_vars names variables assumed bound outside."""
    rng = random.Random(seed)
    return _gen_ast(rng, depth, set(families), list(free_vars), [0])


# ---------------------------------------------------------------------------
# Lowering to effect trees.
# ---------------------------------------------------------------------------

def lower(ast, layout, env=None):
    """Lower an AST to an effect tree.  layout maps family names to
    injection indices; entry "modify_as_state" (an index) lowers MGet/Update
    to a second plain-state family instead of ModifyF."""
    env = env or {}
    if isinstance(ast, Ret):
        return Leaf(eval_expr(ast.e, env))
    if isinstance(ast, AFail):
        return fail(at=layout["nondet"])
    if isinstance(ast, AOr):
        return or_(lower(ast.p, layout, env), lower(ast.q, layout, env),
                   at=layout["nondet"])
    if isinstance(ast, GetBind):
        return get(lambda s: lower(ast.p, layout, dict(env, **{ast.v: s})),
                   at=layout["state"])
    if isinstance(ast, APut):
        return seq(put(eval_expr(ast.e, env), at=layout["state"]),
                   lower(ast.p, layout, env))
    if isinstance(ast, MGetBind):
        at = layout.get("modify_as_state", layout.get("modify"))
        return get(lambda s: lower(ast.p, layout, dict(env, **{ast.v: s})),
                   at=at) if "modify_as_state" in layout else \
            mget(lambda s: lower(ast.p, layout, dict(env, **{ast.v: s})),
                 at=layout["modify"])
    if isinstance(ast, AUpdate):
        r = eval_expr(ast.e, env)
        if "modify_as_state" in layout:
            at = layout["modify_as_state"]
            return get(lambda s, r=r: seq(put(s + r, at=at),
                                          lower(ast.p, layout, env)), at=at)
        return seq(update(r, at=layout["modify"]), lower(ast.p, layout, env))
    if isinstance(ast, ASeq):
        return bind(lower(ast.p, layout, env),
                    lambda _x: lower(ast.q, layout, env))
    raise ValueError("bad ast %r" % (ast,))


# ---------------------------------------------------------------------------
# Independent oracle: environment-passing DFS in continuation style.
# ---------------------------------------------------------------------------

def oracle_eval(ast, s0, mode):
    """Evaluate an AST directly, without trees or handlers.

    mode "local": each branch owns a copy of the state; returns answers.
    mode "global": one state threaded through the DFS; returns a dict with
    answers and finalState.
    """
    if mode == "local":
        def ev(p, env, s, k):
            if isinstance(p, Ret):
                return k(eval_expr(p.e, env), s)
            if isinstance(p, AFail):
                return []
            if isinstance(p, AOr):
                return ev(p.p, env, s, k) + ev(p.q, env, s, k)
            if isinstance(p, GetBind) or isinstance(p, MGetBind):
                return ev(p.p, dict(env, **{p.v: s}), s, k)
            if isinstance(p, APut):
                return ev(p.p, env, eval_expr(p.e, env), k)
            if isinstance(p, AUpdate):
                return ev(p.p, env, s + eval_expr(p.e, env), k)
            if isinstance(p, ASeq):
                return ev(p.p, env, s,
                          lambda _a, s2: ev(p.q, env, s2, k))
            raise ValueError("bad ast %r" % (p,))
        return {"mode": "local",
                "answers": ev(ast, {}, s0, lambda a, _s: [a])}

    if mode == "global":
        def ev(p, env, s, k):
            if isinstance(p, Ret):
                return k(eval_expr(p.e, env), s)
            if isinstance(p, AFail):
                return ([], s)
            if isinstance(p, AOr):
                a1, s1 = ev(p.p, env, s, k)
                a2, s2 = ev(p.q, env, s1, k)
                return (a1 + a2, s2)
            if isinstance(p, GetBind) or isinstance(p, MGetBind):
                return ev(p.p, dict(env, **{p.v: s}), s, k)
            if isinstance(p, APut):
                return ev(p.p, env, eval_expr(p.e, env), k)
            if isinstance(p, AUpdate):
                return ev(p.p, env, s + eval_expr(p.e, env), k)
            if isinstance(p, ASeq):
                return ev(p.p, env, s,
                          lambda _a, s2: ev(p.q, env, s2, k))
            raise ValueError("bad ast %r" % (p,))
        answers, s_final = ev(ast, {}, s0, lambda a, s: ([a], s))
        return {"mode": "global", "answers": answers, "finalState": s_final}

    raise ValueError("unknown oracle mode %r" % (mode,))


# ---------------------------------------------------------------------------
# Reports.
# ---------------------------------------------------------------------------

def _trial_seed(seed, i):
    return seed * 1_000_003 + i


def _report(suite, seed, trials):
    return {"suite": suite, "seed": seed, "trials": trials, "failures": []}


def _record(report, trial_seed, ast_text, lhs, rhs):
    report["failures"].append({
        "trialSeed": trial_seed,
        "astText": ast_text,
        "lhs": repr(lhs),
        "rhs": repr(rhs),
    })


SN = {"state": 0, "nondet": 1}        # [StateF, NondetF]
NS = {"nondet": 0, "state": 1}        # [NondetF, StateF]
MN = {"modify": 0, "nondet": 1}       # [ModifyF, NondetF]
SS2 = {"state": 0, "modify_as_state": 1, "nondet": 2}  # two state families


# ---------------------------------------------------------------------------
# Theorems.
# ---------------------------------------------------------------------------

THEOREM_IDS = (
    "T-localglobal", "T-nondetstateS", "T-nondetstate", "T-statesstate",
    "T-simulate", "T-fusedF", "T-modify", "T-trail", "T-simulateT",
    "T-fusedTF",
)


def _theorem_sides(ident, ast, s0, local2global_impl=local2global,
                   local2trail_impl=local2trail, undo=INT_UNDO):
    if ident == "T-localglobal":
        t = lower(ast, SN)
        return (h_nil(h_local(lower(ast, SN), s0)),
                h_nil(h_global(local2global_impl(t), s0)))
    if ident == "T-nondetstateS":
        t = lower(ast, {"nondet": 0})
        return (h_nd(t), run_nd(lower(ast, {"nondet": 0})))
    if ident == "T-nondetstate":
        t1 = lower(ast, NS)
        t2 = lower(ast, NS)
        return (h_nil(h_state(h_ndf(t1), s0)),
                h_nil(h_state(run_ndf(t2), s0)))
    if ident == "T-statesstate":
        t1 = lower(ast, SS2)
        t2 = lower(ast, SS2)
        s12 = (s0, s0 + 1)
        lhs = [alpha(v) for v in h_nd(h_states(t1, s12[0], s12[1]))]
        rhs = h_nd(h_state(states2state(t2), s12))
        return (lhs, rhs)
    if ident == "T-simulate":
        return (h_nil(h_local(lower(ast, SN), s0)),
                h_nil(simulate(lower(ast, SN), s0)))
    if ident == "T-fusedF":
        return (h_nil(simulate(lower(ast, SN), s0)),
                h_nil(simulate_f(lower(ast, SN), s0)))
    if ident == "T-modify":
        return (h_nil(h_local_m(lower(ast, MN), s0, undo)),
                h_nil(h_global_m(local2global_m(lower(ast, MN)), s0, undo)))
    if ident == "T-trail":
        t = lower(ast, MN)
        u = local2trail_impl(t)
        w = h_modify(h_ndf(swap(u)), s0, undo)
        w = tree_map(w, lambda pair: pair[0])
        w = tree_map(h_state(w, []), lambda pair: pair[0])
        return (h_nil(h_local_m(lower(ast, MN), s0, undo)), h_nil(w))
    if ident == "T-simulateT":
        return (h_nil(h_local_m(lower(ast, MN), s0, undo)),
                h_nil(simulate_t(lower(ast, MN), s0, undo)))
    if ident == "T-fusedTF":
        return (h_nil(simulate_t(lower(ast, MN), s0, undo)),
                h_nil(simulate_tf(lower(ast, MN), s0, undo)))
    raise ValueError("unknown theorem id %r" % (ident,))


_THEOREM_FAMILIES = {
    "T-localglobal": ("state", "nondet"),
    "T-nondetstateS": ("nondet",),
    "T-nondetstate": ("state", "nondet"),
    "T-statesstate": ("state", "modify", "nondet"),
    "T-simulate": ("state", "nondet"),
    "T-fusedF": ("state", "nondet"),
    "T-modify": ("modify", "nondet"),
    "T-trail": ("modify", "nondet"),
    "T-simulateT": ("modify", "nondet"),
    "T-fusedTF": ("modify", "nondet"),
}


def check_theorem(ident, trials, seed, depth=6):
    """Compare both sides of a translation theorem on random programs."""
    if ident not in THEOREM_IDS:
        raise ValueError("unknown theorem id %r" % (ident,))
    report = _report(ident, seed, trials)
    families = _THEOREM_FAMILIES[ident]
    for i in range(trials):
        ts = _trial_seed(seed, i)
        rng = random.Random(ts)
        ast = gen_program(ts, depth, families)
        s0 = rng.randint(-3, 3)
        lhs, rhs = _theorem_sides(ident, ast, s0)
        if lhs != rhs:
            _record(report, ts, "s0=%d; %s" % (s0, show_ast(ast)), lhs, rhs)
    return report


# ---------------------------------------------------------------------------
# Law suites.
# ---------------------------------------------------------------------------

LAW_SUITES = ("nondet", "state", "localstate", "globalstate", "undo",
              "modify")


def _ctx(rng, ts, families, layout):
    """A random continuation: an open AST over 'x', lowered per answer."""
    k_ast = gen_program(ts ^ 0x5DEECE66D, 3, families, free_vars=("x",))
    return (lambda a: lower(k_ast, layout, {"x": a})), k_ast


def _check_nondet_laws(report, ts, rng):
    n0 = {"nondet": 0}
    m_ast = gen_program(ts, 3, ("nondet",))
    n_ast = gen_program(ts + 1, 3, ("nondet",))
    o_ast = gen_program(ts + 2, 3, ("nondet",))
    k, k_ast = _ctx(rng, ts, ("nondet",), n0)
    m = lambda: lower(m_ast, n0)
    n = lambda: lower(n_ast, n0)
    o = lambda: lower(o_ast, n0)
    cases = [
        ("identity-left", or_(fail(at=0), m(), at=0), m()),
        ("identity-right", or_(m(), fail(at=0), at=0), m()),
        ("assoc", or_(or_(m(), n(), at=0), o(), at=0),
         or_(m(), or_(n(), o(), at=0), at=0)),
    ]
    for name, l, r in cases:
        lhs = h_nd(bind(l, k))
        rhs = h_nd(bind(r, k))
        if lhs != rhs:
            _record(report, ts, "law=%s; m=%s; k=%s"
                    % (name, show_ast(m_ast), show_ast(k_ast)), lhs, rhs)


def _check_state_laws(report, ts, rng):
    s_fam = {"state": 0, "nondet": 0}  # nondet unused
    s, s2 = rng.randint(-3, 3), rng.randint(-3, 3)
    s0 = rng.randint(-3, 3)
    k, k_ast = _ctx(rng, ts, ("state",), s_fam)
    kc_ast = gen_program(ts + 8, 3, ("state",))
    kc = lambda _a: lower(kc_ast, s_fam)  # context for unit-valued laws
    k2_ast = gen_program(ts + 7, 2, ("state",), free_vars=("x", "y"))
    k2 = lambda a, b: lower(k2_ast, s_fam, {"x": a, "y": b})
    cases = [
        ("put-put", seq(put(s), put(s2)), put(s2), kc),
        ("put-get", seq(put(s), get(Leaf)), seq(put(s), Leaf(s)), k),
        ("get-put", get(lambda v: put(v)), Leaf(()), kc),
        ("get-get", get(lambda v: get(lambda w: k2(v, w))),
         get(lambda v: k2(v, v)), k),
    ]
    for name, l, r, kk in cases:
        lhs = h_nil(h_state(bind(l, kk), s0))
        rhs = h_nil(h_state(bind(r, kk), s0))
        if lhs != rhs:
            _record(report, ts, "law=%s; s=%d s'=%d s0=%d; k=%s"
                    % (name, s, s2, s0, show_ast(k_ast)), lhs, rhs)


def _check_localstate_laws(report, ts, rng):
    s = rng.randint(-3, 3)
    s0 = rng.randint(-3, 3)
    m_ast = gen_program(ts, 3, ("state", "nondet"))
    n_ast = gen_program(ts + 1, 3, ("state", "nondet"))
    k, k_ast = _ctx(rng, ts, ("state", "nondet"), SN)
    k1_ast = gen_program(ts + 5, 3, ("state", "nondet"), free_vars=("x",))
    k2_ast = gen_program(ts + 6, 3, ("state", "nondet"), free_vars=("x",))
    m = lambda: lower(m_ast, SN)
    n = lambda: lower(n_ast, SN)
    k1 = lambda a: lower(k1_ast, SN, {"x": a})
    k2 = lambda a: lower(k2_ast, SN, {"x": a})
    cases = [
        ("put-right-identity", seq(put(s), fail()), fail()),
        ("put-left-dist", seq(put(s), or_(m(), n())),
         or_(seq(put(s), m()), seq(put(s), n()))),
        ("get-right-identity", seq(get(Leaf), fail()), fail()),
        ("get-left-dist", get(lambda v: or_(k1(v), k2(v))),
         or_(get(k1), get(k2))),
    ]
    for name, l, r in cases:
        lhs = h_nil(h_local(bind(l, k), s0))
        rhs = h_nil(h_local(bind(r, k), s0))
        if lhs != rhs:
            _record(report, ts, "law=%s; s=%d s0=%d; m=%s; n=%s; k=%s"
                    % (name, s, s0, show_ast(m_ast), show_ast(n_ast),
                       show_ast(k_ast)), lhs, rhs)


def _check_globalstate_laws(report, ts, rng, counterexample_box):
    s = rng.randint(-3, 3)
    s0 = rng.randint(-3, 3)
    m_ast = gen_program(ts, 3, ("state", "nondet"))
    n_ast = gen_program(ts + 1, 3, ("state", "nondet"))
    k, k_ast = _ctx(rng, ts, ("state", "nondet"), SN)
    m = lambda: lower(m_ast, SN)
    n = lambda: lower(n_ast, SN)
    l = or_(seq(put(s), m()), n())
    r = seq(put(s), or_(m(), n()))
    lhs = h_nil(h_global(bind(l, k), s0))
    rhs = h_nil(h_global(bind(r, k), s0))
    if lhs != rhs:
        _record(report, ts, "law=put-or; s=%d s0=%d; m=%s; n=%s; k=%s"
                % (s, s0, show_ast(m_ast), show_ast(n_ast), show_ast(k_ast)),
                lhs, rhs)
    # Counterexample search: the same law must be violable under hLocal.
    if counterexample_box["counterexample"] is None:
        l2 = or_(seq(put(s), m()), n())
        r2 = seq(put(s), or_(m(), n()))
        lloc = h_nil(h_local(bind(l2, k), s0))
        rloc = h_nil(h_local(bind(r2, k), s0))
        if lloc != rloc:
            counterexample_box["counterexample"] = {
                "trialSeed": ts,
                "astText": "law=put-or under local; s=%d s0=%d; m=%s; n=%s; k=%s"
                           % (s, s0, show_ast(m_ast), show_ast(n_ast),
                              show_ast(k_ast)),
                "lhs": repr(lloc),
                "rhs": repr(rloc),
            }


def _check_undo_laws(report, ts, rng):
    s = rng.randint(-100, 100)
    r = rng.randint(-100, 100)
    if INT_UNDO.minus(INT_UNDO.plus(s, r), r) != s:
        _record(report, ts, "law=plus-minus (int); s=%d r=%d" % (s, r),
                INT_UNDO.minus(INT_UNDO.plus(s, r), r), s)
    c = rng.randint(0, 6)
    sol = [rng.randint(1, 8) for _ in range(c)]
    qs = (c, sol)
    qr = rng.randint(1, 8)
    if q_minus(q_plus(qs, qr), qr) != qs:
        _record(report, ts, "law=plus-minus (queens); s=%r r=%d" % (qs, qr),
                q_minus(q_plus(qs, qr), qr), qs)


def _check_modify_laws(report, ts, rng):
    m_fam = {"modify": 0, "nondet": 0}  # nondet unused
    s0 = rng.randint(-3, 3)
    r = rng.randint(-3, 3)
    k, k_ast = _ctx(rng, ts, ("modify",), m_fam)
    kc_ast = gen_program(ts + 8, 3, ("modify",))
    kc = lambda _a: lower(kc_ast, m_fam)  # context for unit-valued laws
    k2_ast = gen_program(ts + 7, 2, ("modify",), free_vars=("x", "y"))
    k2 = lambda a, b: lower(k2_ast, m_fam, {"x": a, "y": b})
    cases = [
        ("mget-mget", mget(lambda v: mget(lambda w: k2(v, w))),
         mget(lambda v: k2(v, v)), k),
        ("update-mget", mget(lambda v: seq(update(r), Leaf(v + r))),
         seq(update(r), mget(Leaf)), k),
        ("restore-mget", mget(lambda v: seq(restore(r), Leaf(v - r))),
         seq(restore(r), mget(Leaf)), k),
        ("update-restore", seq(update(r), restore(r)), Leaf(()), kc),
    ]
    for name, l, r_, kk in cases:
        lhs = h_nil(h_modify(bind(l, kk), s0))
        rhs = h_nil(h_modify(bind(r_, kk), s0))
        if lhs != rhs:
            _record(report, ts, "law=%s; r=%d s0=%d; k=%s"
                    % (name, r, s0, show_ast(k_ast)), lhs, rhs)


def check_laws(suite, trials, seed):
    """Check a law suite in random contexts (>>= k) on random programs."""
    if suite not in LAW_SUITES:
        raise ValueError("unknown law suite %r" % (suite,))
    report = _report(suite, seed, trials)
    if suite == "globalstate":
        report["counterexample"] = None
    for i in range(trials):
        ts = _trial_seed(seed, i)
        rng = random.Random(ts)
        if suite == "nondet":
            _check_nondet_laws(report, ts, rng)
        elif suite == "state":
            _check_state_laws(report, ts, rng)
        elif suite == "localstate":
            _check_localstate_laws(report, ts, rng)
        elif suite == "globalstate":
            _check_globalstate_laws(report, ts, rng, report)
        elif suite == "undo":
            _check_undo_laws(report, ts, rng)
        elif suite == "modify":
            _check_modify_laws(report, ts, rng)
    if suite == "globalstate" and report["counterexample"] is None:
        report["failures"].append({
            "trialSeed": seed,
            "astText": "put-or-under-local counterexample search",
            "lhs": "no violation found",
            "rhs": "a violation was expected (the law is global-only)",
        })
    return report


# ---------------------------------------------------------------------------
# Lemma suite.
# ---------------------------------------------------------------------------

LEMMA_IDS = ("state-restored", "modify-restored", "pop-extract", "stack-eval",
             "dist-bind", "trail-tracks", "untrail-undos",
             "state-stack-restored")


def _trail_run(t, s, trail, undo=INT_UNDO):
    """hState1 ((hModify1 . hND+f . swap) t s) trail, keeping all pairs.

    t is over [ModifyF, NondetF, StateF(Trail) | ...]; result is
    ((answers, s_final), trail_final).
    """
    w = h_modify(h_ndf(swap(t)), s, undo)
    return h_nil(h_state(w, trail))


def _check_state_restored(report, ts, rng):
    ast = gen_program(ts, 5, ("state", "nondet"))
    s0 = rng.randint(-3, 3)
    t = local2global(lower(ast, SN))
    (_results, s_final) = h_nil(h_state(h_ndf(swap(t)), s0))
    if s_final != s0:
        _record(report, ts, "s0=%d; %s" % (s0, show_ast(ast)), s_final, s0)


def _check_modify_restored(report, ts, rng):
    ast = gen_program(ts, 5, ("modify", "nondet"))
    s0 = rng.randint(-3, 3)
    t = local2global_m(lower(ast, MN))
    (_results, s_final) = h_nil(h_modify(h_ndf(swap(t)), s0))
    if s_final != s0:
        _record(report, ts, "s0=%d; %s" % (s0, show_ast(ast)), s_final, s0)


def _machine_state(rng, ts):
    """A random choicepoint state: results plus pending translated branches."""
    xs = [rng.randint(-3, 3) for _ in range(rng.randint(0, 3))]
    st = [nondet2state_s(lower(gen_program(ts + 100 + j, 3, ("nondet",)),
                               {"nondet": 0}))
          for j in range(rng.randint(0, 2))]
    return xs, st


def _drain(p, cs):
    """Run machine tree p to completion from choicepoint state cs; the final
    state has an empty stack, so its results fully describe the run."""
    res = h_nil(h_state(p, cs))
    return res[1].results


def _check_pop_extract(report, ts, rng):
    src = gen_program(ts, 4, ("nondet",))
    p = nondet2state_s(lower(src, {"nondet": 0}))
    extracted = _drain(nondet2state_s(lower(src, {"nondet": 0})),
                       ChoiceState([], []))
    xs, st = _machine_state(rng, ts)
    lhs = _drain(p, ChoiceState(xs, st))
    rhs = _drain(pop_s(), ChoiceState(xs + extracted, list(st)))
    if lhs != rhs:
        _record(report, ts, "pop-extract; %s" % show_ast(src), lhs, rhs)


def _check_stack_eval(report, ts, rng):
    xs, st = _machine_state(rng, ts)
    x = rng.randint(-3, 3)
    p = nondet2state_s(lower(gen_program(ts, 3, ("nondet",)), {"nondet": 0}))
    q = nondet2state_s(lower(gen_program(ts + 1, 3, ("nondet",)),
                             {"nondet": 0}))
    checks = [
        ("evaluation-append",
         _drain(append_s(x, p), ChoiceState(list(xs), list(st))),
         _drain(p, ChoiceState(xs + [x], list(st)))),
        ("evaluation-pop1",
         h_nil(h_state(pop_s(), ChoiceState(list(xs), [])))[1].results,
         list(xs)),
        ("evaluation-pop2",
         _drain(pop_s(), ChoiceState(list(xs), [q] + list(st))),
         _drain(q, ChoiceState(list(xs), list(st)))),
        ("evaluation-push",
         _drain(push_s(q, p), ChoiceState(list(xs), list(st))),
         _drain(p, ChoiceState(list(xs), [q] + list(st)))),
    ]
    for name, lhs, rhs in checks:
        if lhs != rhs:
            _record(report, ts, name, lhs, rhs)


def _check_dist_bind(report, ts, rng):
    s0 = rng.randint(-3, 3)
    # hState1 distributivity over bind (residual nondeterminism observed).
    p_ast = gen_program(ts, 4, ("state", "nondet"))
    k_ast = gen_program(ts + 1, 3, ("state", "nondet"), free_vars=("x",))
    p = lower(p_ast, SN)
    kf = lambda a: lower(k_ast, SN, {"x": a})
    lhs = h_nd(h_state(bind(p, kf), s0))
    rhs = h_nd(bind(h_state(lower(p_ast, SN), s0),
                    lambda pair: h_state(kf(pair[0]), pair[1])))
    if lhs != rhs:
        _record(report, ts, "dist-hState1; p=%s; k=%s"
                % (show_ast(p_ast), show_ast(k_ast)), lhs, rhs)
    # hModify1 distributivity.
    pm_ast = gen_program(ts + 2, 4, ("modify", "nondet"))
    km_ast = gen_program(ts + 3, 3, ("modify", "nondet"), free_vars=("x",))
    pm = lower(pm_ast, MN)
    kmf = lambda a: lower(km_ast, MN, {"x": a})
    lhs = h_nd(h_modify(bind(pm, kmf), s0))
    rhs = h_nd(bind(h_modify(lower(pm_ast, MN), s0),
                    lambda pair: h_modify(kmf(pair[0]), pair[1])))
    if lhs != rhs:
        _record(report, ts, "dist-hModify1; p=%s; k=%s"
                % (show_ast(pm_ast), show_ast(km_ast)), lhs, rhs)


def _random_trail(rng):
    out = []
    for _ in range(rng.randint(0, 3)):
        out.append(MARKER if rng.random() < 0.4
                   else left(rng.randint(-3, 3)))
    return out


def _check_trail_tracks(report, ts, rng):
    ast = gen_program(ts, 5, ("modify", "nondet"))
    s0 = rng.randint(-3, 3)
    t1 = []
    t2 = _random_trail(rng)
    u = local2trail(lower(ast, MN))
    (res1, sf1), tf1 = _trail_run(u, s0, t1)
    (res2, sf2), tf2 = _trail_run(local2trail(lower(ast, MN)), s0, list(t2))
    ok = (res1 == res2 and sf1 == sf2 and tf1 + t2 == tf2
          and all(e[0] == "left" for e in tf1)
          and sf1 == s0 + sum(e[1] for e in tf1))
    if not ok:
        _record(report, ts, "trail-tracks; s0=%d; %s" % (s0, show_ast(ast)),
                ((res1, sf1), tf1), ((res2, sf2), tf2))


def _check_untrail_undos(report, ts, rng):
    s0 = rng.randint(-5, 5)
    ys = [left(rng.randint(-3, 3)) for _ in range(rng.randint(0, 4))]
    xs = _random_trail(rng)
    trail = ys + [MARKER] + xs
    (res, s_final), t_final = _trail_run(untrail(), s0, trail)
    expect_s = s0 - sum(e[1] for e in ys)  # fminus: foldl minus
    if not (res == [()] and s_final == expect_s and t_final == xs):
        _record(report, ts, "untrail-undos; s0=%d ys=%r xs=%r"
                % (s0, ys, xs), ((res, s_final), t_final),
                (([()], expect_s), xs))


def _check_state_stack_restored(report, ts, rng):
    ast = gen_program(ts, 5, ("modify", "nondet"))
    s0 = rng.randint(-3, 3)
    t0 = _random_trail(rng)
    # Marker-push, run, untrail — sequentially threading state and trail.
    (_r1, s1), tr1 = _trail_run(push_stack(MARKER), s0, list(t0))
    (res, s2), tr2 = _trail_run(local2trail(lower(ast, MN)), s1, tr1)
    (_r3, s3), tr3 = _trail_run(untrail(), s2, tr2)
    (res_ref, _sref), _tref = _trail_run(local2trail(lower(ast, MN)), s0, [])
    answers = res
    answers_ref = res_ref
    if not (answers == answers_ref and s3 == s0 and tr3 == t0):
        _record(report, ts, "state-stack-restored; s0=%d t0=%r; %s"
                % (s0, t0, show_ast(ast)),
                (answers, s3, tr3), (answers_ref, s0, t0))


def check_lemma(ident, trials, seed):
    """Check an appendix lemma on random programs / machine states."""
    if ident not in LEMMA_IDS:
        raise ValueError("unknown lemma id %r" % (ident,))
    report = _report(ident, seed, trials)
    check = {
        "state-restored": _check_state_restored,
        "modify-restored": _check_modify_restored,
        "pop-extract": _check_pop_extract,
        "stack-eval": _check_stack_eval,
        "dist-bind": _check_dist_bind,
        "trail-tracks": _check_trail_tracks,
        "untrail-undos": _check_untrail_undos,
        "state-stack-restored": _check_state_stack_restored,
    }[ident]
    for i in range(trials):
        ts = _trial_seed(seed, i)
        check(report, ts, random.Random(ts))
    return report


# ---------------------------------------------------------------------------
# Mutation sensitivity: three seeded bugs, each detectable by a suite.
# ---------------------------------------------------------------------------

def _local2global_skip_putr(t):
    """BUG: keeps Put as-is instead of the state-restoring expansion."""
    return t


def _local2trail_untrailed_branch(t):
    """BUG: the right branch of Or does not untrail."""
    from .core import Node, Or, MUpdate, fold
    def alg(idx, op):
        if idx == 0:
            if isinstance(op, MUpdate):
                return seq(push_stack(left(op.r)),
                           seq(update(op.r, at=0), op.k))
            return Node(0, op)
        if idx == 1:
            if isinstance(op, Or):
                return or_(seq(push_stack(MARKER), op.l), op.r, at=1)
            return Node(1, op)
        return Node(idx + 1, op)
    return fold(Leaf, alg, t)


_BROKEN_UNDO = Undo(INT_UNDO.plus, INT_UNDO.plus)  # BUG: minus defined as plus

MUTATIONS = ("skip-putR", "untrailed-branch", "minus-as-plus")


def check_mutation(name, trials, seed, depth=6):
    """Run a suite against a deliberately broken implementation; the check
    passes when at least one trial exposes the bug."""
    report = _report("mutation:" + name, seed, trials)
    report["detected"] = False
    for i in range(trials):
        ts = _trial_seed(seed, i)
        rng = random.Random(ts)
        s0 = rng.randint(-3, 3)
        if name == "skip-putR":
            ast = gen_program(ts, 6, ("state", "nondet"))
            lhs, rhs = _theorem_sides(
                "T-localglobal", ast, s0,
                local2global_impl=_local2global_skip_putr)
        elif name == "untrailed-branch":
            ast = gen_program(ts, 6, ("modify", "nondet"))
            lhs, rhs = _theorem_sides(
                "T-trail", ast, s0,
                local2trail_impl=_local2trail_untrailed_branch)
        elif name == "minus-as-plus":
            ast = gen_program(ts, 6, ("modify", "nondet"))
            lhs, rhs = (h_nil(h_local_m(lower(ast, MN), s0, INT_UNDO)),
                        h_nil(h_global_t(lower(ast, MN), s0, _BROKEN_UNDO)))
        else:
            raise ValueError("unknown mutation %r" % (name,))
        if lhs != rhs:
            report["detected"] = True
            report["firstFailingTrial"] = i
            _record(report, ts, "s0=%d; %s" % (s0, show_ast(ast)), lhs, rhs)
            break
    return report
