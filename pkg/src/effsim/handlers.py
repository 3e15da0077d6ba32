"""Handlers: folds interpreting one leading signature family at a time.

Handlers over a residual signature return a residual tree whose injection
indices are shifted down past the handled family.  State-like handlers
(hState1, hModify1) are the fused single-fold versions and are implemented
as iterative loops so that arbitrarily long operation chains do not consume
Python stack.
"""

from .core import (
    Leaf, Node, Get, Put, Fail, Or, MGet, MUpdate, MRestore,
    bind, tree_map, swap,
)


class Undo:
    """An undoable state type: plus applies a delta, minus is its left inverse."""

    def __init__(self, plus, minus):
        self.plus = plus
        self.minus = minus


INT_UNDO = Undo(lambda s, r: s + r, lambda s, r: s - r)


def h_nd(t):
    """Nondeterminism into a DFS-ordered list (signature exactly [NondetF])."""
    out = []
    stack = [t]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            out.append(t.value)
            continue
        op = t.op
        if t.idx != 0:
            raise ValueError("h_nd: unexpected residual operation %r" % (op,))
        if isinstance(op, Fail):
            continue
        if isinstance(op, Or):
            stack.append(op.r)
            stack.append(op.l)
            continue
        raise ValueError("h_nd: non-nondet operation %r" % (op,))
    return out


def h_state(t, s):
    """hState1: handle the leading StateF family, threading state s.

    Returns a residual tree whose leaves are (answer, final_state) pairs;
    residual operations are forwarded with the current state captured.
    """
    while True:
        if isinstance(t, Leaf):
            return Leaf((t.value, s))
        if t.idx == 0:
            op = t.op
            if isinstance(op, Get):
                t = op.k(s)
            elif isinstance(op, Put):
                s = op.s
                t = op.k
            else:
                raise ValueError("h_state: non-state operation %r" % (op,))
        else:
            cur = s
            return Node(t.idx - 1,
                        t.op.map_children(lambda c, cur=cur: h_state(c, cur)))


def h_modify(t, s, undo=INT_UNDO):
    """hModify1: handle the leading ModifyF family with an Undo instance."""
    while True:
        if isinstance(t, Leaf):
            return Leaf((t.value, s))
        if t.idx == 0:
            op = t.op
            if isinstance(op, MGet):
                t = op.k(s)
            elif isinstance(op, MUpdate):
                s = undo.plus(s, op.r)
                t = op.k
            elif isinstance(op, MRestore):
                s = undo.minus(s, op.r)
                t = op.k
            else:
                raise ValueError("h_modify: non-modify operation %r" % (op,))
        else:
            cur = s
            return Node(t.idx - 1,
                        t.op.map_children(
                            lambda c, cur=cur: h_modify(c, cur, undo)))


def _lift2_append(p, q):
    """liftM2 (++) over residual trees of lists."""
    return bind(p, lambda l: tree_map(q, lambda r: l + r))


def h_ndf(t):
    """hND+f: handle the leading NondetF family, forwarding the rest.

    Returns a residual tree whose leaves are DFS-ordered result lists.
    """
    if isinstance(t, Leaf):
        return Leaf([t.value])
    if t.idx == 0:
        op = t.op
        if isinstance(op, Fail):
            return Leaf([])
        if isinstance(op, Or):
            return _lift2_append(h_ndf(op.l), h_ndf(op.r))
        raise ValueError("h_ndf: non-nondet operation %r" % (op,))
    return Node(t.idx - 1, t.op.map_children(h_ndf))


def h_nil(t):
    """Close an empty residual signature: a leaf yields its value.

    An operation node here means a handler was composed wrongly; fail loudly.
    """
    if isinstance(t, Leaf):
        return t.value
    raise RuntimeError(
        "h_nil applied to an operation node (idx=%d, op=%r): "
        "residual signature was expected to be empty" % (t.idx, t.op))


def h_local(t, s):
    """Local-state semantics: state handled before nondeterminism.

    hLocal = fmap (fmap (fmap fst) . hND+f) . runStateT . hState
    """
    u = h_ndf(h_state(t, s))
    return tree_map(u, lambda prs: [a for (a, _s) in prs])


def h_global(t, s):
    """Global-state semantics: nondeterminism handled before state.

    hGlobal = fmap (fmap fst) . flip runStateT s . hState . hND+f . swap
    """
    w = h_state(h_ndf(swap(t)), s)
    return tree_map(w, lambda pair: pair[0])


def h_local_m(t, s, undo=INT_UNDO):
    """hLocalM: local-state semantics via the modify handler."""
    u = h_ndf(h_modify(t, s, undo))
    return tree_map(u, lambda prs: [a for (a, _s) in prs])


def h_global_m(t, s, undo=INT_UNDO):
    """hGlobalM: global-state semantics via the modify handler."""
    w = h_modify(h_ndf(swap(t)), s, undo)
    return tree_map(w, lambda pair: pair[0])


def h_states(t, s1, s2):
    """Two leading state families, nested: leaves ((a, s1'), s2')."""
    return h_state(h_state(t, s1), s2)


def h_global_t(t, s, undo=INT_UNDO):
    """hGlobalT: global-state semantics with trail-stack restoration.

    hGlobalT = fmap (fmap fst . flip runStateT (Stack []) . hState)
             . hGlobalM . local2trail
    """
    from .translations import local2trail
    u = h_global_m(local2trail(t), s, undo)   # residual [StateF(Stack)|rest]
    w = h_state(u, [])                        # initial trail stack empty
    return tree_map(w, lambda pair: pair[0])
