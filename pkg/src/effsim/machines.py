"""Fused single-pass abstract machines.

simulate_f collapses the choicepoint-stack pipeline into one machine with a
results list and a choicepoint stack; simulate_tf additionally keeps a trail
stack of deltas and markers (the WAM stack/trail discipline).  Both run as
iterative loops; the only recursion is the forwarding of residual operations,
whose children resume the machine from a snapshot.
"""

from .core import (
    Leaf, Node, Get, Put, Fail, Or, MGet, MUpdate, MRestore,
)
from .handlers import INT_UNDO
from .translations import MARKER, left


def simulate_f(t, s, trace=None):
    """Fused choicepoint machine over [StateF(S),NondetF|rest]; equals simulate.

    Put pushes a state-restoring resumption; Fail and exhausted leaves
    continue from the choicepoint stack.  If `trace` is a list, one record
    (op, |results|, |cpStack|) is appended per machine transition.
    """
    def run(t, xs, stack, s):
        while True:
            if isinstance(t, Leaf):
                if trace is not None:
                    trace.append(("ret", len(xs) + 1, len(stack)))
                xs = xs + [t.value]
                t = None
            elif t.idx == 0:
                op = t.op
                if isinstance(op, Get):
                    if trace is not None:
                        trace.append(("get", len(xs), len(stack)))
                    t = op.k(s)
                    continue
                if isinstance(op, Put):
                    if trace is not None:
                        trace.append(("put", len(xs), len(stack) + 1))
                    stack = [("restore", s)] + stack
                    s = op.s
                    t = op.k
                    continue
                raise ValueError("simulate_f: non-state operation %r" % (op,))
            elif t.idx == 1:
                op = t.op
                if isinstance(op, Fail):
                    if trace is not None:
                        trace.append(("fail", len(xs), len(stack)))
                    t = None
                elif isinstance(op, Or):
                    if trace is not None:
                        trace.append(("or", len(xs), len(stack) + 1))
                    stack = [("branch", op.r)] + stack
                    t = op.l
                    continue
                else:
                    raise ValueError(
                        "simulate_f: non-nondet operation %r" % (op,))
            else:
                snap = (xs, stack, s)
                return Node(t.idx - 2,
                            t.op.map_children(
                                lambda c, snap=snap: run(c, *snap[:2],
                                                         snap[2])))
            # continue: pop the choicepoint stack
            while t is None:
                if not stack:
                    return Leaf(xs)
                entry, stack = stack[0], stack[1:]
                if entry[0] == "restore":
                    s = entry[1]
                else:
                    t = entry[1]
    return run(t, [], [], s)


def simulate_tf(t, s, undo=INT_UNDO, trace=None):
    """Fused choicepoint + trail machine over [ModifyF,NondetF|rest];
    equals simulate_t.

    Updates log their delta; Or pushes a marker and a resumption; entering a
    resumption first untrails back to the matching marker.  If `trace` is a
    list, one record (op, |results|, |cpStack|, |trStack|) is appended per
    transition.
    """
    def run(t, xs, cp, tr, s):
        while True:
            if isinstance(t, Leaf):
                if trace is not None:
                    trace.append(("ret", len(xs) + 1, len(cp), len(tr)))
                xs = xs + [t.value]
                t = None
            elif t.idx == 0:
                op = t.op
                if isinstance(op, MGet):
                    if trace is not None:
                        trace.append(("mget", len(xs), len(cp), len(tr)))
                    t = op.k(s)
                    continue
                if isinstance(op, MUpdate):
                    if trace is not None:
                        trace.append(("update", len(xs), len(cp), len(tr) + 1))
                    tr = [left(op.r)] + tr
                    s = undo.plus(s, op.r)
                    t = op.k
                    continue
                if isinstance(op, MRestore):
                    if trace is not None:
                        trace.append(("restore", len(xs), len(cp), len(tr)))
                    s = undo.minus(s, op.r)
                    t = op.k
                    continue
                raise ValueError("simulate_tf: non-modify operation %r" % (op,))
            elif t.idx == 1:
                op = t.op
                if isinstance(op, Fail):
                    if trace is not None:
                        trace.append(("fail", len(xs), len(cp), len(tr)))
                    t = None
                elif isinstance(op, Or):
                    if trace is not None:
                        trace.append(("or", len(xs), len(cp) + 1, len(tr) + 1))
                    cp = [op.r] + cp
                    tr = [MARKER] + tr
                    t = op.l
                    continue
                else:
                    raise ValueError(
                        "simulate_tf: non-nondet operation %r" % (op,))
            else:
                snap = (xs, cp, tr, s)
                return Node(t.idx - 2,
                            t.op.map_children(
                                lambda c, snap=snap: run(c, *snap)))
            # continue: pop a resumption and untrail back to its marker
            if t is None:
                if not cp:
                    return Leaf(xs)
                q, cp = cp[0], cp[1:]
                while tr and tr[0] != MARKER:
                    if trace is not None:
                        trace.append(("untrail", len(xs), len(cp),
                                      len(tr) - 1))
                    s = undo.minus(s, tr[0][1])
                    tr = tr[1:]
                if tr:
                    tr = tr[1:]  # pop the marker
                t = q
    return run(t, [], [], [], s)
