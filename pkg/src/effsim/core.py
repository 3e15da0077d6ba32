"""Effect trees: free-monad syntax over an ordered, closed coproduct of signatures.

A tree is either a Leaf carrying a return value or a Node carrying an
operation from one of the signature families, tagged with its injection
index in the ordered coproduct.  The families are:

    StateF(S):      Get(k: S -> tree), Put(s: S, k: tree)
    NondetF:        Fail, Or(l: tree, r: tree)
    ModifyF(S, R):  MGet(k: S -> tree), MUpdate(r: R, k: tree),
                    MRestore(r: R, k: tree)
    NilF:           (no operations)

Get/MGet continuations are function values (state -> subtree), which keeps
trees lazy in the state; all other children are concrete subtrees.
"""


class Leaf:
    """Return-value leaf (the free monad's Var)."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __repr__(self):
        return "Leaf(%r)" % (self.value,)


class Node:
    """Operation node (the free monad's Op): injection index + operation."""

    __slots__ = ("idx", "op")

    def __init__(self, idx, op):
        self.idx = idx
        self.op = op

    def __repr__(self):
        return "Node(%d, %r)" % (self.idx, self.op)


# ---------------------------------------------------------------------------
# Operations.  Each knows how to map a function over its continuation
# children; function-valued continuations are mapped lazily (composition).
# ---------------------------------------------------------------------------

class Get:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def map_children(self, f):
        k = self.k
        return Get(lambda s: f(k(s)))

    def __repr__(self):
        return "Get(<fun>)"


class Put:
    __slots__ = ("s", "k")

    def __init__(self, s, k):
        self.s = s
        self.k = k

    def map_children(self, f):
        return Put(self.s, f(self.k))

    def __repr__(self):
        return "Put(%r, %r)" % (self.s, self.k)


class Fail:
    __slots__ = ()

    def map_children(self, f):
        return self

    def __repr__(self):
        return "Fail"


class Or:
    __slots__ = ("l", "r")

    def __init__(self, l, r):
        self.l = l
        self.r = r

    def map_children(self, f):
        return Or(f(self.l), f(self.r))

    def __repr__(self):
        return "Or(%r, %r)" % (self.l, self.r)


class MGet:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def map_children(self, f):
        k = self.k
        return MGet(lambda s: f(k(s)))

    def __repr__(self):
        return "MGet(<fun>)"


class MUpdate:
    __slots__ = ("r", "k")

    def __init__(self, r, k):
        self.r = r
        self.k = k

    def map_children(self, f):
        return MUpdate(self.r, f(self.k))

    def __repr__(self):
        return "MUpdate(%r, %r)" % (self.r, self.k)


class MRestore:
    __slots__ = ("r", "k")

    def __init__(self, r, k):
        self.r = r
        self.k = k

    def map_children(self, f):
        return MRestore(self.r, f(self.k))

    def __repr__(self):
        return "MRestore(%r, %r)" % (self.r, self.k)


# ---------------------------------------------------------------------------
# Fold and bind.
# ---------------------------------------------------------------------------

def fold(gen, alg, t):
    """The free monad's fold: Leaf x -> gen(x); Node -> alg(idx, mapped op).

    alg receives the operation with every child already folded (children
    behind Get/MGet continuations fold on demand when the continuation is
    applied).
    """
    if isinstance(t, Leaf):
        return gen(t.value)
    return alg(t.idx, t.op.map_children(lambda c: fold(gen, alg, c)))


def bind(t, f):
    """Monadic bind: replace every leaf x by f(x); operation nodes preserved."""
    return fold(f, Node, t)


def tree_map(t, f):
    """Functorial map over leaf values."""
    return bind(t, lambda x: Leaf(f(x)))


def seq(a, b):
    """a >> b: run a for its effects, discard its answer, continue with b."""
    return bind(a, lambda _x: b)


# ---------------------------------------------------------------------------
# Smart constructors.  The `at` argument is the family's injection index in
# the signature the program is written against.
# ---------------------------------------------------------------------------

def ret(x):
    return Leaf(x)


def get(k, at=0):
    return Node(at, Get(k))


def put(s, at=0):
    return Node(at, Put(s, Leaf(())))


def fail(at=1):
    return Node(at, Fail())


def or_(l, r, at=1):
    return Node(at, Or(l, r))


def mget(k, at=0):
    return Node(at, MGet(k))


def update(r, at=0):
    return Node(at, MUpdate(r, Leaf(())))


def restore(r, at=0):
    return Node(at, MRestore(r, Leaf(())))


def choose(xs, at=1):
    """choose = foldr ((|) . eta) fail — an or-chain of returns."""
    t = fail(at=at)
    for x in reversed(list(xs)):
        t = or_(Leaf(x), t, at=at)
    return t


def guard(b, at=1):
    return Leaf(()) if b else fail(at=at)


def side(m, at=1):
    """side m = m >> fail: run m for its effects only."""
    return seq(m, fail(at=at))


# ---------------------------------------------------------------------------
# Signature permutations (injection-index retagging, applied recursively).
# ---------------------------------------------------------------------------

def swap(t):
    """Exchange the first two families of the signature (indices 0 <-> 1)."""
    return fold(Leaf, lambda i, op: Node(1 - i if i < 2 else i, op), t)


_ROTATE = {0: 2, 1: 0, 2: 1}


def rotate(t):
    """Permute a four-family signature [f1,f2,f3,f4] -> [f2,f3,f1,f4]."""
    return fold(Leaf, lambda i, op: Node(_ROTATE.get(i, i), op), t)


# ---------------------------------------------------------------------------
# Debug pretty-printer (stable text form; function children shown as <fun>).
# ---------------------------------------------------------------------------

def show_tree(t):
    if isinstance(t, Leaf):
        return "ret %r" % (t.value,)
    op = t.op
    tag = "%d" % t.idx
    if isinstance(op, Get):
        return "get@%s <fun>" % tag
    if isinstance(op, Put):
        return "put@%s %r; %s" % (tag, op.s, show_tree(op.k))
    if isinstance(op, Fail):
        return "fail@%s" % tag
    if isinstance(op, Or):
        return "or@%s (%s) (%s)" % (tag, show_tree(op.l), show_tree(op.r))
    if isinstance(op, MGet):
        return "mget@%s <fun>" % tag
    if isinstance(op, MUpdate):
        return "update@%s %r; %s" % (tag, op.r, show_tree(op.k))
    if isinstance(op, MRestore):
        return "restore@%s %r; %s" % (tag, op.r, show_tree(op.k))
    raise TypeError("unknown operation: %r" % (op,))
