"""Shared term language: de Bruijn terms, substitution, beta/delta reduction.

Terms are immutable; structural equality on the de Bruijn representation is
alpha-equivalence.  Every node caches its hash, an upper bound on its free
indices (``fvb``) and a normality bitmask, which is what makes long reduction
runs (the paradox demos burn through 10^6 contractions) affordable in pure
Python: closed subtrees are shared, never copied, and normal subtrees are
never re-scanned.

Reduction positions are tuples of 0/1: 0 selects fun/domain, 1 selects
arg/body/codomain.
"""
from __future__ import annotations

from dataclasses import dataclass

STAR = "*"
BOX = "BOX"
TRIANGLE = "TRI"

_NF_BETA = 1      # no beta redex in the subtree
_NF_BETAJ = 2     # additionally no J delta redex

DEFAULT_FUEL = 10_000


class Term:
    __slots__ = ("_hash", "fvb", "nf")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            x, y = stack.pop()
            if x is y:
                continue
            if x._hash != y._hash:
                return False
            tx = type(x)
            if tx is not type(y):
                return False
            if tx is Var:
                if x.index != y.index:
                    return False
            elif tx is Sort:
                if x.name != y.name:
                    return False
            elif tx is PrimJ:
                pass
            else:
                stack.append((x.right, y.right))
                stack.append((x.left, y.left))
        return True

    def __repr__(self):
        from .syntax import pretty
        try:
            return f"<{type(self).__name__} {pretty(self)}>"
        except Exception:
            return f"<{type(self).__name__}>"


class Var(Term):
    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 0:
            raise ValueError("negative de Bruijn index")
        self.index = index
        self.fvb = index + 1
        self.nf = _NF_BETA | _NF_BETAJ
        self._hash = hash((0x56A1, index))


class Sort(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.fvb = 0
        self.nf = _NF_BETA | _NF_BETAJ
        self._hash = hash((0x50B2, name))


class PrimJ(Term):
    """The non-uniform polymorphism constant; a normal form on its own."""
    __slots__ = ()

    def __init__(self):
        self.fvb = 0
        self.nf = _NF_BETA | _NF_BETAJ
        self._hash = hash((0x4A00,))


class Lam(Term):
    __slots__ = ("left", "right")

    def __init__(self, domain: Term, body: Term):
        self.left = domain
        self.right = body
        self.fvb = max(domain.fvb, body.fvb - 1)
        self.nf = 0
        self._hash = hash((0x4C33, domain._hash, body._hash))

    @property
    def domain(self) -> Term:
        return self.left

    @property
    def body(self) -> Term:
        return self.right


class App(Term):
    __slots__ = ("left", "right")

    def __init__(self, fun: Term, arg: Term):
        self.left = fun
        self.right = arg
        self.fvb = max(fun.fvb, arg.fvb)
        self.nf = 0
        self._hash = hash((0x4155, fun._hash, arg._hash))

    @property
    def fun(self) -> Term:
        return self.left

    @property
    def arg(self) -> Term:
        return self.right


class Pi(Term):
    __slots__ = ("left", "right")

    def __init__(self, domain: Term, codomain: Term):
        self.left = domain
        self.right = codomain
        self.fvb = max(domain.fvb, codomain.fvb - 1)
        self.nf = 0
        self._hash = hash((0x5044, domain._hash, codomain._hash))

    @property
    def domain(self) -> Term:
        return self.left

    @property
    def codomain(self) -> Term:
        return self.right


J = PrimJ()
STAR_SORT = Sort(STAR)
BOX_SORT = Sort(BOX)
TRIANGLE_SORT = Sort(TRIANGLE)


def alpha_eq(a: Term, b: Term) -> bool:
    return a == b


def app(fun: Term, *args: Term) -> Term:
    for a in args:
        fun = App(fun, a)
    return fun


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Decompose nested applications into head and argument list."""
    args: list[Term] = []
    while type(t) is App:
        args.append(t.right)
        t = t.left
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# index arithmetic

def _rewrite(t: Term, cutoff: int, on_var):
    """Rebuild t applying on_var(index, cutoff) to every Var with index >= the
    local cutoff.  Subtrees without such variables are returned as-is."""
    out: list[Term] = []
    # reduction shares subtrees heavily; memoise on node identity so each
    # physical subtree is rebuilt once per cutoff instead of once per path
    memo: dict[tuple[int, int], Term] = {}
    stack: list[tuple[Term, int, int]] = [(t, cutoff, 0)]
    while stack:
        node, cut, stage = stack.pop()
        if stage == 0:
            if node.fvb <= cut:
                out.append(node)
                continue
            hit = memo.get((id(node), cut))
            if hit is not None:
                out.append(hit)
                continue
            tn = type(node)
            if tn is Var:
                out.append(on_var(node.index, cut))
            else:
                stack.append((node, cut, 1))
                bump = 0 if tn is App else 1
                stack.append((node.right, cut + bump, 0))
                stack.append((node.left, cut, 0))
        else:
            b = out.pop()
            a = out.pop()
            if a is node.left and b is node.right:
                res = node
            else:
                res = type(node)(a, b)
            memo[(id(node), cut)] = res
            out.append(res)
    return out[0]


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add `by` to every free index >= cutoff."""
    if by == 0 or t.fvb <= cutoff:
        return t
    return _rewrite(t, cutoff, lambda i, c: Var(i + by))


def substitute(body: Term, arg: Term) -> Term:
    """Capture-avoiding substitution of arg for the outermost bound variable
    of a binder scope; remaining free indices are re-adjusted."""
    closed = arg.fvb == 0

    def on_var(i: int, cut: int) -> Term:
        if i == cut:
            return arg if closed else shift(arg, cut)
        return Var(i - 1)

    return _rewrite(body, 0, on_var)


# ---------------------------------------------------------------------------
# reduction

@dataclass(frozen=True)
class JRules:
    """Delta rules for J: J{s}{t} M -> M when s,t closed and equal up to
    normalization, J{s}{t} M -> \\x:t. x when closed and distinct."""
    type_fuel: int = DEFAULT_FUEL


RULE_BETA = "beta"
RULE_J_EQ = "deltaJ-eq"
RULE_J_NEQ = "deltaJ-neq"


def _match_redex(node: Term, jrules: JRules | None):
    """Return (rule, contractum) when node itself is a redex."""
    if type(node) is not App:
        return None
    f = node.left
    if type(f) is Lam:
        return RULE_BETA, substitute(f.right, node.right)
    if jrules is not None and type(f) is App:
        g = f.left
        if type(g) is App and type(g.left) is PrimJ:
            s, t, m = g.right, f.right, node.right
            if s.fvb == 0 and t.fvb == 0:
                ns = normalize(s, jrules.type_fuel, keep_steps=False)
                nt = normalize(t, jrules.type_fuel, keep_steps=False)
                if type(ns.outcome) is NormalForm and type(nt.outcome) is NormalForm:
                    if ns.outcome.term == nt.outcome.term:
                        return RULE_J_EQ, m
                    return RULE_J_NEQ, Lam(t, Var(0))
    return None


def _children(node: Term):
    if type(node) in (Lam, App, Pi):
        return (node.left, node.right)
    return ()


def step_normal_order(t: Term, jrules: JRules | None = None):
    """Contract the leftmost-outermost redex.

    Returns (reduct, position, rule) or None when t is a normal form.
    Search order is node-first, then left child, then right child, which on
    applications gives normal order.
    """
    want = _NF_BETAJ if jrules is not None else _NF_BETA
    frames: list[list] = [[t, -1]]
    while frames:
        f = frames[-1]
        node = f[0]
        if f[1] == -1:
            if node.nf & want:
                frames.pop()
                continue
            red = _match_redex(node, jrules)
            if red is not None:
                rule, contractum = red
                path = tuple(fr[1] - 1 for fr in frames[:-1])
                res = contractum
                for fr in reversed(frames[:-1]):
                    parent, idx = fr[0], fr[1] - 1
                    if idx == 0:
                        res = type(parent)(res, parent.right)
                    else:
                        res = type(parent)(parent.left, res)
                return res, path, rule
            f[1] = 0
        ch = _children(node)
        if f[1] < len(ch):
            child = ch[f[1]]
            f[1] += 1
            frames.append([child, -1])
        else:
            mark = (_NF_BETA | _NF_BETAJ) if jrules is not None else _NF_BETA
            node.nf |= mark
            frames.pop()
    return None


@dataclass(frozen=True)
class Step:
    position: tuple[int, ...]
    rule: str
    before: Term
    after: Term


@dataclass(frozen=True)
class NormalForm:
    term: Term


@dataclass(frozen=True)
class FuelExhausted:
    last: Term
    fuel: int


@dataclass(frozen=True)
class CycleDetected:
    period: int
    witness: Term


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[Step, ...]
    outcome: NormalForm | FuelExhausted | CycleDetected
    step_count: int


def normalize(t: Term, fuel: int = DEFAULT_FUEL, detect_cycles: bool = False,
              jrules: JRules | None = None, keep_steps: bool = True) -> ReductionTrace:
    """Normal-order normalization with an explicit step budget.

    Divergence is reported in-band: FuelExhausted when the budget runs out,
    CycleDetected when the same term (up to alpha) recurs and detect_cycles
    is set.
    """
    if fuel < 0:
        raise ValueError("fuel must be >= 0")
    steps: list[Step] = []
    seen: dict[Term, int] | None = {} if detect_cycles else None
    cur = t
    count = 0
    while True:
        if seen is not None:
            first = seen.get(cur)
            if first is not None:
                return ReductionTrace(tuple(steps), CycleDetected(count - first, cur), count)
            seen[cur] = count
        r = step_normal_order(cur, jrules)
        if r is None:
            return ReductionTrace(tuple(steps), NormalForm(cur), count)
        if count >= fuel:
            return ReductionTrace(tuple(steps), FuelExhausted(cur, fuel), count)
        nxt, path, rule = r
        if keep_steps:
            steps.append(Step(path, rule, cur, nxt))
        cur = nxt
        count += 1


def normal_form_of(t: Term, fuel: int = DEFAULT_FUEL, jrules: JRules | None = None) -> Term | None:
    """Normal form, or None when the budget does not suffice."""
    tr = normalize(t, fuel, jrules=jrules, keep_steps=False)
    if type(tr.outcome) is NormalForm:
        return tr.outcome.term
    return None


# full-beta contraction, used by the confluence sampler only

def redex_positions(t: Term, jrules: JRules | None = None) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    stack: list[tuple[Term, tuple[int, ...]]] = [(t, ())]
    while stack:
        node, path = stack.pop()
        if _match_redex(node, jrules) is not None:
            out.append(path)
        ch = _children(node)
        for i in range(len(ch) - 1, -1, -1):
            stack.append((ch[i], path + (i,)))
    return sorted(out)


def contract_at(t: Term, path: tuple[int, ...], jrules: JRules | None = None) -> Term:
    if not path:
        red = _match_redex(t, jrules)
        if red is None:
            raise ValueError("no redex at position")
        return red[1]
    ch = _children(t)
    i = path[0]
    new = contract_at(ch[i], path[1:], jrules)
    if i == 0:
        return type(t)(new, t.right)
    return type(t)(t.left, new)
