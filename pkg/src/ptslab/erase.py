"""Erasure to untyped lambda terms (the Curry-style reading of System F).

|x| = x, |M N| = |M| |N|, |\\x:s. M| = \\x. |M|, and both type abstraction
and type application vanish.
"""
from __future__ import annotations

from dataclasses import dataclass

from .term import App, Lam, Pi, PrimJ, Sort, Term, Var, STAR


class EraseError(Exception):
    pass


@dataclass(frozen=True)
class UVar:
    index: int


@dataclass(frozen=True)
class ULam:
    body: "UTerm"


@dataclass(frozen=True)
class UApp:
    fun: "UTerm"
    arg: "UTerm"


UTerm = UVar | ULam | UApp


def _is_type(t: Term, type_binders: list[bool]) -> bool:
    # System F types are sorts, Pi/forall types and type variables.
    if type(t) in (Sort, Pi):
        return True
    if type(t) is Var:
        return t.index < len(type_binders) and type_binders[t.index]
    return False


def erase(t: Term) -> UTerm:
    """Delete annotations, type abstractions and type applications from a
    well-typed System F term.  Terms containing J are rejected: J has no
    uniform untyped meaning."""
    def go(t: Term, env: list[bool]) -> UTerm:
        tt = type(t)
        if tt is PrimJ:
            raise EraseError("J cannot be erased to an untyped term")
        if tt is Var:
            if t.index < len(env) and env[t.index]:
                raise EraseError("type variable in term position")
            return UVar(sum(1 for k in env[:t.index] if not k))
        if tt is Lam:
            if type(t.left) is Sort and t.left.name == STAR:
                return go(t.right, [True] + env)
            return ULam(go(t.right, [False] + env))
        if tt is App:
            if _is_type(t.right, env):
                return go(t.left, env)
            return UApp(go(t.left, env), go(t.right, env))
        raise EraseError(f"cannot erase {type(t).__name__} in term position")

    return go(t, [])


# a tiny untyped reduction toolkit for the simulation tests

def u_shift(t: UTerm, by: int, cutoff: int = 0) -> UTerm:
    if type(t) is UVar:
        return UVar(t.index + by) if t.index >= cutoff else t
    if type(t) is ULam:
        return ULam(u_shift(t.body, by, cutoff + 1))
    return UApp(u_shift(t.fun, by, cutoff), u_shift(t.arg, by, cutoff))


def u_substitute(body: UTerm, arg: UTerm, depth: int = 0) -> UTerm:
    if type(body) is UVar:
        if body.index == depth:
            return u_shift(arg, depth)
        return UVar(body.index - 1) if body.index > depth else body
    if type(body) is ULam:
        return ULam(u_substitute(body.body, arg, depth + 1))
    return UApp(u_substitute(body.fun, arg, depth),
                u_substitute(body.arg, arg, depth))


def u_redex_positions(t: UTerm, path: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
    out = []
    if type(t) is UApp:
        if type(t.fun) is ULam:
            out.append(path)
        out += u_redex_positions(t.fun, path + (0,))
        out += u_redex_positions(t.arg, path + (1,))
    elif type(t) is ULam:
        out += u_redex_positions(t.body, path + (0,))
    return out


def u_contract(t: UTerm, path: tuple[int, ...]) -> UTerm:
    if not path:
        assert type(t) is UApp and type(t.fun) is ULam
        return u_substitute(t.fun.body, t.arg)
    if type(t) is ULam:
        return ULam(u_contract(t.body, path[1:]))
    if path[0] == 0:
        return UApp(u_contract(t.fun, path[1:]), t.arg)
    return UApp(t.fun, u_contract(t.arg, path[1:]))


def u_one_step_reachable(a: UTerm, b: UTerm) -> bool:
    """True when b is a by zero steps or by one beta contraction."""
    if a == b:
        return True
    return any(u_contract(a, p) == b for p in u_redex_positions(a))


def u_pretty(t: UTerm, names: list[str] | None = None) -> str:
    names = names or []

    def fresh(k: int) -> str:
        base = "xyzuvw"[k % 6]
        n = k // 6
        return base + (str(n) if n else "")

    def go(t: UTerm, depth: int, par_app: bool, par_lam: bool) -> str:
        if type(t) is UVar:
            if t.index < depth:
                return fresh(depth - 1 - t.index)
            return f"f{t.index - depth}"
        if type(t) is ULam:
            s = f"\\{fresh(depth)}. {go(t.body, depth + 1, False, False)}"
            return f"({s})" if par_lam else s
        s = f"{go(t.fun, depth, False, True)} {go(t.arg, depth, True, True)}"
        return f"({s})" if par_app else s

    return go(t, 0, False, False)
