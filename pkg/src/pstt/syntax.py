"""Term, type and context syntax for the pulse-schedule language.

Terms form a linear calculus: unit, tensor pairs, gate applications, and a
time-shift modality indexed by an integer grade (nanoseconds).  Contexts
annotate every variable with a grade.  Everything here is immutable value
data; binding, capture-avoiding substitution and alpha-equivalence live in
this module so every other layer can rely on them.
"""

from __future__ import annotations

from dataclasses import dataclass

Grade = int


# ------------------------------------------------------------------ types


@dataclass(frozen=True)
class Unit:
    """The unit type, written ``1``."""


@dataclass(frozen=True)
class Qubit:
    name: str


@dataclass(frozen=True)
class Tensor:
    left: "TypeExpr"
    right: "TypeExpr"


@dataclass(frozen=True)
class Box:
    """Time-shifted type ``[d] A``: an A displaced d nanoseconds."""

    grade: Grade
    body: "TypeExpr"


TypeExpr = Unit | Qubit | Tensor | Box


def tensor_of(types: list[TypeExpr] | tuple[TypeExpr, ...]) -> TypeExpr:
    """Right-nested tensor of one or more types."""
    if not types:
        raise ValueError("tensor_of needs at least one type")
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = Tensor(ty, result)
    return result


def qubits_of_type(ty: TypeExpr) -> list[str]:
    """Qubit labels occurring in a type, left to right (with duplicates)."""
    match ty:
        case Unit():
            return []
        case Qubit(name):
            return [name]
        case Tensor(left, right):
            return qubits_of_type(left) + qubits_of_type(right)
        case Box(_, body):
            return qubits_of_type(body)
    raise TypeError(f"not a type: {ty!r}")


# ------------------------------------------------------------------ terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Star:
    """The unit value ``*``."""


@dataclass(frozen=True)
class LetStar:
    scrutinee: "TermExpr"
    body: "TermExpr"


@dataclass(frozen=True)
class GateApp:
    gate: str
    args: tuple["TermExpr", ...]


@dataclass(frozen=True)
class Pair:
    left: "TermExpr"
    right: "TermExpr"


@dataclass(frozen=True)
class LetPair:
    x: str
    y: str
    scrutinee: "TermExpr"
    body: "TermExpr"

    def __post_init__(self) -> None:
        if self.x == self.y:
            raise ValueError(f"pair binders must be distinct, got {self.x!r} twice")


@dataclass(frozen=True)
class BoxIntro:
    grade: Grade
    body: "TermExpr"


@dataclass(frozen=True)
class LetBox:
    grade: Grade
    x: str
    scrutinee: "TermExpr"
    body: "TermExpr"


TermExpr = Var | Star | LetStar | GateApp | Pair | LetPair | BoxIntro | LetBox


# ------------------------------------------------------------- contexts


@dataclass(frozen=True)
class CtxEntry:
    name: str
    grade: Grade
    type: TypeExpr


Context = tuple[CtxEntry, ...]


def make_context(entries: list[tuple[str, Grade, TypeExpr]] | Context) -> Context:
    """Build a context, checking that variable names are pairwise distinct."""
    ctx = tuple(
        e if isinstance(e, CtxEntry) else CtxEntry(e[0], e[1], e[2]) for e in entries
    )
    names = [e.name for e in ctx]
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise ValueError(f"duplicate context variable {dup!r}")
    return ctx


def shift_context(d: Grade, ctx: Context) -> Context:
    """Increase every grade in the context by ``d``; order and types kept."""
    return tuple(CtxEntry(e.name, e.grade + d, e.type) for e in ctx)


@dataclass(frozen=True)
class Judgement:
    ctx: Context
    term: TermExpr
    type: TypeExpr


# ----------------------------------------------------- binding machinery


def free_occurrences(t: TermExpr) -> list[str]:
    """Free variable occurrences of ``t`` in left-to-right order.

    Repeated uses show up repeatedly; linearity checking counts on that.
    """
    match t:
        case Var(name):
            return [name]
        case Star():
            return []
        case LetStar(s, b):
            return free_occurrences(s) + free_occurrences(b)
        case GateApp(_, args):
            out: list[str] = []
            for a in args:
                out.extend(free_occurrences(a))
            return out
        case Pair(l, r):
            return free_occurrences(l) + free_occurrences(r)
        case LetPair(x, y, s, b):
            return free_occurrences(s) + [
                n for n in free_occurrences(b) if n != x and n != y
            ]
        case BoxIntro(_, b):
            return free_occurrences(b)
        case LetBox(_, x, s, b):
            return free_occurrences(s) + [n for n in free_occurrences(b) if n != x]
    raise TypeError(f"not a term: {t!r}")


def free_vars(t: TermExpr) -> list[str]:
    """Free variable names in first-occurrence order, each listed once."""
    seen: dict[str, None] = {}
    for name in free_occurrences(t):
        seen.setdefault(name)
    return list(seen)


def bound_names(t: TermExpr) -> set[str]:
    match t:
        case Var() | Star():
            return set()
        case LetStar(s, b):
            return bound_names(s) | bound_names(b)
        case GateApp(_, args):
            out: set[str] = set()
            for a in args:
                out |= bound_names(a)
            return out
        case Pair(l, r):
            return bound_names(l) | bound_names(r)
        case LetPair(x, y, s, b):
            return {x, y} | bound_names(s) | bound_names(b)
        case BoxIntro(_, b):
            return bound_names(b)
        case LetBox(_, x, s, b):
            return {x} | bound_names(s) | bound_names(b)
    raise TypeError(f"not a term: {t!r}")


def fresh_name(base: str, avoid: set[str]) -> str:
    """Deterministic fresh name: suffix counter on the original name."""
    if base not in avoid:
        return base
    stem = base.split("_")[0] or base
    i = 1
    while f"{stem}_{i}" in avoid:
        i += 1
    return f"{stem}_{i}"


def subst_parallel(t: TermExpr, mapping: dict[str, TermExpr]) -> TermExpr:
    """Simultaneous capture-avoiding substitution of free variables."""
    if not mapping:
        return t

    def avoid_for(sub: dict[str, TermExpr]) -> set[str]:
        out: set[str] = set()
        for v in sub.values():
            out.update(free_vars(v))
        return out

    def go(t: TermExpr, sub: dict[str, TermExpr]) -> TermExpr:
        if not sub:
            return t
        match t:
            case Var(name):
                return sub.get(name, t)
            case Star():
                return t
            case LetStar(s, b):
                return LetStar(go(s, sub), go(b, sub))
            case GateApp(g, args):
                return GateApp(g, tuple(go(a, sub) for a in args))
            case Pair(l, r):
                return Pair(go(l, sub), go(r, sub))
            case LetPair(x, y, s, b):
                s2 = go(s, sub)
                body_sub = {k: v for k, v in sub.items() if k != x and k != y}
                danger = avoid_for(body_sub)
                # A fresh binder must not collide with pending substitution
                # keys either, or the later pass would rewrite it.
                taken = danger | set(body_sub) | set(free_vars(b)) | {x, y}
                nx, ny = x, y
                if x in danger:
                    nx = fresh_name(x, taken)
                    taken.add(nx)
                if y in danger:
                    ny = fresh_name(y, taken)
                if (nx, ny) != (x, y):
                    ren: dict[str, TermExpr] = {}
                    if nx != x:
                        ren[x] = Var(nx)
                    if ny != y:
                        ren[y] = Var(ny)
                    b = go(b, ren)
                return LetPair(nx, ny, s2, go(b, body_sub))
            case BoxIntro(d, b):
                return BoxIntro(d, go(b, sub))
            case LetBox(d, x, s, b):
                s2 = go(s, sub)
                body_sub = {k: v for k, v in sub.items() if k != x}
                danger = avoid_for(body_sub)
                nx = x
                if x in danger:
                    nx = fresh_name(
                        x, danger | set(body_sub) | set(free_vars(b)) | {x}
                    )
                    b = go(b, {x: Var(nx)})
                return LetBox(d, nx, s2, go(b, body_sub))
        raise TypeError(f"not a term: {t!r}")

    return go(t, dict(mapping))


def substitute(t: TermExpr, x: str, s: TermExpr) -> TermExpr:
    """Replace the free occurrence of ``x`` in ``t`` by ``s``, capture-free."""
    return subst_parallel(t, {x: s})


def alpha_eq(s: TermExpr, t: TermExpr) -> bool:
    """Structural equality up to consistent renaming of bound variables."""

    def go(s: TermExpr, t: TermExpr, env_s: dict[str, int], env_t: dict[str, int], depth: int) -> bool:
        match s, t:
            case Var(a), Var(b):
                da, db = env_s.get(a), env_t.get(b)
                if da is None and db is None:
                    return a == b
                return da == db
            case Star(), Star():
                return True
            case LetStar(s1, b1), LetStar(s2, b2):
                return go(s1, s2, env_s, env_t, depth) and go(b1, b2, env_s, env_t, depth)
            case GateApp(g1, a1), GateApp(g2, a2):
                return (
                    g1 == g2
                    and len(a1) == len(a2)
                    and all(go(u, v, env_s, env_t, depth) for u, v in zip(a1, a2))
                )
            case Pair(l1, r1), Pair(l2, r2):
                return go(l1, l2, env_s, env_t, depth) and go(r1, r2, env_s, env_t, depth)
            case LetPair(x1, y1, s1, b1), LetPair(x2, y2, s2, b2):
                if not go(s1, s2, env_s, env_t, depth):
                    return False
                es = {**env_s, x1: depth, y1: depth + 1}
                et = {**env_t, x2: depth, y2: depth + 1}
                return go(b1, b2, es, et, depth + 2)
            case BoxIntro(d1, b1), BoxIntro(d2, b2):
                return d1 == d2 and go(b1, b2, env_s, env_t, depth)
            case LetBox(d1, x1, s1, b1), LetBox(d2, x2, s2, b2):
                if d1 != d2 or not go(s1, s2, env_s, env_t, depth):
                    return False
                return go(b1, b2, {**env_s, x1: depth}, {**env_t, x2: depth}, depth + 1)
            case _:
                return False

    return go(s, t, {}, {}, 0)


def alpha_key(t: TermExpr) -> str:
    """Canonical string key: alpha-equivalent terms get identical keys."""

    def go(t: TermExpr, env: dict[str, int], depth: int) -> str:
        match t:
            case Var(name):
                i = env.get(name)
                return f"!{i}" if i is not None else name
            case Star():
                return "*"
            case LetStar(s, b):
                return f"(ls {go(s, env, depth)} {go(b, env, depth)})"
            case GateApp(g, args):
                inner = " ".join(go(a, env, depth) for a in args)
                return f"({g} {inner})"
            case Pair(l, r):
                return f"(p {go(l, env, depth)} {go(r, env, depth)})"
            case LetPair(x, y, s, b):
                benv = {**env, x: depth, y: depth + 1}
                return f"(lp {go(s, env, depth)} {go(b, benv, depth + 2)})"
            case BoxIntro(d, b):
                return f"(b {d} {go(b, env, depth)})"
            case LetBox(d, x, s, b):
                benv = {**env, x: depth}
                return f"(lb {d} {go(s, env, depth)} {go(b, benv, depth + 1)})"
        raise TypeError(f"not a term: {t!r}")

    return go(t, {}, 0)


def freshen_binders(t: TermExpr, extra_avoid: set[str] | None = None) -> TermExpr:
    """Rename binders so all binders and free variables are pairwise distinct.

    Deterministic; a term already satisfying the convention is returned
    unchanged shape-for-shape.
    """
    taken = set(free_vars(t)) | (extra_avoid or set())

    def go(t: TermExpr) -> TermExpr:
        match t:
            case Var() | Star():
                return t
            case LetStar(s, b):
                return LetStar(go(s), go(b))
            case GateApp(g, args):
                return GateApp(g, tuple(go(a) for a in args))
            case Pair(l, r):
                return Pair(go(l), go(r))
            case LetPair(x, y, s, b):
                s2 = go(s)
                nx = fresh_name(x, taken)
                taken.add(nx)
                ny = fresh_name(y, taken)
                taken.add(ny)
                ren: dict[str, TermExpr] = {}
                if nx != x:
                    ren[x] = Var(nx)
                if ny != y:
                    ren[y] = Var(ny)
                return LetPair(nx, ny, s2, go(subst_parallel(b, ren)))
            case BoxIntro(d, b):
                return BoxIntro(d, go(b))
            case LetBox(d, x, s, b):
                s2 = go(s)
                nx = fresh_name(x, taken)
                taken.add(nx)
                b2 = substitute(b, x, Var(nx)) if nx != x else b
                return LetBox(d, nx, s2, go(b2))
        raise TypeError(f"not a term: {t!r}")

    return go(t)


def term_size(t: TermExpr) -> int:
    """Number of constructors in the term."""
    match t:
        case Var() | Star():
            return 1
        case LetStar(s, b) | LetPair(_, _, s, b) | LetBox(_, _, s, b):
            return 1 + term_size(s) + term_size(b)
        case GateApp(_, args):
            return 1 + sum(term_size(a) for a in args)
        case Pair(l, r):
            return 1 + term_size(l) + term_size(r)
        case BoxIntro(_, b):
            return 1 + term_size(b)
    raise TypeError(f"not a term: {t!r}")
