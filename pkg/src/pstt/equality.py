"""Judgemental equality decided by rewriting to a canonical form.

Orientation: beta rules and the pair/box eta rules contract; the commuting
conversions hoist every let-binder outward (out of gate arguments, pair
components, boxes and scrutinee positions) until all lets form one prefix,
whose independent neighbours are then sorted by the printed scrutinee.

The unit eta rule is oriented as an *expansion* ``z -> let * = z in *`` on
unit-typed variables.  Contraction is grade-sensitive (the let's context
shift must re-solve to zero) and chooses among several unit positions,
which destroys confluence; expansion is valid at every variable occurrence
(the variable axiom pins the grade to 0) and parks all unit material in
scrutinee position, where sorting canonicalizes it.  Typing the variables
requires the judgement's context, so bare-term normalization skips the
expansion and canonicalizes less.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator

from .chip import ChipSpec
from .surface import print_term
from .syntax import (
    Box,
    BoxIntro,
    Context,
    GateApp,
    Judgement,
    LetBox,
    LetPair,
    LetStar,
    Pair,
    Star,
    Tensor,
    TermExpr,
    TypeExpr,
    Unit,
    Var,
    alpha_eq,
    free_vars,
    fresh_name,
    freshen_binders,
    subst_parallel,
    substitute,
)

DEFAULT_BUDGET = 10_000

BETA_RULES = ("beta-unit", "beta-pair", "beta-box")
ETA_RULES = ("eta-unit", "eta-pair", "eta-box")
_KINDS = ("unit", "pair", "box")
HOIST_RULES = tuple(
    f"hoist-{k}-from-{pos}"
    for k in _KINDS
    for pos in ("gate", "pair-left", "pair-right", "box")
) + tuple(f"hoist-{k1}-from-{k2}-scrutinee" for k1 in _KINDS for k2 in _KINDS)
SWAP_RULES = tuple(f"swap-{k1}-{k2}" for k1 in _KINDS for k2 in _KINDS)
ALL_RULES = BETA_RULES + ETA_RULES + HOIST_RULES + SWAP_RULES


class BudgetExceeded(Exception):
    def __init__(self, partial: TermExpr, steps: int):
        super().__init__(f"normalization did not finish within {steps} steps")
        self.partial = partial
        self.steps = steps


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    result: TermExpr


@dataclass(frozen=True)
class NormalForm:
    term: TermExpr
    trace: tuple[RewriteStep, ...]

    @property
    def rules(self) -> tuple[str, ...]:
        return tuple(s.rule for s in self.trace)


# --------------------------------------------------------------- let spine


def _let_kind(t: TermExpr) -> str | None:
    if isinstance(t, LetStar):
        return "unit"
    if isinstance(t, LetPair):
        return "pair"
    if isinstance(t, LetBox):
        return "box"
    return None


def _let_parts(t: TermExpr) -> tuple[tuple[str, ...], TermExpr, TermExpr]:
    """(binders, scrutinee, body) of a let node."""
    match t:
        case LetStar(s, b):
            return (), s, b
        case LetPair(x, y, s, b):
            return (x, y), s, b
        case LetBox(_, x, s, b):
            return (x,), s, b
    raise AssertionError(t)


def _rebuild_let(t: TermExpr, scrutinee: TermExpr, body: TermExpr) -> TermExpr:
    match t:
        case LetStar():
            return LetStar(scrutinee, body)
        case LetPair(x, y, _, _):
            return LetPair(x, y, scrutinee, body)
        case LetBox(d, x, _, _):
            return LetBox(d, x, scrutinee, body)
    raise AssertionError(t)


def _rename_binders(t: TermExpr, avoid: set[str]) -> TermExpr:
    """Alpha-rename a let node's binders away from ``avoid``."""
    binders, s, b = _let_parts(t)
    clash = [x for x in binders if x in avoid]
    if not clash:
        return t
    taken = set(avoid) | set(free_vars(b)) | set(binders)
    ren: dict[str, TermExpr] = {}
    new = list(binders)
    for i, x in enumerate(binders):
        if x in avoid:
            nx = fresh_name(x, taken)
            taken.add(nx)
            ren[x] = Var(nx)
            new[i] = nx
    b2 = subst_parallel(b, ren)
    match t:
        case LetStar():
            return LetStar(s, b2)
        case LetPair(_, _, _, _):
            return LetPair(new[0], new[1], s, b2)
        case LetBox(d, _, _, _):
            return LetBox(d, new[0], s, b2)
    raise AssertionError(t)


# ------------------------------------------------------------ single steps


def _beta(t: TermExpr) -> tuple[str, TermExpr] | None:
    match t:
        case LetStar(Star(), body):
            return "beta-unit", body
        case LetPair(x, y, Pair(l, r), body):
            return "beta-pair", subst_parallel(body, {x: l, y: r})
        case LetBox(d, x, BoxIntro(d2, s), body) if d == d2:
            return "beta-box", substitute(body, x, s)
    return None


def _eta(t: TermExpr) -> tuple[str, TermExpr] | None:
    match t:
        case LetPair(x, y, s, Pair(Var(a), Var(b))) if a == x and b == y:
            return "eta-pair", s
        case LetBox(d, x, s, BoxIntro(d2, Var(a))) if d == d2 and a == x:
            return "eta-box", s
    return None


def _hoist(t: TermExpr) -> tuple[str, TermExpr] | None:
    match t:
        case Pair(inner, r) if _let_kind(inner):
            inner = _rename_binders(inner, set(free_vars(r)))
            _, s, b = _let_parts(inner)
            return f"hoist-{_let_kind(inner)}-from-pair-left", _rebuild_let(inner, s, Pair(b, r))
        case Pair(l, inner) if _let_kind(inner):
            inner = _rename_binders(inner, set(free_vars(l)))
            _, s, b = _let_parts(inner)
            return f"hoist-{_let_kind(inner)}-from-pair-right", _rebuild_let(inner, s, Pair(l, b))
        case GateApp(g, args):
            for i, a in enumerate(args):
                if _let_kind(a):
                    others: set[str] = set()
                    for j, other in enumerate(args):
                        if j != i:
                            others.update(free_vars(other))
                    a = _rename_binders(a, others)
                    _, s, b = _let_parts(a)
                    new_args = args[:i] + (b,) + args[i + 1 :]
                    return f"hoist-{_let_kind(a)}-from-gate", _rebuild_let(a, s, GateApp(g, new_args))
        case BoxIntro(d, inner) if _let_kind(inner):
            _, s, b = _let_parts(inner)
            return f"hoist-{_let_kind(inner)}-from-box", _rebuild_let(inner, s, BoxIntro(d, b))
        case LetStar(inner, u) | LetPair(_, _, inner, u) | LetBox(_, _, inner, u) if _let_kind(inner):
            outer_kind = _let_kind(t)
            inner = _rename_binders(inner, set(free_vars(u)))
            _, s1, b1 = _let_parts(inner)
            rebuilt_outer = _rebuild_let(t, b1, u)
            return (
                f"hoist-{_let_kind(inner)}-from-{outer_kind}-scrutinee",
                _rebuild_let(inner, s1, rebuilt_outer),
            )
    return None


def swap_adjacent(t: TermExpr) -> TermExpr | None:
    """Swap a let with the let directly under it; None if they depend."""
    k1 = _let_kind(t)
    if k1 is None:
        return None
    binders1, s1, body = _let_parts(t)
    if _let_kind(body) is None:
        return None
    if set(binders1) & set(free_vars(_let_parts(body)[1])):
        return None  # inner scrutinee uses an outer binder
    inner = _rename_binders(body, set(free_vars(s1)))
    _, s2, u = _let_parts(inner)
    return _rebuild_let(inner, s2, _rebuild_let(t, s1, u))


def _spine(t: TermExpr) -> tuple[list[TermExpr], TermExpr]:
    """Maximal chain of let nodes from the root, plus the core body."""
    lets: list[TermExpr] = []
    while _let_kind(t):
        lets.append(t)
        t = _let_parts(t)[2]
    return lets, t


def _spine_keys(lets: list[TermExpr]) -> list[str]:
    """Alpha-stable sort keys for a let prefix.

    A scrutinee variable bound by an earlier spine let is rendered as a
    token built from that let's own key and the binder slot, so renaming
    binders cannot change the ordering.
    """
    owner: dict[str, tuple[int, int]] = {}
    for i, node in enumerate(lets):
        for slot, b in enumerate(_let_parts(node)[0]):
            owner[b] = (i, slot)
    keys: dict[int, str] = {}

    def key_of(i: int) -> str:
        if i in keys:
            return keys[i]
        node = lets[i]
        _, scrut, _ = _let_parts(node)
        ren = {
            b: Var(f"<{key_of(owner[b][0])}#{owner[b][1]}>")
            for b in free_vars(scrut)
            if b in owner
        }
        rendered = print_term(subst_parallel(scrut, ren)) if ren else print_term(scrut)
        match node:
            case LetStar():
                prefix = "unit:"
            case LetPair(_, _, _, _):
                prefix = "pair:"
            case LetBox(d, _, _, _):
                prefix = f"box[{d}]:"
        keys[i] = prefix + rendered
        return keys[i]

    return [key_of(i) for i in range(len(lets))]


def _sorted_spine_order(lets: list[TermExpr]) -> list[int]:
    """Canonical order: greedy topological sort by alpha-stable key."""
    n = len(lets)
    deps: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        binders_i = set(_let_parts(lets[i])[0])
        if not binders_i:
            continue
        for j in range(i + 1, n):
            if binders_i & set(free_vars(_let_parts(lets[j])[1])):
                deps[j].add(i)
    emitted: set[int] = set()
    order: list[int] = []
    keys = [(k, i) for i, k in enumerate(_spine_keys(lets))]
    while len(order) < n:
        ready = [i for i in range(n) if i not in emitted and deps[i] <= emitted]
        best = min(ready, key=lambda i: keys[i])
        order.append(best)
        emitted.add(best)
    return order


def _swap_spine_at(t: TermExpr, index: int) -> TermExpr | None:
    """Swap spine positions ``index`` and ``index + 1``."""

    def rebuild(t: TermExpr, depth: int) -> TermExpr | None:
        if depth == index:
            return swap_adjacent(t)
        _, s, b = _let_parts(t)
        inner = rebuild(b, depth + 1)
        return None if inner is None else _rebuild_let(t, s, inner)

    return rebuild(t, 0)


def _sort_step(t: TermExpr) -> tuple[str, TermExpr] | None:
    """One adjacent swap moving the spine toward its canonical order."""
    lets, _ = _spine(t)
    if len(lets) < 2:
        return None
    target = _sorted_spine_order(lets)
    if target == list(range(len(lets))):
        return None
    # First slot whose canonical occupant differs; bubble it up one place.
    pos = next(i for i, want in enumerate(target) if want != i)
    want = target[pos]
    out = _swap_spine_at(t, want - 1)
    if out is None:
        return None
    k1 = _let_kind(lets[want - 1])
    k2 = _let_kind(lets[want])
    return f"swap-{k1}-{k2}", out


def _count_pattern(t: TermExpr, pattern: TermExpr, names: set[str]) -> tuple[int, int]:
    """(pattern occurrences, stray occurrences of the names) in ``t``.

    Rebinding one of the names counts as a stray so the caller backs off;
    normalize works on freshened terms where this cannot happen.
    """
    if t == pattern:
        return 1, 0
    match t:
        case Var(n):
            return 0, 1 if n in names else 0
        case Star():
            return 0, 0
        case LetStar(s, b) | LetPair(_, _, s, b) | LetBox(_, _, s, b):
            binders = _let_parts(t)[0]
            shadow = 2 if set(binders) & names else 0
            ph, sh = _count_pattern(s, pattern, names)
            ph2, sh2 = _count_pattern(b, pattern, names)
            return ph + ph2, sh + sh2 + shadow
        case GateApp(_, args):
            ph = sh = 0
            for a in args:
                p2, s2 = _count_pattern(a, pattern, names)
                ph += p2
                sh += s2
            return ph, sh
        case Pair(l, r):
            ph, sh = _count_pattern(l, pattern, names)
            ph2, sh2 = _count_pattern(r, pattern, names)
            return ph + ph2, sh + sh2
        case BoxIntro(_, b):
            return _count_pattern(b, pattern, names)
    raise AssertionError(t)


def _replace_pattern(t: TermExpr, pattern: TermExpr, replacement: TermExpr) -> TermExpr:
    if t == pattern:
        return replacement
    match t:
        case Var() | Star():
            return t
        case LetStar(s, b):
            return LetStar(_replace_pattern(s, pattern, replacement), _replace_pattern(b, pattern, replacement))
        case LetPair(x, y, s, b):
            return LetPair(x, y, _replace_pattern(s, pattern, replacement), _replace_pattern(b, pattern, replacement))
        case LetBox(d, x, s, b):
            return LetBox(d, x, _replace_pattern(s, pattern, replacement), _replace_pattern(b, pattern, replacement))
        case GateApp(g, args):
            return GateApp(g, tuple(_replace_pattern(a, pattern, replacement) for a in args))
        case Pair(l, r):
            return Pair(_replace_pattern(l, pattern, replacement), _replace_pattern(r, pattern, replacement))
        case BoxIntro(d, b):
            return BoxIntro(d, _replace_pattern(b, pattern, replacement))
    raise AssertionError(t)


def _eta_spine(
    t: TermExpr, recheck: Callable[[TermExpr], bool] | None
) -> tuple[str, TermExpr] | None:
    """Pair/box eta across the let prefix.

    Two shapes are recognized for a prefix let ``L = let (x,y) = t in ...``
    (and the box analogue):

    * deep exact repack: the binders occur exactly once, together, as the
      literal repack pattern ``(x, y)`` / ``box[d] x`` anywhere below; the
      rewrite pushes L to that position (reverse commuting conversions) and
      contracts.  Valid unconditionally: the pattern pins the binder grades
      to each other / leaves the box binder grade free.
    * parked repack at the core: unit-typed binders may sit parked as
      ``let * = x in ...`` with ``*`` in their core slot.  Un-parking fixes
      the parking shifts to the slot's grade, so this form is taken only
      when the contracted term still checks (``recheck``).
    """
    lets, core = _spine(t)
    for i, node in enumerate(lets):
        if not isinstance(node, (LetPair, LetBox)):
            continue
        binders, scrut, _ = _let_parts(node)
        names = set(binders)

        # Deep exact repack over the remainder of the term.
        match node:
            case LetPair(x, y, _, _):
                pattern: TermExpr = Pair(Var(x), Var(y))
                rule = "eta-pair"
            case LetBox(d, x, _, _):
                pattern = BoxIntro(d, Var(x))
                rule = "eta-box"
        remainder: TermExpr = core
        for j in range(len(lets) - 1, i, -1):
            keep = lets[j]
            remainder = _rebuild_let(keep, _let_parts(keep)[1], remainder)
        hits, strays = _count_pattern(remainder, pattern, names)
        if hits == 1 and strays == 0:
            new = _replace_pattern(remainder, pattern, scrut)
            for j in range(i - 1, -1, -1):
                keep = lets[j]
                new = _rebuild_let(keep, _let_parts(keep)[1], new)
            return rule, new

        # Parked repack at the core position.
        if recheck is None:
            continue
        parked: dict[str, int] = {}
        blocked = False
        for j in range(i + 1, len(lets)):
            inner = lets[j]
            _, sc, _ = _let_parts(inner)
            if not names & set(free_vars(sc)):
                continue
            if (
                isinstance(inner, LetStar)
                and isinstance(sc, Var)
                and sc.name in names
                and sc.name not in parked
            ):
                parked[sc.name] = j
            else:
                blocked = True
                break
        if blocked or not parked:
            continue

        def slot_ok(slot: TermExpr, name: str) -> bool:
            if name in parked:
                return slot == Star()
            return slot == Var(name)

        match node, core:
            case (LetPair(x, y, _, _), Pair(cl, cr)) if slot_ok(cl, x) and slot_ok(cr, y):
                pass
            case (LetBox(d, x, _, _), BoxIntro(d2, inner_slot)) if d == d2 and slot_ok(
                inner_slot, x
            ):
                pass
            case _:
                continue
        drop = {i} | set(parked.values())
        new = scrut
        for j in range(len(lets) - 1, -1, -1):
            if j in drop:
                continue
            keep = lets[j]
            new = _rebuild_let(keep, _let_parts(keep)[1], new)
        if recheck(new):
            return rule, new
    return None


def _rewrite_anywhere(
    t: TermExpr, local: Callable[[TermExpr], tuple[str, TermExpr] | None]
) -> Iterator[tuple[str, TermExpr]]:
    """All single applications of ``local``, outermost first."""
    hit = local(t)
    if hit is not None:
        yield hit[0], hit[1]
    match t:
        case Var() | Star():
            return
        case LetStar(s, b):
            for r, s2 in _rewrite_anywhere(s, local):
                yield r, LetStar(s2, b)
            for r, b2 in _rewrite_anywhere(b, local):
                yield r, LetStar(s, b2)
        case GateApp(g, args):
            for i, a in enumerate(args):
                for r, a2 in _rewrite_anywhere(a, local):
                    yield r, GateApp(g, args[:i] + (a2,) + args[i + 1 :])
        case Pair(l, rgt):
            for r, l2 in _rewrite_anywhere(l, local):
                yield r, Pair(l2, rgt)
            for r, r2 in _rewrite_anywhere(rgt, local):
                yield r, Pair(l, r2)
        case LetPair(x, y, s, b):
            for r, s2 in _rewrite_anywhere(s, local):
                yield r, LetPair(x, y, s2, b)
            for r, b2 in _rewrite_anywhere(b, local):
                yield r, LetPair(x, y, s, b2)
        case BoxIntro(d, b):
            for r, b2 in _rewrite_anywhere(b, local):
                yield r, BoxIntro(d, b2)
        case LetBox(d, x, s, b):
            for r, s2 in _rewrite_anywhere(s, local):
                yield r, LetBox(d, x, s2, b)
            for r, b2 in _rewrite_anywhere(b, local):
                yield r, LetBox(d, x, s, b2)


# -------------------------------------------------- unit-variable expansion


def _expand_unit_var(
    t: TermExpr, env: dict[str, TypeExpr], chip: ChipSpec
) -> TermExpr | None:
    """Expand the leftmost unit-typed variable not already a let-* scrutinee.

    The variable axiom types every variable at grade 0 in its own node, so
    this instance of the unit eta rule is valid in any enclosing judgement.
    """

    def type_of(t: TermExpr, env: dict[str, TypeExpr]) -> TypeExpr | None:
        match t:
            case Var(name):
                return env.get(name)
            case Star():
                return Unit()
            case LetStar(_, b):
                return type_of(b, env)
            case GateApp(g, _):
                decl = chip.find_gate(g)
                if decl is None:
                    return None
                from .syntax import Qubit, tensor_of

                return tensor_of([Qubit(q) for q in decl.qubits])
            case Pair(l, r):
                lt, rt = type_of(l, env), type_of(r, env)
                return Tensor(lt, rt) if lt is not None and rt is not None else None
            case LetPair(x, y, s, b):
                sty = type_of(s, env)
                if not isinstance(sty, Tensor):
                    return None
                return type_of(b, {**env, x: sty.left, y: sty.right})
            case BoxIntro(d, b):
                bt = type_of(b, env)
                return Box(d, bt) if bt is not None else None
            case LetBox(_, x, s, b):
                sty = type_of(s, env)
                if not isinstance(sty, Box):
                    return None
                return type_of(b, {**env, x: sty.body})
        return None

    def go(t: TermExpr, env: dict[str, TypeExpr], expandable: bool) -> TermExpr | None:
        match t:
            case Var(name):
                if expandable and env.get(name) == Unit():
                    return LetStar(t, Star())
                return None
            case Star():
                return None
            case LetStar(s, b):
                # A variable directly in scrutinee position is already parked.
                if not isinstance(s, Var):
                    s2 = go(s, env, True)
                    if s2 is not None:
                        return LetStar(s2, b)
                b2 = go(b, env, True)
                return LetStar(s, b2) if b2 is not None else None
            case GateApp(g, args):
                for i, a in enumerate(args):
                    a2 = go(a, env, True)
                    if a2 is not None:
                        return GateApp(g, args[:i] + (a2,) + args[i + 1 :])
                return None
            case Pair(l, r):
                l2 = go(l, env, True)
                if l2 is not None:
                    return Pair(l2, r)
                r2 = go(r, env, True)
                return Pair(l, r2) if r2 is not None else None
            case LetPair(x, y, s, b):
                s2 = go(s, env, True)
                if s2 is not None:
                    return LetPair(x, y, s2, b)
                sty = type_of(s, env)
                benv = (
                    {**env, x: sty.left, y: sty.right}
                    if isinstance(sty, Tensor)
                    else env
                )
                b2 = go(b, benv, True)
                return LetPair(x, y, s, b2) if b2 is not None else None
            case BoxIntro(d, b):
                b2 = go(b, env, True)
                return BoxIntro(d, b2) if b2 is not None else None
            case LetBox(d, x, s, b):
                s2 = go(s, env, True)
                if s2 is not None:
                    return LetBox(d, x, s2, b)
                sty = type_of(s, env)
                benv = {**env, x: sty.body} if isinstance(sty, Box) else env
                b2 = go(b, benv, True)
                return LetBox(d, x, s, b2) if b2 is not None else None
        raise AssertionError(t)

    return go(t, env, True)


# ------------------------------------------------------------- normalize


def _find_step(
    t: TermExpr,
    env: dict[str, TypeExpr] | None,
    chip: ChipSpec | None,
    recheck: Callable[[TermExpr], bool] | None,
) -> tuple[str, TermExpr] | None:
    for rule, out in _rewrite_anywhere(t, _beta):
        return rule, out
    for rule, out in _rewrite_anywhere(t, _eta):
        return rule, out
    hit = _eta_spine(t, recheck)
    if hit is not None:
        return hit
    if env is not None and chip is not None:
        expanded = _expand_unit_var(t, env, chip)
        if expanded is not None:
            return "eta-unit", expanded
    for rule, out in _rewrite_anywhere(t, _hoist):
        return rule, out
    return _sort_step(t)


def normalize(
    term: TermExpr,
    *,
    budget: int = DEFAULT_BUDGET,
    context: Context | None = None,
    result_type: TypeExpr | None = None,
    chip: ChipSpec | None = None,
) -> NormalForm:
    """Rewrite to the canonical form; raises BudgetExceeded if it runs long.

    Pass the judgement's context, result type and chip to enable the
    grade-aware rules (unit-variable expansion and parked eta contraction);
    without them those rules stay off and fewer equalities are recognized.
    """
    env = {e.name: e.type for e in context} if context is not None else None
    recheck = None
    if context is not None and result_type is not None and chip is not None:
        from .typecheck import TypingError, check

        def recheck(t2: TermExpr) -> bool:
            try:
                check(Judgement(context, t2, result_type), chip)
                return True
            except TypingError:
                return False

    t = freshen_binders(term)
    trace: list[RewriteStep] = []
    for _ in range(budget):
        found = _find_step(t, env, chip, recheck)
        if found is None:
            return NormalForm(t, tuple(trace))
        rule, t = found
        trace.append(RewriteStep(rule, t))
    if _find_step(t, env, chip, recheck) is None:
        return NormalForm(t, tuple(trace))
    raise BudgetExceeded(t, budget)


# ---------------------------------------------------------------- verdict


class EqKind(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL_NORMAL_FORM = "NotEqualByNormalForm"
    NOT_EQUAL_SEMANTICS = "NotEqualBySemantics"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class EqVerdict:
    """Outcome of an equality query.

    NOT_EQUAL_NORMAL_FORM is reserved: a normal-form mismatch alone never
    proves inequality (the oriented system is not known complete), so the
    engine reports semantically refuted pairs as NOT_EQUAL_SEMANTICS and
    everything else unresolved as UNKNOWN with a reason.
    """

    kind: EqKind
    trace: tuple[tuple[str, ...], tuple[str, ...]] = ((), ())
    witness: object = None
    reason: str = ""

    @property
    def is_equal(self) -> bool:
        return self.kind is EqKind.EQUAL


def judgementally_equal(
    ctx: Context,
    s: TermExpr,
    t: TermExpr,
    type_: TypeExpr,
    chip: ChipSpec,
    *,
    budget: int = DEFAULT_BUDGET,
) -> EqVerdict:
    """Decide ``ctx |- s = t : type``; both sides must already check."""
    from .schedule import MissingCalibration
    from .semantics import PulseModel, interpret
    from .typecheck import check

    ev_s = check(Judgement(ctx, s, type_), chip)
    ev_t = check(Judgement(ctx, t, type_), chip)

    try:
        nf_s = normalize(s, budget=budget, context=ctx, result_type=type_, chip=chip)
        nf_t = normalize(t, budget=budget, context=ctx, result_type=type_, chip=chip)
    except BudgetExceeded:
        return EqVerdict(EqKind.UNKNOWN, reason="budget exhausted")

    traces = (nf_s.rules, nf_t.rules)
    if alpha_eq(nf_s.term, nf_t.term):
        return EqVerdict(EqKind.EQUAL, trace=traces)

    model = PulseModel(chip)
    try:
        f = interpret(Judgement(ctx, s, type_), ev_s, model)
        g = interpret(Judgement(ctx, t, type_), ev_t, model)
    except MissingCalibration:
        return EqVerdict(EqKind.UNKNOWN, trace=traces, reason="semantics unavailable")
    if not model.mor_eq(f, g):
        return EqVerdict(EqKind.NOT_EQUAL_SEMANTICS, trace=traces, witness=(f, g))
    return EqVerdict(
        EqKind.UNKNOWN, trace=traces, reason="normal forms differ, semantics agree"
    )
