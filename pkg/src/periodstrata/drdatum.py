"""De Rham data ``(omega, delta)``: validation, classes, dimensions, order, covers.

``omega`` maps integer weights to positive multiplicities.  ``delta`` is
stored only on the window ``L <= i < j <= U + 1`` where ``L``/``U`` are the
least/greatest weights; any other pair is read off by clamping both indices
into that window.  Only nonzero ``delta`` values are stored, so equal data
have equal representations.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

__all__ = [
    "DeRhamDatum",
    "Violation",
    "DatumError",
    "Comparison",
    "validate",
    "classify",
    "associated",
    "dimensions",
    "htd_range",
    "twist",
    "truncate",
    "compare",
    "min_covers",
    "parse_datum",
    "ZERO_DATUM",
]


class Violation(NamedTuple):
    condition: str  # "i", "ii", "iii", "iv", "extension", "type"
    witness: tuple
    message: str


class DatumError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(v.message for v in violations))


@dataclass(frozen=True, order=True)
class DeRhamDatum:
    omega: tuple[tuple[int, int], ...] = ()
    delta: tuple[tuple[int, int, int], ...] = ()

    @cached_property
    def _omega(self) -> dict:
        return dict(self.omega)

    @cached_property
    def _delta(self) -> dict:
        return {(i, j): d for i, j, d in self.delta}

    @property
    def is_zero(self) -> bool:
        return not self.omega

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.omega)

    @property
    def L(self) -> int | None:
        return self.omega[0][0] if self.omega else None

    @property
    def U(self) -> int | None:
        return self.omega[-1][0] if self.omega else None

    def weight_mult(self, w: int) -> int:
        return self._omega.get(w, 0)

    def clamp(self, k: int) -> int:
        return min(max(k, self.L), self.U + 1)

    def delta_at(self, k: int, l: int) -> int:
        """Delta at any integer pair via the clamp rule."""
        if not self.omega or k >= l:
            return 0
        return self._delta.get((self.clamp(k), self.clamp(l)), 0)

    def window_pairs(self) -> list[tuple[int, int]]:
        if not self.omega:
            return []
        lo, hi = self.L, self.U + 1
        return [(i, j) for i in range(lo, hi) for j in range(i + 1, hi + 1)]

    def to_literal(self) -> str:
        om = ", ".join(f"{w}: {m}" for w, m in self.omega)
        de = ", ".join(f"({i}, {j}): {d}" for i, j, d in self.delta)
        return f"omega: {{{om}}}; delta: {{{de}}}"

    def __str__(self):
        return self.to_literal()

    @classmethod
    def from_maps(cls, omega: Mapping[int, int], delta: Mapping[tuple[int, int], int]) -> "DeRhamDatum":
        """Validated constructor; raises :class:`DatumError` on violations."""
        result = validate(omega, delta)
        if isinstance(result, DeRhamDatum):
            return result
        raise DatumError(result)

    @classmethod
    def from_functions(cls, omega: Mapping[int, int], delta_fn) -> "DeRhamDatum":
        """Build from ``omega`` and a callable giving delta on the window."""
        om = {w: m for w, m in omega.items() if m}
        if not om:
            return ZERO_DATUM
        lo, hi = min(om), max(om) + 1
        de = {(i, j): delta_fn(i, j) for i in range(lo, hi) for j in range(i + 1, hi + 1)}
        return cls.from_maps(om, de)


ZERO_DATUM = DeRhamDatum()


def _canonical(omega: dict, delta: dict) -> DeRhamDatum:
    om = tuple(sorted((w, m) for w, m in omega.items() if m))
    if not om:
        return ZERO_DATUM
    lo, hi = om[0][0], om[-1][0] + 1
    de = tuple(sorted((i, j, d) for (i, j), d in delta.items()
                      if d and lo <= i < j <= hi))
    return DeRhamDatum(om, de)


def _window_violations(om: dict, get) -> list[Violation]:
    """Conditions (iii) and (iv) on the window of ``om`` with accessor ``get``."""
    out = []
    lo, hi = min(om), max(om) + 1
    for i in range(lo, hi):
        w = om.get(i, 0)
        d = get(i, i + 1)
        if not (min(w, 1) <= d <= w):
            out.append(Violation("iii", (i,),
                                 f"condition (iii) fails at i={i}: need {min(w, 1)} <= Delta({i},{i + 1})={d} <= Omega({i})={w}"))
    for i in range(lo, hi + 1):
        for j in range(i + 1, hi + 1):
            for k in range(j + 1, hi + 1):
                a, b, c = get(i, j), get(j, k), get(i, k)
                if not (max(a, b) <= c <= a + b):
                    out.append(Violation("iv", (i, j, k),
                                         f"condition (iv) fails at (i,j,k)=({i},{j},{k}): "
                                         f"max({a},{b}) <= {c} <= {a}+{b}"))
    return out


def validate(omega: Mapping, delta: Mapping) -> DeRhamDatum | list[Violation]:
    """Check conditions (i)-(iv) and the clamp rule; return the datum or the violations."""
    violations: list[Violation] = []
    om: dict[int, int] = {}
    for w, m in dict(omega).items():
        if not isinstance(w, int) or not isinstance(m, int) or isinstance(m, bool):
            violations.append(Violation("type", (w,), f"omega entry {w!r}: {m!r} is not integer"))
        elif m < 0:
            violations.append(Violation("type", (w,), f"omega({w}) = {m} is negative"))
        elif m:
            om[w] = m
    de: dict[tuple[int, int], int] = {}
    for key, d in dict(delta).items():
        if (not isinstance(key, tuple) or len(key) != 2 or not all(isinstance(t, int) for t in key)
                or not isinstance(d, int)):
            violations.append(Violation("type", (key,), f"delta entry {key!r}: {d!r} is malformed"))
        elif d < 0:
            violations.append(Violation("type", key, f"delta{key} = {d} is negative"))
        else:
            de[key] = d
    if violations:
        return violations
    for (i, j), d in de.items():
        if i >= j and d:
            violations.append(Violation("ii", (i, j), f"condition (ii) fails: Delta({i},{j})={d} but i >= j"))
    if not om:
        for (i, j), d in de.items():
            if d and i < j:
                violations.append(Violation("extension", (i, j),
                                            f"zero omega forces Delta({i},{j}) = 0, got {d}"))
        return violations or ZERO_DATUM
    lo, hi = min(om), max(om) + 1

    def get(i, j):
        return de.get((i, j), 0)

    violations += _window_violations(om, get)
    for (i, j), d in de.items():
        if i < j and not (lo <= i and j <= hi):
            ci, cj = min(max(i, lo), hi), min(max(j, lo), hi)
            expect = get(ci, cj) if ci < cj else 0
            if d != expect:
                violations.append(Violation("extension", (i, j),
                                            f"Delta({i},{j})={d} disagrees with clamp value Delta({ci},{cj})={expect}"))
    if violations:
        return violations
    return _canonical(om, de)


def _check(D: DeRhamDatum) -> DeRhamDatum:
    """Re-validate an internally built datum."""
    r = validate(D._omega, D._delta)
    if not isinstance(r, DeRhamDatum):
        raise DatumError(r)
    return r


class Flags(NamedTuple):
    full: bool
    hodge_tate: bool
    sen: bool


def classify(D: DeRhamDatum) -> Flags:
    if D.is_zero:
        return Flags(True, True, True)
    lo, hi = D.L, D.U + 1
    g = D.delta_at
    steps_full = all(g(i, i + 1) == D.weight_mult(i) for i in range(lo, hi))
    additive = ht = True
    for i in range(lo, hi + 1):
        for j in range(i + 1, hi + 1):
            for k in range(j + 1, hi + 1):
                a, b, c = g(i, j), g(j, k), g(i, k)
                additive &= c == a + b
                ht &= c == max(a, b)
    sen = ht and all(g(i, i + 1) == min(D.weight_mult(i), 1) for i in range(lo, hi))
    return Flags(steps_full and additive, ht, sen)


def associated(D: DeRhamDatum, kind: str) -> DeRhamDatum:
    """The associated Hodge-Tate (``"HT"``) or Sen (``"Sen"``) datum."""
    if kind not in ("HT", "Sen"):
        raise ValueError("kind must be 'HT' or 'Sen'")
    if D.is_zero:
        return D
    if kind == "HT":
        step = {k: D.delta_at(k, k + 1) for k in range(D.L, D.U + 1)}
    else:
        step = {k: min(D.weight_mult(k), 1) for k in range(D.L, D.U + 1)}
    return _check(DeRhamDatum.from_functions(
        D._omega, lambda i, j: max(step[k] for k in range(i, j))))


class Dimensions(NamedTuple):
    sd: int
    htd: int
    drd: int


def dimensions(D: DeRhamDatum) -> Dimensions:
    if D.is_zero:
        return Dimensions(0, 0, 0)
    sd = sum(m for _, m in D.omega)
    htd = htd_range(D, D.L, D.U + 1)
    drd = max((d for _, _, d in D.delta), default=0)
    return Dimensions(sd, htd, drd)


def htd_range(D: DeRhamDatum, k: int, l: int) -> int:
    return sum(D.delta_at(i, i + 1) for i in range(k, l))


def twist(D: DeRhamDatum, n: int) -> DeRhamDatum:
    """``omega'(i) = omega(i + n)``: the support moves by ``-n``."""
    return DeRhamDatum(tuple((w - n, m) for w, m in D.omega),
                       tuple((i - n, j - n, d) for i, j, d in D.delta))


def truncate(D: DeRhamDatum, i: int, j: int) -> DeRhamDatum:
    """Restrict omega to ``[i, j]``; delta(k, l) becomes delta(max(k, i), min(l, j + 1))."""
    if i > j:
        raise ValueError("empty truncation interval")
    om = {w: m for w, m in D.omega if i <= w <= j}
    if not om:
        return ZERO_DATUM
    return _check(DeRhamDatum.from_functions(
        om, lambda k, l: D.delta_at(max(k, i), min(l, j + 1))))


class Comparison(NamedTuple):
    relation: str  # "eq" | "lt" | "gt" | "incomparable"
    strict_in_interval: bool


def _frame(D: DeRhamDatum, E: DeRhamDatum) -> tuple[int, int] | None:
    ends = [x for X in (D, E) if not X.is_zero for x in (X.L, X.U + 1)]
    return (min(ends), max(ends)) if ends else None


def _leq(D: DeRhamDatum, E: DeRhamDatum) -> bool:
    if any(m > E.weight_mult(w) for w, m in D.omega):
        return False
    fr = _frame(D, E)
    if fr is None:
        return True
    lo, hi = fr
    return all(D.delta_at(k, l) <= E.delta_at(k, l)
               for k in range(lo, hi) for l in range(k + 1, hi + 1))


def compare(D: DeRhamDatum, E: DeRhamDatum, interval: tuple[int, int] | None = None) -> Comparison:
    """Pointwise order; the flag records ``D <^{[i,j]} E`` (lt and supp E in [i,j])."""
    le, ge = _leq(D, E), _leq(E, D)
    rel = "eq" if le and ge else "lt" if le else "gt" if ge else "incomparable"
    flag = False
    if interval is not None and rel == "lt":
        i, j = interval
        flag = all(i <= w <= j for w in E.support)
    return Comparison(rel, flag)


def _bump(D: DeRhamDatum, w: int) -> DeRhamDatum:
    om = dict(D._omega)
    om[w] = om.get(w, 0) + 1

    def fn(k, l):
        d = D.delta_at(k, l)
        return max(d, 1) if k <= w < l else d

    return DeRhamDatum.from_functions(om, fn)


def _same_omega_extensions(D: DeRhamDatum) -> list[DeRhamDatum]:
    """All valid data with the omega of ``D`` and delta >= delta of ``D``."""
    if D.is_zero:
        return [D]
    cells = sorted(D.window_pairs(), key=lambda p: (p[1] - p[0], p[0]))
    cur: dict[tuple[int, int], int] = {}
    out = []

    def rec(idx):
        if idx == len(cells):
            out.append(_canonical(D._omega, cur))
            return
        k, l = cells[idx]
        base = D.delta_at(k, l)
        if l == k + 1:
            w = D.weight_mult(k)
            lo_v, hi_v = max(base, min(w, 1)), w
        else:
            lo_v, hi_v = base, None
            for j in range(k + 1, l):
                a, b = cur[(k, j)], cur[(j, l)]
                lo_v = max(lo_v, a, b)
                hi_v = a + b if hi_v is None else min(hi_v, a + b)
        for v in range(lo_v, hi_v + 1):
            cur[(k, l)] = v
            rec(idx + 1)
        cur.pop((k, l), None)

    rec(0)
    return out


def _minimal(items: Iterable[DeRhamDatum]) -> list[DeRhamDatum]:
    items = list(dict.fromkeys(items))
    return [a for a in items if not any(b != a and _leq(b, a) for b in items)]


def min_covers(D: DeRhamDatum, i: int, j: int) -> list[DeRhamDatum]:
    """Minimal valid data strictly above ``D`` with support in ``[i, j]``, sorted.

    Every such cover either keeps omega (a minimal delta increment) or adds
    one to omega at a single weight ``w``, where the unique smallest choice
    raises each delta(k, l) with ``k <= w < l`` to at least 1.
    """
    if i > j:
        raise ValueError("empty interval")
    if any(not (i <= w <= j) for w in D.support):
        raise ValueError(f"support {D.support} is not inside [{i}, {j}]")
    same = [E for E in _same_omega_extensions(D) if E != D]
    bumps = [_check(_bump(D, w)) for w in range(i, j + 1)]
    cands = _minimal(same + bumps)
    # re-verify: nothing valid strictly between D and a cover
    for E in cands:
        if compare(D, E).relation != "lt":
            raise AssertionError(f"cover {E} is not above {D}")
    return sorted(cands)


def parse_datum(text: str) -> DeRhamDatum:
    """Parse ``omega: {w: m, ...}; delta: {(i, j): d, ...}`` and validate."""
    parts: dict[str, dict] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, body = chunk.partition(":")
        name = name.strip()
        if not sep or name not in ("omega", "delta"):
            raise ValueError(f"expected 'omega: {{...}}' or 'delta: {{...}}', got {chunk!r}")
        try:
            value = ast.literal_eval(body.strip())
        except (ValueError, SyntaxError) as exc:
            raise ValueError(f"cannot parse {name} literal {body.strip()!r}: {exc}") from None
        if not isinstance(value, dict):
            raise ValueError(f"{name} must be a dict literal")
        parts[name] = value
    return DeRhamDatum.from_maps(parts.get("omega", {}), parts.get("delta", {}))
