"""Exact monomial ideals: powers, colons, polarization.

Ideals live in a fixed ambient ring (an ordered variable list) and always
store an inclusion-minimal generating set, sorted by degree reverse
lexicographic order.  Exponent vectors are plain tuples aligned with
``ring_vars``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .config import budgets
from .errors import BudgetExceeded, NotSquarefree, ParseError, RingMismatch
from .graph import Graph

Exps = tuple[int, ...]

POLAR_SEP = "#"
_VAR = re.compile(r"^[A-Za-z_][A-Za-z0-9_#'.]*$")


@dataclass(frozen=True)
class Monomial:
    """A monomial as a sorted tuple of ``(variable, exponent)`` with positive exponents."""

    exps: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, int] | Iterable[tuple[str, int]] = ()) -> "Monomial":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        acc: dict[str, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
            acc[v] = acc.get(v, 0) + e
        return cls(tuple(sorted((v, e) for v, e in acc.items() if e)))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        return cls.of(_parse_monomial(text))

    @classmethod
    def product(cls, *vars_: str) -> "Monomial":
        acc: dict[str, int] = {}
        for v in vars_:
            acc[v] = acc.get(v, 0) + 1
        return cls.of(acc)

    def as_dict(self) -> dict[str, int]:
        return dict(self.exps)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def exponent(self, var: str) -> int:
        return dict(self.exps).get(var, 0)

    def divides(self, other: "Monomial") -> bool:
        o = dict(other.exps)
        return all(o.get(v, 0) >= e for v, e in self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.of(list(self.exps) + list(other.exps))

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def to_string(self, order: Sequence[str] | None = None) -> str:
        if not self.exps:
            return "1"
        items = self.exps
        if order is not None:
            pos = {v: i for i, v in enumerate(order)}
            items = tuple(sorted(items, key=lambda t: pos.get(t[0], len(pos))))
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in items)

    def __str__(self) -> str:
        return self.to_string()


def _parse_monomial(text: str) -> dict[str, int]:
    text = text.strip()
    if text == "1":
        return {}
    acc: dict[str, int] = {}
    for factor in text.split("*"):
        factor = factor.strip()
        base, caret, power = factor.partition("^")
        base = base.strip()
        if not _VAR.match(base):
            raise ParseError(f"bad variable token {base!r} in {text!r}")
        try:
            e = int(power) if caret else 1
        except ValueError:
            raise ParseError(f"bad exponent in {factor!r}") from None
        if e < 0:
            raise ParseError(f"negative exponent in {factor!r}")
        acc[base] = acc.get(base, 0) + e
    return acc


# -- packed divisibility ---------------------------------------------

_FIELD = 8
_GUARD_BIT = 1 << (_FIELD - 1)


def _pack(e: Exps) -> int:
    out = 0
    for i, a in enumerate(e):
        out |= a << (_FIELD * i)
    return out


def _guard(n: int) -> int:
    g = 0
    for i in range(n):
        g |= _GUARD_BIT << (_FIELD * i)
    return g


def degrevlex_key(e: Exps) -> tuple:
    return (sum(e), tuple(-a for a in reversed(e)))


def minimalize(gens: Iterable[Exps], n: int) -> tuple[Exps, ...]:
    """Inclusion-minimal subset, sorted by degrevlex."""
    uniq = sorted(set(gens), key=degrevlex_key)
    if uniq and max(max(e, default=0) for e in uniq) >= _GUARD_BIT:
        return _minimalize_slow(uniq)
    g = _guard(n)
    kept: list[Exps] = []
    kept_packed: list[int] = []
    for e in uniq:
        p = _pack(e) | g
        if any((p - q) & g == g for q in kept_packed):
            continue
        kept.append(e)
        kept_packed.append(_pack(e))
    return tuple(kept)


def _minimalize_slow(uniq: list[Exps]) -> tuple[Exps, ...]:
    kept: list[Exps] = []
    for e in uniq:
        if not any(all(a <= b for a, b in zip(k, e)) for k in kept):
            kept.append(e)
    return tuple(kept)


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialIdeal:
    ring_vars: tuple[str, ...]
    gens: tuple[Exps, ...] = field(default=())

    def __post_init__(self):
        rv = tuple(self.ring_vars)
        if len(set(rv)) != len(rv):
            raise ValueError("duplicate ring variables")
        gens = tuple(tuple(int(a) for a in e) for e in self.gens)
        for e in gens:
            if len(e) != len(rv):
                raise ValueError("exponent vector length does not match the ring")
        object.__setattr__(self, "ring_vars", rv)
        object.__setattr__(self, "gens", minimalize(gens, len(rv)))

    # -- construction ---------------------------------------------------

    @classmethod
    def from_monomials(cls, ring_vars: Sequence[str], monomials: Iterable[Monomial | Mapping[str, int]]) -> "MonomialIdeal":
        ring_vars = tuple(ring_vars)
        pos = {v: i for i, v in enumerate(ring_vars)}
        gens = []
        for m in monomials:
            d = m.as_dict() if isinstance(m, Monomial) else dict(m)
            e = [0] * len(ring_vars)
            for v, a in d.items():
                if v not in pos:
                    raise RingMismatch(f"variable {v!r} not in ring")
                e[pos[v]] += a
            gens.append(tuple(e))
        return cls(ring_vars, tuple(gens))

    def with_ring(self, ring_vars: Sequence[str]) -> "MonomialIdeal":
        """Re-embed in a ring containing all variables used by some generator."""
        return MonomialIdeal.from_monomials(ring_vars, self.monomials())

    # -- queries ----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.ring_vars)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(e) == 0 for e in self.gens)

    def monomials(self) -> list[Monomial]:
        return [self.monomial(e) for e in self.gens]

    def monomial(self, e: Exps) -> Monomial:
        return Monomial.of((v, a) for v, a in zip(self.ring_vars, e) if a)

    def exps_of(self, m: Monomial | Mapping[str, int]) -> Exps:
        d = m.as_dict() if isinstance(m, Monomial) else dict(m)
        pos = {v: i for i, v in enumerate(self.ring_vars)}
        e = [0] * self.nvars
        for v, a in d.items():
            if v not in pos:
                raise RingMismatch(f"variable {v!r} not in ring")
            e[pos[v]] = a
        return tuple(e)

    def contains(self, m: Monomial | Mapping[str, int]) -> bool:
        e = self.exps_of(m)
        return any(_divides(g, e) for g in self.gens)

    def max_degree(self) -> int:
        return max((sum(e) for e in self.gens), default=0)

    def support_vars(self) -> list[str]:
        used = [any(e[i] for e in self.gens) for i in range(self.nvars)]
        return [v for v, u in zip(self.ring_vars, used) if u]

    def digest(self) -> str:
        """Canonical comma-separated generator list (ring order inside each monomial)."""
        return ",".join(self.monomial(e).to_string(self.ring_vars) for e in self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(self.monomial(e).to_string(self.ring_vars) for e in self.gens) + ")"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same_ring(self, other)
        return MonomialIdeal(self.ring_vars, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same_ring(self, other)
        raw = len(self.gens) * len(other.gens)
        budgets().check("power_terms", raw)
        return MonomialIdeal(
            self.ring_vars,
            tuple(tuple(a + b for a, b in zip(u, v)) for u in self.gens for v in other.gens),
        )


def _same_ring(a: MonomialIdeal, b: MonomialIdeal) -> None:
    if a.ring_vars != b.ring_vars:
        raise RingMismatch(f"rings differ: {a.ring_vars} vs {b.ring_vars}")


def edge_ideal(g: Graph) -> MonomialIdeal:
    n = g.n
    gens = []
    for i, j in g.edge_index_pairs:
        e = [0] * n
        e[i] = e[j] = 1
        gens.append(tuple(e))
    return MonomialIdeal(g.vertices, tuple(gens))


def power(ideal: MonomialIdeal, s: int) -> MonomialIdeal:
    """Minimal generators of ``ideal**s`` via ``I^s = min(I^(s-1) * I)`` (memoized)."""
    if s < 1:
        raise ValueError("power needs s >= 1")
    return _power_cached(ideal, s, budgets().power_terms)


@lru_cache(maxsize=512)
def _power_cached(ideal: MonomialIdeal, s: int, cap: int) -> MonomialIdeal:
    if s == 1:
        return ideal
    prev = _power_cached(ideal, s - 1, cap)
    raw = len(prev.gens) * len(ideal.gens)
    if raw > cap:
        raise BudgetExceeded("power_terms", cap, raw)
    return MonomialIdeal(
        ideal.ring_vars,
        tuple(tuple(a + b for a, b in zip(u, v)) for u in prev.gens for v in ideal.gens),
    )


def colon_by_monomial(ideal: MonomialIdeal, m: Monomial | Mapping[str, int]) -> MonomialIdeal:
    """``(I : m)``, generated by ``u / gcd(u, m)`` over the generators ``u``."""
    me = ideal.exps_of(m)
    return MonomialIdeal(
        ideal.ring_vars,
        tuple(tuple(max(a - b, 0) for a, b in zip(u, me)) for u in ideal.gens),
    )


def is_squarefree(ideal: MonomialIdeal) -> bool:
    return all(a <= 1 for e in ideal.gens for a in e)


def ideal_equal(a: MonomialIdeal, b: MonomialIdeal, renaming: Mapping[str, str] | None = None) -> bool:
    """Equality of minimal generating sets; ``renaming`` maps ``b``'s variables onto ``a``'s."""
    if renaming:
        b_vars = tuple(renaming.get(v, v) for v in b.ring_vars)
        b = MonomialIdeal(b_vars, b.gens)
    if set(a.ring_vars) != set(b.ring_vars):
        raise RingMismatch(f"rings differ: {a.ring_vars} vs {b.ring_vars}")
    if a.ring_vars != b.ring_vars:
        b = b.with_ring(a.ring_vars)
    return a.gens == b.gens


# -- polarization ---------------------------------------------------------


def polar_name(var: str, j: int) -> str:
    return f"{var}{POLAR_SEP}{j}"


@dataclass(frozen=True)
class PolarizationMap:
    forward: dict  # (variable, occurrence) -> new variable name
    ambient: tuple[str, ...]

    def backward(self) -> dict[str, tuple[str, int]]:
        return {new: key for key, new in self.forward.items()}

    def depolarize(self, ideal: MonomialIdeal, ring_vars: Sequence[str]) -> MonomialIdeal:
        """Drop the occurrence index of every variable."""
        back = self.backward()
        mons = []
        for m in ideal.monomials():
            acc: dict[str, int] = {}
            for v, e in m.exps:
                base = back[v][0]
                acc[base] = acc.get(base, 0) + e
            mons.append(acc)
        return MonomialIdeal.from_monomials(ring_vars, mons)


def polarize(ideal: MonomialIdeal) -> tuple[MonomialIdeal, PolarizationMap]:
    """Squarefree ideal with ``x^a -> x#1 * ... * x#a`` in the ring of occurrence variables."""
    top = [max((e[i] for e in ideal.gens), default=0) for i in range(ideal.nvars)]
    forward: dict[tuple[str, int], str] = {}
    ambient: list[str] = []
    for v, a in zip(ideal.ring_vars, top):
        for j in range(1, max(a, 1) + 1):
            name = polar_name(v, j)
            forward[(v, j)] = name
            ambient.append(name)
    pos = {name: k for k, name in enumerate(ambient)}
    gens = []
    for e in ideal.gens:
        out = [0] * len(ambient)
        for v, a in zip(ideal.ring_vars, e):
            for j in range(1, a + 1):
                out[pos[forward[(v, j)]]] = 1
        gens.append(tuple(out))
    return MonomialIdeal(tuple(ambient), tuple(gens)), PolarizationMap(forward, tuple(ambient))


def require_squarefree(ideal: MonomialIdeal) -> None:
    if not is_squarefree(ideal):
        raise NotSquarefree(f"ideal {ideal} is not squarefree")


# -- text format ------------------------------------------------------


def parse_ideal(text: str, ring_vars: Sequence[str] | None = None) -> MonomialIdeal:
    """One monomial per line (``x1^2*y3``); lines starting with ``#`` are comments.

    Without ``ring_vars`` the ring is the variables in order of first appearance.
    """
    mons: list[dict[str, int]] = []
    order: dict[str, None] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        # Whole-line comments only: polarized variables contain '#'.
        if not line or line.startswith("#"):
            continue
        try:
            d = _parse_monomial(line)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        mons.append(d)
        for v in d:
            order.setdefault(v)
    ring = tuple(ring_vars) if ring_vars is not None else tuple(order)
    return MonomialIdeal.from_monomials(ring, mons)


def format_ideal(ideal: MonomialIdeal) -> str:
    lines = [ideal.monomial(e).to_string(ideal.ring_vars) for e in ideal.gens]
    return "\n".join(lines) + ("\n" if lines else "")


def read_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())
