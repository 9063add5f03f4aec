"""Exact checks of the exponent and weight hypotheses of the continuity theorems.

All arithmetic is done on :class:`fractions.Fraction` values extended by
``+inf``; nothing here touches floating point.  Every condition is recorded
as data (label, the two sides, the relation and whether strictness was
triggered), so a :class:`Verdict` can be audited line by line.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
import math

__all__ = [
    "ExtExp",
    "INF",
    "conjugate",
    "young_functional",
    "Condition",
    "Verdict",
    "ConvParams",
    "WignerParams",
    "WeylParams",
    "LocalizationParams",
    "check_convolution_thm",
    "check_wigner_thm",
    "check_weyl_bound_thm",
    "check_localization_thm",
    "explain",
    "parse_exact",
]


def parse_exact(x):
    """Exact rational from an int, Fraction, decimal string or ``"a/b"`` string.

    Floats go through their shortest decimal repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"{x!r} is not a finite real")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact number")


@total_ordering
class ExtExp:
    """Lebesgue exponent in ``[1, inf]``, stored exactly.

    Accepts ints, Fractions, decimal strings, ``"a/b"`` and ``"inf"`` (also
    ``math.inf``).
    """

    __slots__ = ("_value",)

    def __init__(self, value):
        if isinstance(value, ExtExp):
            self._value = value._value
            return
        if (isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo")) \
                or (isinstance(value, float) and value == math.inf):
            self._value = None
            return
        v = parse_exact(value)
        if v < 1:
            raise ValueError(f"exponent must lie in [1, inf], got {value!r}")
        self._value = v

    @property
    def is_inf(self):
        return self._value is None

    @property
    def value(self):
        """The exact value, or ``None`` for infinity."""
        return self._value

    def recip(self):
        """``1/p`` with ``1/inf = 0``."""
        return Fraction(0) if self.is_inf else 1 / self._value

    def conj(self):
        return conjugate(self)

    def __float__(self):
        return math.inf if self.is_inf else float(self._value)

    def __eq__(self, other):
        try:
            other = ExtExp(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other):
        other = ExtExp(other)
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self._value < other._value

    def __hash__(self):
        return hash(("ExtExp", self._value))

    def __str__(self):
        return "inf" if self.is_inf else str(self._value)

    def __repr__(self):
        return f"ExtExp({str(self)!r})"


INF = ExtExp("inf")


def conjugate(p):
    """Hoelder conjugate ``p'`` with ``1/p + 1/p' = 1``."""
    p = ExtExp(p)
    r = 1 - p.recip()
    return INF if r == 0 else ExtExp(1 / r)


def young_functional(p0, p1, p2):
    """``2 - 1/p0 - 1/p1 - 1/p2`` as an exact Fraction."""
    return 2 - ExtExp(p0).recip() - ExtExp(p1).recip() - ExtExp(p2).recip()


# -- verdict data -----------------------------------------------------------

def _key(v):
    """Comparable form of a Fraction / ExtExp side; infinity sorts last."""
    if isinstance(v, ExtExp):
        return (1, Fraction(0)) if v.is_inf else (0, v.value)
    return (0, Fraction(v))


def _fmt(v):
    return str(v)


@dataclass(frozen=True)
class Condition:
    """One hypothesis ``lhs rel rhs``; ``rel`` is ``'<='`` or ``'>='``.

    When ``strict`` is true the inequality must hold strictly.
    """

    label: str
    lhs: object
    rel: str
    rhs: object
    strict: bool = False
    note: str = ""

    @property
    def satisfied(self):
        a, b = _key(self.lhs), _key(self.rhs)
        if self.rel == "<=":
            return a < b if self.strict else a <= b
        if self.rel == ">=":
            return a > b if self.strict else a >= b
        raise ValueError(f"unknown relation {self.rel!r}")

    def as_dict(self):
        return {"label": self.label, "satisfied": self.satisfied, "lhs": _fmt(self.lhs),
                "rel": self.rel if not self.strict else self.rel[0],
                "rhs": _fmt(self.rhs), "strict": self.strict, "note": self.note}


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking one theorem; ``passed`` is the conjunction of all conditions."""

    theorem: str
    conditions: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        if not self.conditions:
            raise ValueError("a verdict needs at least one condition")

    @property
    def passed(self):
        return all(c.satisfied for c in self.conditions)

    def __bool__(self):
        return self.passed

    @property
    def failed(self):
        return [c for c in self.conditions if not c.satisfied]

    def as_dict(self):
        return {"theorem": self.theorem, "pass": self.passed,
                "conditions": [c.as_dict() for c in self.conditions]}


def explain(v):
    """Human-readable report, one line per condition."""
    lines = [f"{v.theorem}: {'PASS' if v.passed else 'FAIL'}"]
    for c in v.conditions:
        rel = c.rel[0] if c.strict else c.rel
        mark = "ok  " if c.satisfied else "FAIL"
        extra = f"  ({c.note})" if c.note else ""
        lines.append(f"  [{mark}] {c.label}: {c.lhs} {rel} {c.rhs}{extra}")
    if not v.passed:
        lines.append(f"  first failing condition: {v.failed[0].label}")
    return "\n".join(lines)


# -- parameters ---------------------------------------------------------------

def _exps(seq, k):
    seq = tuple(seq)
    if len(seq) != k:
        raise ValueError(f"expected {k} exponents, got {len(seq)}")
    return tuple(ExtExp(x) for x in seq)


def _reals(seq, k):
    seq = tuple(seq)
    if len(seq) != k:
        raise ValueError(f"expected {k} reals, got {len(seq)}")
    return tuple(parse_exact(x) for x in seq)


@dataclass(frozen=True)
class ConvParams:
    """Exponents ``p, q`` and weights ``s, t`` (index 0, 1, 2) of the convolution theorem."""

    p: tuple
    q: tuple
    s: tuple = (0, 0, 0)
    t: tuple = (0, 0, 0)
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "p", _exps(self.p, 3))
        object.__setattr__(self, "q", _exps(self.q, 3))
        object.__setattr__(self, "s", _reals(self.s, 3))
        object.__setattr__(self, "t", _reals(self.t, 3))
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))


@dataclass(frozen=True)
class WignerParams:
    p1: object
    q1: object
    p2: object
    q2: object
    p: object
    q: object
    s: object = 0

    def __post_init__(self):
        for k in ("p1", "q1", "p2", "q2", "p", "q"):
            object.__setattr__(self, k, ExtExp(getattr(self, k)))
        object.__setattr__(self, "s", parse_exact(self.s))


@dataclass(frozen=True)
class WeylParams(WignerParams):
    pass


@dataclass(frozen=True)
class LocalizationParams:
    """Hypotheses of the localization-operator theorem.

    ``strict_at_equality`` controls the clause requiring ``t0 > 0`` strictly
    when ``p0 == p``.  With the default ``True`` the theorem is read
    literally; ``False`` admits the boundary case ``p0 = p, t0 = 0``.
    """

    p1: object
    q1: object
    p2: object
    q2: object
    p: object
    q: object
    p0: object
    q0: object
    r1: object
    r2: object
    s: object = 0
    s0: object = 0
    t0: object = 0
    d: int = 1
    strict_at_equality: bool = True

    def __post_init__(self):
        for k in ("p1", "q1", "p2", "q2", "p", "q", "p0", "q0", "r1", "r2"):
            object.__setattr__(self, k, ExtExp(getattr(self, k)))
        for k in ("s", "s0", "t0"):
            object.__setattr__(self, k, parse_exact(getattr(self, k)))
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))

    def weyl_part(self):
        return WeylParams(self.p1, self.q1, self.p2, self.q2, self.p, self.q, self.s)


def _coerce(cls, params, kwargs):
    if params is None:
        return cls(**kwargs)
    if kwargs:
        raise TypeError("pass either a parameter object or keywords, not both")
    if isinstance(params, cls):
        return params
    if isinstance(params, dict):
        return cls(**params)
    raise TypeError(f"expected {cls.__name__}, got {type(params).__name__}")


# -- theorems -------------------------------------------------------------------

def check_convolution_thm(cp=None, **kwargs):
    """Weighted Young / modulation-space convolution hypotheses."""
    cp = _coerce(ConvParams, cp, kwargs)
    Rp = young_functional(*cp.p)
    Rq = young_functional(*cp.q)
    t, s, d = cp.t, cp.s, cp.d
    conds = [
        Condition("R(p) >= 0", Rp, ">=", Fraction(0)),
        Condition("R(p) <= 1/2", Rp, "<=", Fraction(1, 2)),
        Condition("R(q) <= 1", Rq, "<=", Fraction(1)),
    ]
    for j, k in ((0, 1), (0, 2), (1, 2)):
        conds.append(Condition(f"lastineq2A: t{j}+t{k} >= 0", t[j] + t[k], ">=", Fraction(0)))
    trigger = Rp > 0 and any(tj == d * Rp for tj in t)
    conds.append(Condition(
        "lastineq2B: t0+t1+t2 - d*R(p) >= 0", sum(t) - d * Rp, ">=", Fraction(0),
        strict=trigger,
        note="strict: R(p) > 0 and some t_j = d*R(p)" if trigger else ""))
    conds.append(Condition("lastineq2C: s0+s1+s2 >= 0", sum(s), ">=", Fraction(0)))
    return Verdict("convolution", conds)


def _wigner_conditions(p1, q1, p2, q2, p, q):
    conds = []
    for i, (pi, qi) in enumerate(((p1, q1), (p2, q2)), start=1):
        conds.append(Condition(f"uslov1: p <= p{i}", p, "<=", pi))
        conds.append(Condition(f"uslov1: q{i} <= q", qi, "<=", q))
    lhs = min(p1.recip() + p2.recip(), q1.recip() + q2.recip())
    conds.append(Condition("uslov2: min{1/p1+1/p2, 1/q1+1/q2} >= 1/p+1/q",
                           lhs, ">=", p.recip() + q.recip()))
    return conds


def check_wigner_thm(params=None, **kwargs):
    """Cross-Wigner continuity hypotheses (``s`` may be any real)."""
    wp = _coerce(WignerParams, params, kwargs)
    return Verdict("wigner", _wigner_conditions(wp.p1, wp.q1, wp.p2, wp.q2, wp.p, wp.q))


def _weyl_conditions(wp):
    c1, c2 = conjugate(wp.p1), conjugate(wp.q1)
    m = min(c1, c2, wp.p2, wp.q2)
    lhs = min(wp.p1.recip() + conjugate(wp.p2).recip(),
              wp.q1.recip() + conjugate(wp.q2).recip())
    rhs = conjugate(wp.p).recip() + conjugate(wp.q).recip()
    return [
        Condition("s >= 0", wp.s, ">=", Fraction(0)),
        Condition("uslov11: q <= min{p1', q1', p2, q2}", wp.q, "<=", m),
        Condition("uslov22: min{1/p1+1/p2', 1/q1+1/q2'} >= 1/p'+1/q'", lhs, ">=", rhs),
    ]


def check_weyl_bound_thm(params=None, **kwargs):
    """Multilinear Weyl-operator continuity hypotheses, including ``s >= 0``."""
    wp = _coerce(WeylParams, params, kwargs)
    return Verdict("weyl", _weyl_conditions(wp))


def check_localization_thm(params=None, **kwargs):
    """Localization-operator continuity hypotheses.

    Composes the Weyl-operator conditions with ``q0 <= q``, the admissible
    range of ``p0`` (``p <= p0 <= 2p/(2-p)``, the upper end read as ``inf``
    for ``p >= 2``), ``1/r1 + 1/r2 >= 1``, ``s0 >= -s`` and
    ``t0 >= d (1/p - 1/p0)``, strict when ``p0 == p`` unless
    ``strict_at_equality`` is off.
    """
    lp = _coerce(LocalizationParams, params, kwargs)
    conds = _weyl_conditions(lp.weyl_part())
    p = lp.p
    conds.append(Condition("q0 <= q", lp.q0, "<=", lp.q))
    conds.append(Condition("p_0 uslov: p0 >= p", lp.p0, ">=", p))
    if p.is_inf or p.value >= 2:
        upper = INF
    else:
        upper = ExtExp(2 * p.value / (2 - p.value))
    conds.append(Condition("p_0 uslov: p0 <= 2p/(2-p)", lp.p0, "<=", upper,
                           note="2p/(2-p) read as inf for p >= 2" if upper.is_inf else ""))
    conds.append(Condition("1/r1 + 1/r2 >= 1", lp.r1.recip() + lp.r2.recip(), ">=", Fraction(1)))
    conds.append(Condition("s0 >= -s", lp.s0, ">=", -lp.s))
    strict = lp.strict_at_equality and lp.p0 == p
    conds.append(Condition("t0 >= d(1/p - 1/p0)", lp.t0, ">=",
                           lp.d * (p.recip() - lp.p0.recip()), strict=strict,
                           note="strict: p0 = p" if strict else ""))
    return Verdict("localization", conds)
