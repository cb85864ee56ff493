"""Sparse real polynomials in the four coordinates (x, y, u, v) of R^4."""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence

import numpy as np

VARS = ("x", "y", "u", "v")
_VAR_INDEX = {name: k for k, name in enumerate(VARS)}

Exponent = tuple  # (i, j, k, l), non-negative ints


def _var_index(var) -> int:
    if isinstance(var, str):
        try:
            return _VAR_INDEX[var]
        except KeyError:
            raise ValueError(f"unknown variable {var!r}; expected one of {VARS}") from None
    if var in (0, 1, 2, 3):
        return int(var)
    raise ValueError(f"variable index out of range: {var!r}")


class Poly4:
    """Immutable sparse polynomial: a map from exponent 4-tuples to float coefficients.

    Zero coefficients are never stored, so the zero polynomial has no terms and
    two polynomials are equal exactly when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, float] | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != 4 or min(exp) < 0:
                raise ValueError(f"bad exponent tuple {exp!r}")
            c = float(c)
            if c != 0.0:
                clean[exp] = clean.get(exp, 0.0) + c
                if clean[exp] == 0.0:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: float) -> "Poly4":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name) -> "Poly4":
        exp = [0, 0, 0, 0]
        exp[_var_index(name)] = 1
        return cls({tuple(exp): 1.0})

    @classmethod
    def zero(cls) -> "Poly4":
        return cls()

    # -- basic protocol ----------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exp) -> float:
        return self._terms.get(tuple(exp), 0.0)

    @property
    def constant_term(self) -> float:
        return self._terms.get((0, 0, 0, 0), 0.0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = Poly4.const(other)
        if not isinstance(other, Poly4):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly4({self})"

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly4":
        if isinstance(other, Poly4):
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return Poly4.const(float(other))
        raise TypeError(f"cannot combine Poly4 with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            out[exp] = out.get(exp, 0.0) + c
        return Poly4(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly4({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                out[e] = out.get(e, 0.0) + c1 * c2
        return Poly4(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("Poly4 powers must be non-negative integers")
        result = Poly4.const(1.0)
        base = self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- calculus / substitution ---------------------------------------------

    def partial(self, var) -> "Poly4":
        k = _var_index(var)
        out = {}
        for exp, c in self._terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k]
        return Poly4(out)

    def gradient(self) -> tuple:
        return tuple(self.partial(k) for k in range(4))

    def scale_vars(self, signs: Sequence[float]) -> "Poly4":
        """Substitute x_k -> signs[k] * x_k (any real scale factors)."""
        out = {}
        for exp, c in self._terms.items():
            out[exp] = c * math.prod(s ** e for s, e in zip(signs, exp))
        return Poly4(out)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, points):
        return PolyBundle([self])(points)[..., 0]

    # -- printing ------------------------------------------------------------

    def __str__(self):
        return format_poly(self)


def _format_coeff(c: float) -> str:
    if float(c).is_integer() and abs(c) < 1e15:
        return str(int(c))
    return repr(float(c))


def _format_monomial(exp) -> str:
    parts = []
    for name, e in zip(VARS, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_order(exp):
    # graded, then lexicographic with x > y > u > v
    return (-sum(exp), tuple(-e for e in exp))


def format_poly(p: Poly4) -> str:
    """Render in the DSL grammar, so that the output parses back to ``p``."""
    if p.is_zero():
        return "0"
    chunks = []
    for exp in sorted(p._terms, key=_term_order):
        c = p._terms[exp]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = _format_monomial(exp)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1.0:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


class PolyBundle:
    """Vectorized evaluator for several polynomials sharing one monomial table.

    ``bundle(points)`` accepts an array of shape (..., 4) and returns shape
    (..., K) for K polynomials.
    """

    def __init__(self, polys: Iterable[Poly4]):
        self.polys = list(polys)
        monos = sorted({e for p in self.polys for e in p._terms}, key=_term_order)
        if not monos:
            monos = [(0, 0, 0, 0)]
        self._index = {e: i for i, e in enumerate(monos)}
        self.exponents = np.array(monos, dtype=np.intp).reshape(-1, 4)
        self.coeffs = np.zeros((len(self.polys), len(monos)))
        for k, p in enumerate(self.polys):
            for e, c in p._terms.items():
                self.coeffs[k, self._index[e]] = c
        self.max_degree = int(self.exponents.max())

    def monomials(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        powers = pts[..., None] ** np.arange(self.max_degree + 1)  # (..., 4, D+1)
        E = self.exponents
        mon = (powers[..., 0, E[:, 0]] * powers[..., 1, E[:, 1]]
               * powers[..., 2, E[:, 2]] * powers[..., 3, E[:, 3]])
        return mon

    def __call__(self, points) -> np.ndarray:
        return self.monomials(points) @ self.coeffs.T
