"""Multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        self.nvars = nvars
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
            acc[mono] = acc.get(mono, 0) + c
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def monomial(cls, exps: Monomial, coeff: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.monomial((0,) * nvars)

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        return LaurentPoly(self.nvars, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    def shift(self, exps: Monomial) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(m, exps)): c for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.key()))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = "xyzuvwpqrst"
        parts = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            factors = []
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                var = names[i] if self.nvars <= len(names) else f"x{i + 1}"
                factors.append(var if e == 1 else f"{var}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")
