"""Sparse bivariate polynomials in (x, y) with rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .unipoly import UniPoly, _frac, format_terms


class BiPoly:
    """Immutable map ``(i, j) -> coeff`` for the monomial ``x**i * y**j``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = _frac(c)
                if c != 0:
                    clean[(int(k[0]), int(k[1]))] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict) -> "BiPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_uni(cls, p: UniPoly, var: str = "x") -> "BiPoly":
        if var == "x":
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    @classmethod
    def from_y_coeffs(cls, coeffs: Iterable[UniPoly]) -> "BiPoly":
        """Inverse of :meth:`y_coeffs`."""
        terms = {}
        for j, cj in enumerate(coeffs):
            for i, c in enumerate(cj.coeffs):
                if c != 0:
                    terms[(i, j)] = c
        return cls._raw(terms)

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        return _Parser(text).parse()

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        return format_terms(self.terms.items())(var_names=("x", "y"))

    # -- ring ops ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.constant(other)
        raise TypeError(f"cannot combine BiPoly with {type(other).__name__}")

    def __add__(self, other):
        if not isinstance(other, (BiPoly, int, Fraction)):
            return NotImplemented
        out = dict(self.terms)
        for k, c in self._coerce(other).terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (BiPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return BiPoly._raw({})
            return BiPoly._raw({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = BiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / _frac(other))
        return NotImplemented

    def exact_div(self, other: "BiPoly | int | Fraction") -> "BiPoly":
        q = self.try_div(other)
        if q is None:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def try_div(self, other) -> "BiPoly | None":
        """Quotient when ``other`` divides exactly, else None."""
        if isinstance(other, (int, Fraction)):
            return self * (1 / _frac(other))
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        # lex order with y dominant; exact division leaves no remainder
        key = lambda m: (m[1], m[0])
        lead = max(other.terms, key=key)
        lc = other.terms[lead]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=key)
            if m[0] < lead[0] or m[1] < lead[1]:
                return None
            qm = (m[0] - lead[0], m[1] - lead[1])
            qc = rem[m] / lc
            quot[qm] = qc
            for (i, j), c in other.terms.items():
                k = (i + qm[0], j + qm[1])
                v = rem.get(k, 0) - qc * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return BiPoly._raw(quot)

    # -- calculus / substitution ---------------------------------------
    def diff(self, var: str) -> "BiPoly":
        out = {}
        for (i, j), c in self.terms.items():
            if var == "x" and i:
                out[(i - 1, j)] = c * i
            elif var == "y" and j:
                out[(i, j - 1)] = c * j
        return BiPoly._raw(out)

    def __call__(self, xv, yv):
        """Evaluate at any values supporting + and * (Fractions, floats,
        surds, mpmath numbers, polynomials)."""
        acc = 0
        for j in range(self.deg_y, -1, -1):
            row = 0
            for i in range(self.deg_x, -1, -1):
                row = row * xv + self.terms.get((i, j), 0)
            acc = acc * yv + row
        return acc

    def eval_float(self, xv: float, yv: float) -> float:
        return float(sum(float(c) * xv ** i * yv ** j for (i, j), c in self.terms.items()))

    def substitute(self, xs: "BiPoly", ys: "BiPoly") -> "BiPoly":
        """Compose with polynomial maps x -> xs, y -> ys."""
        xp = [BiPoly.constant(1)]
        for _ in range(self.deg_x):
            xp.append(xp[-1] * xs)
        yp = [BiPoly.constant(1)]
        for _ in range(self.deg_y):
            yp.append(yp[-1] * ys)
        acc = BiPoly._raw({})
        for (i, j), c in self.terms.items():
            acc = acc + xp[i] * yp[j] * c
        return acc

    def swap(self) -> "BiPoly":
        return BiPoly._raw({(j, i): c for (i, j), c in self.terms.items()})

    def y_coeffs(self) -> list[UniPoly]:
        """Coefficients as a polynomial in y over Q[x], ascending in y."""
        n = self.deg_y
        rows = [[Fraction(0)] * (self.deg_x + 1) for _ in range(n + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        return [UniPoly(r, "x") for r in rows]

    def at_x(self, xv) -> UniPoly:
        """Specialize x to a rational: univariate polynomial in y."""
        xv = _frac(xv)
        return UniPoly([c(xv) for c in self.y_coeffs()], "y")

    def at_y(self, yv) -> UniPoly:
        return self.swap().at_x(yv).with_var("x")

    def to_uni(self, var: str = "x") -> UniPoly:
        """Univariate view; requires the other variable to be absent."""
        if var == "x":
            if self.deg_y > 0:
                raise ValueError(f"{self} depends on y")
            return UniPoly([self.coeff(i, 0) for i in range(self.deg_x + 1)], "x")
        if self.deg_x > 0:
            raise ValueError(f"{self} depends on x")
        return UniPoly([self.coeff(0, j) for j in range(self.deg_y + 1)], "y")

    def homogeneous_part(self, d: int) -> "BiPoly":
        return BiPoly._raw({k: c for k, c in self.terms.items() if k[0] + k[1] == d})

    def normalized(self) -> "BiPoly":
        """Scaled so the lex-leading (y first) coefficient is 1."""
        if not self.terms:
            return self
        lead = max(self.terms, key=lambda m: (m[1], m[0]))
        return self * (1 / self.terms[lead])

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?(?:/\d+)?)|(\*\*|[-+*/^()])|([xy]))")


class _Parser:
    """Recursive-descent parser for expressions in x and y."""

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            num, op, var = m.groups()
            if num is not None:
                self.tokens.append(("num", _parse_number(num)))
            elif op is not None:
                self.tokens.append(("op", "^" if op == "**" else op))
            else:
                self.tokens.append(("var", var))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> BiPoly:
        p = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing tokens in polynomial: {self.tokens[self.i:]}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                q = self.unary()
                if tok[1] == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        raise ValueError("division only by nonzero constants")
                    p = p * (1 / q.coeff(0, 0))
            elif tok[0] in ("num", "var") or tok == ("op", "("):
                p = p * self.unary()  # implicit multiplication
            else:
                return p

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponents must be nonnegative integers")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return BiPoly.constant(val)
        if kind == "var":
            return BiPoly.x() if val == "x" else BiPoly.y()
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return p
        raise ValueError(f"unexpected token {val!r}")


def _parse_number(s: str) -> Fraction:
    # decimal strings convert exactly: d digits -> denominator 10**d
    if "/" in s:
        a, b = s.split("/")
        return _parse_number(a) / Fraction(int(b))
    return Fraction(s)
