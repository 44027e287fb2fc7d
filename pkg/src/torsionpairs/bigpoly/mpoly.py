"""Sparse multivariate polynomials over the integers.

Terms live in a dict keyed by exponent tuples; iteration, printing and the
text format use graded-lex order with the module-wide variable order
``x > delta > u > v > s > w > ...``.
"""
from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Mapping

from . import kronecker

# distinguished degree of the zero polynomial; compares below every integer
ZERO_DEGREE = float("-inf")

_VAR_ORDER = ("x", "delta", "u", "v", "s", "w", "X", "Y", "a", "t", "y", "z")
_VAR_RANK = {name: i for i, name in enumerate(_VAR_ORDER)}


def _var_key(name: str):
    return (_VAR_RANK.get(name, len(_VAR_ORDER)), name)


def order_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MPoly:
    """Immutable sparse polynomial in named variables with integer coefficients."""

    __slots__ = ("vars", "_terms", "_sorted", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | int = 0, vars: Iterable[str] = ()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        if isinstance(terms, int):
            terms = {(0,) * len(vars): terms} if terms else {}
        clean = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise ValueError(f"exponent {exp} does not match variables {vars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.vars = vars
        self._terms = clean
        self._sorted = None
        self._hash = None
        canonical = order_vars(vars)
        if canonical != vars:
            moved = self.with_vars(canonical)
            self.vars, self._terms = moved.vars, moved._terms

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.vars = vars
        obj._terms = terms
        obj._sorted = None
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def gen(cls, name: str) -> "MPoly":
        return cls._raw((name,), {(1,): 1})

    @classmethod
    def const(cls, c: int, vars: Iterable[str] = ()) -> "MPoly":
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): int(c)} if c else {})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: int = 1) -> "MPoly":
        vars = order_vars(exps)
        return cls._raw(vars, {tuple(exps[v] for v in vars): int(coeff)} if coeff else {})

    @classmethod
    def from_univariate(cls, coeffs: list[int], var: str) -> "MPoly":
        return cls._raw((var,), {(k,): int(c) for k, c in enumerate(coeffs) if c})

    @classmethod
    def from_coeffs_in(cls, parts: Mapping[int, "MPoly"], var: str) -> "MPoly":
        """Assemble sum_k parts[k] * var^k."""
        out = cls.const(0)
        v = cls.gen(var)
        for k, c in parts.items():
            out = out + c * v ** k
        return out

    # -- basic queries ------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in canonical (descending graded-lex) order."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
        return self._sorted

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def coeffs(self) -> list[int]:
        return [c for _, c in self.terms()]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            return -1

    def degree(self, var: str | None = None):
        """Total degree, or the degree in ``var``; ZERO_DEGREE for the zero polynomial."""
        if not self._terms:
            return ZERO_DEGREE
        if var is None:
            return max(sum(e) for e in self._terms)
        i = self._index(var)
        if i < 0:
            return 0
        return max(e[i] for e in self._terms)

    def min_degree(self, var: str):
        if not self._terms:
            return ZERO_DEGREE
        i = self._index(var)
        if i < 0:
            return 0
        return min(e[i] for e in self._terms)

    def degrees(self) -> dict[str, int]:
        return {v: self.degree(v) for v in self.vars}

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self._terms))

    def leading_coefficient(self) -> int:
        """Integer coefficient of the leading term in canonical order."""
        t = self.terms()
        return t[0][1] if t else 0

    def max_coeff_bits(self) -> int:
        return kronecker.max_bits(self._terms.values())

    def norm1(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    # -- variable bookkeeping -----------------------------------------------

    def with_vars(self, vars: Iterable[str]) -> "MPoly":
        """Re-express over ``vars`` (a superset of the used variables)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append((i, vars.index(v)))
            elif any(e[i] for e in self._terms):
                raise ValueError(f"variable {v!r} is used and cannot be dropped")
        n = len(vars)
        out = {}
        for exp, c in self._terms.items():
            new = [0] * n
            for i, j in pos:
                new[j] = exp[i]
            out[tuple(new)] = c
        return MPoly._raw(vars, out)

    def compact(self) -> "MPoly":
        """Drop variables that do not occur."""
        return self.with_vars(order_vars(self.used_vars()))

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        new = tuple(mapping.get(v, v) for v in self.vars)
        ordered = order_vars(new)
        return MPoly._raw(new, dict(self._terms)).with_vars(ordered)

    def _align(self, other: "MPoly"):
        if self.vars == other.vars:
            return self.vars, self, other
        vars = order_vars(self.vars + other.vars)
        return vars, self.with_vars(vars), other.with_vars(vars)

    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(other)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        vars, a, b = self._align(other)
        out = dict(a._terms)
        for e, c in b._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(vars, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "MPoly":
        c = int(c)
        if not c:
            return MPoly._raw(self.vars, {})
        return MPoly._raw(self.vars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        vars, a, b = self._align(other)
        if not a._terms or not b._terms:
            return MPoly._raw(vars, {})
        work = len(a._terms) * len(b._terms)
        if work <= kronecker.SCHOOLBOOK_CUTOFF or _dense_size(a._terms, b._terms, len(vars)) > work // 2:
            return MPoly._raw(vars, _mul_sparse(a._terms, b._terms))
        return MPoly._raw(vars, _mul_kronecker(a._terms, b._terms, len(vars)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative exponent")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self._terms == other._terms
        _, a, b = self._align(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        if self._hash is None:
            c = self.compact()
            self._hash = hash((c.vars, frozenset(c._terms.items())))
        return self._hash

    # -- structure ------------------------------------------------------------

    def coeffs_in(self, var: str) -> dict[int, "MPoly"]:
        """Split as sum_k c_k var^k; the c_k keep the full variable list."""
        i = self._index(var)
        if i < 0:
            return {0: self} if self._terms else {}
        parts: dict[int, dict] = {}
        for exp, c in self._terms.items():
            k = exp[i]
            parts.setdefault(k, {})[exp[:i] + (0,) + exp[i + 1:]] = c
        return {k: MPoly._raw(self.vars, t) for k, t in parts.items()}

    def coeff_in(self, var: str, k: int) -> "MPoly":
        return self.coeffs_in(var).get(k, MPoly._raw(self.vars, {}))

    def lc_in(self, var: str) -> "MPoly":
        d = self.degree(var)
        if d == ZERO_DEGREE:
            return MPoly._raw(self.vars, {})
        return self.coeff_in(var, d)

    def to_univariate(self, var: str) -> list[int]:
        """Dense coefficients (low first); every other variable must be absent."""
        i = self._index(var)
        for v in self.used_vars():
            if v != var:
                raise ValueError(f"polynomial depends on {v!r}, not univariate in {var!r}")
        if not self._terms:
            return []
        if i < 0:
            return [self.constant_value()]
        out = [0] * (self.degree(var) + 1)
        for exp, c in self._terms.items():
            out[exp[i]] = c
        return out

    def monomial_content(self) -> dict[str, int]:
        """Largest monomial dividing every term."""
        if not self._terms:
            return {v: 0 for v in self.vars}
        mins = [min(e[i] for e in self._terms) for i in range(len(self.vars))]
        return dict(zip(self.vars, mins))

    def shift_down(self, exps: Mapping[str, int]) -> "MPoly":
        """Divide by the monomial ``exps``; must divide exactly."""
        idx = [(self._index(v), k) for v, k in exps.items() if k]
        out = {}
        for exp, c in self._terms.items():
            new = list(exp)
            for i, k in idx:
                if i < 0 or new[i] < k:
                    raise ValueError("monomial does not divide polynomial")
                new[i] -= k
            out[tuple(new)] = c
        return MPoly._raw(self.vars, out)

    def content(self) -> int:
        """Positive gcd of the integer coefficients (0 for the zero polynomial)."""
        return reduce(math.gcd, self._terms.values(), 0)

    def exact_div_int(self, c: int) -> "MPoly":
        out = {}
        for e, v in self._terms.items():
            q, r = divmod(v, c)
            if r:
                raise ValueError(f"{c} does not divide every coefficient")
            out[e] = q
        return MPoly._raw(self.vars, out)

    def diff(self, var: str) -> "MPoly":
        i = self._index(var)
        if i < 0:
            return MPoly._raw(self.vars, {})
        out = {}
        for exp, c in self._terms.items():
            k = exp[i]
            if k:
                out[exp[:i] + (k - 1,) + exp[i + 1:]] = c * k
        return MPoly._raw(self.vars, out)

    # -- evaluation and substitution ------------------------------------------

    def subs(self, var: str, value) -> "MPoly":
        """Substitute an integer or a polynomial for ``var``."""
        i = self._index(var)
        if i < 0:
            return self
        if isinstance(value, int):
            out: dict = {}
            cache: dict[int, int] = {}
            for exp, c in self._terms.items():
                k = exp[i]
                if k not in cache:
                    cache[k] = value ** k
                if not cache[k]:
                    continue
                e = exp[:i] + (0,) + exp[i + 1:]
                s = out.get(e, 0) + c * cache[k]
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
            return MPoly._raw(self.vars, out).with_vars(tuple(v for v in self.vars if v != var))
        value = self._coerce(value)
        parts = self.coeffs_in(var)
        rest = tuple(v for v in self.vars if v != var)
        parts = {k: p.with_vars(rest) for k, p in parts.items()}
        if not parts:
            return MPoly.const(0)
        # Horner in var
        out = MPoly.const(0)
        for k in range(max(parts), -1, -1):
            out = out * value
            if k in parts:
                out = out + parts[k]
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at numeric values (int, Fraction, float, mpmath numbers...).

        Returns an int/Fraction/number when every used variable is assigned,
        otherwise raises.
        """
        missing = [v for v in self.used_vars() if v not in values]
        if missing:
            raise ValueError(f"no value for {missing}")
        idx = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        powcache: dict[tuple[int, int], object] = {}
        total = 0
        for exp, c in self._terms.items():
            term = c
            for i, val in idx:
                k = exp[i]
                if k:
                    key = (i, k)
                    if key not in powcache:
                        powcache[key] = val ** k
                    term = term * powcache[key]
            total = total + term
        return total

    # -- text -------------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, vars={self.vars})"

    def to_text(self) -> str:
        """One term per line: ``<coefficient> <var>^<exp> ...`` in canonical order."""
        lines = [f"# vars: {' '.join(self.vars)}"]
        for exp, c in self.terms():
            mono = " ".join(f"{v}^{k}" for v, k in zip(self.vars, exp) if k)
            lines.append(f"{c} {mono}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MPoly":
        vars: tuple[str, ...] | None = None
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("vars:"):
                    vars = tuple(body[5:].split())
                continue
            fields = line.split()
            mono = {}
            for f in fields[1:]:
                name, _, k = f.partition("^")
                mono[name] = mono.get(name, 0) + (int(k) if k else 1)
            rows.append((int(fields[0]), mono))
        if vars is None:
            vars = order_vars(n for _, m in rows for n in m)
        terms: dict = {}
        for c, mono in rows:
            unknown = set(mono) - set(vars)
            if unknown:
                raise ValueError(f"unknown variables {sorted(unknown)}")
            e = tuple(mono.get(v, 0) for v in vars)
            terms[e] = terms.get(e, 0) + c
        return cls(terms, vars)


def gens(*names: str) -> tuple[MPoly, ...]:
    return tuple(MPoly.gen(n) for n in names)


def _mul_sparse(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _dense_size(a: dict, b: dict, nvars: int) -> int:
    size = 1
    for i in range(nvars):
        size *= max(e[i] for e in a) + max(e[i] for e in b) + 1
    return size


def _mul_kronecker(a: dict, b: dict, nvars: int) -> dict:
    if nvars == 0:
        return {(): a[()] * b[()]}
    da = [max(e[i] for e in a) for i in range(nvars)]
    db = [max(e[i] for e in b) for i in range(nvars)]
    radix = [x + y + 1 for x, y in zip(da, db)]
    strides = [1] * nvars
    for i in range(nvars - 2, -1, -1):
        strides[i] = strides[i + 1] * radix[i + 1]
    total = strides[0] * radix[0]

    def dense(t: dict) -> list[int]:
        n = max(sum(k * s for k, s in zip(e, strides)) for e in t) + 1
        out = [0] * n
        for e, c in t.items():
            out[sum(k * s for k, s in zip(e, strides))] = c
        return out

    prod = kronecker.mul_dense(dense(a), dense(b))
    assert len(prod) <= total
    out = {}
    for idx, c in enumerate(prod):
        if c:
            exp = []
            for s in strides:
                q, idx = divmod(idx, s)
                exp.append(q)
            out[tuple(exp)] = c
    return out

