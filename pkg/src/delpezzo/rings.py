"""Multivariate polynomial rings with exact coefficients.

Polynomials are immutable term dictionaries mapping dense exponent tuples to
nonzero field elements.  The ring fixes the variable names, the coefficient
field and a monomial order; the canonical printed form sorts terms by that
order, descending, so ``parse`` and ``str`` round-trip.
"""

import re

from .fields import QQ, Field
from .orders import MonomialOrder, degrevlex

__all__ = ["PolyRing", "Poly", "PolyMatrix", "ParseError"]


# monomial helpers on exponent tuples

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, or None if b does not divide a."""
    q = []
    for x, y in zip(a, b):
        if x < y:
            return None
        q.append(x - y)
    return tuple(q)


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


class ParseError(ValueError):
    pass


class PolyRing:
    """Polynomial ring k[x_0, ..., x_n] with a monomial order.

    Parameters
    ----------
    variables : sequence of str
        Distinct variable names; earlier names are larger in the order.
    field : Field
        Coefficient field (``QQ`` or ``GF(p)``).
    order : MonomialOrder, optional
        Defaults to degrevlex.
    """

    def __init__(self, variables, field=QQ, order=degrevlex):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        if not isinstance(field, Field):
            raise TypeError("field must be a Field instance")
        if not isinstance(order, MonomialOrder):
            raise TypeError("order must be a MonomialOrder")
        if order.kind == "block" and not (1 <= order.block_split < len(variables)):
            raise ValueError("block split out of range for this ring")
        self.variables = variables
        self.nvars = len(variables)
        self.field = field
        self.order = order
        self._var_index = {v: i for i, v in enumerate(variables)}
        self._zero_mono = (0,) * self.nvars

    # -- construction -----------------------------------------------------

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {self._zero_mono: self.field.one})

    def const(self, c):
        c = self.field.convert(c)
        return Poly(self, {self._zero_mono: c} if c else {})

    def gen(self, name):
        i = self._var_index[name]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent tuple has wrong length")
        c = self.field.convert(coeff)
        return Poly(self, {exps: c} if c else {})

    def from_terms(self, terms):
        """Build a polynomial from {exponent tuple: coefficient}, dropping zeros."""
        clean = {}
        for m, c in terms.items():
            c = self.field.convert(c)
            if c:
                clean[tuple(m)] = c
        return Poly(self, clean)

    # -- variants ----------------------------------------------------------

    def with_order(self, order):
        if order == self.order:
            return self
        return PolyRing(self.variables, self.field, order)

    def with_field(self, field):
        if field == self.field:
            return self
        return PolyRing(self.variables, field, self.order)

    def drop_variables(self, names):
        keep = [v for v in self.variables if v not in set(names)]
        return PolyRing(keep, self.field, degrevlex)

    # -- parsing -----------------------------------------------------------

    _token_re = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|[-+*^()/])")

    def parse(self, text):
        """Parse a polynomial from text using +, -, *, ^ and parentheses."""
        tokens = []
        pos = 0
        while pos < len(text):
            m = self._token_re.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ParseError(f"bad character at position {pos}: {text[pos:]!r}")
                break
            tokens.append(m.group(1))
            pos = m.end()
        parser = _Parser(self, tokens)
        poly = parser.parse_expr()
        parser.expect_end()
        return poly

    def __call__(self, text):
        return self.parse(text)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({','.join(self.variables)}; {self.field}; {self.order})"


class _Parser:
    """Recursive-descent parser for the polynomial text grammar."""

    def __init__(self, ring, tokens):
        self.ring = ring
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_end(self):
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r}")

    def parse_expr(self):
        sign = 1
        t = self.peek()
        if t in ("+", "-"):
            self.next()
            sign = -1 if t == "-" else 1
        poly = self.parse_term()
        if sign < 0:
            poly = -poly
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.parse_term()
            poly = poly - rhs if op == "-" else poly + rhs
        return poly

    def parse_term(self):
        poly = self.parse_power()
        while True:
            t = self.peek()
            if t == "*":
                self.next()
                poly = poly * self.parse_power()
            elif t == "/":
                self.next()
                d = self.next()
                if d is None or not d.isdigit():
                    raise ParseError("expected integer denominator after '/'")
                poly = poly * self.ring.const(self.ring.field.inv(self.ring.field.convert(int(d))))
            elif t is not None and (t.isdigit() or t[0].isalpha() or t == "("):
                # implicit product, e.g. "3x" or "x(y+z)"
                poly = poly * self.parse_power()
            else:
                return poly

    def parse_power(self):
        base = self.parse_atom()
        if self.peek() == "^":
            self.next()
            e = self.next()
            if e is None or not e.isdigit():
                raise ParseError("expected integer exponent after '^'")
            return base ** int(e)
        return base

    def parse_atom(self):
        t = self.next()
        if t is None:
            raise ParseError("unexpected end of input")
        if t == "(":
            poly = self.parse_expr()
            if self.next() != ")":
                raise ParseError("expected ')'")
            return poly
        if t == "-":
            return -self.parse_atom()
        if t.isdigit():
            return self.ring.const(int(t))
        if t[0].isalpha() or t[0] == "_":
            if t not in self.ring._var_index:
                raise ParseError(f"unknown variable {t!r}")
            return self.ring.gen(t)
        raise ParseError(f"unexpected token {t!r}")


class Poly:
    """Immutable multivariate polynomial over an exact field."""

    __slots__ = ("ring", "terms", "_lm", "_key")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lm = None
        self._key = None

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self):
        """Leading monomial under the ring order."""
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            key = self.ring.order.key
            self._lm = max(self.terms, key=key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def lt(self):
        m = self.lm()
        return Poly(self.ring, {m: self.terms[m]})

    def degree(self):
        """Total degree (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """Terms as (monomial, coeff) pairs, descending in the ring order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials belong to different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(out.get(m, field.zero), c)
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        field = self.ring.field
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = mono_mul(ma, mb)
                s = field.add(out.get(m, field.zero), field.mul(ca, cb))
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def mul_term(self, mono, coeff):
        """Multiply by a single term (exponent tuple, coefficient)."""
        field = self.ring.field
        return Poly(
            self.ring,
            {mono_mul(m, mono): field.mul(c, coeff) for m, c in self.terms.items()},
        )

    def monic(self):
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc())
        if inv == self.ring.field.one:
            return self
        return self.mul_term(self.ring._zero_mono, inv)

    def deriv(self, var):
        """Partial derivative with respect to variable index or name."""
        if isinstance(var, str):
            var = self.ring._var_index[var]
        field = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[var]
            if not e:
                continue
            coeff = field.mul(c, field.convert(e))
            if coeff:
                out[m[:var] + (e - 1,) + m[var + 1:]] = coeff
        return Poly(self.ring, out)

    # -- conversions ---------------------------------------------------------

    def to_ring(self, ring):
        """Reinterpret in a ring with the same variables (order/field change)."""
        if ring.variables != self.ring.variables:
            raise ValueError("rings have different variables")
        if ring.field == self.ring.field:
            return Poly(ring, self.terms)
        return ring.from_terms(self.terms)

    def map_variables(self, positions, ring):
        """Push into `ring`, placing old variable i at new position positions[i]."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, x in enumerate(m):
                if x:
                    e[positions[i]] = x
            out[tuple(e)] = c
        return Poly(ring, out)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int,)) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._key is None:
            self._key = hash(frozenset(self.terms.items()))
        return self._key

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.variables
        parts = []
        for m, c in self.sorted_terms():
            factors = [
                f"{names[i]}^{e}" if e > 1 else names[i]
                for i, e in enumerate(m)
                if e
            ]
            negative = (field.characteristic == 0 and c < 0)
            mag = -c if negative else c
            body = "*".join(factors)
            if not factors:
                body = str(mag)
            elif mag != field.one:
                body = f"{mag}*{body}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"-{body}" if negative else f"+{body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"


class PolyMatrix:
    """Rectangular matrix of polynomials sharing one ring."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix must be rectangular")
        ring = rows[0][0].ring
        for r in rows:
            for p in r:
                if p.ring != ring:
                    raise ValueError("matrix entries belong to different rings")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width
        self.ring = ring

    def transpose(self):
        return PolyMatrix([[self.rows[i][j] for i in range(self.nrows)]
                           for j in range(self.ncols)])

    def submatrix(self, row_idx, col_idx):
        return PolyMatrix([[self.rows[i][j] for j in col_idx] for i in row_idx])

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _det_memo(self.rows, tuple(range(self.nrows)), tuple(range(self.ncols)), {})

    def minors(self, k):
        """All k x k minors, rows-then-columns lexicographic by index sets."""
        if k < 1 or k > min(self.nrows, self.ncols):
            raise ValueError(f"minor size {k} out of range")
        from itertools import combinations

        memo = {}
        out = []
        for ri in combinations(range(self.nrows), k):
            for ci in combinations(range(self.ncols), k):
                out.append(_det_memo(self.rows, ri, ci, memo))
        return out

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols} over {self.ring!r})"


def _det_memo(rows, ri, ci, memo):
    """Laplace expansion along the first row with memoized subdeterminants."""
    if len(ri) == 1:
        return rows[ri[0]][ci[0]]
    key = (ri, ci)
    got = memo.get(key)
    if got is not None:
        return got
    ring = rows[0][0].ring
    total = ring.zero()
    r0 = ri[0]
    rest = ri[1:]
    for pos, c in enumerate(ci):
        entry = rows[r0][c]
        if not entry:
            continue
        sub = _det_memo(rows, rest, ci[:pos] + ci[pos + 1:], memo)
        term = entry * sub
        total = total + term if pos % 2 == 0 else total - term
    memo[key] = total
    return total
