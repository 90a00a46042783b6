"""Monomial orders: lex, degrevlex, and elimination block orders.

Monomials are exponent tuples.  Each order exposes a ``key`` function such
that ``key(a) > key(b)`` iff ``a > b`` in the order; Python tuple comparison
does the rest.  Orders are total well-orders refining divisibility, which is
exercised by the randomized axiom tests.
"""

__all__ = ["MonomialOrder", "lex", "degrevlex", "block", "compare_monomials"]


def _drl_key(exps):
    # degrevlex: higher total degree wins; ties broken by the *last* nonzero
    # entry of the difference being negative, i.e. compare reversed negated
    # exponents lexicographically.
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MonomialOrder:
    """A monomial order on exponent tuples of a fixed length."""

    def __init__(self, kind, block_split=0):
        if kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "block" and block_split < 1:
            raise ValueError("block order needs block_split >= 1")
        self.kind = kind
        self.block_split = block_split if kind == "block" else 0

    def key(self, exps):
        if self.kind == "degrevlex":
            return _drl_key(exps)
        if self.kind == "lex":
            return tuple(exps)
        k = self.block_split
        return (_drl_key(exps[:k]), _drl_key(exps[k:]))

    @property
    def tag(self):
        if self.kind == "block":
            return ("block", self.block_split)
        return (self.kind,)

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.block_split})"
        return self.kind

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)


lex = MonomialOrder("lex")
degrevlex = MonomialOrder("degrevlex")


def block(split):
    """Elimination order: degrevlex on the first `split` variables, then degrevlex."""
    return MonomialOrder("block", split)


def compare_monomials(a, b, order):
    """Compare exponent tuples under `order`; returns 'LT', 'EQ' or 'GT'."""
    if len(a) != len(b):
        raise ValueError("exponent tuples have different lengths")
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return "LT"
    if ka > kb:
        return "GT"
    return "EQ"
