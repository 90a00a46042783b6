"""Normal forms, Buchberger's algorithm, reduced Groebner bases and syzygies.

Two engines sit behind one contract.  The reference engine is textbook
Buchberger with the normal selection strategy (sugar tie-break) and the
Gebauer-Moeller pair criteria; it works over any exact field and can record
reduction transcripts for syzygy extraction.  Over prime fields the default
engine reduces whole same-degree pair batches at once as mod-p matrices,
which is dramatically faster on the determinantal and elimination ideals
this package deals in.  Both return the unique reduced Groebner basis, so
the engines are interchangeable and cross-checkable.
"""

from itertools import combinations

import numpy as np

from .fields import PrimeField
from .linalg import rref_mod
from .rings import Poly, mono_div, mono_lcm, mono_mul

__all__ = [
    "GroebnerBasis",
    "SyzygyModule",
    "reduced_groebner_basis",
    "normal_form",
    "spoly",
    "buchberger_check",
    "module_syzygies",
]

# Above this many matrix cells the batched engine falls back to dict division
# for interreduction (memory guard).
_MATRIX_CELL_LIMIT = 160_000_000


class GroebnerBasis:
    """A reduced Groebner basis: monic, auto-reduced, canonically sorted.

    Elements are sorted ascending by leading monomial, which together with
    uniqueness of the reduced basis makes equal ideals produce identical
    objects.
    """

    def __init__(self, ring, elements, degree_bound=None):
        self.ring = ring
        self.order = ring.order
        self.elements = tuple(elements)
        self.degree_bound = degree_bound
        self._lms = tuple(g.lm() for g in self.elements)

    @property
    def lms(self):
        return self._lms

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.ring, self.elements))

    def max_degree(self):
        return max((g.degree() for g in self.elements), default=0)

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements, {self.order!r})"


class SyzygyModule:
    """Generators of the first syzygy module of a list of polynomials.

    Each generator is a tuple (v_1, ..., v_r) with sum(v_i * f_i) == 0.
    ``shifts`` records the degrees of the ambient basis vectors, i.e. of the
    input polynomials, so the module is graded.
    """

    def __init__(self, vectors, rank, shifts):
        self.vectors = vectors
        self.rank = rank
        self.shifts = tuple(shifts)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


# ---------------------------------------------------------------------------
# division


def _first_divisor(m, lms):
    for i, lt in enumerate(lms):
        if mono_div(m, lt) is not None:
            return i
    return -1


def _nf_terms(terms, lms, tails, ring):
    """Normal form of a term dict against monic reducers (lms[i], tails[i]).

    Reduces the greatest reducible monomial first and picks the first
    divisor in the stored order, so the result is deterministic.
    """
    field = ring.field
    key = ring.order.key
    work = dict(terms)
    out = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        i = _first_divisor(m, lms)
        if i < 0:
            out[m] = c
            continue
        q = mono_div(m, lms[i])
        for gm, gc in tails[i].items():
            mm = mono_mul(q, gm)
            s = field.sub(work.get(mm, field.zero), field.mul(c, gc))
            if s:
                work[mm] = s
            elif mm in work:
                del work[mm]
    return out


def _split_tails(polys):
    lms = [g.lm() for g in polys]
    tails = []
    for g, lt in zip(polys, lms):
        t = dict(g.terms)
        del t[lt]
        tails.append(t)
    return lms, tails


def normal_form(f, basis):
    """Remainder of f on division by a Groebner basis (or list of monic polys)."""
    elements = list(basis)
    if not elements:
        return f
    ring = elements[0].ring
    if f.ring != ring:
        raise ValueError("polynomial and basis belong to different rings")
    lms, tails = _split_tails(elements)
    return Poly(ring, _nf_terms(f.terms, lms, tails, ring))


def spoly(f, g):
    """S-polynomial of two monic polynomials."""
    lf, lg = f.lm(), g.lm()
    lcm = mono_lcm(lf, lg)
    uf = mono_div(lcm, lf)
    ug = mono_div(lcm, lg)
    one = f.ring.field.one
    return f.mul_term(uf, one) - g.mul_term(ug, one)


# ---------------------------------------------------------------------------
# pair bookkeeping (Gebauer-Moeller)


def _gm_update(G, lms, pairs, h, key):
    """Add monic h to the basis, pruning the pair set by both criteria."""
    lmh = h.lm()
    t = len(G)
    kept = {}
    for (i, j), L in pairs.items():
        if (
            mono_div(L, lmh) is None
            or mono_lcm(lms[i], lmh) == L
            or mono_lcm(lms[j], lmh) == L
        ):
            kept[(i, j)] = L
    by_lcm = {}
    for i in range(t):
        by_lcm.setdefault(mono_lcm(lms[i], lmh), []).append(i)
    minimal = []
    for L in sorted(by_lcm, key=key):
        if all(mono_div(L, L2) is None for L2 in minimal):
            minimal.append(L)
    for L in minimal:
        group = by_lcm[L]
        if any(mono_lcm(lms[i], lmh) == mono_mul(lms[i], lmh) for i in group):
            continue  # a coprime pair represents this lcm: S-poly reduces to 0
        kept[(min(group), t)] = L
    G.append(h)
    lms.append(lmh)
    return kept


def _prepare_gens(gens, ring):
    seen = set()
    cleaned = []
    for f in gens:
        if f.ring != ring:
            f = f.to_ring(ring)
        if f.is_zero():
            continue
        f = f.monic()
        fs = frozenset(f.terms.items())
        if fs not in seen:
            seen.add(fs)
            cleaned.append(f)
    key = ring.order.key
    cleaned.sort(key=lambda g: key(g.lm()))
    return cleaned


# ---------------------------------------------------------------------------
# reference engine


def _sugar(f, u, sugars, i):
    return sugars[i] + sum(u)


def _buchberger(gens, ring, degree_bound=None, transcript=None):
    """Textbook Buchberger; optionally records each basis element as a
    combination of the input generators (transcript[i] = tuple of Poly)."""
    field = ring.field
    key = ring.order.key
    G, lms, sugars = [], [], []
    pairs = {}
    track = transcript is not None
    for idx, f in enumerate(gens):
        if track:
            unit = [ring.zero()] * len(gens)
            unit[idx] = ring.one()
            transcript.append(tuple(unit))
        pairs = _gm_update(G, lms, pairs, f, key)
        sugars.append(f.degree())
    truncated = None
    while pairs:
        (i, j), L = min(
            pairs.items(),
            key=lambda kv: (
                sum(kv[1]),
                max(sugars[kv[0][0]] + sum(mono_div(kv[1], lms[kv[0][0]])),
                    sugars[kv[0][1]] + sum(mono_div(kv[1], lms[kv[0][1]]))),
                key(kv[1]),
                kv[0],
            ),
        )
        if degree_bound is not None and sum(L) > degree_bound:
            truncated = degree_bound
            break
        del pairs[(i, j)]
        ui = mono_div(L, lms[i])
        uj = mono_div(L, lms[j])
        s_terms = {}
        one = field.one
        for m, c in G[i].terms.items():
            s_terms[mono_mul(ui, m)] = c
        for m, c in G[j].terms.items():
            mm = mono_mul(uj, m)
            v = field.sub(s_terms.get(mm, field.zero), c)
            if v:
                s_terms[mm] = v
            elif mm in s_terms:
                del s_terms[mm]
        if track:
            r_terms, quot = _nf_terms_tracked(s_terms, lms, G, ring)
        else:
            lmlist, tails = _split_tails(G)
            r_terms = _nf_terms(s_terms, lmlist, tails, ring)
            quot = None
        if not r_terms:
            continue
        r = Poly(ring, r_terms)
        lc = r.lc()
        r = r.monic()
        sugar = max(sugars[i] + sum(ui), sugars[j] + sum(uj))
        if track:
            inv = field.inv(lc)
            vec = [ring.zero()] * len(gens)
            for k, q in quot.items():
                qpoly = Poly(ring, q)
                for t, comp in enumerate(transcript[k]):
                    if comp:
                        vec[t] = vec[t] - qpoly * comp
            for t, comp in enumerate(transcript[i]):
                if comp:
                    vec[t] = vec[t] + comp.mul_term(ui, one)
            for t, comp in enumerate(transcript[j]):
                if comp:
                    vec[t] = vec[t] - comp.mul_term(uj, one)
            transcript.append(tuple(v.mul_term(ring._zero_mono, inv) for v in vec))
        pairs = _gm_update(G, lms, pairs, r, key)
        sugars.append(sugar)
    return G, truncated


def _nf_terms_tracked(terms, lms, G, ring):
    """Like _nf_terms but also returns the reduction quotients per reducer."""
    field = ring.field
    key = ring.order.key
    work = dict(terms)
    out = {}
    quot = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        i = _first_divisor(m, lms)
        if i < 0:
            out[m] = c
            continue
        q = mono_div(m, lms[i])
        qd = quot.setdefault(i, {})
        qd[q] = field.add(qd.get(q, field.zero), c)
        for gm, gc in G[i].terms.items():
            if gm == lms[i]:
                continue
            mm = mono_mul(q, gm)
            s = field.sub(work.get(mm, field.zero), field.mul(c, gc))
            if s:
                work[mm] = s
            elif mm in work:
                del work[mm]
    return out, quot


# ---------------------------------------------------------------------------
# batched matrix engine (prime fields)


class _MatrixTooLarge(Exception):
    pass


def _rows_to_matrix(specs, G, ring, p, cell_limit=None):
    """Materialize row specs (multiplier, basis index) plus reducer closure."""
    key = ring.order.key
    lms = [g.lm() for g in G]
    row_specs = list(dict.fromkeys(specs))
    headed = set()
    for u, i in row_specs:
        headed.add(mono_mul(u, lms[i]))
    monos = set()
    for u, i in row_specs:
        for m in G[i].terms:
            monos.add(mono_mul(u, m))
    processed = set()
    while True:
        fresh = monos - processed
        if not fresh:
            break
        for m in sorted(fresh, key=key, reverse=True):
            processed.add(m)
            if m in headed:
                continue
            i = _first_divisor(m, lms)
            if i < 0:
                continue
            u = mono_div(m, lms[i])
            spec = (u, i)
            row_specs.append(spec)
            headed.add(m)
            for gm in G[i].terms:
                monos.add(mono_mul(u, gm))
    cols = sorted(monos, key=key, reverse=True)
    if cell_limit is not None and len(row_specs) * len(cols) > cell_limit:
        raise _MatrixTooLarge
    col_index = {m: c for c, m in enumerate(cols)}
    A = np.zeros((len(row_specs), len(cols)), dtype=np.int64)
    for r, (u, i) in enumerate(row_specs):
        for m, c in G[i].terms.items():
            A[r, col_index[mono_mul(u, m)]] = c
    return A, cols


def _matrix_new_polys(A, cols, lms, ring, p):
    R, pivots = rref_mod(A, p)
    out = []
    for r, c in enumerate(pivots):
        head = cols[c]
        if _first_divisor(head, lms) >= 0:
            continue
        nz = np.nonzero(R[r])[0]
        terms = {cols[int(k)]: int(R[r, int(k)]) for k in nz}
        out.append(Poly(ring, terms))
    return out


def _groebner_f4(gens, ring, degree_bound=None):
    field = ring.field
    p = field.p
    key = ring.order.key
    G, lms = [], []
    pairs = {}
    for f in gens:
        pairs = _gm_update(G, lms, pairs, f, key)
    truncated = None
    while pairs:
        d = min(sum(L) for L in pairs.values())
        if degree_bound is not None and d > degree_bound:
            truncated = degree_bound
            break
        batch = [(ij, L) for ij, L in pairs.items() if sum(L) == d]
        for ij, _ in batch:
            del pairs[ij]
        specs = []
        for (i, j), L in batch:
            specs.append((mono_div(L, lms[i]), i))
            specs.append((mono_div(L, lms[j]), j))
        A, cols = _rows_to_matrix(specs, G, ring, p)
        # keep every row whose head is new relative to the pre-batch basis
        for h in sorted(_matrix_new_polys(A, cols, list(lms), ring, p),
                        key=lambda g: key(g.lm())):
            pairs = _gm_update(G, lms, pairs, h, key)
    return G, truncated


# ---------------------------------------------------------------------------
# canonicalization


def _minimalize(G, ring):
    key = ring.order.key
    ordered = sorted(G, key=lambda g: key(g.lm()))
    kept = []
    kept_lms = []
    for g in ordered:
        if _first_divisor(g.lm(), kept_lms) < 0:
            kept.append(g)
            kept_lms.append(g.lm())
    return kept


def _interreduce_division(G, ring):
    reduced = list(G)
    changed = True
    while changed:
        changed = False
        for i in range(len(reduced)):
            others = reduced[:i] + reduced[i + 1:]
            lms, tails = _split_tails(others)
            r = Poly(ring, _nf_terms(reduced[i].terms, lms, tails, ring)).monic()
            if r.terms != reduced[i].terms:
                reduced[i] = r
                changed = True
    return reduced


def _interreduce_matrix(G, ring):
    p = ring.field.p
    zero = ring._zero_mono
    specs = [(zero, i) for i in range(len(G))]
    try:
        A, cols = _rows_to_matrix(specs, G, ring, p, cell_limit=_MATRIX_CELL_LIMIT)
    except _MatrixTooLarge:
        return _interreduce_division(G, ring)
    R, pivots = rref_mod(A, p)
    lm_set = {g.lm() for g in G}
    out = []
    for r, c in enumerate(pivots):
        head = cols[c]
        if head in lm_set:
            nz = np.nonzero(R[r])[0]
            out.append(Poly(ring, {cols[int(k)]: int(R[r, int(k)]) for k in nz}))
    return out


def reduced_groebner_basis(gens, order=None, degree_bound=None, engine=None):
    """The unique reduced Groebner basis of the ideal generated by `gens`.

    Parameters
    ----------
    gens : list of Poly
        Nonempty generator list in one ring.
    order : MonomialOrder, optional
        Overrides the ring order (the basis ring is re-ordered accordingly).
    degree_bound : int, optional
        Stop once every remaining S-pair lcm exceeds this total degree.  For
        homogeneous input the result is a d-Groebner basis: correct through
        the bound, flagged via ``degree_bound`` on the result.
    engine : {'matrix', 'division'}, optional
        Force an engine; by default prime fields use the batched matrix
        engine and the rationals use division.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    if order is not None:
        ring = ring.with_order(order)
    cleaned = _prepare_gens(gens, ring)
    if not cleaned:
        return GroebnerBasis(ring, [])
    if engine is None:
        engine = "matrix" if isinstance(ring.field, PrimeField) else "division"
    if engine == "matrix":
        G, truncated = _groebner_f4(cleaned, ring, degree_bound)
    else:
        G, truncated = _buchberger(cleaned, ring, degree_bound)
    G = _minimalize(G, ring)
    if engine == "matrix":
        G = _interreduce_matrix(G, ring)
    else:
        G = _interreduce_division(G, ring)
    key = ring.order.key
    G.sort(key=lambda g: key(g.lm()))
    return GroebnerBasis(ring, G, degree_bound=truncated)


def buchberger_check(basis, sample=None, rng=None):
    """Verify that S-polynomials of a basis reduce to zero.

    Checks all pairs when there are at most `sample` of them (or sample is
    None); otherwise checks a deterministic random sample of that size.
    """
    G = list(basis)
    idx_pairs = list(combinations(range(len(G)), 2))
    if sample is not None and len(idx_pairs) > sample:
        if rng is None:
            raise ValueError("sampling requires an rng")
        chosen = []
        remaining = list(idx_pairs)
        for _ in range(sample):
            chosen.append(remaining.pop(rng.below(len(remaining))))
        idx_pairs = chosen
    for i, j in idx_pairs:
        if normal_form(spoly(G[i], G[j]), G):
            return False
    return True


# ---------------------------------------------------------------------------
# syzygies


def module_syzygies(gens):
    """Generators of the first syzygy module of homogeneous `gens`.

    Runs Buchberger with a reduction transcript; the syzygies of the final
    basis obtained from S-pair reductions, pushed back through the
    transcript, together with the relations expressing each input in terms
    of the basis, generate the syzygy module of the inputs.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    for f in gens:
        if not f.is_homogeneous():
            raise ValueError("syzygies require homogeneous generators")
    shifts = [f.degree() for f in gens]
    nonzero = [(k, f) for k, f in enumerate(gens) if not f.is_zero()]
    if len(nonzero) <= 1:
        return SyzygyModule([], len(gens), shifts)
    field = ring.field
    scale = [field.one if f.is_zero() else f.lc() for f in gens]
    monic_gens = [f.monic() for k, f in nonzero]
    transcript = []
    G, _ = _buchberger(monic_gens, ring, transcript=transcript)
    lms = [g.lm() for g in G]
    vectors = []

    def push_back(coeffs_on_G):
        vec = [ring.zero()] * len(gens)
        for k, comb in coeffs_on_G.items():
            cpoly = Poly(ring, comb) if isinstance(comb, dict) else comb
            for t, comp in enumerate(transcript[k]):
                if comp:
                    orig = nonzero[t][0]
                    vec[orig] = vec[orig] + cpoly * comp
        # undo the monic scaling: column for generator i carries 1/lc_i
        return tuple(
            v.mul_term(ring._zero_mono, field.inv(scale[i])) if v else v
            for i, v in enumerate(vec)
        )

    one = field.one
    for i, j in combinations(range(len(G)), 2):
        L = mono_lcm(lms[i], lms[j])
        ui = mono_div(L, lms[i])
        uj = mono_div(L, lms[j])
        s = G[i].mul_term(ui, one) - G[j].mul_term(uj, one)
        r_terms, quot = _nf_terms_tracked(s.terms, lms, G, ring)
        if r_terms:
            raise AssertionError("S-polynomial of a Groebner basis must reduce to 0")
        coeffs = {k: dict(q) for k, q in quot.items()}
        ci = coeffs.setdefault(i, {})
        ci[ui] = field.sub(ci.get(ui, field.zero), one)
        cj = coeffs.setdefault(j, {})
        cj[uj] = field.add(cj.get(uj, field.zero), one)
        vec = push_back(coeffs)
        if any(vec):
            vectors.append(tuple(-v for v in vec))
    # relations f_t = sum quotients * G
    for t, (orig, f) in enumerate(nonzero):
        r_terms, quot = _nf_terms_tracked(f.monic().terms, lms, G, ring)
        if r_terms:
            raise AssertionError("generator must reduce to 0 against the basis")
        vec = list(push_back({k: dict(q) for k, q in quot.items()}))
        vec[orig] = vec[orig] - ring.const(field.inv(scale[orig]))
        if any(vec):
            vectors.append(tuple(-v for v in vec))
    return SyzygyModule(vectors, len(gens), shifts)
