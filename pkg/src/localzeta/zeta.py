"""The local zeta function of a univariate polynomial with rational roots.

Two independent evaluators are kept deliberately as mutual oracles:

* ``generating_function`` sums one closed-form term per vertex of the
  weighted residue-class tree;
* ``spf_eval`` recurses on residue classes mod p (unit-locus count nu,
  simple-root count delta, and a rescaled sub-problem per multiple root),
  closing single-root integrals in closed form.

Both produce a ``ZetaFunction``: a t-power shift plus a list of terms
``coeff * t**a / (1 - t**b / p)`` (``b = 0`` meaning no denominator) in
the variable t = p**(-s).  ``normalize`` combines the terms into a single
canonical rational function, and ``poincare`` derives the generating
series of the normalized solution counts from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import RecursionDepthExceeded
from .padic import PAdicContext
from .polynomials import (
    DensePoly,
    FactoredPoly,
    compute_lf,
    find_rational_roots,
    reduce_to_integral_roots,
)
from .ratfunc import (
    RationalFunctionT,
    make_ratfunc,
    poly_add,
    poly_divmod,
    poly_is_zero,
    poly_mul,
    poly_shift,
    poly_sub,
    rf_format,
)
from .tree import Vertex, WeightedTree, build_tree, minimal_weight_one_set

Roots = tuple[tuple[Fraction, int], ...]


@dataclass(frozen=True)
class ZetaTerm:
    """coeff * t**t_pow, divided by (1 - t**den_pow / p) when den_pow > 0."""

    coeff: Fraction
    t_pow: int
    den_pow: int


@dataclass(frozen=True)
class ZetaFunction:
    ctx: PAdicContext
    shift: int
    terms: tuple[ZetaTerm, ...]

    def sorted_terms(self) -> tuple[ZetaTerm, ...]:
        """Terms ordered for multiset comparison."""
        return tuple(sorted(self.terms, key=lambda t: (t.t_pow, t.den_pow, t.coeff)))


@dataclass(frozen=True)
class ResidueClassification:
    """Reduction mod p of a root multiset.

    nu counts residues where the reduction does not vanish, delta counts
    its simple roots, and groups holds each residue with total
    multiplicity >= 2 together with the original roots lying over it.
    """

    nu: int
    delta: int
    groups: tuple[tuple[int, int, Roots], ...]


def _residue_mod_p(root: Fraction, ctx: PAdicContext) -> int:
    den_inv = pow(root.denominator, -1, ctx.p)
    return root.numerator * den_inv % ctx.p


def classify_residues(roots: Roots, ctx: PAdicContext) -> ResidueClassification:
    """Group roots by residue mod p and count unit / simple residues."""
    by_residue: dict[int, list[tuple[Fraction, int]]] = {}
    for root, mult in roots:
        by_residue.setdefault(_residue_mod_p(root, ctx), []).append((root, mult))
    groups = []
    delta = 0
    for xi in sorted(by_residue):
        members = tuple(by_residue[xi])
        e_xi = sum(e for _, e in members)
        if e_xi == 1:
            delta += 1
        else:
            groups.append((xi, e_xi, members))
    return ResidueClassification(
        nu=ctx.p - len(by_residue), delta=delta, groups=tuple(groups)
    )


def dilate(roots: Roots, xi: int, ctx: PAdicContext) -> Roots:
    """Roots congruent to xi mod p, recentred and rescaled: (a - xi) / p.

    This is the root-level form of focusing the integral on one residue
    class; factors from non-congruent roots are dropped because they are
    p-adic units there.
    """
    return tuple(
        ((root - xi) / ctx.p, mult)
        for root, mult in roots
        if _residue_mod_p(root, ctx) == xi
    )


# ---------------------------------------------------------------------------
# evaluator 1: per-vertex terms of the weighted tree
# ---------------------------------------------------------------------------


def vertex_term(
    v: Vertex, ctx: PAdicContext, l_f: int, in_minimal_set: bool
) -> ZetaTerm | None:
    """The closed-form contribution of one tree vertex, or None.

    Writing l for the level, W for the weight and W* for the stalk weight:

    * level l_f+1, W >= 2:   (1 - 1/p) p**-l * t**W* / (1 - t**W / p)
    * level <= l_f, W != 1:  (p - Val) p**-(l+1) * t**W*
    * minimal weight-1 set:  (1 - 1/p) p**-l * t**W* / (1 - t / p)
    * other weight-1 vertices contribute nothing.
    """
    p = ctx.p
    if v.weight == 1:
        if not in_minimal_set:
            return None
        return ZetaTerm(Fraction(p - 1, p ** (v.level + 1)), v.stalk_weight, 1)
    if v.level == l_f + 1:
        return ZetaTerm(Fraction(p - 1, p ** (v.level + 1)), v.stalk_weight, v.weight)
    if v.valence == p:  # zero coefficient, omitted from the canonical term list
        return None
    return ZetaTerm(
        Fraction(p - v.valence, p ** (v.level + 1)), v.stalk_weight, 0
    )


def generating_function(tree: WeightedTree, shift: int = 0) -> ZetaFunction:
    """Sum of the vertex terms of the tree, with the global t-shift attached."""
    ctx = PAdicContext(tree.p)
    minimal = minimal_weight_one_set(tree)
    terms = []
    for v in tree.vertices:
        term = vertex_term(v, ctx, tree.l_f, v.id in minimal)
        if term is not None:
            terms.append(term)
    return ZetaFunction(ctx=ctx, shift=shift, terms=tuple(terms))


# ---------------------------------------------------------------------------
# evaluator 2: recursion on residue classes
# ---------------------------------------------------------------------------


def spf_eval(roots: Roots, ctx: PAdicContext) -> ZetaFunction:
    """Independent recursive evaluator on a multiset of integral roots.

    Per level: a constant nu/p for the unit locus, one geometric term for
    the delta simple residues, and a recursive call per residue class with
    multiplicity e >= 2, scaled by t**e / p.  A single root is closed in
    one step as (1 - 1/p) / (1 - t**e / p); an empty root set integrates
    a unit, giving 1.
    """
    roots = tuple((Fraction(r), int(e)) for r, e in roots)
    if len({r for r, _ in roots}) != len(roots):
        raise ValueError("roots must be pairwise distinct")
    depth_limit = _separation_depth(roots, ctx) + 1
    terms = _spf_terms(roots, ctx, depth=0, limit=depth_limit)
    return ZetaFunction(ctx=ctx, shift=0, terms=tuple(terms))


def _separation_depth(roots: Roots, ctx: PAdicContext) -> int:
    if not roots:
        return 1
    return compute_lf(FactoredPoly(Fraction(1), roots), ctx)


def _spf_terms(
    roots: Roots, ctx: PAdicContext, depth: int, limit: int
) -> list[ZetaTerm]:
    if depth > limit:
        raise RecursionDepthExceeded(
            f"recursion reached depth {depth} with separation depth {limit - 1}"
        )
    p = ctx.p
    if not roots:
        return [ZetaTerm(Fraction(1), 0, 0)]
    if len(roots) == 1:
        return [ZetaTerm(Fraction(p - 1, p), 0, roots[0][1])]
    cls = classify_residues(roots, ctx)
    terms = []
    if cls.nu:
        terms.append(ZetaTerm(Fraction(cls.nu, p), 0, 0))
    if cls.delta:
        terms.append(ZetaTerm(Fraction(cls.delta * (p - 1), p * p), 1, 1))
    for xi, e_xi, members in cls.groups:
        sub = _spf_terms(dilate(members, xi, ctx), ctx, depth + 1, limit)
        terms.extend(
            ZetaTerm(t.coeff / p, t.t_pow + e_xi, t.den_pow) for t in sub
        )
    return terms


# ---------------------------------------------------------------------------
# pipeline and normalization
# ---------------------------------------------------------------------------


def compute_zeta(
    f: DensePoly | FactoredPoly, ctx: PAdicContext, method: str = "tree"
) -> ZetaFunction:
    """Full pipeline: factor (if dense), reduce, and evaluate Z(t, f)."""
    factored = find_rational_roots(f) if isinstance(f, DensePoly) else f
    reduced = reduce_to_integral_roots(factored, ctx)
    if method == "tree":
        l_f = compute_lf(reduced.fplus, ctx)
        tree = build_tree(reduced.fplus, ctx, l_f)
        return generating_function(tree, shift=reduced.shift)
    if method == "spf":
        z = spf_eval(reduced.fplus.roots, ctx)
        return replace(z, shift=reduced.shift)
    raise ValueError(f"unknown method {method!r}")


def _denominator_factor(p: int, b: int) -> list[Fraction]:
    """Coefficients of 1 - t**b / p."""
    return [Fraction(1)] + [Fraction(0)] * (b - 1) + [Fraction(-1, p)]


def normalize(z: ZetaFunction) -> RationalFunctionT:
    """Combine the terms over the common denominator prod (1 - t**b / p).

    A nonnegative shift multiplies the numerator by t**shift; a negative
    one multiplies the denominator by t**(-shift).
    """
    p = z.ctx.p
    bs = sorted({t.den_pow for t in z.terms if t.den_pow})
    factors = {b: _denominator_factor(p, b) for b in bs}
    den = [Fraction(1)]
    for b in bs:
        den = poly_mul(den, factors[b])
    num = [Fraction(0)]
    for term in z.terms:
        part = poly_shift([term.coeff], term.t_pow)
        for b in bs:
            if b != term.den_pow:
                part = poly_mul(part, factors[b])
        num = poly_add(num, part)
    if z.shift >= 0:
        num = poly_shift(num, z.shift)
    else:
        den = poly_shift(den, -z.shift)
    return make_ratfunc(num, den)


def poincare(z: ZetaFunction) -> RationalFunctionT:
    """H(t) = (1 - t*Z(t)) / (1 - t), with the forced (1 - t) cancellation.

    Z(1) = 1 (the residue classes exhaust a set of measure one), so 1 - t
    always divides 1 - t*Z exactly; this is asserted, not assumed.
    """
    rf = normalize(z)
    num = poly_sub(rf.denominator, poly_shift(rf.numerator, 1))
    quot, rem = poly_divmod(num, [Fraction(1), Fraction(-1)])
    assert poly_is_zero(rem), "total measure is not 1; upstream bug"
    return make_ratfunc(quot, rf.denominator)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def term_text(term: ZetaTerm, p: int) -> str:
    """One term in the t = p**(-s) notation, e.g. '(2/27)*t^4 / (1 - t/3)'."""
    c = term.coeff
    if term.t_pow == 0:
        body = f"{c}"
    else:
        coeff = f"({c})" if c.denominator != 1 or c < 0 else f"{c}"
        power = "t" if term.t_pow == 1 else f"t^{term.t_pow}"
        body = f"{coeff}*{power}"
    if term.den_pow == 0:
        return body
    tb = "t" if term.den_pow == 1 else f"t^{term.den_pow}"
    return f"{body} / (1 - {tb}/{p})"


def zeta_text(z: ZetaFunction) -> str:
    """Multi-line rendering: the term sum, then the normalized form."""
    p = z.ctx.p
    lines = [f"p = {p}, shift = {z.shift}", "terms:"]
    for term in z.sorted_terms():
        lines.append(f"  {term_text(term, p)}")
    rf = normalize(z)
    lines.append(f"Z = {rf_format(rf)}, t = {p}^(-s)")
    return "\n".join(lines)


def zeta_to_json(z: ZetaFunction) -> dict:
    """JSON document with big integers rendered as decimal strings."""
    rf = normalize(z)
    return {
        "p": str(z.ctx.p),
        "shift": z.shift,
        "terms": [
            {"coeff": str(t.coeff), "t_pow": t.t_pow, "den_pow": t.den_pow}
            for t in z.terms
        ],
        "normalized": {
            "num": [str(c) for c in rf.numerator],
            "den": [str(c) for c in rf.denominator],
        },
    }


def zeta_from_json(doc: dict | str) -> ZetaFunction:
    """Inverse of zeta_to_json (the derived `normalized` block is ignored)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return ZetaFunction(
        ctx=PAdicContext(int(doc["p"])),
        shift=int(doc["shift"]),
        terms=tuple(
            ZetaTerm(Fraction(t["coeff"]), int(t["t_pow"]), int(t["den_pow"]))
            for t in doc["terms"]
        ),
    )
