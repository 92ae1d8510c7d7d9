"""Mechanical checks of the identities relating the state-sum invariants.

Two modes are used.  *symbolic* compares Laurent polynomials term by term;
it applies whenever every substitution involved is a Laurent monomial.
*multipoint* evaluates both sides at exact rational points.  For the tensor
identities the points form a grid with more values per variable than the
degree of the (cleared) difference in that variable, so agreement on the
grid proves the identity rather than sampling it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .invariants import (
    ALPHA,
    BETA,
    GAMMA,
    bollobas_riordan,
    bollobas_riordan_rearranged,
    genus_from_br,
    homfly_formula,
    homfly_full,
    homfly_resolution,
    homfly_traldi,
    jones_cp,
    jones_from_homfly,
    jones_via_bracket,
    mirror,
)
from .laurent import LaurentPoly, RationalPoint
from .ribbon import DisconnectedGraph, RibbonGraph, dual, genus, is_connected, num_components, tensor_cycle

MAX_ODD_TENSOR_EDGES = 14


class BadPoint(ValueError):
    pass


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    graph: str
    mode: str
    points: int
    passed: bool
    witness: str | None = None
    seed: int | None = None

    def line(self) -> str:
        out = (f"identity={self.identity} graph={self.graph} mode={self.mode} "
               f"points={self.points} result={'pass' if self.passed else 'fail'}")
        if self.seed is not None:
            out += f" seed={self.seed}"
        if self.witness:
            out += f" witness={self.witness}"
        return out

    def __bool__(self):
        return self.passed


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _symbolic(identity: str, F: RibbonGraph, lhs: LaurentPoly, rhs: LaurentPoly) -> VerificationReport:
    if lhs == rhs:
        return VerificationReport(identity, F.name, "symbolic", 0, True)
    diff = lhs - rhs
    mono, _ = diff.sorted_terms()[0]
    probe = LaurentPoly({mono: 1})
    witness = (f"monomial[{probe}]:lhs={_fmt(lhs.terms().get(mono, Fraction(0)))},"
               f"rhs={_fmt(rhs.terms().get(mono, Fraction(0)))}")
    return VerificationReport(identity, F.name, "symbolic", 0, False, witness)


def _require_connected(F: RibbonGraph):
    if not is_connected(F):
        raise DisconnectedGraph(f"{F.name} is disconnected")


def rational_pool(count: int, rng: random.Random, exclude: Iterable = (), positive: bool = False) -> list[Fraction]:
    """``count`` distinct small rationals drawn with ``rng``, avoiding ``exclude``."""
    banned = {Fraction(x) for x in exclude}
    pool: list[Fraction] = []
    seen = set()
    bound = max(8, count)
    for den in (1, 2, 3, 5):
        for num in range(-bound * den, bound * den + 1):
            q = Fraction(num, den)
            if q in seen or q in banned or (positive and q <= 0):
                continue
            seen.add(q)
            pool.append(q)
    if len(pool) < count:
        raise ValueError("rational pool too small")
    return rng.sample(pool, count)


# -- symbolic checks ------------------------------------------------------------------

def check_eq1_eq2(F: RibbonGraph) -> VerificationReport:
    return _symbolic("eq12", F, bollobas_riordan(F), bollobas_riordan_rearranged(F))


def check_thm32(F: RibbonGraph) -> VerificationReport:
    return _symbolic("thm32", F, homfly_formula(F), homfly_resolution(F))


def duality_sides(F: RibbonGraph) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the duality relation on the surface gamma = 1/sqrt(alpha beta)."""
    _require_connected(F)
    on_surface = {ALPHA: Fraction(-1, 2), BETA: Fraction(-1, 2)}
    lhs = bollobas_riordan(F).substitute_monomial(GAMMA, on_surface)
    swapped = bollobas_riordan(dual(F)).substitute({
        ALPHA: LaurentPoly.var(BETA), BETA: LaurentPoly.var(ALPHA)})
    g = genus(F)
    rhs = LaurentPoly.monomial({BETA: g, ALPHA: -g}) * swapped.substitute_monomial(GAMMA, on_surface)
    return lhs, rhs


def check_duality(F: RibbonGraph) -> VerificationReport:
    lhs, rhs = duality_sides(F)
    return _symbolic("duality", F, lhs, rhs)


def check_jones_mirror(F: RibbonGraph) -> VerificationReport:
    """Medial Jones of F (x) C3 at writhe -2e(F), mirrored, against the HOMFLY-derived Jones of F."""
    A = tensor_cycle(F, 3)
    lhs = mirror(jones_cp(A, -2 * F.num_edges))
    return _symbolic("jones-mirror", F, lhs, jones_from_homfly(F))


def check_bracket_vs_cp(F: RibbonGraph, writhe: int | None = None) -> VerificationReport:
    if writhe is None:
        writhe = -F.num_edges
    return _symbolic("bracket-cp", F, jones_via_bracket(F, writhe), jones_cp(F, writhe))


def check_jones_paths(F: RibbonGraph) -> VerificationReport:
    return _symbolic("jones-homfly", F, jones_from_homfly(F, "joho"), jones_from_homfly(F, "homfly"))


def check_genus(F: RibbonGraph) -> VerificationReport:
    _require_connected(F)
    got, want = genus_from_br(F), genus(F)
    return VerificationReport("genus", F.name, "symbolic", 0, got == want,
                              None if got == want else f"genus_from_br={got},genus={want}")


def check_labels(F: RibbonGraph) -> VerificationReport:
    """Labelled HOMFLY collapses to the resolution sum, and all-w1 tangles reproduce it."""
    W = F.with_default_weights()
    full = homfly_full(W)
    forgotten = full.forget()
    base = homfly_resolution(F)
    if forgotten != base:
        return _symbolic("homfly-labels", F, forgotten, base)
    traldi = homfly_traldi(W.with_tangles("w1"))
    if traldi != full:
        return VerificationReport("homfly-labels", F.name, "symbolic", 0, False, "traldi(w1)!=full")
    return VerificationReport("homfly-labels", F.name, "symbolic", 0, True)


# -- multipoint checks -------------------------------------------------------------------

def _report_points(identity, F, points, seed, evaluate: Callable[[object], tuple[Fraction, Fraction]],
                   describe: Callable[[object], str]) -> VerificationReport:
    for pt in points:
        lhs, rhs = evaluate(pt)
        if lhs != rhs:
            witness = f"{describe(pt)}:lhs={_fmt(lhs)},rhs={_fmt(rhs)}"
            return VerificationReport(identity, F.name, "multipoint", len(points), False, witness, seed)
    return VerificationReport(identity, F.name, "multipoint", len(points), True, None, seed)


def _surd_eval(P: LaurentPoly, var: str, radicand: Fraction, values: dict) -> tuple[Fraction, Fraction]:
    """Value ``a + b*sqrt(radicand)`` of ``P`` at ``var = sqrt(radicand)``."""
    a = b = Fraction(0)
    for mono, c in P.items():
        val = c
        odd = 0
        for v, k in mono:
            if k % 2:
                raise ValueError(f"half power of {v}")
            if v == var:
                q, odd = divmod(k // 2, 2)
                val *= radicand ** q
            else:
                val *= values[v] ** (k // 2)
        if odd:
            b += val
        else:
            a += val
    return a, b


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def determination_sides(F: RibbonGraph, x: Fraction, y: Fraction, reading: str = "plus",
                        polys: tuple[LaurentPoly, LaurentPoly] | None = None) -> tuple:
    """Both sides of the determination identity at the point built from ``(x, y)``.

    ``alpha = x^2 - 1`` and ``beta = (x - 1/x)/(x y^2)``, so
    ``gamma = y/(x - 1/x)`` satisfies ``alpha beta gamma^2 = 1`` and
    ``sqrt(alpha)/sqrt(beta) = x y``.  With ``reading="plus"`` the HOMFLY side
    is evaluated at ``sqrt(alpha + 1) = x``; ``reading="minus"`` uses
    ``sqrt(alpha - 1)`` instead and returns the right side as a pair
    ``(a, b)`` meaning ``a + b*sqrt(alpha - 1)``.  ``polys`` may carry the
    already computed pair ``(bollobas_riordan(F), homfly_formula(F))``.
    """
    x, y = Fraction(x), Fraction(y)
    if x in (0, 1, -1) or y == 0:
        raise BadPoint(f"x={x}, y={y} is not admissible")
    alpha = x * x - 1
    beta = (x - 1 / x) / (x * y * y)
    gamma = y / (x - 1 / x)
    if alpha in (0, 1, -1) or beta == 0:
        raise BadPoint(f"alpha={alpha}, beta={beta} is not admissible")
    v, e, k = F.num_vertices, F.num_edges, num_components(F)
    R, P = polys if polys is not None else (bollobas_riordan(F), homfly_formula(F))
    lhs = R.evaluate(RationalPoint.from_values({ALPHA: alpha, BETA: beta, GAMMA: gamma}))
    pref = (x * y) ** (v - e - 1) * (alpha + 1) ** e * alpha ** (1 - k)
    if reading == "plus":
        return lhs, pref * P.evaluate(RationalPoint.from_values({"x": x, "y": y}))
    if reading == "minus":
        radicand = alpha - 1
        a, b = _surd_eval(P, "x", radicand, {"y": y})
        root = _rational_sqrt(radicand)
        if root is not None:
            return lhs, (pref * (a + b * root), Fraction(0))
        return lhs, (pref * a, pref * b)
    raise ValueError(f"unknown reading {reading!r}")


def determination_points(count: int, seed: int) -> list[tuple[Fraction, Fraction]]:
    rng = random.Random(seed)
    xs = rational_pool(count, rng, exclude=(1,), positive=True)
    ys = rational_pool(count, rng, positive=True)
    return list(zip(xs, ys))


def check_determination(F: RibbonGraph, points: Sequence | None = None, count: int = 25, seed: int = 0,
                        reading: str = "plus") -> VerificationReport:
    if points is None:
        points = determination_points(count, seed)
    else:
        seed = None
    polys = (bollobas_riordan(F), homfly_formula(F))

    def evaluate(pt):
        lhs, rhs = determination_sides(F, pt[0], pt[1], reading, polys)
        if reading == "minus":
            a, b = rhs
            # irrational right side can never match a rational left side
            return lhs, (a if b == 0 else None)
        return lhs, rhs

    def describe(pt):
        return f"x={_fmt(Fraction(pt[0]))},y={_fmt(Fraction(pt[1]))}"

    name = "determination" if reading == "plus" else "determination-minus"
    for pt in points:
        lhs, rhs = evaluate(pt)
        if lhs != rhs:
            shown = "irrational" if rhs is None else _fmt(rhs)
            return VerificationReport(name, F.name, "multipoint", len(points), False,
                                      f"{describe(pt)}:lhs={_fmt(lhs)},rhs={shown}", seed)
    return VerificationReport(name, F.name, "multipoint", len(points), True, None, seed)


def _max_exp(P: LaurentPoly, var: str) -> int:
    if P.is_zero() or var not in P.variables():
        return 0
    return int(P.max_degree(var))


def tensor_c3_degree_bounds(F: RibbonGraph) -> dict[str, int]:
    """Per-variable degree bound of ``LHS - RHS`` for the C3 tensor identity.

    The right side ``(alpha+2)^n(F) R(F; alpha(alpha+2), beta/(alpha+2), gamma)``
    is a polynomial because every beta power in R(F) is at most n(F).
    """
    R = bollobas_riordan(F)
    L = bollobas_riordan(tensor_cycle(F, 3))
    n_f = F.num_edges - F.num_vertices + num_components(F)
    bounds = {var: _max_exp(L, var) for var in (ALPHA, BETA, GAMMA)}
    for mono, _ in R.items():
        md = {v: k // 2 for v, k in mono}
        a, b, c = md.get(ALPHA, 0), md.get(BETA, 0), md.get(GAMMA, 0)
        bounds[ALPHA] = max(bounds[ALPHA], 2 * a + n_f - b)
        bounds[BETA] = max(bounds[BETA], b)
        bounds[GAMMA] = max(bounds[GAMMA], c)
    return bounds


def check_tensor_c3(F: RibbonGraph, seed: int = 0) -> VerificationReport:
    """R(F (x) C3; a, b, c) = (a+2)^n(F) R(F; a(a+2), b/(a+2), c) for free a, b, c."""
    rng = random.Random(seed)
    bounds = tensor_c3_degree_bounds(F)
    alphas = rational_pool(bounds[ALPHA] + 1, rng, exclude=(-2, 0, 1))
    betas = rational_pool(bounds[BETA] + 1, rng, exclude=(0,))
    gammas = rational_pool(bounds[GAMMA] + 1, rng, exclude=(0,))
    R = bollobas_riordan(F)
    L = bollobas_riordan(tensor_cycle(F, 3))
    n_f = F.num_edges - F.num_vertices + num_components(F)
    grid = [(a, b, c) for a in alphas for b in betas for c in gammas]

    def evaluate(pt):
        a, b, c = pt
        lhs = L.evaluate(RationalPoint.from_values({ALPHA: a, BETA: b, GAMMA: c}))
        rhs = (a + 2) ** n_f * R.evaluate(
            RationalPoint.from_values({ALPHA: a * (a + 2), BETA: b / (a + 2), GAMMA: c}))
        return lhs, rhs

    def describe(pt):
        return "alpha={},beta={},gamma={}".format(*map(_fmt, pt))

    return _report_points("tensor-c3", F, grid, seed, evaluate, describe)


_G2 = "__gamma_sq"


def _gamma_squared(P: LaurentPoly) -> LaurentPoly:
    # gamma only occurs to even powers; rename gamma^2 to a fresh variable
    return P.substitute_monomial(GAMMA, {_G2: Fraction(1, 2)})


def geometric_sum(alpha: Fraction, terms: int) -> Fraction:
    """``sum_{i < terms} (alpha + 1)^i``."""
    return sum(((alpha + 1) ** i for i in range(terms)), Fraction(0))


def check_tensor_odd(F: RibbonGraph, p: int, seed: int = 0, printed_sum: bool = False) -> VerificationReport:
    """Odd-cycle tensor identity on the surface beta = alpha(1-alpha), gamma^2 = 1/(alpha beta).

    ``F (x) C(2^p + 1)`` is compared with
    ``S^n(F) R(F; (alpha+1)^(2^p) - 1, beta/S, gamma)`` where
    ``S = sum_{i=0}^{2^p - 1} (alpha+1)^i``.  ``printed_sum=True`` runs the
    sum up to ``2^p`` instead, which does not give an identity.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if F.num_edges * 2 ** p > MAX_ODD_TENSOR_EDGES:
        raise TooLarge(f"{F.name}: e(F)*2^p = {F.num_edges * 2 ** p} exceeds {MAX_ODD_TENSOR_EDGES}")
    q = 2 ** p + 1
    sum_terms = 2 ** p + 1 if printed_sum else 2 ** p
    R = bollobas_riordan(F)
    L = bollobas_riordan(tensor_cycle(F, q))
    n_f = F.num_edges - F.num_vertices + num_components(F)

    # degree of both sides after multiplying by (alpha^2 (1 - alpha))^G
    G = max(_max_exp(R, GAMMA), _max_exp(L, GAMMA)) // 2
    deg = 0
    for mono, _ in L.items():
        md = {v: k // 2 for v, k in mono}
        a, b, j = md.get(ALPHA, 0), md.get(BETA, 0), md.get(GAMMA, 0) // 2
        deg = max(deg, a + 2 * b + 3 * (G - j))
    for mono, _ in R.items():
        md = {v: k // 2 for v, k in mono}
        a, b, j = md.get(ALPHA, 0), md.get(BETA, 0), md.get(GAMMA, 0) // 2
        deg = max(deg, (sum_terms - 1) * (n_f - b) + 2 ** p * a + 2 * b + 3 * (G - j))

    rng = random.Random(seed)
    alphas = rational_pool(deg + 1, rng, exclude=(-2, 0, 1))
    L2, R2 = _gamma_squared(L), _gamma_squared(R)

    def evaluate(alpha):
        beta = alpha * (1 - alpha)
        g2 = 1 / (alpha * beta)
        S = geometric_sum(alpha, sum_terms)
        lhs = L2.evaluate(RationalPoint.from_values({ALPHA: alpha, BETA: beta, _G2: g2}))
        rhs = S ** n_f * R2.evaluate(RationalPoint.from_values(
            {ALPHA: (alpha + 1) ** (2 ** p) - 1, BETA: beta / S, _G2: g2}))
        return lhs, rhs

    name = f"tensor-odd-p{p}" + ("-printed" if printed_sum else "")
    return _report_points(name, F, alphas, seed, evaluate, lambda a: f"alpha={_fmt(a)}")


# -- batch -------------------------------------------------------------------------------

VERIFY_NAMES = ("eq12", "thm32", "duality", "determination", "tensor-c3", "tensor-odd",
                "jones-mirror", "bracket-cp", "jones-homfly", "genus", "homfly-labels")


def verify(F: RibbonGraph, which: str = "all", seed: int = 0, p: int | None = None) -> list[VerificationReport]:
    """Run one named check, or every applicable one for ``which="all"``.

    Checks that need a connected graph are skipped for disconnected input
    under ``all``; asked for by name they raise :class:`DisconnectedGraph`.
    """
    connected = is_connected(F)
    runners = {
        "eq12": lambda: [check_eq1_eq2(F)],
        "thm32": lambda: [check_thm32(F)],
        "duality": lambda: [check_duality(F)],
        "determination": lambda: [check_determination(F, seed=seed)],
        "tensor-c3": lambda: [check_tensor_c3(F, seed=seed)],
        "jones-mirror": lambda: [check_jones_mirror(F)],
        "bracket-cp": lambda: [check_bracket_vs_cp(F)],
        "jones-homfly": lambda: [check_jones_paths(F)],
        "genus": lambda: [check_genus(F)],
        "homfly-labels": lambda: [check_labels(F)],
    }
    if which == "tensor-odd":
        return [check_tensor_odd(F, p if p is not None else 1, seed=seed)]
    if which != "all":
        if which not in runners:
            raise ValueError(f"unknown identity {which!r}")
        return runners[which]()
    out = []
    for name in VERIFY_NAMES:
        if name in ("duality", "genus") and not connected:
            continue
        if name == "tensor-odd":
            pp = 1
            while F.num_edges * 2 ** pp <= MAX_ODD_TENSOR_EDGES and pp <= 2:
                out.append(check_tensor_odd(F, pp, seed=seed))
                pp += 1
            continue
        out.extend(runners[name]())
    return out
