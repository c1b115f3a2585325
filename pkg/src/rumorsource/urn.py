"""Polya urn laws behind subtree growth on regular trees.

An urn starts with b_j balls of color j and adds `eps` balls of the drawn
color after each draw.  The joint law of color counts after N draws is

    P[X = x] = multinomial(N; x) * prod_j rise(b_j, eps, x_j) / rise(sum b, eps, N)

with rise(b, e, x) = b (b+e) (b+2e) ... (b+(x-1)e).  Two parameterizations
matter here: one ball per source-neighbor subtree with eps = delta-2 (the
joint subtree split), and the (1, delta-1) two-color collapse (one subtree
against the rest).  Exact mode returns Fractions; otherwise log-gamma floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import betainc, gammaln

from .errors import ValidationError

# Exact rationals by default up to this many draws; log-domain floats beyond.
EXACT_DEFAULT_LIMIT = 500


@dataclass(frozen=True)
class PolyaSpec:
    """Urn description: initial counts per color, balls added per draw, draws.

    Zero initial counts are allowed (a zero-ball color just never gets drawn
    when eps reinforcement is absent); the total must be positive.
    """

    initial: tuple
    increment: int
    draws: int

    def __post_init__(self):
        if len(self.initial) == 0:
            raise ValidationError("urn needs at least one color")
        if any(b < 0 for b in self.initial):
            raise ValidationError(f"negative initial count in {self.initial}")
        if sum(self.initial) < 1:
            raise ValidationError("urn needs at least one ball")
        if self.increment < 0:
            raise ValidationError(f"increment must be >= 0, got {self.increment}")
        if self.draws < 0:
            raise ValidationError(f"draws must be >= 0, got {self.draws}")


def _resolve_exact(exact, size: int) -> bool:
    if exact is None:
        return size <= EXACT_DEFAULT_LIMIT
    return bool(exact)


def rising_product(b: int, eps: int, x: int) -> int:
    """b (b+eps) ... (b+(x-1)eps) as an exact integer; empty product is 1."""
    out = 1
    for i in range(x):
        out *= b + i * eps
    return out


def log_rising(b: float, eps: float, x: int) -> float:
    """log of the rising product; -inf when the product is zero."""
    if x == 0:
        return 0.0
    if eps == 0:
        return x * math.log(b) if b > 0 else -math.inf
    if b == 0:
        return -math.inf
    return x * math.log(eps) + float(gammaln(b / eps + x) - gammaln(b / eps))


def polya_joint(spec: PolyaSpec, counts, exact=None):
    """Probability that the urn ends with exactly `counts` draws per color.

    counts must be non-negative and sum to spec.draws.  Returns a Fraction
    in exact mode, a float otherwise (exact=None picks by draw count).
    """
    counts = tuple(counts)
    if len(counts) != len(spec.initial):
        raise ValidationError(
            f"{len(counts)} counts for {len(spec.initial)} colors"
        )
    if any(c < 0 for c in counts):
        raise ValidationError(f"negative count in {counts}")
    if sum(counts) != spec.draws:
        raise ValidationError(
            f"counts sum to {sum(counts)}, expected {spec.draws} draws"
        )
    use_exact = _resolve_exact(exact, spec.draws)
    b_total = sum(spec.initial)
    if use_exact:
        num = 1
        for b_j, x_j in zip(spec.initial, counts):
            num *= rising_product(b_j, spec.increment, x_j)
            if num == 0:
                return Fraction(0)
        coef = math.factorial(spec.draws)
        for x_j in counts:
            coef //= math.factorial(x_j)
        return Fraction(coef * num, rising_product(b_total, spec.increment, spec.draws))
    log_p = float(gammaln(spec.draws + 1))
    for b_j, x_j in zip(spec.initial, counts):
        log_p += log_rising(b_j, spec.increment, x_j) - float(gammaln(x_j + 1))
    log_p -= log_rising(b_total, spec.increment, spec.draws)
    return math.exp(log_p)


def tree_split_spec(delta: int, n: int) -> PolyaSpec:
    """Urn whose colors are the delta subtrees hanging off the source."""
    if delta < 2:
        raise ValidationError(f"degree must be >= 2, got {delta}")
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    return PolyaSpec(initial=(1,) * delta, increment=delta - 2, draws=n - 1)


def tree_split_joint(delta: int, counts, n: int, exact=None):
    """Joint law of the delta subtree sizes around the source at n infected."""
    counts = tuple(counts)
    if len(counts) != delta:
        raise ValidationError(f"need {delta} subtree counts, got {len(counts)}")
    return polya_joint(tree_split_spec(delta, n), counts, exact=exact)


def tree_split_marginal(delta: int, x1: int, n: int, exact=None):
    """Law of one subtree's size against the other delta-1 combined."""
    if delta < 2:
        raise ValidationError(f"degree must be >= 2, got {delta}")
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    spec = PolyaSpec(initial=(1, delta - 1), increment=delta - 2, draws=n - 1)
    return polya_joint(spec, (x1, n - 1 - x1), exact=exact)


def incomplete_beta(x: float, alpha: float, beta: float) -> float:
    """Regularized incomplete beta I_x(alpha, beta)."""
    if not 0.0 <= x <= 1.0:
        raise ValidationError(f"x must lie in [0, 1], got {x}")
    if alpha <= 0 or beta <= 0:
        raise ValidationError(f"shape parameters must be positive, got {alpha}, {beta}")
    return float(betainc(alpha, beta, x))


def limit_split_cdf(delta: int, x: float) -> float:
    """Limiting CDF of (leading subtree size)/n: I_x(1/(delta-2), (delta-1)/(delta-2)).

    Needs delta >= 3; at delta = 2 the normalized size converges to a point
    mass and no continuous limit exists.
    """
    if delta < 3:
        raise ValidationError("limiting split law needs degree >= 3")
    e = delta - 2
    return incomplete_beta(x, 1.0 / e, (delta - 1.0) / e)


def chain_root_pmf(delta: int, n: int, z1: int, exact=None):
    """P[first subtree toward the second suspect has z1 of n-1 infections]."""
    if not 0 <= z1 <= n - 1:
        raise ValidationError(f"z1 must lie in [0, {n - 1}], got {z1}")
    return tree_split_marginal(delta, z1, n, exact=exact)


def chain_step_pmf(delta: int, parent_count: int, child_count: int, exact=None):
    """One step down the suspect path: next subtree size given the previous.

    Given z infections fell in the subtree at distance h-1, the subtree one
    edge further holds Z_h of z-1 remaining slots with urn ((1, delta-2),
    eps=delta-2).  At delta=2 this degenerates to Z_h = z-1 surely.
    """
    if parent_count < 1:
        raise ValidationError(f"parent count must be >= 1, got {parent_count}")
    if not 0 <= child_count <= parent_count - 1:
        raise ValidationError(
            f"child count must lie in [0, {parent_count - 1}], got {child_count}"
        )
    spec = PolyaSpec(initial=(1, delta - 2), increment=delta - 2,
                     draws=parent_count - 1)
    return polya_joint(spec, (child_count, parent_count - 1 - child_count),
                       exact=exact)


def path_chain_joint(delta: int, n: int, z, exact=None):
    """Joint law of subtree sizes along a path away from the source.

    z = (z_1, ..., z_d): z_h counts infections in the subtree rooted at the
    h-th node of the path (toward the far endpoint).  The sequence must be
    strictly decreasing with z_d >= 1 and z_1 <= n-1; the chain is Markov,
    root marginal times per-edge steps.
    """
    z = tuple(z)
    if not z:
        raise ValidationError("need at least one path subtree size")
    if any(a <= b for a, b in zip(z, z[1:])):
        raise ValidationError(f"path sizes must strictly decrease, got {z}")
    if z[-1] < 1:
        raise ValidationError(f"innermost size must be >= 1, got {z[-1]}")
    if z[0] > n - 1:
        raise ValidationError(f"z1 must be <= n-1 = {n - 1}, got {z[0]}")
    use_exact = _resolve_exact(exact, n)
    p = chain_root_pmf(delta, n, z[0], exact=use_exact)
    for prev, cur in zip(z, z[1:]):
        p *= chain_step_pmf(delta, prev, cur, exact=use_exact)
    return p
