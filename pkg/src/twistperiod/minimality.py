"""Minimal models and the scaling factor of a minimal quadratic twist.

Two independent routes live here.

The general route is Laska-Kraus-Connell minimization: scale a rational model
to an integral one, strip the largest u with u^4 | c4, u^6 | c6, u^12 | delta
subject to Kraus's integrality conditions at 2 and 3, and rebuild the
canonical reduced model (a1, a3 in {0,1}, a2 in {-1,0,1}) from the reduced
(c4, c6) pair.

The twist-specific route is a prime-by-prime case table: starting from a
MINIMAL model m and a square-free d, the p-adic signature
(v_p(c4), v_p(c6), v_p(delta)) of m determines, for every prime p, both the
p-part u_p of the scaling factor taking twist(m, d) to its minimal model and
the discriminant valuation of that minimal model. The product
utilde = prod_p u_p is a positive rational with 2*utilde integral, and the
minimizing coordinate change has scale exactly utilde. minimal_model_of_twist
runs both routes and cross-checks them.

Case labels: for odd p | d the gauge lambda = min{3*v_p(c4), 2*v_p(c6),
v_p(delta)} decides between "1a" (u_p = 1) and "1b" (u_p = p); odd p not
dividing d never changes anything; at p = 2 the label depends on d mod 4 and
the 2-adic signature ("2a", "2b-i".."2b-iii", "2c-i".."2c-iv").
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exact import INFINITY, ExtendedValuation, factorize, odd_prime_divisors, vp
from .twisting import twist
from .weierstrass import Transformation, WeierstrassModel, padic_signature

CASE_LABELS = (
    "1a",
    "1b",
    "odd-p-not-dividing-d",
    "2a",
    "2b-i",
    "2b-ii",
    "2b-iii",
    "2c-i",
    "2c-ii",
    "2c-iii",
    "2c-iv",
)

class ConsistencyError(RuntimeError):
    """Internal cross-check failure (table vs minimization disagreement)."""


@dataclass(frozen=True)
class MinimalModelResult:
    """A minimal model together with the exact coordinate change reaching it.

    map.apply(input) == minimal, with map.u > 0. The minimal model is the
    canonical reduced one, so c4, c6 and delta do not depend on arbitrary
    choices.
    """

    minimal: WeierstrassModel
    map: Transformation


@dataclass(frozen=True)
class UTildeResult:
    """Per-prime scaling factors of a minimal quadratic twist.

    per_prime maps each relevant prime (2 and the odd divisors of d) to its
    (u_p, case label) pair; utilde is the product of the u_p.
    """

    per_prime: Mapping[int, tuple[Fraction, str]]
    utilde: Fraction

    def case_labels(self) -> list[str]:
        return [self.per_prime[p][1] for p in sorted(self.per_prime)]

    def to_json_dict(self) -> dict:
        return {
            "per_prime": [
                {"p": p, "u_p": str(self.per_prime[p][0]), "case": self.per_prime[p][1]}
                for p in sorted(self.per_prime)
            ],
            "utilde": str(self.utilde),
        }


def signature_gauge(m: WeierstrassModel, p: int) -> ExtendedValuation:
    """min{3*v_p(c4), 2*v_p(c6), v_p(delta)}: decides the odd-prime cases."""
    sig = padic_signature(m, p)
    return min(3 * sig.vc4, 2 * sig.vc6, sig.vdelta)


def _shifted_residue(c6: Fraction, k: int, mult: int) -> int | None:
    """(c6 / 2^k * mult) mod 4, or None when 2^k does not divide c6 exactly."""
    if c6.denominator != 1:
        return None
    n = int(c6)
    if n % (1 << k):
        return None
    return (n >> k) * mult % 4


def _classify(m: WeierstrassModel, d: int, p: int) -> tuple[str, Fraction, int]:
    """(case label, u_p, v_p(delta) shift) for the minimal twist of m by d.

    m must be minimal for the answer to be meaningful. Exactly one label
    applies to every (m, d, p).
    """
    if p == 2:
        return _classify_at_two(m, d)
    if d % p == 0:
        sig = padic_signature(m, p)
        gauge = min(3 * sig.vc4, 2 * sig.vc6, sig.vdelta)
        if gauge < 6 or (p == 3 and sig.vc6 == 5):
            return "1a", Fraction(1), 6
        return "1b", Fraction(p), -6
    return "odd-p-not-dividing-d", Fraction(1), 0


def _classify_at_two(m: WeierstrassModel, d: int) -> tuple[str, Fraction, int]:
    sig = padic_signature(m, 2)
    a, b, c = sig.vc4, sig.vc6, sig.vdelta
    c6 = m.invariants.c6
    if d % 4 == 1:
        return "2a", Fraction(1), 0
    if d % 4 == 3:
        if (a == 0 and b == 0) or (b == 3 and c == 0 and a >= 4):
            return "2b-i", Fraction(1, 2), 12
        if (a == 4 and b == 6 and c >= 12 and _shifted_residue(c6, 6, d) == 3) or (
            b == 9 and c == 12 and a >= 8 and _shifted_residue(c6, 9, d) == 1
        ):
            return "2b-ii", Fraction(2), -12
        return "2b-iii", Fraction(1), 0
    # d even: d = 2w with w odd since d is square-free.
    w = d // 2
    if a == 0 and b == 0:
        return "2c-i", Fraction(1, 2), 18
    if a == 6 and b == 9 and c >= 18 and _shifted_residue(c6, 9, w) == 3:
        return "2c-ii", Fraction(4), -18
    if (
        a in (4, 5)
        or b in (3, 5, 7)
        or (b == 6 and c == 6 and a >= 6 and _shifted_residue(c6, 6, w) == 3)
    ):
        return "2c-iii", Fraction(1), 6
    return "2c-iv", Fraction(2), -6


def utilde_factor_at(m: WeierstrassModel, d: int, p: int) -> tuple[Fraction, str]:
    """(u_p, case label) at prime p for the minimal twist of the minimal
    model m by square-free d."""
    label, u_p, _ = _classify(m, d, p)
    return u_p, label


def minimal_twist_discriminant_valuation(
    m: WeierstrassModel, d: int, p: int
) -> int:
    """Predicted v_p(delta) of the minimal model of twist(m, d), for minimal m."""
    _, _, shift = _classify(m, d, p)
    v = vp(m.invariants.delta, p)
    return v + shift


def compute_utilde(m: WeierstrassModel, d: int) -> UTildeResult:
    """The scaling factor utilde of the minimal twist of m by square-free d.

    m is minimized first, so the result always refers to the twist of the
    minimal model. The relevant primes are 2 and the odd primes dividing d;
    every other prime contributes u_p = 1.
    """
    mm = minimize(m).minimal
    per_prime: dict[int, tuple[Fraction, str]] = {}
    utilde = Fraction(1)
    for p in [2] + odd_prime_divisors(d):
        u_p, label = utilde_factor_at(mm, d, p)
        per_prime[p] = (u_p, label)
        utilde *= u_p
    return UTildeResult(per_prime=per_prime, utilde=utilde)


# ---------------------------------------------------------------------------
# Laska-Kraus-Connell minimization
# ---------------------------------------------------------------------------


def _kraus_at_3(c6: int) -> bool:
    return vp(c6, 3) != 2


def _kraus_at_2(c4: int, c6: int) -> bool:
    return c6 % 4 == 3 or (c4 % 16 == 0 and c6 % 32 in (0, 8))


def _least_integral_scale(m: WeierstrassModel) -> int:
    """Least n >= 1 with a_i * n^i integral for all coefficients."""
    weights = (1, 2, 3, 4, 6)
    exponents: dict[int, int] = {}
    for a, w in zip(m.ainvs, weights):
        den = a.denominator
        if den == 1:
            continue
        for q, e in factorize(den).items():
            need = -(-e // w)  # ceil(e / w)
            if exponents.get(q, 0) < need:
                exponents[q] = need
    n = 1
    for q, e in exponents.items():
        n *= q**e
    return n


def _candidate_primes(c4: int, c6: int) -> list[int]:
    """Primes that could divide the minimization scale u.

    Such p satisfy p^4 | c4 and p^6 | c6, so p divides gcd(c4, c6) when both
    are nonzero; only one of them can vanish.
    """
    if c4 != 0 and c6 != 0:
        base = math.gcd(abs(c4), abs(c6))
    else:
        base = abs(c6) if c4 == 0 else abs(c4)
    return sorted(factorize(base)) if base > 1 else []


def _reduction_exponent(p: int, c4: int, c6: int, delta: int) -> int:
    """Largest e with (c4/p^4e, c6/p^6e, delta/p^12e) still a valid integral
    invariant triple (Kraus conditions enforced at 2 and 3)."""
    bounds = [vp(delta, p) // 12]
    if c4 != 0:
        bounds.append(vp(c4, p) // 4)
    if c6 != 0:
        bounds.append(vp(c6, p) // 6)
    e = min(bounds)
    if p == 2:
        while e > 0 and not _kraus_at_2(c4 // 2 ** (4 * e), c6 // 2 ** (6 * e)):
            e -= 1
    elif p == 3:
        while e > 0 and not _kraus_at_3(c6 // 3 ** (6 * e)):
            e -= 1
    return e


def _model_from_c4c6(c4: int, c6: int) -> WeierstrassModel:
    """The canonical reduced integral model with the given invariants.

    b2 is the representative of -c6 mod 12 in {0, 1, 4, 5, -4, -3}, the set
    of residues with b2 === 0 or 1 mod 4 (equivalently b2^3 === b2 mod 12).
    """
    r = (-c6) % 12
    if r not in (0, 1, 4, 5, 8, 9):
        raise ConsistencyError(f"(c4, c6) = ({c4}, {c6}) admits no integral model")
    b2 = r if r <= 5 else r - 12
    num_b4 = b2 * b2 - c4
    num_b6 = -(b2**3) + 36 * b2 * (num_b4 // 24) - c6
    if num_b4 % 24 or num_b6 % 216:
        raise ConsistencyError(f"(c4, c6) = ({c4}, {c6}) admits no integral model")
    b4 = num_b4 // 24
    b6 = num_b6 // 216
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    if (b4 - a1 * a3) % 2 or (b6 - a3) % 4:
        raise ConsistencyError(f"(c4, c6) = ({c4}, {c6}) admits no integral model")
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    model = WeierstrassModel(a1, a2, a3, a4, a6)
    inv = model.invariants
    if inv.c4 != c4 or inv.c6 != c6:
        raise ConsistencyError("reconstructed model does not match its invariants")
    return model


def _solve_transformation(
    source: WeierstrassModel, target: WeierstrassModel, u: Fraction
) -> Transformation:
    """The [u, r, s, t] with the given positive u taking source to target.

    Always solvable when the models are related by scale +-u: composing with
    the inversion automorphism [-1, 0, -a1, -a3] of the target flips the sign
    of u, so the positive choice works.
    """
    a1, a2, a3, _, _ = source.ainvs
    n1, n2, n3, _, _ = target.ainvs
    s = (u * n1 - a1) / 2
    r = (u * u * n2 - a2 + s * a1 + s * s) / 3
    t = (u**3 * n3 - a3 - r * a1) / 2
    candidate = Transformation(u, r, s, t)
    if candidate.apply(source) != target:
        raise ConsistencyError(
            f"no [u, r, s, t] with u = {u} takes {source} to {target}"
        )
    return candidate


def minimize(m: WeierstrassModel) -> MinimalModelResult:
    """The canonical minimal model of m and the exact map reaching it.

    Laska-Kraus-Connell: integralize, strip the largest admissible scale u
    prime by prime, rebuild the reduced model from the reduced (c4, c6).
    Idempotent, and the map scale is 1 exactly when m is already minimal.
    """
    n = _least_integral_scale(m)
    integral = Transformation(Fraction(1, n)).apply(m) if n > 1 else m
    inv = integral.invariants
    c4, c6, delta = int(inv.c4), int(inv.c6), int(inv.delta)
    u_red = 1
    for p in _candidate_primes(c4, c6):
        e = _reduction_exponent(p, c4, c6, delta)
        if e:
            u_red *= p**e
    minimal = _model_from_c4c6(c4 // u_red**4, c6 // u_red**6)
    mapping = _solve_transformation(m, minimal, Fraction(u_red, n))
    return MinimalModelResult(minimal=minimal, map=mapping)


def minimal_model_of_twist(
    m: WeierstrassModel, d: int
) -> tuple[MinimalModelResult, UTildeResult]:
    """Minimize twist(minimize(m), d), cross-checking the case table.

    The scale of the minimizing map must equal utilde from the per-prime
    table, and delta(twist) / delta(minimal twist) must equal utilde^12
    exactly; ConsistencyError otherwise.
    """
    mm = minimize(m).minimal
    report = compute_utilde(mm, d)
    twisted = twist(mm, d)
    result = minimize(twisted)
    if result.map.u != report.utilde:
        raise ConsistencyError(
            f"table utilde = {report.utilde} but minimization found scale "
            f"{result.map.u} for d = {d}, curve {mm}"
        )
    ratio = twisted.delta / result.minimal.delta
    if ratio != report.utilde**12:
        raise ConsistencyError(
            f"discriminant ratio {ratio} is not utilde^12 for d = {d}, curve {mm}"
        )
    return result, report
