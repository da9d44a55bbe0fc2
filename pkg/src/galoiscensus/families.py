"""Generators for the lower-bound construction families, each cross-validated
against the classifier.

Square-root range conditions are decided by exact squared comparisons, never
floats, so boundary tuples land on the correct side.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classify import (
    MonicCubic,
    MonicQuartic,
    classify_cubic,
    classify_quartic,
    disc_quartic,
    resolvent_integer_roots,
)

__all__ = [
    "FamilyMember",
    "CrossValidationReport",
    "gen_d4vc_family",
    "gen_v4_biquadratic",
    "gen_a4_family",
    "gen_a3_family",
    "cross_validate",
]


@dataclass(frozen=True)
class FamilyMember:
    family: str
    params: tuple[tuple[str, int], ...]
    coeffs: tuple[int, ...]
    expected: tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def polynomial(self) -> MonicCubic | MonicQuartic:
        return MonicCubic(*self.coeffs) if self.degree == 3 else MonicQuartic(*self.coeffs)

    def to_json(self, classified: str | None = None) -> str:
        payload = {
            "family": self.family,
            "params": dict(self.params),
            "coeffs": list(self.coeffs),
        }
        if classified is not None:
            payload["class"] = classified
        return json.dumps(payload)


@dataclass
class CrossValidationReport:
    members_checked: int = 0
    mismatches: list = field(default_factory=list)
    exceptions: list = field(default_factory=list)  # side condition not met; recorded, not failed
    classes: dict = field(default_factory=dict)
    labels: list = field(default_factory=list)  # per-member, in input order

    @property
    def mismatch_count(self) -> int:
        return len(self.mismatches)

    def to_json(self) -> str:
        return json.dumps(
            {
                "members_checked": self.members_checked,
                "mismatch_count": self.mismatch_count,
                "mismatches": self.mismatches,
                "exceptions": self.exceptions,
                "classes": self.classes,
            }
        )


# ---------------------------------------------------------------------------
# the D4/V4/C4 construction: x, a, u, w = 12 (mod 18), v = 4 (mod 6),
# u squarefree, with windows pinning x ~ v sqrt(u) and a ~ w sqrt(u)

def _squarefree_u_values(u_max: int) -> np.ndarray:
    """Squarefree u = 12 (mod 18) up to u_max, by sieving k with u = 12 + 18k.

    9 never divides such u, and 4 | u exactly when k is even; odd primes
    p >= 5 contribute the residue class k = -12/18 (mod p^2).
    """
    if u_max < 12:
        return np.zeros(0, dtype=np.int64)
    n_k = (u_max - 12) // 18 + 1
    flags = np.ones(n_k, dtype=bool)
    flags[0::2] = False  # k even <=> 4 | u
    limit = math.isqrt(u_max)
    if limit >= 5:
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        for p in np.nonzero(sieve)[0]:
            p = int(p)
            if p < 5:
                continue
            p2 = p * p
            k0 = (-12 * pow(18, -1, p2)) % p2
            if k0 < n_k:
                flags[k0::p2] = False
    ks = np.nonzero(flags)[0]
    return 12 + 18 * ks.astype(np.int64)


def _floor_div_sqrt(num: int, square: int) -> int:
    """floor(num / sqrt(square)) for num >= 0, square >= 1, exactly."""
    return math.isqrt(num * num // square)


def _cong_range(lo: int, hi: int, residue: int, modulus: int) -> range:
    """Integers in [lo, hi] congruent to residue mod modulus."""
    start = lo + (residue - lo) % modulus
    return range(start, hi + 1, modulus)


def gen_d4vc_family(height: int, delta: Fraction = Fraction(1, 5)) -> list[FamilyMember]:
    """All admissible (u, v, w, x, a) tuples and their quartics (a, b, c, d).

    Ranges: 1 <= u <= H^(2-2*delta); delta^-1 sqrt(H) <= v sqrt(u)/2 <=
    w sqrt(u) <= v sqrt(u) <= delta^2 H; then x and a sit in windows of
    length delta*H/(v sqrt(u)) above v sqrt(u) and w sqrt(u).  Coefficients
    come from 4d = x^2 - u v^2, 4(b - x) = a^2 - u w^2, 2c = x a - u v w.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    H = height
    p, q = delta.numerator, delta.denominator
    members: list[FamilyMember] = []

    # u <= H^(2 - 2 delta)  <=>  u^q <= H^(2q - 2p)
    hpow = H ** (2 * q - 2 * p)
    # v >= 4 and v sqrt(u) <= delta^2 H bound u as well
    u_cap = (p * p * H) ** 2 // (q * q * q * q * 16) + 1
    u_values = _squarefree_u_values(u_cap)
    for u in u_values:
        u = int(u)
        if u**q > hpow:
            continue
        # 2 delta^-1 sqrt(H) <= v sqrt(u)   <=>   p^2 u v^2 >= 4 q^2 H
        # v sqrt(u) <= delta^2 H            <=>   q^2 v sqrt(u) <= p^2 H
        v_hi = _floor_div_sqrt(p * p * H, q**4 * u)
        num = 4 * q * q * H
        v_lo = math.isqrt((num + p * p * u - 1) // (p * p * u))
        while p * p * u * v_lo * v_lo < num:
            v_lo += 1
        for v in _cong_range(max(v_lo, 1), v_hi, 4, 6):
            uv2 = u * v * v
            # x window: v sqrt(u) < x <= v sqrt(u) + delta H / (v sqrt(u))
            #   upper  <=>  q x v sqrt(u) <= q u v^2 + p H
            x_hi_sq = (q * uv2 + p * H) ** 2 // (q * q * uv2)
            xs = [
                x
                for x in _cong_range(math.isqrt(uv2) + 1, math.isqrt(x_hi_sq), 12, 18)
                if x * x > uv2 and (q * x * v) ** 2 * u <= (q * uv2 + p * H) ** 2
            ]
            if not xs:
                continue
            for w in _cong_range((v + 1) // 2, v, 12, 18):
                uw2 = u * w * w
                # a window: w sqrt(u) < a <= w sqrt(u) + delta H / (v sqrt(u))
                #   upper  <=>  q a v sqrt(u) <= q u v w + p H
                a_hi_sq = (q * u * v * w + p * H) ** 2 // (q * q * uv2)
                for a in _cong_range(math.isqrt(uw2) + 1, math.isqrt(a_hi_sq), 12, 18):
                    if a * a <= uw2 or (q * a * v) ** 2 * u > (q * u * v * w + p * H) ** 2:
                        continue
                    for x in xs:
                        d, rem_d = divmod(x * x - uv2, 4)
                        e, rem_e = divmod(a * a - uw2, 4)
                        c2, rem_c = divmod(x * a - u * v * w, 2)
                        assert rem_d == rem_e == rem_c == 0  # forced by the congruences
                        b = x + e
                        members.append(
                            FamilyMember(
                                family="d4vc",
                                params=(
                                    ("u", u), ("v", v), ("w", w), ("x", x), ("a", a),
                                    ("H", H),
                                    ("delta_num", p), ("delta_den", q),
                                ),
                                coeffs=(a, b, c2, d),
                                expected=("D4", "V4", "C4"),
                            )
                        )
    return members


def gen_v4_biquadratic(height: int) -> list[FamilyMember]:
    """X^4 + b X^2 + t^2 with b = 0 (4), t = 1 (4), H/2 <= b <= H, t <= sqrt(H).

    Empty below the smallest admissible height 8.
    """
    if height < 8:
        return []
    members = []
    b_lo = -((-height) // 2)  # ceil(H/2)
    for b in _cong_range(b_lo, height, 0, 4):
        for t in _cong_range(1, math.isqrt(height), 1, 4):
            members.append(
                FamilyMember(
                    family="v4-biquadratic",
                    params=(("b", b), ("t", t), ("H", height)),
                    coeffs=(0, b, 0, t * t),
                    expected=("V4",),
                )
            )
    return members


def gen_a4_family(bound: int) -> list[FamilyMember]:
    """X^4 + 18 v^2 X^2 + 8 u v X + u^2 for 1 <= u, v <= bound.

    The discriminant equals (16 (27 u v^4 + u^3))^2 identically; the A4
    classification holds for the (almost all) specializations where both f
    and its resolvent stay irreducible, so that condition is checked at
    validation time rather than assumed.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    members = []
    for u in range(1, bound + 1):
        for v in range(1, bound + 1):
            members.append(
                FamilyMember(
                    family="a4",
                    params=(("u", u), ("v", v)),
                    coeffs=(0, 18 * v * v, 8 * u * v, u * u),
                    expected=("A4",),
                )
            )
    return members


def gen_a3_family(t_lo: int, t_hi: int) -> list[FamilyMember]:
    """The one-parameter cyclic family X^3 + t X^2 + (t - 3) X - 1."""
    return [
        FamilyMember(
            family="a3",
            params=(("t", t),),
            coeffs=(t, t - 3, -1),
            expected=("A3",),
        )
        for t in range(t_lo, t_hi + 1)
    ]


# ---------------------------------------------------------------------------
# validation

def _check_member(member: FamilyMember) -> dict:
    """Classify one member and evaluate its family-specific predicates.

    Returns {"label", "ok", "exception", "note"}."""
    poly = member.polynomial()
    if member.degree == 3:
        label = classify_cubic(poly).value
    else:
        label = classify_quartic(poly).group.value

    ok, exception, note = True, False, ""
    if member.family == "d4vc":
        ok, note = _validate_d4vc(member, label)
    elif member.family == "a4":
        u = dict(member.params)["u"]
        v = dict(member.params)["v"]
        if disc_quartic(poly) != (16 * (27 * u * v**4 + u**3)) ** 2:
            ok, note = False, "discriminant identity failed"
        elif label == "reducible" or resolvent_integer_roots(poly):
            # Hilbert-irreducibility exceptions: recorded, not mismatches
            exception, note = True, f"side condition not met (class {label})"
        elif label not in member.expected:
            ok, note = False, f"classified {label}"
    else:
        if label not in member.expected:
            ok, note = False, f"classified {label}"
    return {"label": label, "ok": ok, "exception": exception, "note": note}


def _validate_d4vc(member: FamilyMember, label: str) -> tuple[bool, str]:
    params = dict(member.params)
    H, x = params["H"], params["x"]
    a, b, c, d = member.coeffs
    four_d = 4 * d
    four_e = 4 * (b - x)
    two_c = 2 * c
    if not (0 < four_d < H and 0 < four_e < H and 0 < two_c < H):
        return False, "range predicate failed"
    if any(abs(t) > H for t in member.coeffs):
        return False, "height exceeded"
    if any(t % 3 for t in member.coeffs):
        return False, "coefficients not all divisible by 3"
    if d % 9 == 0:
        return False, "9 divides d (Eisenstein at 3 fails)"
    if label not in member.expected:
        return False, f"classified {label}"
    return True, ""


def cross_validate(members: list[FamilyMember], workers: int = 1) -> CrossValidationReport:
    """Classify every member and tally mismatches against the family contract."""
    report = CrossValidationReport()
    if workers > 1 and len(members) > 256:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_member, members, chunksize=512))
    else:
        results = [_check_member(m) for m in members]
    for member, res in zip(members, results):
        report.members_checked += 1
        report.labels.append(res["label"])
        report.classes[res["label"]] = report.classes.get(res["label"], 0) + 1
        entry = {
            "family": member.family,
            "params": dict(member.params),
            "coeffs": list(member.coeffs),
            "class": res["label"],
            "note": res["note"],
        }
        if res["exception"]:
            report.exceptions.append(entry)
        elif not res["ok"]:
            report.mismatches.append(entry)
    return report
