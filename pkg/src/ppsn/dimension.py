"""Combinatorial dimension formulas for polynomial spaces along manifolds.

Two independent routes compute the dimension of the degree-<=m polynomial
space restricted to a complete-intersection-type manifold with degree
vector (k_1..k_s) in n-space:

  * generating-function route: the coefficient of t^j in
    (1 - t^{k_1}) ... (1 - t^{k_s}) * (1 - t)^{-n}, accumulated;
  * nested backward differences of the binomials C(m+n, n).

They agree on every valid profile; `dim_along` checks the identity on
every call and fails loudly on mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InputError, InternalCheckError


def binom_e(m: int, n: int) -> int:
    """C(m+n, n), with the convention that it vanishes for m < 0."""
    if m < 0:
        return 0
    return math.comb(m + n, n)


def backward_diff_e(m: int, n: int, ks: Sequence[int]) -> int:
    """Nested backward difference of C(m+n, n) with steps k_1..k_s."""
    if not ks:
        return binom_e(m, n)
    head = list(ks[:-1])
    k = ks[-1]
    return backward_diff_e(m, n, head) - backward_diff_e(m - k, n, head)


@dataclass(frozen=True)
class DegreeProfile:
    """Ambient dimension n plus the degree vector of the defining hypersurfaces."""

    n: int
    ks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        if self.n < 1:
            raise InputError("ambient dimension must be >= 1")
        if not 1 <= len(self.ks) <= self.n:
            raise InputError(
                f"number of hypersurfaces must be between 1 and n={self.n}"
            )
        if any(k < 1 for k in self.ks):
            raise InputError("all hypersurface degrees must be >= 1")

    @property
    def s(self) -> int:
        return len(self.ks)

    @property
    def M(self) -> int:
        """Sum of the degrees minus n; may be negative."""
        return sum(self.ks) - self.n

    @property
    def L(self) -> int:
        return min(self.ks)

    @property
    def N(self) -> int:
        """Product of the degrees; defined only for the 0-dimensional case s = n."""
        if self.s != self.n:
            raise InputError("point count N is defined only when s = n")
        return math.prod(self.ks)


@dataclass(frozen=True)
class HilbertTable:
    """h, cumulative H and Macaulay d sequences for one profile, degrees 0..mmax."""

    profile: DegreeProfile
    mmax: int
    h: Tuple[int, ...]
    H: Tuple[int, ...]
    d: Tuple[int, ...]


def series_numerator(ks: Sequence[int], mmax: int) -> List[int]:
    """Coefficients of the product (1 - t^{k_1}) ... (1 - t^{k_s}), truncated."""
    coeffs = [0] * (mmax + 1)
    coeffs[0] = 1
    for k in ks:
        nxt = list(coeffs)
        for j in range(k, mmax + 1):
            nxt[j] -= coeffs[j - k]
        coeffs = nxt
    return coeffs


def hilbert_table(profile: DegreeProfile, mmax: int) -> HilbertTable:
    """Exact truncated series expansion of the profile's generating function."""
    if mmax < 0:
        raise InputError("mmax must be >= 0")
    num = series_numerator(profile.ks, mmax)
    n = profile.n
    h: List[int] = []
    for j in range(mmax + 1):
        # multiply by (1 - t)^{-n}, whose t^i coefficient is C(i+n-1, n-1)
        h.append(sum(num[i] * binom_e(j - i, n - 1) for i in range(j + 1)))
    H: List[int] = []
    acc = 0
    for val in h:
        acc += val
        H.append(acc)
    d = [binom_e(j, n - 1) - h[j] for j in range(mmax + 1)]
    return HilbertTable(profile=profile, mmax=mmax, h=tuple(h), H=tuple(H), d=tuple(d))


def dim_along(m: int, profile: DegreeProfile) -> int:
    """Dimension of the degree-<=m polynomial space along the manifold.

    Cross-checks the generating-function value against the backward
    difference on every call; disagreement is an implementation bug.
    Negative m denotes the zero space and has dimension 0.
    """
    if m < 0:
        return 0
    value = hilbert_table(profile, m).H[m]
    check = backward_diff_e(m, profile.n, profile.ks)
    if value != check:
        raise InternalCheckError(
            f"dimension cross-check failed for {profile}, m={m}: "
            f"series gives {value}, backward difference gives {check}"
        )
    return value


def curve_dimension_closed_form(m: int, profile: DegreeProfile) -> int:
    """Closed form for s = n-1 and m >= M: (1/2) k_1...k_{n-1} (2m + n + 1 - sum k_i)."""
    if profile.s != profile.n - 1:
        raise InputError("closed form applies only to s = n-1")
    if m < profile.M:
        raise InputError(f"closed form requires m >= {profile.M}")
    twice = math.prod(profile.ks) * (2 * m + profile.n + 1 - sum(profile.ks))
    if twice % 2:
        raise InternalCheckError("curve dimension closed form is not an integer")
    return twice // 2
