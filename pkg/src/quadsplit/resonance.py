"""Resonant structure of the frequency vector (1, Omega) for quadratic Omega.

Every integer vector k with |<k, omega>| < 1/2 lies on exactly one orbit
s(j, n) = U^n k0(j) of the period matrix U of the continued fraction of
Omega.  Along each orbit the product gamma_k = |<k, omega>| * |k|_1 tends
to a limit gamma*_j that this module computes exactly from the eigenvectors
of U in Q(sqrt(D)), and certifies to be globally minimal at j = j0 by a
window bound on unexplored seeds plus an independent brute-force scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .surd import PeriodicCF, QuadSurd, cf_value


class ResonanceError(RuntimeError):
    """An exact identity that the construction relies on failed to hold."""


class CertificationError(RuntimeError):
    """The seed scan could not certify minimality within the allowed range."""


class IntVec2(NamedTuple):
    k1: int
    k2: int

    @property
    def norm1(self) -> int:
        return abs(self.k1) + abs(self.k2)

    def cross(self, other: "IntVec2") -> int:
        return self.k1 * other.k2 - self.k2 * other.k1

    def __neg__(self) -> "IntVec2":
        return IntVec2(-self.k1, -self.k2)


class IntMat2(NamedTuple):
    """Integer 2x2 matrix with rows (a, b) and (c, d)."""

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @classmethod
    def identity(cls) -> "IntMat2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def vec(self, v: IntVec2) -> IntVec2:
        return IntVec2(self.a * v.k1 + self.b * v.k2, self.c * v.k1 + self.d * v.k2)

    def inverse(self) -> "IntMat2":
        det = self.det
        if det not in (1, -1):
            raise ValueError(f"matrix with determinant {det} has no integer inverse")
        return IntMat2(self.d * det, -self.b * det, -self.c * det, self.a * det)


def dot_omega(k: IntVec2, omega: QuadSurd) -> QuadSurd:
    """Exact value of <k, (1, Omega)> = k1 + k2*Omega."""
    return omega * k.k2 + k.k1


def gamma_k(k: IntVec2, omega: QuadSurd) -> QuadSurd:
    """The resonance numerator |<k, omega>| * |k|_1, exact in Q(sqrt(D))."""
    if k.k1 == 0 and k.k2 == 0:
        raise ValueError("gamma_k is undefined for the zero vector")
    return abs(dot_omega(k, omega)) * k.norm1


def build_U(cf: PeriodicCF) -> tuple[IntMat2, QuadSurd, int]:
    """Period matrix U, its eigenvalue lambda > 1 (exact) and sign sigma.

    U is (-1)^m times the product of the inverses [[0,1],[1,-a_l]] of the
    digit matrices [[a_l,1],[1,0]].  The defining identity
    U^T (1, Omega) = sigma * lambda^{-1} * (1, Omega), sigma = det U,
    is verified exactly before returning; it is the backbone of everything
    the resonant sequences do, so a failure here is a hard error.
    """
    m = cf.m
    u = IntMat2.identity()
    for dig in cf.period:
        u = u @ IntMat2(0, 1, 1, -dig)
    if m % 2:
        u = IntMat2(-u.a, -u.b, -u.c, -u.d)
    sigma = u.det
    if sigma != (-1) ** m:
        raise ResonanceError(f"det U = {sigma} differs from (-1)^m for {cf}")

    omega = cf_value(cf)
    first = dot_omega(IntVec2(u.a, u.c), omega)   # (U^T omega)_1 = sigma/lambda
    if first.is_zero:
        raise ResonanceError(f"U^T omega degenerates for {cf}")
    lam = first.inverse() * sigma
    second = dot_omega(IntVec2(u.b, u.d), omega)  # (U^T omega)_2
    if second != first * omega:
        raise ResonanceError(f"U^T omega is not proportional to omega for {cf}")
    if not lam > 1:
        raise ResonanceError(f"expansion eigenvalue {float(lam)} is not > 1 for {cf}")
    if lam * lam - lam * u.trace + sigma != 0:
        raise ResonanceError(f"lambda fails the characteristic equation for {cf}")
    return u, lam, sigma


@dataclass
class ResonantSequence:
    """One orbit s(j, n) = U^n k0(j) with its growth and numerator limits.

    K and gamma_star are double-precision copies of the exact surds kept in
    K_exact / gamma_star_exact for auditing.  role is one of "primary",
    "main-secondary", "secondary".
    """

    j: int
    k0: IntVec2
    U: IntMat2
    K: float
    gamma_star: float
    K_exact: QuadSurd
    gamma_star_exact: QuadSurd
    w0_abs: float                 # |<k0, omega>|
    role: str = "secondary"
    _members: list[IntVec2] = field(default_factory=list, repr=False)

    def member(self, n: int) -> IntVec2:
        if not self._members:
            self._members.append(self.k0)
        while len(self._members) <= n:
            self._members.append(self.U.vec(self._members[-1]))
        return self._members[n]


def initial_vectors(omega: QuadSurd, lam: QuadSurd, j_max: int) -> list[tuple[int, IntVec2]]:
    """Admissible seeds k0(j) = (-rint(j*Omega), j) for j = 1..j_max.

    A seed is kept iff 1/(2*lambda) < |<k0, omega>| < 1/2 (exact test);
    rejected j reappear further down some admitted orbit.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    out = []
    for j in range(1, j_max + 1):
        k0 = seed_vector(omega, j)
        if seed_in_window(omega, lam, k0):
            out.append((j, k0))
    return out


def seed_vector(omega: QuadSurd, j: int) -> IntVec2:
    return IntVec2(-(omega * j).rint(), j)


def seed_in_window(omega: QuadSurd, lam: QuadSurd, k0: IntVec2) -> bool:
    w = abs(dot_omega(k0, omega))
    # upper bound |w| < 1/2 holds by construction of rint; test anyway
    if not (w * 2 - 1).sign() < 0:
        return False
    return (w * lam * 2 - 1).sign() > 0


def sequence_limits(j: int, k0: IntVec2, u: IntMat2, lam: QuadSurd,
                    omega: QuadSurd) -> ResonantSequence:
    """Exact limits K_j, gamma*_j of |s(j,n)|/lambda^n and gamma_{s(j,n)}.

    Decompose k0 = c*u + d*w over the eigenvectors u = (-Omega, 1) and
    w = (-Omega_conj, 1) of U.  Then K_j = |c|*(1 + Omega) and
    gamma*_j = K_j * |<k0, omega>|.  The result is cross-checked against
    direct iteration at n = 20, which must agree to O(lambda^{-40}).
    """
    conj = omega.conjugate()
    span = omega - conj              # positive: the (0,1) root beats its conjugate
    c = dot_omega(k0, conj) / (-span)
    k_exact = abs(c) * (omega + 1)
    w0 = abs(dot_omega(k0, omega))
    g_exact = k_exact * w0

    # consistency with direct iteration at n = 20
    n_chk = 20
    v = k0
    for _ in range(n_chk):
        v = u.vec(v)
    drift = abs(gamma_k(v, omega) - g_exact)
    d_abs = w0 / span
    bound = 4.0 * float(d_abs) * (1.0 + abs(float(conj))) * float(lam) ** (-2 * n_chk)
    if float(drift) > bound + 1e-12:
        raise ResonanceError(
            f"gamma limit for j={j} disagrees with iteration: "
            f"drift {float(drift):.3e} > bound {bound:.3e}")

    return ResonantSequence(
        j=j, k0=k0, U=u,
        K=float(k_exact), gamma_star=float(g_exact),
        K_exact=k_exact, gamma_star_exact=g_exact,
        w0_abs=float(w0),
    )


def _collinear_with(seq: ResonantSequence, k: IntVec2) -> bool:
    """True when k is an integer multiple of some member of the orbit."""
    n = 0
    while True:
        v = seq.member(n)
        if v.norm1 > k.norm1:
            return False
        if v.cross(k) == 0:
            return True
        n += 1


@dataclass
class ResonanceAnalysis:
    """Everything the splitting machinery needs about one frequency ratio."""

    cf: PeriodicCF
    omega: QuadSurd
    U: IntMat2
    lam: QuadSurd
    sigma: int
    sequences: tuple[ResonantSequence, ...]
    j0: int
    j1: int
    gamma_star_exact: QuadSurd

    @property
    def word(self) -> str:
        return ",".join(str(a) for a in self.cf.period)

    @property
    def D(self) -> int:
        return self.omega.D

    @property
    def omega_float(self) -> float:
        return float(self.omega)

    @property
    def lam_float(self) -> float:
        return float(self.lam)

    @property
    def ln_lambda(self) -> float:
        return math.log(self.lam_float)

    @property
    def gamma_star(self) -> float:
        return float(self.gamma_star_exact)

    @property
    def primary(self) -> ResonantSequence:
        return self.by_j(self.j0)

    @property
    def main_secondary(self) -> ResonantSequence:
        return self.by_j(self.j1)

    def by_j(self, j: int) -> ResonantSequence:
        for s in self.sequences:
            if s.j == j:
                return s
        raise KeyError(f"no admitted seed with j = {j}")


def classify(omega: QuadSurd, lam: QuadSurd, u: IntMat2,
             j_max: int | None = None) -> tuple[int, QuadSurd, int, tuple[ResonantSequence, ...]]:
    """Scan seeds, find the primary orbit j0 and the main secondary orbit j1.

    Any unexplored seed j satisfies gamma*_j > (j - h)(1 + Omega)/(2*lambda)
    with h = 1/(2*(Omega - Omega_conj)), because |c_j| >= j - |d_j| and the
    window bounds |<k0, omega>|.  The scan extends until that lower bound
    exceeds both current minima (the exact inequality is checked in the
    field, not in floating point), so the reported minima are global.  With
    an explicit j_max the scan is capped and certification failure raises.
    """
    conj = omega.conjugate()
    h = (2 * (omega - conj)).inverse()
    one_plus = omega + 1
    two_lam = lam * 2

    def provably_above(j: int, target: QuadSurd) -> bool:
        # (j - h)(1 + Omega) > 2*lambda*target, valid only when j > h
        if not (h - j).sign() < 0:
            return False
        return ((one_plus * ((-h) + j)) - two_lam * target).sign() > 0

    seqs: list[ResonantSequence] = []
    best: ResonantSequence | None = None
    cap = j_max if j_max is not None else 100_000
    j = 0
    while True:
        j += 1
        if j > cap:
            raise CertificationError(
                f"could not certify the minimal gamma* within j <= {cap}")
        k0 = seed_vector(omega, j)
        if seed_in_window(omega, lam, k0):
            seq = sequence_limits(j, k0, u, lam, omega)
            seqs.append(seq)
            if best is None or (seq.gamma_star_exact - best.gamma_star_exact).sign() < 0:
                best = seq
        if best is None:
            continue
        if not provably_above(j + 1, best.gamma_star_exact):
            continue
        # primary settled; find the best seed independent of its orbit
        indep = [s for s in seqs if s.j != best.j and not _collinear_with(best, s.k0)]
        if not indep:
            continue
        second = indep[0]
        for s in indep[1:]:
            if (s.gamma_star_exact - second.gamma_star_exact).sign() < 0:
                second = s
        if provably_above(j + 1, second.gamma_star_exact):
            for s in seqs:
                s.role = "secondary"
            best.role = "primary"
            second.role = "main-secondary"
            return best.j, best.gamma_star_exact, second.j, tuple(seqs)


def analyze(cf: PeriodicCF | str, j_max: int | None = None) -> ResonanceAnalysis:
    """Full resonance analysis of a purely periodic continued-fraction word."""
    if isinstance(cf, str):
        cf = PeriodicCF.parse(cf)
    omega = cf_value(cf)
    u, lam, sigma = build_U(cf)
    j0, gamma_star, j1, seqs = classify(omega, lam, u, j_max)
    return ResonanceAnalysis(
        cf=cf, omega=omega, U=u, lam=lam, sigma=sigma,
        sequences=seqs, j0=j0, j1=j1, gamma_star_exact=gamma_star,
    )


# ---------------------------------------------------------------------------
# Brute-force oracle


@dataclass(frozen=True)
class ScanRecord:
    k: IntVec2
    j: int
    n: int
    gamma: float


@dataclass
class ScanResult:
    """Outcome of an exhaustive scan of the resonant window up to |k|_1 <= N.

    window_min is the smallest gamma_k seen anywhere in the window;
    tail_min restricts to |k|_1 >= N/lambda^2, which estimates the liminf.
    per_sequence_min maps each seed j to the smallest gamma along its orbit.
    """

    n_limit: int
    tail_threshold: float
    window_min: float
    tail_min: float
    tail_argmin: IntVec2
    per_sequence_min: dict[int, float]
    records: list[ScanRecord] | None


class _WindowTest:
    """Fast window membership with an exact fallback near the boundaries."""

    def __init__(self, omega: QuadSurd, lam: QuadSurd):
        self.omega = omega
        self.lam = lam
        self.of = float(omega)
        self.low = 1.0 / (2.0 * float(lam))

    def below_half(self, v: IntVec2) -> bool:
        t = abs(v.k1 + v.k2 * self.of)
        if abs(t - 0.5) > 1e-9 * max(1.0, abs(v.k2)):
            return t < 0.5
        return (abs(dot_omega(v, self.omega)) * 2 - 1).sign() < 0

    def above_low(self, v: IntVec2) -> bool:
        t = abs(v.k1 + v.k2 * self.of)
        if abs(t - self.low) > 1e-9 * max(1.0, abs(v.k2)):
            return t > self.low
        return (abs(dot_omega(v, self.omega)) * self.lam * 2 - 1).sign() > 0

    def in_window(self, v: IntVec2) -> bool:
        return self.below_half(v) and self.above_low(v)


def locate(k: IntVec2, analysis: ResonanceAnalysis,
           _wt: _WindowTest | None = None,
           _seed_cache: dict[int, ResonantSequence] | None = None) -> tuple[int, int]:
    """Orbit coordinates (j, n) with k = +-U^n k0(j); raises when outside the window."""
    wt = _wt or _WindowTest(analysis.omega, analysis.lam)
    if not wt.below_half(k):
        raise ValueError(f"{k} is not resonant: |<k, omega>| >= 1/2")
    uinv = analysis.U.inverse()
    v = k
    n = 0
    while not wt.above_low(v):
        v = uinv.vec(v)
        n += 1
        if n > 4096:  # pragma: no cover
            raise ResonanceError(f"runaway orbit search for {k}")
    if v.k2 < 0:
        v = -v
    j = v.k2
    expect = seed_vector(analysis.omega, j)
    if v != expect:
        raise ResonanceError(f"{k} pulled back to {v}, not a seed vector")
    return j, n


def brute_force_scan(analysis: ResonanceAnalysis, n_limit: int,
                     collect: bool = False) -> ScanResult:
    """Exact scan of every resonant k with 0 < |k|_1 <= N (canonical k2 >= 1).

    For each k2 = j there is exactly one k1 with |<k, omega>| < 1/2, namely
    k1 = -rint(j*Omega), so the window is swept in O(N).  gamma_k is
    evaluated through the orbit identity gamma = lambda^{-n} * |<k0, omega>|
    * |k|_1, which keeps full double precision even for |k| ~ 1e5.
    """
    if n_limit < 10:
        raise ValueError("n_limit must be >= 10")
    omega = analysis.omega
    wt = _WindowTest(omega, analysis.lam)
    ln_lam = analysis.ln_lambda
    seeds: dict[int, ResonantSequence] = {s.j: s for s in analysis.sequences}
    w0: dict[int, float] = {s.j: s.w0_abs for s in analysis.sequences}

    tail_threshold = n_limit / float(analysis.lam) ** 2
    window_min = math.inf
    tail_min = math.inf
    tail_argmin = IntVec2(0, 0)
    per_seq: dict[int, float] = {}
    records: list[ScanRecord] | None = [] if collect else None

    for j in range(1, n_limit + 1):
        k = seed_vector(omega, j)
        if k.norm1 > n_limit:
            continue
        jj, n = locate(k, analysis, wt)
        if jj not in w0:
            k0 = seed_vector(omega, jj)
            seeds[jj] = sequence_limits(jj, k0, analysis.U, analysis.lam, omega)
            w0[jj] = seeds[jj].w0_abs
        gamma = math.exp(-n * ln_lam) * w0[jj] * k.norm1
        window_min = min(window_min, gamma)
        if jj in per_seq:
            per_seq[jj] = min(per_seq[jj], gamma)
        else:
            per_seq[jj] = gamma
        if k.norm1 >= tail_threshold and gamma < tail_min:
            tail_min = gamma
            tail_argmin = k
        if records is not None:
            records.append(ScanRecord(k, jj, n, gamma))

    return ScanResult(
        n_limit=n_limit, tail_threshold=tail_threshold,
        window_min=window_min, tail_min=tail_min, tail_argmin=tail_argmin,
        per_sequence_min=per_seq, records=records,
    )
