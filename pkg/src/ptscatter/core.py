"""
Domain types for plane-wave scattering on a discrete 1D chain.

The chain Hamiltonian is a doubly infinite tridiagonal matrix with hopping -1
on both off-diagonals (zero on-site term in the default convention) plus a
finite interaction block W supported on sites [lo, hi].  With the energy
parametrized by an angle phi in (0, pi), every row of the stationary
Schroedinger equation reads

    -psi[m-1] + 2*cos(phi)*psi[m] - psi[m+1] + sum_j W[m, j]*psi[j] = 0,

so exp(+-i*m*phi) solve the free rows exactly.  Scattering states take the
asymptotic plane-wave form

    psi[m] = exp(i*m*phi) + R*exp(-i*m*phi)   for m <= lo,
    psi[m] = T*exp(i*m*phi)                   for m >= hi,

with a unit wave incident from the left.

PT symmetry combines site reflection (P: m -> -m) and complex conjugation
(T).  After embedding the block in a symmetric index range, a window is
PT-symmetric iff W[i, j] == conj(W[-i, -j]) for all i, j.  The built-in
delta-pair family is PT-symmetric by construction; the two-site "ultralocal"
block is the standard PT-asymmetric counterexample.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

PT_PAIR = "pt-pair"
ULTRALOCAL = "ultralocal"
CUSTOM = "custom"


@dataclass(frozen=True)
class PhiAngle:
    """Plane-wave angle phi, strictly inside (0, pi).

    At the endpoints the two plane waves exp(+-i*m*phi) degenerate into one,
    so they are rejected outright.
    """

    phi: float

    def __post_init__(self) -> None:
        if not (0.0 < self.phi < math.pi):
            raise ValueError(f"phi must lie strictly inside (0, pi), got {self.phi!r}")


@dataclass(frozen=True)
class LatticeConvention:
    """Lattice stepsize and on-site convention of the kinetic term.

    ``diagonal_shift=False`` selects the zero-diagonal kinetic matrix, with
    energies E = -2*cos(phi)/h^2 in (-2/h^2, 2/h^2).  ``diagonal_shift=True``
    selects the shifted variant with 2/h^2 on the diagonal, giving
    E = (2 - 2*cos(phi))/h^2 in the band (0, 4/h^2).  The two differ only by
    a constant energy offset; the scattering rows are identical.
    """

    h: float = 1.0
    diagonal_shift: bool = False

    def __post_init__(self) -> None:
        if not self.h > 0.0:
            raise ValueError(f"lattice stepsize h must be positive, got {self.h!r}")


def energy_from_phi(phi: PhiAngle, conv: LatticeConvention = LatticeConvention()) -> float:
    """Lattice energy corresponding to the angle phi under the given convention."""
    if conv.diagonal_shift:
        return (2.0 - 2.0 * math.cos(phi.phi)) / (conv.h * conv.h)
    return -2.0 * math.cos(phi.phi) / (conv.h * conv.h)


@dataclass(frozen=True)
class InteractionWindow:
    """Finite interaction block W on lattice sites [lo, hi], stored sparsely.

    ``entries`` maps site pairs (i, j) to complex values; pairs that are
    absent count as zero.  Entries equal to exactly zero are dropped on
    construction, so windows that differ only by explicit zero padding of the
    entry map compare equal.
    """

    lo: int
    hi: int
    entries: Mapping[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"window bounds out of order: lo={self.lo} > hi={self.hi}")
        cleaned: dict[tuple[int, int], complex] = {}
        for (i, j), value in self.entries.items():
            if not (self.lo <= i <= self.hi and self.lo <= j <= self.hi):
                raise ValueError(f"entry ({i}, {j}) outside window [{self.lo}, {self.hi}]")
            value = complex(value)
            if value != 0:
                cleaned[(int(i), int(j))] = value
        object.__setattr__(self, "entries", cleaned)

    @property
    def n_sites(self) -> int:
        return self.hi - self.lo + 1

    def entry(self, i: int, j: int) -> complex:
        return self.entries.get((i, j), 0j)

    def row(self, i: int) -> Iterator[tuple[int, complex]]:
        """Nonzero entries (j, W[i, j]) of row i."""
        for (ii, j), value in self.entries.items():
            if ii == i:
                yield j, value

    def max_abs_entry(self) -> float:
        return max((abs(v) for v in self.entries.values()), default=0.0)

    def is_tridiagonal(self) -> bool:
        return all(abs(i - j) <= 1 for i, j in self.entries)

    def dense(self) -> np.ndarray:
        """Dense (n_sites x n_sites) array of the block; index 0 is site lo."""
        w = np.zeros((self.n_sites, self.n_sites), dtype=complex)
        for (i, j), value in self.entries.items():
            w[i - self.lo, j - self.lo] = value
        return w


def build_pt_delta_pair(m_sep: int, x: float) -> InteractionWindow:
    """PT-symmetric pair of point couplings at separation m_sep >= 1.

    The window spans [-m_sep, m_sep] and carries exactly four off-diagonal
    entries, antisymmetric across each bond and mirror-matched across the
    origin:

        W[1-M, -M] = W[M-1, M] = x,      W[-M, 1-M] = W[M, M-1] = -x.

    At |x| = 1 one total coupling -1 + x (or -1 - x) of the full chain
    vanishes; the window still builds but the solvers reject it as singular.
    """
    if m_sep < 1:
        raise ValueError(f"separation must be a positive integer, got {m_sep!r}")
    x = float(x)
    return InteractionWindow(
        lo=-m_sep,
        hi=m_sep,
        entries={
            (1 - m_sep, -m_sep): x,
            (m_sep - 1, m_sep): x,
            (-m_sep, 1 - m_sep): -x,
            (m_sep, m_sep - 1): -x,
        },
    )


def build_ultralocal(a: float) -> InteractionWindow:
    """Two-site antisymmetric block on sites [0, 1]: W[0, 1] = -a, W[1, 0] = a.

    Not PT-symmetric for a != 0; its scattering violates probability
    conservation with a sign set by the coupling.
    """
    a = float(a)
    return InteractionWindow(lo=0, hi=1, entries={(0, 1): -a, (1, 0): a})


@dataclass(frozen=True)
class ModelFamily:
    """Tagged model selector used by sweeps and the CLI.

    Variants: PT delta pair (separation m_sep, coupling x), ultralocal
    (coupling a), or a custom window supplied verbatim.
    """

    kind: str
    m_sep: int | None = None
    x: float | None = None
    a: float | None = None
    custom: InteractionWindow | None = None

    def __post_init__(self) -> None:
        if self.kind == PT_PAIR:
            if self.m_sep is None or self.m_sep < 1 or self.x is None:
                raise ValueError("pt-pair model needs m_sep >= 1 and a coupling x")
        elif self.kind == ULTRALOCAL:
            if self.a is None:
                raise ValueError("ultralocal model needs a coupling a")
        elif self.kind == CUSTOM:
            if self.custom is None:
                raise ValueError("custom model needs an InteractionWindow")
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @classmethod
    def pt_delta_pair(cls, m_sep: int, x: float) -> ModelFamily:
        return cls(kind=PT_PAIR, m_sep=m_sep, x=float(x))

    @classmethod
    def ultralocal(cls, a: float) -> ModelFamily:
        return cls(kind=ULTRALOCAL, a=float(a))

    @classmethod
    def custom_window(cls, window: InteractionWindow) -> ModelFamily:
        return cls(kind=CUSTOM, custom=window)

    @property
    def coupling(self) -> float:
        if self.kind == PT_PAIR:
            return float(self.x)  # type: ignore[arg-type]
        if self.kind == ULTRALOCAL:
            return float(self.a)  # type: ignore[arg-type]
        return math.nan

    @property
    def hops_zeroed(self) -> bool:
        """True where a total nearest-neighbour coupling vanishes (|x| = 1)."""
        return self.kind == PT_PAIR and abs(abs(float(self.x)) - 1.0) == 0.0  # type: ignore[arg-type]

    def window(self) -> InteractionWindow:
        if self.kind == PT_PAIR:
            return build_pt_delta_pair(self.m_sep, self.x)  # type: ignore[arg-type]
        if self.kind == ULTRALOCAL:
            return build_ultralocal(self.a)  # type: ignore[arg-type]
        return self.custom  # type: ignore[return-value]


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Reflection/transmission amplitudes of the left-incidence solution."""

    R: complex
    T: complex

    @property
    def prob_reflected(self) -> float:
        return abs(self.R) ** 2

    @property
    def prob_transmitted(self) -> float:
        return abs(self.T) ** 2

    @property
    def prob_sum(self) -> float:
        """|R|^2 + |T|^2; equals 1 for probability-conserving scattering."""
        return abs(self.R) ** 2 + abs(self.T) ** 2

    @property
    def defect(self) -> float:
        """prob_sum - 1 (the unitarity defect)."""
        return self.prob_sum - 1.0


@dataclass(frozen=True)
class WaveFunctionWindow:
    """Wavefunction samples psi[m] for m in [lo_ext, hi_ext]."""

    lo_ext: int
    hi_ext: int
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size != self.hi_ext - self.lo_ext + 1:
            raise ValueError(
                f"need {self.hi_ext - self.lo_ext + 1} samples for [{self.lo_ext}, {self.hi_ext}], got shape {values.shape}"
            )

    def value(self, m: int) -> complex:
        if not (self.lo_ext <= m <= self.hi_ext):
            raise IndexError(f"site {m} outside stored window [{self.lo_ext}, {self.hi_ext}]")
        return complex(self.values[m - self.lo_ext])


def embed_symmetric(win: InteractionWindow) -> InteractionWindow:
    """Embed the window in the symmetric index range [-N, N], N = max(|lo|, |hi|)."""
    n = max(abs(win.lo), abs(win.hi))
    return InteractionWindow(lo=-n, hi=n, entries=dict(win.entries))


def pt_conjugate(win: InteractionWindow) -> InteractionWindow:
    """Image of the window under PT: entry (i, j) -> conj at (-i, -j).

    Applied twice this is the identity on the symmetric embedding, since the
    antidiagonal reflection squares to one and conjugation is an involution.
    """
    n = max(abs(win.lo), abs(win.hi))
    mirrored = {(-i, -j): value.conjugate() for (i, j), value in win.entries.items()}
    return InteractionWindow(lo=-n, hi=n, entries=mirrored)


def first_pt_violation(win: InteractionWindow) -> tuple[tuple[int, int], complex, complex] | None:
    """First entry (in sorted index order) breaking W[i, j] == conj(W[-i, -j]).

    Returns ((i, j), W[i, j], conj(W[-i, -j])) or None when the window is
    PT-symmetric.  Scanning the stored support suffices: the condition at
    (i, j) and at (-i, -j) are conjugates of each other, so any violating
    pair has at least one member in the support.
    """
    for i, j in sorted(win.entries):
        value = win.entries[(i, j)]
        mirror = win.entry(-i, -j).conjugate()
        if value != mirror:
            return (i, j), value, mirror
    return None


def is_pt_symmetric(win: InteractionWindow) -> bool:
    """Whether the symmetrically embedded window commutes with PT."""
    return first_pt_violation(win) is None


def plane_wave(m: int, phi: float) -> complex:
    """exp(i*m*phi)."""
    return cmath.exp(1j * m * phi)
