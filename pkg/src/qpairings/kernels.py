"""Covariance kernels V(.) for the correlated matrix family.

Two variants: the geometric kernel V(r) = p**|r| with 0 < p < 1, and a
tabulated kernel given by its values at lags 0..r_max (evenness is
implicit).  Tabulated kernels are validated for positive semi-definiteness
of their Toeplitz matrix when a factorization is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfig, KernelDomain, KernelNotPSD

PSD_TOLERANCE = 1e-10


@dataclass(frozen=True)
class KernelSpec:
    kind: str  # "geometric" or "table"
    p: float | None = None
    values: tuple | None = None

    @classmethod
    def geometric(cls, p: float) -> "KernelSpec":
        if not 0.0 < p < 1.0:
            raise InvalidConfig(f"geometric kernel needs 0 < p < 1, got {p}")
        return cls(kind="geometric", p=float(p))

    @classmethod
    def table(cls, values) -> "KernelSpec":
        values = tuple(float(v) for v in values)
        if not values:
            raise InvalidConfig("table kernel needs at least V(0)")
        if values[0] <= 0.0:
            raise InvalidConfig(f"table kernel needs V(0) > 0, got {values[0]}")
        return cls(kind="table", values=values)

    @property
    def is_geometric(self) -> bool:
        return self.kind == "geometric"

    def value(self, lag: int) -> float:
        """V at an integer lag (symmetric: V(-r) = V(r))."""
        lag = abs(int(lag))
        if self.is_geometric:
            return self.p ** lag
        if lag >= len(self.values):
            raise KernelDomain(
                f"table kernel has no value at lag {lag} (max lag {len(self.values) - 1})"
            )
        return self.values[lag]

    def toeplitz(self, n: int) -> np.ndarray:
        """The n x n matrix [V(|i-j|)]."""
        row = np.array([self.value(r) for r in range(n)])
        idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
        return row[idx]

    def factor(self, n: int, tol: float = PSD_TOLERANCE) -> np.ndarray:
        """A matrix L with L @ L.T equal to the n x n Toeplitz matrix.

        Raises KernelNotPSD when the smallest eigenvalue is below -tol
        (relative to the largest); eigenvalues within the tolerance band
        are clamped to zero so singular-but-PSD kernels factor cleanly.
        """
        t = self.toeplitz(n)
        eigvals, eigvecs = np.linalg.eigh(t)
        scale = max(1.0, float(eigvals[-1]))
        if eigvals[0] < -tol * scale:
            raise KernelNotPSD(
                f"Toeplitz matrix of order {n} has eigenvalue {eigvals[0]:.3e}"
            )
        clamped = np.clip(eigvals, 0.0, None)
        return eigvecs * np.sqrt(clamped)

    def to_json_obj(self) -> dict:
        if self.is_geometric:
            return {"kind": "geometric", "p": self.p}
        return {"kind": "table", "values": list(self.values)}

    def describe(self) -> str:
        if self.is_geometric:
            return f"geometric(p={self.p})"
        return f"table(r_max={len(self.values) - 1})"


def load_kernel_file(path) -> KernelSpec:
    """Read a tabulated kernel: one 'lag value' pair per line, lag 0 first.

    Lags must be consecutive from 0.  The Toeplitz matrix over the tabulated
    range is factored once to validate positive semi-definiteness.
    """
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise InvalidConfig(f"{path}:{line_no}: expected 'lag value'")
            lag, value = int(fields[0]), float(fields[1])
            if lag != len(values):
                raise InvalidConfig(
                    f"{path}:{line_no}: lag {lag} out of order (expected {len(values)})"
                )
            if not math.isfinite(value):
                raise InvalidConfig(f"{path}:{line_no}: non-finite value")
            values.append(value)
    spec = KernelSpec.table(values)
    spec.factor(len(values))
    return spec
