"""Amplitude-damping channel applied to labeled qubits of a register.

The channel models spontaneous decay |1> -> |0> with probability p. It is a
Kraus-sum map; on several qubits the environments act independently with the
same p, so the Kraus set is every tensor combination of the single-qubit pair.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .qcore import (
    DensityOperator,
    ModeLabel,
    ParameterError,
    tensor_product,
)


@dataclass(frozen=True)
class DampingParams:
    """Decay probability p = 1 - exp(-Gamma t)."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"p={self.p} outside [0, 1]")


@dataclass(frozen=True)
class KrausPair:
    """The two 2x2 Kraus operators of the single-qubit channel."""

    m0: np.ndarray
    m1: np.ndarray

    def completeness_deviation(self) -> float:
        total = self.m0.conj().T @ self.m0 + self.m1.conj().T @ self.m1
        return float(np.max(np.abs(total - np.eye(2))))


def amplitude_damping_kraus(params: DampingParams) -> KrausPair:
    """m0 = diag(1, sqrt(1-p)); m1 maps |1> to sqrt(p)|0>."""
    p = params.p
    m0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
    m1 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex)
    return KrausPair(m0, m1)


def apply_damping(
    rho: DensityOperator, targets: Iterable[ModeLabel], params: DampingParams
) -> DensityOperator:
    """Kraus-sum evolution of `rho` with damping on each target qubit.

    One or two targets are supported (one or two observers in a noisy
    environment), every target with the same p.
    """
    target_set = {ModeLabel(t) for t in targets}
    if not 1 <= len(target_set) <= 2:
        raise ParameterError(f"expected 1 or 2 target modes, got {len(target_set)}")
    positions = sorted(rho.register.position(t) for t in target_set)

    kraus = amplitude_damping_kraus(params)
    single = (kraus.m0, kraus.m1)
    identity = np.eye(2, dtype=complex)

    out = np.zeros_like(rho.matrix)
    for choice in itertools.product(range(2), repeat=len(positions)):
        op = np.eye(1, dtype=complex)
        it = iter(zip(positions, choice))
        next_pos, next_choice = next(it, (None, None))
        for pos in range(rho.register.n_modes):
            if pos == next_pos:
                factor = single[next_choice]
                next_pos, next_choice = next(it, (None, None))
            else:
                factor = identity
            op = tensor_product(op, factor)
        out += op @ rho.matrix @ op.conj().T
    return DensityOperator(rho.register, out)
