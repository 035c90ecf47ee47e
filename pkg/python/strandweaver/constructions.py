"""Recursively defined diagram families.

* ``z(n)``: cyclic permutation moving the leftmost strand to the right end,
  ``z_1 = id(1)``, ``z_{n+1} = (id(n-1) * s) ∘ (z_n * id(1))``.
* ``z_inv(n)``: the same swaps in reverse order.
* ``p(m, n)``: coalescer merging ``m`` groups of ``n`` strands pointwise,
  ``p(2, 0) = id(0)``, ``p(2, n+1) = (p(2, n) * e) ∘ (id(n) * z(n+2))``,
  ``p(m+1, n) = p(2, n) ∘ (p(m, n) * id(n))``, ``p(1, n) = id(n)``,
  ``p(0, n) = del^n``.
* ``iota(j, n)``: one strand sent to position ``j`` of ``n``, the others
  created by ``del``.
* ``column_diagram(lambdas, n)``: the cascade of ``c`` generators whose
  value is a single column.

The families are memoized; since diagrams are immutable the caches behave
like pure functions.  The ``*_sides`` helpers return both sides of the
identities these families satisfy, for the verifier and the tests.
"""

from __future__ import annotations

import functools
import logging
from typing import Sequence, Tuple

from .diagram import DEL, E, S, Compose, Diagram, Id, Tensor, c, tensor_all, tensor_power
from .errors import DimensionError, IndexRangeError, ParameterDomainError

_logger = logging.getLogger(__name__)

Sides = Tuple[Diagram, Diagram]


def _check_arity(name: str, value: int, minimum: int) -> None:
    if value < minimum:
        raise ParameterDomainError(f"{name} must be >= {minimum}, got {value}")


@functools.lru_cache(maxsize=None)
def z(n: int) -> Diagram:
    _check_arity("n", n, 1)
    if n == 1:
        return Id(1)
    _logger.debug("building z(%d)", n)
    return Compose(Tensor(Id(n - 2), S), Tensor(z(n - 1), Id(1)))


@functools.lru_cache(maxsize=None)
def z_inv(n: int) -> Diagram:
    _check_arity("n", n, 1)
    if n == 1:
        return Id(1)
    return Compose(Tensor(z_inv(n - 1), Id(1)), Tensor(Id(n - 2), S))


def del_power(n: int) -> Diagram:
    """``del * del * ... * del`` (``n`` factors), ``id(0)`` when ``n == 0``."""
    _check_arity("n", n, 0)
    return tensor_all([DEL] * n)


@functools.lru_cache(maxsize=None)
def _p2(n: int) -> Diagram:
    if n == 0:
        return Id(0)
    return Compose(Tensor(_p2(n - 1), E), Tensor(Id(n - 1), z(n + 1)))


@functools.lru_cache(maxsize=None)
def p(m: int, n: int) -> Diagram:
    """Coalescer ``[m*n] -> [n]``; evaluates to ``m`` juxtaposed unit matrices."""
    _check_arity("m", m, 0)
    _check_arity("n", n, 0)
    if m == 0:
        return del_power(n)
    if m == 1:
        return Id(n)
    if m == 2:
        return _p2(n)
    _logger.debug("building p(%d, %d)", m, n)
    return Compose(_p2(n), Tensor(p(m - 1, n), Id(n)))


def iota(j: int, n: int) -> Diagram:
    if not 1 <= j <= n:
        raise IndexRangeError(f"strand {j} out of range 1..{n}")
    return tensor_all([DEL] * (j - 1) + [Id(1)] + [DEL] * (n - j))


def column_diagram(lambdas: Sequence, n: int) -> Diagram:
    """``(id(n-2) * c(λ_{n-1})) ∘ ... ∘ (id(1) * c(λ_2)) ∘ c(λ_1)``.

    Parameters
    ----------
    lambdas:
        ``n - 1`` probabilities; ``λ_j`` splits off the ``j``-th output.
    n:
        Number of output strands, at least 1.
    """
    _check_arity("n", n, 1)
    lambdas = list(lambdas)
    if len(lambdas) != n - 1:
        raise DimensionError(f"a column of height {n} needs {n - 1} parameters, got {len(lambdas)}")
    if n == 1:
        return Id(1)
    result: Diagram = c(lambdas[0])
    for j, lam in enumerate(lambdas[1:], start=1):
        result = Compose(Tensor(Id(j), c(lam)), result)
    return result


# ---- identities satisfied by the families ----

def otherdefz_sides(n: int) -> Sides:
    _check_arity("n", n, 1)
    return z(n + 1), Compose(Tensor(Id(1), z(n)), Tensor(S, Id(n - 1)))


def zsquare_sides(n: int) -> Sides:
    _check_arity("n", n, 1)
    return (
        Tensor(z(n), z(n)),
        Compose(Tensor(Id(n - 1), z(n + 1)), Tensor(z(n + 1), Id(n - 1))),
    )


def zeq_sides(n: int) -> Sides:
    _check_arity("n", n, 1)
    return (
        Compose(Tensor(z_inv(n), Id(n)), Tensor(Id(n - 1), z(n + 1))),
        Compose(Tensor(Id(n), z(n)), Tensor(z_inv(n + 1), Id(n - 1))),
    )


def zpartial_sides(n: int) -> Sides:
    _check_arity("n", n, 0)
    return Compose(z(n + 1), Tensor(DEL, Id(n))), Tensor(Id(n), DEL)


def zcomm_sides(f: Diagram) -> Sides:
    return (
        Compose(z(f.cod + 1), Tensor(Id(1), f)),
        Compose(Tensor(f, Id(1)), z(f.dom + 1)),
    )


def otherdefp_sides(n: int) -> Sides:
    _check_arity("n", n, 0)
    return p(2, n + 1), Compose(Tensor(E, p(2, n)), Tensor(z_inv(n + 2), Id(n)))


def pcomm_sides(f: Diagram, k: int) -> Sides:
    _check_arity("k", k, 2)
    return Compose(f, p(k, f.dom)), Compose(p(k, f.cod), tensor_power(f, k))


def p2del_sides(m: int, n: int) -> Sides:
    if not 0 <= m <= n:
        raise ParameterDomainError(f"need 0 <= m <= n, got m={m}, n={n}")
    return Compose(p(2, n), tensor_all([Id(m), del_power(n), Id(n - m)])), Id(n)


def piotas_sides(m: int, n: int) -> Sides:
    if not 1 <= m <= n:
        raise ParameterDomainError(f"need 1 <= m <= n, got m={m}, n={n}")
    return (
        Compose(p(m, n), tensor_all([iota(j, n) for j in range(1, m + 1)])),
        Tensor(Id(m), del_power(n - m)),
    )


def exceptional_column_sides(lam) -> Sides:
    """``(id(1) * c(λ)) ∘ c(1)`` against ``(id(1) * c(1)) ∘ c(1)``."""
    return (
        Compose(Tensor(Id(1), c(lam)), c(1)),
        Compose(Tensor(Id(1), c(1)), c(1)),
    )


__all__ = [
    "z",
    "z_inv",
    "del_power",
    "p",
    "iota",
    "column_diagram",
    "otherdefz_sides",
    "zsquare_sides",
    "zeq_sides",
    "zpartial_sides",
    "zcomm_sides",
    "otherdefp_sides",
    "pcomm_sides",
    "p2del_sides",
    "piotas_sides",
    "exceptional_column_sides",
]
