"""Quadrature node construction shared by the singular-integral routines.

All offset integrals run over |w| in [eps, 1/2].  The integrands blow up
like |w|**-p toward the inner cutoff, so nodes are placed on geometrically
graded panels with a fixed-order Gauss rule per panel.  Node sets are
deterministic functions of (eps, count); identical arguments always produce
identical arrays, which the reproducibility contract relies on.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

GAUSS_PANEL_ORDER = 16
NODES_PER_DECADE = 512


@lru_cache(maxsize=128)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], cached."""
    x, w = np.polynomial.legendre.leggauss(int(n))
    return x, w


def gauss_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule mapped to [0, 1]."""
    x, w = gauss_legendre(n)
    return 0.5 * (x + 1.0), 0.5 * w


def gauss_on_interval(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid + half * x, half * w


def log_panel_rule(a: float, b: float, n_nodes: int,
                   panel_order: int = GAUSS_PANEL_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss rule on [a, b] with geometrically spaced panel edges.

    Returns ascending nodes and positive weights.  ``n_nodes`` is a target;
    the actual count is rounded up to a whole number of panels.
    """
    if not (0.0 < a < b):
        raise ValueError("log_panel_rule needs 0 < a < b")
    n_panels = max(2, -(-int(n_nodes) // panel_order))
    edges = np.geomspace(a, b, n_panels + 1)
    xg, wg = gauss_legendre(panel_order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def default_node_count(eps: float, per_decade: int = NODES_PER_DECADE) -> int:
    """Node budget for [eps, 1/2]: a fixed count per decade of offset."""
    decades = np.log10(0.5 / eps)
    return max(64, int(np.ceil(per_decade * decades)))


def truncated_offset_rule(eps: float, n_nodes: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Positive offset nodes and weights covering w in [eps, 1/2].

    The negative half of the symmetric domain is handled by the callers,
    which mirror each node with the same weight.
    """
    if not (0.0 < eps < 0.5):
        raise ValueError("truncation eps must lie in (0, 1/2)")
    if n_nodes is None:
        n_nodes = default_node_count(eps)
    return log_panel_rule(eps, 0.5, n_nodes)


def pairwise_sum(values: np.ndarray, axis: int = 0) -> np.ndarray:
    """Reduction with a fixed summation order (numpy's pairwise scheme)."""
    return np.add.reduce(np.asarray(values), axis=axis)
