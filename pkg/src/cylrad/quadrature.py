"""Quadrature rules shared by the cylinder and plate integrators.

* :func:`angle_rule` -- Gauss-Legendre on theta in (0, pi/2) after a graded
  substitution that clusters nodes towards grazing incidence;
* :func:`graded_panel_rule` -- the same substitution, panel by panel, for
  adaptive refinement;
* :func:`periodic_nodes` -- midpoint (periodic trapezoid) rule on one period;
* :func:`adaptive_log_simpson` -- batched adaptive Simpson rule in ln(omega).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError


@dataclass(frozen=True)
class AngleRule:
    """Nodes and weights for integrals over theta in (0, pi/2).

    ``sum(weights * f(theta))`` approximates the integral of ``f``.
    ``cos_t`` and ``sin_t`` are formed without cancellation near pi/2.
    """

    cos_t: np.ndarray
    sin_t: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.weights.size


@lru_cache(maxsize=32)
def angle_rule(n_nodes: int, graded: bool = True) -> AngleRule:
    """Gauss-Legendre rule on (0, pi/2).

    With ``graded`` the substitution ``theta = (pi/2)(1 - t^2)``, ``t`` in
    (0, 1), is applied. It turns the ``cos^2 theta log(cos theta)``
    behaviour at grazing incidence into a smooth function of ``t``.
    """
    if n_nodes < 1:
        raise ValueError("n_nodes must be positive")
    v, w = np.polynomial.legendre.leggauss(int(n_nodes))
    t = 0.5 * (v + 1.0)
    w = 0.5 * w
    if graded:
        half = 0.5 * math.pi * t * t  # pi/2 - theta
        cos_t = np.sin(half)
        sin_t = np.cos(half)
        wts = w * math.pi * t
    else:
        theta = 0.5 * math.pi * t
        cos_t = np.cos(theta)
        sin_t = np.sin(theta)
        wts = w * 0.5 * math.pi
    for a in (cos_t, sin_t, wts):
        a.setflags(write=False)
    return AngleRule(cos_t, sin_t, wts)


@lru_cache(maxsize=8)
def _gl(order):
    return np.polynomial.legendre.leggauss(order)


def graded_panel_rule(edges, order: int = 16) -> AngleRule:
    """Gauss-Legendre rule of ``order`` nodes on each panel of the graded variable.

    ``edges`` is a sequence of ``(t_lo, t_hi)`` pairs in [0, 1]; the
    substitution is the one used by :func:`angle_rule`, so the weights
    integrate over theta. Nodes are laid out panel by panel.
    """
    v, w = _gl(order)
    edges = np.asarray(edges, dtype=float).reshape(-1, 2)
    mid = 0.5 * (edges[:, 0] + edges[:, 1])[:, None]
    half = 0.5 * (edges[:, 1] - edges[:, 0])[:, None]
    t = (mid + half * v[None, :]).ravel()
    wt = (half * w[None, :]).ravel()
    gap = 0.5 * math.pi * t * t
    return AngleRule(np.sin(gap), np.cos(gap), wt * math.pi * t)


def periodic_nodes(n_nodes: int, period: float = 2.0 * math.pi):
    """Midpoint nodes and equal weights on [0, period); spectral for smooth periodic integrands."""
    h = period / n_nodes
    return (np.arange(n_nodes) + 0.5) * h, np.full(n_nodes, h)


@dataclass(frozen=True)
class QuadratureResult:
    value: np.ndarray
    rel_error: float
    evaluations: int
    rounds: int
    nodes: np.ndarray


def _simpson(h, fa, fm, fb):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_log_simpson(func, a: float, b: float, base_points: int = 201,
                         rtol: float = 1e-6, max_rounds: int = 14) -> QuadratureResult:
    """Integrate a vector-valued ``func`` over ``y`` in [a, b].

    ``func`` receives a 1-D array of abscissae and returns an array of
    shape ``(len(y), m)``. The interval is split into ``(base_points - 1)/2``
    Simpson panels; each round evaluates the quarter points of every open
    panel in a single batch, and a panel is closed once the Richardson
    estimate ``|S2 - S1|/15`` falls below its share ``rtol * width/(b - a)``
    of the running total. Panel order, and hence the result, is independent
    of how ``func`` distributes its work.

    Raises
    ------
    ConvergenceError
        If panels are still open after ``max_rounds`` rounds.
    """
    if base_points < 3:
        raise ValueError("base_points must be at least 3")
    if base_points % 2 == 0:
        base_points += 1
    y = np.linspace(a, b, base_points)
    f = np.asarray(func(y), dtype=float)
    if f.ndim == 1:
        f = f[:, None]
    evals = base_points
    open_panels = [(y[i], y[i + 2], f[i], f[i + 1], f[i + 2])
                   for i in range(0, base_points - 1, 2)]
    closed = []  # (value, error) in panel order of closure
    total_width = b - a
    visited = [y]
    for rnd in range(1, max_rounds + 1):
        quarter = np.empty(2 * len(open_panels))
        for j, (ya, yb, *_rest) in enumerate(open_panels):
            h = yb - ya
            quarter[2 * j] = ya + 0.25 * h
            quarter[2 * j + 1] = ya + 0.75 * h
        fq = np.asarray(func(quarter), dtype=float)
        if fq.ndim == 1:
            fq = fq[:, None]
        evals += quarter.size
        visited.append(quarter)
        coarse = []
        fine = []
        children = []
        for j, (ya, yb, fa, fm, fb) in enumerate(open_panels):
            h = yb - ya
            ym = 0.5 * (ya + yb)
            fl, fr = fq[2 * j], fq[2 * j + 1]
            s1 = _simpson(h, fa, fm, fb)
            s2 = _simpson(0.5 * h, fa, fl, fm) + _simpson(0.5 * h, fm, fr, fb)
            coarse.append(s1)
            fine.append(s2)
            children.append(((ya, ym, fa, fl, fm), (ym, yb, fm, fr, fb)))
        fine = np.array(fine)
        err = np.abs(fine - np.array(coarse)).sum(axis=1) / 15.0
        closed_sum = sum(v for v, _ in closed) if closed else 0.0
        estimate = np.abs(closed_sum + fine.sum(axis=0)).sum()
        widths = np.array([p[1] - p[0] for p in open_panels])
        budget = rtol * estimate * widths / total_width
        still_open = []
        for j in range(len(open_panels)):
            if err[j] <= budget[j] or estimate == 0.0:
                closed.append((fine[j], err[j]))
            else:
                still_open.extend(children[j])
        open_panels = still_open
        if not open_panels:
            value = np.sum(np.array([v for v, _ in closed]), axis=0)
            scale = np.abs(value).sum()
            rel = float(sum(e for _, e in closed) / scale) if scale > 0 else 0.0
            return QuadratureResult(value, rel, evals, rnd, np.sort(np.concatenate(visited)))
    pieces = [v for v, _ in closed] + [_simpson(p[1] - p[0], p[2], p[3], p[4]) for p in open_panels]
    partial = np.sum(np.array(pieces), axis=0)
    scale = np.abs(partial).sum()
    achieved = float(np.sum(err) / scale) if scale > 0 else math.inf
    raise ConvergenceError(
        f"adaptive Simpson left {len(open_panels)} panels open after {max_rounds} rounds "
        f"(achieved relative error {achieved:.3g}, requested {rtol:.3g})",
        estimate=partial, achieved=achieved,
    )
