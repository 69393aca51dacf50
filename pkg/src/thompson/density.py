"""Densities over the sphere of all diagrams of size ``n``: exact census and Monte Carlo.

Census work is split into ranges of (source rank, target rank) pairs and
Monte Carlo work into ranges of trial indices.  Trial ``t`` always draws from
its own stream seeded by ``(master_seed, t)``, so the hit count does not
depend on how the ranges are spread over workers.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .dynamics import (
    is_north_south_fast,
    is_ns_family_T,
    is_ns_family_V,
    ns_family_count_T,
    ns_family_count_V,
)
from .elements import TElement, VElement, diagram_count, is_identity, to_pl_map
from .freeness import is_pingpong_u_T, is_pingpong_u_V, is_pingpong_v_T, is_pingpong_v_V
from .trees import catalan, random_tree, unrank

DEFAULT_MAX_EVALS = 10 ** 8
Z95 = 1.959963984540054
Z99 = 2.5758293035489004


class FeasibilityError(RuntimeError):
    pass


@dataclass(frozen=True)
class SphereSpec:
    group: str
    n: int
    k: int = 1

    def __post_init__(self):
        if self.group not in ("T", "V"):
            raise ValueError(f"group must be 'T' or 'V', got {self.group!r}")
        if self.n < 0 or self.k < 1:
            raise ValueError("need n >= 0 and k >= 1")


def sphere_size(spec: SphereSpec) -> int:
    return diagram_count(spec.n, spec.group) ** spec.k


@dataclass
class DensityEstimate:
    hits: int
    trials: int
    estimate: Union[Fraction, float]
    ci_low: float
    ci_high: float
    method: str
    seed: Optional[int] = None
    group: str = ""
    n: int = 0
    k: int = 1
    predicate: str = ""

    COLUMNS = ("group", "n", "k", "predicate", "method", "hits", "trials", "estimate",
               "ci_low", "ci_high", "seed")

    def row(self) -> dict:
        est = self.estimate
        out = {c: getattr(self, c) for c in self.COLUMNS}
        out["estimate"] = f"{est.numerator}/{est.denominator}" if isinstance(est, Fraction) else est
        if isinstance(self.ci_low, Fraction):
            out["ci_low"] = float(self.ci_low)
            out["ci_high"] = float(self.ci_high)
        out["seed"] = "" if self.seed is None else self.seed
        return out

    def to_json(self) -> dict:
        r = self.row()
        if isinstance(self.estimate, Fraction):
            r["estimate_float"] = float(self.estimate)
        return r

    def wilson(self, z: float = Z95) -> tuple:
        return wilson_interval(self.hits, self.trials, z)


def wilson_interval(hits: int, trials: int, z: float = Z95) -> tuple:
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = hits / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    # clamp: rounding can push a bound past p when hits is 0 or trials
    return max(0.0, min(p, centre - half)), min(1.0, max(p, centre + half))


def csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=DensityEstimate.COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.row())
    return buf.getvalue()


def jsonl_text(rows) -> str:
    return "".join(json.dumps(r.to_json()) + "\n" for r in rows)


# ---------------------------------------------------------------------------
# named predicates (module level so worker processes can look them up)


def pred_ns_family(e) -> bool:
    return is_ns_family_T(e) if isinstance(e, TElement) else is_ns_family_V(e)


def pred_north_south(e) -> bool:
    return is_north_south_fast(e)


def pred_identity(e) -> bool:
    return is_identity(to_pl_map(e))


def pred_pingpong_u(e) -> bool:
    return is_pingpong_u_T(e) if isinstance(e, TElement) else is_pingpong_u_V(e)


def pred_pingpong_v(e) -> bool:
    return is_pingpong_v_T(e) if isinstance(e, TElement) else is_pingpong_v_V(e)


def pred_pingpong_pair(pair) -> bool:
    u, v = pair
    return pred_pingpong_u(u) and pred_pingpong_v(v)


PREDICATES: dict = {
    "ns-family": pred_ns_family,
    "north-south": pred_north_south,
    "identity": pred_identity,
    "pingpong-u": pred_pingpong_u,
    "pingpong-v": pred_pingpong_v,
}
TUPLE_PREDICATES: dict = {"pingpong-pair": pred_pingpong_pair}


def _resolve(predicate, k: int):
    if callable(predicate):
        return getattr(predicate, "__name__", "custom"), predicate
    table = PREDICATES if k == 1 else TUPLE_PREDICATES
    if predicate not in table:
        raise ValueError(f"unknown predicate {predicate!r} for k={k}; choose from {sorted(table)}")
    return predicate, table[predicate]


def max_evals() -> int:
    env = os.environ.get("THOMPSON_MAX_EVALS")
    return int(env) if env else DEFAULT_MAX_EVALS


# ---------------------------------------------------------------------------
# exact census


def iter_sphere(group: str, n: int, start: int = 0, stop: Optional[int] = None):
    """Diagrams of size ``n`` in canonical order, restricted to tree-pair
    indices ``[start, stop)`` where index = source rank * C_n + target rank."""
    c = catalan(n)
    stop = c * c if stop is None else stop
    trees = [unrank(n, r) for r in range(c)]
    if group == "T":
        for p in range(start, stop):
            s, t = trees[p // c], trees[p % c]
            for mark in range(n + 1):
                yield TElement(s, t, mark)
    else:
        perms = list(itertools.permutations(range(n + 1)))
        for p in range(start, stop):
            s, t = trees[p // c], trees[p % c]
            for perm in perms:
                yield VElement(s, t, perm)


def _census_chunk(args) -> int:
    group, n, start, stop, name = args
    fn = PREDICATES[name]
    return sum(1 for e in iter_sphere(group, n, start, stop) if fn(e))


def _split(total: int, parts: int) -> list:
    parts = max(1, min(parts, total)) if total else 1
    bounds = [total * i // parts for i in range(parts + 1)]
    return list(zip(bounds[:-1], bounds[1:]))


def exact_density(spec: SphereSpec, predicate, workers: int = 1,
                  bound: Optional[int] = None) -> DensityEstimate:
    if spec.k != 1:
        raise ValueError("exact census is implemented for single elements (k = 1)")
    bound = max_evals() if bound is None else bound
    size = sphere_size(spec)
    if size > bound:
        raise FeasibilityError(
            f"census of {size} diagrams exceeds the bound of {bound} predicate evaluations "
            "(raise it with THOMPSON_MAX_EVALS)")
    name, fn = _resolve(predicate, 1)
    c = catalan(spec.n)
    total_pairs = c * c
    if workers > 1 and name in PREDICATES:
        chunks = [(spec.group, spec.n, a, b, name)
                  for a, b in _split(total_pairs, workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            hits = sum(ex.map(_census_chunk, chunks))
    else:
        hits = sum(1 for e in iter_sphere(spec.group, spec.n) if fn(e))
    est = Fraction(hits, size)
    return DensityEstimate(hits, size, est, est, est, "Exact", None, spec.group, spec.n, 1, name)


# ---------------------------------------------------------------------------
# Monte Carlo


def trial_rng(master_seed: int, t: int) -> random.Random:
    """Independent stream for trial ``t``."""
    return random.Random((master_seed << 64) | t)


def random_element(group: str, n: int, rng: random.Random):
    s = random_tree(n, rng)
    t = random_tree(n, rng)
    if group == "T":
        return TElement(s, t, rng.randrange(n + 1))
    perm = list(range(n + 1))
    rng.shuffle(perm)
    return VElement(s, t, tuple(perm))


def _mc_chunk(args) -> int:
    group, n, k, name, master_seed, start, stop, fn = args
    if fn is None:
        _, fn = _resolve(name, k)
    hits = 0
    for t in range(start, stop):
        rng = trial_rng(master_seed, t)
        if k == 1:
            hits += bool(fn(random_element(group, n, rng)))
        else:
            hits += bool(fn(tuple(random_element(group, n, rng) for _ in range(k))))
    return hits


def mc_density(spec: SphereSpec, predicate, trials: int, master_seed: int,
               workers: int = 1) -> DensityEstimate:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if master_seed < 0:
        raise ValueError("master_seed must be non-negative")
    name, fn = _resolve(predicate, spec.k)
    if workers > 1:
        if callable(predicate):
            raise ValueError("parallel runs need a named predicate")
        chunks = [(spec.group, spec.n, spec.k, name, master_seed, a, b, None)
                  for a, b in _split(trials, workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            hits = sum(ex.map(_mc_chunk, chunks))
    else:
        hits = _mc_chunk((spec.group, spec.n, spec.k, name, master_seed, 0, trials, fn))
    lo, hi = wilson_interval(hits, trials)
    return DensityEstimate(hits, trials, hits / trials, lo, hi, "MonteCarlo", master_seed,
                           spec.group, spec.n, spec.k, name)


# ---------------------------------------------------------------------------
# formulas


def density_ratio_formula_T(n: int) -> Fraction:
    """``(n-2) C_{n-1}^2 / ((n+1) C_n^2)``, the exact family density at size ``n``."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return Fraction(ns_family_count_T(n), diagram_count(n, "T"))


def density_ratio_closed_form(n: int) -> Fraction:
    """Same value as :func:`density_ratio_formula_T`, as ``(n-2)(n+1) / (4 (2n-1)^2)``."""
    return Fraction((n - 2) * (n + 1), 4 * (2 * n - 1) ** 2)


def density_ratio_formula_V(n: int) -> Fraction:
    if n < 3:
        raise ValueError("needs n >= 3")
    return Fraction(ns_family_count_V(n), diagram_count(n, "V"))
