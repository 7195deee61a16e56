"""Randomized Steinberg-type relations over one ring."""

from __future__ import annotations

import random
import time

from ..group import root_element, torus_element, weyl_element
from ..ring import Ring
from ..rootsys import all_roots, cartan_int, reflect
from .conditions import CheckResult


def _run(name, ring, trials, body) -> CheckResult:
    t0 = time.perf_counter()
    for k in range(trials):
        bad = body(k)
        if bad:
            return CheckResult(f"{name} over {ring.descriptor}", False, {"trial": k, **bad},
                               time.perf_counter() - t0)
    return CheckResult(f"{name} over {ring.descriptor}", True, {"trials": trials}, time.perf_counter() - t0)


def weyl_sign_table(ring: Ring, rng: random.Random, trials: int) -> tuple[dict, dict | None]:
    """sign(b, a) with w_b(1) x_a(t) w_b(1)^-1 = x_{w_b a}(sign t), checked for consistency."""
    roots = all_roots()
    table: dict = {}
    for k in range(trials):
        a, b = rng.choice(roots), rng.choice(roots)
        t = ring.random_element(rng)
        w = weyl_element(b, 1, ring)
        lhs = root_element(a, t, ring).conjugate(w)
        target = reflect(a, b)
        signs = [s for s in (1, -1) if lhs == root_element(target, s * t, ring)]
        if not t:
            continue
        if len(signs) != 1 or table.setdefault((b, a), signs[0]) != signs[0]:
            return table, {"trial": k, "a": a.name, "b": b.name, "t": str(t)}
    return table, None


def verify_relations(ring: Ring, trials: int = 100, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    roots = all_roots()
    out = []

    def additivity(_):
        a = rng.choice(roots)
        s, t = ring.random_element(rng), ring.random_element(rng)
        if not (root_element(a, s, ring) @ root_element(a, t, ring) == root_element(a, s + t, ring)):
            return {"root": a.name, "s": str(s), "t": str(t)}

    def weyl_conjugation(_):
        a = rng.choice(roots)
        t = ring.random_element(rng)
        lhs = root_element(a, t, ring).conjugate(weyl_element(a, 1, ring))
        if not (lhs == root_element(-a, -t, ring)):
            return {"root": a.name, "t": str(t)}

    def torus_action(_):
        a, b = rng.choice(roots), rng.choice(roots)
        u, t = ring.random_unit(rng), ring.random_element(rng)
        e = cartan_int(b, a)
        lhs = root_element(b, t, ring).conjugate(torus_element(a, u, ring))
        scale = u ** e if e >= 0 else u.inv() ** (-e)
        if not (lhs == root_element(b, scale * t, ring)):
            return {"a": a.name, "b": b.name, "u": str(u), "t": str(t)}

    def multiplicativity(_):
        a = rng.choice(roots)
        s, t = ring.random_unit(rng), ring.random_unit(rng)
        if not (torus_element(a, s, ring) @ torus_element(a, t, ring) == torus_element(a, s * t, ring)):
            return {"root": a.name, "s": str(s), "t": str(t)}

    def determinant(_):
        a = rng.choice(roots)
        t = ring.random_element(rng)
        d = root_element(a, t, ring).determinant()
        if not (d == ring.one):
            return {"root": a.name, "t": str(t), "det": str(d)}

    out.append(_run("additivity x_a(s) x_a(t) = x_a(s+t)", ring, trials, additivity))
    out.append(_run("Weyl conjugation w_a(1) x_a(t) w_a(1)^-1 = x_-a(-t)", ring, trials, weyl_conjugation))
    out.append(_run("torus action h_a(u) x_b(t) h_a(u)^-1 = x_b(u^<b,a> t)", ring, trials, torus_action))
    out.append(_run("torus multiplicativity h_a(s) h_a(t) = h_a(st)", ring, trials, multiplicativity))
    out.append(_run("det x_a(t) = 1", ring, max(1, trials // 10), determinant))
    t0 = time.perf_counter()
    table, bad = weyl_sign_table(ring, rng, trials)
    out.append(CheckResult(f"Weyl sign table consistent over {ring.descriptor}", bad is None,
                           bad or {"pairs_seen": len(table)}, time.perf_counter() - t0))
    return out
