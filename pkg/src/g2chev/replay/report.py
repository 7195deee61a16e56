"""Verification suites and their JSON/text reports."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from ..chevalley import PRINTED_H1_DIAG, PRINTED_H2_DIAG, PRINTED_W1, PRINTED_W2, PRINTED_X1, PRINTED_X2, verify_chevalley_properties
from ..group import GroupElement, root_element, torus_element, weyl_element
from ..matrix import Matrix
from ..ring import IntegersMod, Rationals, Ring, TruncatedPoly
from ..rootsys import root
from .conditions import CheckResult, first_mismatch, verify_conditions
from .elimination import first_order_rank, load_ledger, run_elimination
from .matrix_units import generate_matrix_units, three_obstruction, verify_matrix_units
from .normalizer import verify_normalizer
from .prod2 import roundtrip_trials
from .relations import verify_relations
from .shapes import basis_change_commute, involution_split, verify_block_shapes, weyl_hblock

SUITES = ("paper", "relations", "elimination", "normalizer", "genunits", "prod2")
DEFAULT_RINGS = {
    "relations": ("zmod:5^2", "zmod:7^2", "trunc:4,3"),
    "genunits": ("zmod:5^2", "zmod:7^2"),
    "prod2": ("zmod:5^2", "zmod:5^3", "trunc:14,3"),
}


@dataclass
class Report:
    suite: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed or r.info for r in self.results)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [r.as_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, default=str)

    def to_text(self) -> str:
        width = max((len(r.name) for r in self.results), default=10)
        timed = any(r.seconds for r in self.results)
        lines = [f"{r.status:<5} {r.name:<{width}}" + (f"  {r.seconds:8.3f}s" if timed else "") + _brief(r)
                 for r in self.results]
        n_fail = sum(r.status == "fail" for r in self.results)
        lines.append(f"{self.suite}: {len(self.results)} checks, {n_fail} failed")
        return "\n".join(lines)


def _brief(r: CheckResult) -> str:
    if r.status == "pass" or not r.witness:
        return ""
    return "  " + json.dumps(r.witness, default=str)[:160]


# -- individual suites ---------------------------------------------------------

def generator_checks() -> list[CheckResult]:
    Q = Rationals()
    pairs = [
        ("x_a1(1) = printed x1", root_element(root(1), 1, Q), PRINTED_X1),
        ("x_a2(1) = printed x2", root_element(root(2), 1, Q), PRINTED_X2),
        ("w_a1(1) = printed w1", weyl_element(root(1), 1, Q), PRINTED_W1),
        ("w_a2(1) = printed w2", weyl_element(root(2), 1, Q), PRINTED_W2),
        ("h_a1(-1) = printed diagonal", torus_element(root(1), -1, Q), Matrix.diag(list(PRINTED_H1_DIAG))),
        ("h_a2(-1) = printed diagonal", torus_element(root(2), -1, Q), Matrix.diag(list(PRINTED_H2_DIAG))),
    ]
    out = []
    for name, g, target in pairs:
        t0 = time.perf_counter()
        M = g.matrix.map(lambda v: v.value)
        ok = M == target
        out.append(CheckResult(name, ok, None if ok else first_mismatch(M, target), time.perf_counter() - t0))
    alt = weyl_element(root(1), -1, Q).matrix.map(lambda v: v.value)
    out.append(CheckResult("w_a1(-1) = printed w1", alt == PRINTED_W1, info=True))
    return out


def chevalley_checks() -> list[CheckResult]:
    t0 = time.perf_counter()
    props = verify_chevalley_properties()
    dt = time.perf_counter() - t0
    return [CheckResult(f"Chevalley property {p.number}: {p.name}", p.passed,
                        {"checked": p.checked, "failures": [str(f) for f in p.failures[:3]]}, dt / len(props))
            for p in props]


def involution_checks(trials: int = 100, seed: int = 0, ring: Ring | None = None) -> list[CheckResult]:
    ring = ring or IntegersMod(5, 2)
    rng = random.Random(seed)
    out = []
    for i in (1, 2):
        t0 = time.perf_counter()
        a = torus_element(root(i), -1, ring)
        base = involution_split(a)
        bad = None
        for k in range(trials):
            g = _random_element(ring, rng)
            if involution_split(a.conjugate(g)) != base:
                bad = {"trial": k}
                break
        out.append(CheckResult(f"involution ranks of h_a{i}(-1) over {ring.descriptor}", base == (6, 8) and bad is None,
                               {"ranks": list(base), "conjugations": trials, **(bad or {})}, time.perf_counter() - t0))
    out.append(CheckResult("involution ranks of the identity", involution_split(GroupElement.identity(ring)) == (14, 0)))
    for i, expected in ((1, [[-1, 3], [0, 1]]), (2, [[1, 0], [1, -1]])):
        b = weyl_hblock(root(i))
        out.append(CheckResult(f"Cartan block of w_a{i}(1)", b == expected, {"block": b}))
    return out


def _random_element(ring: Ring, rng: random.Random, length: int = 4) -> GroupElement:
    from ..rootsys import all_roots

    g = GroupElement.identity(ring)
    for _ in range(length):
        g = g @ root_element(rng.choice(all_roots()), ring.random_element(rng), ring)
    return g


def elimination_checks(ledger_path=None, degrees=(2, 3)) -> list[CheckResult]:
    ledger = load_ledger(ledger_path)
    out = []
    states = {}
    for d in degrees:
        st = run_elimination(ledger, d=d)
        states[d] = st
        witness = st.summary()
        if st.failed_step is not None:
            witness["failed_step"] = f"({st.failed_step.condition},{st.failed_step.row},{st.failed_step.col}) " \
                                     f"{st.failed_step.target}"
        out.append(CheckResult(f"elimination over trunc(100,{d}): ledger completes at residues",
                               st.completed and st.all_residues(), witness, st.seconds))
    if len(states) > 1:
        first, *rest = states.values()
        same = all(st.completed for st in states.values()) and all(st.assignment == first.assignment for st in rest)
        out.append(CheckResult(f"elimination: d = {' and d = '.join(map(str, states))} agree", same))

    t0 = time.perf_counter()
    skip = run_elimination(ledger, d=2, on_failure="skip", check_rhs=False)
    blocked = [f"({e.step.condition},{e.step.row},{e.step.col}) {e.step.target}" for e in skip.log if not e.pivot]
    out.append(CheckResult("elimination diagnostic: steps without any unit pivot", not blocked,
                           {"blocked": blocked, "fallbacks": skip.fallback_count}, time.perf_counter() - t0, info=True))
    t0 = time.perf_counter()
    fo = first_order_rank()
    out.append(CheckResult("elimination diagnostic: rank of the linearized conditions", fo["rank"] == fo["unknowns"],
                           {k: fo[k] for k in ("unknowns", "rank", "modular_ranks")} | {"kernel": fo["kernel"]},
                           time.perf_counter() - t0, info=True))
    t0 = time.perf_counter()
    fo2 = first_order_rank(fixed=("y46", "y10"))
    out.append(CheckResult("elimination diagnostic: rank with y46, y10 also fixed", fo2["rank"] == fo2["unknowns"],
                           {k: fo2[k] for k in ("unknowns", "rank", "modular_ranks")}, time.perf_counter() - t0,
                           info=True))
    return out


def genunits_checks(rings, seed: int = 0) -> list[CheckResult]:
    t0 = time.perf_counter()
    mu = generate_matrix_units()
    out = [CheckResult("matrix units generated", len(mu.units) == 196,
                       {"recipe_coefficients": {k: str(v) for k, v in mu.coefficients.items() if v != 1},
                        "deviations": mu.deviations}, time.perf_counter() - t0)]
    for ring in rings:
        out += verify_matrix_units(ring, mu, seed=seed)
    out.append(three_obstruction())
    return out


def prod2_checks(rings, trials: int = 100, seed: int = 0) -> list[CheckResult]:
    out = []
    for ring in rings:
        t0 = time.perf_counter()
        res = roundtrip_trials(ring, trials, seed)
        out.append(CheckResult(f"prod2 roundtrip over {ring.descriptor}", res["recovered"] == trials,
                               {k: v for k, v in res.items() if k != "ring"}, time.perf_counter() - t0))
    return out


def relations_checks(rings, trials: int = 100, seed: int = 0) -> list[CheckResult]:
    out = []
    for ring in rings:
        out += verify_relations(ring, trials, seed)
    return out


def _rings(names) -> list[Ring]:
    from ..ring import parse_ring

    return [parse_ring(n) for n in names]


def run_suite(name: str, rings=None, seed: int = 0, ledger=None, trials: int = 100,
              trunc_degree: int | None = None) -> Report:
    """``rings`` overrides the default rings of suites that take one.

    ``trunc_degree`` restricts the elimination to one truncation degree and
    replaces the degree of the default truncated rings.
    """
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    if name == "paper":
        rep = Report("paper")
        rep.results += generator_checks()
        rep.results += chevalley_checks()
        rep.results += involution_checks(trials, seed)
        rep.results += verify_conditions()
        rep.results += verify_block_shapes()
        rep.results += basis_change_commute()
        from .torus import verify_torus_image

        rep.results += verify_torus_image()
        for sub in ("relations", "elimination", "genunits", "prod2", "normalizer"):
            rep.results += run_suite(sub, seed=seed, ledger=ledger, trials=trials,
                                     trunc_degree=trunc_degree).results
        return rep
    chosen = rings or _rings(DEFAULT_RINGS.get(name, ()))
    if trunc_degree is not None and not rings:
        chosen = [TruncatedPoly(r.m, trunc_degree) if isinstance(r, TruncatedPoly) else r for r in chosen]
    rep = Report(name)
    if name == "relations":
        rep.results = relations_checks(chosen, trials, seed)
    elif name == "elimination":
        rep.results = elimination_checks(ledger, (trunc_degree,) if trunc_degree else (2, 3))
    elif name == "normalizer":
        rep.results = verify_normalizer()
    elif name == "genunits":
        rep.results = genunits_checks(chosen, seed)
    elif name == "prod2":
        rep.results = prod2_checks(chosen, trials, seed)
    return rep

