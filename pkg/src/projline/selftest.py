"""Identity suite run by ``projline selftest``.

Each check returns ``(ok, detail)``; the report lists one line per tag.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import algebra, monoid, normal_form, scalars
from .algebra import UNIT, AlgebraElement, SliceFn, chi_a, chi_b, convolve, involute
from .ktheory import index_eta, k_groups, k0_of_class
from .monoid import Deficient, Geometry, Positive, RankZero
from .toeplitz import DEFAULT_TOLERANCE, compression_consistency, defect_projections, represent, shift_matrices


def random_scalar(rng: random.Random, complex_ok: bool = True):
    re = rng.randint(-3, 3)
    if complex_ok and rng.random() < 0.3:
        return scalars.make(re, rng.randint(-3, 3))
    return re


def random_degree0_element(rng: random.Random, max_shift: int = 4, max_len: int = 4,
                           slices: int = 3) -> AlgebraElement:
    """Random element of the degree-0 algebra with slice shifts and value lengths bounded."""
    out: Dict[Tuple[int, int], SliceFn] = {}
    for _ in range(rng.randint(1, slices)):
        n = rng.randint(-max_shift, max_shift)
        corner = random_scalar(rng) if rng.random() < 0.5 else 0
        fn = SliceFn([random_scalar(rng) for _ in range(rng.randint(0, max_len))],
                     [random_scalar(rng) for _ in range(rng.randint(0, max_len))],
                     corner)
        out[(n, -n)] = out[(n, -n)] + fn if (n, -n) in out else fn
    return AlgebraElement(out)


def random_class(rng: random.Random, bound: int) -> monoid.ProjClass:
    kind = rng.randrange(3)
    if kind == 0:
        return RankZero(rng.randint(0, bound), rng.randint(0, bound))
    if kind == 1:
        return Positive(rng.randint(1, bound), rng.randint(0, bound))
    return Deficient(rng.randint(1, bound), rng.randint(1, bound))


def all_classes(bound: int) -> List[monoid.ProjClass]:
    r = range(bound + 1)
    return ([RankZero(m, l) for m in r for l in r]
            + [Positive(n, j) for n in r if n for j in r]
            + [Deficient(n, k) for n in r if n for k in r if k])


def all_specs(max_entries: int, max_index: int):
    blocks = [kind(m, l) for kind in (normal_form.FiniteBlock, normal_form.CofiniteBlock)
              for m in range(max_index + 1) for l in range(max_index + 1)]
    for r in range(max_entries + 1):
        for combo in itertools.product(blocks, repeat=r):
            yield normal_form.BlockSpec(combo)


# -- individual checks ---------------------------------------------------------

def check_isometries(kmax: int = 8):
    for k in range(1, kmax + 1):
        a, b = chi_a(k), chi_b(k)
        if convolve(involute(a), a) != UNIT:
            return False, f"chi_A({k})^* chi_A({k}) != 1"
        if convolve(a, involute(a)) != b:
            return False, f"chi_A({k}) chi_A({k})^* != chi_B({k})"
        if convolve(b, b) != b or involute(b) != b:
            return False, f"chi_B({k}) is not a projection"
    return True, f"k <= {kmax}"


def check_line_defects():
    kernel, cokernel = defect_projections(algebra.chi_w())
    ok = kernel == algebra.e11_leg2() and cokernel == algebra.e11_leg1()
    return ok, "defects (e11 leg 2, e11 leg 1)" if ok else f"got {kernel}, {cokernel}"


def check_podles_isometry():
    w = algebra.chi_w_podles()
    if convolve(involute(w), w) != UNIT:
        return False, "w^* w != 1"
    kernel, cokernel = defect_projections(w)
    ok = kernel.is_zero() and cokernel == algebra.e11_leg1() + algebra.e11_leg2()
    return ok, "isometry with cokernel e11 + e11" if ok else f"cokernel {cokernel}"


def check_eta(sign_flip: bool):
    line, sphere = index_eta(Geometry.PROJLINE, sign_flip), index_eta(Geometry.PODLES, sign_flip)
    s = -1 if sign_flip else 1
    ok = line == (-s, s) and sphere == (-s, -s)
    exact = all(k_groups(g, sign_flip).exact_at_ideal for g in Geometry)
    return ok and exact, f"projline {line}, podles {sphere}, exact {exact}"


def check_monoid_laws(bound: int, samples: int, seed: int = 0):
    rng = random.Random(seed)
    for g in Geometry:
        for _ in range(samples):
            a, b, c = (random_class(rng, bound) for _ in range(3))
            if monoid.monoid_mul(a, b, g) != monoid.monoid_mul(b, a, g):
                return False, f"{g.value}: {a} {b} not commutative"
            if monoid.monoid_mul(monoid.monoid_mul(a, b, g), c, g) != monoid.monoid_mul(a, monoid.monoid_mul(b, c, g), g):
                return False, f"{g.value}: {a} {b} {c} not associative"
            if monoid.monoid_mul(a, monoid.IDENTITY, g) != a:
                return False, f"{g.value}: identity fails on {a}"
            if k0_of_class(monoid.monoid_mul(a, b, g), g) != k0_of_class(a, g) + k0_of_class(b, g):
                return False, f"{g.value}: K0 not additive on {a} {b}"
    return True, f"{samples} random triples per geometry, indices <= {bound}"


def check_roundtrips(max_entries: int, max_index: int):
    count = 0
    for g in Geometry:
        for spec in all_specs(max_entries, max_index):
            cls, cert = normal_form.reduce(spec, g)
            if cls != normal_form.classify(spec, g):
                return False, f"{g.value}: reduce/classify disagree on {spec}"
            normal_form.verify_certificate(spec, cert, cls, g)
            count += 1
    return True, f"{count} certificates verified (<= {max_entries} entries, indices <= {max_index})"


def check_representation(N: int, tolerance: float, trials: int, seed: int = 0):
    s, st = shift_matrices(N)
    rep = represent(algebra.chi_w(), N)
    if not (np.array_equal(rep.leg_block(1, 1), s) and np.array_equal(rep.leg_block(2, 2), st)
            and not rep.leg_block(1, 2).any() and not rep.leg_block(2, 1).any()):
        return False, "pi(chi_W) is not S + S*"
    shift = max(0, min(4, (N - 1) // 4))
    margin = 2 * shift
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        f = random_degree0_element(rng, shift)
        g = random_degree0_element(rng, shift)
        worst = max(worst, compression_consistency(f, g, N, margin))
    return worst <= tolerance, f"N={N}, margin {margin}, max gap {worst:.3g}"


@dataclass
class Report:
    results: List[Tuple[str, bool, str, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.results)

    def lines(self) -> List[str]:
        return [f"{'PASS' if ok else 'FAIL'} {tag}: {detail} ({dt:.2f}s)"
                for tag, ok, detail, dt in self.results]

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"tag": t, "pass": ok, "detail": d, "seconds": round(dt, 3)}
                           for t, ok, d, dt in self.results]}


def run(level: str = "fast", truncation: int = 32, tolerance: float = DEFAULT_TOLERANCE,
        eta_sign_flip: bool = False) -> Report:
    full = level == "full"
    checks: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
        ("isometries", lambda: check_isometries(8)),
        ("line-defects", check_line_defects),
        ("podles-isometry", check_podles_isometry),
        ("index-map", lambda: check_eta(eta_sign_flip)),
        ("monoid-laws", lambda: check_monoid_laws(8, 2000 if full else 200)),
        ("classifier-roundtrip", lambda: check_roundtrips(3, 4) if full else check_roundtrips(2, 2)),
        ("representation", lambda: check_representation(truncation, tolerance, 20 if full else 5)),
    ]
    report = Report()
    for tag, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported with its cause
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.results.append((tag, ok, detail, time.perf_counter() - t0))
    return report
