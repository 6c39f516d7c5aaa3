"""Built-in invariant suite behind ``esplab check``.

Each check is small enough to finish in well under a second and returns a
one-line detail string; a failing check raises ``AssertionError``.
"""
import math

import numpy as np

from .encoding import ensemble_diameter, propagate_ensemble
from .hausdorff import directed_distance, hausdorff_distance
from .inputs import InputSegment, make_uniform_random, shift_input
from .numerics import RngStream, largest_singular_value, sample_states, spectral_radius
from .stability import stability_profile
from .systems import ReservoirSystem


def _rng(stream):
    return RngStream(20201, stream).generator()


def check_spectral_scaling():
    B = _rng(0).uniform(-1, 1, (12, 12))
    rho = spectral_radius(B)
    for c in (-3.0, 0.5, 7.0):
        assert abs(spectral_radius(c * B) - abs(c) * rho) <= 1e-8 * abs(c) * rho
    assert rho <= largest_singular_value(B) + 1e-9
    return f"rho={rho:.6f}"


def check_range_closure():
    sysm = ReservoirSystem.random(6, 2, RngStream(20201, 1))
    g = _rng(2)
    for _ in range(200):
        alpha = g.uniform(*sysm.param_range)
        x = g.uniform(-1, 1, 6)
        u = g.normal(scale=5.0, size=2)
        y = sysm.step(alpha, u, x)
        assert np.all(np.abs(y) <= 1.0)
    return "200 samples inside [-1, 1]^N"


def check_lipschitz():
    sysm = ReservoirSystem.random(8, 1, RngStream(20201, 3))
    g = _rng(4)
    worst = 0.0
    for _ in range(200):
        alpha = g.uniform(*sysm.param_range)
        u = g.uniform(-1, 1, 1)
        x1, x2 = g.uniform(-1, 1, (2, 8))
        lhs = np.linalg.norm(sysm.step(alpha, u, x1) - sysm.step(alpha, u, x2))
        rhs = sysm.lipschitz_constant(alpha) * np.linalg.norm(x1 - x2)
        assert lhs <= rhs + 1e-9
        worst = max(worst, lhs / rhs)
    return f"max ratio {worst:.3f}"


def check_composition():
    sysm = ReservoirSystem.random(5, 1, RngStream(20201, 5))
    u = make_uniform_random(40, 1, 1.0, RngStream(20201, 6))
    init = sample_states(20, 5, "interior", RngStream(20201, 7))
    whole = propagate_ensemble(sysm, 0.9, u, init)
    head = propagate_ensemble(sysm, 0.9, InputSegment(u.values[:25]), init)
    tail = propagate_ensemble(sysm, 0.9, InputSegment(u.values[25:]), head)
    assert np.array_equal(whole.points, tail.points)
    return "bitwise equal"


def check_shift_additivity():
    u = make_uniform_random(50, 1, 1.0, RngStream(20201, 8))
    assert np.array_equal(shift_input(shift_input(u, 7), 11).values, shift_input(u, 18).values)
    return "sigma^7 sigma^11 = sigma^18"


def check_hausdorff_metric():
    g = _rng(9)
    for _ in range(100):
        A, B, C = (g.uniform(-1, 1, (g.integers(1, 12), 3)) for _ in range(3))
        ab, bc, ac = hausdorff_distance(A, B), hausdorff_distance(B, C), hausdorff_distance(A, C)
        assert ab == hausdorff_distance(B, A)
        assert ac <= ab + bc + 1e-12
        assert hausdorff_distance(A, A) == 0.0
        assert directed_distance(A[:1], A) == 0.0
    return "100 random triples"


def check_hausdorff_oracle():
    g = _rng(10)
    for p in (1, 2, math.inf):
        P, Q = g.uniform(-1, 1, (9, 4)), g.uniform(-1, 1, (13, 4))
        D = [[_naive_norm(a - b, p) for b in Q] for a in P]
        naive = max(max(min(r) for r in D), max(min(c) for c in zip(*D)))
        assert hausdorff_distance(P, Q, p) == naive
    return "p in {1, 2, inf}"


def _naive_norm(v, p):
    if p == math.inf:
        return max(abs(x) for x in v)
    acc = 0.0
    for x in v:
        acc += abs(x) if p == 1 else abs(x) * abs(x)
    return acc if p == 1 else math.sqrt(acc)


def check_contraction_collapse():
    sysm = ReservoirSystem.random(10, 1, RngStream(20201, 11))
    alpha = 0.5 / sysm.sigma_max
    u = make_uniform_random(60, 1, 1.0, RngStream(20201, 12))
    ens = propagate_ensemble(sysm, alpha, u, sample_states(30, 10, "interior", RngStream(20201, 13)))
    d = ensemble_diameter(ens)
    assert d <= 2 * math.sqrt(10) * 0.5**60
    return f"diameter {d:.2e}"


def check_profile_determinism():
    sysm = ReservoirSystem.random(6, 1, RngStream(20201, 14))
    u = make_uniform_random(60, 1, 0.5, RngStream(20201, 15))
    runs = [stability_profile(sysm, u, (0.5, 1.5, 0.05), 10, rng=RngStream(20201, 16), workers=w).gammas
            for w in (1, 4)]
    assert np.array_equal(runs[0], runs[1])
    return "workers 1 vs 4 bitwise equal"


CHECKS = [
    ("spectral radius scaling and sigma_max bound", check_spectral_scaling),
    ("range closure of the reservoir map", check_range_closure),
    ("Lipschitz bound alpha * sigma_max(B)", check_lipschitz),
    ("composition of propagation", check_composition),
    ("shift additivity", check_shift_additivity),
    ("Hausdorff metric axioms", check_hausdorff_metric),
    ("Hausdorff matches naive double loop", check_hausdorff_oracle),
    ("ensemble collapse under contraction", check_contraction_collapse),
    ("profile independent of worker count", check_profile_determinism),
]


def run_checks(out=print):
    failures = 0
    for name, fn in CHECKS:
        try:
            detail = fn()
            out(f"PASS  {name}: {detail}")
        except AssertionError as exc:
            failures += 1
            out(f"FAIL  {name}: {exc or 'assertion failed'}")
    return failures
