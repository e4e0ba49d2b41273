#!/usr/bin/env python3
"""Smoke test for the degreeld_py extension module.

Locates the built cdylib under target/, links it into a temp directory
under the importable name, and exercises the main types and operations.
Run after `cargo build -p degreeld-py` (or --release).
"""

import math
import os
import shutil
import sys
import sysconfig
import tempfile


def locate_extension():
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..")
    names = ["libdegreeld_py.so", "libdegreeld_py.dylib", "degreeld_py.dll"]
    for profile in ("release", "debug"):
        for name in names:
            path = os.path.join(root, "target", profile, name)
            if os.path.exists(path):
                return path
    sys.exit("build the extension first: cargo build -p degreeld-py")


def import_module():
    src = locate_extension()
    tmp = tempfile.mkdtemp(prefix="degreeld_py_")
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(src, os.path.join(tmp, "degreeld_py" + suffix))
    sys.path.insert(0, tmp)
    import degreeld_py

    return degreeld_py


def main():
    m = import_module()

    # Measures: the rate vanishes at the reference law and matches the
    # closed form on Poisson sections.
    p2 = m.SparseMeasure.poisson(2.0, 1e-14)
    assert abs(p2.mean() - 2.0) < 1e-12
    assert abs(p2.rate_i(2.0)) < 1e-10
    expected = 0.5 * (1.0 - 2.0 + 2.0 * math.log(2.0))
    assert abs(p2.rate_i(1.0) - expected) < 1e-10
    delta = m.SparseMeasure.delta(2)
    assert delta.metric_d(m.SparseMeasure.delta(0)) == 2.0
    round_trip = m.SparseMeasure.from_csv(p2.to_csv())
    assert p2.metric_d(round_trip) < 1e-12

    # Statistics and the solver: zero statistic gives J = 0 at theta = beta.
    zero = m.DegreeStatistic.zero()
    solution = m.solve_j(zero, 2.0)
    assert abs(solution["j_value"]) < 1e-8
    assert abs(solution["minimizers"][0]["theta"] - 2.0) < 1e-6
    gwd = m.DegreeStatistic.gwd(1.0, 2.0)
    assert gwd.eval(0) == 0.0
    assert m.tilted_mean(2.0, zero) > 0.0
    try:
        m.solve_j(m.DegreeStatistic.kstar(2, 1.0), 2.0)
    except ValueError as e:
        assert "DegenerateStatistic" in str(e)
    else:
        raise AssertionError("superlinear tilt must be refused")

    # Penalty phases at the reference parameters.
    assert m.classify_phase(1.2, 0.5)["regime"] == "UniqueMin"
    assert m.classify_phase(6.5, 0.04)["regime"] == "ThreeRootsUniqueGlobal"

    # Combinatorics: graphicality, construction, enumeration, partition.
    assert m.is_graphical([2, 2, 2])
    assert not m.is_graphical([3, 3, 1, 1])
    counts = m.frequency_target([0.5, 0.25, 0.25], 40)
    assert sum(counts) == 40
    classes = m.enumerate_graphs(3, 1.0)
    assert sum(c for _, c, _ in classes) == 8
    assert abs(sum(p for _, _, p in classes) - 1.0) < 1e-12
    exact = m.log_partition_exact(6, 1.0, m.DegreeStatistic.penalty(math.log(0.5)))
    est, se = m.log_partition_estimate(
        6, 1.0, m.DegreeStatistic.penalty(math.log(0.5)), 200_000, seed=1
    )
    assert abs(est - exact) < 4.0 * se

    # Sampler: ER draws and a short chain.
    g = m.sample_er(50, 2.0, seed=3)
    mu = m.empirical_degree_distribution(g)
    assert abs(mu.mean() - 2.0 * g.edges() / 50.0) < 1e-12
    summary = m.mcmc_run(
        30, 1.5, m.DegreeStatistic.penalty(math.log(0.5)),
        burn_in=50, samples=40, thin=2, seed=7, chains=2,
    )
    assert 0.0 < summary["acceptance_rate"] <= 1.0
    assert abs(sum(summary["mean_empirical_measure"].weights()) - 1.0) < 1e-9

    print("smoke test passed")


if __name__ == "__main__":
    main()
