#!/usr/bin/env python3
"""Smoke test for the blockmodeling_py extension module.

Builds the cdylib with cargo if needed, copies it next to this script under
the importable name, and exercises the main types and operations.

Usage: python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    lib = ROOT / "target" / "release" / "libblockmodeling_py.so"
    if not lib.exists():
        print("building blockmodeling-py (release)...")
        subprocess.run(
            ["cargo", "build", "-p", "blockmodeling-py", "--release"],
            cwd=ROOT,
            check=True,
        )
    target = Path(__file__).resolve().parent / "blockmodeling_py.so"
    shutil.copy2(lib, target)
    sys.path.insert(0, str(target.parent))
    import blockmodeling_py

    return blockmodeling_py


def main():
    bm = build_and_import()
    print(f"imported blockmodeling_py {bm.__version__}")

    # construction, preprocessing and cell access
    net = bm.Network([[0.0, 15.0], [3.0, 0.0]], labels=["a", "b"])
    assert net.n == 2
    assert net.value(0, 1) == 15.0
    sliced = net.slice(5.0)
    assert sliced.to_lists() == [[0.0, 1.0], [0.0, 0.0]]
    censored = net.censor(10.0)
    assert censored.value(0, 1) == 10.0

    students = bm.Network.students()
    assert students.n == 13
    assert students.value(0, 3) == 15.0

    # evaluation of a fixed partition
    partition = bm.Partition([0, 1, 1, 2, 0, 1, 0, 2, 2, 0, 0, 1, 1])
    fit = bm.evaluate(students, partition, "ss", ["reg"], f="mean")
    assert abs(fit.total - 425.8866666666667) < 1e-9
    assert fit.image == [["reg"] * 3] * 3

    # search reproduces the published mean-regular partition
    result = bm.local_search(
        students, 3, "ss", ["reg"], f="mean", restarts=100, seed=7
    )
    assert result.best.partition == partition, result.best.partition
    again = bm.local_search(
        students, 3, "ss", ["reg"], f="mean", restarts=100, seed=7
    )
    assert result.total == again.total and result.evaluations == again.evaluations

    # exhaustive oracle agrees on a small instance
    small = bm.Network([[0.0, 5.0, 0.0], [5.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    exact = bm.exhaustive_search(small, 2, "ss", ["com"], f="mean")
    assert exact.total == 0.0
    assert exact.best.partition.clusters() == [[0, 1], [2]]

    # block summaries and the m suggestion
    rows, cols = bm.block_summaries(students, partition, "sum")
    assert abs(rows[0][2] - 31.2) < 0.05
    assert abs(rows[1][2] - 14.6) < 0.05
    bimodal, lo, hi, candidates = bm.suggest_m(students, partition, "sum")
    assert bimodal and candidates == [5.0, 10.0], (bimodal, lo, hi, candidates)

    # equivalence checks
    assert not bm.structural_equivalence(students, 0, 1)
    constant = bm.Network(
        [
            [0.0, 1.0, 4.0, 4.0],
            [1.0, 0.0, 4.0, 4.0],
            [2.0, 2.0, 0.0, 3.0],
            [2.0, 2.0, 3.0, 0.0],
        ]
    )
    assert bm.f_regular_equivalence(constant, bm.Partition([0, 0, 1, 1]), "max")

    # the homogeneity-first workflow end to end
    hom_ss, hom_ad, candidates, valued_runs, note = bm.workflow_preset(
        students, 3, f="mean", restarts=50, seed=1
    )
    assert hom_ss.best.partition == partition
    assert candidates == [5.0, 10.0]
    assert note is None
    assert len(valued_runs) == 2

    print("smoke test passed")


if __name__ == "__main__":
    main()
