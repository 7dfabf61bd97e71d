"""Compare the compiled and numpy orbit kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each case times a full orbit BFS, one bulk application of a generator to
every point, and a complete order computation, on both backends, and checks
that the backends agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from amalgam_rep.groups import kernels
from amalgam_rep.groups.domain import Domain
from amalgam_rep.groups.formulas import group_order_formula
from amalgam_rep.groups.schreier import matrix_group_order
from amalgam_rep.reduction import make_context
from amalgam_rep.suites import reduced_generators

CASES = [
    ("orbit", 3, "vectors"),
    ("orbit", 11, "projective"),
    ("orbit", 5, "projective"),
    ("orbit", 5, "vectors"),
    ("apply", 5, "vectors"),
    ("order", 11, "auto"),
    ("order", 5, "auto"),
]


def _run(task: str, p: int, kind: str):
    ctx = make_context(p)
    mats = reduced_generators(ctx)
    if task == "order":
        family = "SL" if ctx.kind == "split" else "SU"
        return matrix_group_order(mats, ctx.field, domain=kind, target=group_order_formula(family, 5, p)).order
    dom = Domain(ctx.field, kind)
    if task == "orbit":
        return dom.orbit(mats, dom.basis_point(0))
    return dom.apply(mats[2], dom.all_points())


def _best(task, p, kind, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = _run(task, p, kind)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "compiled" not in kernels.BACKENDS:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    print(f"{'case':<28} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for task, p, kind in CASES:
        res = {}
        for name in ("compiled", "python"):
            kernels.use_backend(name)
            res[name] = _best(task, p, kind, args.repeat)
        kernels.use_backend("compiled")
        (tc, oc), (tp, op) = res["compiled"], res["python"]
        same = np.array_equal(oc, op) if isinstance(oc, np.ndarray) else oc == op
        size = oc.size if isinstance(oc, np.ndarray) else "order"
        label = f"{task} p={p} {kind} [{size}]"
        print(f"{label:<28} {tc:>9.3f}s {tp:>9.3f}s {tp / tc:>7.1f}x" + ("" if same else "  MISMATCH"))


if __name__ == "__main__":
    main()
