"""Compare the numba and numpy flavours of the hot kernels.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``. The first numba call is
excluded (compilation); each timing is the best of ``--repeat`` runs.
"""

import argparse
import timeit

import numpy as np

from mtcgauge import _kernels, catalog
from mtcgauge.identities import Composition, _image, admissible_set
from mtcgauge.modular_data import dual_index_s
from mtcgauge.verlinde import fusion_tensor


def cases():
    rng = np.random.default_rng(1)
    for n in (64, 256):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        yield f"lu_pivots {n}x{n}", "lu_pivots", (m,)
    a = rng.normal(size=(40, 40)) + 1j * rng.normal(size=(40, 40))
    yield "kron 40x40 (x) 40x40", "kron", (a, a)
    for key in ("ising", "pointed_z5"):
        md = catalog.named_entry(key)
        n = fusion_tensor(md)
        dual = np.asarray(n.dual, dtype=np.int64)
        yield f"admissible {key}", "admissible", (n.lowered(), dual)
        lam = admissible_set(n).tuples
        img = _image(lam, md.dual, Composition.CONJUGATE_AFTER_PERMUTE)
        yield f"tensor6_block {key} ({len(lam)}^2)", "tensor6_block", (dual_index_s(md), lam, img)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':<36} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8}")
    for label, name, inputs in cases():
        f_np = getattr(_kernels, f"{name}_numpy")
        f_nb = getattr(_kernels, f"{name}_numba")
        f_nb(*inputs)  # compile
        t_np = min(timeit.repeat(lambda: f_np(*inputs), number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(lambda: f_nb(*inputs), number=1, repeat=args.repeat))
        print(f"{label:<36} {1e3 * t_np:>12.3f} {1e3 * t_nb:>12.3f} {t_np / t_nb:>8.2f}")


if __name__ == "__main__":
    main()
