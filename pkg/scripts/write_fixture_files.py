#!/usr/bin/env python3
"""Regenerate the shipped example input files under examples/.

Run from anywhere; paths are resolved relative to the repository root.  The
files are deterministic, so re-running after a library change makes any
convention drift show up as a git diff.
"""

import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from braidcheck.azumaya import (  # noqa: E402
    dual_numbers_algebra,
    gaussian_field_algebra,
    matrix_algebra,
    split_pair_algebra,
)
from braidcheck.examples_zoo import build_example  # noqa: E402
from braidcheck.groups import cyclic_group, symmetric_3  # noqa: E402
from braidcheck.hopf import drinfeld_double  # noqa: E402
from braidcheck.io_formats import (  # noqa: E402
    algebra_to_text,
    group_to_text,
    hopf_to_text,
    modular_to_text,
    module_to_text,
)
from braidcheck.modular import double_modular_data, symmetric_rep_data  # noqa: E402
from braidcheck.rep import regular_module  # noqa: E402


def main():
    out_dir = os.path.join(ROOT, "examples")
    os.makedirs(out_dir, exist_ok=True)
    files = {}

    for n in (2, 3, 5):
        H, R = build_example("group_algebra", n=n)
        files[f"cz{n}.hopf"] = hopf_to_text(H, R)
        D, RD = drinfeld_double(H)
        files[f"dz{n}.hopf"] = hopf_to_text(D, RD)
    H, R = build_example("sweedler", lam=1)
    files["sweedler1.hopf"] = hopf_to_text(H, R)

    files["rep_z2_symmetric.mod"] = modular_to_text(symmetric_rep_data(cyclic_group(2)))
    files["double_z2.mod"] = modular_to_text(double_modular_data(cyclic_group(2)))
    files["double_s3.mod"] = modular_to_text(double_modular_data(symmetric_3()))

    files["z2.grp"] = group_to_text(cyclic_group(2))
    files["z3.grp"] = group_to_text(cyclic_group(3))
    files["s3.grp"] = group_to_text(symmetric_3())

    files["m2q.alg"] = algebra_to_text(matrix_algebra(2))
    files["qxq.alg"] = algebra_to_text(split_pair_algebra())
    files["gauss.alg"] = algebra_to_text(gaussian_field_algebra())
    files["dualnum.alg"] = algebra_to_text(dual_numbers_algebra())

    H2, _ = build_example("group_algebra", n=2)
    files["regular_z2.module"] = module_to_text(regular_module(H2), "group_algebra(n=2)")

    for name, body in sorted(files.items()):
        path = os.path.join(out_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(body)
        print(f"wrote {os.path.relpath(path, ROOT)} ({len(body)} bytes)")


if __name__ == "__main__":
    main()
