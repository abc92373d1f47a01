"""Smoke test for the circlequot_py extension.

Build first:  cargo build -p circlequot-py --release
Then run:     python3 python/smoke_test.py
Set CIRCLEQUOT_PY_LIB to point at a specific libcirclequot_py.so.
"""

import importlib.util
import json
import os
import pathlib
import shutil
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def find_lib():
    env = os.environ.get("CIRCLEQUOT_PY_LIB")
    if env:
        return pathlib.Path(env)
    for profile in ("release", "debug"):
        for name in ("libcirclequot_py.so", "libcirclequot_py.dylib"):
            p = ROOT / "target" / profile / name
            if p.exists():
                return p
    sys.exit("libcirclequot_py not found; run cargo build -p circlequot-py --release")


def load():
    tmp = pathlib.Path(tempfile.mkdtemp())
    dst = tmp / "circlequot_py.so"
    shutil.copy(find_lib(), dst)
    spec = importlib.util.spec_from_file_location("circlequot_py", dst)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    cq = load()

    b = cq.Block(2)
    assert (b.k, b.n) == (2, 3)
    verts = dict(b.vertices())
    assert [Fraction(x) for x in verts["B1"]] == [Fraction(1, 6), Fraction(1, 3), Fraction(1, 6), Fraction(1, 3)]
    report = json.loads(b.verify())
    assert report["passed"], report["failures"]
    print("block k=2: certificates pass")

    for n in range(1, 8):
        d = Fraction(cq.upsilon_det(n))
        assert (-1) ** (n - 1) * d > 0
    print("upsilon signs ok")

    p = cq.Pattern(["LR"])
    assert p.k() == 2
    assert len(p.gamma_e("1/0,0/1")) == 4

    net = cq.Network(p, 2)
    cloud = net.cloud()
    assert len(cloud) == 24
    checks = {name: ok for name, ok, _ in net.audit()}
    assert checks["disjoint interiors"] and checks["vertex coincidence"], checks
    ply = net.export("ply")
    assert ply.startswith("ply\n") and "format_version 1" in ply
    print(f"golden network depth 2: {len(cloud)} points, audits {checks}")

    chart, coords, _ = cloud[0]
    back = net.rho("SS", chart, coords)
    assert back == (chart, coords)

    half = cq.Network(p, 2, json.dumps({"orbit_weights": {"LR": "1/2"}}))
    assert len(half.cloud()) > len(cloud)

    assert cq.standard_action("W", "plus", "1") == ("plus", ["1/2", "1/2"])
    rep = json.loads(cq.degenerate_report(["LR"], [], 3, 1))
    assert rep["nonincreasing"]
    print("degeneration monotone over", len(rep["steps"]), "steps")

    try:
        cq.Block(1)
    except ValueError:
        pass
    else:
        raise AssertionError("k=1 accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
